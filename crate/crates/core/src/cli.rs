//! CLI plumbing.
