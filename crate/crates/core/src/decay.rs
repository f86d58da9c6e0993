//! Weighted decay scans.
