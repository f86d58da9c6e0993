//! Schrödinger flow on concrete data.
