//! Shared helpers for the criterion benches (placeholder during bring-up).
