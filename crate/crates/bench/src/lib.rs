//! Shared helpers for the fibcube benchmarks.

/// (k, n) pairs covering the regimes the counting routes are used in.
pub const COUNTING_CASES: [(usize, usize); 3] = [(2, 30), (3, 60), (5, 120)];
