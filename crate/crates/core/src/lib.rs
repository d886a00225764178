//! Disjoint hypercube packings in Fibonacci cubes.
//!
//! The Fibonacci cube Γ_n is the subgraph of the hypercube Q_n induced by the
//! binary words of length n with no two adjacent 1s; it has F_{n+2} vertices.
//! This crate computes q_k(n), the maximum number of pairwise vertex-disjoint
//! induced subgraphs of Γ_n isomorphic to Q_k, along five independent routes,
//! builds explicit maximum packings with machine-checkable certificates, and
//! cross-validates everything against an exact search oracle.
//!
//! Module map:
//!
//! * [`fibstrings`] — Fibonacci words, Fibonacci numbers, the vertex set of Γ_n.
//! * [`subcubes`] — induced Q_k subcubes: validation, enumeration, disjointness,
//!   and the [`Packing`] container.
//! * [`formulas`] — the five counting routes for q_k(n), the correction term
//!   δ_k(n), the Fibonacci lower bound, and exact density ratios.
//! * [`packing`] — the recursive constructive builder and certificate
//!   verification.
//! * [`oracle`] — exact maximum by bipartite matching (k = 1) and
//!   branch-and-bound set packing (k ≥ 2), independent of the formulas.

pub mod fibstrings;
pub mod formulas;
pub mod oracle;
pub mod packing;
pub mod subcubes;

pub use fibstrings::{enumerate_vertices, fib, is_fib_word, FibWord, FibWordError, SeqValue};
pub use formulas::{
    binomial, decimal_string, delta, density_ratio, gamma, lower_bound, q1, q_eval, q_row,
    FormulaError, Method,
};
pub use oracle::{oracle_max_packing, OracleOutcome, DEFAULT_BUDGET};
pub use packing::{
    build_packing, verify_certificate, verify_packing, CertFault, Certificate, CertificateError,
    Verdict, VerifyReport,
};
pub use subcubes::{enumerate_subcubes, Packing, PackingError, RawSubcube, Subcube, SubcubeError};

/// Exact rational, re-exported for density-ratio consumers.
pub use num_rational::BigRational;
