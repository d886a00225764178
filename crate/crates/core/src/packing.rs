//! Constructive maximum packings and certificate verification.
//!
//! The builder realizes the recursive decomposition of Γ_n into the matched
//! pair 00Γ_{n-2} ≡ 10Γ_{n-2} (each vertex 00x paired with 10x across
//! position 1) and the prefixed copy 010Γ_{n-3}: a maximum (k-1)-packing of
//! Γ_{n-2} lifts across that matching into k-cubes, and the maximum k-packing
//! of the 010-copy is appended, giving q_{k-1}(n-2) + q_k(n-3) cubes. The
//! k = 1 floor is the explicit maximum matching assembled block by block from
//! the full partition of Γ_n into (010)^{i-1}(00 ≡ 10)Γ_{n+1-3i} pieces plus
//! a residual Γ_{n mod 3}. The edges between 000Γ_{n-3} and 010Γ_{n-3} are
//! never used.
//!
//! Certificates serialize as
//! `{"n":…,"k":…,"count":…,"cubes":[{"base":…,"dirs":[…]},…]}` and are
//! re-validated from scratch by [`verify_certificate`].

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fibstrings::{enumerate_vertices, fib, FibWord, SeqValue};
use crate::formulas::{q_eval, Method};
use crate::subcubes::{overlap_pairs, Packing, RawSubcube, Subcube, SubcubeError};

/// Builds a maximum packing of k-cubes in Γ_n: the result always has exactly
/// q_k(n) cubes and is deterministic, byte-for-byte, across runs.
///
/// Requires k ≥ 1; a packing of 0-cubes is trivially every vertex alone.
pub fn build_packing(k: usize, n: usize) -> Packing {
    assert!(k >= 1, "build_packing requires cube dimension k >= 1");
    let cubes = collect_cubes(k, n);
    Packing::new(n, k, cubes).expect("construction yields valid disjoint cubes")
}

fn collect_cubes(k: usize, n: usize) -> Vec<Subcube> {
    if k == 1 {
        return matching_cubes(n);
    }
    if n < 3 {
        return Vec::new();
    }
    let mut out = Vec::new();
    // lift the (k-1)-packing of Γ_{n-2}: pair each cube's 00-copy with its
    // 10-copy, making position 1 the new free direction
    for cube in collect_cubes(k - 1, n - 2) {
        out.push(prefixed(&cube, &[false, false], true));
    }
    // append the k-packing of the 010-prefixed copy of Γ_{n-3}
    for cube in collect_cubes(k, n - 3) {
        out.push(prefixed(&cube, &[false, true, false], false));
    }
    out
}

/// Re-roots `cube` under `prefix`, optionally adding position 1 as a new free
/// direction. Free positions shift by the prefix length.
fn prefixed(cube: &Subcube, prefix: &[bool], free_first: bool) -> Subcube {
    let shift = prefix.len();
    let mut bits = prefix.to_vec();
    bits.extend_from_slice(cube.base().bits());
    let base = FibWord::from_bits(bits).expect("prefix keeps 1s isolated");
    let dirs = free_first
        .then_some(1)
        .into_iter()
        .chain(cube.dirs().iter().map(|d| d + shift));
    Subcube::new(base, dirs).expect("prefixed cube stays valid")
}

/// The explicit maximum matching of Γ_n, edge by edge: within block i the
/// words (010)^{i-1}00x and (010)^{i-1}10x are matched across position
/// 3(i-1)+1 for every Fibonacci word x; the residual Γ_{n mod 3} suffix gets
/// the fixed base-case matching that leaves the lexicographically largest
/// vertex unmatched (none for Γ_1, which is matched perfectly).
fn matching_cubes(n: usize) -> Vec<Subcube> {
    let mut out = Vec::new();
    let mut prefix: Vec<bool> = Vec::new();
    for i in 1..=n / 3 {
        let dir = 3 * (i - 1) + 1;
        for x in enumerate_vertices(n + 1 - 3 * i) {
            let mut bits = prefix.clone();
            bits.extend_from_slice(&[false, false]);
            bits.extend_from_slice(x.bits());
            let base = FibWord::from_bits(bits).expect("block prefix keeps 1s isolated");
            out.push(Subcube::new(base, [dir]).expect("block edge is a valid 1-cube"));
        }
        prefix.extend_from_slice(&[false, true, false]);
    }
    // residual suffix on positions n - r(n) + 1 ..= n
    let residual: &[bool] = match n % 3 {
        0 => return out,
        1 => &[false],        // Γ_1: edge {0, 1}
        _ => &[false, false], // Γ_2: edge {00, 01}; vertex 10 stays unmatched
    };
    let mut bits = prefix;
    bits.extend_from_slice(residual);
    let base = FibWord::from_bits(bits).expect("residual base is all-zero on its suffix");
    out.push(Subcube::new(base, [n]).expect("residual edge is a valid 1-cube"));
    out
}

/// Serialized packing claim, the exact format consumed by `fibcube verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub k: usize,
    pub count: usize,
    pub cubes: Vec<RawSubcube>,
}

impl Certificate {
    pub fn from_json(s: &str) -> Result<Self, CertificateError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

impl From<&Packing> for Certificate {
    fn from(p: &Packing) -> Self {
        Certificate {
            n: p.n(),
            k: p.k(),
            count: p.len(),
            cubes: p.cubes().iter().map(RawSubcube::from).collect(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    Malformed(#[from] serde_json::Error),
}

/// Per-cube (and count-field) defects found while checking a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertFault {
    /// Cube at `index` is not a valid subcube.
    Cube { index: usize, error: SubcubeError },
    /// Cube at `index` lives in the wrong ambient dimension.
    AmbientLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    /// Cube at `index` has the wrong cube dimension.
    CubeDimension {
        index: usize,
        expected: usize,
        found: usize,
    },
    /// The `count` field disagrees with the number of cubes listed.
    CountField { declared: usize, listed: usize },
}

impl fmt::Display for CertFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertFault::Cube { index, error } => write!(f, "cube {index}: {error}"),
            CertFault::AmbientLength {
                index,
                expected,
                found,
            } => {
                write!(
                    f,
                    "cube {index}: base length {found}, ambient dimension is {expected}"
                )
            }
            CertFault::CubeDimension {
                index,
                expected,
                found,
            } => {
                write!(
                    f,
                    "cube {index}: dimension {found}, certificate claims k = {expected}"
                )
            }
            CertFault::CountField { declared, listed } => {
                write!(
                    f,
                    "count field says {declared}, but {listed} cubes are listed"
                )
            }
        }
    }
}

/// Size verdict of a certificate against the known maximum q_k(n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Optimal,
    Suboptimal,
    /// More cubes than q_k(n): a fatal inconsistency — either the certificate
    /// lies or the counting is wrong.
    ExceedsKnownMaximum,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Optimal => "optimal",
            Verdict::Suboptimal => "suboptimal",
            Verdict::ExceedsKnownMaximum => "exceeds-known-maximum",
        })
    }
}

/// Full verification outcome for a certificate.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub n: usize,
    pub k: usize,
    /// Cubes actually listed (the `count` field is checked separately).
    pub cube_count: usize,
    pub faults: Vec<CertFault>,
    /// Overlapping pairs (earlier cube, later cube); empty iff the valid
    /// cubes are pairwise vertex-disjoint. Each shared vertex is reported
    /// against its earliest claimant.
    pub overlaps: Vec<(usize, usize)>,
    /// Vertices covered when disjoint: cube_count · 2^k.
    pub covered: SeqValue,
    /// |Γ_n| = F_{n+2}.
    pub order: SeqValue,
    /// q_k(n) (the vertex count when k = 0).
    pub max_known: SeqValue,
    pub verdict: Verdict,
}

impl VerifyReport {
    /// No malformed cubes, no overlaps.
    pub fn is_valid(&self) -> bool {
        self.faults.is_empty() && self.overlaps.is_empty()
    }

    /// Valid and not claiming more cubes than the known maximum.
    pub fn is_consistent(&self) -> bool {
        self.is_valid() && self.verdict != Verdict::ExceedsKnownMaximum
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "certificate: n={} k={} cubes={}",
            self.n, self.k, self.cube_count
        )?;
        for fault in &self.faults {
            writeln!(f, "fault: {fault}")?;
        }
        for &(a, b) in &self.overlaps {
            writeln!(f, "overlap: cubes {a} and {b} share a vertex")?;
        }
        if self.is_valid() {
            writeln!(f, "cubes: all valid, pairwise disjoint")?;
            writeln!(f, "coverage: {} of {} vertices", self.covered, self.order)?;
        }
        writeln!(
            f,
            "known maximum: q_{}({}) = {}",
            self.k, self.n, self.max_known
        )?;
        write!(f, "verdict: {}", self.verdict)?;
        if self.verdict == Verdict::ExceedsKnownMaximum {
            write!(f, " (fatal inconsistency)")?;
        }
        Ok(())
    }
}

/// Re-validates a certificate from scratch: every cube, every dimension, the
/// count field, pairwise disjointness, and the size comparison against the
/// known maximum.
pub fn verify_certificate(cert: &Certificate) -> VerifyReport {
    let mut faults = Vec::new();
    if cert.count != cert.cubes.len() {
        faults.push(CertFault::CountField {
            declared: cert.count,
            listed: cert.cubes.len(),
        });
    }
    let mut valid: Vec<(usize, Subcube)> = Vec::new();
    for (index, raw) in cert.cubes.iter().enumerate() {
        match raw.to_subcube() {
            Err(error) => faults.push(CertFault::Cube { index, error }),
            Ok(cube) => {
                if cube.n() != cert.n {
                    faults.push(CertFault::AmbientLength {
                        index,
                        expected: cert.n,
                        found: cube.n(),
                    });
                } else if cube.k() != cert.k {
                    faults.push(CertFault::CubeDimension {
                        index,
                        expected: cert.k,
                        found: cube.k(),
                    });
                } else {
                    valid.push((index, cube));
                }
            }
        }
    }
    let overlaps = overlap_pairs(valid.iter().map(|(i, c)| (*i, c)));
    debug_assert!(overlaps.iter().all(|&(a, b)| {
        let cube_of = |i| &valid.iter().find(|(j, _)| *j == i).unwrap().1;
        !cube_of(a).is_disjoint_from(cube_of(b)).unwrap()
    }));
    let covered = SeqValue::from(cert.cubes.len()) << cert.k;
    let order = fib(cert.n + 2);
    let max_known = if cert.k == 0 {
        order.clone()
    } else {
        q_eval(cert.k, cert.n, Method::FibRecurrence).expect("k >= 1")
    };
    let verdict = match SeqValue::from(cert.cubes.len()).cmp(&max_known) {
        Ordering::Less => Verdict::Suboptimal,
        Ordering::Equal => Verdict::Optimal,
        Ordering::Greater => Verdict::ExceedsKnownMaximum,
    };
    VerifyReport {
        n: cert.n,
        k: cert.k,
        cube_count: cert.cubes.len(),
        faults,
        overlaps,
        covered,
        order,
        max_known,
        verdict,
    }
}

/// Verifies an in-memory packing through the same path as a certificate.
pub fn verify_packing(p: &Packing) -> VerifyReport {
    verify_certificate(&Certificate::from(p))
}
