//! The five counting routes for q_k(n) — the maximum number of pairwise
//! vertex-disjoint induced Q_k in Γ_n — plus the matching count q_1, the
//! correction term δ_k, the Fibonacci lower bound, and exact density ratios.
//!
//! All routes return identical exact integers:
//!
//! * `recurrence`      — q_k(n) = q_{k-1}(n-2) + q_k(n-3), rooted in q_1
//! * `fib-recurrence`  — q_k(n) = q_k(n-1) + q_k(n-2) + δ_k(n)
//! * `closed`          — q_k(n) = Σ_i C(i, k-1) · F_{n+k-3i-1}
//! * `convolution`     — q_k(n) = Σ_m δ_k(m) · F_{n-m+1}
//! * `genfun`          — coefficient of x^n in x^{2k-1} / ((1-x³)^k (1-x-x²))
//!
//! The recurrences are evaluated with explicit tables, never by naive
//! recursion.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::fibstrings::{fib, fib_upto, SeqValue};

/// Selector for the counting route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Recurrence,
    FibRecurrence,
    Closed,
    Convolution,
    GenFun,
}

impl Method {
    /// All five routes, in canonical order.
    pub const ALL: [Method; 5] = [
        Method::Recurrence,
        Method::FibRecurrence,
        Method::Closed,
        Method::Convolution,
        Method::GenFun,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Recurrence => "recurrence",
            Method::FibRecurrence => "fib-recurrence",
            Method::Closed => "closed",
            Method::Convolution => "convolution",
            Method::GenFun => "genfun",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?}"))
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum FormulaError {
    /// The counting routes need cube dimension k ≥ 1. The number of 0-cubes
    /// is simply the vertex count |Γ_n| = F_{n+2} (see [`crate::fib`]).
    #[error(
        "q_k requires cube dimension k >= 1; the number of 0-cubes is the vertex count F(n+2)"
    )]
    InvalidK,
    /// The Fibonacci lower bound needs n ≥ 2k - 2.
    #[error("lower bound requires n >= 2k-2 (got k = {k}, n = {n})")]
    OutOfRange { k: usize, n: usize },
}

/// Exact binomial coefficient C(a, b), with C(a, b) = 0 when b > a.
pub fn binomial(a: usize, b: usize) -> SeqValue {
    if b > a {
        return SeqValue::zero();
    }
    let b = b.min(a - b);
    let mut res = SeqValue::one();
    for i in 0..b {
        res = res * (a - i) / (i + 1);
    }
    res
}

/// Correction term δ_k(n): C((n+k-2)/3, k-1) when n + k ≡ 2 (mod 3), else 0.
///
/// The same formula covers the small cases: δ_k(0) = δ_k(1) = 0 for k ≥ 2
/// and δ_1(1) = 1, δ_1(0) = 0 (checked in the tests below), so no
/// special-casing is needed.
pub fn delta(k: usize, n: usize) -> SeqValue {
    assert!(k >= 1, "delta requires cube dimension k >= 1");
    if (n + k) % 3 != 2 {
        return SeqValue::zero();
    }
    binomial((n + k - 2) / 3, k - 1)
}

/// Parity defect of |Γ_n| = F_{n+2}: 0 when n ≡ 1 (mod 3) (even order),
/// 1 otherwise.
pub fn gamma(n: usize) -> u8 {
    u8::from(n % 3 != 1)
}

/// Maximum matching size of Γ_n: q_1(n) = (|Γ_n| - γ(n)) / 2 = ⌊F_{n+2}/2⌋.
pub fn q1(n: usize) -> SeqValue {
    fib(n + 2) >> 1
}

/// q_k(0), q_k(1), …, q_k(nmax) via the shift recurrence
/// q_k(n) = q_k(n-1) + q_k(n-2) + δ_k(n).
pub fn q_row(k: usize, nmax: usize) -> Result<Vec<SeqValue>, FormulaError> {
    if k == 0 {
        return Err(FormulaError::InvalidK);
    }
    let mut q = Vec::with_capacity(nmax + 1);
    q.push(SeqValue::zero());
    if nmax == 0 {
        return Ok(q);
    }
    q.push(if k == 1 {
        SeqValue::one()
    } else {
        SeqValue::zero()
    });
    for n in 2..=nmax {
        let v = &q[n - 1] + &q[n - 2] + delta(k, n);
        q.push(v);
    }
    Ok(q)
}

/// q_k(n) by the selected route. All five routes agree exactly.
pub fn q_eval(k: usize, n: usize, method: Method) -> Result<SeqValue, FormulaError> {
    if k == 0 {
        return Err(FormulaError::InvalidK);
    }
    Ok(match method {
        Method::Recurrence => q_recurrence(k, n),
        Method::FibRecurrence => q_row(k, n)?.pop().expect("row holds n + 1 entries"),
        Method::Closed => q_closed(k, n),
        Method::Convolution => q_convolution(k, n),
        Method::GenFun => q_genfun(k, n),
    })
}

/// Explicit (k, n) table for q_k(n) = q_{k-1}(n-2) + q_k(n-3), rooted in the
/// matching count for k = 1 and in q_k(n) = 0 for n < 3, k ≥ 2.
fn q_recurrence(k: usize, n: usize) -> SeqValue {
    let fibs = fib_upto(n + 2);
    let mut row: Vec<SeqValue> = (0..=n).map(|m| &fibs[m + 2] >> 1).collect();
    for _ in 2..=k {
        let mut next = vec![SeqValue::zero(); n + 1];
        for m in 3..=n {
            next[m] = &row[m - 2] + &next[m - 3];
        }
        row = next;
    }
    row.swap_remove(n)
}

/// Binomial–Fibonacci sum q_k(n) = Σ_{i=k-1}^{⌊(n+k-2)/3⌋} C(i, k-1) F_{n+k-3i-1}.
fn q_closed(k: usize, n: usize) -> SeqValue {
    if n + k < 2 {
        return SeqValue::zero();
    }
    let imax = (n + k - 2) / 3;
    let fibs = fib_upto(n + k);
    let mut total = SeqValue::zero();
    for i in (k - 1)..=imax {
        total += binomial(i, k - 1) * &fibs[n + k - 3 * i - 1];
    }
    total
}

/// Convolution with shifted Fibonacci numbers: q_k(n) = Σ_{m=0}^{n} δ_k(m) F_{n-m+1}.
fn q_convolution(k: usize, n: usize) -> SeqValue {
    let fibs = fib_upto(n + 1);
    let mut total = SeqValue::zero();
    for m in 0..=n {
        let d = delta(k, m);
        if !d.is_zero() {
            total += d * &fibs[n - m + 1];
        }
    }
    total
}

/// Coefficient of x^n in x^{2k-1} / ((1-x³)^k (1-x-x²)), extracted by
/// multiplying the degree-n truncations of the two factor series:
/// Σ_{i≥k-1} C(i, k-1) x^{3i-k+2} (the expansion of x^{2k-1}/(1-x³)^k) and
/// Σ_{m≥0} F_{m+1} x^m (the expansion of 1/(1-x-x²)).
fn q_genfun(k: usize, n: usize) -> SeqValue {
    let mut numer = vec![SeqValue::zero(); n + 1];
    let mut i = k - 1;
    loop {
        let e = 3 * i + 2 - k;
        if e > n {
            break;
        }
        numer[e] = binomial(i, k - 1);
        i += 1;
    }
    let fibs = fib_upto(n + 1);
    let shifted: Vec<SeqValue> = (0..=n).map(|m| fibs[m + 1].clone()).collect();
    let mut product = mul_trunc(&numer, &shifted, n);
    product.pop().expect("product holds n + 1 coefficients")
}

/// c[t] = Σ_{i+j=t} a[i] b[j] for t ≤ deg.
fn mul_trunc(a: &[SeqValue], b: &[SeqValue], deg: usize) -> Vec<SeqValue> {
    let mut c = vec![SeqValue::zero(); deg + 1];
    for (i, ai) in a.iter().enumerate().take(deg + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(deg + 1 - i) {
            c[i + j] += ai * bj;
        }
    }
    c
}

/// Fibonacci lower bound F_{n-2k+2} ≤ q_k(n), valid for n ≥ 2k - 2.
pub fn lower_bound(k: usize, n: usize) -> Result<SeqValue, FormulaError> {
    assert!(k >= 1, "lower_bound requires cube dimension k >= 1");
    if n + 2 < 2 * k {
        return Err(FormulaError::OutOfRange { k, n });
    }
    Ok(fib(n + 2 - 2 * k))
}

/// Exact covered fraction q_k(n) / |Γ_n| = q_k(n) / F_{n+2}.
pub fn density_ratio(k: usize, n: usize) -> Result<BigRational, FormulaError> {
    let q = q_eval(k, n, Method::FibRecurrence)?;
    Ok(BigRational::new(BigInt::from(q), BigInt::from(fib(n + 2))))
}

/// Decimal rendering of a nonnegative rational, truncated to `digits`
/// fractional digits.
pub fn decimal_string(r: &BigRational, digits: usize) -> String {
    let int = r.numer() / r.denom();
    if digits == 0 {
        return int.to_string();
    }
    let rem = r.numer() % r.denom();
    let scaled = rem * BigInt::from(10u32).pow(digits as u32) / r.denom();
    let frac = scaled.to_string();
    format!("{int}.{}{frac}", "0".repeat(digits - frac.len()))
}
