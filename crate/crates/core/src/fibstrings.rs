//! Fibonacci words, Fibonacci numbers, and the vertex set of Γ_n.
//!
//! A Fibonacci word is a binary word with no two adjacent 1s. The Fibonacci
//! cube Γ_n is the subgraph of the hypercube Q_n induced by the Fibonacci
//! words of length n, so |Γ_n| = F_{n+2}. Positions are 1-indexed from the
//! left: in the string form x_1 x_2 … x_n the leftmost character is x_1.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact nonnegative integer used for all sequence values (Fibonacci numbers,
/// binomial coefficients, packing counts). No supported range overflows.
pub type SeqValue = BigUint;

/// Violations of the Fibonacci-word invariant.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum FibWordError {
    #[error("invalid symbol {symbol:?} at position {pos}, expected '0' or '1'")]
    InvalidSymbol { pos: usize, symbol: char },
    #[error("consecutive 1s at positions {pos} and {}", .pos + 1)]
    ConsecutiveOnes { pos: usize },
}

/// A vertex of Γ_n: a binary word of length n with no two adjacent 1s.
///
/// The derived ordering is lexicographic with '0' < '1', matching the string
/// form. n = 0 (the empty word) is the single vertex of Γ_0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FibWord {
    bits: Vec<bool>,
}

impl FibWord {
    /// The empty word, the single vertex of Γ_0.
    pub fn empty() -> Self {
        FibWord { bits: Vec::new() }
    }

    /// Builds a word from bits (index 0 holds position 1), rejecting adjacent 1s.
    pub fn from_bits(bits: Vec<bool>) -> Result<Self, FibWordError> {
        if let Some(i) = bits.windows(2).position(|w| w[0] && w[1]) {
            return Err(FibWordError::ConsecutiveOnes { pos: i + 1 });
        }
        Ok(FibWord { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bit at 1-indexed position `pos`.
    ///
    /// Panics if `pos` is 0 or exceeds the length.
    pub fn bit(&self, pos: usize) -> bool {
        self.bits[pos - 1]
    }

    /// Number of 1s in the word.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Raw bits, index 0 holding position 1.
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Internal constructor for callers that maintain the invariant themselves.
    pub(crate) fn from_bits_unchecked(bits: Vec<bool>) -> Self {
        debug_assert!(!bits.windows(2).any(|w| w[0] && w[1]));
        FibWord { bits }
    }
}

impl FromStr for FibWord {
    type Err = FibWordError;

    fn from_str(s: &str) -> Result<Self, FibWordError> {
        let mut bits = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => {
                    return Err(FibWordError::InvalidSymbol {
                        pos: i + 1,
                        symbol: c,
                    })
                }
            }
        }
        FibWord::from_bits(bits)
    }
}

impl fmt::Display for FibWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// True iff `w` consists only of '0'/'1' and contains no "11".
///
/// Strings with other symbols are not Fibonacci words and yield `false`.
pub fn is_fib_word(w: &str) -> bool {
    w.parse::<FibWord>().is_ok()
}

/// F_n with the seeds F_0 = 0, F_1 = 1.
pub fn fib(n: usize) -> SeqValue {
    let (mut a, mut b) = (SeqValue::zero(), SeqValue::one());
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

/// F_0 ..= F_n as a table.
pub(crate) fn fib_upto(n: usize) -> Vec<SeqValue> {
    let mut f = Vec::with_capacity(n + 1);
    f.push(SeqValue::zero());
    if n == 0 {
        return f;
    }
    f.push(SeqValue::one());
    for i in 2..=n {
        let next = &f[i - 1] + &f[i - 2];
        f.push(next);
    }
    f
}

/// All Fibonacci words of length n in lexicographic order ('0' < '1').
///
/// The result has exactly F_{n+2} entries; for n = 0 it is the single empty
/// word.
pub fn enumerate_vertices(n: usize) -> Vec<FibWord> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    extend_words(&mut cur, n, &mut out);
    out
}

fn extend_words(cur: &mut Vec<bool>, n: usize, out: &mut Vec<FibWord>) {
    if cur.len() == n {
        out.push(FibWord::from_bits_unchecked(cur.clone()));
        return;
    }
    cur.push(false);
    extend_words(cur, n, out);
    cur.pop();
    if !cur.last().copied().unwrap_or(false) {
        cur.push(true);
        extend_words(cur, n, out);
        cur.pop();
    }
}
