//! Induced k-dimensional subcubes of Γ_n and vertex-disjoint packings.
//!
//! A subcube is stored as a base word plus the set of its free positions
//! (`dirs`): the base holds 0 at every free position, and flipping any subset
//! of the free positions to 1 spans the 2^k vertices. Validity reduces to one
//! check — the top word (all free positions set) must itself be a Fibonacci
//! word — because clearing bits of a valid word never creates adjacent 1s.
//! Equivalently: free positions are pairwise non-adjacent and no free
//! position neighbours a 1 of the base.

use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap};

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::fibstrings::{enumerate_vertices, FibWord, FibWordError};

/// Subcube construction and comparison failures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubcubeError {
    #[error("not a Fibonacci word: {0}")]
    NotFibWord(#[from] FibWordError),
    #[error("base word holds a 1 at free position {pos}")]
    BaseNotZeroOnDirs { pos: usize },
    #[error("position {pos} out of range 1..={n}")]
    PositionOutOfRange { pos: usize, n: usize },
    #[error("free position {pos} listed more than once")]
    DuplicateDirection { pos: usize },
    #[error("ambient dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// An induced Q_k inside Γ_n: base word plus k free positions (1-indexed,
/// stored ascending).
///
/// The derived ordering is by base word, then by free-position list; this is
/// the canonical enumeration and certificate order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subcube {
    base: FibWord,
    dirs: Vec<usize>,
}

impl Subcube {
    /// Validates and builds a subcube; the ambient dimension is the base length.
    pub fn new(base: FibWord, dirs: impl IntoIterator<Item = usize>) -> Result<Self, SubcubeError> {
        let n = base.len();
        let mut dirs: Vec<usize> = dirs.into_iter().collect();
        dirs.sort_unstable();
        if let Some(w) = dirs.windows(2).find(|w| w[0] == w[1]) {
            return Err(SubcubeError::DuplicateDirection { pos: w[0] });
        }
        for &d in &dirs {
            if d == 0 || d > n {
                return Err(SubcubeError::PositionOutOfRange { pos: d, n });
            }
        }
        for &d in &dirs {
            if base.bit(d) {
                return Err(SubcubeError::BaseNotZeroOnDirs { pos: d });
            }
        }
        // The top word certifies the whole span.
        let mut bits = base.bits().to_vec();
        for &d in &dirs {
            bits[d - 1] = true;
        }
        FibWord::from_bits(bits)?;
        Ok(Subcube { base, dirs })
    }

    /// Builds a subcube from the external form: '0'/'1' string plus 1-indexed
    /// free positions.
    pub fn parse(base: &str, dirs: impl IntoIterator<Item = usize>) -> Result<Self, SubcubeError> {
        Subcube::new(base.parse::<FibWord>()?, dirs)
    }

    /// Ambient dimension n.
    pub fn n(&self) -> usize {
        self.base.len()
    }

    /// Subcube dimension k.
    pub fn k(&self) -> usize {
        self.dirs.len()
    }

    pub fn base(&self) -> &FibWord {
        &self.base
    }

    /// Free positions, ascending and 1-indexed.
    pub fn dirs(&self) -> &[usize] {
        &self.dirs
    }

    /// The word with every free position set to 1.
    pub fn top_word(&self) -> FibWord {
        let mut bits = self.base.bits().to_vec();
        for &d in &self.dirs {
            bits[d - 1] = true;
        }
        FibWord::from_bits_unchecked(bits)
    }

    /// The 2^k spanned vertices in lexicographic order.
    pub fn vertices(&self) -> Vec<FibWord> {
        let k = self.k();
        let mut out = Vec::with_capacity(1 << k);
        for m in 0..1usize << k {
            let mut bits = self.base.bits().to_vec();
            for (j, &d) in self.dirs.iter().enumerate() {
                if m >> (k - 1 - j) & 1 == 1 {
                    bits[d - 1] = true;
                }
            }
            out.push(FibWord::from_bits_unchecked(bits));
        }
        out
    }

    /// Whether the vertex sets of `self` and `other` are disjoint, decided
    /// without expanding them: the spans intersect iff the two bases agree at
    /// every position outside the union of the free sets.
    pub fn is_disjoint_from(&self, other: &Subcube) -> Result<bool, SubcubeError> {
        let n = self.n();
        if n != other.n() {
            return Err(SubcubeError::DimensionMismatch {
                left: n,
                right: other.n(),
            });
        }
        let (mut i, mut j) = (0, 0);
        for pos in 1..=n {
            while i < self.dirs.len() && self.dirs[i] < pos {
                i += 1;
            }
            while j < other.dirs.len() && other.dirs[j] < pos {
                j += 1;
            }
            let free = (i < self.dirs.len() && self.dirs[i] == pos)
                || (j < other.dirs.len() && other.dirs[j] == pos);
            if !free && self.base.bit(pos) != other.base.bit(pos) {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl Serialize for Subcube {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Subcube", 2)?;
        s.serialize_field("base", &self.base.to_string())?;
        s.serialize_field("dirs", &self.dirs)?;
        s.end()
    }
}

/// External JSON form of a subcube: `{"base": "<01-string>", "dirs": […]}`
/// with positions 1-indexed ascending. Deliberately unvalidated so that
/// certificate verification can ingest and report broken cubes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSubcube {
    pub base: String,
    pub dirs: Vec<usize>,
}

impl RawSubcube {
    pub fn to_subcube(&self) -> Result<Subcube, SubcubeError> {
        Subcube::parse(&self.base, self.dirs.iter().copied())
    }
}

impl From<&Subcube> for RawSubcube {
    fn from(c: &Subcube) -> Self {
        RawSubcube {
            base: c.base.to_string(),
            dirs: c.dirs.clone(),
        }
    }
}

/// Every induced Q_k of Γ_n exactly once, sorted by base word, then by dirs.
///
/// Free positions are chosen as pairwise non-adjacent position sets; bases
/// are then 0 on those positions and their neighbours and an arbitrary
/// Fibonacci filling elsewhere, so no invalid candidate is ever generated.
pub fn enumerate_subcubes(n: usize, k: usize) -> Vec<Subcube> {
    if k == 0 {
        return enumerate_vertices(n)
            .into_iter()
            .map(|w| Subcube {
                base: w,
                dirs: Vec::new(),
            })
            .collect();
    }
    let mut out = Vec::new();
    let mut dirs = Vec::with_capacity(k);
    pick_dirs(1, n, k, &mut dirs, &mut out);
    out.sort_unstable();
    out
}

/// Extends `dirs` with non-adjacent positions starting at `start`.
fn pick_dirs(start: usize, n: usize, k: usize, dirs: &mut Vec<usize>, out: &mut Vec<Subcube>) {
    if dirs.len() == k {
        emit_bases(n, dirs, out);
        return;
    }
    let needed = k - dirs.len();
    let mut p = start;
    // the last pick must still fit: picks occupy p, p+2, ..., p+2(needed-1)
    while p + 2 * (needed - 1) <= n {
        dirs.push(p);
        pick_dirs(p + 2, n, k, dirs, out);
        dirs.pop();
        p += 1;
    }
}

/// All bases compatible with the free set `dirs`: 0 on dirs and their
/// neighbours, any Fibonacci word on each remaining maximal run of positions.
fn emit_bases(n: usize, dirs: &[usize], out: &mut Vec<Subcube>) {
    let mut forced = vec![false; n + 2];
    for &d in dirs {
        forced[d] = true;
        forced[d - 1] = true;
        if d < n {
            forced[d + 1] = true;
        }
    }
    let mut runs: Vec<(usize, Vec<FibWord>)> = Vec::new();
    let mut p = 1;
    while p <= n {
        if forced[p] {
            p += 1;
            continue;
        }
        let s = p;
        while p <= n && !forced[p] {
            p += 1;
        }
        runs.push((s, enumerate_vertices(p - s)));
    }
    let mut idx = vec![0usize; runs.len()];
    'emit: loop {
        let mut bits = vec![false; n];
        for ((s, words), &i) in runs.iter().zip(&idx) {
            for (off, &b) in words[i].bits().iter().enumerate() {
                bits[s - 1 + off] = b;
            }
        }
        let base = FibWord::from_bits(bits).expect("runs are separated by forced zeros");
        let cube = Subcube::new(base, dirs.iter().copied())
            .expect("forced zeros keep the top word Fibonacci");
        out.push(cube);
        let mut r = runs.len();
        loop {
            if r == 0 {
                break 'emit;
            }
            r -= 1;
            idx[r] += 1;
            if idx[r] < runs[r].1.len() {
                continue 'emit;
            }
            idx[r] = 0;
        }
    }
}

/// Overlapping pairs among indexed cubes. Each vertex remembers its earliest
/// claimant; every later claim reports the pair (earliest, later). The result
/// is empty iff the cubes are pairwise vertex-disjoint; it does not list
/// pairs of two later claimants of the same vertex.
///
/// Cubes too large to expand (2^k beyond the expansion cap) are instead
/// compared pairwise without expansion; a certificate cannot make this
/// allocate 2^k memory.
pub(crate) fn overlap_pairs<'a>(
    cubes: impl IntoIterator<Item = (usize, &'a Subcube)>,
) -> Vec<(usize, usize)> {
    const EXPANSION_CAP: usize = 20;
    let cubes: Vec<(usize, &Subcube)> = cubes.into_iter().collect();
    let mut owner: HashMap<FibWord, usize> = HashMap::new();
    let mut pairs = BTreeSet::new();
    for &(i, cube) in &cubes {
        if cube.k() > EXPANSION_CAP {
            continue;
        }
        for v in cube.vertices() {
            match owner.entry(v) {
                Entry::Occupied(e) => {
                    pairs.insert((*e.get(), i));
                }
                Entry::Vacant(e) => {
                    e.insert(i);
                }
            }
        }
    }
    for &(i, big) in cubes.iter().filter(|(_, c)| c.k() > EXPANSION_CAP) {
        for &(j, other) in &cubes {
            if i != j && !big.is_disjoint_from(other).unwrap_or(true) {
                pairs.insert((i.min(j), i.max(j)));
            }
        }
    }
    pairs.into_iter().collect()
}

/// Packing construction failures, naming the offending cube indices.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PackingError {
    #[error("cube {index}: ambient dimension {found}, packing has {expected}")]
    AmbientMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("cube {index}: dimension {found}, packing has {expected}")]
    CubeDimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("cubes {first} and {second} share a vertex")]
    Overlap { first: usize, second: usize },
}

/// A family of pairwise vertex-disjoint subcubes of equal dimension k in Γ_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing {
    n: usize,
    k: usize,
    cubes: Vec<Subcube>,
}

impl Packing {
    /// Validates dimensions and pairwise disjointness.
    pub fn new(n: usize, k: usize, cubes: Vec<Subcube>) -> Result<Self, PackingError> {
        for (index, cube) in cubes.iter().enumerate() {
            if cube.n() != n {
                return Err(PackingError::AmbientMismatch {
                    index,
                    expected: n,
                    found: cube.n(),
                });
            }
            if cube.k() != k {
                return Err(PackingError::CubeDimensionMismatch {
                    index,
                    expected: k,
                    found: cube.k(),
                });
            }
        }
        if let Some(&(first, second)) = overlap_pairs(cubes.iter().enumerate()).first() {
            return Err(PackingError::Overlap { first, second });
        }
        Ok(Packing { n, k, cubes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cubes(&self) -> &[Subcube] {
        &self.cubes
    }

    /// Number of cubes in the family.
    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }
}
