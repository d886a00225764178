//! Exact maximum disjoint-subcube counts by search.
//!
//! This module exists to falsify the counting routes, so it deliberately
//! depends only on word enumeration and subcube primitives — never on the
//! formulas or the constructive builder — and its pruning uses only the
//! generic capacity bound ⌊free vertices / 2^k⌋.
//!
//! * k = 1: maximum matching on Γ_n, which is bipartite by word-weight
//!   parity, via augmenting paths.
//! * k ≥ 2: enumerate every induced Q_k, then exact maximum set packing by
//!   depth-first branch and bound: branch on the lowest-index uncovered
//!   vertex, either covering it with one of the cubes through it (tried in
//!   enumeration order) or discarding it.
//!
//! The search is sequential and fully deterministic: counts and witnesses are
//! identical across runs.

use std::collections::HashMap;

use crate::fibstrings::{enumerate_vertices, FibWord};
use crate::subcubes::{enumerate_subcubes, Packing, Subcube};

/// Default search-node budget.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Outcome of an exact search: a proven maximum, or — when the node budget
/// ran out — the best packing found so far, which is only a lower bound and
/// is never reported as exact.
#[derive(Debug, Clone)]
pub enum OracleOutcome {
    Exact {
        count: usize,
        witness: Packing,
        nodes: u64,
    },
    BudgetExceeded {
        best_count: usize,
        witness: Packing,
        nodes: u64,
    },
}

impl OracleOutcome {
    pub fn count(&self) -> usize {
        match self {
            OracleOutcome::Exact { count, .. } => *count,
            OracleOutcome::BudgetExceeded { best_count, .. } => *best_count,
        }
    }

    pub fn witness(&self) -> &Packing {
        match self {
            OracleOutcome::Exact { witness, .. } => witness,
            OracleOutcome::BudgetExceeded { witness, .. } => witness,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            OracleOutcome::Exact { nodes, .. } => *nodes,
            OracleOutcome::BudgetExceeded { nodes, .. } => *nodes,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, OracleOutcome::Exact { .. })
    }
}

/// Maximum number of pairwise vertex-disjoint induced Q_k in Γ_n, with one
/// maximizing family as witness.
pub fn oracle_max_packing(n: usize, k: usize, budget: u64) -> OracleOutcome {
    match k {
        0 => singleton_packing(n),
        1 => matching_oracle(n),
        _ => set_packing_oracle(n, k, budget),
    }
}

/// k = 0: every vertex alone.
fn singleton_packing(n: usize) -> OracleOutcome {
    let cubes: Vec<Subcube> = enumerate_subcubes(n, 0);
    let count = cubes.len();
    let witness = Packing::new(n, 0, cubes).expect("vertices are disjoint");
    OracleOutcome::Exact {
        count,
        witness,
        nodes: 0,
    }
}

/// k = 1: augmenting-path maximum matching, searching from every even-weight
/// vertex in lexicographic order. The edges of Γ_n are exactly its 1-cubes.
fn matching_oracle(n: usize) -> OracleOutcome {
    let verts = enumerate_vertices(n);
    let index: HashMap<&FibWord, usize> = verts.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
    for edge in enumerate_subcubes(n, 1) {
        let u = index[edge.base()];
        let v = index[&edge.top_word()];
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let mut partner: Vec<Option<usize>> = vec![None; verts.len()];
    let mut nodes = 0u64;
    for u in 0..verts.len() {
        if verts[u].weight().is_multiple_of(2) {
            let mut seen = vec![false; verts.len()];
            augment(u, &adj, &mut partner, &mut seen, &mut nodes);
        }
    }

    let mut cubes = Vec::new();
    for v in 0..verts.len() {
        if !verts[v].weight().is_multiple_of(2) {
            if let Some(u) = partner[v] {
                cubes.push(edge_cube(&verts[u], &verts[v]));
            }
        }
    }
    cubes.sort_unstable();
    let count = cubes.len();
    let witness = Packing::new(n, 1, cubes).expect("a matching is a disjoint family");
    OracleOutcome::Exact {
        count,
        witness,
        nodes,
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    partner: &mut Vec<Option<usize>>,
    seen: &mut [bool],
    nodes: &mut u64,
) -> bool {
    *nodes += 1;
    for &v in &adj[u] {
        if !seen[v] {
            seen[v] = true;
            let free_or_movable = match partner[v] {
                None => true,
                Some(w) => augment(w, adj, partner, seen, nodes),
            };
            if free_or_movable {
                partner[v] = Some(u);
                partner[u] = Some(v);
                return true;
            }
        }
    }
    false
}

/// The 1-cube through two adjacent words: base is the endpoint holding 0 at
/// the differing position.
fn edge_cube(a: &FibWord, b: &FibWord) -> Subcube {
    let pos = a
        .bits()
        .iter()
        .zip(b.bits())
        .position(|(x, y)| x != y)
        .expect("matched words differ")
        + 1;
    let base = if a.bit(pos) { b } else { a };
    Subcube::new(base.clone(), [pos]).expect("an edge of the cube is a valid 1-cube")
}

/// k ≥ 2: exhaustive branch-and-bound set packing over all induced Q_k.
fn set_packing_oracle(n: usize, k: usize, budget: u64) -> OracleOutcome {
    let verts = enumerate_vertices(n);
    let index: HashMap<&FibWord, usize> = verts.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let cubes = enumerate_subcubes(n, k);
    let cube_verts: Vec<Vec<usize>> = cubes
        .iter()
        .map(|c| c.vertices().iter().map(|w| index[w]).collect())
        .collect();
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
    for (ci, vs) in cube_verts.iter().enumerate() {
        for &v in vs {
            through[v].push(ci);
        }
    }

    let mut search = Search {
        k,
        cube_verts: &cube_verts,
        through: &through,
        free: vec![u64::MAX; verts.len().div_ceil(64)],
        free_count: verts.len(),
        chosen: Vec::new(),
        best: 0,
        best_chosen: Vec::new(),
        nodes: 0,
        budget,
        exceeded: false,
    };
    let used = verts.len() % 64;
    if used != 0 {
        *search.free.last_mut().expect("Γ_n is never empty") = (1u64 << used) - 1;
    }
    search.dfs(0, 0);

    let mut picked = search.best_chosen;
    picked.sort_unstable();
    let chosen_cubes: Vec<Subcube> = picked.into_iter().map(|ci| cubes[ci].clone()).collect();
    let count = chosen_cubes.len();
    let witness = Packing::new(n, k, chosen_cubes).expect("search keeps cubes disjoint");
    if search.exceeded {
        OracleOutcome::BudgetExceeded {
            best_count: count,
            witness,
            nodes: search.nodes,
        }
    } else {
        OracleOutcome::Exact {
            count,
            witness,
            nodes: search.nodes,
        }
    }
}

struct Search<'a> {
    k: usize,
    cube_verts: &'a [Vec<usize>],
    through: &'a [Vec<usize>],
    free: Vec<u64>,
    free_count: usize,
    chosen: Vec<usize>,
    best: usize,
    best_chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
    exceeded: bool,
}

impl Search<'_> {
    #[inline]
    fn is_free(&self, v: usize) -> bool {
        self.free[v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    fn clear(&mut self, v: usize) {
        self.free[v / 64] &= !(1u64 << (v % 64));
        self.free_count -= 1;
    }

    #[inline]
    fn restore(&mut self, v: usize) {
        self.free[v / 64] |= 1u64 << (v % 64);
        self.free_count += 1;
    }

    fn next_free(&self, from: usize) -> Option<usize> {
        let mut w = from / 64;
        if w >= self.free.len() {
            return None;
        }
        let mut word = self.free[w] & (u64::MAX << (from % 64));
        loop {
            if word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
            w += 1;
            if w >= self.free.len() {
                return None;
            }
            word = self.free[w];
        }
    }

    fn usable(&self, cube: usize) -> bool {
        self.cube_verts[cube].iter().all(|&v| self.is_free(v))
    }

    fn dfs(&mut self, cur: usize, from: usize) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exceeded = true;
            return;
        }
        // capacity bound: each further cube needs 2^k free vertices
        if cur + (self.free_count >> self.k) <= self.best {
            return;
        }
        let Some(v) = self.next_free(from) else {
            // all vertices decided; the bound above guarantees cur > best
            self.best = cur;
            self.best_chosen = self.chosen.clone();
            return;
        };
        for idx in 0..self.through[v].len() {
            let cube = self.through[v][idx];
            if !self.usable(cube) {
                continue;
            }
            for i in 0..self.cube_verts[cube].len() {
                let w = self.cube_verts[cube][i];
                self.clear(w);
            }
            self.chosen.push(cube);
            self.dfs(cur + 1, v);
            self.chosen.pop();
            for i in 0..self.cube_verts[cube].len() {
                let w = self.cube_verts[cube][i];
                self.restore(w);
            }
            if self.exceeded {
                return;
            }
        }
        // leave v uncovered
        self.clear(v);
        self.dfs(cur, v + 1);
        self.restore(v);
    }
}
