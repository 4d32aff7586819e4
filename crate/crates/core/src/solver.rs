//! Exact j-independence numbers and exact counts of (maximal) independent sets.
//!
//! A set `S` is j-independent when every edge meets it in at most `j`
//! vertices; weak independence is `j = k - 1`. All search routines work on
//! `u128` vertex masks, so they accept hypergraphs with at most
//! [`VERTEX_CAP`](crate::hypergraph::VERTEX_CAP) vertices.

use std::time::Instant;

use thiserror::Error;

use crate::hypergraph::{mask_of, vertices_of, Hypergraph, HypergraphError, Mask};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("independence level j={j} must satisfy 1 <= j <= k-1 (k={k})")]
    BadLevel { j: usize, k: usize },
    #[error("set size {s} exceeds n={n}")]
    SizeOutOfRange { s: usize, n: usize },
    #[error("count exceeds 64-bit range")]
    CountOverflow,
    #[error("solver deadline exceeded")]
    Timeout,
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// A validated independence level for a given uniformity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndependenceQuery {
    j: usize,
}

impl IndependenceQuery {
    pub fn new(j: usize, k: usize) -> Result<Self, SolverError> {
        if j == 0 || j >= k {
            return Err(SolverError::BadLevel { j, k });
        }
        Ok(Self { j })
    }

    /// Weak independence, `j = k - 1`.
    pub fn weak(k: usize) -> Self {
        Self { j: k - 1 }
    }

    pub fn j(&self) -> usize {
        self.j
    }
}

/// True iff every edge of `h` meets `set` in at most `j` vertices.
/// Works for any `n`; vertices outside `[0, n)` are ignored.
pub fn is_j_independent(h: &Hypergraph, set: &[usize], j: usize) -> bool {
    let mut member = vec![false; h.n()];
    for &v in set {
        if v < h.n() {
            member[v] = true;
        }
    }
    h.edges().all(|e| e.iter().filter(|&&v| member[v]).count() <= j)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    /// Abort with [`SolverError::Timeout`] once this instant passes.
    pub deadline: Option<Instant>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaSolution {
    pub alpha: usize,
    /// A maximum j-independent set, ascending.
    pub witness: Vec<usize>,
    /// Branch-and-bound nodes visited.
    pub nodes: u64,
}

/// Exact `alpha_j(h)`.
pub fn alpha_j(h: &Hypergraph, j: usize) -> Result<usize, SolverError> {
    Ok(solve_alpha(h, j, &SolveOptions::default())?.alpha)
}

/// Exact `alpha_j(h)` with a witness. Uses the forbidden-vertex search for
/// `j = k - 1` and the per-edge counter search otherwise.
pub fn solve_alpha(h: &Hypergraph, j: usize, opts: &SolveOptions) -> Result<AlphaSolution, SolverError> {
    let q = IndependenceQuery::new(j, h.k())?;
    if q.j() == h.k() - 1 {
        solve_alpha_weak(h, opts)
    } else {
        solve_alpha_counting(h, q.j(), opts)
    }
}

/// Vertex relabeling to "branch position": descending degree, then id.
/// The search then always branches on the lowest set bit.
struct Positions {
    to_vertex: Vec<usize>,
    edge_masks: Vec<Mask>,
    incident: Vec<Vec<usize>>,
}

impl Positions {
    fn new(h: &Hypergraph) -> Result<Self, SolverError> {
        h.masks()?;
        let mut to_vertex: Vec<usize> = (0..h.n()).collect();
        to_vertex.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
        let mut to_pos = vec![0; h.n()];
        for (pos, &v) in to_vertex.iter().enumerate() {
            to_pos[v] = pos;
        }
        let edge_masks = h.edges().map(|e| e.iter().fold(0, |m: Mask, &v| m | (1u128 << to_pos[v]))).collect();
        let incident = to_vertex.iter().map(|&v| h.incident(v).to_vec()).collect();
        Ok(Self { to_vertex, edge_masks, incident })
    }

    fn full(&self) -> Mask {
        low_bits(self.to_vertex.len())
    }

    fn to_vertices(&self, mask: Mask) -> Vec<usize> {
        let mut out: Vec<usize> = vertices_of(mask).into_iter().map(|p| self.to_vertex[p]).collect();
        out.sort_unstable();
        out
    }
}

fn low_bits(n: usize) -> Mask {
    if n >= 128 {
        Mask::MAX
    } else {
        (1u128 << n) - 1
    }
}

struct Search<'a> {
    pos: &'a Positions,
    best: usize,
    best_set: Mask,
    nodes: u64,
    deadline: Option<Instant>,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), SolverError> {
        self.nodes += 1;
        if self.nodes & 0xFFF == 1 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(SolverError::Timeout);
                }
            }
        }
        Ok(())
    }

    fn record(&mut self, chosen: Mask, size: usize) {
        if size > self.best {
            self.best = size;
            self.best_set = chosen;
        }
    }

    /// Weak independence: after adding `v`, any edge with exactly one
    /// unchosen vertex forbids that vertex.
    fn weak(&mut self, chosen: Mask, size: usize, mut cand: Mask) -> Result<(), SolverError> {
        self.tick()?;
        loop {
            if size + cand.count_ones() as usize <= self.best {
                return Ok(());
            }
            if cand == 0 {
                self.record(chosen, size);
                return Ok(());
            }
            let v = cand.trailing_zeros() as usize;
            let bit = 1u128 << v;
            cand &= !bit;
            let with = chosen | bit;
            let mut forbid = 0;
            for &e in &self.pos.incident[v] {
                let rest = self.pos.edge_masks[e] & !with;
                if rest.count_ones() == 1 {
                    forbid |= rest;
                }
            }
            self.weak(with, size + 1, cand & !forbid)?;
        }
    }

    /// General j: per-edge counts of chosen vertices; an edge at count `j`
    /// forbids its unchosen vertices.
    fn counting(
        &mut self,
        counts: &mut [usize],
        j: usize,
        chosen: Mask,
        size: usize,
        mut cand: Mask,
    ) -> Result<(), SolverError> {
        self.tick()?;
        loop {
            if size + cand.count_ones() as usize <= self.best {
                return Ok(());
            }
            if cand == 0 {
                self.record(chosen, size);
                return Ok(());
            }
            let v = cand.trailing_zeros() as usize;
            let bit = 1u128 << v;
            cand &= !bit;
            let with = chosen | bit;
            let mut forbid = 0;
            for &e in &self.pos.incident[v] {
                counts[e] += 1;
                if counts[e] == j {
                    forbid |= self.pos.edge_masks[e] & !with;
                }
            }
            let res = self.counting(counts, j, with, size + 1, cand & !forbid);
            for &e in &self.pos.incident[v] {
                counts[e] -= 1;
            }
            res?;
        }
    }
}

/// Branch and bound specialised to weak independence (`j = k - 1`).
pub fn solve_alpha_weak(h: &Hypergraph, opts: &SolveOptions) -> Result<AlphaSolution, SolverError> {
    let pos = Positions::new(h)?;
    let mut search = Search { pos: &pos, best: 0, best_set: 0, nodes: 0, deadline: opts.deadline };
    search.weak(0, 0, pos.full())?;
    Ok(AlphaSolution { alpha: search.best, witness: pos.to_vertices(search.best_set), nodes: search.nodes })
}

/// Branch and bound with per-edge counters; correct for every `1 <= j <= k-1`.
pub fn solve_alpha_counting(h: &Hypergraph, j: usize, opts: &SolveOptions) -> Result<AlphaSolution, SolverError> {
    IndependenceQuery::new(j, h.k())?;
    let pos = Positions::new(h)?;
    let mut counts = vec![0usize; h.edge_count()];
    let mut search = Search { pos: &pos, best: 0, best_set: 0, nodes: 0, deadline: opts.deadline };
    search.counting(&mut counts, j, 0, 0, pos.full())?;
    Ok(AlphaSolution { alpha: search.best, witness: pos.to_vertices(search.best_set), nodes: search.nodes })
}

/// Calls `visit` with the mask of every j-independent `s`-subset, in
/// lexicographic order of vertex ids. Partial sets are extended only while
/// they stay j-independent.
pub fn for_each_independent_set<F>(h: &Hypergraph, s: usize, j: usize, mut visit: F) -> Result<(), SolverError>
where
    F: FnMut(Mask),
{
    IndependenceQuery::new(j, h.k())?;
    let masks = h.masks()?;
    if s > h.n() {
        return Err(SolverError::SizeOutOfRange { s, n: h.n() });
    }
    let mut counts = vec![0usize; h.edge_count()];
    let mut walk = Walk { h, masks, j, s, counts: &mut counts, visit: &mut visit };
    walk.go(0, 0, low_bits(h.n()));
    Ok(())
}

struct Walk<'a, F> {
    h: &'a Hypergraph,
    masks: &'a [Mask],
    j: usize,
    s: usize,
    counts: &'a mut [usize],
    visit: &'a mut F,
}

impl<F: FnMut(Mask)> Walk<'_, F> {
    fn go(&mut self, chosen: Mask, size: usize, mut cand: Mask) {
        if size == self.s {
            (self.visit)(chosen);
            return;
        }
        while size + cand.count_ones() as usize >= self.s && cand != 0 {
            let v = cand.trailing_zeros() as usize;
            let bit = 1u128 << v;
            cand &= !bit;
            let with = chosen | bit;
            let mut forbid = 0;
            for &e in self.h.incident(v) {
                self.counts[e] += 1;
                if self.counts[e] == self.j {
                    forbid |= self.masks[e] & !with;
                }
            }
            self.go(with, size + 1, cand & !forbid);
            for &e in self.h.incident(v) {
                self.counts[e] -= 1;
            }
        }
    }
}

/// Exact number of j-independent `s`-subsets (`X_s` for `j = k - 1`).
pub fn count_independent_sets(h: &Hypergraph, s: usize, j: usize) -> Result<u64, SolverError> {
    let mut count = 0u64;
    let mut overflow = false;
    for_each_independent_set(h, s, j, |_| match count.checked_add(1) {
        Some(c) => count = c,
        None => overflow = true,
    })?;
    if overflow {
        return Err(SolverError::CountOverflow);
    }
    Ok(count)
}

/// True iff the weak-independent set `set` cannot be extended: every outside
/// vertex `v` has an edge containing `v` inside `set + v`.
pub fn is_maximal_independent(h: &Hypergraph, set: Mask) -> Result<bool, SolverError> {
    let masks = h.masks()?;
    Ok((0..h.n()).filter(|&v| set & (1u128 << v) == 0).all(|v| {
        let closed = set | (1u128 << v);
        h.incident(v).iter().any(|&e| masks[e] & !closed == 0)
    }))
}

/// Exact number of maximal weak-independent `s`-subsets (`Y_s`).
pub fn count_maximal_independent_sets(h: &Hypergraph, s: usize) -> Result<u64, SolverError> {
    let masks = h.masks()?;
    let mut count = 0u64;
    let mut overflow = false;
    for_each_independent_set(h, s, h.k() - 1, |set| {
        let maximal = (0..h.n()).filter(|&v| set & (1u128 << v) == 0).all(|v| {
            let closed = set | (1u128 << v);
            h.incident(v).iter().any(|&e| masks[e] & !closed == 0)
        });
        if maximal {
            match count.checked_add(1) {
                Some(c) => count = c,
                None => overflow = true,
            }
        }
    })?;
    if overflow {
        return Err(SolverError::CountOverflow);
    }
    Ok(count)
}

/// Convenience for callers holding vertex lists.
pub fn is_maximal_independent_set(h: &Hypergraph, set: &[usize]) -> Result<bool, SolverError> {
    let m = mask_of(set);
    Ok(is_j_independent(h, set, h.k() - 1) && is_maximal_independent(h, m)?)
}
