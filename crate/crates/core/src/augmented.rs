//! Augmented independent sets.
//!
//! A vertex set `T` is an augmented independent set of order `s` when
//!
//! 1. `|T| = s + r` for some `r >= 0`,
//! 2. the edges induced on `T` are exactly `r` pairwise disjoint edges
//!    (a k-matching), and
//! 3. every vertex `v` outside `T` lies in at least two edges contained in
//!    `T + v`.
//!
//! The matching is always the induced edge set of `T`, so a set is fully
//! described by its vertices. Deleting one vertex from each matching edge
//! yields `k^r` distinct independent sets of size `s`, and the largest order
//! of an augmented set equals the weak independence number.

use std::ops::ControlFlow;

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{mask_of, vertices_of, Hypergraph, HypergraphError, Mask};

/// Default cap on examined candidate subsets per call.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error)]
pub enum AugmentedError {
    #[error("enumeration budget of {limit} subsets exceeded")]
    BudgetExceeded { limit: u64 },
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AugmentedSet {
    /// The set `T`, ascending.
    pub vertices: Vec<usize>,
    /// Induced edges of `T`; pairwise disjoint.
    pub matching: Vec<Vec<usize>>,
    /// `|T| - r`.
    pub order: usize,
    pub r: usize,
}

impl AugmentedSet {
    /// The `k^r` independent `order`-subsets obtained by deleting exactly one
    /// vertex from every matching edge.
    pub fn independent_subsets(&self) -> Vec<Vec<usize>> {
        let matched: Vec<usize> = self.matching.iter().flatten().copied().collect();
        let free: Vec<usize> = self.vertices.iter().copied().filter(|v| !matched.contains(v)).collect();
        let mut out = vec![free];
        for edge in &self.matching {
            let mut next = Vec::with_capacity(out.len() * edge.len());
            for base in &out {
                for drop in edge {
                    let mut s = base.clone();
                    s.extend(edge.iter().filter(|v| *v != drop));
                    next.push(s);
                }
            }
            out = next;
        }
        for s in &mut out {
            s.sort_unstable();
        }
        out
    }
}

/// Cap on the number of subsets an enumeration may examine.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Self { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    fn spend(&mut self) -> Result<(), AugmentedError> {
        self.used += 1;
        if self.used > self.limit {
            return Err(AugmentedError::BudgetExceeded { limit: self.limit });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET)
    }
}

/// Every vertex outside `t` closes at least two edges with `t`.
fn outside_doubly_covered(h: &Hypergraph, masks: &[Mask], t: Mask) -> bool {
    (0..h.n()).filter(|&v| t & (1u128 << v) == 0).all(|v| {
        let closed = t | (1u128 << v);
        h.incident(v).iter().filter(|&&e| masks[e] & !closed == 0).nth(1).is_some()
    })
}

fn build(h: &Hypergraph, t: Mask, induced: &[usize]) -> AugmentedSet {
    let vertices = vertices_of(t);
    let r = induced.len();
    let mut matching: Vec<Vec<usize>> = induced.iter().map(|&e| h.edge(e).to_vec()).collect();
    matching.sort_unstable();
    AugmentedSet { order: vertices.len() - r, vertices, matching, r }
}

/// Recognizes an augmented independent set; `None` if any condition fails.
pub fn is_augmented(h: &Hypergraph, t: &[usize]) -> Result<Option<AugmentedSet>, AugmentedError> {
    let masks = h.masks()?;
    if let Some(&v) = t.iter().find(|&&v| v >= h.n()) {
        return Err(AugmentedError::VertexOutOfRange { vertex: v, n: h.n() });
    }
    let tm = mask_of(t);
    let induced: Vec<usize> = (0..h.edge_count()).filter(|&e| masks[e] & !tm == 0).collect();
    let mut covered: Mask = 0;
    for &e in &induced {
        if covered & masks[e] != 0 {
            return Ok(None);
        }
        covered |= masks[e];
    }
    if !outside_doubly_covered(h, masks, tm) {
        return Ok(None);
    }
    Ok(Some(build(h, tm, &induced)))
}

struct Enumerator<'a, F> {
    h: &'a Hypergraph,
    masks: &'a [Mask],
    size: usize,
    r: usize,
    budget: &'a mut Budget,
    induced: Vec<usize>,
    visit: &'a mut F,
}

impl<F> Enumerator<'_, F>
where
    F: FnMut(Mask, &[usize]) -> ControlFlow<()>,
{
    /// Extends `t` with vertices above `next - 1`. `covered` is the union of
    /// induced edges so far.
    fn go(&mut self, t: Mask, len: usize, covered: Mask, next: usize) -> Result<ControlFlow<()>, AugmentedError> {
        self.budget.spend()?;
        if len == self.size {
            if self.induced.len() == self.r && outside_doubly_covered(self.h, self.masks, t) {
                return Ok((self.visit)(t, &self.induced));
            }
            return Ok(ControlFlow::Continue(()));
        }
        for v in next..self.h.n() {
            if len + (self.h.n() - v) < self.size {
                break;
            }
            let with = t | (1u128 << v);
            // New induced edges all contain v, so at most one may appear and it
            // must avoid the current matching.
            let mut new_edge = None;
            let mut ok = true;
            for &e in self.h.incident(v) {
                if self.masks[e] & !with == 0 {
                    if new_edge.is_some() || self.masks[e] & covered != 0 {
                        ok = false;
                        break;
                    }
                    new_edge = Some(e);
                }
            }
            if !ok {
                continue;
            }
            let mut cov = covered;
            if let Some(e) = new_edge {
                if self.induced.len() == self.r {
                    continue;
                }
                self.induced.push(e);
                cov |= self.masks[e];
            }
            let flow = self.go(with, len + 1, cov, v + 1);
            if new_edge.is_some() {
                self.induced.pop();
            }
            if flow?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Visits every augmented set of order `s` with exactly `r` matching edges,
/// as `(vertex mask, induced edge ids)`.
pub fn for_each_augmented<F>(
    h: &Hypergraph,
    s: usize,
    r: usize,
    budget: &mut Budget,
    mut visit: F,
) -> Result<ControlFlow<()>, AugmentedError>
where
    F: FnMut(Mask, &[usize]) -> ControlFlow<()>,
{
    let masks = h.masks()?;
    if (h.k() - 1) * r > s || s + r > h.n() {
        return Ok(ControlFlow::Continue(()));
    }
    let mut e = Enumerator { h, masks, size: s + r, r, budget, induced: Vec::new(), visit: &mut visit };
    e.go(0, 0, 0, 0)
}

/// All augmented sets of order `s`, ordered by `r` then lexicographically.
pub fn enumerate_augmented(h: &Hypergraph, s: usize) -> Result<Vec<AugmentedSet>, AugmentedError> {
    enumerate_augmented_with(h, s, &mut Budget::default())
}

pub fn enumerate_augmented_with(
    h: &Hypergraph,
    s: usize,
    budget: &mut Budget,
) -> Result<Vec<AugmentedSet>, AugmentedError> {
    let mut out = Vec::new();
    for r in 0..=s / (h.k() - 1) {
        let _ = for_each_augmented(h, s, r, budget, |t, induced| {
            out.push(build(h, t, induced));
            ControlFlow::Continue(())
        })?;
    }
    Ok(out)
}

fn exists_of_order(h: &Hypergraph, s: usize, budget: &mut Budget) -> Result<bool, AugmentedError> {
    for r in 0..=s / (h.k() - 1) {
        if for_each_augmented(h, s, r, budget, |_, _| ControlFlow::Break(()))?.is_break() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Largest order of an augmented independent set.
pub fn hat_alpha(h: &Hypergraph) -> Result<usize, AugmentedError> {
    hat_alpha_with(h, &mut Budget::default())
}

pub fn hat_alpha_with(h: &Hypergraph, budget: &mut Budget) -> Result<usize, AugmentedError> {
    h.masks()?;
    for s in (0..=h.n()).rev() {
        if exists_of_order(h, s, budget)? {
            return Ok(s);
        }
    }
    // an augmented set of order alpha(h) always exists
    unreachable!("no augmented set of any order")
}

/// Number of augmented sets of order `s` with exactly `r` matching edges
/// (the realized `Z_{s,r}`).
pub fn count_augmented(h: &Hypergraph, s: usize, r: usize) -> Result<u64, AugmentedError> {
    count_augmented_with(h, s, r, &mut Budget::default())
}

pub fn count_augmented_with(h: &Hypergraph, s: usize, r: usize, budget: &mut Budget) -> Result<u64, AugmentedError> {
    let mut count = 0u64;
    let _ = for_each_augmented(h, s, r, budget, |_, _| {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count)
}
