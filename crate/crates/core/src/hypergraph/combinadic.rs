//! Colexicographic ranking of k-subsets.
//!
//! A sorted subset `c_0 < c_1 < ... < c_{k-1}` has rank `sum_i C(c_i, i+1)`.
//! Colex order is frozen: sampled hypergraphs are addressed by these ranks,
//! so changing the order changes every seeded output.

use super::HypergraphError;

/// Exact binomial coefficient, `None` on `u128` overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Binomial coefficient that must fit; used where arguments are bounded by
/// an already validated `C(n, k)`.
pub(crate) fn binomial_small(n: usize, k: usize) -> u128 {
    binomial(n as u64, k as u64).expect("binomial within validated range")
}

/// Number of k-subsets of an n-set as a rank bound, with overflow reported.
pub fn subset_count(n: usize, k: usize) -> Result<u128, HypergraphError> {
    binomial(n as u64, k as u64).ok_or(HypergraphError::Capacity { n, k })
}

/// Colex rank of a strictly increasing subset of `[0, n)`.
pub fn rank_ksubset(n: usize, subset: &[usize]) -> Result<u128, HypergraphError> {
    let k = subset.len();
    subset_count(n, k)?;
    let mut rank = 0u128;
    for (i, &v) in subset.iter().enumerate() {
        if v >= n {
            return Err(HypergraphError::VertexOutOfRange { vertex: v, n });
        }
        if i > 0 && subset[i - 1] >= v {
            return Err(HypergraphError::NotStrictlyIncreasing);
        }
        rank += binomial_small(v, i + 1);
    }
    Ok(rank)
}

/// Inverse of [`rank_ksubset`].
pub fn unrank_ksubset(n: usize, k: usize, rank: u128) -> Result<Vec<usize>, HypergraphError> {
    let total = subset_count(n, k)?;
    if rank >= total {
        return Err(HypergraphError::RankOutOfRange { rank, total });
    }
    let mut out = vec![0usize; k];
    unrank_into(n, rank, &mut out);
    Ok(out)
}

/// Unranks into a caller-provided buffer; `rank < C(n, out.len())` is assumed.
pub(crate) fn unrank_into(n: usize, mut rank: u128, out: &mut [usize]) {
    let k = out.len();
    let mut hi = n;
    for i in (1..=k).rev() {
        // largest c < hi with C(c, i) <= rank
        let mut c = hi - 1;
        while binomial_small(c, i) > rank {
            c -= 1;
        }
        out[i - 1] = c;
        rank -= binomial_small(c, i);
        hi = c;
    }
}

/// Advances a sorted k-subset of `[0, n)` to its colex successor.
/// Returns `false` after the last subset.
pub fn next_colex(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    if k == 0 {
        return false;
    }
    let mut i = 0;
    while i + 1 < k && subset[i] + 1 == subset[i + 1] {
        i += 1;
    }
    if subset[i] + 1 >= n && i + 1 == k {
        return false;
    }
    subset[i] += 1;
    for (j, v) in subset.iter_mut().enumerate().take(i) {
        *v = j;
    }
    true
}

/// Iterator over all k-subsets of `[0, n)` in colex (rank) order.
pub struct ColexSubsets {
    current: Vec<usize>,
    n: usize,
    done: bool,
}

impl ColexSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        Self { current: (0..k).collect(), n, done: k > n }
    }
}

impl Iterator for ColexSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        if !next_colex(&mut self.current, self.n) {
            self.done = true;
        }
        Some(out)
    }
}
