//! Library results against brute force over small vertex sets, written
//! without reference to the library's own search code.

use hyperalpha::analytics::AnalyticContext;
use hyperalpha::augmented::{count_augmented, hat_alpha, is_augmented};
use hyperalpha::hypergraph::{Hypergraph, ModelParams, sample_hnkp};
use hyperalpha::solver::{alpha_j, count_independent_sets, count_maximal_independent_sets, is_j_independent};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ksubsets(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

fn to_vec(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

fn graph(n: usize, k: usize, edges: &[u32]) -> Hypergraph {
    Hypergraph::new(n, k, edges.iter().map(|&e| to_vec(e))).unwrap()
}

fn independent(edges: &[u32], set: u32, j: u32) -> bool {
    edges.iter().all(|e| (e & set).count_ones() <= j)
}

fn brute_alpha(n: usize, edges: &[u32], j: u32) -> usize {
    (0u32..1 << n).filter(|&s| independent(edges, s, j)).map(|s| s.count_ones() as usize).max().unwrap()
}

fn brute_count(n: usize, edges: &[u32], s: usize, j: u32) -> u64 {
    ksubsets(n, s).into_iter().filter(|&t| independent(edges, t, j)).count() as u64
}

fn brute_maximal(n: usize, k: usize, edges: &[u32], s: usize) -> u64 {
    let j = k as u32 - 1;
    ksubsets(n, s)
        .into_iter()
        .filter(|&t| independent(edges, t, j) && (0..n).all(|v| t >> v & 1 == 1 || !independent(edges, t | 1 << v, j)))
        .count() as u64
}

/// `(order, r)` if `t` is augmented, straight from the definition.
fn brute_augmented(n: usize, edges: &[u32], t: u32) -> Option<(usize, usize)> {
    let inside: Vec<u32> = edges.iter().copied().filter(|&e| e & !t == 0).collect();
    for (i, a) in inside.iter().enumerate() {
        if inside[i + 1..].iter().any(|b| a & b != 0) {
            return None;
        }
    }
    for v in (0..n).filter(|v| t >> v & 1 == 0) {
        let closed = t | 1 << v;
        if edges.iter().filter(|&&e| e >> v & 1 == 1 && e & !closed == 0).count() < 2 {
            return None;
        }
    }
    Some((t.count_ones() as usize - inside.len(), inside.len()))
}

fn brute_hat_alpha(n: usize, edges: &[u32]) -> usize {
    (0u32..1 << n).filter_map(|t| brute_augmented(n, edges, t)).map(|(o, _)| o).max().unwrap()
}

fn random_edges(rng: &mut ChaCha8Rng, n: usize, k: usize, p: f64) -> Vec<u32> {
    ksubsets(n, k).into_iter().filter(|_| rng.random::<f64>() < p).collect()
}

/// Every hypergraph on `n` vertices as a list of edge masks.
fn all_graphs(n: usize, k: usize) -> impl Iterator<Item = Vec<u32>> {
    let subsets = ksubsets(n, k);
    (0u64..1 << subsets.len())
        .map(move |bits| subsets.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e).collect())
}

#[test]
fn alpha_all_levels_on_every_hypergraph_n5_k3() {
    for edges in all_graphs(5, 3) {
        let h = graph(5, 3, &edges);
        for j in 1..=2u32 {
            assert_eq!(alpha_j(&h, j as usize).unwrap(), brute_alpha(5, &edges, j), "{edges:?} j={j}");
        }
    }
}

#[test]
fn alpha_random_instances_n9() {
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    for trial in 0..10_000 {
        let k = 3 + trial % 2;
        let p = [0.1, 0.3, 0.5, 0.8][trial / 2 % 4];
        let edges = random_edges(&mut rng, 9, k, p);
        let h = graph(9, k, &edges);
        let j = 1 + trial % (k - 1);
        assert_eq!(alpha_j(&h, j).unwrap(), brute_alpha(9, &edges, j as u32), "{edges:?} j={j}");
    }
}

#[test]
fn alpha_random_instances_n16() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for trial in 0..30 {
        let (k, p) = [(3, 0.05), (3, 0.2), (4, 0.1), (2, 0.3), (5, 0.2)][trial % 5];
        let edges = random_edges(&mut rng, 16, k, p);
        let h = graph(16, k, &edges);
        for j in 1..k {
            assert_eq!(alpha_j(&h, j).unwrap(), brute_alpha(16, &edges, j as u32), "{edges:?} j={j}");
        }
    }
}

/// Classic include/exclude recursion for the maximum independent set of a graph.
fn graph_mis(adj: &[u64], cand: u64) -> usize {
    if cand == 0 {
        return 0;
    }
    let v = cand.trailing_zeros() as usize;
    if adj[v] & cand == 0 {
        return 1 + graph_mis(adj, cand & !(1 << v));
    }
    let without = graph_mis(adj, cand & !(1 << v));
    let with = 1 + graph_mis(adj, cand & !(1 << v) & !adj[v]);
    without.max(with)
}

#[test]
fn graphs_match_mis_recursion() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for trial in 0..200 {
        let n = 10 + trial % 11;
        let p = [0.1, 0.3, 0.6][trial % 3];
        let mut adj = vec![0u64; n];
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.random::<f64>() < p {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                    edges.push(vec![a, b]);
                }
            }
        }
        let h = Hypergraph::new(n, 2, edges).unwrap();
        assert_eq!(alpha_j(&h, 1).unwrap(), graph_mis(&adj, (1u64 << n) - 1));
    }
}

#[test]
fn counts_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..400 {
        let (n, k) = [(8, 3), (9, 3), (8, 4), (7, 2)][trial % 4];
        let edges = random_edges(&mut rng, n, k, [0.1, 0.3, 0.6][trial % 3]);
        let h = graph(n, k, &edges);
        for s in 0..=n {
            for j in 1..k {
                assert_eq!(count_independent_sets(&h, s, j).unwrap(), brute_count(n, &edges, s, j as u32));
            }
            assert_eq!(count_maximal_independent_sets(&h, s).unwrap(), brute_maximal(n, k, &edges, s));
        }
    }
}

#[test]
fn augmented_recognition_matches_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..150 {
        let (n, k) = [(7, 3), (8, 3), (7, 4), (6, 2)][trial % 4];
        let edges = random_edges(&mut rng, n, k, [0.2, 0.5, 0.8][trial % 3]);
        let h = graph(n, k, &edges);
        let mut counts = std::collections::HashMap::new();
        for t in 0u32..1 << n {
            let got = is_augmented(&h, &to_vec(t)).unwrap().map(|a| (a.order, a.r));
            let want = brute_augmented(n, &edges, t);
            assert_eq!(got, want, "{edges:?} T={t:b}");
            if let Some(key) = want {
                *counts.entry(key).or_insert(0u64) += 1;
            }
        }
        for s in 0..=n {
            for r in 0..=n {
                let want = counts.get(&(s, r)).copied().unwrap_or(0);
                assert_eq!(count_augmented(&h, s, r).unwrap(), want, "{edges:?} s={s} r={r}");
            }
        }
        assert_eq!(hat_alpha(&h).unwrap(), brute_hat_alpha(n, &edges));
    }
}

#[test]
fn augmented_sets_yield_k_pow_r_independent_subsets() {
    let h = sample_hnkp(&ModelParams::new(9, 3, 0.5, 4).unwrap()).unwrap();
    let mut seen = 0;
    for t in 0usize..1 << 9 {
        let vs: Vec<usize> = (0..9).filter(|i| t >> i & 1 == 1).collect();
        if let Some(a) = is_augmented(&h, &vs).unwrap() {
            let subs = a.independent_subsets();
            assert_eq!(subs.len(), 3usize.pow(a.r as u32));
            for s in &subs {
                assert_eq!(s.len(), a.order);
                assert!(is_j_independent(&h, s, 2));
            }
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn monotone_in_level_and_under_added_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let (n, k) = (10, 4);
        let edges = random_edges(&mut rng, n, k, 0.15);
        let h = graph(n, k, &edges);
        let levels: Vec<usize> = (1..k).map(|j| alpha_j(&h, j).unwrap()).collect();
        assert!(levels.windows(2).all(|w| w[0] <= w[1]));
        let extra = ksubsets(n, k)[rng.random_range(0..210)];
        let mut more = edges.clone();
        if !more.contains(&extra) {
            more.push(extra);
        }
        let h2 = graph(n, k, &more);
        for j in 1..k {
            assert!(alpha_j(&h2, j).unwrap() <= alpha_j(&h, j).unwrap());
        }
    }
}

/// Exact expectations by summing over every hypergraph, weighted by its probability.
#[test]
fn expectation_formulas_are_exact_on_small_models() {
    for (n, k) in [(5, 3), (5, 2), (6, 4), (4, 2)] {
        let total = ksubsets(n, k).len() as i32;
        for p in [0.3, 0.5, 0.85] {
            let ctx = AnalyticContext::new(n, k, p, 0.1).unwrap();
            let mut ex = vec![0.0f64; n + 1];
            let mut ey = vec![0.0f64; n + 1];
            let mut ez = vec![vec![0.0f64; n + 1]; n + 1];
            for edges in all_graphs(n, k) {
                let m = edges.len() as i32;
                let w = p.powi(m) * (1.0 - p).powi(total - m);
                for s in 0..=n {
                    ex[s] += w * brute_count(n, &edges, s, k as u32 - 1) as f64;
                    ey[s] += w * brute_maximal(n, k, &edges, s) as f64;
                }
                for t in 0u32..1 << n {
                    if let Some((o, r)) = brute_augmented(n, &edges, t) {
                        ez[o][r] += w;
                    }
                }
            }
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-10 * b.abs().max(1e-3);
            for s in 0..=n {
                assert!(close(ctx.log_expected_xs(s).exp(), ex[s]), "X n={n} k={k} p={p} s={s}");
                assert!(close(ctx.log_expected_ys(s).exp(), ey[s]), "Y n={n} k={k} p={p} s={s}");
                #[allow(clippy::needless_range_loop)]
                for r in 0..=s / (k - 1) {
                    if s + r <= n {
                        let e = ctx.log_expected_augmented(s, r).unwrap().exp();
                        assert!(close(e, ez[s][r]), "Z n={n} k={k} p={p} s={s} r={r}: {e} vs {}", ez[s][r]);
                    }
                }
            }
        }
    }
}

#[test]
fn stated_small_examples() {
    let h = Hypergraph::new(5, 3, [[0, 1, 2], [0, 3, 4]]).unwrap();
    assert!(is_j_independent(&h, &[2, 3, 4], 2));
    assert_eq!(alpha_j(&h, 2).unwrap(), 4);
    assert_eq!(hat_alpha(&h).unwrap(), 4);
    let a = is_augmented(&h, &[1, 2, 3, 4]).unwrap().unwrap();
    assert_eq!((a.order, a.r), (4, 0));
    assert!(is_augmented(&h, &[0, 1, 2, 3, 4]).unwrap().is_none());
    let edges = [0b00111u32, 0b11001];
    assert_eq!(count_maximal_independent_sets(&h, 4).unwrap(), brute_maximal(5, 3, &edges, 4));

    let one = Hypergraph::new(5, 3, [[0, 1, 2]]).unwrap();
    assert_eq!(count_independent_sets(&one, 3, 2).unwrap(), 9);
    let complete = Hypergraph::complete(5, 3).unwrap();
    assert_eq!(count_independent_sets(&complete, 3, 2).unwrap(), 0);
    assert_eq!(hat_alpha(&complete).unwrap(), 2);
    let empty = Hypergraph::empty(6, 3).unwrap();
    assert_eq!(count_maximal_independent_sets(&empty, 6).unwrap(), 1);
    assert_eq!(count_maximal_independent_sets(&empty, 5).unwrap(), 0);
    assert_eq!(count_augmented(&empty, 6, 0).unwrap(), 1);
    assert_eq!(count_augmented(&empty, 3, 2).unwrap(), 0);
}
