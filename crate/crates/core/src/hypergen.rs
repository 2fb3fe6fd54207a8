//! Seeded generators and the short-cycle deletion step.

use std::collections::VecDeque;

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::graphcore::{
    has_cycle_of_length, shortest_cycle_through_within, BipartiteGraph, Graph, OrientedHypergraph,
    UniformHypergraph,
};
use crate::rng::Rng;

/// Parameters of a random `a`-uniform hypergraph with `m` hyperedges on `n`
/// vertices; `k` is the girth threshold used by the repair step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    pub a: usize,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub seed: u64,
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        // r * (n - i) / (i + 1) stays integral at every step
        r = match r.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    r
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.a < 2 || self.a > self.n {
            return Err(Error::InvalidParameter(format!(
                "need 2 <= a <= n, got a={} n={}",
                self.a, self.n
            )));
        }
        if self.m == 0 {
            return Err(Error::InvalidParameter("m must be positive".into()));
        }
        if self.k < 2 {
            return Err(Error::InvalidParameter("k must be at least 2".into()));
        }
        let max = binomial(self.n, self.a) / 2;
        if self.m as u128 > max {
            return Err(Error::DensityTooHigh { m: self.m, max });
        }
        Ok(())
    }
}

/// `m` distinct hyperedges, each a uniform `a`-subset; duplicates are
/// rejected and redrawn.
pub fn random_hypergraph(cfg: &GenConfig) -> Result<UniformHypergraph> {
    cfg.validate()?;
    let mut rng = Rng::seed_from(cfg.seed);
    let mut h = UniformHypergraph::new(cfg.a, cfg.n);
    while h.edge_count() < cfg.m {
        let e = rng.subset(cfg.n, cfg.a);
        if !h.contains(&e) {
            h.add_edge(&e)?;
        }
    }
    Ok(h)
}

/// As [`random_hypergraph`], and each accepted hyperedge is then put in a
/// uniformly random order (Fisher–Yates on the ascending list).
pub fn random_oriented(cfg: &GenConfig) -> Result<OrientedHypergraph> {
    cfg.validate()?;
    let mut rng = Rng::seed_from(cfg.seed);
    let mut seen = UniformHypergraph::new(cfg.a, cfg.n);
    let mut o = OrientedHypergraph::new(cfg.a, cfg.n);
    while o.edge_count() < cfg.m {
        let mut e = rng.subset(cfg.n, cfg.a);
        if seen.contains(&e) {
            continue;
        }
        seen.add_edge(&e)?;
        rng.shuffle(&mut e);
        o.add_edge(&e)?;
    }
    Ok(o)
}

/// Outcome of [`repair_girth`].
#[derive(Debug, Clone)]
pub struct Repair {
    pub hypergraph: UniformHypergraph,
    /// Input indices of the kept hyperedges, ascending.
    pub kept: Vec<usize>,
    /// Input indices of the deleted hyperedges, in deletion order.
    pub deleted: Vec<usize>,
}

/// Deletes hyperedges until no Berge-cycle of length `<= k` remains.
///
/// Each round finds the current shortest Berge-cycle length `l <= k` and
/// deletes the lowest-indexed hyperedge lying on some Berge-cycle of length
/// `l`. Every deletion destroys at least one short Berge-cycle of the input.
pub fn repair_girth(h: &UniformHypergraph, k: usize) -> Result<Repair> {
    let (kept, deleted) = repair_indices(h, k)?;
    Ok(Repair {
        hypergraph: h.retain_indices(&kept),
        kept,
        deleted,
    })
}

/// Same deletion rule applied to the underlying hypergraph of `o`.
pub fn repair_girth_oriented(
    o: &OrientedHypergraph,
    k: usize,
) -> Result<(OrientedHypergraph, Vec<usize>)> {
    let (kept, deleted) = repair_indices(&o.underlying(), k)?;
    Ok((o.retain_indices(&kept), deleted))
}

fn repair_indices(h: &UniformHypergraph, k: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if k < 2 {
        return Err(Error::InvalidParameter("k must be at least 2".into()));
    }
    let n = h.n();
    let mut alive: Vec<usize> = (0..h.edge_count()).collect();
    let mut deleted = Vec::new();
    loop {
        let mut inc = Graph::new(n + alive.len());
        for (j, &i) in alive.iter().enumerate() {
            for &v in &h.edges()[i] {
                inc.add_edge(v, n + j).unwrap();
            }
        }
        let through: Vec<Option<usize>> = (0..alive.len())
            .map(|j| shortest_cycle_through_within(&inc, n + j, 2 * k))
            .collect();
        let Some(shortest) = through.iter().flatten().copied().min() else {
            break;
        };
        let victim = through.iter().position(|&c| c == Some(shortest)).unwrap();
        deleted.push(alive.remove(victim));
    }
    Ok((alive, deleted))
}

/// Smallest `m` with `2 exp(-2 eps^2 m) <= delta`.
pub fn hoeffding_sample_size(eps: f64, delta: f64) -> Result<usize> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "eps must lie in (0, 1], got {eps}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    let m = ((2.0 / delta).ln() / (2.0 * eps * eps)).ceil();
    Ok((m as usize).max(1))
}

/// Attempts made by [`high_girth_bipartite`] before reporting infeasibility.
pub const HIGH_GIRTH_ATTEMPTS: usize = 64;

/// Random connected bipartite graph with `n_per_side` vertices per class
/// (`A = 0..n`, `B = n..2n`), girth at least `target_girth` and minimum
/// degree at least `min_degree`.
///
/// Repeatedly picks a deficient vertex of least degree and joins it to a
/// least-degree vertex of the other class whose distance is at least
/// `target_girth - 1`; components are then joined by single edges, which
/// closes no cycle.
pub fn high_girth_bipartite(
    n_per_side: usize,
    target_girth: usize,
    min_degree: usize,
    seed: u64,
) -> Result<BipartiteGraph> {
    if n_per_side == 0 || min_degree == 0 || target_girth < 4 {
        return Err(Error::InvalidParameter(
            "need n_per_side >= 1, min_degree >= 1, target_girth >= 4".into(),
        ));
    }
    if min_degree > n_per_side {
        return Err(Error::Infeasible(format!(
            "degree {min_degree} needs more than {n_per_side} vertices per side"
        )));
    }
    let mut rng = Rng::seed_from(seed);
    for _ in 0..HIGH_GIRTH_ATTEMPTS {
        if let Some(g) = greedy_attempt(n_per_side, target_girth, min_degree, &mut rng) {
            let g = connect_components(g, n_per_side);
            return BipartiteGraph::with_classes(
                g,
                (0..n_per_side).collect(),
                (n_per_side..2 * n_per_side).collect(),
            );
        }
    }
    Err(Error::Infeasible(format!(
        "no girth-{target_girth} graph with minimum degree {min_degree} found in {HIGH_GIRTH_ATTEMPTS} attempts"
    )))
}

fn greedy_attempt(n: usize, girth: usize, min_degree: usize, rng: &mut Rng) -> Option<Graph> {
    let mut g = Graph::new(2 * n);
    let mut dist = vec![usize::MAX; 2 * n];
    let mut queue = VecDeque::new();
    loop {
        let low = (0..2 * n).map(|v| g.degree(v)).min().unwrap();
        if low >= min_degree {
            return Some(g);
        }
        let deficient: Vec<usize> = (0..2 * n).filter(|&v| g.degree(v) == low).collect();
        let u = deficient[rng.index(deficient.len())];

        // forbid partners closer than girth - 1
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[u] = 0;
        queue.clear();
        queue.push_back(u);
        while let Some(x) = queue.pop_front() {
            if dist[x] + 1 > girth - 2 {
                continue;
            }
            for &y in g.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        let other = if u < n { n..2 * n } else { 0..n };
        let allowed: Vec<usize> = other.filter(|&v| dist[v] == usize::MAX).collect();
        let best = allowed.iter().map(|&v| g.degree(v)).min()?;
        let pool: Vec<usize> = allowed
            .into_iter()
            .filter(|&v| g.degree(v) == best)
            .collect();
        let v = pool[rng.index(pool.len())];
        g.add_edge(u, v).unwrap();
    }
}

fn connect_components(mut g: Graph, n: usize) -> Graph {
    let comp = g.components();
    let count = comp.iter().max().map_or(0, |&c| c + 1);
    // component 0 contains vertex 0 (in A); join each other component by
    // an edge from its smallest B vertex to vertex 0, or from its smallest
    // A vertex to the smallest B vertex of component 0
    let main_b = (n..2 * n).find(|&v| comp[v] == 0);
    for c in 1..count {
        if let Some(b) = (n..2 * n).find(|&v| comp[v] == c) {
            g.add_edge(0, b).unwrap();
        } else if let (Some(a), Some(mb)) = ((0..n).find(|&v| comp[v] == c), main_b) {
            g.add_edge(a, mb).unwrap();
        }
    }
    g
}

/// Random bipartite graph with classes `0..n_a` and `n_a..n_a+n_b` and no
/// cycle of length `2k`: the pairs are visited in random order and each is
/// kept if it closes no `C_{2k}`, until `max_edges` are kept.
pub fn random_c2k_free_bipartite(
    n_a: usize,
    n_b: usize,
    k: usize,
    max_edges: usize,
    seed: u64,
) -> Result<BipartiteGraph> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("need k >= 2, got {k}")));
    }
    let mut rng = Rng::seed_from(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n_a)
        .flat_map(|a| (0..n_b).map(move |b| (a, n_a + b)))
        .collect();
    rng.shuffle(&mut pairs);
    let mut g = Graph::new(n_a + n_b);
    let budget = SearchBudget::default();
    for (a, b) in pairs {
        if g.edge_count() == max_edges {
            break;
        }
        g.add_edge(a, b)?;
        if has_cycle_of_length(&g, 2 * k, &budget)? {
            g = g.edge_subgraph(&(0..g.edge_count() - 1).collect::<Vec<_>>());
        }
    }
    BipartiteGraph::with_classes(g, (0..n_a).collect(), (n_a..n_a + n_b).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{berge_girth, girth, GirthValue};

    fn cfg(a: usize, n: usize, m: usize, seed: u64) -> GenConfig {
        GenConfig {
            a,
            n,
            m,
            k: 3,
            seed,
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(100, 3), 161700);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }

    #[test]
    fn density_cap() {
        assert_eq!(
            random_hypergraph(&cfg(2, 3, 3, 1)).unwrap_err(),
            Error::DensityTooHigh { m: 3, max: 1 }
        );
        assert!(random_hypergraph(&cfg(1, 3, 1, 1)).is_err());
        assert!(random_hypergraph(&GenConfig {
            k: 1,
            ..cfg(2, 5, 1, 1)
        })
        .is_err());
    }

    #[test]
    fn deterministic_by_seed() {
        let a = random_hypergraph(&cfg(3, 6, 2, 42)).unwrap();
        let b = random_hypergraph(&cfg(3, 6, 2, 42)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edge_count(), 2);
        assert_ne!(a.edges()[0], a.edges()[1]);
        let o1 = random_oriented(&cfg(2, 4, 1, 9)).unwrap();
        assert_eq!(o1, random_oriented(&cfg(2, 4, 1, 9)).unwrap());
    }

    #[test]
    fn mean_degree() {
        let h = random_hypergraph(&cfg(3, 100, 300, 5)).unwrap();
        assert_eq!(h.edge_count(), 300);
        let mean = h.degrees().iter().sum::<usize>() as f64 / 100.0;
        assert!((mean - 9.0).abs() <= 1.5);
    }

    #[test]
    fn repair_examples() {
        let h = UniformHypergraph::from_edges(3, 7, [[1, 2, 3], [3, 4, 5], [5, 6, 1]]).unwrap();
        let r = repair_girth(&h, 3).unwrap();
        assert_eq!(r.hypergraph.edge_count(), 2);
        assert_eq!(r.deleted, vec![0]);
        assert_eq!(berge_girth(&r.hypergraph), GirthValue::Infinite);

        let untouched = repair_girth(&h, 2).unwrap();
        assert_eq!(untouched.hypergraph, h);

        let pair = UniformHypergraph::from_edges(3, 5, [[1, 2, 3], [1, 2, 4]]).unwrap();
        assert_eq!(repair_girth(&pair, 2).unwrap().hypergraph.edge_count(), 1);
        assert!(repair_girth(&pair, 1).is_err());
    }

    #[test]
    fn hoeffding_examples() {
        assert_eq!(hoeffding_sample_size(0.1, 0.05).unwrap(), 185);
        assert_eq!(hoeffding_sample_size(0.05, 0.01).unwrap(), 1060);
        assert_eq!(hoeffding_sample_size(1.0, 1.0 - 1e-12).unwrap(), 1);
        assert!(hoeffding_sample_size(0.0, 0.5).is_err());
        assert!(hoeffding_sample_size(0.5, 1.0).is_err());
    }

    #[test]
    fn ten_cycle_is_forced() {
        for seed in 0..5 {
            let g = high_girth_bipartite(5, 10, 2, seed).unwrap();
            assert_eq!(g.graph().edge_count(), 10);
            assert_eq!(girth(g.graph()), GirthValue::Finite(10));
            assert!(g.graph().is_connected());
        }
    }

    #[test]
    fn infeasible_degree() {
        assert!(matches!(
            high_girth_bipartite(2, 10, 3, 0),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            high_girth_bipartite(2, 10, 2, 0),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn c2k_free_bipartite() {
        for seed in 0..10 {
            let g = random_c2k_free_bipartite(5, 6, 3, 40, seed).unwrap();
            assert!(!has_cycle_of_length(g.graph(), 6, &SearchBudget::default()).unwrap());
            assert!(g.graph().edge_count() >= 10);
        }
        let g = random_c2k_free_bipartite(4, 4, 2, 3, 1).unwrap();
        assert_eq!(g.graph().edge_count(), 3);
    }

    #[test]
    fn larger_base() {
        let g = high_girth_bipartite(100, 10, 2, 11).unwrap();
        assert!(girth(g.graph()).exceeds(9));
        assert!(g.graph().is_connected());
        assert!(g.graph().min_degree().unwrap() >= 2);
    }
}
