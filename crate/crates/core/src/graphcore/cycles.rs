//! Fixed-length cycle search.
//!
//! Every cycle is anchored at its smallest vertex `s`: the DFS starts at `s`
//! and only visits vertices greater than `s`. Distances back to `s` inside
//! the subgraph induced on `{s, s+1, ..}` prune branches that can no longer
//! close a cycle of the requested length.

use std::collections::VecDeque;

use super::graph::Graph;
use crate::budget::{Meter, SearchBudget};
use crate::error::{Error, Result};

/// Default ceiling on the number of cycles [`enumerate_cycles`] will return.
pub const DEFAULT_CYCLE_CEILING: usize = 1_000_000;

/// True iff `g` contains a cycle on exactly `len` vertices.
pub fn has_cycle_of_length(g: &Graph, len: usize, budget: &SearchBudget) -> Result<bool> {
    if len < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle length must be at least 3, got {len}"
        )));
    }
    let mut meter = budget.meter();
    let mut found = false;
    search(g, len, &mut meter, &mut |_| {
        found = true;
        false
    })?;
    Ok(found)
}

/// One `len`-cycle, as its vertex sequence starting at the smallest vertex.
pub fn find_cycle_of_length(
    g: &Graph,
    len: usize,
    budget: &SearchBudget,
) -> Result<Option<Vec<usize>>> {
    if len < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle length must be at least 3, got {len}"
        )));
    }
    let mut meter = budget.meter();
    let mut cycle = None;
    search(g, len, &mut meter, &mut |path| {
        cycle = Some(path.to_vec());
        false
    })?;
    Ok(cycle)
}

/// All cycles on exactly `len` vertices, each reported once as a vertex
/// sequence starting at its smallest vertex with `c[1] < c[len - 1]`.
///
/// Fails with [`Error::CycleCeiling`] rather than truncating.
pub fn enumerate_cycles(
    g: &Graph,
    len: usize,
    budget: &SearchBudget,
    ceiling: usize,
) -> Result<Vec<Vec<usize>>> {
    if len < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle length must be at least 3, got {len}"
        )));
    }
    let mut meter = budget.meter();
    let mut out = Vec::new();
    let mut overflow = false;
    search(g, len, &mut meter, &mut |path| {
        if path[1] < path[len - 1] {
            if out.len() == ceiling {
                overflow = true;
                return false;
            }
            out.push(path.to_vec());
        }
        true
    })?;
    if overflow {
        return Err(Error::CycleCeiling(ceiling));
    }
    Ok(out)
}

/// Runs the anchored DFS and hands every closed path (both directions) to
/// `visit`; `visit` returns `false` to stop.
fn search(
    g: &Graph,
    len: usize,
    meter: &mut Meter,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<()> {
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(len);
    let mut queue = VecDeque::new();
    for s in 0..n {
        if n - s < len {
            break;
        }
        if g.neighbors(s).iter().filter(|&&w| w > s).count() < 2 {
            continue;
        }
        // distances to s using only vertices >= s
        for d in dist[s..].iter_mut() {
            *d = usize::MAX;
        }
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if dist[u] >= len {
                break;
            }
            for &w in g.neighbors(u) {
                if w > s && dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        path.clear();
        path.push(s);
        on_path[s] = true;
        let go_on = extend(g, len, s, &dist, &mut on_path, &mut path, meter, visit);
        on_path[s] = false;
        if !go_on? {
            return Ok(());
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    len: usize,
    s: usize,
    dist: &[usize],
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    meter: &mut Meter,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<bool> {
    meter.tick()?;
    let v = *path.last().unwrap();
    if path.len() == len {
        if g.has_edge(v, s) {
            return Ok(visit(path));
        }
        return Ok(true);
    }
    let remaining = len - path.len();
    for &w in g.neighbors(v) {
        if w <= s || on_path[w] || dist[w] == usize::MAX || dist[w] > remaining {
            continue;
        }
        on_path[w] = true;
        path.push(w);
        let go_on = extend(g, len, s, dist, on_path, path, meter, visit);
        path.pop();
        on_path[w] = false;
        if !go_on? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Exhaustive oracle: some `len`-subset of vertices carries a Hamiltonian
    /// cycle of the induced subgraph (checked over all orderings).
    fn brute_force_has_cycle(g: &Graph, len: usize) -> bool {
        fn perms(rest: &mut Vec<usize>, cur: &mut Vec<usize>, g: &Graph, len: usize) -> bool {
            if cur.len() == len {
                return g.has_edge(cur[len - 1], cur[0]);
            }
            for i in 0..rest.len() {
                let v = rest.remove(i);
                let ok = cur.last().is_none_or(|&u| g.has_edge(u, v));
                if ok {
                    cur.push(v);
                    if perms(rest, cur, g, len) {
                        return true;
                    }
                    cur.pop();
                }
                rest.insert(i, v);
            }
            false
        }
        let n = g.n();
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == len)
            .any(|mask| {
                let mut rest: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                perms(&mut rest, &mut Vec::new(), g, len)
            })
    }

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn examples() {
        let c6 = Graph::cycle(6);
        assert!(has_cycle_of_length(&c6, 6, &budget()).unwrap());
        assert!(!has_cycle_of_length(&c6, 4, &budget()).unwrap());
        assert!(has_cycle_of_length(&Graph::complete(5), 4, &budget()).unwrap());
        assert!(brute_force_has_cycle(&Graph::complete(5), 4));
        assert!(!has_cycle_of_length(&Graph::complete(5), 6, &budget()).unwrap());
    }

    #[test]
    fn rejects_short_lengths() {
        assert!(matches!(
            has_cycle_of_length(&Graph::cycle(3), 2, &budget()),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::complete(12);
        assert!(matches!(
            has_cycle_of_length(
                &Graph::complete_bipartite(6, 6),
                5,
                &SearchBudget::nodes(50)
            ),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(has_cycle_of_length(&g, 12, &budget()).unwrap());
    }

    #[test]
    fn cycle_counts() {
        // K4 has 3 four-cycles and 4 triangles; K_{3,3} has 9 four-cycles and 6 six-cycles.
        assert_eq!(
            enumerate_cycles(&Graph::complete(4), 4, &budget(), 100)
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            enumerate_cycles(&Graph::complete(4), 3, &budget(), 100)
                .unwrap()
                .len(),
            4
        );
        let k33 = Graph::complete_bipartite(3, 3);
        assert_eq!(enumerate_cycles(&k33, 4, &budget(), 100).unwrap().len(), 9);
        assert_eq!(enumerate_cycles(&k33, 6, &budget(), 100).unwrap().len(), 6);
        assert_eq!(
            enumerate_cycles(&k33, 4, &budget(), 5),
            Err(Error::CycleCeiling(5))
        );
    }

    #[test]
    fn found_cycle_is_a_cycle() {
        let g = Graph::complete_bipartite(3, 4);
        let c = find_cycle_of_length(&g, 6, &budget()).unwrap().unwrap();
        assert_eq!(c.len(), 6);
        for i in 0..6 {
            assert!(g.has_edge(c[i], c[(i + 1) % 6]));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn agrees_with_subset_enumeration(
            n in 3usize..=8,
            raw in proptest::collection::vec((0usize..8, 0usize..8), 0..22),
            len in 3usize..=8,
        ) {
            let mut g = Graph::new(n);
            for (u, v) in raw {
                let _ = g.add_edge(u % n, v % n);
            }
            let expected = len <= n && brute_force_has_cycle(&g, len);
            prop_assert_eq!(has_cycle_of_length(&g, len, &budget()).unwrap(), expected);
        }
    }
}
