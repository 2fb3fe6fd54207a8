//! Exact solvers for small instances, used as ground truth.
//!
//! Every cycle of a graph lies inside one block (maximal 2-connected piece),
//! so "no `C_4`", "no odd cycle" and "no short cycle" are properties that can
//! be optimised block by block. The searches below decompose first and run a
//! branch-and-bound on each block.

use std::collections::VecDeque;

use crate::budget::Meter;
use crate::error::{Error, Result};
use crate::graphcore::{has_cycle_of_length, Graph};
use crate::hypergen::binomial;

pub use crate::budget::SearchBudget;

/// Optimal edge set found by an oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub size: usize,
    /// Edge indices of the input graph, ascending.
    pub edges: Vec<usize>,
    /// Search nodes visited.
    pub nodes: u64,
}

/// Optimal bipartite subgraph together with a 2-colouring certifying it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteResult {
    pub size: usize,
    pub edges: Vec<usize>,
    /// Colour of every vertex; every kept edge joins different colours.
    pub sides: Vec<u8>,
    pub nodes: u64,
}

/// Edge sets of the blocks of `g`; bridges are blocks of one edge.
pub fn blocks(g: &Graph) -> Vec<Vec<usize>> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<usize>,
        out: Vec<Vec<usize>>,
    }
    fn visit(s: &mut State, u: usize, parent_edge: Option<usize>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for &v in s.g.neighbors(u) {
            let e = s.g.edge_index(u, v).unwrap();
            if Some(e) == parent_edge {
                continue;
            }
            if s.disc[v] == 0 {
                s.stack.push(e);
                visit(s, v, Some(e));
                s.low[u] = s.low[u].min(s.low[v]);
                if s.low[v] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(f) = s.stack.pop() {
                        block.push(f);
                        if f == e {
                            break;
                        }
                    }
                    block.sort_unstable();
                    s.out.push(block);
                }
            } else if s.disc[v] < s.disc[u] {
                s.stack.push(e);
                s.low[u] = s.low[u].min(s.disc[v]);
            }
        }
    }
    let mut s = State {
        g,
        disc: vec![0; g.n()],
        low: vec![0; g.n()],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..g.n() {
        if s.disc[v] == 0 {
            visit(&mut s, v, None);
        }
    }
    s.out.sort();
    s.out
}

/// A monotone edge property: once an edge cannot be added, it stays
/// unaddable as more edges are added.
trait Constraint {
    fn can_add(&self, u: usize, v: usize) -> bool;
    fn add(&mut self, u: usize, v: usize);
    fn remove(&mut self, u: usize, v: usize);
}

/// Maximum subset of `edges` (local vertex ids) satisfying the constraint.
fn max_subset<C: Constraint>(
    edges: &[(usize, usize)],
    c: &mut C,
    meter: &mut Meter,
) -> Result<Vec<usize>> {
    fn go<C: Constraint>(
        edges: &[(usize, usize)],
        cand: &[usize],
        c: &mut C,
        chosen: &mut Vec<usize>,
        best: &mut Vec<usize>,
        meter: &mut Meter,
    ) -> Result<()> {
        meter.tick()?;
        let feasible: Vec<usize> = cand
            .iter()
            .copied()
            .filter(|&i| c.can_add(edges[i].0, edges[i].1))
            .collect();
        if chosen.len() + feasible.len() <= best.len() {
            return Ok(());
        }
        let Some((&first, rest)) = feasible.split_first() else {
            *best = chosen.clone();
            return Ok(());
        };
        let (u, v) = edges[first];
        c.add(u, v);
        chosen.push(first);
        go(edges, rest, c, chosen, best, meter)?;
        chosen.pop();
        c.remove(u, v);
        go(edges, rest, c, chosen, best, meter)
    }
    let cand: Vec<usize> = (0..edges.len()).collect();
    let mut best = Vec::new();
    go(edges, &cand, c, &mut Vec::new(), &mut best, meter)?;
    best.sort_unstable();
    Ok(best)
}

/// A block with vertices renumbered `0..k` and edges ordered by descending
/// degree sum (ties by input index).
struct LocalBlock {
    global: Vec<usize>,
    edges: Vec<(usize, usize)>,
    n: usize,
}

fn local_block(g: &Graph, block: &[usize]) -> LocalBlock {
    let mut order = block.to_vec();
    order.sort_by_key(|&e| {
        let (u, v) = g.edges()[e];
        (std::cmp::Reverse(g.degree(u) + g.degree(v)), e)
    });
    let mut id = std::collections::HashMap::new();
    let mut edges = Vec::with_capacity(order.len());
    for &e in &order {
        let (u, v) = g.edges()[e];
        let next = id.len();
        let lu = *id.entry(u).or_insert(next);
        let next = id.len();
        let lv = *id.entry(v).or_insert(next);
        edges.push((lu, lv));
    }
    LocalBlock {
        global: order,
        edges,
        n: id.len(),
    }
}

/// Runs `solve` on every block and collects the chosen input edges.
fn per_block<F>(g: &Graph, budget: &SearchBudget, mut solve: F) -> Result<(Vec<usize>, u64)>
where
    F: FnMut(&LocalBlock, &mut Meter) -> Result<Vec<usize>>,
{
    let mut meter = budget.meter();
    let mut chosen = Vec::new();
    for block in blocks(g) {
        if block.len() == 1 {
            chosen.push(block[0]);
            continue;
        }
        let lb = local_block(g, &block);
        chosen.extend(solve(&lb, &mut meter)?.into_iter().map(|i| lb.global[i]));
    }
    chosen.sort_unstable();
    Ok((chosen, meter.nodes()))
}

struct NoC4 {
    adj: Vec<Vec<u64>>,
    list: Vec<Vec<usize>>,
}

impl NoC4 {
    fn new(n: usize) -> Self {
        NoC4 {
            adj: vec![vec![0; n.div_ceil(64)]; n],
            list: vec![Vec::new(); n],
        }
    }

    fn set(&mut self, u: usize, v: usize, on: bool) {
        let (w, b) = (v / 64, 1u64 << (v % 64));
        if on {
            self.adj[u][w] |= b;
        } else {
            self.adj[u][w] &= !b;
        }
    }
}

impl Constraint for NoC4 {
    fn can_add(&self, u: usize, v: usize) -> bool {
        // a C4 through uv is u-x-y-v with x ~ u, y ~ v, x ~ y
        self.list[u].iter().all(|&x| {
            self.adj[x]
                .iter()
                .zip(&self.adj[v])
                .enumerate()
                .all(|(w, (&a, &b))| {
                    let mut common = a & b;
                    if w == u / 64 {
                        common &= !(1u64 << (u % 64));
                    }
                    common == 0
                })
        })
    }

    fn add(&mut self, u: usize, v: usize) {
        self.set(u, v, true);
        self.set(v, u, true);
        self.list[u].push(v);
        self.list[v].push(u);
    }

    fn remove(&mut self, u: usize, v: usize) {
        self.set(u, v, false);
        self.set(v, u, false);
        self.list[u].pop();
        self.list[v].pop();
    }
}

/// Maximum number of edges of a `C_4`-free subgraph, exactly.
pub fn max_c4free_subgraph(g: &Graph, budget: &SearchBudget) -> Result<OracleResult> {
    let (edges, nodes) = per_block(g, budget, |lb, meter| {
        max_subset(&lb.edges, &mut NoC4::new(lb.n), meter)
    })?;
    Ok(OracleResult {
        size: edges.len(),
        edges,
        nodes,
    })
}

/// Bipartite subgraphs with girth above `girth_gt`: an edge `uv` may join
/// two components freely, and inside one component only when the `u`-`v`
/// distance is odd and at least `girth_gt`.
struct BipartiteGirth {
    adj: Vec<Vec<usize>>,
    girth_gt: usize,
}

impl Constraint for BipartiteGirth {
    fn can_add(&self, u: usize, v: usize) -> bool {
        let mut dist = vec![usize::MAX; self.adj.len()];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    if y == v {
                        let d = dist[y];
                        return d % 2 == 1 && d + 1 > self.girth_gt;
                    }
                    queue.push_back(y);
                }
            }
        }
        true
    }

    fn add(&mut self, u: usize, v: usize) {
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    fn remove(&mut self, u: usize, v: usize) {
        self.adj[u].pop();
        self.adj[v].pop();
    }
}

fn sides_of(g: &Graph, edges: &[usize]) -> Vec<u8> {
    g.edge_subgraph(edges)
        .two_coloring()
        .expect("optimal edge set is bipartite")
}

/// Largest bipartite subgraph in which every cycle is longer than
/// `girth_gt`.
pub fn max_bipartite_girth_subgraph(
    g: &Graph,
    girth_gt: usize,
    budget: &SearchBudget,
) -> Result<BipartiteResult> {
    let (edges, nodes) = per_block(g, budget, |lb, meter| {
        let mut c = BipartiteGirth {
            adj: vec![Vec::new(); lb.n],
            girth_gt,
        };
        max_subset(&lb.edges, &mut c, meter)
    })?;
    Ok(BipartiteResult {
        size: edges.len(),
        sides: sides_of(g, &edges),
        edges,
        nodes,
    })
}

/// Maximum cut, by branch and bound over vertex sides within each block.
pub fn max_cut(g: &Graph, budget: &SearchBudget) -> Result<BipartiteResult> {
    let (edges, nodes) = per_block(g, budget, |lb, meter| {
        let mut adj = vec![Vec::new(); lb.n];
        for (i, &(u, v)) in lb.edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        let side = cut_block(&adj, meter)?;
        Ok((0..lb.edges.len())
            .filter(|&i| side[lb.edges[i].0] != side[lb.edges[i].1])
            .collect())
    })?;
    Ok(BipartiteResult {
        size: edges.len(),
        sides: sides_of(g, &edges),
        edges,
        nodes,
    })
}

fn cut_block(adj: &[Vec<(usize, usize)>], meter: &mut Meter) -> Result<Vec<u8>> {
    struct Search<'a> {
        adj: &'a [Vec<(usize, usize)>],
        side: Vec<u8>,
        best: usize,
        best_side: Vec<u8>,
    }
    const FREE: u8 = u8::MAX;
    impl Search<'_> {
        /// Current cut plus, for every free vertex, the better side against
        /// the fixed vertices, plus every free-free edge.
        fn bound(&self, cut: usize) -> usize {
            let mut extra = 0;
            for (v, nbrs) in self.adj.iter().enumerate() {
                if self.side[v] != FREE {
                    continue;
                }
                let mut to = [0usize; 2];
                for &(w, _) in nbrs {
                    match self.side[w] {
                        FREE if w > v => extra += 1,
                        FREE => {}
                        s => to[s as usize] += 1,
                    }
                }
                extra += to[0].max(to[1]);
            }
            cut + extra
        }

        fn go(&mut self, v: usize, cut: usize, meter: &mut Meter) -> Result<()> {
            meter.tick()?;
            if v == self.adj.len() {
                if cut > self.best || self.best_side.is_empty() {
                    self.best = cut;
                    self.best_side = self.side.clone();
                }
                return Ok(());
            }
            if !self.best_side.is_empty() && self.bound(cut) <= self.best {
                return Ok(());
            }
            let choices: &[u8] = if v == 0 { &[0] } else { &[0, 1] };
            for &s in choices {
                let gained = self.adj[v]
                    .iter()
                    .filter(|&&(w, _)| self.side[w] != FREE && self.side[w] != s)
                    .count();
                self.side[v] = s;
                self.go(v + 1, cut + gained, meter)?;
                self.side[v] = FREE;
            }
            Ok(())
        }
    }
    let mut s = Search {
        adj,
        side: vec![FREE; adj.len()],
        best: 0,
        best_side: Vec::new(),
    };
    s.go(0, 0, meter)?;
    Ok(s.best_side)
}

/// `w + C(u, 2)`, the most edges a `C_4`-free subgraph of `K_{u,w}` can have
/// when every pair of the `u` side is counted once, and for `w >= C(u, 2)` a
/// subgraph attaining it: the `p`-th vertex of the `w` side is joined to the
/// `p`-th pair of the `u` side, and the remaining ones to vertex 0. Vertices
/// `0..u` and `u..u+w` as in [`Graph::complete_bipartite`].
pub fn complete_bipartite_c4free_bound(u: usize, w: usize) -> (usize, Option<Graph>) {
    let pairs = binomial(u, 2) as usize;
    let bound = w + pairs;
    if u == 0 || w < pairs {
        return (bound, None);
    }
    let mut g = Graph::new(u + w);
    let mut next = u;
    for i in 0..u {
        for j in i + 1..u {
            g.add_edge(i, next).unwrap();
            g.add_edge(j, next).unwrap();
            next += 1;
        }
    }
    for b in next..u + w {
        g.add_edge(0, b).unwrap();
    }
    (bound, Some(g))
}

/// True iff `g` has no cycle of length exactly `2k`.
pub fn certify_c2k_free(g: &Graph, k: usize, budget: &SearchBudget) -> Result<bool> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("need k >= 2, got {k}")));
    }
    Ok(!has_cycle_of_length(g, 2 * k, budget)?)
}
