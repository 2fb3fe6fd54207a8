use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Length of a shortest (Berge-)cycle, or `Infinite` when there is none.
///
/// `Finite` sorts before `Infinite`, so `min`/`max` behave as expected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GirthValue {
    Finite(usize),
    Infinite,
}

impl GirthValue {
    pub fn is_infinite(self) -> bool {
        matches!(self, GirthValue::Infinite)
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            GirthValue::Finite(g) => Some(g),
            GirthValue::Infinite => None,
        }
    }

    /// True when the girth is strictly greater than `len`.
    pub fn exceeds(self, len: usize) -> bool {
        match self {
            GirthValue::Finite(g) => g > len,
            GirthValue::Infinite => true,
        }
    }
}

impl fmt::Display for GirthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GirthValue::Finite(g) => write!(f, "{g}"),
            GirthValue::Infinite => f.write_str("inf"),
        }
    }
}

/// Simple undirected graph on vertices `0..n`.
///
/// Edges are stored normalised as `(min, max)` in insertion order; the edge
/// index is stable and used by the constructions to attach labels.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

#[inline]
fn norm(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Appends a vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    /// Adds the edge `uv` and returns its index.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let e = norm(u, v);
        if self.index.contains_key(&e) {
            return Err(Error::DuplicateEdge(e.0, e.1));
        }
        let id = self.edges.len();
        self.edges.push(e);
        self.index.insert(e, id);
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a];
            let pos = list.partition_point(|&x| x < b);
            list.insert(pos, b);
        }
        Ok(id)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            2.0 * self.edges.len() as f64 / self.n as f64
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&norm(u, v)).copied()
    }

    /// Spanning subgraph keeping only the listed edge indices.
    pub fn edge_subgraph(&self, keep: &[usize]) -> Graph {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut g = Graph::new(self.n);
        for i in sorted {
            let (u, v) = self.edges[i];
            g.add_edge(u, v).expect("edges of a simple graph");
        }
        g
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// The cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    /// `K_{u,w}` with the `u`-side on `0..u` and the `w`-side on `u..u+w`.
    pub fn complete_bipartite(u: usize, w: usize) -> Graph {
        let mut g = Graph::new(u + w);
        for a in 0..u {
            for b in u..u + w {
                g.add_edge(a, b).unwrap();
            }
        }
        g
    }

    /// Component id per vertex, numbered in order of smallest vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// True when every vertex lies in one component (vacuous for `n <= 1`).
    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// BFS distances from `source`, `usize::MAX` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Proper 2-colouring (component-wise, smallest vertex gets colour 0) or
    /// `None` if an odd cycle exists.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }
}

/// Length of a shortest cycle, by BFS from every vertex.
///
/// A non-tree edge `uw` met while scanning from a root closes a closed walk
/// of length `d(u) + d(w) + 1`; the minimum over all roots is the girth.
pub fn girth(g: &Graph) -> GirthValue {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            // nothing shorter can be found below this level
            if 2 * dist[u] >= best {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        GirthValue::Infinite
    } else {
        GirthValue::Finite(best)
    }
}

/// Length of a shortest cycle through vertex `x`, if any.
///
/// BFS from `x` labelling every vertex with the neighbour of `x` it descends
/// from; an edge joining two different branches closes a cycle through `x`.
pub fn shortest_cycle_through(g: &Graph, x: usize) -> Option<usize> {
    shortest_cycle_through_within(g, x, usize::MAX)
}

/// As [`shortest_cycle_through`], but only cycles of length `<= max_len`
/// are looked for.
pub fn shortest_cycle_through_within(g: &Graph, x: usize, max_len: usize) -> Option<usize> {
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    let mut branch = vec![usize::MAX; n];
    dist[x] = 0;
    let mut queue = VecDeque::new();
    for &w in g.neighbors(x) {
        dist[w] = 1;
        branch[w] = w;
        queue.push_back(w);
    }
    let mut best = max_len.saturating_add(1);
    while let Some(u) = queue.pop_front() {
        if 2 * dist[u] >= best {
            break;
        }
        for &w in g.neighbors(u) {
            if w == x {
                continue;
            }
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                branch[w] = branch[u];
                queue.push_back(w);
            } else if branch[w] != branch[u] {
                best = best.min(dist[u] + dist[w] + 1);
            }
        }
    }
    (best <= max_len && best != usize::MAX).then_some(best)
}

/// Which class of a bipartition a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

/// A graph together with a bipartition `A ∪ B` and a total order on each
/// class (the order of the `a` and `b` vectors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    graph: Graph,
    a: Vec<usize>,
    b: Vec<usize>,
    side: Vec<Side>,
    rank: Vec<usize>,
}

impl BipartiteGraph {
    /// Uses the supplied classes; the vector order is the vertex order.
    pub fn with_classes(graph: Graph, a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        let n = graph.n();
        let mut side: Vec<Option<Side>> = vec![None; n];
        let mut rank = vec![0; n];
        for (class, s) in [(&a, Side::A), (&b, Side::B)] {
            for (i, &v) in class.iter().enumerate() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if side[v].is_some() {
                    return Err(Error::NotBipartite(format!(
                        "vertex {v} listed more than once in the classes"
                    )));
                }
                side[v] = Some(s);
                rank[v] = i;
            }
        }
        if let Some(v) = side.iter().position(Option::is_none) {
            return Err(Error::NotBipartite(format!(
                "vertex {v} is in neither class"
            )));
        }
        let side: Vec<Side> = side.into_iter().map(Option::unwrap).collect();
        for &(u, v) in graph.edges() {
            if side[u] == side[v] {
                return Err(Error::NotBipartite(format!(
                    "edge {u}-{v} lies inside one class"
                )));
            }
        }
        Ok(BipartiteGraph {
            graph,
            a,
            b,
            side,
            rank,
        })
    }

    /// Computes a bipartition by 2-colouring each component; colour 0 (the
    /// component's smallest vertex) goes to `A`. Classes are in index order.
    pub fn from_graph(graph: Graph) -> Result<Self> {
        let color = graph
            .two_coloring()
            .ok_or_else(|| Error::NotBipartite("graph has an odd cycle".into()))?;
        let a = (0..graph.n()).filter(|&v| color[v] == 0).collect();
        let b = (0..graph.n()).filter(|&v| color[v] == 1).collect();
        Self::with_classes(graph, a, b)
    }

    /// `K_{u,w}` with `A = 0..u` and `B = u..u+w`.
    pub fn complete(u: usize, w: usize) -> Self {
        Self::with_classes(
            Graph::complete_bipartite(u, w),
            (0..u).collect(),
            (u..u + w).collect(),
        )
        .unwrap()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn class_a(&self) -> &[usize] {
        &self.a
    }

    pub fn class_b(&self) -> &[usize] {
        &self.b
    }

    pub fn side(&self, v: usize) -> Side {
        self.side[v]
    }

    /// Position of `v` in the order of its class.
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    /// Edge `i` as `(a, b)` with `a ∈ A`, `b ∈ B`.
    pub fn oriented_edge(&self, i: usize) -> (usize, usize) {
        let (u, v) = self.graph.edges()[i];
        if self.side[u] == Side::A {
            (u, v)
        } else {
            (v, u)
        }
    }

    /// Same graph and classes with new class orders.
    pub fn reordered(&self, a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        Self::with_classes(self.graph.clone(), a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use petgraph::unionfind::UnionFind;
    use proptest::prelude::*;

    fn acyclic_by_union_find(g: &Graph) -> bool {
        let mut uf = UnionFind::<usize>::new(g.n());
        g.edges().iter().all(|&(u, v)| uf.union(u, v))
    }

    #[test]
    fn girth_of_small_graphs() {
        assert_eq!(girth(&Graph::complete(4)), GirthValue::Finite(3));
        assert_eq!(girth(&Graph::cycle(6)), GirthValue::Finite(6));
        assert_eq!(
            girth(&Graph::complete_bipartite(3, 3)),
            GirthValue::Finite(4)
        );
        assert_eq!(girth(&Graph::cycle(10)), GirthValue::Finite(10));
        assert_eq!(girth(&Graph::new(5)), GirthValue::Infinite);
        let path = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(girth(&path), GirthValue::Infinite);
    }

    #[test]
    fn petersen_has_girth_five() {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend((0..5).map(|i| (i, i + 5)));
        edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        assert_eq!(
            girth(&Graph::from_edges(10, edges).unwrap()),
            GirthValue::Finite(5)
        );
    }

    #[test]
    fn rejects_invalid_edges() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(1, 1), Err(Error::SelfLoop(1)));
        assert_eq!(
            g.add_edge(0, 3),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(1, 0), Err(Error::DuplicateEdge(0, 1)));
    }

    #[test]
    fn bipartition_checks() {
        let g = Graph::complete(3);
        assert!(matches!(
            BipartiteGraph::from_graph(g),
            Err(Error::NotBipartite(_))
        ));
        let c6 = Graph::cycle(6);
        let bg = BipartiteGraph::from_graph(c6.clone()).unwrap();
        assert_eq!(bg.class_a(), &[0, 2, 4]);
        assert!(BipartiteGraph::with_classes(c6, vec![0, 1, 2], vec![3, 4, 5]).is_err());
    }

    #[test]
    fn girth_value_ordering() {
        assert!(GirthValue::Finite(1000) < GirthValue::Infinite);
        assert!(GirthValue::Infinite.exceeds(usize::MAX));
        assert!(!GirthValue::Finite(4).exceeds(4));
    }

    proptest! {
        #[test]
        fn infinite_girth_iff_acyclic(n in 1usize..10, raw in proptest::collection::vec((0usize..10, 0usize..10), 0..20)) {
            let mut g = Graph::new(n);
            for (u, v) in raw {
                let (u, v) = (u % n, v % n);
                let _ = g.add_edge(u, v);
            }
            prop_assert_eq!(girth(&g).is_infinite(), acyclic_by_union_find(&g));
        }
    }
}
