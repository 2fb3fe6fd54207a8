//! Explicit graphs built from hypergraphs: clique and biclique blowups, and
//! two pastings of even cycles.

use std::collections::{HashMap, VecDeque};

use petgraph::unionfind::UnionFind;

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::graphcore::{
    enumerate_cycles, BipartiteGraph, Graph, OrientedHypergraph, UniformHypergraph,
    DEFAULT_CYCLE_CEILING,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowupKind {
    /// Each hyperedge becomes a clique on its vertices.
    Clique,
    /// Each oriented hyperedge `(v_1, .., v_a)` becomes a complete bipartite
    /// graph between its first `k - 1` and last `l` vertices.
    Bipartite { k: usize, l: usize },
}

#[derive(Debug, Clone)]
pub struct BlowupGraph {
    pub graph: Graph,
    /// Vertex list of the hyperedge behind each block.
    pub parts: Vec<Vec<usize>>,
    pub kind: BlowupKind,
}

fn require_linear(h: &UniformHypergraph) -> Result<()> {
    match h.nonlinear_pair() {
        Some((i, j)) => Err(Error::NotLinear(i, j)),
        None => Ok(()),
    }
}

/// Replaces every hyperedge by a complete graph. Edge-disjointness of the
/// cliques needs a linear hypergraph.
pub fn clique_blowup(h: &UniformHypergraph) -> Result<BlowupGraph> {
    require_linear(h)?;
    let mut g = Graph::new(h.n());
    for e in h.edges() {
        for (x, &u) in e.iter().enumerate() {
            for &v in &e[x + 1..] {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(BlowupGraph {
        graph: g,
        parts: h.edges().to_vec(),
        kind: BlowupKind::Clique,
    })
}

/// Replaces every oriented hyperedge by `K_{k-1,l}` between its first `k-1`
/// and its last `l` vertices.
pub fn bipartite_blowup(o: &OrientedHypergraph, k: usize, l: usize) -> Result<BlowupGraph> {
    if k < 2 || l < 1 {
        return Err(Error::InvalidParameter(format!(
            "need k >= 2 and l >= 1, got k={k} l={l}"
        )));
    }
    if o.a() != k - 1 + l {
        return Err(Error::UniformityMismatch {
            expected: k - 1 + l,
            found: o.a(),
        });
    }
    require_linear(&o.underlying())?;
    let mut g = Graph::new(o.n());
    for e in o.edges() {
        let (left, right) = e.split_at(k - 1);
        for &u in left {
            for &v in right {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(BlowupGraph {
        graph: g,
        parts: o.edges().to_vec(),
        kind: BlowupKind::Bipartite { k, l },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    /// `u_i u'_i` in the hypergraph doubling.
    Fat,
    /// Edge added by one hyperedge in the hypergraph doubling.
    Thin,
    /// Edge of the base graph in the doubled pasting.
    Base,
    /// Copy of a base edge.
    Mirror,
    /// Edge on a path joining a class-`B` vertex to its copy.
    Connector,
}

/// A graph with a label and an origin for every edge.
///
/// Origins: for `Fat` the hypergraph vertex, for `Thin` the hyperedge index,
/// for `Base`/`Mirror` the base edge index, for `Connector` the position of
/// the class-`B` vertex.
#[derive(Debug, Clone)]
pub struct PastedGraph {
    pub graph: Graph,
    pub labels: Vec<EdgeLabel>,
    pub origins: Vec<usize>,
}

impl PastedGraph {
    fn new(n: usize) -> Self {
        PastedGraph {
            graph: Graph::new(n),
            labels: Vec::new(),
            origins: Vec::new(),
        }
    }

    /// Adds a labelled edge.
    pub fn push_edge(
        &mut self,
        u: usize,
        v: usize,
        label: EdgeLabel,
        origin: usize,
    ) -> Result<usize> {
        let i = self.graph.add_edge(u, v)?;
        self.labels.push(label);
        self.origins.push(origin);
        Ok(i)
    }

    pub fn edges_with(&self, label: EdgeLabel) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.graph
            .edges()
            .iter()
            .zip(&self.labels)
            .filter(move |(_, &l)| l == label)
            .map(|(&e, _)| e)
    }

    pub fn count(&self, label: EdgeLabel) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }
}

/// Two copies of a connected bipartite graph `G_1` (vertex `v` and its copy
/// `N + v`) with every class-`B` vertex joined to its copy by a path of
/// `l - 2` edges. Path interiors are numbered from `2N`, path by path.
pub fn paste_doubled(g1: &BipartiteGraph, l: usize) -> Result<PastedGraph> {
    if l < 3 {
        return Err(Error::InvalidParameter(format!("need l >= 3, got {l}")));
    }
    let base = g1.graph();
    let n = base.n();
    if !base.is_connected() {
        return Err(Error::NotConnected);
    }
    let degree = base.min_degree().unwrap_or(0);
    if degree < 2 {
        return Err(Error::MinDegree {
            degree,
            required: 2,
        });
    }
    let nb = g1.class_b().len();
    let mut pg = PastedGraph::new(2 * n + (l - 3) * nb);
    for (i, &(u, v)) in base.edges().iter().enumerate() {
        pg.push_edge(u, v, EdgeLabel::Base, i)?;
    }
    for (i, &(u, v)) in base.edges().iter().enumerate() {
        pg.push_edge(n + u, n + v, EdgeLabel::Mirror, i)?;
    }
    let mut fresh = 2 * n;
    for (pos, &b) in g1.class_b().iter().enumerate() {
        let mut prev = b;
        for _ in 0..l - 3 {
            pg.push_edge(prev, fresh, EdgeLabel::Connector, pos)?;
            prev = fresh;
            fresh += 1;
        }
        pg.push_edge(prev, n + b, EdgeLabel::Connector, pos)?;
    }
    Ok(pg)
}

/// Doubles every covered vertex `i` into the fat edge `u_i u'_i` (`u_i = i`,
/// `u'_i = n + i`); a hyperedge `i < j < k` adds the thin edges `u'_i u_j`,
/// `u'_j u_k`, `u'_k u_i`, closing a `C_6` with the three fat edges.
pub fn paste_hyperdouble(h1: &UniformHypergraph) -> Result<PastedGraph> {
    if h1.a() != 3 {
        return Err(Error::UniformityMismatch {
            expected: 3,
            found: h1.a(),
        });
    }
    require_linear(h1)?;
    let n = h1.n();
    let mut pg = PastedGraph::new(2 * n);
    for (v, &d) in h1.degrees().iter().enumerate() {
        if d > 0 {
            pg.push_edge(v, n + v, EdgeLabel::Fat, v)?;
        }
    }
    for (idx, e) in h1.edges().iter().enumerate() {
        let (i, j, k) = (e[0], e[1], e[2]);
        for (x, y) in [(i, j), (j, k), (k, i)] {
            pg.push_edge(n + x, y, EdgeLabel::Thin, idx)?;
        }
    }
    Ok(pg)
}

/// Outcome of [`verify_pasted`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PastingCheck {
    pub holds: bool,
    /// All `C_{2l}`s found, as vertex cycles.
    pub cycles: Vec<Vec<usize>>,
    /// Edges on no `C_{2l}`.
    pub uncovered: Vec<usize>,
    /// Components of the cycles' intersection graph.
    pub components: usize,
    /// When `holds`: cycle indices in an order where each cycle shares an
    /// edge with an earlier one.
    pub build_order: Vec<usize>,
}

/// Checks that `g` can be built by starting from one `C_{2l}` and adding
/// `C_{2l}`s that each share an edge with what is already there: every edge
/// lies on a `C_{2l}` and the intersection graph of the `C_{2l}`s is
/// connected.
pub fn verify_pasted(g: &Graph, l: usize, budget: &SearchBudget) -> Result<PastingCheck> {
    verify_pasted_with_ceiling(g, l, budget, DEFAULT_CYCLE_CEILING)
}

pub fn verify_pasted_with_ceiling(
    g: &Graph,
    l: usize,
    budget: &SearchBudget,
    ceiling: usize,
) -> Result<PastingCheck> {
    if l < 2 {
        return Err(Error::InvalidParameter(format!("need l >= 2, got {l}")));
    }
    let cycles = enumerate_cycles(g, 2 * l, budget, ceiling)?;
    let cycle_edges: Vec<Vec<usize>> = cycles
        .iter()
        .map(|c| {
            (0..c.len())
                .map(|i| {
                    g.edge_index(c[i], c[(i + 1) % c.len()])
                        .expect("cycle edge")
                })
                .collect()
        })
        .collect();

    let m = g.edge_count();
    let mut on_cycles: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (ci, es) in cycle_edges.iter().enumerate() {
        for &e in es {
            on_cycles[e].push(ci);
        }
    }
    let uncovered: Vec<usize> = (0..m).filter(|&e| on_cycles[e].is_empty()).collect();

    let mut uf = UnionFind::<usize>::new(cycles.len());
    for cs in &on_cycles {
        for w in cs.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let mut roots: Vec<usize> = (0..cycles.len()).map(|c| uf.find(c)).collect();
    roots.sort_unstable();
    roots.dedup();
    let components = roots.len();

    let holds = m > 0 && uncovered.is_empty() && components == 1;
    let build_order = if holds {
        build_order(&cycle_edges, &on_cycles)
    } else {
        Vec::new()
    };
    Ok(PastingCheck {
        holds,
        cycles,
        uncovered,
        components,
        build_order,
    })
}

fn build_order(cycle_edges: &[Vec<usize>], on_cycles: &[Vec<usize>]) -> Vec<usize> {
    let mut placed = vec![false; cycle_edges.len()];
    let mut order = vec![0];
    placed[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(c) = queue.pop_front() {
        for &e in &cycle_edges[c] {
            for &d in &on_cycles[e] {
                if !placed[d] {
                    placed[d] = true;
                    order.push(d);
                    queue.push_back(d);
                }
            }
        }
    }
    order
}

/// Fat edges share no vertex.
pub fn fat_edges_disjoint(pg: &PastedGraph) -> bool {
    let mut used = vec![false; pg.graph.n()];
    for (u, v) in pg.edges_with(EdgeLabel::Fat) {
        if used[u] || used[v] {
            return false;
        }
        used[u] = true;
        used[v] = true;
    }
    true
}

/// Between the endpoint sets of any two fat edges there is at most one thin
/// edge.
pub fn claim_one_thin_between_fat(pg: &PastedGraph) -> bool {
    let mut fat_of = vec![None; pg.graph.n()];
    for (i, (u, v)) in pg.edges_with(EdgeLabel::Fat).enumerate() {
        fat_of[u] = Some(i);
        fat_of[v] = Some(i);
    }
    let mut between: HashMap<(usize, usize), usize> = HashMap::new();
    for (u, v) in pg.edges_with(EdgeLabel::Thin) {
        if let (Some(x), Some(y)) = (fat_of[u], fat_of[v]) {
            let c = between.entry((x.min(y), x.max(y))).or_insert(0);
            *c += 1;
            if *c > 1 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{berge_girth, girth, has_cycle_of_length, GirthValue};
    use crate::hypergen::high_girth_bipartite;

    fn uhg(a: usize, n: usize, edges: &[&[usize]]) -> UniformHypergraph {
        UniformHypergraph::from_edges(a, n, edges.iter().copied()).unwrap()
    }

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn clique_blowups() {
        let k5 = clique_blowup(&uhg(5, 5, &[&[0, 1, 2, 3, 4]])).unwrap();
        assert_eq!(k5.graph.edge_count(), 10);
        let bowtie = clique_blowup(&uhg(3, 5, &[&[0, 1, 2], &[2, 3, 4]])).unwrap();
        assert_eq!(bowtie.graph.edge_count(), 6);
        assert_eq!(bowtie.graph.degree(2), 4);
        assert!(matches!(
            clique_blowup(&uhg(3, 4, &[&[0, 1, 2], &[0, 1, 3]])),
            Err(Error::NotLinear(0, 1))
        ));
    }

    #[test]
    fn clique_blowup_of_acyclic_triples_is_c4_free() {
        // a Berge-tree with four triples
        let h = uhg(3, 9, &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 6], &[1, 7, 8]]);
        assert_eq!(berge_girth(&h), GirthValue::Infinite);
        let g = clique_blowup(&h).unwrap().graph;
        assert_eq!(g.edge_count(), 12);
        assert!(!has_cycle_of_length(&g, 4, &budget()).unwrap());
    }

    #[test]
    fn bipartite_blowups() {
        let o = OrientedHypergraph::from_edges(6, 6, [[0, 1, 2, 3, 4, 5]]).unwrap();
        let b = bipartite_blowup(&o, 3, 4).unwrap();
        assert_eq!(b.graph.edge_count(), 8);
        assert_eq!((b.graph.degree(0), b.graph.degree(5)), (4, 2));

        let o = OrientedHypergraph::from_edges(5, 10, [[0, 1, 2, 3, 4], [5, 6, 7, 8, 9]]).unwrap();
        assert_eq!(bipartite_blowup(&o, 3, 3).unwrap().graph.edge_count(), 12);
        assert!(matches!(
            bipartite_blowup(&o, 3, 4),
            Err(Error::UniformityMismatch {
                expected: 6,
                found: 5
            })
        ));
    }

    #[test]
    fn bipartite_blowup_of_berge_tree_has_no_c6() {
        let o = OrientedHypergraph::from_edges(
            5,
            13,
            [[4, 0, 1, 2, 3], [5, 6, 4, 7, 8], [9, 10, 11, 12, 0]],
        )
        .unwrap();
        assert_eq!(berge_girth(&o.underlying()), GirthValue::Infinite);
        let g = bipartite_blowup(&o, 3, 3).unwrap().graph;
        assert_eq!(g.edge_count(), 18);
        assert!(!has_cycle_of_length(&g, 6, &budget()).unwrap());
    }

    #[test]
    fn doubled_c10() {
        let g1 = BipartiteGraph::from_graph(Graph::cycle(10)).unwrap();
        let pg = paste_doubled(&g1, 3).unwrap();
        assert_eq!((pg.graph.n(), pg.graph.edge_count()), (20, 25));
        assert!(!has_cycle_of_length(&pg.graph, 8, &budget()).unwrap());
        assert!(verify_pasted(&pg.graph, 3, &budget()).unwrap().holds);

        let pg = paste_doubled(&g1, 4).unwrap();
        assert_eq!((pg.graph.n(), pg.graph.edge_count()), (25, 30));
        assert_eq!(pg.count(EdgeLabel::Connector), 10);
    }

    #[test]
    fn doubled_edge_count_identity() {
        for seed in 0..5 {
            let g1 = high_girth_bipartite(12, 6, 2, seed).unwrap();
            for l in 3..6 {
                let pg = paste_doubled(&g1, l).unwrap();
                let (e, nb) = (g1.graph().edge_count(), g1.class_b().len());
                assert_eq!(pg.graph.edge_count(), 2 * e + (l - 2) * nb);
                assert_eq!(pg.graph.n(), 2 * g1.graph().n() + (l - 3) * nb);
            }
        }
    }

    #[test]
    fn doubled_preconditions() {
        let path =
            BipartiteGraph::from_graph(Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()).unwrap();
        assert!(matches!(
            paste_doubled(&path, 3),
            Err(Error::MinDegree {
                degree: 1,
                required: 2
            })
        ));
        let mut two = Graph::cycle(4);
        two.add_vertex();
        assert!(matches!(
            paste_doubled(&BipartiteGraph::from_graph(two).unwrap(), 3),
            Err(Error::NotConnected)
        ));
    }

    #[test]
    fn hyperdouble_examples() {
        let one = paste_hyperdouble(&uhg(3, 3, &[&[0, 1, 2]])).unwrap();
        assert_eq!(one.graph.edge_count(), 6);
        assert_eq!(girth(&one.graph), GirthValue::Finite(6));
        assert!(claim_one_thin_between_fat(&one));

        let two = paste_hyperdouble(&uhg(3, 5, &[&[0, 1, 2], &[2, 3, 4]])).unwrap();
        assert_eq!(two.graph.edge_count(), 11);
        assert_eq!(two.count(EdgeLabel::Fat), 5);
        assert!(fat_edges_disjoint(&two));
        assert!(claim_one_thin_between_fat(&two));
        let check = verify_pasted(&two.graph, 3, &budget()).unwrap();
        assert!(check.holds);
        assert_eq!(check.cycles.len(), 2);
        assert_eq!(check.build_order, vec![0, 1]);

        assert!(matches!(
            paste_hyperdouble(&uhg(2, 3, &[&[0, 1]])),
            Err(Error::UniformityMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn injected_thin_edges_break_the_claim() {
        let mut pg = paste_hyperdouble(&uhg(3, 5, &[&[0, 1, 2], &[2, 3, 4]])).unwrap();
        // u'_0 u_1 exists; add u_0 u'_1 between the same fat pair
        pg.push_edge(0, 5 + 1, EdgeLabel::Thin, 99).unwrap();
        assert!(!claim_one_thin_between_fat(&pg));
    }

    #[test]
    fn verify_simple_cases() {
        assert!(verify_pasted(&Graph::cycle(6), 3, &budget()).unwrap().holds);
        let two = Graph::from_edges(
            12,
            (0..6).flat_map(|i| [(i, (i + 1) % 6), (6 + i, 6 + (i + 1) % 6)]),
        )
        .unwrap();
        let check = verify_pasted(&two, 3, &budget()).unwrap();
        assert!(!check.holds);
        assert_eq!(check.components, 2);
        let mut tail = Graph::cycle(6);
        let v = tail.add_vertex();
        tail.add_edge(0, v).unwrap();
        let check = verify_pasted(&tail, 3, &budget()).unwrap();
        assert_eq!(check.uncovered, vec![6]);
    }
}
