use std::collections::{HashMap, HashSet};

use petgraph::unionfind::UnionFind;

use super::cycles::enumerate_cycles;
use super::graph::{girth, GirthValue, Graph};
use crate::budget::SearchBudget;
use crate::error::{Error, Result};

/// An `a`-uniform hypergraph on `0..n`. Hyperedges are stored as ascending
/// vertex lists, in the order they were added ("file order").
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformHypergraph {
    a: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
    seen: HashSet<Vec<usize>>,
}

fn validate(a: usize, n: usize, index: usize, edge: &[usize]) -> Result<Vec<usize>> {
    if edge.len() != a {
        return Err(Error::WrongHyperedgeSize {
            index,
            found: edge.len(),
            expected: a,
        });
    }
    if let Some(&v) = edge.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    let mut sorted = edge.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::RepeatedVertex(index));
    }
    Ok(sorted)
}

impl UniformHypergraph {
    pub fn new(a: usize, n: usize) -> Self {
        UniformHypergraph {
            a,
            n,
            edges: Vec::new(),
            seen: HashSet::new(),
        }
    }

    pub fn from_edges<I, E>(a: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        let mut h = UniformHypergraph::new(a, n);
        for e in edges {
            h.add_edge(e.as_ref())?;
        }
        Ok(h)
    }

    /// Adds a hyperedge (any vertex order) and returns its index.
    pub fn add_edge(&mut self, edge: &[usize]) -> Result<usize> {
        let index = self.edges.len();
        let sorted = validate(self.a, self.n, index, edge)?;
        if self.seen.contains(&sorted) {
            let first = self.edges.iter().position(|e| *e == sorted).unwrap();
            return Err(Error::DuplicateHyperedge(first, index));
        }
        self.seen.insert(sorted.clone());
        self.edges.push(sorted);
        Ok(index)
    }

    pub fn contains(&self, edge: &[usize]) -> bool {
        let mut sorted = edge.to_vec();
        sorted.sort_unstable();
        self.seen.contains(&sorted)
    }

    /// Uniformity.
    pub fn a(&self) -> usize {
        self.a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Sub-hypergraph on the same vertex set keeping the listed hyperedges
    /// (in their original relative order).
    pub fn retain_indices(&self, keep: &[usize]) -> UniformHypergraph {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        UniformHypergraph::from_edges(self.a, self.n, sorted.iter().map(|&i| &self.edges[i]))
            .expect("subset of a valid hypergraph")
    }

    /// Complete `a`-uniform hypergraph, hyperedges in lexicographic order.
    pub fn complete(a: usize, n: usize) -> Self {
        let mut h = UniformHypergraph::new(a, n);
        let mut comb: Vec<usize> = (0..a).collect();
        if a > n {
            return h;
        }
        loop {
            h.add_edge(&comb).unwrap();
            let mut i = a;
            loop {
                if i == 0 {
                    return h;
                }
                i -= 1;
                if comb[i] < n - a + i {
                    comb[i] += 1;
                    for j in i + 1..a {
                        comb[j] = comb[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    /// Number of vertices lying in at least one hyperedge.
    pub fn covered_count(&self) -> usize {
        self.degrees().iter().filter(|&&d| d > 0).count()
    }

    /// First pair of hyperedges (lexicographically by index) sharing two or
    /// more vertices.
    pub fn nonlinear_pair(&self) -> Option<(usize, usize)> {
        let mut first_seen: HashMap<(usize, usize), usize> = HashMap::new();
        let mut best: Option<(usize, usize)> = None;
        for (i, e) in self.edges.iter().enumerate() {
            for x in 0..e.len() {
                for y in x + 1..e.len() {
                    match first_seen.get(&(e[x], e[y])) {
                        Some(&j) => {
                            if best.is_none_or(|b| (j, i) < b) {
                                best = Some((j, i));
                            }
                        }
                        None => {
                            first_seen.insert((e[x], e[y]), i);
                        }
                    }
                }
            }
        }
        best
    }

    /// Any two hyperedges share at most one vertex.
    pub fn is_linear(&self) -> bool {
        self.nonlinear_pair().is_none()
    }

    /// Vertex–hyperedge incidence graph: vertex `v` keeps id `v`, hyperedge
    /// `i` becomes vertex `n + i`.
    pub fn incidence_graph(&self) -> Graph {
        let mut g = Graph::new(self.n + self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                g.add_edge(v, self.n + i).unwrap();
            }
        }
        g
    }

    /// Sub-hypergraph formed by the connected component with the most
    /// hyperedges (ties to the component whose first hyperedge is earliest).
    pub fn largest_component(&self) -> UniformHypergraph {
        let comps = hyperedge_components(self);
        let mut count: HashMap<usize, usize> = HashMap::new();
        for &c in &comps {
            *count.entry(c).or_default() += 1;
        }
        let best = comps
            .iter()
            .copied()
            .max_by_key(|c| (count[c], std::cmp::Reverse(*c)));
        match best {
            None => self.clone(),
            Some(b) => {
                let keep: Vec<usize> = (0..comps.len()).filter(|&i| comps[i] == b).collect();
                self.retain_indices(&keep)
            }
        }
    }
}

/// Component label per hyperedge (labels are hyperedge indices of the
/// component's first member).
fn hyperedge_components(h: &UniformHypergraph) -> Vec<usize> {
    let m = h.edge_count();
    let mut uf = UnionFind::<usize>::new(h.n() + m);
    for (i, e) in h.edges().iter().enumerate() {
        for &v in e {
            uf.union(h.n() + i, v);
        }
    }
    let mut label: HashMap<usize, usize> = HashMap::new();
    (0..m)
        .map(|i| *label.entry(uf.find(h.n() + i)).or_insert(i))
        .collect()
}

/// An oriented hypergraph: hyperedges are sequences of distinct vertices and
/// no two hyperedges have the same underlying set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedHypergraph {
    a: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
    seen: HashSet<Vec<usize>>,
}

impl OrientedHypergraph {
    pub fn new(a: usize, n: usize) -> Self {
        OrientedHypergraph {
            a,
            n,
            edges: Vec::new(),
            seen: HashSet::new(),
        }
    }

    pub fn from_edges<I, E>(a: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        let mut o = OrientedHypergraph::new(a, n);
        for e in edges {
            o.add_edge(e.as_ref())?;
        }
        Ok(o)
    }

    pub fn add_edge(&mut self, seq: &[usize]) -> Result<usize> {
        let index = self.edges.len();
        let sorted = validate(self.a, self.n, index, seq)?;
        if self.seen.contains(&sorted) {
            let first = self
                .edges
                .iter()
                .position(|e| {
                    let mut s = e.clone();
                    s.sort_unstable();
                    s == sorted
                })
                .unwrap();
            return Err(Error::DuplicateHyperedge(first, index));
        }
        self.seen.insert(sorted);
        self.edges.push(seq.to_vec());
        Ok(index)
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Forget the orders.
    pub fn underlying(&self) -> UniformHypergraph {
        UniformHypergraph::from_edges(self.a, self.n, &self.edges).expect("validated on insert")
    }

    pub fn retain_indices(&self, keep: &[usize]) -> OrientedHypergraph {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        OrientedHypergraph::from_edges(self.a, self.n, sorted.iter().map(|&i| &self.edges[i]))
            .expect("subset of a valid hypergraph")
    }

    /// Every hyperedge reversed.
    pub fn reversed(&self) -> OrientedHypergraph {
        OrientedHypergraph::from_edges(
            self.a,
            self.n,
            self.edges
                .iter()
                .map(|e| e.iter().rev().copied().collect::<Vec<_>>()),
        )
        .unwrap()
    }
}

/// Length of a shortest Berge-cycle (length-2 cycles included).
///
/// Two hyperedges sharing two vertices give girth 2; otherwise the value is
/// half the girth of the incidence graph.
pub fn berge_girth(h: &UniformHypergraph) -> GirthValue {
    if !h.is_linear() {
        return GirthValue::Finite(2);
    }
    match girth(&h.incidence_graph()) {
        GirthValue::Finite(g) => GirthValue::Finite(g / 2),
        GirthValue::Infinite => GirthValue::Infinite,
    }
}

/// Counts Berge-cycles with `2..=max_len` hyperedges by enumerating cycles
/// of the incidence graph (a Berge-cycle of length `l` is exactly a
/// `2l`-cycle there). Returned vector is indexed by length.
pub fn count_berge_cycles(
    h: &UniformHypergraph,
    max_len: usize,
    budget: &SearchBudget,
) -> Result<Vec<usize>> {
    let inc = h.incidence_graph();
    let mut counts = vec![0; max_len + 1];
    for (l, slot) in counts.iter_mut().enumerate().skip(2) {
        *slot = enumerate_cycles(&inc, 2 * l, budget, usize::MAX)?.len();
    }
    Ok(counts)
}

/// Every pair of covered vertices is joined by a chain of pairwise
/// intersecting hyperedges. The empty hypergraph is connected.
pub fn is_connected(h: &UniformHypergraph) -> bool {
    let comps = hyperedge_components(h);
    comps.iter().all(|&c| c == 0)
}

/// Graph with `uv` whenever some hyperedge contains both `u` and `v`.
pub fn two_shadow(h: &UniformHypergraph) -> Graph {
    let mut g = Graph::new(h.n());
    for e in h.edges() {
        for x in 0..e.len() {
            for y in x + 1..e.len() {
                if !g.has_edge(e[x], e[y]) {
                    g.add_edge(e[x], e[y]).unwrap();
                }
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uhg(a: usize, n: usize, edges: &[&[usize]]) -> UniformHypergraph {
        UniformHypergraph::from_edges(a, n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn berge_girth_examples() {
        assert_eq!(
            berge_girth(&uhg(3, 7, &[&[1, 2, 3], &[1, 2, 4]])),
            GirthValue::Finite(2)
        );
        assert_eq!(
            berge_girth(&uhg(3, 7, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 1]])),
            GirthValue::Finite(3)
        );
        assert_eq!(berge_girth(&uhg(3, 7, &[&[1, 2, 3]])), GirthValue::Infinite);
        assert_eq!(
            berge_girth(&UniformHypergraph::new(3, 4)),
            GirthValue::Infinite
        );
    }

    #[test]
    fn graphs_as_two_uniform() {
        let h = uhg(
            2,
            6,
            &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 0]],
        );
        assert_eq!(berge_girth(&h), GirthValue::Finite(6));
        assert_eq!(girth(&two_shadow(&h)), GirthValue::Finite(6));
    }

    #[test]
    fn connectivity_examples() {
        assert!(is_connected(&uhg(3, 6, &[&[1, 2, 3], &[3, 4, 5]])));
        assert!(!is_connected(&uhg(3, 7, &[&[1, 2, 3], &[4, 5, 6]])));
        assert!(is_connected(&UniformHypergraph::new(3, 5)));
    }

    #[test]
    fn shadow_examples() {
        let s = two_shadow(&uhg(3, 4, &[&[1, 2, 3]]));
        assert_eq!(s.edges(), &[(1, 2), (1, 3), (2, 3)]);
        let s = two_shadow(&uhg(3, 6, &[&[1, 2, 3], &[3, 4, 5]]));
        assert_eq!(s.edge_count(), 6);
        assert_eq!(s.degree(3), 4);
        assert_eq!(two_shadow(&UniformHypergraph::new(3, 4)).edge_count(), 0);
    }

    #[test]
    fn construction_errors() {
        let mut h = UniformHypergraph::new(3, 5);
        assert!(matches!(
            h.add_edge(&[0, 1]),
            Err(Error::WrongHyperedgeSize { .. })
        ));
        assert_eq!(h.add_edge(&[0, 1, 1]), Err(Error::RepeatedVertex(0)));
        assert!(matches!(
            h.add_edge(&[0, 1, 5]),
            Err(Error::VertexOutOfRange { .. })
        ));
        h.add_edge(&[2, 1, 0]).unwrap();
        assert_eq!(h.edges()[0], vec![0, 1, 2]);
        assert_eq!(h.add_edge(&[0, 2, 1]), Err(Error::DuplicateHyperedge(0, 1)));
        let mut o = OrientedHypergraph::new(3, 5);
        o.add_edge(&[2, 0, 1]).unwrap();
        assert_eq!(o.add_edge(&[1, 0, 2]), Err(Error::DuplicateHyperedge(0, 1)));
        assert_eq!(o.edges()[0], vec![2, 0, 1]);
    }

    #[test]
    fn complete_hypergraph() {
        assert_eq!(UniformHypergraph::complete(3, 5).edge_count(), 10);
        assert_eq!(UniformHypergraph::complete(2, 4).edges()[5], vec![2, 3]);
        assert_eq!(UniformHypergraph::complete(4, 3).edge_count(), 0);
    }

    #[test]
    fn largest_component_keeps_biggest() {
        let h = uhg(
            3,
            12,
            &[&[0, 1, 2], &[5, 6, 7], &[7, 8, 9], &[2, 3, 4], &[9, 10, 11]],
        );
        let big = h.largest_component();
        assert_eq!(
            big.edges(),
            &[vec![5, 6, 7], vec![7, 8, 9], vec![9, 10, 11]]
        );
    }

    #[test]
    fn counts_short_berge_cycles() {
        let h = uhg(3, 7, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 1]]);
        assert_eq!(
            count_berge_cycles(&h, 4, &SearchBudget::default()).unwrap(),
            vec![0, 0, 0, 1, 0]
        );
        // two hyperedges sharing a pair: exactly one 2-cycle
        let h = uhg(3, 5, &[&[0, 1, 2], &[0, 1, 3]]);
        assert_eq!(
            count_berge_cycles(&h, 3, &SearchBudget::default()).unwrap()[2],
            1
        );
    }
}
