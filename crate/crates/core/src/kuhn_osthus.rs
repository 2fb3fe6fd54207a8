//! C4-free subgraphs of bipartite graphs via an antichain of the edge poset.
//!
//! Write every edge as `(a, b)` with `a ∈ A`, `b ∈ B`. There is an arc
//! `(a, b) → (a', b')` when `a < a'`, `b < b'` (in the class orders) and all
//! of `ab, ab', a'b, a'b'` are edges. Comparability is reachability along
//! arcs, so a chain of length `h` yields a cycle of length `2h`, and every
//! `C4` contains two comparable edges. Layer `i` holds the edges whose
//! longest incoming chain has `i` arcs; each layer is an antichain and hence
//! C4-free, and the largest has at least `e(G)/h` edges.

use crate::error::Result;
use crate::graphcore::{BipartiteGraph, Graph};

/// The one-step arc relation on the edges of a bipartite graph together with
/// the longest-path layer of every edge.
#[derive(Debug, Clone)]
pub struct EdgeLayering {
    graph: BipartiteGraph,
    arcs: Vec<Vec<usize>>,
    layer: Vec<usize>,
    layer_count: usize,
}

impl EdgeLayering {
    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    /// Out-arcs of edge `e` (edge indices of the underlying graph).
    pub fn successors(&self, e: usize) -> &[usize] {
        &self.arcs[e]
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.iter().map(Vec::len).sum()
    }

    /// 0-based layer of edge `e`.
    pub fn layer_of(&self, e: usize) -> usize {
        self.layer[e]
    }

    /// Number of layers, i.e. the number of edges on a longest chain.
    pub fn layer_count(&self) -> usize {
        self.layer_count
    }

    /// Edge indices of each layer, ascending.
    pub fn layers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.layer_count];
        for (e, &l) in self.layer.iter().enumerate() {
            out[l].push(e);
        }
        out
    }

    /// Index of the largest layer, ties to the smallest index.
    pub fn largest_layer(&self) -> Option<usize> {
        let layers = self.layers();
        (0..layers.len()).rev().max_by_key(|&i| layers[i].len())
    }

    /// True if `to` is reachable from `from` along arcs.
    pub fn reachable(&self, from: usize, to: usize) -> bool {
        let mut seen = vec![false; self.arcs.len()];
        let mut stack = vec![from];
        while let Some(e) = stack.pop() {
            for &f in &self.arcs[e] {
                if f == to {
                    return true;
                }
                if !seen[f] {
                    seen[f] = true;
                    stack.push(f);
                }
            }
        }
        false
    }
}

pub fn build_layering(g: &BipartiteGraph) -> EdgeLayering {
    let graph = g.graph();
    let m = graph.edge_count();
    let mut arcs = vec![Vec::new(); m];
    for (e, arcs_e) in arcs.iter_mut().enumerate() {
        let (a, b) = g.oriented_edge(e);
        for &a2 in graph.neighbors(b) {
            if g.rank(a2) <= g.rank(a) {
                continue;
            }
            for &b2 in graph.neighbors(a) {
                if g.rank(b2) <= g.rank(b) {
                    continue;
                }
                if let Some(f) = graph.edge_index(a2, b2) {
                    arcs_e.push(f);
                }
            }
        }
        arcs_e.sort_unstable();
    }

    // both coordinates increase along arcs, so (rank a, rank b) order is topological
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&e| {
        let (a, b) = g.oriented_edge(e);
        (g.rank(a), g.rank(b))
    });
    let mut layer = vec![0; m];
    for &e in &order {
        for &f in &arcs[e] {
            layer[f] = layer[f].max(layer[e] + 1);
        }
    }
    let layer_count = layer.iter().map(|&l| l + 1).max().unwrap_or(0);
    EdgeLayering {
        graph: g.clone(),
        arcs,
        layer,
        layer_count,
    }
}

/// Result of [`extract_c4free`].
#[derive(Debug, Clone)]
pub struct Extraction {
    /// The kept edges as a spanning subgraph of the input.
    pub subgraph: Graph,
    /// Edge indices (in the input graph) of the chosen layer.
    pub edges: Vec<usize>,
    pub layer_index: usize,
    pub layer_count: usize,
}

/// Largest layer of the edge poset as a C4-free spanning subgraph.
pub fn extract_c4free(g: &BipartiteGraph) -> Extraction {
    let layering = build_layering(g);
    extraction_from(&layering)
}

pub fn extraction_from(layering: &EdgeLayering) -> Extraction {
    let graph = layering.graph().graph();
    match layering.largest_layer() {
        None => Extraction {
            subgraph: Graph::new(graph.n()),
            edges: Vec::new(),
            layer_index: 0,
            layer_count: 0,
        },
        Some(i) => {
            let edges = layering.layers().swap_remove(i);
            Extraction {
                subgraph: graph.edge_subgraph(&edges),
                edges,
                layer_index: i,
                layer_count: layering.layer_count(),
            }
        }
    }
}

/// Number of edges on a longest chain of the edge poset.
pub fn longest_chain_length(g: &BipartiteGraph) -> usize {
    build_layering(g).layer_count()
}

/// Convenience wrapper: bipartition computed by 2-colouring.
pub fn extract_c4free_from_graph(g: &Graph) -> Result<Extraction> {
    Ok(extract_c4free(&BipartiteGraph::from_graph(g.clone())?))
}
