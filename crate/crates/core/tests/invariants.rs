use proptest::prelude::*;

use cfree_core::colorstats::derandomized_coloring;
use cfree_core::constructions::{
    bipartite_blowup, clique_blowup, fat_edges_disjoint, paste_doubled, paste_hyperdouble,
    EdgeLabel,
};
use cfree_core::graphcore::io::{parse_graph, parse_uniform, write_graph, write_uniform};
use cfree_core::graphcore::{
    berge_girth, has_cycle_of_length, BipartiteGraph, GirthValue, Graph, UniformHypergraph,
};
use cfree_core::hypergen::{
    high_girth_bipartite, random_c2k_free_bipartite, random_hypergraph, random_oriented,
    repair_girth, GenConfig,
};
use cfree_core::kuhn_osthus::build_layering;
use cfree_core::SearchBudget;

/// Shortest Berge-cycle by brute force: extend sequences of distinct
/// hyperedges and distinct linking vertices.
fn brute_berge_girth(h: &UniformHypergraph) -> Option<usize> {
    fn extend(
        h: &UniformHypergraph,
        path: &mut Vec<usize>,
        links: &mut Vec<usize>,
        len: usize,
    ) -> bool {
        let last = *path.last().unwrap();
        if path.len() == len {
            let first = path[0];
            return h.edges()[last]
                .iter()
                .any(|v| h.edges()[first].contains(v) && !links.contains(v));
        }
        for next in 0..h.edge_count() {
            if path.contains(&next) || next < path[0] {
                continue;
            }
            for &v in &h.edges()[last] {
                if h.edges()[next].contains(&v) && !links.contains(&v) {
                    path.push(next);
                    links.push(v);
                    if extend(h, path, links, len) {
                        return true;
                    }
                    path.pop();
                    links.pop();
                }
            }
        }
        false
    }
    (2..=h.edge_count())
        .find(|&len| (0..h.edge_count()).any(|s| extend(h, &mut vec![s], &mut Vec::new(), len)))
}

fn c(g: &Graph, len: usize) -> bool {
    has_cycle_of_length(g, len, &SearchBudget::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn berge_girth_matches_brute_force(n in 6usize..10, m in 1usize..8, seed in any::<u64>()) {
        let h = random_hypergraph(&GenConfig { a: 3, n, m, k: 2, seed }).unwrap();
        let expected = brute_berge_girth(&h);
        match berge_girth(&h) {
            GirthValue::Infinite => prop_assert_eq!(expected, None),
            GirthValue::Finite(g) => prop_assert_eq!(expected, Some(g)),
        }
    }

    #[test]
    fn layers_are_antichains(n_a in 2usize..7, n_b in 2usize..7, seed in any::<u64>()) {
        let g = random_c2k_free_bipartite(n_a, n_b, 5, usize::MAX, seed).unwrap();
        let l = build_layering(&g);
        let e = g.graph().edge_count();
        for x in 0..e {
            for &y in l.successors(x) {
                prop_assert!(l.layer_of(y) > l.layer_of(x));
            }
        }
        for layer in l.layers() {
            for &x in &layer {
                for &y in &layer {
                    prop_assert!(x == y || !l.reachable(x, y));
                }
            }
            prop_assert!(!c(&g.graph().edge_subgraph(&layer), 4));
        }
        if e > 0 {
            let biggest = l.layers().iter().map(Vec::len).max().unwrap();
            prop_assert!(biggest * l.layer_count() >= e);
        }
    }

    #[test]
    fn repair_reaches_girth_and_keeps_superset_order(n in 12usize..40, m in 5usize..60, k in 2usize..6, seed in any::<u64>()) {
        let m = m.min(n * (n - 1) * (n - 2) / 12);
        let h = random_hypergraph(&GenConfig { a: 3, n, m, k, seed }).unwrap();
        let r = repair_girth(&h, k).unwrap();
        prop_assert!(berge_girth(&r.hypergraph).exceeds(k));
        prop_assert_eq!(r.kept.len() + r.deleted.len(), h.edge_count());
        for (i, &orig) in r.kept.iter().enumerate() {
            prop_assert_eq!(&r.hypergraph.edges()[i], &h.edges()[orig]);
        }
    }

    #[test]
    fn derandomized_kept_edges_are_not_monochromatic(n in 10usize..20, m in 1usize..40, b in 2usize..4, seed in any::<u64>()) {
        let h = random_hypergraph(&GenConfig { a: 3, n, m, k: 2, seed }).unwrap();
        let d = derandomized_coloring(&h, b).unwrap();
        for e in d.kept.edges() {
            prop_assert!(e.iter().any(|&v| d.coloring.color(v) != d.coloring.color(e[0])));
        }
        prop_assert_eq!(d.kept.edge_count() + d.monochromatic, h.edge_count());
    }

    #[test]
    fn graph_text_round_trip(n in 1usize..30, seed in any::<u64>()) {
        let g = random_c2k_free_bipartite(n, n, 3, 3 * n, seed).unwrap();
        let back = parse_graph(&write_graph(g.graph())).unwrap();
        prop_assert_eq!(back.edges(), g.graph().edges());
        let h = random_hypergraph(&GenConfig { a: 3, n: n + 5, m: n, k: 2, seed }).unwrap();
        let parsed = parse_uniform(&write_uniform(&h)).unwrap();
        prop_assert_eq!(parsed.edges(), h.edges());
    }
}

#[test]
fn clique_blowup_of_girth_repaired_hypergraph_is_c4_free() {
    for seed in 0..10 {
        let h = random_hypergraph(&GenConfig {
            a: 3,
            n: 30,
            m: 30,
            k: 4,
            seed,
        })
        .unwrap();
        let h = repair_girth(&h, 4).unwrap().hypergraph;
        let g = clique_blowup(&h).unwrap().graph;
        assert_eq!(g.edge_count(), 3 * h.edge_count());
        assert!(!c(&g, 4));
    }
}

#[test]
fn bipartite_blowup_avoids_c6_after_repair() {
    for seed in 0..10 {
        let o = random_oriented(&GenConfig {
            a: 4,
            n: 40,
            m: 8,
            k: 6,
            seed,
        })
        .unwrap();
        let (o, _) = cfree_core::hypergen::repair_girth_oriented(&o, 6).unwrap();
        let g = bipartite_blowup(&o, 3, 2).unwrap().graph;
        assert_eq!(g.edge_count(), 4 * o.edge_count());
        assert!(!c(&g, 6));
    }
}

#[test]
fn doubled_pasting_structure() {
    let base = high_girth_bipartite(40, 10, 2, 7).unwrap();
    let pg = paste_doubled(&base, 3).unwrap();
    let e1 = base.graph().edge_count();
    assert_eq!(pg.count(EdgeLabel::Base), e1);
    assert_eq!(pg.count(EdgeLabel::Mirror), e1);
    assert_eq!(pg.count(EdgeLabel::Connector), base.class_b().len());
    assert!(!c(&pg.graph, 8));
    assert!(c(&pg.graph, 6));
}

#[test]
fn hyperdouble_of_single_triple_is_c6() {
    let h = UniformHypergraph::from_edges(3, 3, [[0, 1, 2]]).unwrap();
    let pg = paste_hyperdouble(&h).unwrap();
    assert!(fat_edges_disjoint(&pg));
    assert_eq!(pg.graph.edge_count(), 6);
    assert!(c(&pg.graph, 6));
    assert!(BipartiteGraph::from_graph(pg.graph.clone()).is_ok());
}
