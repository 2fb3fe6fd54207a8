//! Graph and hypergraph types, girth, fixed-length cycles, Berge-girth.

mod cycles;
mod graph;
mod hypergraph;
pub mod io;

pub use cycles::{
    enumerate_cycles, find_cycle_of_length, has_cycle_of_length, DEFAULT_CYCLE_CEILING,
};
pub use graph::{
    girth, shortest_cycle_through, shortest_cycle_through_within, BipartiteGraph, GirthValue,
    Graph, Side,
};
pub use hypergraph::{
    berge_girth, count_berge_cycles, is_connected, two_shadow, OrientedHypergraph,
    UniformHypergraph,
};
