//! Cycle-free subgraphs of graphs and hypergraphs: generators, extraction
//! procedures, colouring statistics, explicit constructions and exact
//! oracles.

pub mod budget;
pub mod colorstats;
pub mod constructions;
pub mod dot;
pub mod error;
pub mod experiment;
pub mod graphcore;
pub mod hypergen;
pub mod kuhn_osthus;
pub mod oracles;
pub mod rng;

pub use budget::SearchBudget;
pub use error::{Error, Result};
