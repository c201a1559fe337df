//! Finite two-layer contact networks from the configuration model.

mod dump;
mod generator;
mod graph;

pub use dump::{read_edge_list, write_edge_list, GraphDump};
pub use generator::{generate_multilayer, pair_stubs, sample_colored_degrees, OddStubs, SampledDegrees};
pub use graph::{Arc, GraphError, Layer, LayerAdjacency, MultilayerGraph};
