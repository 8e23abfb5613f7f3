//! Two-group random liability graphs with a big node.
//!
//! Node `j` is liable to node `i` when `I[j][i] = 1`. Rows are stored as
//! sorted creditor lists; the weight of each stored entry is kept alongside,
//! plus one weight per row towards the big node.

mod diag;
mod graph;
mod params;
mod sample;
mod weights;

pub use diag::{regularity_diagnostic, RegularityReport};
pub use graph::{Adjacency, GraphRecord, GraphSample, Group, DENSE_LIMIT};
pub use params::{EtaMode, ModelParams, WeightModel};
pub use sample::{sample_adjacency, sample_eta, sample_graph, sample_regular_graph, DegreeWindow, GRAPH_ATTEMPTS};
pub use weights::{build_weights, Weights};
