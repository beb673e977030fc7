//! Path encoding on network topologies.
//!
//! A forwarding path is the member set `S` (its directed links) and every
//! other outgoing link of a node on the path forms the query set `T`. Each
//! allocation re-draws the bit positions of every link, builds a yes-no
//! filter and a classic filter of the same total size, and counts how many
//! links of `T` each one would wrongly forward on.

mod experiment;
mod graph;
mod io;
mod paths;
pub mod synthetic;

pub use experiment::{
    aggregate_by_length, bootstrap_dominance, mean_ratio, run_topology_experiment,
    write_aggregate_csv, write_topology_csv, AllocationCounts, ExperimentParams, LengthAggregate,
    PathExperiment, TopologyOutcome,
};
pub use graph::Graph;
pub use io::{load_graph, parse_edgelist, parse_graphml, GraphFormat};
pub use paths::{derive_link_sets, select_long_path, DirectedLink};
