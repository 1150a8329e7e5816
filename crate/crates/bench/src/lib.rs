//! Shared fixtures for the benchmarks.

use rand::rngs::StdRng;
use rand::SeedableRng;
use randic_core::families::random_connected_graph;
use randic_core::{parse_edge_list, Graph};

pub const SAMPLE7: &str = "n 7\n1 2\n2 3\n3 4\n2 4\n1 4\n4 5\n5 6\n4 6\n4 7\n";

pub fn sample7() -> Graph {
    parse_edge_list(SAMPLE7).expect("fixture parses")
}

/// A reproducible connected `G(n, 0.4)` sample.
pub fn random_graph(n: usize, seed: u64) -> Graph {
    random_connected_graph(n, 0.4, &mut StdRng::seed_from_u64(seed)).expect("valid parameters")
}
