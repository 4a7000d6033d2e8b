//! Benchmark inputs shared by the criterion benches.

use defco::corpus::gnp;
use defco::decomposition::{
    heuristic_decomposition, make_nice, NiceDecomposition, Strategy, TreeDecomposition,
};
use defco::gadgets::{random_mcc, MccInstance};
use defco::graph::Graph;

/// A graph with its min-fill decomposition and the nice form of it.
pub struct Fixture {
    pub name: String,
    pub graph: Graph,
    pub td: TreeDecomposition,
    pub nice: NiceDecomposition,
}

impl Fixture {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        let td = heuristic_decomposition(&graph, Strategy::MinFill);
        let nice = make_nice(&td).expect("heuristic decompositions are valid");
        Fixture {
            name: name.into(),
            graph,
            td,
            nice,
        }
    }
}

/// Square grid graph with `rows * cols` vertices; treewidth `min(rows, cols)`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut g = Graph::new(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                g.add_edge(v, v + 1).expect("grid edge");
            }
            if r + 1 < rows {
                g.add_edge(v, v + cols).expect("grid edge");
            }
        }
    }
    g
}

/// Small-width inputs for the decomposition DPs.
pub fn dp_fixtures() -> Vec<Fixture> {
    vec![
        Fixture::new("grid3x20", grid(3, 20)),
        Fixture::new("grid4x12", grid(4, 12)),
        Fixture::new("gnp40", gnp(40, 0.08, 7)),
        Fixture::new("path500", Graph::path(500)),
    ]
}

/// Planted source instance for the reduction generators.
pub fn mcc(k: usize, n: usize) -> MccInstance {
    random_mcc(k, n, 0.7, 3, true).expect("valid parameters")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = grid(3, 4);
        assert_eq!(g.num_vertices(), 12);
        assert_eq!(g.num_edges(), 3 * 3 + 2 * 4);
    }

    #[test]
    fn fixtures_are_small_width() {
        for f in dp_fixtures() {
            assert!(f.td.width() <= 6, "{} has width {}", f.name, f.td.width());
        }
    }
}
