use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// A multicolored clique instance: `k` independent classes of `n` vertices.
///
/// Classes and indices are 1-based in the public API: `classes[i - 1][j - 1]`
/// is the vertex with index `j` in class `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MccInstance {
    graph: Graph,
    k: usize,
    n: usize,
    classes: Vec<Vec<Vertex>>,
    /// Position of each vertex as `(class, index)`.
    place: Vec<(usize, usize)>,
    planted: Option<Vec<usize>>,
}

impl MccInstance {
    pub fn new(
        graph: Graph,
        classes: Vec<Vec<Vertex>>,
        planted: Option<Vec<usize>>,
    ) -> Result<Self> {
        let k = classes.len();
        let n = classes.first().map_or(0, Vec::len);
        if k < 2 || n == 0 {
            return Err(Error::Precondition(
                "need at least 2 non-empty classes".into(),
            ));
        }
        let mut place = vec![(0, 0); graph.num_vertices()];
        for (i, class) in classes.iter().enumerate() {
            if class.len() != n {
                return Err(Error::Precondition(format!(
                    "class {} has {} vertices, expected {n}",
                    i + 1,
                    class.len()
                )));
            }
            for (j, &v) in class.iter().enumerate() {
                if v >= graph.num_vertices() || place[v] != (0, 0) {
                    return Err(Error::Precondition(format!(
                        "vertex {v} is missing from the graph or in two classes"
                    )));
                }
                place[v] = (i + 1, j + 1);
            }
        }
        if let Some(v) = place.iter().position(|&p| p == (0, 0)) {
            return Err(Error::Precondition(format!("vertex {v} is in no class")));
        }
        if let Some((u, v)) = graph.edges().find(|&(u, v)| place[u].0 == place[v].0) {
            return Err(Error::Precondition(format!(
                "edge {u}-{v} lies inside class {}",
                place[u].0
            )));
        }
        let mcc = MccInstance {
            graph,
            k,
            n,
            classes,
            place,
            planted: None,
        };
        if let Some(p) = &planted {
            if !verify_clique(&mcc, p) {
                return Err(Error::Precondition(
                    "planted indices do not form a clique".into(),
                ));
            }
        }
        Ok(MccInstance { planted, ..mcc })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[Vec<Vertex>] {
        &self.classes
    }

    /// `(class, index)` of `v`, both 1-based.
    pub fn place(&self, v: Vertex) -> (usize, usize) {
        self.place[v]
    }

    /// Vertex with 1-based `index` in 1-based `class`.
    pub fn vertex(&self, class: usize, index: usize) -> Vertex {
        self.classes[class - 1][index - 1]
    }

    pub fn planted(&self) -> Option<&[usize]> {
        self.planted.as_deref()
    }

    pub fn num_edges(&self) -> usize {
        self.graph.num_edges()
    }

    /// `|E| - C(k, 2)`, negative when there are too few edges for a clique.
    pub fn target_deficiency(&self) -> i64 {
        self.graph.num_edges() as i64 - (self.k * (self.k - 1) / 2) as i64
    }
}

/// Whether `clique[i - 1]` (a 1-based index into class `i`) picks pairwise
/// adjacent vertices.
pub fn verify_clique(mcc: &MccInstance, clique: &[usize]) -> bool {
    if clique.len() != mcc.k || clique.iter().any(|&j| j == 0 || j > mcc.n) {
        return false;
    }
    (0..mcc.k).all(|a| {
        (a + 1..mcc.k).all(|b| {
            mcc.graph
                .has_edge(mcc.vertex(a + 1, clique[a]), mcc.vertex(b + 1, clique[b]))
        })
    })
}

/// Random instance: vertex `(i - 1) n + (j - 1)` has index `j` in class `i`;
/// each cross-class pair is an edge with probability `edge_prob`. With
/// `plant`, one index per class is drawn and the clique on them is added.
pub fn random_mcc(
    k: usize,
    n: usize,
    edge_prob: f64,
    seed: u64,
    plant: bool,
) -> Result<MccInstance> {
    if k < 2 || n == 0 {
        return Err(Error::Precondition("need k >= 2 and n >= 1".into()));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::Precondition(format!(
            "edge probability {edge_prob} is not in [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graph = Graph::new(k * n);
    let planted: Option<Vec<usize>> = plant.then(|| (0..k).map(|_| rng.gen_range(1..=n)).collect());
    for u in 0..k * n {
        for v in u + 1..k * n {
            if u / n == v / n {
                continue;
            }
            let forced = planted
                .as_ref()
                .is_some_and(|p| p[u / n] == u % n + 1 && p[v / n] == v % n + 1);
            if forced || rng.gen_bool(edge_prob) {
                graph.add_edge(u, v)?;
            }
        }
    }
    let classes = (0..k).map(|i| (i * n..(i + 1) * n).collect()).collect();
    MccInstance::new(graph, classes, planted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_clique_verifies() {
        for seed in 0..10 {
            let m = random_mcc(3, 4, 0.2, seed, true).unwrap();
            assert!(verify_clique(&m, m.planted().unwrap()));
        }
    }

    #[test]
    fn complete_multipartite() {
        let m = random_mcc(3, 2, 1.0, 7, false).unwrap();
        assert_eq!(m.num_edges(), 12);
        for a in 1..=2 {
            for b in 1..=2 {
                for c in 1..=2 {
                    assert!(verify_clique(&m, &[a, b, c]));
                }
            }
        }
    }

    #[test]
    fn empty_has_no_clique() {
        let m = random_mcc(2, 3, 0.0, 1, false).unwrap();
        assert_eq!(m.num_edges(), 0);
        assert!(!verify_clique(&m, &[1, 1]));
        assert_eq!(m.target_deficiency(), -1);
    }

    #[test]
    fn deterministic_under_seed() {
        assert_eq!(
            random_mcc(3, 3, 0.5, 42, true).unwrap(),
            random_mcc(3, 3, 0.5, 42, true).unwrap()
        );
    }

    #[test]
    fn rejects_edges_inside_classes() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        assert!(MccInstance::new(g, vec![vec![0, 1], vec![2, 3]], None).is_err());
    }
}
