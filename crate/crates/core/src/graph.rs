//! Simple undirected graphs and the defective-coloring verifier.
//!
//! A `(χd, Δ*)`-coloring assigns every vertex one of `χd` colors so that no
//! vertex has more than `Δ*` neighbors of its own color. Every solver in this
//! crate hands its output to [`verify`] before reporting success.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Undirected simple graph over vertices `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    labels: BTreeMap<Vertex, String>,
    num_edges: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            labels: BTreeMap::new(),
            num_edges: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops and repeated edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("fresh edge");
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star is simple")
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, edges).expect("petersen is simple")
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adjacency.push(Vec::new());
        self.adjacency.len() - 1
    }

    pub fn add_labeled_vertex(&mut self, label: impl Into<String>) -> Vertex {
        let v = self.add_vertex();
        self.labels.insert(v, label.into());
        v
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        let n = self.num_vertices();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) references a vertex outside 0..{n}"
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
        }
        let pos = match self.adjacency[u].binary_search(&v) {
            Ok(_) => {
                return Err(Error::InvalidGraph(format!("parallel edge ({u}, {v})")));
            }
            Err(pos) => pos,
        };
        self.adjacency[u].insert(pos, v);
        let pos = self.adjacency[v].binary_search(&u).unwrap_err();
        self.adjacency[v].insert(pos, u);
        self.num_edges += 1;
        Ok(())
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|adj| adj.binary_search(&v).is_ok())
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.num_vertices()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, adj)| {
            adj.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn set_label(&mut self, v: Vertex, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, String> {
        &self.labels
    }

    /// Vertices whose label equals `label`.
    pub fn find_label(&self, label: &str) -> Vec<Vertex> {
        self.labels
            .iter()
            .filter(|(_, l)| l.as_str() == label)
            .map(|(&v, _)| v)
            .collect()
    }

    /// Subgraph induced by `keep`; returns the subgraph and the map from new to
    /// old vertex ids. Labels are carried over.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut index = vec![usize::MAX; self.num_vertices()];
        let mut order: Vec<Vertex> = keep.to_vec();
        order.sort_unstable();
        order.dedup();
        for (i, &v) in order.iter().enumerate() {
            index[v] = i;
        }
        let mut sub = Graph::new(order.len());
        for (i, &v) in order.iter().enumerate() {
            for &w in &self.adjacency[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    sub.adjacency[i].push(j);
                    sub.adjacency[j].push(i);
                    sub.num_edges += 1;
                }
            }
            if let Some(label) = self.labels.get(&v) {
                sub.labels.insert(i, label.clone());
            }
        }
        for adj in &mut sub.adjacency {
            adj.sort_unstable();
        }
        (sub, order)
    }

    /// Subgraph after deleting `removed`, with the new-to-old vertex map.
    pub fn without(&self, removed: &BTreeSet<Vertex>) -> (Graph, Vec<Vertex>) {
        let keep: Vec<Vertex> = self.vertices().filter(|v| !removed.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    pub fn is_edgeless(&self) -> bool {
        self.num_edges == 0
    }

    /// True when the graph contains no cycle.
    pub fn is_forest(&self) -> bool {
        // A graph is a forest iff m = n - (#components).
        self.num_edges + self.connected_components().len() == self.num_vertices()
    }

    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    /// Minimum-degree elimination order together with the degeneracy (the
    /// largest degree seen at removal time).
    pub fn degeneracy_order(&self) -> (Vec<Vertex>, usize) {
        let n = self.num_vertices();
        let mut degree: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        let max_deg = self.max_degree();
        let mut buckets: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); max_deg + 1];
        for v in 0..n {
            buckets[degree[v]].insert(v);
        }
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut degeneracy = 0;
        let mut low = 0;
        for _ in 0..n {
            while buckets[low].is_empty() {
                low += 1;
            }
            let v = buckets[low].pop_first().expect("non-empty bucket");
            degeneracy = degeneracy.max(low);
            removed[v] = true;
            order.push(v);
            for &w in &self.adjacency[v] {
                if !removed[w] {
                    buckets[degree[w]].remove(&w);
                    degree[w] -= 1;
                    buckets[degree[w]].insert(w);
                }
            }
            low = low.saturating_sub(1);
        }
        (order, degeneracy)
    }

    pub fn degeneracy(&self) -> usize {
        self.degeneracy_order().1
    }
}

/// A graph together with the target pair `(χd, Δ*)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectiveInstance {
    pub graph: Graph,
    pub num_colors: u32,
    pub deficiency: u32,
}

impl DefectiveInstance {
    pub fn new(graph: Graph, num_colors: u32, deficiency: u32) -> Result<Self> {
        if num_colors == 0 {
            return Err(Error::Precondition("at least one color is required".into()));
        }
        Ok(DefectiveInstance {
            graph,
            num_colors,
            deficiency,
        })
    }
}

/// Total assignment of colors `1..=χd` to the vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(colors: Vec<u32>) -> Self {
        Coloring { colors }
    }

    pub fn monochromatic(n: usize) -> Self {
        Coloring { colors: vec![1; n] }
    }

    pub fn color_of(&self, v: Vertex) -> u32 {
        self.colors[v]
    }

    pub fn set(&mut self, v: Vertex, color: u32) {
        self.colors[v] = color;
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.colors
    }

    pub fn max_color(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        self.colors.iter().collect::<BTreeSet<_>>().len()
    }

    /// Vertices of each color, keyed by color.
    pub fn classes(&self) -> BTreeMap<u32, Vec<Vertex>> {
        let mut classes: BTreeMap<u32, Vec<Vertex>> = BTreeMap::new();
        for (v, &c) in self.colors.iter().enumerate() {
            classes.entry(c).or_default().push(v);
        }
        classes
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub per_vertex_deficiency: Vec<u32>,
    pub max_deficiency: u32,
    pub violating_vertices: Vec<Vertex>,
}

/// Number of same-colored neighbors of every vertex.
pub fn deficiency_profile(graph: &Graph, coloring: &Coloring) -> Result<Vec<u32>> {
    check_total(graph, coloring)?;
    if let Some(v) = coloring.colors.iter().position(|&c| c == 0) {
        return Err(Error::ColorOutOfRange {
            vertex: v,
            color: 0,
            num_colors: coloring.max_color(),
        });
    }
    Ok(graph
        .vertices()
        .map(|v| {
            let c = coloring.colors[v];
            graph
                .neighbors(v)
                .iter()
                .filter(|&&w| coloring.colors[w] == c)
                .count() as u32
        })
        .collect())
}

/// Checks a coloring against an instance. Structural problems (wrong length,
/// colors outside `1..=χd`) are errors; deficiency overruns are reported.
pub fn verify(instance: &DefectiveInstance, coloring: &Coloring) -> Result<VerificationReport> {
    check_total(&instance.graph, coloring)?;
    for (v, &c) in coloring.colors.iter().enumerate() {
        if c == 0 || c > instance.num_colors {
            return Err(Error::ColorOutOfRange {
                vertex: v,
                color: c,
                num_colors: instance.num_colors,
            });
        }
    }
    let per_vertex_deficiency = deficiency_profile(&instance.graph, coloring)?;
    Ok(report_from_profile(
        per_vertex_deficiency,
        instance.deficiency,
    ))
}

pub(crate) fn report_from_profile(profile: Vec<u32>, budget: u32) -> VerificationReport {
    let max_deficiency = profile.iter().copied().max().unwrap_or(0);
    let violating_vertices: Vec<Vertex> = profile
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > budget)
        .map(|(v, _)| v)
        .collect();
    VerificationReport {
        valid: violating_vertices.is_empty(),
        per_vertex_deficiency: profile,
        max_deficiency,
        violating_vertices,
    }
}

fn check_total(graph: &Graph, coloring: &Coloring) -> Result<()> {
    let n = graph.num_vertices();
    match coloring.len() {
        len if len == n => Ok(()),
        len if len < n => Err(Error::MissingVertex(len)),
        len => Err(Error::ColoringLength {
            expected: n,
            got: len,
        }),
    }
}

/// Proper coloring with at most `degeneracy + 1` colors, by greedy coloring in
/// reverse minimum-degree elimination order.
pub fn proper_coloring_by_degeneracy(graph: &Graph) -> Coloring {
    let (order, _) = graph.degeneracy_order();
    let mut colors = vec![0u32; graph.num_vertices()];
    let mut taken = Vec::new();
    for &v in order.iter().rev() {
        taken.clear();
        taken.extend(
            graph
                .neighbors(v)
                .iter()
                .map(|&w| colors[w])
                .filter(|&c| c != 0),
        );
        taken.sort_unstable();
        taken.dedup();
        let mut c = 1;
        for &t in &taken {
            if t == c {
                c += 1;
            } else if t > c {
                break;
            }
        }
        colors[v] = c;
    }
    Coloring::new(colors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(g: Graph, c: u32, d: u32) -> DefectiveInstance {
        DefectiveInstance::new(g, c, d).unwrap()
    }

    #[test]
    fn k4_in_pairs_has_deficiency_one() {
        let report = verify(
            &inst(Graph::complete(4), 2, 1),
            &Coloring::new(vec![1, 1, 2, 2]),
        )
        .unwrap();
        assert!(report.valid);
        assert_eq!(report.per_vertex_deficiency, vec![1, 1, 1, 1]);
    }

    #[test]
    fn k4_monochromatic_exceeds_budget() {
        let report = verify(&inst(Graph::complete(4), 1, 2), &Coloring::monochromatic(4)).unwrap();
        assert!(!report.valid);
        assert_eq!(report.per_vertex_deficiency, vec![3; 4]);
        assert_eq!(report.violating_vertices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn c5_counts() {
        let report = verify(
            &inst(Graph::cycle(5), 2, 1),
            &Coloring::new(vec![1, 2, 1, 2, 2]),
        )
        .unwrap();
        assert!(report.valid);
        assert_eq!(report.per_vertex_deficiency, vec![0, 0, 0, 1, 1]);
        assert_eq!(report.max_deficiency, 1);
    }

    #[test]
    fn profiles() {
        let g = Graph::new(4);
        assert_eq!(
            deficiency_profile(&g, &Coloring::new(vec![1, 2, 1, 1])).unwrap(),
            vec![0; 4]
        );
        assert_eq!(
            deficiency_profile(&Graph::complete(3), &Coloring::monochromatic(3)).unwrap(),
            vec![2, 2, 2]
        );
        assert_eq!(
            deficiency_profile(&Graph::path(3), &Coloring::new(vec![1, 1, 2])).unwrap(),
            vec![1, 1, 0]
        );
    }

    #[test]
    fn malformed_colorings_are_errors() {
        let i = inst(Graph::path(3), 2, 0);
        assert!(matches!(
            verify(&i, &Coloring::new(vec![1, 2])),
            Err(Error::MissingVertex(2))
        ));
        assert!(matches!(
            verify(&i, &Coloring::new(vec![1, 3, 1])),
            Err(Error::ColorOutOfRange { vertex: 1, .. })
        ));
        assert!(matches!(
            verify(&i, &Coloring::new(vec![1, 0, 1])),
            Err(Error::ColorOutOfRange { vertex: 1, .. })
        ));
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn degeneracy_colorings() {
        let tree = Graph::from_edges(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let c = proper_coloring_by_degeneracy(&tree);
        assert!(c.max_color() <= 2);
        assert!(verify(&inst(tree, 2, 0), &c).unwrap().valid);

        let c = proper_coloring_by_degeneracy(&Graph::complete(5));
        assert_eq!(c.colors_used(), 5);

        let c5 = Graph::cycle(5);
        let c = proper_coloring_by_degeneracy(&c5);
        assert!(c.max_color() <= 3);
        assert!(verify(&inst(c5, 3, 0), &c).unwrap().valid);
    }

    #[test]
    fn forest_detection() {
        assert!(Graph::path(5).is_forest());
        assert!(!Graph::cycle(4).is_forest());
        assert!(Graph::new(3).is_forest());
    }

    #[test]
    fn petersen_shape() {
        let p = Graph::petersen();
        assert_eq!(p.num_edges(), 15);
        assert!(p.vertices().all(|v| p.degree(v) == 3));
    }
}
