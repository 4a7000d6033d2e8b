//! Tree decompositions: validation, heuristic construction, nice form,
//! balancing, and the structural parameters the solvers branch on.

mod balance;
mod heuristic;
mod nice;
mod params;
mod separator;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub use balance::{balance, BALANCE_HEIGHT_CONSTANT};
pub use heuristic::{heuristic_decomposition, Strategy};
pub use nice::{make_nice, NiceDecomposition, NiceNode, NodeKind};
pub use params::{exact_fvs, exact_vc, DEFAULT_PARAMETER_CAP};
pub use separator::from_separator;

/// Rooted tree decomposition. Bags are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<Vertex>>,
    parent: Vec<Option<usize>>,
    root: Option<usize>,
}

impl TreeDecomposition {
    /// A decomposition with no bags; only valid for the empty graph.
    pub fn empty() -> Self {
        TreeDecomposition {
            bags: Vec::new(),
            parent: Vec::new(),
            root: None,
        }
    }

    pub fn single_bag(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        TreeDecomposition {
            bags: vec![sorted(vertices.into_iter().collect())],
            parent: vec![None],
            root: Some(0),
        }
    }

    /// Builds a decomposition from bags and undirected tree edges, rooted at
    /// node 0. Fails unless the edges form a spanning tree over the nodes.
    pub fn from_edges(bags: Vec<Vec<Vertex>>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = bags.len();
        if n == 0 {
            return if edges.is_empty() {
                Ok(Self::empty())
            } else {
                Err(Error::InvalidDecomposition("edges without bags".into()))
            };
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidDecomposition(format!(
                "{} tree edges for {} bags, expected {}",
                edges.len(),
                n,
                n - 1
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidDecomposition(format!(
                    "bad tree edge ({a}, {b})"
                )));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut reached = 1;
        while let Some(t) = queue.pop_front() {
            for &s in &adj[t] {
                if !seen[s] {
                    seen[s] = true;
                    parent[s] = Some(t);
                    reached += 1;
                    queue.push_back(s);
                }
            }
        }
        if reached != n {
            return Err(Error::InvalidDecomposition(
                "tree edges do not connect all bags".into(),
            ));
        }
        Ok(TreeDecomposition {
            bags: bags.into_iter().map(sorted).collect(),
            parent,
            root: Some(0),
        })
    }

    /// Builds a decomposition from a parent array; exactly one entry must be `None`.
    pub fn from_parents(bags: Vec<Vec<Vertex>>, parent: Vec<Option<usize>>) -> Result<Self> {
        if bags.len() != parent.len() {
            return Err(Error::InvalidDecomposition(
                "bag and parent arrays differ in length".into(),
            ));
        }
        if bags.is_empty() {
            return Ok(Self::empty());
        }
        let edges: Vec<(usize, usize)> = parent
            .iter()
            .enumerate()
            .filter_map(|(t, p)| p.map(|p| (t, p)))
            .collect();
        let roots: Vec<usize> = (0..parent.len()).filter(|&t| parent[t].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidDecomposition(format!(
                "expected one root, found {}",
                roots.len()
            )));
        }
        let mut td = Self::from_edges(bags, &edges)?;
        td.reroot(roots[0]);
        Ok(td)
    }

    pub fn num_nodes(&self) -> usize {
        self.bags.len()
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn bag(&self, t: usize) -> &[Vertex] {
        &self.bags[t]
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        self.parent[t]
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    /// Largest bag size minus one; zero for an empty decomposition.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    /// Number of nodes on the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        let mut depth = vec![0usize; self.num_nodes()];
        let mut best = 0;
        for t in self.pre_order() {
            depth[t] = self.parent[t].map_or(1, |p| depth[p] + 1);
            best = best.max(depth[t]);
        }
        best
    }

    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(t, p)| p.map(|p| (p, t)))
            .collect()
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.num_nodes()];
        for (t, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                children[*p].push(t);
            }
        }
        children
    }

    /// Nodes with every parent before its children.
    pub fn pre_order(&self) -> Vec<usize> {
        let Some(root) = self.root else {
            return Vec::new();
        };
        let children = self.children();
        let mut order = Vec::with_capacity(self.num_nodes());
        let mut stack = vec![root];
        while let Some(t) = stack.pop() {
            order.push(t);
            stack.extend(children[t].iter().rev());
        }
        order
    }

    /// Nodes with every child before its parent.
    pub fn post_order(&self) -> Vec<usize> {
        let mut order = self.pre_order();
        order.reverse();
        order
    }

    pub fn reroot(&mut self, new_root: usize) {
        let mut path = vec![new_root];
        while let Some(p) = self.parent[*path.last().unwrap()] {
            path.push(p);
        }
        for pair in path.windows(2).rev() {
            self.parent[pair[1]] = Some(pair[0]);
        }
        self.parent[new_root] = None;
        self.root = Some(new_root);
    }

    /// Checks the three decomposition axioms against `graph`.
    pub fn validate(&self, graph: &Graph) -> std::result::Result<(), Violation> {
        validate(graph, self)
    }
}

/// First violated decomposition axiom, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnknownVertex { node: usize, vertex: Vertex },
    VertexNotCovered(Vertex),
    EdgeNotCovered(Vertex, Vertex),
    Disconnected { vertex: Vertex, nodes: Vec<usize> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownVertex { node, vertex } => {
                write!(f, "bag {node} contains unknown vertex {vertex}")
            }
            Violation::VertexNotCovered(v) => write!(f, "vertex {v} appears in no bag"),
            Violation::EdgeNotCovered(u, v) => {
                write!(f, "edge ({u}, {v}) is not contained in any bag")
            }
            Violation::Disconnected { vertex, nodes } => write!(
                f,
                "bags containing vertex {vertex} are not connected (nodes {nodes:?})"
            ),
        }
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::InvalidDecomposition(v.to_string())
    }
}

pub fn validate(graph: &Graph, td: &TreeDecomposition) -> std::result::Result<(), Violation> {
    let n = graph.num_vertices();
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (t, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return Err(Violation::UnknownVertex { node: t, vertex: v });
            }
            occurrences[v].push(t);
        }
    }
    if let Some(v) = occurrences.iter().position(Vec::is_empty) {
        return Err(Violation::VertexNotCovered(v));
    }
    for (u, v) in graph.edges() {
        let covered = occurrences[u]
            .iter()
            .any(|&t| td.bags[t].binary_search(&v).is_ok());
        if !covered {
            return Err(Violation::EdgeNotCovered(u, v));
        }
    }
    // The bags holding v form a subtree iff exactly one of them has a parent
    // outside the set.
    for (v, nodes) in occurrences.iter().enumerate() {
        let tops = nodes
            .iter()
            .filter(|&&t| match td.parent[t] {
                Some(p) => td.bags[p].binary_search(&v).is_err(),
                None => true,
            })
            .count();
        if tops != 1 {
            return Err(Violation::Disconnected {
                vertex: v,
                nodes: nodes.clone(),
            });
        }
    }
    Ok(())
}

/// Checks only the running-intersection property, for callers without a graph.
pub(crate) fn check_connectivity(td: &TreeDecomposition) -> Result<()> {
    let max_vertex = td.bags.iter().flatten().copied().max();
    let Some(max_vertex) = max_vertex else {
        return Ok(());
    };
    let mut tops = vec![0usize; max_vertex + 1];
    for (t, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            let top = match td.parent[t] {
                Some(p) => td.bags[p].binary_search(&v).is_err(),
                None => true,
            };
            if top {
                tops[v] += 1;
            }
        }
    }
    match tops.iter().position(|&c| c > 1) {
        Some(v) => Err(Error::InvalidDecomposition(format!(
            "bags containing vertex {v} are not connected"
        ))),
        None => Ok(()),
    }
}

pub(crate) fn sorted(mut bag: Vec<Vertex>) -> Vec<Vertex> {
    bag.sort_unstable();
    bag.dedup();
    bag
}

pub(crate) fn union(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    a.iter()
        .chain(b)
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_bag_is_valid() {
        let g = Graph::complete(4);
        let td = TreeDecomposition::single_bag(0..4);
        assert_eq!(td.validate(&g), Ok(()));
        assert_eq!(td.width(), 3);
        assert_eq!(td.height(), 1);
    }

    #[test]
    fn missing_edge_is_reported() {
        let g = Graph::path(3);
        let td = TreeDecomposition::from_edges(vec![vec![0, 1], vec![2]], &[(0, 1)]).unwrap();
        assert_eq!(td.validate(&g), Err(Violation::EdgeNotCovered(1, 2)));
    }

    #[test]
    fn path_decomposition_of_p4() {
        let g = Graph::path(4);
        let td = TreeDecomposition::from_edges(
            vec![vec![0, 1], vec![1, 2], vec![2, 3]],
            &[(0, 1), (1, 2)],
        )
        .unwrap();
        assert_eq!(td.validate(&g), Ok(()));
        assert_eq!(td.width(), 1);
        assert_eq!(td.height(), 3);
    }

    #[test]
    fn disconnected_occurrences_are_reported() {
        let g = Graph::path(3);
        let td =
            TreeDecomposition::from_edges(vec![vec![0, 1], vec![1, 2], vec![0]], &[(0, 1), (1, 2)])
                .unwrap();
        assert!(matches!(
            td.validate(&g),
            Err(Violation::Disconnected { vertex: 0, .. })
        ));
    }

    #[test]
    fn uncovered_vertex() {
        let g = Graph::new(2);
        let td = TreeDecomposition::single_bag([0]);
        assert_eq!(td.validate(&g), Err(Violation::VertexNotCovered(1)));
    }

    #[test]
    fn non_tree_edges_rejected() {
        assert!(TreeDecomposition::from_edges(vec![vec![0], vec![1]], &[]).is_err());
        assert!(
            TreeDecomposition::from_edges(vec![vec![0], vec![1], vec![2]], &[(0, 1), (1, 0)])
                .is_err()
        );
    }

    #[test]
    fn reroot_keeps_tree() {
        let mut td = TreeDecomposition::from_edges(
            vec![vec![0, 1], vec![1, 2], vec![2, 3]],
            &[(0, 1), (1, 2)],
        )
        .unwrap();
        td.reroot(2);
        assert_eq!(td.root(), Some(2));
        assert_eq!(td.parent(0), Some(1));
        assert_eq!(td.parent(1), Some(2));
        assert_eq!(td.validate(&Graph::path(4)), Ok(()));
    }
}
