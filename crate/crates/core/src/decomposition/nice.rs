use super::{check_connectivity, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::Vertex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(Vertex),
    Forget(Vertex),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub bag: Vec<Vertex>,
    pub kind: NodeKind,
    pub children: Vec<usize>,
}

/// Nice tree decomposition. Nodes are stored so that every child precedes its
/// parent; the root is the last node.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NiceDecomposition {
    nodes: Vec<NiceNode>,
}

impl NiceDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn node(&self, t: usize) -> &NiceNode {
        &self.nodes[t]
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> Option<usize> {
        self.nodes.len().checked_sub(1)
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| n.bag.len())
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    pub fn height(&self) -> usize {
        let mut height = vec![0usize; self.nodes.len()];
        for (t, node) in self.nodes.iter().enumerate() {
            height[t] = 1 + node.children.iter().map(|&c| height[c]).max().unwrap_or(0);
        }
        height.last().copied().unwrap_or(0)
    }

    /// Height of each node above its deepest leaf (leaves have height 0).
    pub fn node_heights(&self) -> Vec<usize> {
        let mut height = vec![0usize; self.nodes.len()];
        for (t, node) in self.nodes.iter().enumerate() {
            height[t] = node
                .children
                .iter()
                .map(|&c| height[c] + 1)
                .max()
                .unwrap_or(0);
        }
        height
    }

    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.nodes.len()];
        for (t, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                parent[c] = Some(t);
            }
        }
        parent
    }

    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        TreeDecomposition::from_parents(
            self.nodes.iter().map(|n| n.bag.clone()).collect(),
            self.parents(),
        )
        .expect("nice decomposition is a tree")
    }

    /// Checks the structural rules of the nice form (not the decomposition
    /// axioms, which need the graph).
    pub fn check_form(&self) -> Result<()> {
        let bad =
            |t: usize, msg: &str| Err(Error::InvalidDecomposition(format!("node {t}: {msg}")));
        for (t, node) in self.nodes.iter().enumerate() {
            if node.children.iter().any(|&c| c >= t) {
                return bad(t, "child does not precede parent");
            }
            match node.kind {
                NodeKind::Leaf => {
                    if !node.children.is_empty() || node.bag.len() != 1 {
                        return bad(t, "leaf must have no children and one vertex");
                    }
                }
                NodeKind::Introduce(v) => {
                    let [c] = node.children[..] else {
                        return bad(t, "introduce needs one child");
                    };
                    let child = &self.nodes[c].bag;
                    if child.contains(&v) || !node.bag.contains(&v) {
                        return bad(t, "introduced vertex mismatch");
                    }
                    if node.bag.len() != child.len() + 1
                        || !child.iter().all(|u| node.bag.contains(u))
                    {
                        return bad(t, "introduce must add exactly one vertex");
                    }
                }
                NodeKind::Forget(v) => {
                    let [c] = node.children[..] else {
                        return bad(t, "forget needs one child");
                    };
                    let child = &self.nodes[c].bag;
                    if !child.contains(&v) || node.bag.contains(&v) {
                        return bad(t, "forgotten vertex mismatch");
                    }
                    if child.len() != node.bag.len() + 1
                        || !node.bag.iter().all(|u| child.contains(u))
                    {
                        return bad(t, "forget must drop exactly one vertex");
                    }
                }
                NodeKind::Join => {
                    let [a, b] = node.children[..] else {
                        return bad(t, "join needs two children");
                    };
                    if self.nodes[a].bag != node.bag || self.nodes[b].bag != node.bag {
                        return bad(t, "join children must share the bag");
                    }
                }
            }
        }
        if let Some(root) = self.nodes.last() {
            if root.bag.len() != 1 {
                return bad(self.nodes.len() - 1, "root bag must hold one vertex");
            }
        }
        Ok(())
    }

    fn push(&mut self, bag: Vec<Vertex>, kind: NodeKind, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode {
            bag,
            kind,
            children,
        });
        self.nodes.len() - 1
    }

    /// Walks from node `from` to a node whose bag equals `target`, forgetting
    /// first so the bag never grows past `max(|from|, |target|)`.
    fn transition(&mut self, mut from: usize, target: &[Vertex]) -> usize {
        let drop: Vec<Vertex> = self.nodes[from]
            .bag
            .iter()
            .copied()
            .filter(|v| target.binary_search(v).is_err())
            .collect();
        for v in drop {
            let bag: Vec<Vertex> = self.nodes[from]
                .bag
                .iter()
                .copied()
                .filter(|&u| u != v)
                .collect();
            from = self.push(bag, NodeKind::Forget(v), vec![from]);
        }
        let add: Vec<Vertex> = target
            .iter()
            .copied()
            .filter(|v| self.nodes[from].bag.binary_search(v).is_err())
            .collect();
        for v in add {
            let mut bag = self.nodes[from].bag.clone();
            let pos = bag.binary_search(&v).unwrap_err();
            bag.insert(pos, v);
            from = self.push(bag, NodeKind::Introduce(v), vec![from]);
        }
        from
    }

    fn leaf_chain(&mut self, bag: &[Vertex]) -> usize {
        let mut t = self.push(vec![bag[0]], NodeKind::Leaf, Vec::new());
        for &v in &bag[1..] {
            let mut next = self.nodes[t].bag.clone();
            next.push(v);
            next.sort_unstable();
            t = self.push(next, NodeKind::Introduce(v), vec![t]);
        }
        t
    }

    /// Joins equal-bag subtrees pairwise, keeping the join tree balanced.
    fn join_all(&mut self, mut tops: Vec<usize>) -> usize {
        while tops.len() > 1 {
            let mut next = Vec::with_capacity(tops.len().div_ceil(2));
            for pair in tops.chunks(2) {
                match *pair {
                    [a, b] => {
                        let bag = self.nodes[a].bag.clone();
                        next.push(self.push(bag, NodeKind::Join, vec![a, b]));
                    }
                    [a] => next.push(a),
                    _ => unreachable!(),
                }
            }
            tops = next;
        }
        tops[0]
    }
}

/// Converts a decomposition to nice form with the same width. The root is
/// normalized to a single-vertex bag by trailing forgets.
pub fn make_nice(td: &TreeDecomposition) -> Result<NiceDecomposition> {
    check_connectivity(td)?;
    let mut nice = NiceDecomposition::default();
    let Some(_) = td.root() else {
        return Ok(nice);
    };
    // Root at a non-empty bag so the final chain can end on one vertex.
    let mut td = td.clone();
    match (0..td.num_nodes()).find(|&t| !td.bag(t).is_empty()) {
        Some(t) if td.bag(td.root().unwrap()).is_empty() => td.reroot(t),
        Some(_) => {}
        None => return Ok(nice),
    }
    let children = td.children();
    let mut top: Vec<Option<usize>> = vec![None; td.num_nodes()];
    for t in td.post_order() {
        let bag = td.bag(t);
        let tops: Vec<usize> = children[t]
            .iter()
            .filter_map(|&c| top[c])
            .map(|c| nice.transition(c, bag))
            .collect();
        top[t] = match tops.len() {
            0 if bag.is_empty() => None,
            0 => Some(nice.leaf_chain(bag)),
            _ => Some(nice.join_all(tops)),
        };
    }
    let root_top = top[td.root().unwrap()].expect("root bag is non-empty");
    let keep = nice.nodes[root_top].bag[0];
    nice.transition(root_top, &[keep]);
    Ok(nice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{heuristic_decomposition, Strategy};
    use crate::graph::Graph;

    #[test]
    fn single_bag_of_triangle() {
        let td = TreeDecomposition::single_bag([0, 1, 2]);
        let nice = make_nice(&td).unwrap();
        nice.check_form().unwrap();
        let kinds: Vec<NodeKind> = nice.nodes().iter().map(|n| n.kind).collect();
        assert_eq!(
            kinds,
            vec![
                NodeKind::Leaf,
                NodeKind::Introduce(1),
                NodeKind::Introduce(2),
                NodeKind::Forget(1),
                NodeKind::Forget(2),
            ]
        );
        assert_eq!(nice.width(), 2);
        assert_eq!(
            nice.to_tree_decomposition().validate(&Graph::complete(3)),
            Ok(())
        );
    }

    #[test]
    fn nice_input_stays_equivalent() {
        let g = Graph::cycle(6);
        let td = heuristic_decomposition(&g, Strategy::MinDegree);
        let once = make_nice(&td).unwrap();
        let twice = make_nice(&once.to_tree_decomposition()).unwrap();
        twice.check_form().unwrap();
        assert_eq!(once.width(), twice.width());
        assert_eq!(twice.to_tree_decomposition().validate(&g), Ok(()));
    }

    #[test]
    fn star_of_bags_joins() {
        let g = Graph::star(5);
        let td = heuristic_decomposition(&g, Strategy::MinDegree);
        let nice = make_nice(&td).unwrap();
        nice.check_form().unwrap();
        assert_eq!(nice.width(), 1);
        assert_eq!(nice.to_tree_decomposition().validate(&g), Ok(()));
    }

    #[test]
    fn empty_bags_are_skipped() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let td = TreeDecomposition::from_edges(
            vec![vec![], vec![0, 1], vec![2, 3], vec![]],
            &[(0, 1), (0, 2), (2, 3)],
        )
        .unwrap();
        let nice = make_nice(&td).unwrap();
        nice.check_form().unwrap();
        assert_eq!(nice.to_tree_decomposition().validate(&g), Ok(()));
    }

    #[test]
    fn broken_input_is_rejected() {
        let td = TreeDecomposition::from_edges(vec![vec![0], vec![1], vec![0]], &[(0, 1), (1, 2)])
            .unwrap();
        assert!(make_nice(&td).is_err());
    }
}
