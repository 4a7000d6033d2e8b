use std::collections::BTreeSet;
use std::str::FromStr;

use super::TreeDecomposition;
use crate::graph::{Graph, Vertex};

/// Vertex-elimination heuristic used to build a decomposition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    MinDegree,
    MinFill,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min-degree" => Ok(Strategy::MinDegree),
            "min-fill" => Ok(Strategy::MinFill),
            other => Err(format!("unknown strategy `{other}`")),
        }
    }
}

/// Decomposition from an elimination order. Each vertex contributes the bag
/// of itself and its neighbors at elimination time; that bag hangs below the
/// bag of the first of those neighbors to be eliminated later.
pub fn heuristic_decomposition(graph: &Graph, strategy: Strategy) -> TreeDecomposition {
    let n = graph.num_vertices();
    if n == 0 {
        return TreeDecomposition::empty();
    }
    let mut adj: Vec<BTreeSet<Vertex>> = graph
        .vertices()
        .map(|v| graph.neighbors(v).iter().copied().collect())
        .collect();
    let key = |adj: &[BTreeSet<Vertex>], v: Vertex| match strategy {
        Strategy::MinDegree => (0, adj[v].len(), v),
        Strategy::MinFill => (fill_in(adj, v), adj[v].len(), v),
    };
    let mut keys: Vec<(usize, usize, Vertex)> = graph.vertices().map(|v| key(&adj, v)).collect();
    let mut queue: BTreeSet<(usize, usize, Vertex)> = keys.iter().copied().collect();
    let mut position = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut bags = Vec::with_capacity(n);

    while let Some((_, _, v)) = queue.pop_first() {
        let neighbors: Vec<Vertex> = adj[v].iter().copied().collect();
        for (i, &a) in neighbors.iter().enumerate() {
            for &b in &neighbors[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
            adj[a].remove(&v);
        }
        // Degrees change only at the neighbors; fill-in up to two steps away.
        let mut stale: BTreeSet<Vertex> = neighbors.iter().copied().collect();
        if strategy == Strategy::MinFill {
            for &a in &neighbors {
                stale.extend(adj[a].iter().copied());
            }
        }
        for u in stale {
            queue.remove(&keys[u]);
            keys[u] = key(&adj, u);
            queue.insert(keys[u]);
        }
        let mut bag = neighbors;
        bag.push(v);
        position[v] = order.len();
        order.push(v);
        bags.push(bag);
    }

    // Bag i belongs to order[i]; its parent is the bag of the earliest-eliminated
    // later neighbor. Component roots hang below the last bag.
    let last = n - 1;
    let parent: Vec<Option<usize>> = bags
        .iter()
        .enumerate()
        .map(|(i, bag)| {
            if i == last {
                return None;
            }
            let v = order[i];
            let next = bag.iter().filter(|&&w| w != v).map(|&w| position[w]).min();
            Some(next.unwrap_or(last))
        })
        .collect();
    TreeDecomposition::from_parents(bags, parent).expect("elimination tree is a tree")
}

fn fill_in(adj: &[BTreeSet<Vertex>], v: Vertex) -> usize {
    let neighbors: Vec<Vertex> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in neighbors.iter().enumerate() {
        for &b in &neighbors[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_gets_width_one() {
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        for s in [Strategy::MinDegree, Strategy::MinFill] {
            let td = heuristic_decomposition(&g, s);
            assert_eq!(td.validate(&g), Ok(()));
            assert_eq!(td.width(), 1);
        }
    }

    #[test]
    fn cycles_get_width_two() {
        for n in 3..12 {
            let g = Graph::cycle(n);
            let td = heuristic_decomposition(&g, Strategy::MinDegree);
            assert_eq!(td.validate(&g), Ok(()));
            assert_eq!(td.width(), 2, "C{n}");
        }
    }

    #[test]
    fn clique_width() {
        let g = Graph::complete(5);
        let td = heuristic_decomposition(&g, Strategy::MinFill);
        assert_eq!(td.validate(&g), Ok(()));
        assert_eq!(td.width(), 4);
    }

    #[test]
    fn disconnected_and_empty() {
        let g = Graph::from_edges(5, [(0, 1), (3, 4)]).unwrap();
        let td = heuristic_decomposition(&g, Strategy::MinDegree);
        assert_eq!(td.validate(&g), Ok(()));
        assert_eq!(
            heuristic_decomposition(&Graph::new(0), Strategy::MinDegree).num_nodes(),
            0
        );
    }
}
