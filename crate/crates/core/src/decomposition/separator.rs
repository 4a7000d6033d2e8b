use std::collections::BTreeSet;

use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Decomposition of width at most `|s| + 1` for a graph whose remainder after
/// deleting `s` is a forest: a width-one decomposition of the forest with `s`
/// added to every bag.
pub fn from_separator(graph: &Graph, s: &BTreeSet<Vertex>) -> Result<TreeDecomposition> {
    if let Some(&v) = s.iter().find(|&&v| v >= graph.num_vertices()) {
        return Err(Error::Precondition(format!(
            "separator vertex {v} is not in the graph"
        )));
    }
    let (rest, to_old) = graph.without(s);
    if !rest.is_forest() {
        return Err(Error::Precondition(
            "graph minus the separator is neither a forest nor edgeless".into(),
        ));
    }
    let sep: Vec<Vertex> = s.iter().copied().collect();
    if rest.num_vertices() == 0 {
        return Ok(if sep.is_empty() {
            TreeDecomposition::empty()
        } else {
            TreeDecomposition::single_bag(sep)
        });
    }

    // One bag {v, parent(v)} per forest vertex; component roots are chained.
    let n = rest.num_vertices();
    let mut parent_vertex = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut roots = Vec::new();
    for start in rest.vertices() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        roots.push(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in rest.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent_vertex[w] = u;
                    stack.push(w);
                }
            }
        }
    }
    let bags: Vec<Vec<Vertex>> = rest
        .vertices()
        .map(|v| {
            let mut bag = sep.clone();
            bag.push(to_old[v]);
            if parent_vertex[v] != usize::MAX {
                bag.push(to_old[parent_vertex[v]]);
            }
            bag
        })
        .collect();
    let mut edges: Vec<(usize, usize)> = rest
        .vertices()
        .filter(|&v| parent_vertex[v] != usize::MAX)
        .map(|v| (v, parent_vertex[v]))
        .collect();
    edges.extend(roots.windows(2).map(|w| (w[0], w[1])));
    TreeDecomposition::from_edges(bags, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[Vertex]) -> BTreeSet<Vertex> {
        vs.iter().copied().collect()
    }

    #[test]
    fn k4_minus_two() {
        let g = Graph::complete(4);
        let td = from_separator(&g, &set(&[0, 1])).unwrap();
        assert_eq!(td.validate(&g), Ok(()));
        assert!(td.width() <= 3);
    }

    #[test]
    fn cycle_minus_one() {
        let g = Graph::cycle(7);
        let td = from_separator(&g, &set(&[3])).unwrap();
        assert_eq!(td.validate(&g), Ok(()));
        assert!(td.width() <= 2);
    }

    #[test]
    fn star_minus_center() {
        let g = Graph::star(6);
        let td = from_separator(&g, &set(&[0])).unwrap();
        assert_eq!(td.validate(&g), Ok(()));
        assert!(td.width() <= 2);
    }

    #[test]
    fn cyclic_remainder_is_rejected() {
        let g = Graph::cycle(5);
        assert!(matches!(
            from_separator(&g, &set(&[])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn whole_vertex_set() {
        let g = Graph::complete(3);
        let td = from_separator(&g, &set(&[0, 1, 2])).unwrap();
        assert_eq!(td.validate(&g), Ok(()));
    }
}
