//! Logarithmic-height rebalancing of tree decompositions.
//!
//! The input tree is first compressed so that no bag is contained in a
//! neighboring bag, which leaves at most `n` nodes. It is then split
//! recursively: every piece of the old tree is attached to at most two
//! already-placed nodes, and the new node for a piece gets the bag of a
//! chosen splitting node plus the piece's boundary vertices, at most
//! `(w + 1) + 2(w + 1)` vertices. Pieces with one attachment split at a
//! centroid. Pieces with two attachments split at the median of the two
//! attachment nodes and the centroid, which leaves the centroid's piece with
//! a single attachment, so sizes halve at least every second level.

use std::collections::BTreeSet;

use super::{check_connectivity, union, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Height bound constant: `balance` output has height at most
/// `BALANCE_HEIGHT_CONSTANT * (1 + log2 n)`.
///
/// Two levels per halving of a compressed tree with at most `n` nodes gives
/// height `<= 2 * ceil(log2 n) + 2 <= 3 * (1 + log2 n)` for `n >= 1`.
pub const BALANCE_HEIGHT_CONSTANT: f64 = 3.0;

pub fn balance(graph: &Graph, td: &TreeDecomposition) -> Result<TreeDecomposition> {
    td.validate(graph)?;
    check_connectivity(td)?;
    if td.num_nodes() == 0 {
        return Ok(TreeDecomposition::empty());
    }
    let (bags, adj) = compress(td);
    let m = bags.len();

    let mut new_bags: Vec<Vec<Vertex>> = Vec::with_capacity(m);
    let mut new_parent: Vec<Option<usize>> = Vec::with_capacity(m);
    // Old node -> new node id once chosen as a split point.
    let mut placed = vec![usize::MAX; m];
    let mut in_piece = vec![false; m];

    struct Piece {
        nodes: Vec<usize>,
        // (inside attachment node, outside already-placed old node)
        attachments: Vec<(usize, usize)>,
        parent: Option<usize>,
    }

    let mut stack = vec![Piece {
        nodes: (0..m).collect(),
        attachments: Vec::new(),
        parent: None,
    }];

    while let Some(piece) = stack.pop() {
        debug_assert!(piece.attachments.len() <= 2);
        for &t in &piece.nodes {
            in_piece[t] = true;
        }
        let centroid = find_centroid(&piece.nodes, &adj, &in_piece);
        let split = match piece.attachments[..] {
            [(a1, _), (a2, _)] => median(a1, a2, centroid, &adj, &in_piece),
            _ => centroid,
        };

        let mut bag = bags[split].clone();
        for &(inside, outside) in &piece.attachments {
            let shared: Vec<Vertex> = bags[inside]
                .iter()
                .copied()
                .filter(|v| bags[outside].binary_search(v).is_ok())
                .collect();
            bag = union(&bag, &shared);
        }
        let id = new_bags.len();
        new_bags.push(bag);
        new_parent.push(piece.parent);
        placed[split] = id;

        // Components of the piece minus the split node.
        in_piece[split] = false;
        let mut sub_pieces = Vec::new();
        for &start in &adj[split] {
            if !in_piece[start] {
                continue;
            }
            let mut nodes = vec![start];
            in_piece[start] = false;
            let mut i = 0;
            while i < nodes.len() {
                let t = nodes[i];
                for &s in &adj[t] {
                    if in_piece[s] {
                        in_piece[s] = false;
                        nodes.push(s);
                    }
                }
                i += 1;
            }
            sub_pieces.push((start, nodes));
        }
        for (start, nodes) in sub_pieces {
            let members: BTreeSet<usize> = nodes.iter().copied().collect();
            let mut attachments = vec![(start, split)];
            attachments.extend(
                piece
                    .attachments
                    .iter()
                    .copied()
                    .filter(|(inside, _)| members.contains(inside)),
            );
            stack.push(Piece {
                nodes,
                attachments,
                parent: Some(id),
            });
        }
    }

    let out = TreeDecomposition::from_parents(new_bags, new_parent)?;
    out.validate(graph).map_err(|v| {
        Error::InvalidDecomposition(format!("balancing produced an invalid decomposition: {v}"))
    })?;
    Ok(out)
}

/// Contracts tree edges whose one bag is a subset of the other.
fn compress(td: &TreeDecomposition) -> (Vec<Vec<Vertex>>, Vec<Vec<usize>>) {
    let n = td.num_nodes();
    let mut bags: Vec<Vec<Vertex>> = td.bags().to_vec();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (a, b) in td.tree_edges() {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let mut alive = vec![true; n];
    let mut work: Vec<usize> = (0..n).collect();
    while let Some(a) = work.pop() {
        if !alive[a] {
            continue;
        }
        let target = adj[a]
            .iter()
            .copied()
            .find(|&b| bags[a].iter().all(|v| bags[b].binary_search(v).is_ok()));
        if let Some(b) = target {
            // Merge a into b.
            alive[a] = false;
            let neighbors: Vec<usize> = std::mem::take(&mut adj[a]).into_iter().collect();
            for c in neighbors {
                adj[c].remove(&a);
                if c != b {
                    adj[c].insert(b);
                    adj[b].insert(c);
                }
            }
            bags[a].clear();
            work.push(b);
            work.extend(adj[b].iter().copied());
        }
    }
    let mut index = vec![usize::MAX; n];
    let mut kept_bags = Vec::new();
    for t in 0..n {
        if alive[t] {
            index[t] = kept_bags.len();
            kept_bags.push(std::mem::take(&mut bags[t]));
        }
    }
    let mut kept_adj = vec![Vec::new(); kept_bags.len()];
    for t in 0..n {
        if alive[t] {
            kept_adj[index[t]] = adj[t].iter().map(|&s| index[s]).collect();
        }
    }
    (kept_bags, kept_adj)
}

/// Node whose removal leaves components of at most half the piece.
fn find_centroid(nodes: &[usize], adj: &[Vec<usize>], in_piece: &[bool]) -> usize {
    let total = nodes.len();
    let root = nodes[0];
    // BFS order and parents within the piece.
    let mut order = vec![root];
    let mut parent = std::collections::HashMap::from([(root, usize::MAX)]);
    let mut i = 0;
    while i < order.len() {
        let t = order[i];
        for &s in &adj[t] {
            if in_piece[s] && !parent.contains_key(&s) {
                parent.insert(s, t);
                order.push(s);
            }
        }
        i += 1;
    }
    let mut size: std::collections::HashMap<usize, usize> = order.iter().map(|&t| (t, 1)).collect();
    for &t in order.iter().rev() {
        let p = parent[&t];
        if p != usize::MAX {
            let s = size[&t];
            *size.get_mut(&p).unwrap() += s;
        }
    }
    for &t in &order {
        let mut largest = total - size[&t];
        for &s in &adj[t] {
            if in_piece[s] && parent.get(&s) == Some(&t) {
                largest = largest.max(size[&s]);
            }
        }
        if 2 * largest <= total {
            return t;
        }
    }
    root
}

/// The node lying on all three pairwise paths between `a`, `b`, `c`.
fn median(a: usize, b: usize, c: usize, adj: &[Vec<usize>], in_piece: &[bool]) -> usize {
    let mut parent = std::collections::HashMap::from([(a, usize::MAX)]);
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(t) = queue.pop_front() {
        for &s in &adj[t] {
            if in_piece[s] && !parent.contains_key(&s) {
                parent.insert(s, t);
                queue.push_back(s);
            }
        }
    }
    let mut on_path = BTreeSet::new();
    let mut t = b;
    loop {
        on_path.insert(t);
        if t == a {
            break;
        }
        t = parent[&t];
    }
    let mut t = c;
    while !on_path.contains(&t) {
        t = parent[&t];
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_decomposition(n: usize) -> TreeDecomposition {
        let bags: Vec<Vec<Vertex>> = (1..n).map(|i| vec![i - 1, i]).collect();
        let edges: Vec<(usize, usize)> = (1..bags.len()).map(|i| (i - 1, i)).collect();
        TreeDecomposition::from_edges(bags, &edges).unwrap()
    }

    fn height_bound(n: usize) -> f64 {
        BALANCE_HEIGHT_CONSTANT * (1.0 + (n as f64).log2())
    }

    #[test]
    fn long_path_gets_logarithmic_height() {
        for n in [2, 3, 10, 100, 1000] {
            let g = Graph::path(n);
            let td = path_decomposition(n);
            let b = balance(&g, &td).unwrap();
            assert!(b.width() <= 5, "width {}", b.width());
            assert!(
                b.height() as f64 <= height_bound(n),
                "n={n} height {}",
                b.height()
            );
        }
    }

    #[test]
    fn single_bag_is_untouched() {
        let g = Graph::complete(4);
        let td = TreeDecomposition::single_bag(0..4);
        let b = balance(&g, &td).unwrap();
        assert_eq!(b.num_nodes(), 1);
        assert_eq!(b.bag(0), &[0, 1, 2, 3]);
        assert_eq!(b.height(), 1);
    }

    #[test]
    fn median_of_path() {
        let adj = vec![vec![1], vec![0, 2], vec![1, 3], vec![2]];
        let all = vec![true; 4];
        assert_eq!(median(0, 3, 1, &adj, &all), 1);
        assert_eq!(median(0, 2, 3, &adj, &all), 2);
    }

    #[test]
    fn invalid_input_is_rejected() {
        let g = Graph::path(3);
        let td = TreeDecomposition::single_bag([0, 1]);
        assert!(balance(&g, &td).is_err());
    }
}
