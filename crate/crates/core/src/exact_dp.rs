//! Dynamic program over a nice tree decomposition.
//!
//! A signature assigns each bag vertex a color and the number of its
//! same-colored neighbors that have already been forgotten below the node.
//! A signature is in a node's table exactly when some coloring of the
//! vertices seen so far realizes it with every forgotten vertex within
//! budget. The engine is generic over how those counts are stored: exact
//! integers here, rounded powers in [`crate::approximation`].

use std::collections::HashMap;

use indexmap::IndexMap;
use rayon::prelude::*;

use crate::decomposition::{NiceDecomposition, NodeKind};
use crate::error::{Error, Result};
use crate::graph::{
    proper_coloring_by_degeneracy, verify, Coloring, DefectiveInstance, Graph, Vertex,
};

/// Per bag vertex (in sorted bag order), a `(color, value)` pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(pub Vec<(u32, u32)>);

impl Signature {
    pub fn colors(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().map(|&(c, _)| c)
    }
}

/// Where a signature came from, for reconstruction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackRef {
    Leaf,
    Child(usize),
    Pair(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpTable {
    bag: Vec<Vertex>,
    entries: IndexMap<Signature, BackRef>,
}

impl DpTable {
    pub fn new(bag: Vec<Vertex>) -> Self {
        DpTable {
            bag,
            entries: IndexMap::new(),
        }
    }

    pub fn bag(&self) -> &[Vertex] {
        &self.bag
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn signatures(&self) -> impl Iterator<Item = &Signature> {
        self.entries.keys()
    }

    pub fn contains(&self, sig: &Signature) -> bool {
        self.entries.contains_key(sig)
    }

    pub fn back_ref(&self, index: usize) -> BackRef {
        self.entries[index]
    }

    pub fn signature(&self, index: usize) -> &Signature {
        self.entries.get_index(index).expect("signature index").0
    }

    /// Inserts unless present; the first witness wins.
    pub fn insert(&mut self, sig: Signature, back: BackRef) {
        self.entries.entry(sig).or_insert(back);
    }

    fn position(&self, v: Vertex) -> Option<usize> {
        self.bag.binary_search(&v).ok()
    }
}

/// How per-vertex counts are stored and combined.
pub trait ValueDomain: Sync {
    /// Whether a vertex with stored value `value` and `extra` further
    /// same-colored neighbors stays within the budget.
    fn settles(&self, value: u32, extra: u32) -> bool;
    /// Stored value after one more same-colored neighbor, if representable.
    fn increment(&self, value: u32) -> Option<u32>;
    /// Stored value for the sum of two disjoint counts, if representable.
    fn sum(&self, a: u32, b: u32) -> Option<u32>;
}

/// Exact integer counts bounded by `Δ*`.
#[derive(Clone, Copy, Debug)]
pub struct ExactCounts {
    pub deficiency: u32,
}

impl ValueDomain for ExactCounts {
    fn settles(&self, value: u32, extra: u32) -> bool {
        value + extra <= self.deficiency
    }

    fn increment(&self, value: u32) -> Option<u32> {
        (value < self.deficiency).then_some(value + 1)
    }

    fn sum(&self, a: u32, b: u32) -> Option<u32> {
        (a + b <= self.deficiency).then_some(a + b)
    }
}

pub(crate) fn leaf<D: ValueDomain>(v: Vertex, num_colors: u32, _domain: &D) -> DpTable {
    let mut table = DpTable::new(vec![v]);
    for c in 1..=num_colors {
        table.insert(Signature(vec![(c, 0)]), BackRef::Leaf);
    }
    table
}

pub(crate) fn introduce(child: &DpTable, v: Vertex, num_colors: u32) -> Result<DpTable> {
    let pos = match child.bag.binary_search(&v) {
        Ok(_) => {
            return Err(Error::Precondition(format!(
                "vertex {v} is already in the child bag"
            )))
        }
        Err(pos) => pos,
    };
    let mut bag = child.bag.clone();
    bag.insert(pos, v);
    let mut table = DpTable::new(bag);
    for (i, sig) in child.entries.keys().enumerate() {
        for c in 1..=num_colors {
            let mut entries = sig.0.clone();
            entries.insert(pos, (c, 0));
            table.insert(Signature(entries), BackRef::Child(i));
        }
    }
    Ok(table)
}

pub(crate) fn forget<D: ValueDomain>(
    child: &DpTable,
    v: Vertex,
    graph: &Graph,
    domain: &D,
) -> Result<DpTable> {
    let pos = child
        .position(v)
        .ok_or_else(|| Error::Precondition(format!("vertex {v} is not in the child bag")))?;
    let neighbor_slots: Vec<usize> = child
        .bag
        .iter()
        .enumerate()
        .filter(|&(_, &u)| graph.has_edge(u, v))
        .map(|(i, _)| i)
        .collect();
    let mut bag = child.bag.clone();
    bag.remove(pos);
    let mut table = DpTable::new(bag);
    'sigs: for (i, sig) in child.entries.keys().enumerate() {
        let (color, value) = sig.0[pos];
        let same: Vec<usize> = neighbor_slots
            .iter()
            .copied()
            .filter(|&j| sig.0[j].0 == color)
            .collect();
        if !domain.settles(value, same.len() as u32) {
            continue;
        }
        let mut entries = sig.0.clone();
        for &j in &same {
            match domain.increment(entries[j].1) {
                Some(next) => entries[j].1 = next,
                None => continue 'sigs,
            }
        }
        entries.remove(pos);
        table.insert(Signature(entries), BackRef::Child(i));
    }
    Ok(table)
}

pub(crate) fn join<D: ValueDomain>(left: &DpTable, right: &DpTable, domain: &D) -> Result<DpTable> {
    if left.bag != right.bag {
        return Err(Error::Precondition(format!(
            "join of different bags {:?} and {:?}",
            left.bag, right.bag
        )));
    }
    let mut by_colors: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    for (j, sig) in right.entries.keys().enumerate() {
        by_colors.entry(sig.colors().collect()).or_default().push(j);
    }
    let mut table = DpTable::new(left.bag.clone());
    for (i, a) in left.entries.keys().enumerate() {
        let key: Vec<u32> = a.colors().collect();
        let Some(partners) = by_colors.get(&key) else {
            continue;
        };
        'pairs: for &j in partners {
            let b = right.signature(j);
            let mut entries = Vec::with_capacity(a.0.len());
            for (&(c, x), &(_, y)) in a.0.iter().zip(&b.0) {
                match domain.sum(x, y) {
                    Some(s) => entries.push((c, s)),
                    None => continue 'pairs,
                }
            }
            table.insert(Signature(entries), BackRef::Pair(i, j));
        }
    }
    Ok(table)
}

/// Leaf table: one signature `(c, 0)` per color.
pub fn table_leaf(bag: &[Vertex], num_colors: u32) -> Result<DpTable> {
    match bag {
        [v] => Ok(leaf(*v, num_colors, &ExactCounts { deficiency: 0 })),
        _ => Err(Error::Precondition(format!(
            "leaf bag must hold one vertex, got {}",
            bag.len()
        ))),
    }
}

pub fn table_introduce(child: &DpTable, v: Vertex, num_colors: u32) -> Result<DpTable> {
    introduce(child, v, num_colors)
}

pub fn table_forget(child: &DpTable, v: Vertex, graph: &Graph, deficiency: u32) -> Result<DpTable> {
    forget(child, v, graph, &ExactCounts { deficiency })
}

pub fn table_join(left: &DpTable, right: &DpTable, deficiency: u32) -> Result<DpTable> {
    join(left, right, &ExactCounts { deficiency })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DpOptions {
    /// Worker threads for computing independent subtrees; 0 or 1 runs inline.
    pub threads: usize,
}

/// Computes every node's table, children before parents.
pub fn run_tables<D: ValueDomain>(
    graph: &Graph,
    nice: &NiceDecomposition,
    num_colors: u32,
    domain: &D,
    options: &DpOptions,
) -> Result<Vec<DpTable>> {
    let compute = |t: usize, tables: &[Option<DpTable>]| -> Result<DpTable> {
        let node = nice.node(t);
        let child = |i: usize| tables[node.children[i]].as_ref().expect("child sealed");
        match node.kind {
            NodeKind::Leaf => Ok(leaf(node.bag[0], num_colors, domain)),
            NodeKind::Introduce(v) => introduce(child(0), v, num_colors),
            NodeKind::Forget(v) => forget(child(0), v, graph, domain),
            NodeKind::Join => join(child(0), child(1), domain),
        }
    };

    let mut tables: Vec<Option<DpTable>> = vec![None; nice.num_nodes()];
    if options.threads <= 1 {
        for t in 0..nice.num_nodes() {
            tables[t] = Some(compute(t, &tables)?);
        }
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.threads)
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
        // Nodes of equal height never depend on each other.
        let heights = nice.node_heights();
        let max_height = heights.iter().copied().max().unwrap_or(0);
        let mut levels = vec![Vec::new(); max_height + 1];
        for (t, &h) in heights.iter().enumerate() {
            levels[h].push(t);
        }
        for level in levels {
            let done: Vec<(usize, DpTable)> = pool.install(|| {
                level
                    .par_iter()
                    .map(|&t| compute(t, &tables).map(|table| (t, table)))
                    .collect::<Result<_>>()
            })?;
            for (t, table) in done {
                tables[t] = Some(table);
            }
        }
    }
    Ok(tables
        .into_iter()
        .map(|t| t.expect("all nodes computed"))
        .collect())
}

/// Rebuilds a coloring from the root table by following back-references.
pub fn reconstruct(
    graph: &Graph,
    nice: &NiceDecomposition,
    tables: &[DpTable],
) -> Option<Coloring> {
    let root = nice.root()?;
    if tables[root].is_empty() {
        return None;
    }
    let mut colors = vec![0u32; graph.num_vertices()];
    let mut stack = vec![(root, 0usize)];
    while let Some((t, index)) = stack.pop() {
        let table = &tables[t];
        for (&v, &(c, _)) in table.bag.iter().zip(&table.signature(index).0) {
            colors[v] = c;
        }
        let children = &nice.node(t).children;
        match table.back_ref(index) {
            BackRef::Leaf => {}
            BackRef::Child(i) => stack.push((children[0], i)),
            BackRef::Pair(i, j) => {
                stack.push((children[0], i));
                stack.push((children[1], j));
            }
        }
    }
    Some(Coloring::new(colors))
}

pub(crate) fn check_nice(graph: &Graph, nice: &NiceDecomposition) -> Result<()> {
    nice.check_form()?;
    nice.to_tree_decomposition().validate(graph)?;
    Ok(())
}

/// Decides `(χd, Δ*)`-colorability exactly and returns a certificate.
pub fn solve_exact(
    graph: &Graph,
    nice: &NiceDecomposition,
    num_colors: u32,
    deficiency: u32,
) -> Result<Option<Coloring>> {
    solve_exact_with(graph, nice, num_colors, deficiency, &DpOptions::default())
}

pub fn solve_exact_with(
    graph: &Graph,
    nice: &NiceDecomposition,
    num_colors: u32,
    deficiency: u32,
    options: &DpOptions,
) -> Result<Option<Coloring>> {
    let instance = DefectiveInstance::new(graph.clone(), num_colors, deficiency)?;
    if graph.num_vertices() == 0 {
        return Ok(Some(Coloring::new(Vec::new())));
    }
    check_nice(graph, nice)?;
    // Any graph of treewidth tw has a proper (tw + 1)-coloring.
    if num_colors as usize > nice.width() + 1 {
        let coloring = proper_coloring_by_degeneracy(graph);
        debug_assert!(coloring.max_color() <= num_colors);
        return Ok(Some(coloring));
    }
    let tables = run_tables(
        graph,
        nice,
        num_colors,
        &ExactCounts { deficiency },
        options,
    )?;
    let coloring = reconstruct(graph, nice, &tables);
    if let Some(c) = &coloring {
        debug_assert!(verify(&instance, c)?.valid);
    }
    Ok(coloring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{heuristic_decomposition, make_nice, Strategy};

    fn sig(pairs: &[(u32, u32)]) -> Signature {
        Signature(pairs.to_vec())
    }

    fn nice_of(g: &Graph) -> NiceDecomposition {
        make_nice(&heuristic_decomposition(g, Strategy::MinFill)).unwrap()
    }

    #[test]
    fn leaf_tables() {
        let t = table_leaf(&[4], 2).unwrap();
        let sigs: Vec<_> = t.signatures().cloned().collect();
        assert_eq!(sigs, vec![sig(&[(1, 0)]), sig(&[(2, 0)])]);
        assert_eq!(table_leaf(&[0], 1).unwrap().len(), 1);
        assert_eq!(table_leaf(&[0], 3).unwrap().len(), 3);
        assert!(table_leaf(&[0, 1], 3).is_err());
    }

    #[test]
    fn introduce_expands() {
        let leaf = table_leaf(&[0], 1).unwrap();
        assert_eq!(table_introduce(&leaf, 1, 2).unwrap().len(), 2);
        let empty = DpTable::new(vec![0]);
        assert!(table_introduce(&empty, 1, 2).unwrap().is_empty());
        assert!(table_introduce(&leaf, 0, 2).is_err());
    }

    #[test]
    fn forget_isolated_vertex_at_budget() {
        let g = Graph::new(2);
        let mut t = DpTable::new(vec![0, 1]);
        t.insert(sig(&[(1, 2), (1, 0)]), BackRef::Leaf);
        let out = table_forget(&t, 0, &g, 2).unwrap();
        assert!(out.contains(&sig(&[(1, 0)])));
    }

    #[test]
    fn forget_prunes_over_budget_neighbor_count() {
        let g = Graph::path(2);
        let mut t = DpTable::new(vec![0, 1]);
        t.insert(sig(&[(1, 1), (1, 0)]), BackRef::Leaf);
        assert!(table_forget(&t, 0, &g, 1).unwrap().is_empty());
    }

    #[test]
    fn forget_triangle_bag() {
        let g = Graph::complete(3);
        let mut t = DpTable::new(vec![0, 1, 2]);
        t.insert(sig(&[(1, 0), (1, 0), (1, 0)]), BackRef::Leaf);
        assert!(table_forget(&t, 0, &g, 1).unwrap().is_empty());
        // With budget 2 the survivors gain one each.
        let out = table_forget(&t, 0, &g, 2).unwrap();
        assert!(out.contains(&sig(&[(1, 1), (1, 1)])));
    }

    #[test]
    fn forget_checks_neighbor_headroom() {
        let g = Graph::path(2);
        let mut t = DpTable::new(vec![0, 1]);
        t.insert(sig(&[(1, 0), (1, 1)]), BackRef::Leaf);
        assert!(table_forget(&t, 0, &g, 1).unwrap().is_empty());
        assert_eq!(table_forget(&t, 0, &g, 2).unwrap().len(), 1);
    }

    #[test]
    fn join_rules() {
        let mut a = DpTable::new(vec![0]);
        a.insert(sig(&[(1, 0)]), BackRef::Leaf);
        a.insert(sig(&[(2, 2)]), BackRef::Leaf);
        let mut b = DpTable::new(vec![0]);
        b.insert(sig(&[(1, 0)]), BackRef::Leaf);
        b.insert(sig(&[(2, 2)]), BackRef::Leaf);
        let j = table_join(&a, &b, 3).unwrap();
        assert!(j.contains(&sig(&[(1, 0)])));
        assert!(!j.contains(&sig(&[(2, 4)])));
        assert_eq!(j.len(), 1);
        let other = DpTable::new(vec![1]);
        assert!(table_join(&a, &other, 3).is_err());
    }

    #[test]
    fn small_decisions() {
        let k4 = Graph::complete(4);
        let nice = nice_of(&k4);
        let c = solve_exact(&k4, &nice, 2, 1).unwrap().unwrap();
        let inst = DefectiveInstance::new(k4.clone(), 2, 1).unwrap();
        assert!(verify(&inst, &c).unwrap().valid);
        assert!(solve_exact(&k4, &nice, 3, 0).unwrap().is_none());

        let p = Graph::petersen();
        let nice = nice_of(&p);
        let c = solve_exact(&p, &nice, 3, 0).unwrap().unwrap();
        assert!(
            verify(&DefectiveInstance::new(p.clone(), 3, 0).unwrap(), &c)
                .unwrap()
                .valid
        );
        assert!(solve_exact(&p, &nice, 2, 0).unwrap().is_none());
    }

    #[test]
    fn threaded_run_agrees() {
        let p = Graph::petersen();
        let nice = nice_of(&p);
        let seq = solve_exact(&p, &nice, 2, 1).unwrap();
        let par = solve_exact_with(&p, &nice, 2, 1, &DpOptions { threads: 4 }).unwrap();
        assert_eq!(seq.is_some(), par.is_some());
    }
}
