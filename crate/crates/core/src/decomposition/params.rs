//! Exact feedback vertex set and vertex cover by bounded branching.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub const DEFAULT_PARAMETER_CAP: usize = 20;

#[derive(Clone)]
struct Work {
    adj: Vec<BTreeSet<Vertex>>,
    alive: Vec<bool>,
}

impl Work {
    fn new(graph: &Graph) -> Self {
        Work {
            adj: graph
                .vertices()
                .map(|v| graph.neighbors(v).iter().copied().collect())
                .collect(),
            alive: vec![true; graph.num_vertices()],
        }
    }

    fn remove(&mut self, v: Vertex) {
        self.alive[v] = false;
        for w in std::mem::take(&mut self.adj[v]) {
            self.adj[w].remove(&v);
        }
    }

    fn alive_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.alive.len()).filter(|&v| self.alive[v])
    }

    fn has_edges(&self) -> bool {
        self.adj.iter().any(|a| !a.is_empty())
    }
}

/// Minimum set whose deletion leaves a forest. Fails with `CapExceeded` when
/// the minimum is larger than `cap`.
pub fn exact_fvs(graph: &Graph, cap: usize) -> Result<BTreeSet<Vertex>> {
    let multi = Multigraph::new(graph);
    for k in 0..=cap {
        if let Some(set) = fvs_branch(multi.clone(), k) {
            return Ok(set.into_iter().collect());
        }
    }
    Err(Error::CapExceeded { cap })
}

/// Multigraph used by the feedback vertex set search; `adj[v][w]` is the
/// number of parallel edges, and `adj[v][v] > 0` marks a loop.
#[derive(Clone)]
struct Multigraph {
    adj: Vec<BTreeMap<Vertex, u32>>,
    alive: Vec<bool>,
}

impl Multigraph {
    fn new(graph: &Graph) -> Self {
        Multigraph {
            adj: graph
                .vertices()
                .map(|v| graph.neighbors(v).iter().map(|&w| (w, 1)).collect())
                .collect(),
            alive: vec![true; graph.num_vertices()],
        }
    }

    fn degree(&self, v: Vertex) -> u32 {
        self.adj[v].values().sum()
    }

    fn remove(&mut self, v: Vertex) {
        self.alive[v] = false;
        for w in std::mem::take(&mut self.adj[v]).into_keys() {
            self.adj[w].remove(&v);
        }
    }

    /// Adds an edge, keeping at most two parallel copies.
    fn link(&mut self, a: Vertex, b: Vertex) {
        let m = self.adj[a].entry(b).or_insert(0);
        *m = (*m + 1).min(2);
        if a != b {
            let m = self.adj[b].entry(a).or_insert(0);
            *m = (*m + 1).min(2);
        }
    }

    fn alive_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.alive.len()).filter(|&v| self.alive[v])
    }

    /// Applies the safe reductions: vertices of degree at most one go, loops
    /// force their vertex into the solution, and degree-two vertices are
    /// bypassed. Returns the forced vertices, or `None` if more than `k`.
    fn reduce(&mut self, k: usize) -> Option<Vec<Vertex>> {
        let mut forced = Vec::new();
        let mut queue: VecDeque<Vertex> = self.alive_vertices().collect();
        while let Some(v) = queue.pop_front() {
            if !self.alive[v] {
                continue;
            }
            let neighbors: Vec<Vertex> = self.adj[v].keys().copied().filter(|&w| w != v).collect();
            if self.adj[v].contains_key(&v) {
                if forced.len() == k {
                    return None;
                }
                forced.push(v);
                self.remove(v);
                queue.extend(neighbors);
                continue;
            }
            match self.degree(v) {
                0 | 1 => {
                    self.remove(v);
                    queue.extend(neighbors);
                }
                2 => {
                    let (a, b) = match neighbors[..] {
                        [a] => (a, a),
                        [a, b] => (a, b),
                        _ => unreachable!("degree two"),
                    };
                    self.remove(v);
                    self.link(a, b);
                    queue.extend([a, b]);
                }
                _ => {}
            }
        }
        Some(forced)
    }

    /// Vertex-disjoint cycles found greedily, a lower bound on the solution.
    fn packing_bound(&self, limit: usize) -> usize {
        let mut work = self.clone();
        let mut count = 0;
        while count <= limit {
            if work.reduce(0).is_none() {
                // A loop appeared: one more cycle, disjoint from the rest.
                count += 1;
                let v = work
                    .alive_vertices()
                    .find(|&v| work.adj[v].contains_key(&v))
                    .unwrap();
                work.remove(v);
                continue;
            }
            match work.shortest_cycle() {
                Some(cycle) => {
                    count += 1;
                    for v in cycle {
                        work.remove(v);
                    }
                }
                None => break,
            }
        }
        count
    }

    fn shortest_cycle(&self) -> Option<Vec<Vertex>> {
        if let Some((a, b)) = self.alive_vertices().find_map(|a| {
            self.adj[a]
                .iter()
                .find(|&(_, &m)| m > 1)
                .map(|(&b, _)| (a, b))
        }) {
            return Some(vec![a, b]);
        }
        let n = self.alive.len();
        let mut best: Option<Vec<Vertex>> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for s in self.alive_vertices() {
            let mut touched = vec![s];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            let mut found: Option<(Vertex, Vertex)> = None;
            'bfs: while let Some(u) = queue.pop_front() {
                if best.as_ref().is_some_and(|b| 2 * dist[u] + 1 >= b.len()) {
                    break;
                }
                for &w in self.adj[u].keys() {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        touched.push(w);
                        queue.push_back(w);
                    } else if parent[u] != w {
                        found = Some((u, w));
                        break 'bfs;
                    }
                }
            }
            if let Some((u, w)) = found {
                let mut left = vec![u];
                while *left.last().unwrap() != s {
                    left.push(parent[*left.last().unwrap()]);
                }
                let mut right = vec![w];
                while *right.last().unwrap() != s {
                    right.push(parent[*right.last().unwrap()]);
                }
                // Trim the shared tail so the walk is a simple cycle.
                while left.len() > 1
                    && right.len() > 1
                    && left[left.len() - 2] == right[right.len() - 2]
                {
                    left.pop();
                    right.pop();
                }
                right.pop();
                left.extend(right.into_iter().rev());
                if best.as_ref().is_none_or(|b| left.len() < b.len()) {
                    best = Some(left);
                }
            }
            for t in touched {
                dist[t] = usize::MAX;
                parent[t] = usize::MAX;
            }
            if best.as_ref().is_some_and(|b| b.len() == 3) {
                break;
            }
        }
        best
    }
}

fn fvs_branch(mut work: Multigraph, k: usize) -> Option<Vec<Vertex>> {
    let mut forced = work.reduce(k)?;
    let k = k - forced.len();
    if work.alive_vertices().next().is_none() {
        return Some(forced);
    }
    if k == 0 || work.packing_bound(k) > k {
        return None;
    }
    let mut cycle = work.shortest_cycle()?;
    cycle.sort_by_key(|&v| std::cmp::Reverse(work.degree(v)));
    for &v in &cycle {
        let mut next = work.clone();
        next.remove(v);
        if let Some(mut rest) = fvs_branch(next, k - 1) {
            rest.append(&mut forced);
            rest.push(v);
            return Some(rest);
        }
    }
    None
}

/// Minimum vertex cover. Fails with `CapExceeded` when larger than `cap`.
pub fn exact_vc(graph: &Graph, cap: usize) -> Result<BTreeSet<Vertex>> {
    let work = Work::new(graph);
    for k in 0..=cap {
        if let Some(set) = vc_branch(work.clone(), k) {
            return Ok(set.into_iter().collect());
        }
    }
    Err(Error::CapExceeded { cap })
}

fn vc_branch(mut work: Work, mut k: usize) -> Option<Vec<Vertex>> {
    let mut cover = Vec::new();
    // A degree-one vertex is never needed: its neighbor covers the edge at least as well.
    loop {
        let leaf = work.alive_vertices().find(|&v| work.adj[v].len() == 1);
        let Some(leaf) = leaf else { break };
        let w = *work.adj[leaf].iter().next().unwrap();
        if k == 0 {
            return None;
        }
        k -= 1;
        cover.push(w);
        work.remove(w);
    }
    if !work.has_edges() {
        return Some(cover);
    }
    if k == 0 {
        return None;
    }
    let v = work
        .alive_vertices()
        .max_by_key(|&v| (work.adj[v].len(), std::cmp::Reverse(v)))
        .unwrap();
    if work.adj[v].len() <= 2 {
        // Disjoint cycles: every other vertex of each.
        let mut rest = cycles_cover(&work);
        if rest.len() > k {
            return None;
        }
        cover.append(&mut rest);
        return Some(cover);
    }
    let mut with_v = work.clone();
    with_v.remove(v);
    if let Some(mut rest) = vc_branch(with_v, k - 1) {
        cover.push(v);
        cover.append(&mut rest);
        return Some(cover);
    }
    let neighbors: Vec<Vertex> = work.adj[v].iter().copied().collect();
    if neighbors.len() <= k {
        for &w in &neighbors {
            work.remove(w);
        }
        if let Some(mut rest) = vc_branch(work, k - neighbors.len()) {
            cover.extend(neighbors);
            cover.append(&mut rest);
            return Some(cover);
        }
    }
    None
}

fn cycles_cover(work: &Work) -> Vec<Vertex> {
    let mut seen = vec![false; work.alive.len()];
    let mut cover = Vec::new();
    for s in work.alive_vertices() {
        if seen[s] || work.adj[s].is_empty() {
            continue;
        }
        let mut cycle = vec![s];
        seen[s] = true;
        let mut prev = s;
        let mut cur = *work.adj[s].iter().next().unwrap();
        while cur != s {
            seen[cur] = true;
            cycle.push(cur);
            let next = *work.adj[cur].iter().find(|&&x| x != prev).unwrap();
            prev = cur;
            cur = next;
        }
        cover.extend(cycle.iter().step_by(2));
    }
    cover
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_cover(g: &Graph, s: &BTreeSet<Vertex>) -> bool {
        g.edges().all(|(u, v)| s.contains(&u) || s.contains(&v))
    }

    #[test]
    fn fvs_examples() {
        let forest = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4)]).unwrap();
        assert!(exact_fvs(&forest, 5).unwrap().is_empty());
        assert_eq!(exact_fvs(&Graph::cycle(6), 5).unwrap().len(), 1);
        let k4 = Graph::complete(4);
        let f = exact_fvs(&k4, 5).unwrap();
        assert_eq!(f.len(), 2);
        assert!(k4.without(&f).0.is_forest());
    }

    #[test]
    fn vc_examples() {
        assert!(exact_vc(&Graph::new(4), 5).unwrap().is_empty());
        assert_eq!(exact_vc(&Graph::star(5), 5).unwrap().len(), 1);
        let c5 = Graph::cycle(5);
        let c = exact_vc(&c5, 5).unwrap();
        assert_eq!(c.len(), 3);
        assert!(is_cover(&c5, &c));
        let p = Graph::petersen();
        let c = exact_vc(&p, 10).unwrap();
        assert_eq!(c.len(), 6);
        assert!(is_cover(&p, &c));
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(
            exact_vc(&Graph::complete(6), 3),
            Err(Error::CapExceeded { cap: 3 })
        ));
        assert!(matches!(
            exact_fvs(&Graph::complete(6), 2),
            Err(Error::CapExceeded { cap: 2 })
        ));
    }
}
