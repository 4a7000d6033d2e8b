//! Exhaustive search for small instances, used as ground truth.

use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph, Vertex};

/// Default cap on `χd^n`: admits three colors up to n = 12 and two colors up
/// to n = 19.
pub const DEFAULT_BUDGET: u128 = 531_441;

pub const BUDGET_ENV: &str = "DEFCO_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    budget: u128,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Oracle {
    pub fn with_budget(budget: u128) -> Self {
        Oracle { budget }
    }

    pub fn unbounded() -> Self {
        Oracle { budget: u128::MAX }
    }

    /// Default budget, overridden by `DEFCO_BUDGET` when set to an integer.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map_or_else(Oracle::default, Oracle::with_budget)
    }

    pub fn budget(&self) -> u128 {
        self.budget
    }

    fn check_budget(&self, n: usize, num_colors: u32) -> Result<()> {
        let effective = (num_colors as u128).min(n as u128).max(1);
        let required = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(effective));
        match required {
            Some(r) if r <= self.budget => Ok(()),
            r => Err(Error::BudgetExceeded {
                required: r.unwrap_or(u128::MAX),
                budget: self.budget,
            }),
        }
    }

    /// Any `(χd, Δ*)`-coloring, or `None` when none exists.
    pub fn decide(
        &self,
        graph: &Graph,
        num_colors: u32,
        deficiency: u32,
    ) -> Result<Option<Coloring>> {
        if num_colors == 0 {
            return Err(Error::Precondition("at least one color is required".into()));
        }
        self.check_budget(graph.num_vertices(), num_colors)?;
        Ok(Search::new(graph, num_colors, deficiency).run())
    }

    /// Smallest `Δ*` admitting a `χd`-coloring.
    pub fn min_deficiency(&self, graph: &Graph, num_colors: u32) -> Result<u32> {
        self.check_budget(graph.num_vertices(), num_colors)?;
        let (mut lo, mut hi) = (0u32, graph.max_degree() as u32);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.decide(graph, num_colors, mid)?.is_some() {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(lo)
    }

    /// Smallest `χd` admitting a `(χd, Δ*)`-coloring.
    pub fn min_colors(&self, graph: &Graph, deficiency: u32) -> Result<u32> {
        let n = graph.num_vertices() as u32;
        for c in 1..=n.max(1) {
            if self.decide(graph, c, deficiency)?.is_some() {
                return Ok(c);
            }
        }
        unreachable!("n colors always suffice")
    }
}

pub fn brute_force_decide(
    graph: &Graph,
    num_colors: u32,
    deficiency: u32,
) -> Result<Option<Coloring>> {
    Oracle::default().decide(graph, num_colors, deficiency)
}

pub fn min_deficiency(graph: &Graph, num_colors: u32) -> Result<u32> {
    Oracle::default().min_deficiency(graph, num_colors)
}

pub fn min_colors(graph: &Graph, deficiency: u32) -> Result<u32> {
    Oracle::default().min_colors(graph, deficiency)
}

struct Search<'a> {
    graph: &'a Graph,
    order: Vec<Vertex>,
    num_colors: u32,
    deficiency: u32,
    color: Vec<u32>,
    count: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(graph: &'a Graph, num_colors: u32, deficiency: u32) -> Self {
        let mut order: Vec<Vertex> = graph.vertices().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
        let n = graph.num_vertices();
        Search {
            graph,
            order,
            num_colors,
            deficiency,
            color: vec![0; n],
            count: vec![0; n],
        }
    }

    fn run(mut self) -> Option<Coloring> {
        if self.assign(0, 0) {
            Some(Coloring::new(self.color))
        } else {
            None
        }
    }

    // Colors are interchangeable, so a vertex never opens more than one new
    // color; in particular the first vertex always gets color 1.
    fn assign(&mut self, i: usize, used: u32) -> bool {
        let Some(&v) = self.order.get(i) else {
            return true;
        };
        let limit = (used + 1).min(self.num_colors);
        for c in 1..=limit {
            if self.place(v, c) && self.assign(i + 1, used.max(c)) {
                return true;
            }
            self.unplace(v, c);
        }
        false
    }

    /// Colors `v` and updates counts; false when some count overflows.
    fn place(&mut self, v: Vertex, c: u32) -> bool {
        self.color[v] = c;
        let mut ok = true;
        for &w in self.graph.neighbors(v) {
            if self.color[w] == c {
                self.count[v] += 1;
                self.count[w] += 1;
                ok &= self.count[w] <= self.deficiency;
            }
        }
        ok && self.count[v] <= self.deficiency
    }

    fn unplace(&mut self, v: Vertex, c: u32) {
        for &w in self.graph.neighbors(v) {
            if self.color[w] == c {
                self.count[w] -= 1;
            }
        }
        self.count[v] = 0;
        self.color[v] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{verify, DefectiveInstance};

    fn check(g: &Graph, c: u32, d: u32) -> bool {
        match brute_force_decide(g, c, d).unwrap() {
            Some(col) => {
                let inst = DefectiveInstance::new(g.clone(), c, d).unwrap();
                assert!(verify(&inst, &col).unwrap().valid);
                true
            }
            None => false,
        }
    }

    #[test]
    fn decisions() {
        assert!(check(&Graph::complete(4), 2, 1));
        assert!(!check(&Graph::cycle(5), 2, 0));
        assert!(check(&Graph::petersen(), 2, 1));
        assert!(check(&Graph::petersen(), 3, 0));
        assert!(!check(&Graph::petersen(), 2, 0));
        assert!(check(&Graph::new(0), 1, 0));
    }

    #[test]
    fn minimum_deficiency() {
        let bip = Graph::from_edges(6, [(0, 3), (0, 4), (1, 4), (2, 5), (1, 5)]).unwrap();
        assert_eq!(min_deficiency(&bip, 2).unwrap(), 0);
        assert_eq!(min_deficiency(&Graph::complete(4), 2).unwrap(), 1);
        assert_eq!(min_deficiency(&Graph::cycle(5), 2).unwrap(), 1);
    }

    #[test]
    fn minimum_colors() {
        assert_eq!(min_colors(&Graph::new(5), 0).unwrap(), 1);
        assert_eq!(min_colors(&Graph::new(5), 3).unwrap(), 1);
        assert_eq!(min_colors(&Graph::complete(4), 0).unwrap(), 4);
        assert_eq!(min_colors(&Graph::complete(4), 1).unwrap(), 2);
    }

    #[test]
    fn budget_refusal() {
        let g = Graph::cycle(20);
        assert!(matches!(
            Oracle::with_budget(1000).decide(&g, 2, 0),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(Oracle::with_budget(1000)
            .decide(&g, 1, 2)
            .unwrap()
            .is_some());
    }
}
