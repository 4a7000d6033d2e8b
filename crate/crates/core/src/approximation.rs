//! Approximation algorithms: a `(1 + ε)` scheme on the deficiency, local
//! search halving, and a factor-two approximation on the number of colors.

use serde::Serialize;

use crate::decomposition::{balance, make_nice, TreeDecomposition};
use crate::error::{Error, Result};
use crate::exact_dp::{reconstruct, run_tables, solve_exact_with, DpOptions, ValueDomain};
use crate::graph::{
    deficiency_profile, proper_coloring_by_degeneracy, report_from_profile, Coloring,
    DefectiveInstance, Graph, Vertex,
};

/// Slack used when taking the floor of `(1 + ε) Δ*`.
const FLOOR_SLACK: f64 = 1e-9;

/// Below this deficiency the factor-two color approximation runs the exact DP.
pub const DOUBLE_COLORS_EXACT_BELOW: u32 = 20;

/// Accuracy used by the factor-two color approximation.
pub const DOUBLE_COLORS_EPSILON: f64 = 0.1;

/// The rounded value set `Σ = {0} ∪ {(1 + δ)^e ≤ (1 + ε) Δ*}`.
///
/// Index 0 is the value 0 and index `i >= 1` is the power `(1 + δ)^(i - 1)`.
/// Counts of neighbors are integers, so each power is stored together with
/// its floor; the floor is what comparisons use.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundedValueSet {
    delta: f64,
    epsilon: f64,
    deficiency: u32,
    floors: Vec<u64>,
}

/// `δ = ε / (log2 max(n, 4))^2`, at most 1.
pub fn default_delta(epsilon: f64, n: usize) -> f64 {
    let log = (n.max(4) as f64).log2();
    (epsilon / (log * log)).min(1.0)
}

pub fn build_value_set(deficiency: u32, epsilon: f64, n: usize) -> Result<RoundedValueSet> {
    check_epsilon(epsilon)?;
    RoundedValueSet::with_delta(deficiency, epsilon, default_delta(epsilon, n))
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon.is_finite() && epsilon > 0.0 {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "ε must be positive, got {epsilon}"
        )))
    }
}

impl RoundedValueSet {
    pub fn with_delta(deficiency: u32, epsilon: f64, delta: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::Precondition(format!(
                "δ must be positive, got {delta}"
            )));
        }
        let cap = (1.0 + epsilon) * deficiency as f64;
        let mut floors = vec![0];
        let mut e = 0i32;
        loop {
            let power = (1.0 + delta).powi(e);
            if power > cap {
                break;
            }
            floors.push(power.floor() as u64);
            e += 1;
        }
        Ok(RoundedValueSet {
            delta,
            epsilon,
            deficiency,
            floors,
        })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `(1 + ε) Δ*`.
    pub fn cap(&self) -> f64 {
        (1.0 + self.epsilon) * self.deficiency as f64
    }

    /// `⌊(1 + ε) Δ*⌋`, the deficiency a returned coloring respects.
    pub fn budget(&self) -> u32 {
        (self.cap() + FLOOR_SLACK).floor() as u32
    }

    pub fn len(&self) -> usize {
        self.floors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.floors.is_empty()
    }

    /// Exponent of the power at `index`, `None` for the value 0.
    pub fn exponent(&self, index: usize) -> Option<u32> {
        (index > 0).then(|| index as u32 - 1)
    }

    pub fn value(&self, index: usize) -> f64 {
        match self.exponent(index) {
            None => 0.0,
            Some(e) => (1.0 + self.delta).powi(e as i32),
        }
    }

    /// Integer part of the value at `index`.
    pub fn floor(&self, index: usize) -> u64 {
        self.floors[index]
    }

    /// Smallest member that is at least `x`, or `None` on overflow.
    pub fn round_up(&self, x: u64) -> Option<usize> {
        if x == 0 {
            return Some(0);
        }
        let i = self.floors.partition_point(|&f| f < x);
        (i < self.floors.len()).then_some(i)
    }
}

/// Counts rounded up into a `RoundedValueSet`.
#[derive(Clone, Copy, Debug)]
pub struct ApproxCounts<'a> {
    pub set: &'a RoundedValueSet,
}

impl ValueDomain for ApproxCounts<'_> {
    fn settles(&self, value: u32, extra: u32) -> bool {
        self.set.floor(value as usize) + extra as u64 <= self.set.budget() as u64
    }

    fn increment(&self, value: u32) -> Option<u32> {
        self.set
            .round_up(self.set.floor(value as usize) + 1)
            .map(|i| i as u32)
    }

    fn sum(&self, a: u32, b: u32) -> Option<u32> {
        self.set
            .round_up(self.set.floor(a as usize) + self.set.floor(b as usize))
            .map(|i| i as u32)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproxReport {
    pub epsilon: f64,
    /// `ε / (log2 max(n, 4))^2`, clamped to 1.
    pub formula_delta: f64,
    /// δ actually used: never above `formula_delta`, and small enough that
    /// `(1 + δ)^rounding_depth <= 1 + ε`.
    pub delta: f64,
    pub balanced_width: usize,
    pub balanced_height: usize,
    /// Longest root-to-leaf path of the nice decomposition, in nodes; bounds
    /// how many roundings any stored count goes through.
    pub rounding_depth: usize,
    /// `(1 + δ)^max(balanced_height, rounding_depth)`.
    pub error_factor: f64,
    pub value_set_size: usize,
    pub budget: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxOutcome {
    /// A `(χd, ⌊(1 + ε) Δ*⌋)`-coloring, or `None` when no `(χd, Δ*)`-coloring
    /// exists.
    pub coloring: Option<Coloring>,
    pub report: ApproxReport,
}

pub fn solve_approx_deficiency(
    graph: &Graph,
    td: &TreeDecomposition,
    num_colors: u32,
    deficiency: u32,
    epsilon: f64,
) -> Result<ApproxOutcome> {
    solve_approx_deficiency_with(
        graph,
        td,
        num_colors,
        deficiency,
        epsilon,
        &DpOptions::default(),
    )
}

pub fn solve_approx_deficiency_with(
    graph: &Graph,
    td: &TreeDecomposition,
    num_colors: u32,
    deficiency: u32,
    epsilon: f64,
    options: &DpOptions,
) -> Result<ApproxOutcome> {
    DefectiveInstance::new(graph.clone(), num_colors, deficiency)?;
    check_epsilon(epsilon)?;
    let balanced = balance(graph, td)?;
    let nice = make_nice(&balanced)?;
    let formula_delta = default_delta(epsilon, graph.num_vertices());
    let depth = balanced.height().max(nice.height()).max(1);
    let refined = (1.0 + epsilon).powf(1.0 / depth as f64) - 1.0;
    let delta = formula_delta.min(refined);
    let set = RoundedValueSet::with_delta(deficiency, epsilon, delta)?;
    let report = ApproxReport {
        epsilon,
        formula_delta,
        delta,
        balanced_width: balanced.width(),
        balanced_height: balanced.height(),
        rounding_depth: nice.height(),
        error_factor: (1.0 + delta).powi(depth as i32),
        value_set_size: set.len(),
        budget: set.budget(),
    };
    debug_assert!(report.error_factor <= 1.0 + epsilon + FLOOR_SLACK);

    let coloring = if graph.num_vertices() == 0 {
        Some(Coloring::new(Vec::new()))
    } else if num_colors as usize > nice.width() + 1 {
        Some(proper_coloring_by_degeneracy(graph))
    } else {
        let tables = run_tables(
            graph,
            &nice,
            num_colors,
            &ApproxCounts { set: &set },
            options,
        )?;
        reconstruct(graph, &nice, &tables)
    };
    if let Some(c) = &coloring {
        let profile = deficiency_profile(graph, c)?;
        assert!(
            report_from_profile(profile, set.budget()).valid && c.max_color() <= num_colors,
            "rounded DP returned a coloring over budget"
        );
    }
    Ok(ApproxOutcome { coloring, report })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halving {
    pub coloring: Coloring,
    pub flips: usize,
}

/// Two-coloring in which every vertex has at most `⌊deg(v) / 2⌋`
/// same-colored neighbors. Starts monochromatic and flips any vertex with a
/// strict majority of same-colored neighbors; each flip grows the cut, so
/// there are at most `|E|` flips.
pub fn halve_local_search(graph: &Graph) -> Halving {
    let n = graph.num_vertices();
    let mut colors = vec![1u32; n];
    let mut same: Vec<usize> = graph.vertices().map(|v| graph.degree(v)).collect();
    let mut stack: Vec<Vertex> = graph.vertices().rev().collect();
    let mut flips = 0;
    while let Some(v) = stack.pop() {
        if 2 * same[v] <= graph.degree(v) {
            continue;
        }
        let old = colors[v];
        colors[v] = 3 - old;
        flips += 1;
        same[v] = graph.degree(v) - same[v];
        for &w in graph.neighbors(v) {
            if colors[w] == old {
                same[w] -= 1;
            } else {
                same[w] += 1;
                if 2 * same[w] > graph.degree(w) {
                    stack.push(w);
                }
            }
        }
    }
    Halving {
        coloring: Coloring::new(colors),
        flips,
    }
}

/// Either a `(2χd, Δ*)`-coloring or `None`, in which case the graph has no
/// `(χd, Δ*)`-coloring.
pub fn solve_double_colors(
    graph: &Graph,
    td: &TreeDecomposition,
    num_colors: u32,
    deficiency: u32,
) -> Result<Option<Coloring>> {
    solve_double_colors_with(graph, td, num_colors, deficiency, &DpOptions::default())
}

pub fn solve_double_colors_with(
    graph: &Graph,
    td: &TreeDecomposition,
    num_colors: u32,
    deficiency: u32,
    options: &DpOptions,
) -> Result<Option<Coloring>> {
    if deficiency < DOUBLE_COLORS_EXACT_BELOW {
        td.validate(graph)?;
        let nice = make_nice(td)?;
        return solve_exact_with(graph, &nice, num_colors, deficiency, options);
    }
    let outcome = solve_approx_deficiency_with(
        graph,
        td,
        num_colors,
        deficiency,
        DOUBLE_COLORS_EPSILON,
        options,
    )?;
    let Some(mut coloring) = outcome.coloring else {
        return Ok(None);
    };
    let profile = deficiency_profile(graph, &coloring)?;
    for (c, class) in coloring.classes() {
        if class.iter().all(|&v| profile[v] <= deficiency) {
            continue;
        }
        let (sub, to_old) = graph.induced_subgraph(&class);
        let halves = halve_local_search(&sub);
        for (i, &v) in to_old.iter().enumerate() {
            if halves.coloring.color_of(i) == 2 {
                coloring.set(v, num_colors + c);
            }
        }
    }
    debug_assert!(deficiency_profile(graph, &coloring)?
        .iter()
        .all(|&d| d <= deficiency));
    Ok(Some(coloring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{heuristic_decomposition, Strategy};

    #[test]
    fn zero_deficiency_set_is_zero_only() {
        let set = build_value_set(0, 0.5, 10).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.round_up(0), Some(0));
        assert_eq!(set.round_up(1), None);
    }

    #[test]
    fn clamped_delta_gives_powers_of_two() {
        let set = build_value_set(4, 4.0, 4).unwrap();
        assert_eq!(set.delta(), 1.0);
        let values: Vec<u64> = (0..set.len()).map(|i| set.floor(i)).collect();
        assert_eq!(values, vec![0, 1, 2, 4, 8, 16]);
        assert_eq!(set.round_up(3).map(|i| set.floor(i)), Some(4));
        assert_eq!(set.round_up(1).map(|i| set.floor(i)), Some(1));
    }

    #[test]
    fn set_size_matches_scalar_loop() {
        let set = build_value_set(10, 0.5, 16).unwrap();
        assert_eq!(set.delta(), 0.03125);
        let mut largest = 0;
        let mut x = 1.0f64;
        let mut i = 0;
        while x * 1.03125 <= 15.0 {
            x *= 1.03125;
            i += 1;
            largest = i;
        }
        assert_eq!(set.len(), 1 + largest + 1);
    }

    #[test]
    fn rejects_bad_epsilon() {
        assert!(build_value_set(3, 0.0, 10).is_err());
        assert!(build_value_set(3, -1.0, 10).is_err());
    }

    #[test]
    fn k4_two_colors() {
        let g = Graph::complete(4);
        let td = heuristic_decomposition(&g, Strategy::MinDegree);
        for eps in [0.1, 0.5, 1.0] {
            let out = solve_approx_deficiency(&g, &td, 2, 1, eps).unwrap();
            let c = out.coloring.unwrap();
            let max = deficiency_profile(&g, &c)
                .unwrap()
                .into_iter()
                .max()
                .unwrap();
            assert!(max as f64 <= (1.0 + eps));
            assert!(out.report.error_factor <= 1.0 + eps + 1e-9);
        }
    }

    #[test]
    fn halving_bounds() {
        let h = halve_local_search(&Graph::new(5));
        assert_eq!(h.flips, 0);
        assert_eq!(h.coloring, Coloring::monochromatic(5));
        let g = Graph::complete(4);
        let h = halve_local_search(&g);
        assert!(deficiency_profile(&g, &h.coloring)
            .unwrap()
            .iter()
            .all(|&d| d <= 1));
        assert!(h.flips <= g.num_edges());
    }

    #[test]
    fn double_colors_on_path() {
        let g = Graph::path(6);
        let td = heuristic_decomposition(&g, Strategy::MinDegree);
        let c = solve_double_colors(&g, &td, 2, 0).unwrap().unwrap();
        assert!(deficiency_profile(&g, &c).unwrap().iter().all(|&d| d == 0));
        assert!(solve_double_colors(
            &Graph::cycle(5),
            &heuristic_decomposition(&Graph::cycle(5), Strategy::MinDegree),
            2,
            0
        )
        .unwrap()
        .is_none());
    }

    #[test]
    fn double_colors_large_deficiency() {
        let g = Graph::star(22);
        let td = heuristic_decomposition(&g, Strategy::MinDegree);
        if let Some(c) = solve_double_colors(&g, &td, 1, 20).unwrap() {
            assert!(c.max_color() <= 2);
            assert!(deficiency_profile(&g, &c).unwrap().iter().all(|&d| d <= 20));
        }
        let g = Graph::star(30);
        let td = heuristic_decomposition(&g, Strategy::MinDegree);
        assert!(solve_double_colors(&g, &td, 1, 20).unwrap().is_none());
    }
}
