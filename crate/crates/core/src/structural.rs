//! Exact solvers parameterized by feedback vertex set and vertex cover.
//!
//! Both follow the same pattern: when `χd` or `Δ*` is large compared to the
//! parameter the answer is always yes and a coloring is built directly;
//! otherwise the exact DP runs on the decomposition obtained by adding the
//! deletion set to every bag of a width-one decomposition of the remainder.

use std::collections::{BTreeSet, VecDeque};

use crate::decomposition::{exact_fvs, exact_vc, from_separator, make_nice, DEFAULT_PARAMETER_CAP};
use crate::error::{Error, Result};
use crate::exact_dp::{solve_exact_with, DpOptions};
use crate::graph::{Coloring, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Colorable(Coloring),
    NotColorable,
    /// Two colors parameterized by feedback vertex set is not handled; use
    /// the tree decomposition DP instead.
    Unsupported,
}

impl Outcome {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            Outcome::Colorable(c) => Some(c),
            _ => None,
        }
    }

    pub fn into_coloring(self) -> Option<Coloring> {
        match self {
            Outcome::Colorable(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_colorable(&self) -> bool {
        matches!(self, Outcome::Colorable(_))
    }
}

impl From<Option<Coloring>> for Outcome {
    fn from(c: Option<Coloring>) -> Self {
        c.map_or(Outcome::NotColorable, Outcome::Colorable)
    }
}

fn check_set(graph: &Graph, set: &BTreeSet<Vertex>) -> Result<()> {
    match set.iter().find(|&&v| v >= graph.num_vertices()) {
        Some(v) => Err(Error::Precondition(format!(
            "vertex {v} is not in the graph"
        ))),
        None => Ok(()),
    }
}

fn monochromatic_if_fits(graph: &Graph, deficiency: u32) -> Outcome {
    if graph.max_degree() <= deficiency as usize {
        Outcome::Colorable(Coloring::monochromatic(graph.num_vertices()))
    } else {
        Outcome::NotColorable
    }
}

fn exact_on_separator(
    graph: &Graph,
    set: &BTreeSet<Vertex>,
    num_colors: u32,
    deficiency: u32,
    options: &DpOptions,
) -> Result<Outcome> {
    let td = from_separator(graph, set)?;
    let nice = make_nice(&td)?;
    Ok(solve_exact_with(graph, &nice, num_colors, deficiency, options)?.into())
}

/// Proper 2-coloring of the forest left after deleting `removed`, written as
/// colors `a` and `b` into `colors`.
fn color_forest(graph: &Graph, removed: &BTreeSet<Vertex>, a: u32, b: u32, colors: &mut [u32]) {
    let mut seen = vec![false; graph.num_vertices()];
    for &v in removed {
        seen[v] = true;
    }
    for start in graph.vertices() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        colors[start] = a;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in graph.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    colors[w] = if colors[u] == a { b } else { a };
                    queue.push_back(w);
                }
            }
        }
    }
}

pub fn solve_by_fvs(
    graph: &Graph,
    num_colors: u32,
    deficiency: u32,
    fvs: Option<&BTreeSet<Vertex>>,
) -> Result<Outcome> {
    solve_by_fvs_with(graph, num_colors, deficiency, fvs, &DpOptions::default())
}

pub fn solve_by_fvs_with(
    graph: &Graph,
    num_colors: u32,
    deficiency: u32,
    fvs: Option<&BTreeSet<Vertex>>,
    options: &DpOptions,
) -> Result<Outcome> {
    match num_colors {
        0 => return Err(Error::Precondition("at least one color is required".into())),
        1 => return Ok(monochromatic_if_fits(graph, deficiency)),
        2 => return Ok(Outcome::Unsupported),
        _ => {}
    }
    let f = match fvs {
        Some(f) => {
            check_set(graph, f)?;
            if !graph.without(f).0.is_forest() {
                return Err(Error::Precondition(
                    "supplied set is not a feedback vertex set".into(),
                ));
            }
            f.clone()
        }
        None => exact_fvs(graph, DEFAULT_PARAMETER_CAP)?,
    };
    let k = f.len();
    let mut colors = vec![0u32; graph.num_vertices()];
    if num_colors as usize >= k + 2 {
        for (i, &v) in f.iter().enumerate() {
            colors[v] = i as u32 + 1;
        }
        color_forest(graph, &f, k as u32 + 1, k as u32 + 2, &mut colors);
        return Ok(Outcome::Colorable(Coloring::new(colors)));
    }
    if deficiency as usize > k {
        for &v in &f {
            colors[v] = 1;
        }
        color_forest(graph, &f, 2, 3, &mut colors);
        return Ok(Outcome::Colorable(Coloring::new(colors)));
    }
    exact_on_separator(graph, &f, num_colors, deficiency, options)
}

pub fn solve_by_vc(
    graph: &Graph,
    num_colors: u32,
    deficiency: u32,
    vc: Option<&BTreeSet<Vertex>>,
) -> Result<Outcome> {
    solve_by_vc_with(graph, num_colors, deficiency, vc, &DpOptions::default())
}

pub fn solve_by_vc_with(
    graph: &Graph,
    num_colors: u32,
    deficiency: u32,
    vc: Option<&BTreeSet<Vertex>>,
    options: &DpOptions,
) -> Result<Outcome> {
    match num_colors {
        0 => return Err(Error::Precondition("at least one color is required".into())),
        1 => return Ok(monochromatic_if_fits(graph, deficiency)),
        _ => {}
    }
    let cover = match vc {
        Some(c) => {
            check_set(graph, c)?;
            if graph
                .edges()
                .any(|(u, v)| !c.contains(&u) && !c.contains(&v))
            {
                return Err(Error::Precondition(
                    "supplied set is not a vertex cover".into(),
                ));
            }
            c.clone()
        }
        None => exact_vc(graph, DEFAULT_PARAMETER_CAP)?,
    };
    let k = cover.len();
    if num_colors as usize > k {
        let mut colors = vec![k as u32 + 1; graph.num_vertices()];
        for (i, &v) in cover.iter().enumerate() {
            colors[v] = i as u32 + 1;
        }
        return Ok(Outcome::Colorable(Coloring::new(colors)));
    }
    if deficiency as usize > k {
        let mut colors = vec![2; graph.num_vertices()];
        for &v in &cover {
            colors[v] = 1;
        }
        return Ok(Outcome::Colorable(Coloring::new(colors)));
    }
    exact_on_separator(graph, &cover, num_colors, deficiency, options)
}

/// Either a `(χd + 1, Δ*)`-coloring or `NotColorable`, in which case no
/// `(χd, Δ*)`-coloring exists.
pub fn approx_plus_one_fvs(graph: &Graph, num_colors: u32, deficiency: u32) -> Result<Outcome> {
    let target = if num_colors == 2 { 3 } else { num_colors };
    solve_by_fvs(graph, target, deficiency, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{verify, DefectiveInstance};

    fn valid(g: &Graph, c: u32, d: u32, out: &Outcome) -> bool {
        let inst = DefectiveInstance::new(g.clone(), c, d).unwrap();
        verify(&inst, out.coloring().unwrap()).unwrap().valid
    }

    #[test]
    fn tree_single_color() {
        let g = Graph::star(4);
        let out = solve_by_fvs(&g, 1, 4, None).unwrap();
        assert_eq!(out, Outcome::Colorable(Coloring::monochromatic(5)));
        assert_eq!(solve_by_fvs(&g, 1, 3, None).unwrap(), Outcome::NotColorable);
    }

    #[test]
    fn cycle_large_deficiency_branch() {
        let g = Graph::cycle(6);
        let out = solve_by_fvs(&g, 3, 2, None).unwrap();
        assert!(valid(&g, 3, 2, &out));
    }

    #[test]
    fn two_colors_unsupported() {
        assert_eq!(
            solve_by_fvs(&Graph::cycle(4), 2, 0, None).unwrap(),
            Outcome::Unsupported
        );
    }

    #[test]
    fn bad_sets_rejected() {
        let g = Graph::cycle(4);
        assert!(solve_by_fvs(&g, 3, 0, Some(&BTreeSet::new())).is_err());
        assert!(solve_by_vc(&g, 2, 0, Some(&BTreeSet::from([0]))).is_err());
    }

    #[test]
    fn vertex_cover_examples() {
        let star = Graph::star(5);
        let out = solve_by_vc(&star, 2, 0, None).unwrap();
        assert!(valid(&star, 2, 0, &out));
        let k4 = Graph::complete(4);
        let out = solve_by_vc(&k4, 2, 1, None).unwrap();
        assert!(valid(&k4, 2, 1, &out));
        assert_eq!(solve_by_vc(&k4, 2, 0, None).unwrap(), Outcome::NotColorable);
    }

    #[test]
    fn plus_one() {
        let out = approx_plus_one_fvs(&Graph::new(3), 1, 0).unwrap();
        assert_eq!(out, Outcome::Colorable(Coloring::monochromatic(3)));
        // C5 has no (2, 0)-coloring but has a (3, 0)-coloring.
        let c5 = Graph::cycle(5);
        let out = approx_plus_one_fvs(&c5, 2, 0).unwrap();
        assert!(valid(&c5, 3, 0, &out));
    }
}
