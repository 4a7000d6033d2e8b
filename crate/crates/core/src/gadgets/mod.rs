//! Forcing gadgets and the reduction instances built from them.
//!
//! `T(i, j)` is `j + 1` disjoint copies of `T(i - 1, j)` plus a universal
//! vertex, with `T(1, j)` a single vertex. It has a proper `i`-coloring but no
//! `(i - 1, j)`-coloring. The equality gadget joins `χd Δ* + 1` copies of
//! `T(χd - 1, Δ*)` to two endpoints and forces them to share a color; the
//! palette gadget joins `C(χd, 2) Δ* + 1` copies of `T(χd - 2, Δ*)` to three
//! endpoints and forces two of them to share a color.

mod hardness;
mod mcc;

pub use hardness::{
    build_hardness_pw, build_hardness_pw_with, build_hardness_td, build_hardness_td_with,
    predict_pw_size, predict_td_size, witness_coloring, witness_coloring_pw, witness_coloring_td,
    Construction, GeneratedInstance, GeneratorOptions, DEFAULT_SIZE_CAP,
};
pub use mcc::{random_mcc, verify_clique, MccInstance};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GadgetKind {
    Equality,
    Palette,
}

/// One attached gadget: its endpoints and its internal tower vertices, each
/// with its recursion level inside its tower copy (1 for the innermost
/// single vertices, `i` for the universal vertex of `T(i, j)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub kind: GadgetKind,
    pub endpoints: Vec<Vertex>,
    pub internals: Vec<(Vertex, u32)>,
}

/// Vertex count of `T(i, j)`, `None` on overflow.
pub fn tower_size(i: u32, j: u32) -> Option<u128> {
    if i == 0 {
        return Some(0);
    }
    let mut size: u128 = 1;
    for _ in 1..i {
        size = size.checked_mul(j as u128 + 1)?.checked_add(1)?;
    }
    Some(size)
}

/// `T(i, j)` as a standalone graph, with vertex levels.
pub fn build_tower(i: u32, j: u32) -> Result<Graph> {
    build_tower_with_levels(i, j, DEFAULT_SIZE_CAP).map(|(g, _)| g)
}

pub fn build_tower_with_levels(i: u32, j: u32, cap: usize) -> Result<(Graph, Vec<u32>)> {
    if i == 0 {
        return Err(Error::Precondition(
            "tower height must be at least 1".into(),
        ));
    }
    check_cap(tower_size(i, j), cap)?;
    let mut g = Graph::new(0);
    let vs = add_tower(&mut g, i, j, None);
    let mut levels = vec![0; g.num_vertices()];
    for (v, l) in vs {
        levels[v] = l;
    }
    Ok((g, levels))
}

pub(crate) fn check_cap(predicted: Option<u128>, cap: usize) -> Result<()> {
    match predicted {
        Some(p) if p <= cap as u128 => Ok(()),
        p => Err(Error::SizeCap {
            predicted: p.unwrap_or(u128::MAX),
            cap,
        }),
    }
}

/// Adds a copy of `T(i, j)` and returns its vertices with their levels.
fn add_tower(g: &mut Graph, i: u32, j: u32, label: Option<&str>) -> Vec<(Vertex, u32)> {
    let add = |g: &mut Graph| match label {
        Some(l) => g.add_labeled_vertex(l),
        None => g.add_vertex(),
    };
    if i == 1 {
        return vec![(add(g), 1)];
    }
    let mut all = Vec::new();
    for _ in 0..=j {
        all.extend(add_tower(g, i - 1, j, label));
    }
    let top = add(g);
    for &(v, _) in &all {
        g.add_edge(top, v).expect("fresh tower vertex");
    }
    all.push((top, i));
    all
}

fn check_endpoints(host: &Graph, endpoints: &[Vertex]) -> Result<()> {
    for (a, &u) in endpoints.iter().enumerate() {
        if u >= host.num_vertices() {
            return Err(Error::Precondition(format!(
                "endpoint {u} is not in the graph"
            )));
        }
        if endpoints[..a].contains(&u) {
            return Err(Error::Precondition(format!("endpoint {u} repeated")));
        }
    }
    Ok(())
}

fn attach(
    host: &mut Graph,
    kind: GadgetKind,
    endpoints: &[Vertex],
    copies: u128,
    height: u32,
    deficiency: u32,
    label: Option<&str>,
) -> Result<Gadget> {
    check_endpoints(host, endpoints)?;
    let mut internals = Vec::new();
    for _ in 0..copies {
        internals.extend(add_tower(host, height, deficiency, label));
    }
    for &(v, _) in &internals {
        for &u in endpoints {
            host.add_edge(u, v)?;
        }
    }
    Ok(Gadget {
        kind,
        endpoints: endpoints.to_vec(),
        internals,
    })
}

/// Number of tower copies in an equality gadget.
pub fn equality_copies(num_colors: u32, deficiency: u32) -> u128 {
    num_colors as u128 * deficiency as u128 + 1
}

/// Number of tower copies in a palette gadget.
pub fn palette_copies(num_colors: u32, deficiency: u32) -> u128 {
    let c = num_colors as u128;
    c * c.saturating_sub(1) / 2 * deficiency as u128 + 1
}

/// Internal vertex count of an equality gadget.
pub fn equality_size(num_colors: u32, deficiency: u32) -> Option<u128> {
    equality_copies(num_colors, deficiency).checked_mul(tower_size(num_colors - 1, deficiency)?)
}

/// Internal vertex count of a palette gadget.
pub fn palette_size(num_colors: u32, deficiency: u32) -> Option<u128> {
    palette_copies(num_colors, deficiency).checked_mul(tower_size(num_colors - 2, deficiency)?)
}

pub fn attach_equality(
    host: &mut Graph,
    v1: Vertex,
    v2: Vertex,
    num_colors: u32,
    deficiency: u32,
) -> Result<Gadget> {
    attach_equality_labeled(host, v1, v2, num_colors, deficiency, None)
}

pub(crate) fn attach_equality_labeled(
    host: &mut Graph,
    v1: Vertex,
    v2: Vertex,
    num_colors: u32,
    deficiency: u32,
    label: Option<&str>,
) -> Result<Gadget> {
    if num_colors < 2 {
        return Err(Error::Precondition(
            "equality gadget needs at least 2 colors".into(),
        ));
    }
    attach(
        host,
        GadgetKind::Equality,
        &[v1, v2],
        equality_copies(num_colors, deficiency),
        num_colors - 1,
        deficiency,
        label,
    )
}

pub fn attach_palette(
    host: &mut Graph,
    v1: Vertex,
    v2: Vertex,
    v3: Vertex,
    num_colors: u32,
    deficiency: u32,
) -> Result<Gadget> {
    attach_palette_labeled(host, [v1, v2, v3], num_colors, deficiency, None)
}

pub(crate) fn attach_palette_labeled(
    host: &mut Graph,
    endpoints: [Vertex; 3],
    num_colors: u32,
    deficiency: u32,
    label: Option<&str>,
) -> Result<Gadget> {
    if num_colors < 3 {
        return Err(Error::Precondition(
            "palette gadget needs at least 3 colors".into(),
        ));
    }
    attach(
        host,
        GadgetKind::Palette,
        &endpoints,
        palette_copies(num_colors, deficiency),
        num_colors - 2,
        deficiency,
        label,
    )
}

/// Colors the internal vertices of `gadget` given colored endpoints: level
/// `l` takes the `l`-th color not used by any endpoint. This is a proper
/// coloring of the internals that avoids every endpoint color.
pub fn color_gadget(gadget: &Gadget, colors: &mut [u32], num_colors: u32) -> Result<()> {
    let used: Vec<u32> = gadget.endpoints.iter().map(|&v| colors[v]).collect();
    if used.contains(&0) {
        return Err(Error::Precondition("gadget endpoint is uncolored".into()));
    }
    let free: Vec<u32> = (1..=num_colors).filter(|c| !used.contains(c)).collect();
    for &(v, level) in &gadget.internals {
        colors[v] = *free.get(level as usize - 1).ok_or_else(|| {
            Error::Precondition(format!(
                "{:?} gadget endpoints use colors {used:?}, leaving too few for its towers",
                gadget.kind
            ))
        })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{verify, Coloring, DefectiveInstance};

    #[test]
    fn tower_sizes() {
        assert_eq!(tower_size(1, 5), Some(1));
        assert_eq!(tower_size(2, 1), Some(3));
        assert_eq!(tower_size(3, 1), Some(7));
        let t = build_tower(3, 1).unwrap();
        assert_eq!(t.num_vertices(), 7);
        assert_eq!(t.num_edges(), 2 * 2 + 6);
        let t = build_tower(2, 1).unwrap();
        assert_eq!(t.max_degree(), 2);
    }

    #[test]
    fn tower_levels_color_properly() {
        let (t, levels) = build_tower_with_levels(4, 2, 1000).unwrap();
        let inst = DefectiveInstance::new(t, 4, 0).unwrap();
        assert!(verify(&inst, &Coloring::new(levels)).unwrap().valid);
    }

    #[test]
    fn gadget_sizes() {
        let mut g = Graph::new(2);
        let q = attach_equality(&mut g, 0, 1, 2, 3).unwrap();
        assert_eq!(q.internals.len(), 7);
        assert_eq!(g.num_edges(), 14);
        let mut g = Graph::new(2);
        assert_eq!(
            attach_equality(&mut g, 0, 1, 3, 1).unwrap().internals.len(),
            12
        );
        let mut g = Graph::new(3);
        assert_eq!(
            attach_palette(&mut g, 0, 1, 2, 3, 1)
                .unwrap()
                .internals
                .len(),
            4
        );
        let mut g = Graph::new(3);
        assert_eq!(
            attach_palette(&mut g, 0, 1, 2, 4, 1)
                .unwrap()
                .internals
                .len(),
            21
        );
        assert_eq!(equality_size(3, 1), Some(12));
        assert_eq!(palette_size(4, 1), Some(21));
    }

    #[test]
    fn gadget_preconditions() {
        let mut g = Graph::new(3);
        assert!(attach_equality(&mut g, 0, 1, 1, 0).is_err());
        assert!(attach_equality(&mut g, 0, 0, 2, 0).is_err());
        assert!(attach_palette(&mut g, 0, 1, 2, 2, 0).is_err());
        assert!(build_tower(0, 1).is_err());
        assert!(matches!(
            build_tower_with_levels(10, 10, 1000),
            Err(Error::SizeCap { .. })
        ));
    }
}
