//! Reductions from multicolored clique to defective coloring.
//!
//! Both constructions set `Δ* = |E| - C(k, 2)` and produce a graph that is
//! `(χd, Δ*)`-colorable exactly when the source instance has a multicolored
//! `k`-clique. Vertex labels have the form `s<step>:<name>`, where `step` is
//! the construction step that created the vertex.

use serde::{Deserialize, Serialize};

use super::{
    attach_equality_labeled, attach_palette_labeled, check_cap, color_gadget, equality_size,
    palette_size, verify_clique, Gadget, GadgetKind, MccInstance,
};
use crate::error::{Error, Result};
use crate::graph::{verify, Coloring, DefectiveInstance, Graph, Vertex};

pub const DEFAULT_SIZE_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    /// Bounded tree-depth, and bounded feedback vertex set for two colors.
    Td,
    /// Pathwidth linear in `k`.
    Pw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorOptions {
    /// Refuse to build instances with more vertices than this.
    pub size_cap: usize,
}

impl Default for GeneratorOptions {
    fn default() -> Self {
        GeneratorOptions {
            size_cap: DEFAULT_SIZE_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct EdgePart {
    /// Endpoints in the source instance, side 1 first.
    ends: (Vertex, Vertex),
    sets: Vec<Vertex>,
    checker: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Layout {
    Td {
        /// `choice[i - 1][l - 1]` is `c^i_l`.
        choice: Vec<Vec<Vertex>>,
    },
    Pw {
        /// `grid[i - 1][j - 1]` is the set `C_{i,j}`.
        grid: Vec<Vec<Vec<Vertex>>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedInstance {
    pub instance: DefectiveInstance,
    pub construction: Construction,
    pub mcc: MccInstance,
    pub gadgets: Vec<Gadget>,
    pub p_a: Vertex,
    pub p_b: Vertex,
    /// For the two-color tree-depth construction: guard and transfer vertices
    /// plus `p_A`, `p_B`. Deleting them and then repeatedly deleting vertices
    /// of degree at most one empties the graph.
    pub certificate: Option<Vec<Vertex>>,
    edge_parts: Vec<EdgePart>,
    layout: Layout,
}

impl GeneratedInstance {
    pub fn graph(&self) -> &Graph {
        &self.instance.graph
    }

    pub fn num_colors(&self) -> u32 {
        self.instance.num_colors
    }

    pub fn deficiency(&self) -> u32 {
        self.instance.deficiency
    }

    /// Checker vertex of every source edge, keyed by the edge's endpoints.
    pub fn checkers(&self) -> impl Iterator<Item = ((Vertex, Vertex), Vertex)> + '_ {
        self.edge_parts.iter().map(|p| (p.ends, p.checker))
    }

    /// Vertices whose label has the given name, ignoring the step prefix.
    pub fn find_role(&self, name: &str) -> Vec<Vertex> {
        self.graph()
            .labels()
            .iter()
            .filter(|(_, l)| l.split_once(':').is_some_and(|(_, n)| n == name))
            .map(|(&v, _)| v)
            .collect()
    }
}

fn deficiency_of(mcc: &MccInstance) -> Result<u32> {
    let d = mcc.target_deficiency();
    if d < 0 {
        return Err(Error::Precondition(format!(
            "the source has {} edges, fewer than the {} a {}-clique needs",
            mcc.num_edges(),
            mcc.k() * (mcc.k() - 1) / 2,
            mcc.k()
        )));
    }
    u32::try_from(d).map_err(|_| Error::Precondition("deficiency does not fit in 32 bits".into()))
}

fn check_colors(num_colors: u32) -> Result<()> {
    if num_colors < 2 {
        return Err(Error::Precondition(
            "the reductions need at least 2 colors".into(),
        ));
    }
    Ok(())
}

/// Predicted vertex count of the tree-depth construction, `None` on overflow.
pub fn predict_td_size(mcc: &MccInstance, num_colors: u32) -> Result<Option<u128>> {
    check_colors(num_colors)?;
    let d = deficiency_of(mcc)? as u128;
    let (k, n, m) = (mcc.k() as u128, mcc.n() as u128, mcc.num_edges() as u128);
    let b = d.saturating_sub(n);
    let named = 2
        + 2 * d
        + 2 * n * k
        + 2 * k
        + 2 * k * (k - 1)
        + m * (2 * n + 1)
        + 1
        + 2 * k * b
        + 2 * k * (k - 1) * b
        + m * d;
    let equalities = 2 * d + 2 * k + 2 * k * (k - 1) + 1 + 2 * k * b + 2 * k * (k - 1) * b + m * d;
    let palettes = if num_colors >= 3 {
        2 * n * k + m * (2 * n + 1)
    } else {
        0
    };
    Ok(total(named, equalities, palettes, num_colors, d as u32))
}

/// Predicted vertex count of the pathwidth construction, `None` on overflow.
pub fn predict_pw_size(mcc: &MccInstance, num_colors: u32) -> Result<Option<u128>> {
    check_colors(num_colors)?;
    let d = deficiency_of(mcc)? as u128;
    let (k, n, m) = (mcc.k() as u128, mcc.n() as u128, mcc.num_edges() as u128);
    let b = d.saturating_sub(n);
    let backbone = 2 * k * (2 * m).saturating_sub(1);
    let steps_6_to_17 =
        2 * m * k * n + backbone + m * (2 * n + 5) + 1 + m * d + 4 * m * b + backbone * b;
    let named = 2 + 2 * d + steps_6_to_17;
    let equalities = 2 * d + backbone + 4 * m + 1 + m * d + 4 * m * b + backbone * b;
    let palettes = if num_colors >= 3 { steps_6_to_17 } else { 0 };
    Ok(total(named, equalities, palettes, num_colors, d as u32))
}

fn total(named: u128, equalities: u128, palettes: u128, num_colors: u32, d: u32) -> Option<u128> {
    let eq = equalities.checked_mul(equality_size(num_colors, d)?)?;
    let pal = if palettes > 0 {
        palettes.checked_mul(palette_size(num_colors, d)?)?
    } else {
        0
    };
    named.checked_add(eq)?.checked_add(pal)
}

struct Builder {
    graph: Graph,
    num_colors: u32,
    deficiency: u32,
    gadgets: Vec<Gadget>,
}

impl Builder {
    fn vertex(&mut self, step: u32, name: impl std::fmt::Display) -> Vertex {
        self.graph.add_labeled_vertex(format!("s{step}:{name}"))
    }

    fn set(&mut self, step: u32, name: impl std::fmt::Display, size: usize) -> Vec<Vertex> {
        let label = format!("s{step}:{name}");
        (0..size)
            .map(|_| self.graph.add_labeled_vertex(label.as_str()))
            .collect()
    }

    fn edge(&mut self, u: Vertex, v: Vertex) {
        self.graph
            .add_edge(u, v)
            .expect("construction adds each edge once");
    }

    fn join(&mut self, u: Vertex, vs: &[Vertex]) {
        for &v in vs {
            self.edge(u, v);
        }
    }

    fn equality(&mut self, step: u32, v1: Vertex, v2: Vertex) {
        let label = format!("s{step}:eq-internal");
        let g = attach_equality_labeled(
            &mut self.graph,
            v1,
            v2,
            self.num_colors,
            self.deficiency,
            Some(&label),
        )
        .expect("distinct endpoints");
        self.gadgets.push(g);
    }

    fn palette(&mut self, step: u32, p_a: Vertex, p_b: Vertex, v: Vertex) {
        if self.num_colors < 3 {
            return;
        }
        let label = format!("s{step}:palette-internal");
        let g = attach_palette_labeled(
            &mut self.graph,
            [p_a, p_b, v],
            self.num_colors,
            self.deficiency,
            Some(&label),
        )
        .expect("distinct endpoints");
        self.gadgets.push(g);
    }

    /// A budget set of `size` vertices joined to `owner`, each tied to `anchor`.
    fn budget(&mut self, step: u32, owner: Vertex, anchor: Vertex, size: usize) -> Vec<Vertex> {
        let name = format!("budget({})", self.name(owner));
        let set = self.set(step, name, size);
        self.join(owner, &set);
        for &v in &set {
            self.equality(step, anchor, v);
        }
        set
    }

    fn name(&self, v: Vertex) -> String {
        let label = self.graph.label(v).unwrap_or_default();
        label.split_once(':').map_or(label, |(_, n)| n).to_string()
    }

    /// Steps 1 to 5: `p_A`, `p_B`, each with `Δ*` same-colored pendants.
    fn palette_part(&mut self) -> (Vertex, Vertex) {
        let p_a = self.vertex(1, "p_A");
        let p_b = self.vertex(1, "p_B");
        let mut pendants = Vec::new();
        for i in 1..=self.deficiency {
            for (p, side) in [(p_a, "A"), (p_b, "B")] {
                pendants.push((p, self.vertex(2, format!("p^{i}_{side}"))));
            }
        }
        for &(p, q) in &pendants {
            self.equality(3, p, q);
        }
        self.edge(p_a, p_b);
        for &(p, q) in &pendants {
            self.edge(p, q);
        }
        (p_a, p_b)
    }
}

fn start(
    mcc: &MccInstance,
    num_colors: u32,
    construction: Construction,
    options: &GeneratorOptions,
) -> Result<Builder> {
    let predicted = match construction {
        Construction::Td => predict_td_size(mcc, num_colors)?,
        Construction::Pw => predict_pw_size(mcc, num_colors)?,
    };
    check_cap(predicted, options.size_cap)?;
    Ok(Builder {
        graph: Graph::new(0),
        num_colors,
        deficiency: deficiency_of(mcc)?,
        gadgets: Vec::new(),
    })
}

/// Edges of the source oriented so that side 1 is in the lower class.
fn oriented_edges(mcc: &MccInstance) -> Vec<(Vertex, Vertex)> {
    mcc.graph()
        .edges()
        .map(|(u, v)| {
            if mcc.place(u).0 < mcc.place(v).0 {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect()
}

pub fn build_hardness_td(mcc: &MccInstance, num_colors: u32) -> Result<GeneratedInstance> {
    build_hardness_td_with(mcc, num_colors, &GeneratorOptions::default())
}

pub fn build_hardness_td_with(
    mcc: &MccInstance,
    num_colors: u32,
    options: &GeneratorOptions,
) -> Result<GeneratedInstance> {
    let mut b = start(mcc, num_colors, Construction::Td, options)?;
    let (k, n, d) = (mcc.k(), mcc.n(), b.deficiency as usize);
    let (p_a, p_b) = b.palette_part();

    // Choice part.
    let choice: Vec<Vec<Vertex>> = (1..=k)
        .map(|i| {
            (1..=2 * n)
                .map(|l| b.vertex(6, format!("c^{i}_{l}")))
                .collect()
        })
        .collect();
    let guards: Vec<[Vertex; 2]> = (1..=k)
        .map(|i| {
            [
                b.vertex(7, format!("g^{i}_A")),
                b.vertex(7, format!("g^{i}_B")),
            ]
        })
        .collect();
    for i in 0..k {
        for g in guards[i] {
            b.join(g, &choice[i]);
        }
    }
    for g in &guards {
        b.equality(9, p_a, g[0]);
        b.equality(9, p_b, g[1]);
    }
    for &c in choice.iter().flatten() {
        b.palette(10, p_a, p_b, c);
    }

    // Transfer part; `low[i][j]` is `l_{i+1,j+1}`.
    let mut low = vec![vec![usize::MAX; k]; k];
    let mut high = vec![vec![usize::MAX; k]; k];
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            high[i][j] = b.vertex(11, format!("h_{},{}", i + 1, j + 1));
            low[i][j] = b.vertex(11, format!("l_{},{}", i + 1, j + 1));
        }
    }
    let transfers: Vec<Vertex> = (0..k)
        .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
        .flat_map(|(i, j)| [low[i][j], high[i][j]])
        .collect();
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            b.join(low[i][j], &choice[i][..n]);
        }
    }
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            b.join(high[i][j], &choice[i][n..]);
        }
    }
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            b.equality(14, p_a, low[i][j]);
            b.equality(14, p_a, high[i][j]);
        }
    }

    // Edge representation.
    let mut edge_parts = Vec::new();
    for (e, (u, v)) in oriented_edges(mcc).into_iter().enumerate() {
        let e = e + 1;
        let (j1, i1) = mcc.place(u);
        let (j2, i2) = mcc.place(v);
        let l1 = b.set(15, format!("L^1_{e}"), n - i1);
        let h1 = b.set(15, format!("H^1_{e}"), i1);
        let l2 = b.set(15, format!("L^2_{e}"), n - i2);
        let h2 = b.set(15, format!("H^2_{e}"), i2);
        b.join(low[j1 - 1][j2 - 1], &l1);
        b.join(high[j1 - 1][j2 - 1], &h1);
        b.join(low[j2 - 1][j1 - 1], &l2);
        b.join(high[j2 - 1][j1 - 1], &h2);
        let sets: Vec<Vertex> = [l1, h1, l2, h2].concat();
        let checker = b.vertex(17, format!("c_{e}"));
        b.join(checker, &sets);
        for &x in sets.iter().chain([&checker]) {
            b.palette(18, p_a, p_b, x);
        }
        edge_parts.push(EdgePart {
            ends: (u, v),
            sets,
            checker,
        });
    }
    let c_u = b.vertex(19, "c_U");
    for part in &edge_parts {
        b.edge(c_u, part.checker);
    }
    b.equality(20, p_a, c_u);

    // Budget setting.
    let short = d.saturating_sub(n);
    for g in &guards {
        b.budget(21, g[0], p_a, short);
        b.budget(21, g[1], p_b, short);
    }
    for &t in &transfers {
        b.budget(22, t, p_a, short);
    }
    for part in &edge_parts {
        b.budget(23, part.checker, p_b, d);
    }

    let certificate = (num_colors == 2).then(|| {
        let mut cert: Vec<Vertex> = guards.iter().flatten().copied().collect();
        cert.extend(&transfers);
        cert.extend([p_a, p_b]);
        cert.sort_unstable();
        cert
    });
    finish(
        b,
        mcc,
        Construction::Td,
        p_a,
        p_b,
        certificate,
        edge_parts,
        Layout::Td { choice },
    )
}

#[allow(clippy::too_many_arguments)]
fn finish(
    b: Builder,
    mcc: &MccInstance,
    construction: Construction,
    p_a: Vertex,
    p_b: Vertex,
    certificate: Option<Vec<Vertex>>,
    edge_parts: Vec<EdgePart>,
    layout: Layout,
) -> Result<GeneratedInstance> {
    let num_colors = b.num_colors;
    let deficiency = b.deficiency;
    Ok(GeneratedInstance {
        instance: DefectiveInstance::new(b.graph, num_colors, deficiency)?,
        construction,
        mcc: mcc.clone(),
        gadgets: b.gadgets,
        p_a,
        p_b,
        certificate,
        edge_parts,
        layout,
    })
}

pub fn build_hardness_pw(mcc: &MccInstance, num_colors: u32) -> Result<GeneratedInstance> {
    build_hardness_pw_with(mcc, num_colors, &GeneratorOptions::default())
}

pub fn build_hardness_pw_with(
    mcc: &MccInstance,
    num_colors: u32,
    options: &GeneratorOptions,
) -> Result<GeneratedInstance> {
    let mut b = start(mcc, num_colors, Construction::Pw, options)?;
    let (k, n, d, m) = (mcc.k(), mcc.n(), b.deficiency as usize, mcc.num_edges());
    let (p_a, p_b) = b.palette_part();
    let first_named = b.graph.num_vertices();
    let mut named: Vec<Vertex> = Vec::new();

    let grid: Vec<Vec<Vec<Vertex>>> = (1..=k)
        .map(|i| {
            (1..=2 * m)
                .map(|j| b.set(6, format!("C_{i},{j}"), n))
                .collect()
        })
        .collect();
    // backbone[i][j] = (b^A_{i+1,j+1}, b^B_{i+1,j+1})
    let mut backbone: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); k];
    for i in 0..k {
        for j in 0..(2 * m).saturating_sub(1) {
            let pair = (
                b.vertex(7, format!("b^A_{},{}", i + 1, j + 1)),
                b.vertex(7, format!("b^B_{},{}", i + 1, j + 1)),
            );
            for x in [pair.0, pair.1] {
                b.join(x, &grid[i][j]);
                b.join(x, &grid[i][j + 1]);
            }
            backbone[i].push(pair);
        }
    }
    for &(x, y) in backbone.iter().flatten() {
        b.equality(8, p_a, x);
        b.equality(8, p_b, y);
    }

    let mut edge_parts = Vec::new();
    let mut hubs = Vec::new();
    for (j, (u, v)) in mcc.graph().edges().enumerate() {
        let j = j + 1;
        let (i1, j1) = mcc.place(u);
        let (i2, j2) = mcc.place(v);
        let sh1 = b.set(9, format!("H^1_{j}"), n - j1);
        let sl1 = b.set(9, format!("L^1_{j}"), j1);
        let sh2 = b.set(9, format!("H^2_{j}"), n - j2);
        let sl2 = b.set(9, format!("L^2_{j}"), j2);
        let h1 = b.vertex(10, format!("h^1_{j}"));
        let l1 = b.vertex(10, format!("l^1_{j}"));
        let h2 = b.vertex(10, format!("h^2_{j}"));
        let l2 = b.vertex(10, format!("l^2_{j}"));
        b.join(h1, &sh1);
        b.join(l1, &sl1);
        b.join(h2, &sh2);
        b.join(l2, &sl2);
        b.join(h1, &grid[i1 - 1][2 * j - 2]);
        b.join(l1, &grid[i1 - 1][2 * j - 1]);
        b.join(h2, &grid[i2 - 1][2 * j - 2]);
        b.join(l2, &grid[i2 - 1][2 * j - 1]);
        for x in [h1, l1, h2, l2] {
            b.equality(12, p_a, x);
        }
        let sets: Vec<Vertex> = [sh1, sl1, sh2, sl2].concat();
        let checker = b.vertex(13, format!("c_{j}"));
        b.join(checker, &sets);
        hubs.extend([h1, l1, h2, l2]);
        edge_parts.push(EdgePart {
            ends: (u, v),
            sets,
            checker,
        });
    }

    let c_u = b.vertex(14, "c_U");
    for part in &edge_parts {
        b.edge(c_u, part.checker);
    }
    b.equality(14, p_a, c_u);
    named.extend(first_named..b.graph.num_vertices());
    // Steps 6 to 14 created named vertices interleaved with gadget internals.
    named.retain(|&v| !is_internal(&b.graph, v));

    for part in &edge_parts {
        named.extend(b.budget(15, part.checker, p_b, d));
    }
    let short = d.saturating_sub(n);
    for &h in &hubs {
        named.extend(b.budget(16, h, p_a, short));
    }
    for &(x, y) in backbone.iter().flatten() {
        named.extend(b.budget(17, x, p_a, short));
        named.extend(b.budget(17, y, p_b, short));
    }
    for &v in &named {
        b.palette(18, p_a, p_b, v);
    }
    finish(
        b,
        mcc,
        Construction::Pw,
        p_a,
        p_b,
        None,
        edge_parts,
        Layout::Pw { grid },
    )
}

fn is_internal(graph: &Graph, v: Vertex) -> bool {
    graph
        .label(v)
        .is_some_and(|l| l.ends_with(":eq-internal") || l.ends_with(":palette-internal"))
}

/// The coloring from the yes-direction of either construction. It is valid
/// when `Δ* >= max(n, k)`; the pathwidth construction also needs `Δ* >= 3`,
/// since an interior grid vertex can see two backbone vertices and a hub of
/// its own color.
pub fn witness_coloring(generated: &GeneratedInstance, clique: &[usize]) -> Result<Coloring> {
    let mcc = &generated.mcc;
    if !verify_clique(mcc, clique) {
        return Err(Error::Precondition(
            "the given indices do not form a clique".into(),
        ));
    }
    let n = mcc.n();
    let mut colors = vec![0u32; generated.graph().num_vertices()];
    colors[generated.p_a] = 1;
    colors[generated.p_b] = 2;
    match &generated.layout {
        Layout::Td { choice } => {
            for (i, row) in choice.iter().enumerate() {
                let f = clique[i];
                for (l, &c) in row.iter().enumerate() {
                    let l = l + 1;
                    colors[c] = if l <= f || (n < l && l <= 2 * n - f) {
                        1
                    } else {
                        2
                    };
                }
            }
        }
        Layout::Pw { grid } => {
            for (i, row) in grid.iter().enumerate() {
                let s = clique[i];
                for (j, set) in row.iter().enumerate() {
                    let ones = if j % 2 == 0 { s } else { n - s };
                    for (t, &c) in set.iter().enumerate() {
                        colors[c] = if t < ones { 1 } else { 2 };
                    }
                }
            }
        }
    }
    let in_clique = |v: Vertex| {
        let (class, index) = mcc.place(v);
        clique[class - 1] == index
    };
    for part in &generated.edge_parts {
        let chosen = in_clique(part.ends.0) && in_clique(part.ends.1);
        let (set_color, checker_color) = if chosen { (1, 2) } else { (2, 1) };
        for &s in &part.sets {
            colors[s] = set_color;
        }
        colors[part.checker] = checker_color;
    }
    // Every equality gadget has a main palette vertex as its first endpoint.
    for g in &generated.gadgets {
        if g.kind == GadgetKind::Equality {
            colors[g.endpoints[1]] = colors[g.endpoints[0]];
        }
    }
    for g in &generated.gadgets {
        color_gadget(g, &mut colors, generated.num_colors())?;
    }
    let coloring = Coloring::new(colors);
    let report = verify(&generated.instance, &coloring)?;
    if !report.valid {
        let names: Vec<&str> = report
            .violating_vertices
            .iter()
            .take(4)
            .map(|&v| generated.graph().label(v).unwrap_or("?"))
            .collect();
        return Err(Error::Precondition(format!(
            "witness exceeds Δ* = {} at {} vertices (e.g. {}); it needs Δ* >= max(n, k), and Δ* >= 3 for the pathwidth construction",
            generated.deficiency(),
            report.violating_vertices.len(),
            names.join(", ")
        )));
    }
    Ok(coloring)
}

pub fn witness_coloring_td(generated: &GeneratedInstance, clique: &[usize]) -> Result<Coloring> {
    if generated.construction != Construction::Td {
        return Err(Error::Precondition("not a tree-depth construction".into()));
    }
    witness_coloring(generated, clique)
}

pub fn witness_coloring_pw(generated: &GeneratedInstance, clique: &[usize]) -> Result<Coloring> {
    if generated.construction != Construction::Pw {
        return Err(Error::Precondition("not a pathwidth construction".into()));
    }
    witness_coloring(generated, clique)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::random_mcc;

    /// A planted instance with at least `min_edges` edges.
    fn planted(k: usize, n: usize, min_edges: usize) -> MccInstance {
        (0..)
            .map(|seed| random_mcc(k, n, 0.6, seed, true).unwrap())
            .find(|m| m.num_edges() >= min_edges)
            .unwrap()
    }

    #[test]
    fn td_size_prediction_is_exact() {
        let m = planted(2, 2, 3);
        for c in [2, 3] {
            let g = build_hardness_td(&m, c).unwrap();
            assert_eq!(
                Some(g.graph().num_vertices() as u128),
                predict_td_size(&m, c).unwrap()
            );
        }
    }

    #[test]
    fn pw_size_prediction_is_exact() {
        let m = planted(2, 2, 3);
        for c in [2, 3] {
            let g = build_hardness_pw(&m, c).unwrap();
            assert_eq!(
                Some(g.graph().num_vertices() as u128),
                predict_pw_size(&m, c).unwrap()
            );
        }
    }

    #[test]
    fn witnesses_verify() {
        let m = planted(3, 3, 6);
        let clique = m.planted().unwrap().to_vec();
        for c in [2, 3] {
            let td = build_hardness_td(&m, c).unwrap();
            witness_coloring_td(&td, &clique).unwrap();
            let pw = build_hardness_pw(&m, c).unwrap();
            witness_coloring_pw(&pw, &clique).unwrap();
        }
    }

    #[test]
    fn too_few_edges() {
        let m = random_mcc(3, 2, 0.0, 0, false).unwrap();
        assert!(build_hardness_td(&m, 2).is_err());
        assert!(build_hardness_pw(&m, 2).is_err());
    }

    #[test]
    fn size_cap_refuses() {
        let m = planted(3, 3, 6);
        let opts = GeneratorOptions { size_cap: 10 };
        assert!(matches!(
            build_hardness_td_with(&m, 2, &opts),
            Err(Error::SizeCap { .. })
        ));
    }
}
