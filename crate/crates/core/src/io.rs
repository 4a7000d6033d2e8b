//! File formats. Vertices are 1-indexed in every file and 0-indexed in memory.
//!
//! * Graphs: DIMACS-like text with `p edge <n> <m>`, `e <u> <v>`, comments
//!   `c ...`, and optional `c role <v> <label>` lines.
//! * Colorings: JSON `{"num_colors": 2, "colors": {"1": 1, "2": 2}}`.
//! * Tree decompositions: PACE `.td` with `s td <bags> <width + 1> <n>`,
//!   `b <id> <v...>` and tree edges `<id> <id>`.
//! * Multicolored clique instances and generator sidecars: JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::decomposition::TreeDecomposition;
use crate::error::{Error, Result};
use crate::gadgets::{Construction, GeneratedInstance, MccInstance};
use crate::graph::{Coloring, Graph, Vertex};

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("bad {what} `{tok}`")))
}

fn parse_vertex(tok: Option<&str>, line: usize, n: usize) -> Result<Vertex> {
    let v: usize = parse_num(tok, line, "vertex")?;
    if v == 0 || v > n {
        return Err(Error::parse(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

pub fn read_dimacs(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut declared_edges = 0;
    let mut roles = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None => {}
            Some("c") => {
                if toks.next() == Some("role") {
                    let v: usize = parse_num(toks.next(), line, "vertex")?;
                    let label = toks.collect::<Vec<_>>().join(" ");
                    roles.push((line, v, label));
                }
            }
            Some("p") => {
                if graph.is_some() {
                    return Err(Error::parse(line, "second problem line"));
                }
                if toks.next() != Some("edge") {
                    return Err(Error::parse(line, "expected `p edge <n> <m>`"));
                }
                let n: usize = parse_num(toks.next(), line, "vertex count")?;
                declared_edges = parse_num(toks.next(), line, "edge count")?;
                graph = Some(Graph::new(n));
            }
            Some("e") => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| Error::parse(line, "edge before problem line"))?;
                let n = g.num_vertices();
                let u = parse_vertex(toks.next(), line, n)?;
                let v = parse_vertex(toks.next(), line, n)?;
                g.add_edge(u, v)
                    .map_err(|e| Error::parse(line, e.to_string()))?;
            }
            Some(other) => return Err(Error::parse(line, format!("unknown line type `{other}`"))),
        }
    }
    let mut graph = graph.ok_or_else(|| Error::parse(0, "missing problem line"))?;
    if graph.num_edges() != declared_edges {
        return Err(Error::parse(
            0,
            format!(
                "header declares {declared_edges} edges, found {}",
                graph.num_edges()
            ),
        ));
    }
    for (line, v, label) in roles {
        if v == 0 || v > graph.num_vertices() {
            return Err(Error::parse(line, format!("role for unknown vertex {v}")));
        }
        graph.set_label(v - 1, label);
    }
    Ok(graph)
}

pub fn write_dimacs(graph: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", graph.num_vertices(), graph.num_edges());
    for (v, label) in graph.labels() {
        writeln!(out, "c role {} {label}", v + 1).unwrap();
    }
    for (u, v) in graph.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    read_dimacs(&std::fs::read_to_string(path)?)
}

pub fn save_graph(path: impl AsRef<Path>, graph: &Graph) -> Result<()> {
    Ok(std::fs::write(path, write_dimacs(graph))?)
}

#[derive(Serialize, Deserialize)]
struct ColoringFile {
    num_colors: u32,
    colors: BTreeMap<String, u32>,
}

pub fn write_coloring(coloring: &Coloring, num_colors: u32) -> String {
    let file = ColoringFile {
        num_colors,
        colors: coloring
            .as_slice()
            .iter()
            .enumerate()
            .map(|(v, &c)| ((v + 1).to_string(), c))
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

/// Parses a coloring file; returns the coloring and its declared color count.
/// Every vertex of an `n`-vertex graph must be present.
pub fn read_coloring(text: &str, n: usize) -> Result<(Coloring, u32)> {
    let file: ColoringFile = serde_json::from_str(text)?;
    let mut colors = vec![0u32; n];
    for (key, &c) in &file.colors {
        let v: usize = key
            .parse()
            .map_err(|_| Error::parse(0, format!("bad vertex key `{key}`")))?;
        if v == 0 || v > n {
            return Err(Error::parse(0, format!("vertex {v} outside 1..={n}")));
        }
        colors[v - 1] = c;
    }
    if let Some(v) = colors.iter().position(|&c| c == 0) {
        return Err(Error::MissingVertex(v));
    }
    Ok((Coloring::new(colors), file.num_colors))
}

pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = format!("s td {} {} {n}\n", td.num_nodes(), td.width() + 1);
    for (t, bag) in td.bags().iter().enumerate() {
        write!(out, "b {}", t + 1).unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for (a, b) in td.tree_edges() {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// Parses a `.td` file and validates it against `graph`.
pub fn read_td(text: &str, graph: &Graph) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize)> = None;
    let mut bags: Vec<Option<Vec<Vertex>>> = Vec::new();
    let mut edges = Vec::new();
    let n = graph.num_vertices();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("s") => {
                if toks.next() != Some("td") {
                    return Err(Error::parse(line, "expected `s td <bags> <width+1> <n>`"));
                }
                let count: usize = parse_num(toks.next(), line, "bag count")?;
                let size: usize = parse_num(toks.next(), line, "bag size")?;
                let vertices: usize = parse_num(toks.next(), line, "vertex count")?;
                if vertices != n {
                    return Err(Error::parse(
                        line,
                        format!("decomposition is for {vertices} vertices, graph has {n}"),
                    ));
                }
                header = Some((count, size));
                bags = vec![None; count];
            }
            Some("b") => {
                let (count, size) =
                    header.ok_or_else(|| Error::parse(line, "bag before header"))?;
                let id: usize = parse_num(toks.next(), line, "bag id")?;
                if id == 0 || id > count || bags[id - 1].is_some() {
                    return Err(Error::parse(line, format!("bad or repeated bag id {id}")));
                }
                let bag = toks
                    .map(|t| parse_vertex(Some(t), line, n))
                    .collect::<Result<Vec<_>>>()?;
                if bag.len() > size {
                    return Err(Error::parse(
                        line,
                        format!("bag larger than declared {size}"),
                    ));
                }
                bags[id - 1] = Some(bag);
            }
            Some(first) => {
                let (count, _) = header.ok_or_else(|| Error::parse(line, "edge before header"))?;
                let a: usize = parse_num(Some(first), line, "bag id")?;
                let b: usize = parse_num(toks.next(), line, "bag id")?;
                if a == 0 || b == 0 || a > count || b > count {
                    return Err(Error::parse(
                        line,
                        format!("tree edge {a} {b} out of range"),
                    ));
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    if header.is_none() {
        return Err(Error::parse(0, "missing `s td` header"));
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(t, b)| b.ok_or_else(|| Error::parse(0, format!("bag {} missing", t + 1))))
        .collect::<Result<Vec<_>>>()?;
    let td = if bags.is_empty() {
        TreeDecomposition::empty()
    } else {
        TreeDecomposition::from_edges(bags, &edges)?
    };
    td.validate(graph)?;
    Ok(td)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MccFile {
    pub k: usize,
    pub n: usize,
    pub classes: Vec<Vec<Vertex>>,
    pub edges: Vec<(Vertex, Vertex)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub planted: Option<Vec<usize>>,
}

impl MccFile {
    pub fn from_instance(mcc: &MccInstance) -> Self {
        MccFile {
            k: mcc.k(),
            n: mcc.n(),
            classes: mcc
                .classes()
                .iter()
                .map(|c| c.iter().map(|v| v + 1).collect())
                .collect(),
            edges: mcc.graph().edges().map(|(u, v)| (u + 1, v + 1)).collect(),
            planted: mcc.planted().map(<[usize]>::to_vec),
        }
    }

    pub fn to_instance(&self) -> Result<MccInstance> {
        let total = self.k * self.n;
        let shift = |v: Vertex| {
            if v == 0 || v > total {
                Err(Error::Precondition(format!(
                    "vertex {v} outside 1..={total}"
                )))
            } else {
                Ok(v - 1)
            }
        };
        let mut graph = Graph::new(total);
        for &(u, v) in &self.edges {
            graph.add_edge(shift(u)?, shift(v)?)?;
        }
        let classes = self
            .classes
            .iter()
            .map(|c| c.iter().map(|&v| shift(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if classes.len() != self.k || classes.iter().any(|c| c.len() != self.n) {
            return Err(Error::Precondition(format!(
                "expected {} classes of {} vertices",
                self.k, self.n
            )));
        }
        MccInstance::new(graph, classes, self.planted.clone())
    }
}

pub fn write_mcc(mcc: &MccInstance) -> String {
    serde_json::to_string_pretty(&MccFile::from_instance(mcc)).expect("plain data serializes")
}

pub fn read_mcc(text: &str) -> Result<MccInstance> {
    serde_json::from_str::<MccFile>(text)?.to_instance()
}

/// Metadata written next to a generated instance. The source instance is
/// embedded so the construction can be replayed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub deficiency: u32,
    pub num_colors: u32,
    pub construction: Construction,
    pub k: usize,
    pub n: usize,
    pub num_vertices: usize,
    /// 1-indexed deletion set, when the construction provides one.
    pub certificate: Option<Vec<Vertex>>,
    pub mcc: MccFile,
}

impl Sidecar {
    pub fn from_instance(generated: &GeneratedInstance) -> Self {
        Sidecar {
            deficiency: generated.deficiency(),
            num_colors: generated.num_colors(),
            construction: generated.construction,
            k: generated.mcc.k(),
            n: generated.mcc.n(),
            num_vertices: generated.graph().num_vertices(),
            certificate: generated
                .certificate
                .as_ref()
                .map(|c| c.iter().map(|v| v + 1).collect()),
            mcc: MccFile::from_instance(&generated.mcc),
        }
    }
}

pub fn write_sidecar(generated: &GeneratedInstance) -> String {
    serde_json::to_string_pretty(&Sidecar::from_instance(generated)).expect("plain data serializes")
}

pub fn read_sidecar(text: &str) -> Result<Sidecar> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{heuristic_decomposition, Strategy};
    use crate::gadgets::{build_hardness_td, random_mcc};

    #[test]
    fn dimacs_round_trip() {
        let mut g = Graph::petersen();
        g.set_label(3, "s1:p_A");
        g.set_label(4, "two words");
        let text = write_dimacs(&g);
        assert_eq!(read_dimacs(&text).unwrap(), g);
    }

    #[test]
    fn dimacs_rejects_bad_input() {
        assert!(read_dimacs("p edge 2 1\ne 1 1\n").is_err());
        assert!(read_dimacs("p edge 2 2\ne 1 2\ne 2 1\n").is_err());
        assert!(read_dimacs("p edge 2 1\ne 1 3\n").is_err());
        assert!(read_dimacs("e 1 2\n").is_err());
        assert!(read_dimacs("p edge 3 2\ne 1 2\n").is_err());
        assert!(read_dimacs("c only a comment\n").is_err());
    }

    #[test]
    fn coloring_round_trip() {
        let c = Coloring::new(vec![1, 2, 2, 1]);
        let text = write_coloring(&c, 2);
        assert_eq!(read_coloring(&text, 4).unwrap(), (c, 2));
        assert!(read_coloring(&text, 5).is_err());
        assert!(read_coloring(&text, 3).is_err());
    }

    #[test]
    fn td_round_trip() {
        let g = Graph::petersen();
        let td = heuristic_decomposition(&g, Strategy::MinFill);
        let back = read_td(&write_td(&td, 10), &g).unwrap();
        assert_eq!(back.width(), td.width());
        assert_eq!(back.bags(), td.bags());
        assert!(read_td(&write_td(&td, 10), &Graph::complete(10)).is_err());
    }

    #[test]
    fn mcc_and_sidecar_round_trip() {
        let m = random_mcc(3, 2, 0.7, 5, true).unwrap();
        assert_eq!(read_mcc(&write_mcc(&m)).unwrap(), m);
        let gen = build_hardness_td(&m, 2).unwrap();
        let side = read_sidecar(&write_sidecar(&gen)).unwrap();
        assert_eq!(side.mcc.to_instance().unwrap(), m);
        assert_eq!(side.construction, Construction::Td);
    }
}
