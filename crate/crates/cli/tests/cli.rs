use std::path::Path;
use std::process::{Command, Output};

use defco::graph::{verify, DefectiveInstance, Graph};
use defco::io::{read_coloring, read_dimacs, write_dimacs};

/// Runs the binary with whitespace-separated arguments.
fn defco(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_defco"))
        .args(args.split_whitespace())
        .output()
        .expect("run defco")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_graph(dir: &Path, name: &str, g: &Graph) -> String {
    let path = dir.join(name);
    std::fs::write(&path, write_dimacs(g)).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn solve_then_verify_k4() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_graph(dir.path(), "k4.dimacs", &Graph::complete(4));
    let col = dir.path().join("k4.col");
    let col = col.to_str().unwrap();
    let out = defco(&format!(
        "solve --graph {} --colors 2 --deficiency 1 --out {}",
        graph, col
    ));
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let (coloring, _) = read_coloring(&std::fs::read_to_string(col).unwrap(), 4).unwrap();
    let inst = DefectiveInstance::new(Graph::complete(4), 2, 1).unwrap();
    assert!(verify(&inst, &coloring).unwrap().valid);

    let out = defco(&format!(
        "verify --graph {} --coloring {} --colors 2 --deficiency 1",
        graph, col
    ));
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("\"valid\": true"));
    let out = defco(&format!(
        "verify --graph {} --coloring {} --colors 2 --deficiency 0",
        graph, col
    ));
    assert_eq!(code(&out), 1);
}

#[test]
fn no_instances_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_graph(dir.path(), "k4.dimacs", &Graph::complete(4));
    for method in ["exact", "approx-def", "double-colors", "vc", "oracle"] {
        let out = defco(&format!(
            "solve --graph {} --colors 1 --deficiency 2 --method {}",
            graph, method
        ));
        assert_eq!(code(&out), 1, "method {method}");
    }
}

#[test]
fn every_method_solves_a_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_graph(dir.path(), "c7.dimacs", &Graph::cycle(7));
    for method in [
        "exact",
        "approx-def",
        "double-colors",
        "fvs",
        "vc",
        "fvs-plus-one",
        "oracle",
    ] {
        let out = defco(&format!(
            "solve --graph {} --colors 3 --deficiency 0 --method {}",
            graph, method
        ));
        assert_eq!(code(&out), 0, "method {method}: {}", stdout(&out));
    }
}

#[test]
fn fvs_with_two_colors_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_graph(dir.path(), "p.dimacs", &Graph::petersen());
    let out = defco(&format!(
        "solve --graph {} --colors 2 --deficiency 1 --method fvs",
        graph
    ));
    assert_eq!(code(&out), 2);
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.dimacs");
    std::fs::write(&path, "p edge 3 1\ne 1 7\n").unwrap();
    let out = defco(&format!(
        "solve --graph {} --colors 2 --deficiency 0",
        path.to_str().unwrap()
    ));
    assert_eq!(code(&out), 2);
    assert_eq!(code(&defco("solve --colors 2")), 2);
}

#[test]
fn oracle_budget_refusal_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_graph(dir.path(), "c30.dimacs", &Graph::cycle(30));
    let out = defco(&format!(
        "solve --graph {} --colors 3 --deficiency 0 --method oracle",
        graph
    ));
    assert_eq!(code(&out), 3);
}

#[test]
fn hardness_td_witness_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("h.dimacs");
    let out_path = out_path.to_str().unwrap();
    let out = defco(&format!(
        "generate hardness-td --k 3 --n 3 --p 0.6 --seed 1 --plant --out {}",
        out_path
    ));
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let graph = read_dimacs(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert!(graph.num_vertices() > 0);
    let sidecar = format!("{out_path}.json");
    let wit = dir.path().join("w.col");
    let out = defco(&format!(
        "witness --instance-sidecar {} --graph {} --out {}",
        sidecar,
        out_path,
        wit.to_str().unwrap()
    ));
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let (coloring, colors) = read_coloring(
        &std::fs::read_to_string(&wit).unwrap(),
        graph.num_vertices(),
    )
    .unwrap();
    assert_eq!(colors, 2);
    assert!(coloring.max_color() <= 2);
}

#[test]
fn hardness_pw_respects_size_cap() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("h.dimacs");
    let out = defco(&format!(
        "generate hardness-pw --k 3 --n 3 --plant --size-cap 10 --out {}",
        out_path.to_str().unwrap()
    ));
    assert_eq!(code(&out), 3);
    assert!(!out_path.exists());
}

#[test]
fn decompose_writes_a_valid_td() {
    let dir = tempfile::tempdir().unwrap();
    let g = Graph::petersen();
    let graph = write_graph(dir.path(), "p.dimacs", &g);
    let td = dir.path().join("p.td");
    let out = defco(&format!(
        "decompose --graph {} --balance --out {}",
        graph,
        td.to_str().unwrap()
    ));
    assert_eq!(code(&out), 0);
    let parsed = defco::io::read_td(&std::fs::read_to_string(&td).unwrap(), &g).unwrap();
    assert!(parsed.width() >= 4);
    let out = defco(&format!(
        "solve --graph {} --colors 3 --deficiency 0 --td-file {}",
        graph,
        td.to_str().unwrap()
    ));
    assert_eq!(code(&out), 0);
}

#[test]
fn tower_and_params() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.dimacs");
    let out = defco(&format!(
        "generate tower --i 3 --j 1 --out {}",
        path.to_str().unwrap()
    ));
    assert_eq!(code(&out), 0);
    let t = read_dimacs(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(t.num_vertices(), 7);
    let out = defco(&format!("params --graph {}", path.to_str().unwrap()));
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("n: 7"));
}
