//! Defective graph coloring.
//!
//! Decides whether the vertices of a graph split into `χd` classes whose
//! induced subgraphs all have maximum degree at most `Δ*`, and builds a
//! certificate when they do. Solvers: an exact dynamic program over tree
//! decompositions, a rounding scheme that approximates `Δ*` within `1 + ε`,
//! a factor-two approximation on the number of colors, and exact solvers
//! parameterized by feedback vertex set and vertex cover. The `gadgets`
//! module generates the reduction instances used to show hardness, and the
//! `oracle` module is a brute-force referee for small graphs.

pub mod approximation;
pub mod corpus;
pub mod decomposition;
pub mod error;
pub mod exact_dp;
pub mod gadgets;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod structural;

pub use approximation::{
    halve_local_search, solve_approx_deficiency, solve_double_colors, ApproxOutcome, ApproxReport,
};
pub use decomposition::{
    balance, heuristic_decomposition, make_nice, NiceDecomposition, Strategy, TreeDecomposition,
};
pub use error::{Error, Result};
pub use exact_dp::{solve_exact, solve_exact_with, DpOptions};
pub use graph::{
    deficiency_profile, proper_coloring_by_degeneracy, verify, Coloring, DefectiveInstance, Graph,
    VerificationReport, Vertex,
};
pub use oracle::Oracle;
pub use structural::{approx_plus_one_fvs, solve_by_fvs, solve_by_vc, Outcome};
