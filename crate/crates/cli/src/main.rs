use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use defco::approximation::{solve_approx_deficiency_with, solve_double_colors_with};
use defco::decomposition::{
    balance, exact_fvs, exact_vc, heuristic_decomposition, make_nice, Strategy, TreeDecomposition,
    DEFAULT_PARAMETER_CAP,
};
use defco::exact_dp::{solve_exact_with, DpOptions};
use defco::gadgets::{
    build_hardness_pw_with, build_hardness_td_with, build_tower, predict_pw_size, predict_td_size,
    random_mcc, witness_coloring, Construction, GeneratedInstance, GeneratorOptions, MccInstance,
    DEFAULT_SIZE_CAP,
};
use defco::io;
use defco::structural::{approx_plus_one_fvs, solve_by_fvs_with, solve_by_vc_with, Outcome};
use defco::{verify, Coloring, DefectiveInstance, Error, Graph, Oracle};

/// Exit status for a proven "no" or an invalid coloring.
const EXIT_NO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "defco",
    version,
    about = "Defective graph coloring solvers and instance generators"
)]
struct Cli {
    /// Worker threads for the tree decomposition DP.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide (χd, Δ*)-colorability and write a coloring.
    Solve(SolveArgs),
    /// Check a coloring file against a graph.
    Verify(VerifyArgs),
    /// Write a tree decomposition.
    Decompose(DecomposeArgs),
    /// Generate towers, clique instances and reduction instances.
    #[command(subcommand)]
    Generate(GenerateCommand),
    /// Build and check the yes-certificate of a generated reduction instance.
    Witness(WitnessArgs),
    /// Print structural parameters of a graph.
    Params(ParamsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Tree decomposition DP.
    Exact,
    /// (1 + ε) approximation of the deficiency.
    ApproxDef,
    /// At most 2χd colors.
    DoubleColors,
    /// Feedback vertex set win/win (χd ≠ 2).
    Fvs,
    /// Vertex cover win/win.
    Vc,
    /// At most χd + 1 colors via the feedback vertex set solver.
    FvsPlusOne,
    /// Brute force.
    Oracle,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    colors: u32,
    #[arg(long)]
    deficiency: u32,
    #[arg(long, value_enum, default_value = "exact")]
    method: Method,
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    /// Decomposition to use instead of the elimination heuristic.
    #[arg(long)]
    td_file: Option<PathBuf>,
    #[arg(long, default_value = "min-fill")]
    strategy: Strategy,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    coloring: PathBuf,
    #[arg(long)]
    colors: u32,
    #[arg(long)]
    deficiency: u32,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value = "min-fill")]
    strategy: Strategy,
    /// Rebalance to logarithmic height.
    #[arg(long)]
    balance: bool,
    /// Convert to nice form before writing.
    #[arg(long)]
    nice: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenerateCommand {
    /// The tower graph T(i, j).
    Tower {
        #[arg(long)]
        i: u32,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// A random multicolored clique instance.
    Mcc {
        #[command(flatten)]
        source: MccArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reduction instance of bounded tree-depth.
    HardnessTd(HardnessArgs),
    /// Reduction instance of bounded pathwidth.
    HardnessPw(HardnessArgs),
}

#[derive(Args)]
struct MccArgs {
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Probability of each cross-class edge.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Force a clique on one random vertex per class.
    #[arg(long)]
    plant: bool,
}

#[derive(Args)]
struct HardnessArgs {
    /// Source instance file; generated from the random options when absent.
    #[arg(long)]
    mcc: Option<PathBuf>,
    #[command(flatten)]
    source: MccArgs,
    #[arg(long, default_value_t = 2)]
    colors: u32,
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
    size_cap: usize,
    /// Graph output; the sidecar goes to `<out>.json` unless given.
    #[arg(long, default_value = "instance.dimacs")]
    out: PathBuf,
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long)]
    instance_sidecar: PathBuf,
    /// Generated graph to check against the replayed construction.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Comma-separated 1-based index per class; defaults to the planted clique.
    #[arg(long, value_delimiter = ',')]
    clique: Option<Vec<usize>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ParamsArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = DEFAULT_PARAMETER_CAP)]
    cap: usize,
}

/// A command's decision, separate from failures.
enum Status {
    Yes,
    No,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Yes) => ExitCode::SUCCESS,
        Ok(Status::No) => ExitCode::from(EXIT_NO),
        Err(err) => {
            eprintln!("error: {err:#}");
            let budget = matches!(
                err.downcast_ref::<Error>(),
                Some(
                    Error::BudgetExceeded { .. }
                        | Error::CapExceeded { .. }
                        | Error::SizeCap { .. }
                )
            );
            ExitCode::from(if budget { EXIT_BUDGET } else { EXIT_USAGE })
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let options = DpOptions {
        threads: cli.threads,
    };
    match cli.command {
        Command::Solve(args) => solve(args, &options),
        Command::Verify(args) => verify_cmd(args),
        Command::Decompose(args) => decompose(args),
        Command::Generate(cmd) => generate(cmd),
        Command::Witness(args) => witness(args),
        Command::Params(args) => params(args),
    }
}

fn load_graph(path: &Path) -> anyhow::Result<Graph> {
    io::load_graph(path).with_context(|| format!("reading graph {}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn decomposition(
    graph: &Graph,
    td_file: Option<&Path>,
    strategy: Strategy,
) -> anyhow::Result<TreeDecomposition> {
    match td_file {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok(io::read_td(&text, graph).with_context(|| format!("parsing {}", path.display()))?)
        }
        None => Ok(heuristic_decomposition(graph, strategy)),
    }
}

fn solve(args: SolveArgs, options: &DpOptions) -> anyhow::Result<Status> {
    let graph = load_graph(&args.graph)?;
    let (colors, deficiency) = (args.colors, args.deficiency);
    let td = || decomposition(&graph, args.td_file.as_deref(), args.strategy);
    // Solvers may return more colors or a larger deficiency than requested;
    // the result is checked against what the method promises.
    let (coloring, promised_colors, promised_deficiency) = match args.method {
        Method::Exact => {
            let nice = make_nice(&td()?)?;
            (
                solve_exact_with(&graph, &nice, colors, deficiency, options)?,
                colors,
                deficiency,
            )
        }
        Method::ApproxDef => {
            let out = solve_approx_deficiency_with(
                &graph,
                &td()?,
                colors,
                deficiency,
                args.epsilon,
                options,
            )?;
            println!("report: {}", serde_json::to_string(&out.report)?);
            (out.coloring, colors, out.report.budget)
        }
        Method::DoubleColors => (
            solve_double_colors_with(&graph, &td()?, colors, deficiency, options)?,
            2 * colors,
            deficiency,
        ),
        Method::Fvs => match solve_by_fvs_with(&graph, colors, deficiency, None, options)? {
            Outcome::Unsupported => bail!(
                "the feedback vertex set solver does not handle --colors 2; use --method exact"
            ),
            outcome => (outcome.into_coloring(), colors, deficiency),
        },
        Method::Vc => (
            solve_by_vc_with(&graph, colors, deficiency, None, options)?.into_coloring(),
            colors,
            deficiency,
        ),
        Method::FvsPlusOne => (
            approx_plus_one_fvs(&graph, colors, deficiency)?.into_coloring(),
            colors + 1,
            deficiency,
        ),
        Method::Oracle => (
            Oracle::from_env().decide(&graph, colors, deficiency)?,
            colors,
            deficiency,
        ),
    };
    let Some(coloring) = coloring else {
        println!("decision: no");
        return Ok(Status::No);
    };
    let instance = DefectiveInstance::new(graph, promised_colors, promised_deficiency)?;
    let report = verify(&instance, &coloring)?;
    if !report.valid {
        bail!(
            "solver returned a coloring that fails verification at {} vertices",
            report.violating_vertices.len()
        );
    }
    println!("decision: yes");
    println!(
        "colors used: {} (max color {}), max deficiency: {}",
        coloring.colors_used(),
        coloring.max_color(),
        report.max_deficiency
    );
    if let Some(out) = &args.out {
        write_file(out, &io::write_coloring(&coloring, promised_colors))?;
    }
    Ok(Status::Yes)
}

fn verify_cmd(args: VerifyArgs) -> anyhow::Result<Status> {
    let graph = load_graph(&args.graph)?;
    let text = fs::read_to_string(&args.coloring)
        .with_context(|| format!("reading {}", args.coloring.display()))?;
    let (coloring, _) = io::read_coloring(&text, graph.num_vertices())
        .with_context(|| format!("parsing {}", args.coloring.display()))?;
    let instance = DefectiveInstance::new(graph, args.colors, args.deficiency)?;
    match verify(&instance, &coloring) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(if report.valid {
                Status::Yes
            } else {
                Status::No
            })
        }
        Err(err @ Error::ColorOutOfRange { .. }) => {
            println!("invalid: {err}");
            Ok(Status::No)
        }
        Err(err) => Err(err.into()),
    }
}

fn decompose(args: DecomposeArgs) -> anyhow::Result<Status> {
    let graph = load_graph(&args.graph)?;
    let mut td = heuristic_decomposition(&graph, args.strategy);
    if args.balance {
        td = balance(&graph, &td)?;
    }
    if args.nice {
        td = make_nice(&td)?.to_tree_decomposition();
    }
    println!(
        "bags: {}, width: {}, height: {}",
        td.num_nodes(),
        td.width(),
        td.height()
    );
    if let Some(out) = &args.out {
        write_file(out, &io::write_td(&td, graph.num_vertices()))?;
    }
    Ok(Status::Yes)
}

fn mcc_source(path: Option<&Path>, args: &MccArgs) -> anyhow::Result<MccInstance> {
    match path {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(io::read_mcc(&text).with_context(|| format!("parsing {}", p.display()))?)
        }
        None => Ok(random_mcc(args.k, args.n, args.p, args.seed, args.plant)?),
    }
}

fn generate(cmd: GenerateCommand) -> anyhow::Result<Status> {
    match cmd {
        GenerateCommand::Tower { i, j, out } => {
            let graph = build_tower(i, j)?;
            println!("T({i}, {j}): {} vertices", graph.num_vertices());
            io::save_graph(&out, &graph)?;
        }
        GenerateCommand::Mcc { source, out } => {
            let mcc = mcc_source(None, &source)?;
            println!(
                "k = {}, n = {}, edges = {}",
                mcc.k(),
                mcc.n(),
                mcc.num_edges()
            );
            write_file(&out, &io::write_mcc(&mcc))?;
        }
        GenerateCommand::HardnessTd(args) => hardness(args, Construction::Td)?,
        GenerateCommand::HardnessPw(args) => hardness(args, Construction::Pw)?,
    }
    Ok(Status::Yes)
}

fn hardness(args: HardnessArgs, construction: Construction) -> anyhow::Result<()> {
    let mcc = mcc_source(args.mcc.as_deref(), &args.source)?;
    let predicted = match construction {
        Construction::Td => predict_td_size(&mcc, args.colors)?,
        Construction::Pw => predict_pw_size(&mcc, args.colors)?,
    };
    match predicted {
        Some(p) => println!("predicted vertices: {p}"),
        None => println!("predicted vertices: overflow"),
    }
    let opts = GeneratorOptions {
        size_cap: args.size_cap,
    };
    let generated = match construction {
        Construction::Td => build_hardness_td_with(&mcc, args.colors, &opts)?,
        Construction::Pw => build_hardness_pw_with(&mcc, args.colors, &opts)?,
    };
    println!(
        "vertices: {}, edges: {}, colors: {}, deficiency: {}",
        generated.graph().num_vertices(),
        generated.graph().num_edges(),
        generated.num_colors(),
        generated.deficiency()
    );
    io::save_graph(&args.out, generated.graph())?;
    let sidecar = args.sidecar.unwrap_or_else(|| {
        let mut p = args.out.clone().into_os_string();
        p.push(".json");
        p.into()
    });
    write_file(&sidecar, &io::write_sidecar(&generated))?;
    println!("wrote {} and {}", args.out.display(), sidecar.display());
    Ok(())
}

fn replay(sidecar: &io::Sidecar) -> anyhow::Result<GeneratedInstance> {
    let mcc = sidecar.mcc.to_instance()?;
    let opts = GeneratorOptions {
        size_cap: sidecar.num_vertices.max(1),
    };
    let generated = match sidecar.construction {
        Construction::Td => build_hardness_td_with(&mcc, sidecar.num_colors, &opts)?,
        Construction::Pw => build_hardness_pw_with(&mcc, sidecar.num_colors, &opts)?,
    };
    if generated.deficiency() != sidecar.deficiency {
        bail!("sidecar deficiency does not match the replayed construction");
    }
    Ok(generated)
}

fn witness(args: WitnessArgs) -> anyhow::Result<Status> {
    let text = fs::read_to_string(&args.instance_sidecar)
        .with_context(|| format!("reading {}", args.instance_sidecar.display()))?;
    let sidecar = io::read_sidecar(&text)?;
    let generated = replay(&sidecar)?;
    if let Some(path) = &args.graph {
        if &load_graph(path)? != generated.graph() {
            bail!("{} differs from the replayed construction", path.display());
        }
    }
    let clique = match args
        .clique
        .or_else(|| generated.mcc.planted().map(<[usize]>::to_vec))
    {
        Some(c) => c,
        None => bail!("no --clique given and the source instance has no planted clique"),
    };
    let coloring: Coloring = match witness_coloring(&generated, &clique) {
        Ok(c) => c,
        Err(Error::Precondition(msg)) => {
            println!("invalid: {msg}");
            return Ok(Status::No);
        }
        Err(e) => return Err(e.into()),
    };
    let report = verify(&generated.instance, &coloring)?;
    println!(
        "witness valid: {}, max deficiency {} of {}",
        report.valid,
        report.max_deficiency,
        generated.deficiency()
    );
    if let Some(out) = &args.out {
        write_file(out, &io::write_coloring(&coloring, generated.num_colors()))?;
    }
    Ok(if report.valid {
        Status::Yes
    } else {
        Status::No
    })
}

fn params(args: ParamsArgs) -> anyhow::Result<Status> {
    let graph = load_graph(&args.graph)?;
    let show = |r: defco::Result<BTreeSet<usize>>| match r {
        Ok(s) => s.len().to_string(),
        Err(Error::CapExceeded { cap }) => format!("> {cap}"),
        Err(e) => format!("error: {e}"),
    };
    println!("n: {}", graph.num_vertices());
    println!("m: {}", graph.num_edges());
    println!("max degree: {}", graph.max_degree());
    println!("degeneracy: {}", graph.degeneracy());
    println!("fvs: {}", show(exact_fvs(&graph, args.cap)));
    println!("vc: {}", show(exact_vc(&graph, args.cap)));
    println!(
        "heuristic width: {} (min-degree), {} (min-fill)",
        heuristic_decomposition(&graph, Strategy::MinDegree).width(),
        heuristic_decomposition(&graph, Strategy::MinFill).width()
    );
    Ok(Status::Yes)
}
