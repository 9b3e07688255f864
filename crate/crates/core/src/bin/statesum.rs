//! Command-line front end: compute invariants of Heegaard diagrams over
//! finite-dimensional Hopf algebras and run the library's check suites.
//!
//! Two subcommands:
//!
//! - `statesum invariant` evaluates a diagram (built-in or JSON file) over
//!   an algebra (built-in or JSON file), by the crossing state sum, the
//!   two-box network, or both (asserting equality).
//! - `statesum check` runs a named verification suite (`hopf-axioms`,
//!   `identities`, `duality`, `moves`, `oracle`) and reports one pass/fail
//!   line per check.
//!
//! All values print as exact field elements; `--decimal` adds a clearly
//! marked approximation. `--json` emits the report as deterministic JSON:
//! identical inputs and seed give byte-identical output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use statesum::graphdual::{
    builtin_graph, check_duality, ngon_check, random_spherical_graphs, SphericalGraph,
};
use statesum::heegaard::{
    builtin_code, builtin_planar, derive_code, HeegaardCode, Layer, PlanarHeegaardDiagram,
};
use statesum::hopf::{builtin_hopf, identity_suite, HopfAlgebra, HopfData};
use statesum::kuperberg::{invariant, invariant_oracle_group};
use statesum::planar::planar_invariant;
use statesum::report::RunReport;
use statesum::scalars::{BaseRing, BaseScalar};
use statesum::groups::GroupTable;
use statesum::{Error, Result};

#[derive(Parser)]
#[command(
    name = "statesum",
    version,
    about = "Exact 3-manifold invariants from Heegaard diagrams and Hopf algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the invariant of a Heegaard diagram over a Hopf algebra.
    Invariant(InvariantArgs),
    /// Run a verification suite and report per-check pass/fail.
    Check(CheckArgs),
}

#[derive(Args)]
struct InvariantArgs {
    /// Built-in diagram: s3_genus0, s3_genus1, s2xs1, lens(p,q),
    /// l31_connsum_s2xs1, or stab(...) of any of these.
    #[arg(long, conflicts_with = "diagram")]
    builtin: Option<String>,

    /// Path to a diagram JSON file (crossing code or planar form).
    #[arg(long)]
    diagram: Option<PathBuf>,

    /// Hopf algebra: built-in name (ZmodGroupAlgebra(m), S3GroupAlgebra,
    /// D4GroupAlgebra, Q8GroupAlgebra, dual(...)) or a JSON file path.
    #[arg(long)]
    hopf: String,

    /// Base ring for built-in algebras: Q or F<p>.
    #[arg(long, default_value = "Q")]
    ring: String,

    /// Evaluation route; `both` computes the state sum and the network
    /// value and fails (exit 4) unless they agree.
    #[arg(long, value_enum, default_value_t = Method::Kuperberg)]
    method: Method,

    /// Emit the report as deterministic JSON instead of text.
    #[arg(long)]
    json: bool,

    /// Additionally render rational values as decimal approximations.
    #[arg(long)]
    decimal: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Kuperberg,
    Planar,
    Both,
}

impl Method {
    fn as_str(self) -> &'static str {
        match self {
            Method::Kuperberg => "kuperberg",
            Method::Planar => "planar",
            Method::Both => "both",
        }
    }
}

#[derive(Args)]
struct CheckArgs {
    /// Which suite to run.
    #[arg(value_enum, value_name = "SUITE")]
    suite_arg: Option<Suite>,

    /// Alias for the positional suite name.
    #[arg(long, value_enum, conflicts_with = "suite_arg")]
    suite: Option<Suite>,

    /// Hopf algebra (built-in name or JSON path); used by hopf-axioms,
    /// identities, duality, and moves.
    #[arg(long)]
    hopf: Option<String>,

    /// Base ring for built-in algebras: Q or F<p>.
    #[arg(long, default_value = "Q")]
    ring: String,

    /// Graph for the duality suite: built-in name (mixed_multigraph,
    /// ngon(n), isolated(k)) or a JSON path. Omit to run the full battery.
    #[arg(long)]
    graph: Option<String>,

    /// Built-in diagram name; used by moves and oracle.
    #[arg(long, conflicts_with = "diagram")]
    builtin: Option<String>,

    /// Path to a diagram JSON file; used by moves and oracle.
    #[arg(long)]
    diagram: Option<PathBuf>,

    /// Group for the oracle suite (Z1..Z12, S3, D4, Q8). Omit to sweep
    /// Z2..Z6 and S3.
    #[arg(long)]
    group: Option<String>,

    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Fan suites out over this many threads; results keep input order.
    #[arg(long)]
    jobs: Option<usize>,

    /// Emit the report as deterministic JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    HopfAxioms,
    Identities,
    Duality,
    Moves,
    Oracle,
}

impl Suite {
    fn as_str(self) -> &'static str {
        match self {
            Suite::HopfAxioms => "hopf-axioms",
            Suite::Identities => "identities",
            Suite::Duality => "duality",
            Suite::Moves => "moves",
            Suite::Oracle => "oracle",
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Invariant(args) => cmd_invariant(args),
        Command::Check(args) => cmd_check(args),
    }
}

/// A diagram input, in whichever form the source provided.
enum DiagramInput {
    Code(HeegaardCode),
    Planar(PlanarHeegaardDiagram),
}

impl DiagramInput {
    /// The crossing code, deriving it from the planar form if needed.
    fn code(&self) -> Result<HeegaardCode> {
        match self {
            DiagramInput::Code(code) => Ok(code.clone()),
            DiagramInput::Planar(phd) => derive_code(phd),
        }
    }

    fn planar(&self) -> Result<&PlanarHeegaardDiagram> {
        match self {
            DiagramInput::Planar(phd) => Ok(phd),
            DiagramInput::Code(_) => Err(Error::Invalid(
                "this evaluation needs a planar diagram input, but the input \
                 is a bare crossing code"
                    .into(),
            )),
        }
    }
}

/// Loads a diagram and records its digest. Built-in names resolve to the
/// planar form (every catalog entry has one); files are sniffed by their
/// top-level keys.
fn load_diagram(
    builtin: &Option<String>,
    diagram: &Option<PathBuf>,
    prefer_planar: bool,
    report: &mut RunReport,
) -> Result<DiagramInput> {
    match (builtin, diagram) {
        (Some(name), None) => {
            if prefer_planar {
                let phd = builtin_planar(name)?;
                report.add_input("diagram", name, &phd.to_json_string());
                Ok(DiagramInput::Planar(phd))
            } else {
                let code = builtin_code(name)?;
                report.add_input("diagram", name, &code.to_json_string());
                Ok(DiagramInput::Code(code))
            }
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            report.add_input("diagram", path.display().to_string(), &text);
            let value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("bad diagram JSON: {e}")))?;
            let keys = value.as_object().map(|o| o.contains_key("boxes"));
            match keys {
                Some(true) => Ok(DiagramInput::Planar(PlanarHeegaardDiagram::from_json_str(
                    &text,
                )?)),
                Some(false) => Ok(DiagramInput::Code(HeegaardCode::from_json_str(&text)?)),
                None => Err(Error::Parse("diagram JSON must be an object".into())),
            }
        }
        _ => Err(Error::Invalid(
            "provide exactly one of --builtin or --diagram".into(),
        )),
    }
}

/// Loads a Hopf algebra from a built-in name or a JSON file and records
/// its digest.
fn load_hopf(source: &str, ring: BaseRing, report: &mut RunReport) -> Result<HopfAlgebra> {
    if Path::new(source).exists() {
        let text = fs::read_to_string(source)?;
        report.add_input("hopf", source, &text);
        HopfAlgebra::new(HopfData::from_json(&text)?)
    } else {
        let algebra = builtin_hopf(source, ring)?;
        report.add_input("hopf", algebra.name(), &format!("{source}@{ring}"));
        Ok(algebra)
    }
}

/// Renders a value exactly, with an optional clearly marked approximation.
fn push_value(report: &mut RunReport, label: &str, value: &BaseScalar, decimal: bool) {
    report.add_result(label, value.to_exact_string());
    if decimal {
        if let BaseScalar::Q(r) = value {
            let approx = r.to_f64().map_or("?".to_string(), |f| format!("{f}"));
            report.add_result(format!("{label} (approx)"), format!("~ {approx}"));
        }
    }
}

fn finish(report: &mut RunReport, json: bool, started: Instant) {
    report.elapsed = Some(started.elapsed());
    if json {
        println!("{}", report.to_json_string());
    } else {
        print!("{}", report.render_text());
    }
}

fn cmd_invariant(args: InvariantArgs) -> Result<i32> {
    let started = Instant::now();
    let input_name = args
        .builtin
        .clone()
        .or_else(|| args.diagram.as_ref().map(|p| p.display().to_string()))
        .unwrap_or_default();
    let mut report = RunReport::new(format!(
        "statesum invariant {} --hopf {} --ring {} --method {}",
        if args.builtin.is_some() {
            format!("--builtin {input_name}")
        } else {
            format!("--diagram {input_name}")
        },
        args.hopf,
        args.ring,
        args.method.as_str()
    ));

    let ring = BaseRing::parse(&args.ring)?;
    let prefer_planar = args.method != Method::Kuperberg;
    let input = load_diagram(&args.builtin, &args.diagram, prefer_planar, &mut report)?;
    let algebra = load_hopf(&args.hopf, ring, &mut report)?;

    let mut exit = 0;
    match args.method {
        Method::Kuperberg => {
            let result = invariant(&input.code()?, &algebra)?;
            push_value(&mut report, "invariant", &result.value, args.decimal);
        }
        Method::Planar => {
            let value = planar_invariant(input.planar()?, &algebra)?;
            push_value(&mut report, "invariant", &value, args.decimal);
        }
        Method::Both => {
            let phd = input.planar()?;
            let network_value = planar_invariant(phd, &algebra)?;
            let state_sum = invariant(&derive_code(phd)?, &algebra)?.value;
            push_value(&mut report, "invariant (state sum)", &state_sum, args.decimal);
            push_value(&mut report, "invariant (network)", &network_value, args.decimal);
            let agree = state_sum == network_value;
            report.add_check("state sum and network evaluation agree", agree);
            if !agree {
                exit = 4;
            }
        }
    }

    finish(&mut report, args.json, started);
    Ok(exit)
}

fn cmd_check(args: CheckArgs) -> Result<i32> {
    let started = Instant::now();
    let suite = args
        .suite_arg
        .or(args.suite)
        .ok_or_else(|| Error::Invalid("name a suite to run, e.g. `statesum check identities`".into()))?;

    let mut command = format!("statesum check {}", suite.as_str());
    if let Some(hopf) = &args.hopf {
        command.push_str(&format!(" --hopf {hopf}"));
    }
    command.push_str(&format!(" --ring {}", args.ring));
    if let Some(graph) = &args.graph {
        command.push_str(&format!(" --graph {graph}"));
    }
    if let Some(builtin) = &args.builtin {
        command.push_str(&format!(" --builtin {builtin}"));
    }
    if let Some(diagram) = &args.diagram {
        command.push_str(&format!(" --diagram {}", diagram.display()));
    }
    if let Some(group) = &args.group {
        command.push_str(&format!(" --group {group}"));
    }
    command.push_str(&format!(" --seed {}", args.seed));
    let mut report = RunReport::new(command);

    let ring = BaseRing::parse(&args.ring)?;
    with_pool(args.jobs, || match suite {
        Suite::HopfAxioms => suite_hopf_axioms(&args, ring, &mut report),
        Suite::Identities => suite_identities(&args, ring, &mut report),
        Suite::Duality => suite_duality(&args, ring, &mut report),
        Suite::Moves => suite_moves(&args, ring, &mut report),
        Suite::Oracle => suite_oracle(&args, &mut report),
    })??;

    finish(&mut report, args.json, started);
    Ok(if report.all_pass() { 0 } else { 1 })
}

/// Runs `f` on a dedicated thread pool when --jobs is given; rayon's
/// order-preserving collects keep the output deterministic either way.
fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn require_hopf(args: &CheckArgs, ring: BaseRing, report: &mut RunReport) -> Result<HopfAlgebra> {
    let source = args.hopf.as_deref().ok_or_else(|| {
        Error::Invalid("this suite needs --hopf <name|path>".into())
    })?;
    load_hopf(source, ring, report)
}

fn suite_hopf_axioms(args: &CheckArgs, ring: BaseRing, report: &mut RunReport) -> Result<()> {
    let algebra = require_hopf(args, ring, report)?;
    report.absorb("", &algebra.check_axioms());
    Ok(())
}

fn suite_identities(args: &CheckArgs, ring: BaseRing, report: &mut RunReport) -> Result<()> {
    let algebra = require_hopf(args, ring, report)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    report.absorb("", &identity_suite(&algebra, &mut rng, 5)?);
    Ok(())
}

fn suite_duality(args: &CheckArgs, ring: BaseRing, report: &mut RunReport) -> Result<()> {
    let algebra = require_hopf(args, ring, report)?;

    let graphs: Vec<(String, SphericalGraph)> = match &args.graph {
        Some(source) => {
            let graph = if Path::new(source).exists() {
                let text = fs::read_to_string(source)?;
                report.add_input("graph", source, &text);
                SphericalGraph::from_json_str(&text)?
            } else {
                let graph = builtin_graph(source)?;
                report.add_input("graph", source, &graph.to_json_string()?);
                graph
            };
            vec![(source.clone(), graph)]
        }
        None => {
            let mut graphs = vec![(
                "mixed_multigraph".to_string(),
                builtin_graph("mixed_multigraph")?,
            )];
            for n in 1..=4 {
                graphs.push((format!("ngon({n})"), builtin_graph(&format!("ngon({n})"))?));
            }
            for (i, graph) in random_spherical_graphs(args.seed, 10, 4).into_iter().enumerate() {
                graphs.push((format!("random#{i}"), graph));
            }
            graphs
        }
    };

    let dual = algebra.dual();
    let duality_checks: Vec<(String, bool)> = graphs
        .par_iter()
        .map(|(name, graph)| -> Result<Vec<(String, bool)>> {
            let direct = check_duality(graph, &algebra)?;
            let dualized = check_duality(graph, &dual)?;
            Ok(vec![
                (format!("fourier duality on {name}"), direct.equal),
                (format!("fourier duality on {name} (dual algebra)"), dualized.equal),
            ])
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    for (name, pass) in duality_checks {
        report.add_check(name, pass);
    }

    if args.graph.is_none() {
        let ngon_checks: Vec<(usize, statesum::graphdual::NgonCheck)> = (1..=4usize)
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&n| Ok((n, ngon_check(n, &algebra)?)))
            .collect::<Result<Vec<_>>>()?;
        for (n, outcome) in ngon_checks {
            report.add_check(format!("cyclic identity n={n} (standard)"), outcome.standard);
            report.add_check(format!("cyclic identity n={n} (opposite)"), outcome.opposite);
        }
    }
    Ok(())
}

fn suite_moves(args: &CheckArgs, ring: BaseRing, report: &mut RunReport) -> Result<()> {
    let algebra = require_hopf(args, ring, report)?;
    let input = load_diagram(&args.builtin, &args.diagram, false, report)?;
    let code = input.code()?;
    let reference = invariant(&code, &algebra)?.value;
    report.add_result("invariant", reference.to_exact_string());

    let mut moves: Vec<(String, HeegaardCode)> = Vec::new();
    for (layer, label, circles) in [
        (Layer::Lower, "lower", &code.lower),
        (Layer::Upper, "upper", &code.upper),
    ] {
        for (index, circle) in circles.iter().enumerate() {
            for steps in 1..circle.len().max(1) {
                moves.push((
                    format!("rotate {label}[{index}] by {steps}"),
                    code.rotate_basepoint(layer, index, steps)?,
                ));
            }
            moves.push((
                format!("reverse {label}[{index}]"),
                code.reverse_circle(layer, index)?,
            ));
        }
    }
    moves.push(("stabilize once".to_string(), code.stabilize()));
    moves.push(("stabilize twice".to_string(), code.stabilize().stabilize()));

    let outcomes: Vec<(String, bool)> = moves
        .par_iter()
        .map(|(name, moved)| -> Result<(String, bool)> {
            let value = invariant(moved, &algebra)?.value;
            Ok((name.clone(), value == reference))
        })
        .collect::<Result<Vec<_>>>()?;
    for (name, pass) in outcomes {
        report.add_check(format!("{name} preserves the value"), pass);
    }
    Ok(())
}

fn suite_oracle(args: &CheckArgs, report: &mut RunReport) -> Result<()> {
    let input = load_diagram(&args.builtin, &args.diagram, false, report)?;
    let code = input.code()?;

    let groups: Vec<String> = match &args.group {
        Some(name) => vec![name.clone()],
        None => ["Z2", "Z3", "Z4", "Z5", "Z6", "S3"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    };

    let outcomes: Vec<(String, String, String, bool)> = groups
        .par_iter()
        .map(|name| -> Result<(String, String, String, bool)> {
            let table = GroupTable::by_name(name)?;
            let algebra = builtin_hopf(&group_algebra_name(name)?, BaseRing::Q)?;
            let value = invariant(&code, &algebra)?.value;
            let homs = invariant_oracle_group(&code, &table)?;
            let pass = value == BaseScalar::from_u64(homs, BaseRing::Q);
            Ok((name.clone(), value.to_exact_string(), homs.to_string(), pass))
        })
        .collect::<Result<Vec<_>>>()?;

    for (name, value, homs, pass) in outcomes {
        report.add_result(format!("invariant over Q[{name}]"), value.clone());
        report.add_result(format!("hom count into {name}"), homs.clone());
        report.add_check(
            format!("invariant {value} = hom count {homs} over {name}"),
            pass,
        );
    }
    Ok(())
}

/// Maps a group name to the built-in group-algebra name.
fn group_algebra_name(group: &str) -> Result<String> {
    if let Some(m) = group.strip_prefix('Z') {
        if m.parse::<u32>().is_ok() {
            return Ok(format!("ZmodGroupAlgebra({m})"));
        }
    }
    match group {
        "S3" => Ok("S3GroupAlgebra".to_string()),
        "D4" => Ok("D4GroupAlgebra".to_string()),
        "Q8" => Ok("Q8GroupAlgebra".to_string()),
        _ => Err(Error::Parse(format!(
            "no built-in group algebra for group {group:?}"
        ))),
    }
}
