use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use wsat_core::descriptor::{build_host, build_pattern};
use wsat_core::experiments::{
    isolated_edge_stats, stability_sweep, t2_regime_stats, threshold_estimate, ExperimentSpec, Metric, PValues,
};
use wsat_core::graph::gnp;
use wsat_core::percolation::{closure, verify_trace, PercolationTrace};
use wsat_core::solver::{construct_witness, predict, wsat_exact, Budget, Family};
use wsat_core::star::{find_structure, CoreMode};
use wsat_core::transference::{
    build_partition, check_properties, run_restoration, CliqueFamily, CoreAttachFamily, SaturatedFamily, StarFamily,
};
use wsat_core::{Graph, Mode, Pattern, Seed};

#[derive(Parser)]
#[command(name = "wsat", version, about = "Weak saturation numbers and H-bootstrap percolation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustive minimum weakly saturated subgraph search.
    Exact(ExactArgs),
    /// Closed-form value or bounds for a complete host.
    Predict(PredictArgs),
    /// Write one of the explicit saturated constructions.
    Construct(ConstructArgs),
    /// Percolation closure of a start graph inside a host.
    Closure(ClosureArgs),
    /// Replay a trace file against a host.
    VerifyTrace(VerifyArgs),
    /// Saturating structures for K_{1,t}.
    Structure {
        #[command(subcommand)]
        command: StructureCommand,
    },
    /// Transfer a saturated family to a random host.
    Transfer {
        #[command(subcommand)]
        command: TransferCommand,
    },
    /// Monte Carlo runs on G(n, p).
    Experiment {
        #[command(subcommand)]
        command: ExperimentCommand,
    },
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    host: String,
    #[arg(long)]
    pattern: String,
    /// Restored copies must respect the host bipartition.
    #[arg(long)]
    bipartite: bool,
    #[arg(long)]
    budget_subsets: Option<u64>,
    #[arg(long)]
    budget_ms: Option<u64>,
    /// Skip subsets that leave a low-degree vertex with missing edges.
    #[arg(long)]
    prune: bool,
    #[arg(long)]
    json: bool,
    /// Write the witness graph here.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Write the witness trace here.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long)]
    host: String,
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    bipartite: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Lovasz,
    StarCore,
    BarbellCliques,
    CoreAttach,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    s: Option<usize>,
    #[arg(short = 't', long)]
    t: Option<usize>,
    /// Pattern for core-attach.
    #[arg(long)]
    pattern: Option<String>,
    /// Core graph file for core-attach.
    #[arg(long)]
    core: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClosureArgs {
    #[arg(long)]
    host: String,
    #[arg(long)]
    pattern: String,
    /// Start graph file on the host's vertices.
    #[arg(long)]
    initial: PathBuf,
    #[arg(long)]
    bipartite: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    host: String,
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    trace: PathBuf,
    #[arg(long)]
    bipartite: bool,
}

#[derive(Subcommand)]
enum StructureCommand {
    /// Find a spanning saturating structure.
    Find(StructureArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum CoreChoice {
    Kt,
}

#[derive(Args)]
struct StructureArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(short = 't', long)]
    t: usize,
    #[arg(long, value_enum, conflicts_with = "core_file")]
    core: Option<CoreChoice>,
    #[arg(long)]
    core_file: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum TransferCommand {
    /// Partition, property check and restoration on one G(n, p) sample.
    Demo(TransferArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TransferFamily {
    Star,
    Lovasz,
    File,
}

#[derive(Args)]
struct TransferArgs {
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum)]
    family: Option<TransferFamily>,
    /// Core graph for the file family.
    #[arg(long)]
    core_file: Option<PathBuf>,
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Stability frequency per probability.
    Sweep(SweepArgs),
    /// Crossing of frequency 1/2 for several n.
    Threshold(ThresholdArgs),
    /// Component regimes for t = 2.
    T2(RegimeArgs),
    /// Isolated edge counts.
    Isolated(RegimeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Fast,
    Exact,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    n: usize,
    #[arg(short = 't', long)]
    t: usize,
    /// Multiples of p(n, t).
    #[arg(long, value_delimiter = ',', conflicts_with = "p")]
    pmul: Vec<f64>,
    /// Explicit probabilities.
    #[arg(long, value_delimiter = ',')]
    p: Vec<f64>,
    #[arg(long)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "fast")]
    metric: MetricArg,
    /// Per-trial subset limit for the exact metric.
    #[arg(long)]
    budget_subsets: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(short = 't', long)]
    t: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    pmul: Vec<f64>,
    #[arg(long)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sweep cells as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Crossing table as CSV.
    #[arg(long)]
    ratios: Option<PathBuf>,
}

#[derive(Args)]
struct RegimeArgs {
    #[arg(long)]
    n: usize,
    /// Edge probability; defaults to 2 ln n / n for t2 and 1/(n ln n) for isolated.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Exact(a) => exact(a),
        Command::Predict(a) => predict_cmd(a),
        Command::Construct(a) => construct(a),
        Command::Closure(a) => closure_cmd(a),
        Command::VerifyTrace(a) => verify(a),
        Command::Structure {
            command: StructureCommand::Find(a),
        } => structure(a),
        Command::Transfer {
            command: TransferCommand::Demo(a),
        } => transfer(a),
        Command::Experiment { command } => experiment(command),
    }
}

fn exact(a: ExactArgs) -> Result<ExitCode> {
    let (host, host_desc) = build_host(&a.host)?;
    let (pattern, pattern_desc) = build_pattern(&a.pattern)?;
    let budget = Budget {
        max_subsets: a.budget_subsets,
        max_millis: a.budget_ms,
        degree_prune: a.prune,
    };
    let cert = wsat_exact(&host, &pattern, Mode::from_flag(a.bipartite), budget)?;
    let prediction = match (host_desc, pattern_desc) {
        (Some(h), Some(p)) => predict(h, p, a.bipartite),
        _ => None,
    };
    if let Some(path) = &a.witness {
        cert.witness.write_file(path)?;
    }
    if let Some(path) = &a.trace {
        write(path, &cert.trace.to_json())?;
    }
    if a.json {
        let value = json!({
            "host": a.host,
            "pattern": a.pattern,
            "bipartite": a.bipartite,
            "value": cert.value,
            "optimality": cert.optimality,
            "lower_bound": cert.lower_bound,
            "subsets_examined": cert.subsets_examined,
            "witness_edges": cert.witness.edges(),
            "prediction": prediction,
        });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        let mode = serde_json::to_value(cert.optimality)?;
        println!("wsat = {} ({})", cert.value, mode.as_str().unwrap_or_default());
        if cert.lower_bound < cert.value {
            println!("lower bound {}", cert.lower_bound);
        }
        println!("subsets examined {}", cert.subsets_examined);
        if let Some(p) = prediction {
            println!("prediction [{}, {}] from {}", p.lower, p.upper, p.source);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn predict_cmd(a: PredictArgs) -> Result<ExitCode> {
    let host = wsat_core::descriptor::parse_host(&a.host)?
        .descriptor
        .context("predict needs a kn or knl host")?;
    let pattern = wsat_core::descriptor::parse_pattern(&a.pattern)?
        .descriptor
        .context("predict needs a ks, kst, star or barbell pattern")?;
    let Some(p) = predict(host, pattern, a.bipartite) else {
        if a.json {
            println!("null");
        } else {
            println!("no prediction");
        }
        return Ok(ExitCode::SUCCESS);
    };
    if a.json {
        println!("{}", serde_json::to_string_pretty(&p)?);
    } else {
        if p.exact {
            println!("exact {}", p.lower);
        } else {
            println!("interval [{}, {}]", p.lower, p.upper);
        }
        println!("source {}", p.source);
        for c in &p.conditions_met {
            println!("  {}: {}", c.name, if c.met { "met" } else { "not met" });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn construct(a: ConstructArgs) -> Result<ExitCode> {
    let family = match a.family {
        FamilyKind::Lovasz => Family::Lovasz {
            n: a.n,
            s: a.s.context("lovasz needs --s")?,
        },
        FamilyKind::StarCore => Family::StarCore {
            n: a.n,
            t: a.t.context("star-core needs -t")?,
        },
        FamilyKind::BarbellCliques => Family::BarbellCliques {
            n: a.n,
            t: a.t.context("barbell-cliques needs -t")?,
        },
        FamilyKind::CoreAttach => Family::CoreAttach {
            n: a.n,
            pattern: build_pattern(a.pattern.as_deref().context("core-attach needs --pattern")?)?.0,
            core: Graph::read_file(a.core.as_deref().context("core-attach needs --core")?)?,
        },
    };
    let g = construct_witness(&family)?;
    emit(a.out.as_deref(), &g.to_text())?;
    Ok(ExitCode::SUCCESS)
}

fn closure_cmd(a: ClosureArgs) -> Result<ExitCode> {
    let (host, _) = build_host(&a.host)?;
    let (pattern, _) = build_pattern(&a.pattern)?;
    let mut initial = Graph::read_file(&a.initial)?;
    if initial.n() != host.n() {
        bail!("start graph has {} vertices, host has {}", initial.n(), host.n());
    }
    if initial.sides().is_none() {
        if let Some(sides) = host.sides() {
            initial.set_sides(Some(sides.to_vec()))?;
        }
    }
    let c = closure(&host, &initial, &pattern, Mode::from_flag(a.bipartite))?;
    if let Some(path) = &a.trace {
        write(path, &c.trace.to_json())?;
    }
    emit(a.out.as_deref(), &c.graph.to_text())?;
    if a.out.is_some() {
        println!(
            "closure has {} of {} host edges; saturated: {}",
            c.graph.edge_count(),
            host.edge_count(),
            c.graph.edge_count() == host.edge_count()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(a: VerifyArgs) -> Result<ExitCode> {
    let (host, _) = build_host(&a.host)?;
    let (pattern, _) = build_pattern(&a.pattern)?;
    let text = fs::read_to_string(&a.trace).with_context(|| format!("reading {}", a.trace.display()))?;
    let trace = PercolationTrace::from_json(&text, &host)?;
    match verify_trace(&host, &pattern, &trace, Mode::from_flag(a.bipartite)) {
        Ok(()) => {
            println!("valid: {} steps", trace.steps.len());
            Ok(ExitCode::SUCCESS)
        }
        Err(v) => {
            println!("invalid: {v}");
            Ok(ExitCode::from(1))
        }
    }
}

fn structure(a: StructureArgs) -> Result<ExitCode> {
    let g = Graph::read_file(&a.graph)?;
    let mode = match (&a.core_file, a.core) {
        (Some(path), _) => CoreMode::Given(Graph::read_file(path)?),
        (None, Some(CoreChoice::Kt) | None) => CoreMode::Clique,
    };
    let found = find_structure(&g, a.t, &mode);
    let text = match (&found, a.json) {
        (Some(s), true) => s.to_json() + "\n",
        (None, true) => "null\n".to_string(),
        (Some(s), false) => format!(
            "structure of length {} with core size {} and {} edges\nordering {:?}\n",
            s.len(),
            s.core_size,
            s.edges.len(),
            s.ordering
        ),
        (None, false) => "no spanning structure\n".to_string(),
    };
    emit(a.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn transfer(a: TransferArgs) -> Result<ExitCode> {
    let (pattern, _) = build_pattern(&a.pattern)?;
    let family: Box<dyn SaturatedFamily> = match (a.family, &a.pattern) {
        (Some(TransferFamily::File), _) => Box::new(CoreAttachFamily {
            pattern: pattern.clone(),
            core: Graph::read_file(a.core_file.as_deref().context("the file family needs --core-file")?)?,
        }),
        (Some(TransferFamily::Star), _) => Box::new(StarFamily { t: star_t(&pattern)? }),
        (Some(TransferFamily::Lovasz), _) => Box::new(CliqueFamily { s: clique_s(&pattern)? }),
        (None, p) if p.starts_with("star:") => Box::new(StarFamily { t: star_t(&pattern)? }),
        (None, p) if p.starts_with("ks:") => Box::new(CliqueFamily { s: clique_s(&pattern)? }),
        (None, _) => bail!("choose --family for this pattern"),
    };
    let g = gnp(a.n, a.p, Seed(a.seed))?;
    let partition = build_partition(&g, &pattern, family.as_ref())?;
    let properties = check_properties(&g, &partition, &pattern)?;
    let restoration = run_restoration(&g, &partition, &pattern, family.as_ref());

    println!("host G({}, {}) seed {}: {} edges", a.n, a.p, a.seed, g.edge_count());
    println!(
        "|K| = {}, |S| = {}, |Z| = {}, |T| = {}",
        partition.k.len(),
        partition.s.len(),
        partition.z.len(),
        partition.t.len()
    );
    for c in &properties.conditions {
        println!(
            "{}: {} ({} of {} instances violated)",
            c.name,
            if c.passed { "pass" } else { "fail" },
            c.violations,
            c.instances
        );
    }
    let (outcome, ok) = match &restoration {
        Ok(r) => {
            let replay = verify_trace(&g, &pattern, &r.trace, Mode::Free).is_ok() && r.trace.final_graph() == g;
            println!("|E(F)| = {}, family |E(F_n)| = {}, trace replays to G: {}", r.report.f_edges, r.report.family_edges, replay);
            if let Some(path) = &a.trace {
                write(path, &r.trace.to_json())?;
            }
            (
                json!({"ok": true, "report": r.report, "steps": r.steps, "trace_replays": replay}),
                replay,
            )
        }
        Err(e) => {
            println!("restoration stopped: {e}");
            (json!({"ok": false, "error": e.to_string()}), false)
        }
    };
    if let Some(path) = &a.report {
        let report = json!({
            "n": a.n,
            "p": a.p,
            "seed": a.seed,
            "pattern": a.pattern,
            "family": family.name(),
            "partition": partition,
            "properties": properties,
            "restoration": outcome,
        });
        write(path, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    }
    // A failed restoration is a defect only when the properties held.
    Ok(if ok || !properties.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn star_t(p: &Pattern) -> Result<usize> {
    let h = p.graph();
    if h.edge_count() + 1 != h.n() || h.degrees().iter().filter(|&&d| d > 1).count() > 1 {
        bail!("the star family needs a K_{{1,t}} pattern");
    }
    Ok(h.edge_count())
}

fn clique_s(p: &Pattern) -> Result<usize> {
    if !p.graph().is_complete() {
        bail!("the lovasz family needs a K_s pattern");
    }
    Ok(p.graph().n())
}

fn default_p(n: usize, p: Option<f64>, t2: bool) -> f64 {
    let ln = (n as f64).ln();
    p.unwrap_or(if t2 { 2.0 * ln / n as f64 } else { 1.0 / (n as f64 * ln) })
}

fn experiment(command: ExperimentCommand) -> Result<ExitCode> {
    match command {
        ExperimentCommand::Sweep(a) => {
            let p_values = match (a.pmul.is_empty(), a.p.is_empty()) {
                (false, _) => PValues::Multipliers(a.pmul),
                (true, false) => PValues::Explicit(a.p),
                (true, true) => bail!("give --pmul or --p"),
            };
            let spec = ExperimentSpec {
                n: a.n,
                t: a.t,
                p_values,
                trials: a.trials,
                seed: Seed(a.seed),
                metric: match a.metric {
                    MetricArg::Fast => Metric::FastStability,
                    MetricArg::Exact => Metric::ExactStability,
                },
                exact_budget: Budget {
                    max_subsets: a.budget_subsets,
                    ..Budget::default()
                },
            };
            let result = stability_sweep(&spec)?;
            emit(a.out.as_deref(), &result.to_csv())?;
            let incomplete: usize = result.cells.iter().map(|c| c.incomplete).sum();
            if incomplete > 0 {
                eprintln!("{incomplete} exact trials ran out of budget and count as failures");
            }
        }
        ExperimentCommand::Threshold(a) => {
            let result = threshold_estimate(&a.n, a.t, &a.pmul, a.trials, Seed(a.seed))?;
            emit(a.out.as_deref(), &result.to_csv())?;
            emit(a.ratios.as_deref(), &result.ratio_table())?;
            if a.ratios.is_some() {
                println!("crossing ratios spread by a factor {:.3}", result.spread());
            }
        }
        ExperimentCommand::T2(a) => {
            let p = default_p(a.n, a.p, true);
            let (summary, p) = t2_regime_stats(a.n, p, a.trials, Seed(a.seed))?;
            emit(a.out.as_deref(), &summary.to_csv(p))?;
        }
        ExperimentCommand::Isolated(a) => {
            let p = default_p(a.n, a.p, false);
            let s = isolated_edge_stats(a.n, p, a.trials, Seed(a.seed))?;
            emit(a.out.as_deref(), &s.to_csv())?;
            if a.out.is_some() {
                println!(
                    "mean {} (min {}, max {}), expected {}, standard error {}",
                    s.mean, s.min, s.max, s.expected, s.sigma_mean
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
