//! Command-line front end. [`run`] is the whole program minus process exit.
//!
//! Exit codes: 0 success, 1 a verdict failed (an audit or replay found a
//! violation), 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tpmc_core::cardinality::{solve_cc_with, sweep_cardinality_with};
use tpmc_core::conflict::{apply_swap, find_swap_subgraph, ConflictGraph};
use tpmc_core::instance::{Cardinality, TpmcInstance};
use tpmc_core::matching::{max_weight_matching_card_with, reduce_matching};
use tpmc_core::polytope::HullAudit;
use tpmc_core::random::{random_instance_with, RandomInstanceConfig};
use tpmc_core::replay::{replay_cut_matching, replay_triple_demand};
use tpmc_core::{min_cost_transport, Selection};

use crate::format::{parse_graph, parse_instance, parse_rational, parse_solution, to_pretty, write_instance};
use crate::parallel::{enumeration_solver, solve_exact_parallel};
use crate::report::{
    AuditDoc, ConflictGraphReport, CutMatchingDoc, MatchingReport, ReplayReport, SolveReport, SweepReport,
    TripleDemandDoc,
};

#[derive(Debug, Parser)]
#[command(name = "tpmc", version, about = "Exact solvers for the transportation problem with market choice")]
struct Cli {
    /// Print tables instead of JSON documents.
    #[arg(long, global = true)]
    human: bool,
    /// Worker threads for enumeration.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal solution, optionally under a cardinality bound on rejected markets.
    Solve(SolveArgs),
    /// Optimum with exactly k rejected markets for every k.
    Sweep {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Maximum-weight matching with at most k edges.
    Matching {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Conflict graph of two integral solutions of a unit-supply instance.
    ConflictGraph {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long = "sol-a")]
        sol_a: PathBuf,
        #[arg(long = "sol-b")]
        sol_b: PathBuf,
    },
    /// Integrality audits.
    Audit {
        #[command(subcommand)]
        target: AuditTarget,
    },
    /// Replays both counterexample fixtures and prints PASS or FAIL.
    ReplayExamples,
    /// Random instance document.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Enumerate every market selection.
    Exhaustive,
    /// Multiplier search plus swap walk; needs demands in {1, 2}.
    Lagrangian,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "exhaustive")]
    method: Method,
    /// Bound on the number of rejected markets: `<=k`, `=k` or `>=k`.
    #[arg(long, value_parser = parse_card)]
    card: Option<Cardinality>,
    /// Comma-separated accepted market ids; solves only the transport problem.
    #[arg(long, conflicts_with_all = ["card", "method"])]
    fixed_selection: Option<String>,
}

#[derive(Debug, Subcommand)]
enum AuditTarget {
    /// Hull of integral points cut by `Σ z <= k` against the objective battery.
    Hull {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Fractional vertex of a bipartite perfect-matching polytope with one cut.
    CutMatching,
    /// All-halves point of the instance with a demand of 3.
    TripleDemand,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    supplies: usize,
    #[arg(long)]
    markets: usize,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=3))]
    demand_cap: u64,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    supply_cap: u64,
    /// Edge probability as `p/q`.
    #[arg(long, default_value = "1/2", value_parser = parse_density)]
    density: (u32, u32),
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    cost_min: i64,
    #[arg(long, default_value_t = 10, allow_negative_numbers = true)]
    cost_max: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    revenue_min: i64,
    #[arg(long, default_value_t = 20, allow_negative_numbers = true)]
    revenue_max: i64,
    /// Largest denominator of generated costs and revenues.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    denominator_cap: u32,
}

fn parse_card(s: &str) -> Result<Cardinality, String> {
    s.parse()
}

fn parse_density(s: &str) -> Result<(u32, u32), String> {
    let r = parse_rational(s).ok_or_else(|| format!("invalid density `{s}`"))?;
    let (p, q) = (u32::try_from(r.numer()), u32::try_from(r.denom()));
    match (p, q) {
        (Ok(p), Ok(q)) if p <= q => Ok((p, q)),
        _ => Err(format!("density `{s}` must be a fraction in [0, 1]")),
    }
}

/// Outcome of a subcommand before it is written out.
struct Output {
    text: String,
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, failed: false }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_instance(path: &Path) -> Result<TpmcInstance, String> {
    parse_instance(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn render<T: serde::Serialize>(human: bool, doc: &T, table: impl FnOnce(&T) -> String) -> String {
    if human {
        table(doc)
    } else {
        to_pretty(doc)
    }
}

fn solve(args: &SolveArgs, human: bool, jobs: usize) -> Result<Output, String> {
    let inst = load_instance(&args.instance)?;
    let report = if let Some(list) = &args.fixed_selection {
        let mut accepted = Vec::new();
        for id in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            accepted.push(inst.market_index(id).ok_or_else(|| format!("unknown market `{id}`"))?);
        }
        let sel = Selection::from_accepted(inst.num_markets(), accepted);
        let res = min_cost_transport(&inst, &sel);
        let sol = res.is_optimal().then(|| inst.integral_solution(&res.flow, |j| !sel.accepts(j)));
        SolveReport::new(&inst, "fixed_selection", None, sol.as_ref(), None)
    } else {
        let bound = args.card.map(|c| c.to_string());
        match args.method {
            Method::Exhaustive => {
                let sol = solve_exact_parallel(&inst, args.card, jobs).map_err(|e| e.to_string())?;
                SolveReport::new(&inst, "exhaustive", bound, sol.as_ref(), None)
            }
            Method::Lagrangian => {
                let card = args.card.unwrap_or(Cardinality::at_most(inst.num_markets()));
                let mut solver = enumeration_solver(&inst, jobs).map_err(|e| e.to_string())?;
                let res = solve_cc_with(&inst, card, &mut solver).map_err(|e| e.to_string())?;
                let bound = Some(card.to_string());
                match &res {
                    Some(r) => SolveReport::new(&inst, "lagrangian", bound, Some(&r.solution), Some(&r.certificate)),
                    None => SolveReport::new(&inst, "lagrangian", bound, None, None),
                }
            }
        }
    };
    Ok(Output::ok(render(human, &report, SolveReport::human)))
}

fn conflict_graph(instance: &Path, a: &Path, b: &Path, human: bool) -> Result<Output, String> {
    let inst = load_instance(instance)?;
    let sol_a = parse_solution(&inst, &read(a)?).map_err(|e| format!("{}: {e}", a.display()))?;
    let sol_b = parse_solution(&inst, &read(b)?).map_err(|e| format!("{}: {e}", b.display()))?;
    let g = ConflictGraph::build(&inst, &sol_a, &sol_b).map_err(|e| e.to_string())?;
    let (k1, k2) = g.cardinalities();
    let swap = if k1 + 2 <= k2 {
        let sub = find_swap_subgraph(&g).map_err(|e| e.to_string())?;
        let out = apply_swap(&g, &sub.nodes).map_err(|e| e.to_string())?;
        Some((sub, out))
    } else {
        None
    };
    let report = ConflictGraphReport::new(&g, swap.as_ref().map(|(s, o)| (s, o))).map_err(|e| e.to_string())?;
    Ok(Output::ok(render(human, &report, ConflictGraphReport::human)))
}

fn audit(target: &AuditTarget, human: bool) -> Result<Output, String> {
    match target {
        AuditTarget::Hull { instance, k } => {
            let inst = load_instance(instance)?;
            if *k > inst.num_markets() {
                return Err(format!("k = {k} exceeds the {} markets", inst.num_markets()));
            }
            let audit = HullAudit::for_instance(&inst).map_err(|e| e.to_string())?;
            let report = audit.check(Cardinality::at_most(*k));
            let doc = AuditDoc::new(&report);
            let text = render(human, &doc, |d| d.human(&report));
            Ok(Output { text, failed: !report.holds() })
        }
        AuditTarget::CutMatching => {
            let doc = CutMatchingDoc::new(&replay_cut_matching().map_err(|e| e.to_string())?);
            Ok(Output { failed: !doc.passed, text: render(human, &doc, CutMatchingDoc::human) })
        }
        AuditTarget::TripleDemand => {
            let doc = TripleDemandDoc::new(&replay_triple_demand().map_err(|e| e.to_string())?);
            Ok(Output { failed: !doc.passed, text: render(human, &doc, TripleDemandDoc::human) })
        }
    }
}

fn gen(args: &GenArgs) -> Result<Output, String> {
    if args.cost_min > args.cost_max || args.revenue_min > args.revenue_max {
        return Err("range minimum exceeds maximum".into());
    }
    let cfg = RandomInstanceConfig {
        supplies: args.supplies,
        markets: args.markets,
        supply_cap: args.supply_cap,
        demand_cap: args.demand_cap,
        density: args.density,
        cost_range: (args.cost_min, args.cost_max),
        revenue_range: (args.revenue_min, args.revenue_max),
        denominator_cap: args.denominator_cap,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    Ok(Output::ok(write_instance(&random_instance_with(&cfg, &mut rng))))
}

fn dispatch(cli: &Cli) -> Result<Output, String> {
    let human = cli.human;
    let jobs = usize::from(cli.jobs);
    match &cli.command {
        Command::Solve(args) => solve(args, human, jobs),
        Command::Sweep { instance } => {
            let inst = load_instance(instance)?;
            let mut solver = enumeration_solver(&inst, jobs).map_err(|e| e.to_string())?;
            let rows = sweep_cardinality_with(&inst, &mut solver).map_err(|e| e.to_string())?;
            Ok(Output::ok(render(human, &SweepReport::new(&rows), SweepReport::human)))
        }
        Command::Matching { graph, k } => {
            let g = parse_graph(&read(graph)?).map_err(|e| format!("{}: {e}", graph.display()))?;
            let (inst, _) = reduce_matching(&g);
            let mut solver = enumeration_solver(&inst, jobs).map_err(|e| e.to_string())?;
            let r = max_weight_matching_card_with(&g, *k, &mut solver).map_err(|e| e.to_string())?;
            Ok(Output::ok(render(human, &MatchingReport::new(&g, *k, &r), MatchingReport::human)))
        }
        Command::ConflictGraph { instance, sol_a, sol_b } => conflict_graph(instance, sol_a, sol_b, human),
        Command::Audit { target } => audit(target, human),
        Command::ReplayExamples => {
            let a = CutMatchingDoc::new(&replay_cut_matching().map_err(|e| e.to_string())?);
            let b = TripleDemandDoc::new(&replay_triple_demand().map_err(|e| e.to_string())?);
            let report = ReplayReport::new(a, b);
            Ok(Output { failed: !report.passed(), text: render(human, &report, ReplayReport::human) })
        }
        Command::Gen(args) => gen(args),
    }
}

/// Runs the tool on `args` (program name first), writing documents to `out`
/// and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    match dispatch(&cli) {
        Ok(output) => {
            if out.write_all(output.text.as_bytes()).is_err() {
                return 2;
            }
            i32::from(output.failed)
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
