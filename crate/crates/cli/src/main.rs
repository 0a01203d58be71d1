//! Command-line front end for budget-constrained graph completion.
//!
//! Subcommands cover the exact solver (`number`, `index`), bounds (`upper`,
//! `lower`), the single-iteration machinery (`oneshot`, `outcomes`,
//! `verify`), whole-class reports (`scan`, `table`, `cover`), and plumbing
//! (`gen`, `dot`).  Graph arguments accept family shorthand, edge-list file
//! paths, or graph6 (`-` reads graph6 from standard input).
//!
//! Exit codes: 0 success, 1 usage or input error, 2 computation cap
//! exceeded, 3 verification failure (a failed `verify`, a `table` mismatch,
//! or a claim scan violation).
//!
//! Output goes to standard output in one of two formats: `human` prose or
//! line-oriented tab-separated `records` with a stable field order.
//! Diagnostics (search effort, cache activity, witness notes) go to
//! standard error, so records output stays machine-readable and repeated
//! runs produce identical standard output whether or not the cache is warm.

mod cache;
mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use marcello_core::{
    apply_plan, canonical_form, claims_scan, conjecture_scan, counting_lower_bound, emit_dot,
    emit_graph6, emit_schedule, enumerate_outcomes, marcello_upper, one_shot_completable,
    paper_table, parse_plan, parse_schedule, reveal_cover, verify_sequence, CheckReport,
    EngineError, ExperimentError, Graph, GlobalPlan, OneShot, Restriction, SearchConfig,
    SequenceCheck, Solver, SolverError, Value,
};

// ============================================================================
// Argument surface
// ============================================================================

#[derive(Parser)]
#[command(
    name = "marcello",
    version,
    about = "Iterated budget-constrained graph completion: exact numbers, bounds, certificates and scans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format: prose or stable tab-separated records.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Result cache file; the MARCELLO_CACHE environment variable supplies
    /// a path when the flag is absent.  No cache without either.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,

    /// Worker threads the solver may use (advisory; the exact search is
    /// deterministic regardless).
    #[arg(long, global = true, default_value_t = 1, value_name = "K")]
    threads: usize,

    /// Which plans iterations range over: every actor saturates its
    /// budget, or all valid plans.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Saturated)]
    mode: Mode,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Records,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Saturated,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Exact completion number, optionally writing a witness schedule.
    Number {
        graph: String,
        /// Write a minimal completing schedule to this file (forces a
        /// fresh solve even with a warm cache).
        #[arg(long, value_name = "PATH")]
        witness: Option<PathBuf>,
    },
    /// Greedy upper bound over several iteration orders.
    Upper {
        graph: String,
        /// Number of seeded random orderings tried beyond the two
        /// degree-based ones.
        #[arg(long, default_value_t = 8)]
        restarts: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the best run's schedule to this file.
        #[arg(long, value_name = "PATH")]
        witness: Option<PathBuf>,
    },
    /// Counting lower bound (size can at most triple per iteration).
    Lower { graph: String },
    /// Can one iteration complete the graph?  Either way a certificate is
    /// printed: an edge assignment or a deficient blocking set.
    Oneshot { graph: String },
    /// Completion index: every intermediate class on minimal schedules.
    Index { graph: String },
    /// Isomorphism classes reachable by one full iteration.
    Outcomes { graph: String },
    /// Replay a schedule file against the iteration rules; exit 3 unless
    /// it lawfully completes the graph.
    Verify { graph: String, witness: PathBuf },
    /// Exhaustive structural scans over all classes up to an order.
    Scan {
        /// Verify the proven structural statements (zero tolerance).
        #[arg(long, conflicts_with = "conjectures")]
        claims: bool,
        /// Probe the capacity conjecture (counterexamples are findings).
        #[arg(long)]
        conjectures: bool,
        #[arg(long, default_value_t = 5)]
        n: usize,
    },
    /// Regenerate the fixed-value table; exit 3 on any mismatch.
    Table,
    /// Greedy reveal cover of one order's classes.
    Cover {
        #[arg(long)]
        n: usize,
    },
    /// Emit a family member as graph6 (`gen path:7` or `gen path 7`).
    Gen {
        family: String,
        params: Option<String>,
    },
    /// Graphviz rendering; with --plan, the plan's added edges are dashed.
    Dot {
        graph: String,
        #[arg(long, value_name = "PATH")]
        plan: Option<PathBuf>,
    },
}

// ============================================================================
// Failure plumbing
// ============================================================================

/// A command failure, carrying the process exit code.
enum Failure {
    /// Bad arguments, unreadable input, unwritable output: exit 1.
    Usage(String),
    /// The computation exceeded a configured cap: exit 2.
    Cap(String),
    /// A replay, table or claim check did not hold: exit 3.
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Cap(_) => 2,
            Failure::Verification(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Cap(m) | Failure::Verification(m) => m,
        }
    }
}

fn solver_failure(e: SolverError) -> Failure {
    Failure::Cap(e.to_string())
}

fn engine_failure(e: EngineError) -> Failure {
    match e {
        EngineError::OrderAboveCap { .. } => Failure::Cap(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    }
}

fn experiment_failure(e: ExperimentError) -> Failure {
    match e {
        ExperimentError::OrderAboveCap { .. } => Failure::Cap(e.to_string()),
        ExperimentError::ParameterBelowMinimum { .. } => Failure::Usage(e.to_string()),
    }
}

// ============================================================================
// Entry
// ============================================================================

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let ctx = Context {
        format: cli.format,
        cache: cli.cache
            .or_else(|| std::env::var_os("MARCELLO_CACHE").map(PathBuf::from))
            .map(|path| cache::Cache::open(&path)),
        config: SearchConfig {
            restriction: match cli.mode {
                Mode::Saturated => Restriction::Saturated,
                Mode::All => Restriction::AllValid,
            },
            threads: cli.threads.max(1),
            ..SearchConfig::default()
        },
    };
    match run(cli.command, ctx) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

struct Context {
    format: Format,
    cache: Option<cache::Cache>,
    config: SearchConfig,
}

fn run(command: Command, mut ctx: Context) -> Result<(), Failure> {
    match command {
        Command::Number { graph, witness } => number(&mut ctx, &graph, witness.as_deref()),
        Command::Upper { graph, restarts, seed, witness } => {
            upper(&ctx, &graph, restarts, seed, witness.as_deref())
        }
        Command::Lower { graph } => lower(&ctx, &graph),
        Command::Oneshot { graph } => oneshot(&ctx, &graph),
        Command::Index { graph } => index(&ctx, &graph),
        Command::Outcomes { graph } => outcomes(&ctx, &graph),
        Command::Verify { graph, witness } => verify(&ctx, &graph, &witness),
        Command::Scan { claims, conjectures, n } => scan(&ctx, claims, conjectures, n),
        Command::Table => table(&ctx),
        Command::Cover { n } => cover(&ctx, n),
        Command::Gen { family, params } => gen(&family, params.as_deref()),
        Command::Dot { graph, plan } => dot(&graph, plan.as_deref()),
    }
}

fn resolve(arg: &str) -> Result<Graph, Failure> {
    input::resolve_graph(arg).map_err(|e| Failure::Usage(e.to_string()))
}

fn write_witness(path: &Path, plans: &[GlobalPlan]) -> Result<(), Failure> {
    std::fs::write(path, emit_schedule(plans))
        .map_err(|e| Failure::Usage(format!("cannot write witness {}: {e}", path.display())))?;
    eprintln!("witness schedule written to {}", path.display());
    Ok(())
}

// ============================================================================
// Value queries
// ============================================================================

fn number(ctx: &mut Context, arg: &str, witness: Option<&Path>) -> Result<(), Failure> {
    let g = resolve(arg)?;
    let form = canonical_form(&g);

    let cached = if witness.is_none() {
        ctx.cache.as_ref().and_then(|c| c.get(&form))
    } else {
        None
    };
    let value = match cached {
        Some(value) => {
            eprintln!("cache: hit for {}", form.as_str());
            eprintln!("solver expansions: 0");
            value
        }
        None => {
            let mut solver = Solver::new(ctx.config.clone());
            let result = solver.marcello_number(&g).map_err(solver_failure)?;
            eprintln!("solver expansions: {}", solver.stats().expansions);
            if let Some(path) = witness {
                write_witness(path, &result.witness)?;
            }
            if let Some(cache) = ctx.cache.as_mut() {
                cache.put(&form, result.value);
            }
            result.value
        }
    };

    match ctx.format {
        Format::Records => {
            println!("number\t{}\t{}\t{value}", emit_graph6(&g), form.as_str());
        }
        Format::Human => {
            describe(&g);
            println!("completion number: {}", spell(value));
        }
    }
    Ok(())
}

fn upper(
    ctx: &Context,
    arg: &str,
    restarts: u32,
    seed: u64,
    witness: Option<&Path>,
) -> Result<(), Failure> {
    let g = resolve(arg)?;
    let bound = match marcello_upper(&g, restarts, seed) {
        Ok(bound) => bound,
        Err(EngineError::EdgelessInput) => {
            match ctx.format {
                Format::Records => {
                    println!("upper\t{}\tinf\t{restarts}\t{seed}", emit_graph6(&g));
                }
                Format::Human => {
                    describe(&g);
                    println!("upper bound: never completes (no edges to grow from)");
                }
            }
            return Ok(());
        }
        Err(e) => return Err(engine_failure(e)),
    };
    if let Some(path) = witness {
        write_witness(path, &bound.witness)?;
    }
    match ctx.format {
        Format::Records => {
            println!("upper\t{}\t{}\t{restarts}\t{seed}", emit_graph6(&g), bound.iterations);
        }
        Format::Human => {
            describe(&g);
            println!(
                "upper bound: completes within {} iteration{} (greedy, {restarts} restarts, seed {seed})",
                bound.iterations,
                plural(bound.iterations as usize)
            );
        }
    }
    Ok(())
}

fn lower(ctx: &Context, arg: &str) -> Result<(), Failure> {
    let g = resolve(arg)?;
    let value = counting_lower_bound(&g);
    match ctx.format {
        Format::Records => println!("lower\t{}\t{value}", emit_graph6(&g)),
        Format::Human => {
            describe(&g);
            println!("lower bound: at least {}", spell(value));
        }
    }
    Ok(())
}

// ============================================================================
// Single-iteration queries
// ============================================================================

fn oneshot(ctx: &Context, arg: &str) -> Result<(), Failure> {
    let g = resolve(arg)?;
    let g6 = emit_graph6(&g);
    match one_shot_completable(&g) {
        Ok(OneShot::Completable(assignment)) => {
            let plan = assignment.to_plan();
            match ctx.format {
                Format::Records => println!("oneshot\t{g6}\tyes\t{}", inline_plan(&plan)),
                Format::Human => {
                    describe(&g);
                    println!("yes — one iteration completes it, for instance:");
                    for line in emit_schedule(std::slice::from_ref(&plan)).lines() {
                        println!("  {line}");
                    }
                }
            }
        }
        Ok(OneShot::Blocked(blocking)) => {
            let members = mask_list(blocking.vertices);
            match ctx.format {
                Format::Records => println!(
                    "oneshot\t{g6}\tno\t{members}\t{}/{}",
                    blocking.items_inside, blocking.capacity
                ),
                Format::Human => {
                    describe(&g);
                    println!(
                        "no — vertices {{{members}}} are missing {} edges among themselves, \
                         but their budgets cover only {}, and nobody else can add an edge \
                         with both ends inside the set",
                        blocking.items_inside, blocking.capacity
                    );
                }
            }
        }
        Err(EngineError::CompleteInput) => match ctx.format {
            Format::Records => println!("oneshot\t{g6}\tcomplete\t-"),
            Format::Human => {
                describe(&g);
                println!("already complete — no iteration is needed");
            }
        },
        Err(EngineError::EdgelessInput) => match ctx.format {
            Format::Records => println!("oneshot\t{g6}\tnever\t-"),
            Format::Human => {
                describe(&g);
                println!("no — an edgeless graph has no eligible vertex, ever");
            }
        },
        Err(e) => return Err(engine_failure(e)),
    }
    Ok(())
}

fn index(ctx: &Context, arg: &str) -> Result<(), Failure> {
    let g = resolve(arg)?;
    let mut solver = Solver::new(ctx.config.clone());
    let result = solver.marcello_index(&g).map_err(solver_failure)?;
    eprintln!("solver expansions: {}", solver.stats().expansions);
    match ctx.format {
        Format::Records => {
            println!(
                "index\t{}\t{}\t{}",
                emit_graph6(&g),
                result.number,
                result.index
            );
            for entry in &result.intermediates {
                println!(
                    "intermediate\t{}\t{}\t{}",
                    entry.layer,
                    entry.class.as_str(),
                    entry.number
                );
            }
        }
        Format::Human => {
            describe(&g);
            println!("completion number: {}", spell(result.number));
            println!(
                "distinct intermediate classes across all minimal schedules: {}",
                result.index
            );
            for entry in &result.intermediates {
                println!(
                    "  after iteration {}: {}  (own number {})",
                    entry.layer,
                    entry.class.as_str(),
                    entry.number
                );
            }
        }
    }
    Ok(())
}

fn outcomes(ctx: &Context, arg: &str) -> Result<(), Failure> {
    let g = resolve(arg)?;
    let classes = enumerate_outcomes(&g, ctx.config.restriction).map_err(engine_failure)?;
    match ctx.format {
        Format::Records => {
            println!("outcomes\t{}\t{}", emit_graph6(&g), classes.len());
            for class in classes.keys() {
                println!("outcome\t{}", class.as_str());
            }
        }
        Format::Human => {
            describe(&g);
            println!(
                "{} outcome class{} reachable in one iteration:",
                classes.len(),
                if classes.len() == 1 { "" } else { "es" }
            );
            for (class, representative) in &classes {
                let tag = if representative.is_complete() { "  (complete)" } else { "" };
                println!("  {}{tag}", class.as_str());
            }
        }
    }
    Ok(())
}

fn verify(ctx: &Context, arg: &str, witness: &Path) -> Result<(), Failure> {
    let g = resolve(arg)?;
    let text = std::fs::read_to_string(witness)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", witness.display())))?;
    let plans = parse_schedule(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", witness.display())))?;
    let verdict = verify_sequence(&g, &plans);
    let g6 = emit_graph6(&g);
    match &verdict {
        SequenceCheck::Completes { iterations } => {
            match ctx.format {
                Format::Records => println!("verify\t{g6}\tcompletes\t{iterations}"),
                Format::Human => println!(
                    "schedule is lawful and completes the graph in {iterations} iteration{}",
                    plural(*iterations)
                ),
            }
            Ok(())
        }
        SequenceCheck::FallsShort { missing } => {
            match ctx.format {
                Format::Records => println!("verify\t{g6}\tfalls-short\t{missing}"),
                Format::Human => println!(
                    "schedule is lawful but leaves {missing} edge{} missing",
                    plural(*missing)
                ),
            }
            Err(Failure::Verification(format!("{missing} edges still missing")))
        }
        SequenceCheck::Invalid { stage, violation } => {
            match ctx.format {
                Format::Records => println!("verify\t{g6}\tinvalid\t{}", stage + 1),
                Format::Human => {
                    println!("schedule breaks the rules in iteration {}: {violation}", stage + 1);
                }
            }
            Err(Failure::Verification(format!("iteration {} invalid: {violation}", stage + 1)))
        }
    }
}

// ============================================================================
// Reports
// ============================================================================

fn print_report(ctx: &Context, report: &CheckReport) {
    match ctx.format {
        Format::Human => print!("{}", report.render_human()),
        Format::Records => print!("{}", report.render_records()),
    }
}

fn scan(ctx: &Context, claims: bool, conjectures: bool, n: usize) -> Result<(), Failure> {
    if claims == conjectures {
        return Err(Failure::Usage(String::from(
            "choose exactly one of --claims or --conjectures",
        )));
    }
    let report = if claims {
        claims_scan(n).map_err(experiment_failure)?
    } else {
        conjecture_scan(n).map_err(experiment_failure)?
    };
    print_report(ctx, &report);
    if !report.all_sound() {
        return Err(Failure::Verification(format!("{} check(s) failed", report.failed())));
    }
    if claims && report.findings() > 0 {
        return Err(Failure::Verification(format!(
            "{} finding(s) in a zero-tolerance scan",
            report.findings()
        )));
    }
    Ok(())
}

fn table(ctx: &Context) -> Result<(), Failure> {
    let report = paper_table();
    print_report(ctx, &report);
    if !report.all_sound() || report.findings() > 0 {
        return Err(Failure::Verification(format!(
            "{} mismatch(es) in the fixed-value table",
            report.failed() + report.findings()
        )));
    }
    Ok(())
}

fn cover(ctx: &Context, n: usize) -> Result<(), Failure> {
    let cover = reveal_cover(n).map_err(experiment_failure)?;
    match ctx.format {
        Format::Records => {
            println!(
                "cover\t{}\t{}\t{}\t{}",
                cover.order,
                cover.universe.len(),
                cover.cover.len(),
                cover.index_sum
            );
            for member in &cover.cover {
                println!("cover-member\t{}\t{}", member.as_str(), cover.revealed[member].len());
            }
        }
        Format::Human => {
            println!(
                "order {}: {} classes to cover; greedy cover uses {} of them \
                 (their indices sum to {})",
                cover.order,
                cover.universe.len(),
                cover.cover.len(),
                cover.index_sum
            );
            for member in &cover.cover {
                println!(
                    "  {}  reveals {} class{}",
                    member.as_str(),
                    cover.revealed[member].len(),
                    if cover.revealed[member].len() == 1 { "" } else { "es" }
                );
            }
        }
    }
    Ok(())
}

// ============================================================================
// Plumbing
// ============================================================================

fn gen(family: &str, params: Option<&str>) -> Result<(), Failure> {
    let shorthand = match params {
        Some(p) => format!("{family}:{p}"),
        None => String::from(family),
    };
    let g = input::parse_shorthand(&shorthand)
        .map_err(|detail| Failure::Usage(format!("bad family shorthand {shorthand:?}: {detail}")))?;
    println!("{}", emit_graph6(&g));
    Ok(())
}

fn dot(arg: &str, plan_path: Option<&Path>) -> Result<(), Failure> {
    let g = resolve(arg)?;
    let (shown, added) = match plan_path {
        None => (g.clone(), Vec::new()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let plan = parse_plan(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
                .ok_or_else(|| {
                    Failure::Usage(format!(
                        "{}: expected exactly one plan block",
                        path.display()
                    ))
                })?;
            let (after, _) = apply_plan(&g, &plan)
                .map_err(|v| Failure::Verification(format!("plan does not replay: {v}")))?;
            let added = after
                .edges()
                .into_iter()
                .filter(|&(u, v)| !g.has_edge(u, v))
                .collect();
            (after, added)
        }
    };
    let rendered = emit_dot(&shown, &added).map_err(|e| Failure::Usage(e.to_string()))?;
    print!("{rendered}");
    Ok(())
}

// ============================================================================
// Formatting helpers
// ============================================================================

/// One line identifying the resolved graph, opening every human-format
/// answer so the reader can tell which graph the argument resolved to.
fn describe(g: &Graph) {
    println!("graph: {}  (order {}, size {})", emit_graph6(g), g.order(), g.size());
}

fn spell(value: Value) -> String {
    match value {
        Value::Finite(k) => k.to_string(),
        Value::Infinite => String::from("infinite (never completes)"),
    }
}

fn plural(count: usize) -> &'static str {
    if count == 1 {
        ""
    } else {
        "s"
    }
}

/// Renders a plan on one line: `initiator:targets` steps joined by `; `.
fn inline_plan(plan: &GlobalPlan) -> String {
    plan.steps
        .iter()
        .map(|step| {
            let targets: Vec<String> = step.added.iter().map(usize::to_string).collect();
            format!("{}:{}", step.initiator, targets.join(","))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn mask_list(mask: u64) -> String {
    let mut out = Vec::new();
    let mut t = mask;
    while t != 0 {
        out.push((t.trailing_zeros() as usize).to_string());
        t &= t - 1;
    }
    out.join(",")
}
