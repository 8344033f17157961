//! Command-line front end: generate graphs, build reductions, solve
//! instances, and run the verification and round-trip suites.
//!
//! Exit codes are stable for CI use: 0 when every check passes, 1 when a
//! check or solver run fails, 2 for usage and I/O errors.

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;

use schedred::blockint::BlockInt;
use schedred::formats::{
    parse_graph, parse_pattern, parse_solve_input, write_graph, write_reduction, AnyInstance,
    SolveInput,
};
use schedred::graphs::{random_nice, KPartiteGraph, PatternGraph};
use schedred::harness::{roundtrip_suite, verify_suite, ExperimentConfig};
use schedred::reduce::{build, build_eth, build_w, structure_check, VariantKind};
use schedred::report::{Check, Report};
use schedred::sched::{early_set_feasible, evaluate, witness_to_schedule, Instance, Value};
use schedred::solvers::{
    solve_lawler_moore, solve_pareto_with, solve_perm_bruteforce, solve_subset_bruteforce,
    ParetoOptions, SolveError, SolveResult, DEFAULT_STATE_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "schedred",
    version,
    about = "Reductions from multicolored-clique selection problems to single-machine \
             weighted-tardy-job scheduling, with exact solvers and verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random nice k-partite graph file
    Gen(GenArgs),
    /// Build a scheduling reduction from a graph file
    Reduce(ReduceArgs),
    /// Run an exact solver on a reduction or instance file
    Solve(SolveArgs),
    /// Compare solver verdicts against the brute-force selection oracle
    Roundtrip(SuiteArgs),
    /// Check golden digit strings, structure, witnesses, and carry-freeness
    Verify(SuiteArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    P,
    W,
}

impl VariantArg {
    fn kind(self) -> VariantKind {
        match self {
            VariantArg::P => VariantKind::PSharp,
            VariantArg::W => VariantKind::WSharp,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgArg {
    /// Permutation brute force (at most 9 jobs)
    Perm,
    /// Early-set brute force (at most 22 jobs)
    Subset,
    /// Pareto-front dynamic program (any value domain)
    Pareto,
    /// Time-horizon dynamic program (word-sized numerics only)
    Lm,
}

#[derive(Args)]
struct GenArgs {
    /// Number of vertex classes (3..=4)
    #[arg(long, default_value_t = 3)]
    k: u32,
    /// Vertices per class (1..=4)
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Edges per class pair (1..=4, at most n^2)
    #[arg(long, default_value_t = 2)]
    m: u32,
    /// Generator seed
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Graph file to write
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ReduceArgs {
    /// Graph file to read
    #[arg(long = "in")]
    input: PathBuf,
    /// Which job characteristic varies inside the comparison gadgets
    #[arg(long, value_enum, default_value = "p")]
    variant: VariantArg,
    /// Pattern file restricting which class pairs get comparison gadgets
    #[arg(long)]
    pattern: Option<PathBuf>,
    /// Reduction file to write
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    /// Reduction or instance file to read
    #[arg(long = "in")]
    input: PathBuf,
    /// Exact solver to run
    #[arg(long, value_enum, default_value = "pareto")]
    alg: AlgArg,
    /// State budget for the Pareto solver
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct SuiteArgs {
    /// Number of vertex classes (3..=4)
    #[arg(long)]
    k: Option<u32>,
    /// Vertices per class: a value like `2` or an inclusive range like `1..3`
    #[arg(long, value_parser = parse_range)]
    n: Option<(u32, u32)>,
    /// Edges per class pair: a value like `2` or an inclusive range like `1..3`
    #[arg(long, value_parser = parse_range)]
    m: Option<(u32, u32)>,
    /// Number of trial graphs
    #[arg(long)]
    trials: Option<u32>,
    /// Suite seed; each trial derives its own graph seeds from it
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Which job characteristic varies inside the comparison gadgets
    #[arg(long, value_enum, default_value = "p")]
    variant: VariantArg,
    /// Pattern file restricting which class pairs get comparison gadgets
    #[arg(long)]
    pattern: Option<PathBuf>,
    /// State budget for the Pareto solver
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
    budget: u64,
    /// Also write the report lines to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_range(text: &str) -> Result<(u32, u32), String> {
    let split = text.split_once("..").or_else(|| text.split_once('-'));
    let (lo, hi) = match split {
        Some((lo, hi)) => (lo, hi),
        None => (text, text),
    };
    let lo: u32 = lo.trim().parse().map_err(|_| format!("bad range bound: {lo}"))?;
    let hi: u32 = hi.trim().parse().map_err(|_| format!("bad range bound: {hi}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Gen(args) => cmd_gen(&args),
        Command::Reduce(args) => cmd_reduce(&args),
        Command::Solve(args) => cmd_solve(&args),
        Command::Roundtrip(args) => cmd_suite(&args, false),
        Command::Verify(args) => cmd_suite(&args, true),
    };
    ExitCode::from(code)
}

/// Report output; a consumer closing the pipe early (e.g. `head`) must not
/// turn into a panic, so write errors are dropped.
fn say(line: impl Display) {
    let _ = writeln!(std::io::stdout(), "{line}");
}

/// Usage or I/O failure: explain on stderr, exit 2.
fn usage_error(msg: impl Display) -> u8 {
    let _ = writeln!(std::io::stderr(), "error: {msg}");
    2
}

fn read_file(path: &Path) -> Result<String, u8> {
    fs::read_to_string(path).map_err(|e| usage_error(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), u8> {
    fs::write(path, contents).map_err(|e| usage_error(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

fn cmd_gen(args: &GenArgs) -> u8 {
    if !(3..=4).contains(&args.k) || !(1..=4).contains(&args.n) || !(1..=4).contains(&args.m) {
        return usage_error("sizes are limited to k in 3..=4, n in 1..=4, m in 1..=4");
    }
    let g = match random_nice(args.k, args.n, args.m, args.seed) {
        Ok(g) => g,
        Err(e) => return usage_error(e),
    };
    if let Err(code) = write_file(&args.out, &write_graph(&g)) {
        return code;
    }
    let edges: usize = g
        .class_pairs()
        .iter()
        .map(|&(i, j)| g.pair_edges(i, j).len())
        .sum();
    say(
        Check::new("gen", true)
            .detail("k", args.k)
            .detail("n", args.n)
            .detail("m", args.m)
            .detail("seed", args.seed)
            .detail("edges", edges)
            .detail("out", args.out.display())
            .line()
    );
    0
}

// ---------------------------------------------------------------------------
// reduce
// ---------------------------------------------------------------------------

fn load_pattern(path: &Path) -> Result<PatternGraph, u8> {
    let text = read_file(path)?;
    parse_pattern(&text).map_err(|e| usage_error(format!("{}: {e}", path.display())))
}

fn desk_guard(g: &KPartiteGraph) -> Result<(), String> {
    let classes = g.classes();
    let n = g.sizes().iter().copied().max().unwrap_or(0);
    let m = g
        .class_pairs()
        .iter()
        .map(|&(i, j)| g.pair_edges(i, j).len())
        .max()
        .unwrap_or(0);
    if classes > 4 || n > 4 || m > 4 {
        return Err(format!(
            "graph exceeds desk scale (k={classes}, max n={n}, max m={m}; limits are 4)"
        ));
    }
    Ok(())
}

fn cmd_reduce(args: &ReduceArgs) -> u8 {
    let text = match read_file(&args.input) {
        Ok(text) => text,
        Err(code) => return code,
    };
    let g = match parse_graph(&text) {
        Ok(g) => g,
        Err(e) => return usage_error(format!("{}: {e}", args.input.display())),
    };
    if let Err(msg) = desk_guard(&g) {
        return usage_error(msg);
    }
    let pattern = match &args.pattern {
        Some(path) => match load_pattern(path) {
            Ok(h) => Some(h),
            Err(code) => return code,
        },
        None => None,
    };
    let kind = args.variant.kind();
    let red = match &pattern {
        Some(h) => build_eth(&g, h, kind),
        None if kind == VariantKind::PSharp => build(&g),
        None => build_w(&g),
    };
    let red = match red {
        Ok(red) => red,
        Err(e) => return usage_error(e),
    };

    let audit = structure_check(&red);
    if !audit.all_passed() {
        say(audit.lines());
        let _ = writeln!(std::io::stderr(), "error: generated reduction failed its structure audit");
        return 1;
    }

    if let Err(code) = write_file(&args.out, &write_reduction(&red)) {
        return code;
    }
    let jobs = red.instance.jobs();
    let distinct_p = jobs.iter().map(|j| &j.p).sorted().dedup().count();
    let distinct_w = jobs.iter().map(|j| &j.w).sorted().dedup().count();
    say(
        Check::new("reduce", true)
            .detail("variant", red.kind.code())
            .detail("pattern", if red.pattern.is_some() { "yes" } else { "no" })
            .detail("jobs", jobs.len())
            .detail("distinct_p", distinct_p)
            .detail("distinct_w", distinct_w)
            .detail("threshold_counting", red.threshold.counting_digit())
            .detail("out", args.out.display())
            .line()
    );
    0
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

/// Pretty form of an optimum for report lines.
trait Render {
    fn render(&self) -> String;
}

impl Render for u64 {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Render for BlockInt {
    fn render(&self) -> String {
        self.render_blocks()
    }
}

struct SolveOutcome<V: Value> {
    result: Option<SolveResult<V>>,
    /// True when a threshold cutoff was active, making `None` a verdict
    /// rather than an error.
    decision_mode: bool,
}

fn run_solver<V: Value>(
    inst: &Instance<V>,
    alg: AlgArg,
    budget: u64,
    cutoff: Option<V>,
) -> Result<SolveOutcome<V>, SolveError> {
    match alg {
        AlgArg::Perm => Ok(SolveOutcome {
            result: Some(solve_perm_bruteforce(inst)?),
            decision_mode: false,
        }),
        AlgArg::Subset => Ok(SolveOutcome {
            result: Some(solve_subset_bruteforce(inst)?),
            decision_mode: false,
        }),
        AlgArg::Pareto => {
            let decision_mode = cutoff.is_some();
            let options = ParetoOptions {
                budget,
                compress: true,
                cutoff,
            };
            let run = solve_pareto_with(inst, &options)?;
            Ok(SolveOutcome {
                result: run.outcome,
                decision_mode,
            })
        }
        AlgArg::Lm => unreachable!("word-only algorithm dispatched separately"),
    }
}

/// Prints the solve/witness/threshold report lines; returns the exit code.
fn report_solve<V: Value + Render + Display>(
    inst: &Instance<V>,
    alg_name: &str,
    outcome: Result<SolveOutcome<V>, SolveError>,
    threshold: Option<&V>,
) -> u8 {
    let outcome = match outcome {
        Ok(outcome) => outcome,
        Err(e) => {
            say(
                Check::new("solve", false)
                    .detail("alg", alg_name)
                    .detail("jobs", inst.len())
                    .detail("error", e)
                    .line()
            );
            return 1;
        }
    };

    let mut code = 0;
    match &outcome.result {
        Some(result) => {
            say(
                Check::new("solve", true)
                    .detail("alg", alg_name)
                    .detail("jobs", inst.len())
                    .detail("optimum", result.optimum_early_weight.render())
                    .detail("early_jobs", result.witness_early_set.len())
                    .detail("states", result.stats.states_created)
                    .line()
            );
            let witness_ok = witness_consistent(inst, result);
            say(
                Check::new("witness", witness_ok)
                    .detail("early_jobs", result.witness_early_set.len())
                    .line()
            );
            if !witness_ok {
                code = 1;
            }
            if let Some(threshold) = threshold {
                let reaches = result.optimum_early_weight >= *threshold;
                say(
                    Check::new("threshold", true)
                        .detail("reaches", if reaches { "yes" } else { "no" })
                        .detail("required", threshold.render())
                        .line()
                );
            }
        }
        None if outcome.decision_mode => {
            // A cutoff run with no outcome is a definitive "no early set
            // reaches the threshold".
            say(
                Check::new("solve", true)
                    .detail("alg", alg_name)
                    .detail("jobs", inst.len())
                    .detail("optimum", "below-threshold")
                    .line()
            );
            if let Some(threshold) = threshold {
                say(
                    Check::new("threshold", true)
                        .detail("reaches", "no")
                        .detail("required", threshold.render())
                        .line()
                );
            }
        }
        None => {
            say(
                Check::new("solve", false)
                    .detail("alg", alg_name)
                    .detail("error", "solver returned no outcome")
                    .line()
            );
            code = 1;
        }
    }
    code
}

/// Re-derives the solver's claim: the returned early set must be feasible and
/// deliver exactly the reported optimum.
fn witness_consistent<V: Value>(inst: &Instance<V>, result: &SolveResult<V>) -> bool {
    match early_set_feasible(inst, &result.witness_early_set) {
        Ok(true) => {}
        _ => return false,
    }
    let Ok(schedule) = witness_to_schedule(inst, &result.witness_early_set) else {
        return false;
    };
    match evaluate(inst, &schedule) {
        Ok(eval) => eval.w_early == result.optimum_early_weight,
        Err(_) => false,
    }
}

fn alg_name(alg: AlgArg) -> &'static str {
    match alg {
        AlgArg::Perm => "perm",
        AlgArg::Subset => "subset",
        AlgArg::Pareto => "pareto",
        AlgArg::Lm => "lm",
    }
}

fn cmd_solve(args: &SolveArgs) -> u8 {
    let text = match read_file(&args.input) {
        Ok(text) => text,
        Err(code) => return code,
    };
    let input = match parse_solve_input(&text) {
        Ok(input) => input,
        Err(e) => return usage_error(format!("{}: {e}", args.input.display())),
    };
    let name = alg_name(args.alg);

    match input {
        SolveInput::Reduction(red) => {
            if matches!(args.alg, AlgArg::Lm) {
                return usage_error(
                    "the time-horizon solver needs word-sized numerics; \
                     reductions use digit-vector values",
                );
            }
            let cutoff = matches!(args.alg, AlgArg::Pareto).then(|| red.threshold.clone());
            let outcome = run_solver(&red.instance, args.alg, args.budget, cutoff);
            report_solve(&red.instance, name, outcome, Some(&red.threshold))
        }
        SolveInput::Instance(AnyInstance::Block(inst)) => {
            if matches!(args.alg, AlgArg::Lm) {
                return usage_error(
                    "the time-horizon solver needs word-sized numerics; \
                     this instance uses digit-vector values",
                );
            }
            let outcome = run_solver(&inst, args.alg, args.budget, None);
            report_solve(&inst, name, outcome, None)
        }
        SolveInput::Instance(AnyInstance::Word(inst)) => {
            let outcome = if matches!(args.alg, AlgArg::Lm) {
                solve_lawler_moore(&inst).map(|result| SolveOutcome {
                    result: Some(result),
                    decision_mode: false,
                })
            } else {
                run_solver(&inst, args.alg, args.budget, None)
            };
            report_solve(&inst, name, outcome, None)
        }
    }
}

// ---------------------------------------------------------------------------
// roundtrip / verify
// ---------------------------------------------------------------------------

fn cmd_suite(args: &SuiteArgs, verify: bool) -> u8 {
    let mut cfg = if verify {
        ExperimentConfig::verify_defaults()
    } else {
        ExperimentConfig::roundtrip_defaults()
    };
    if let Some(k) = args.k {
        cfg.k = k;
    }
    if let Some((lo, hi)) = args.n {
        cfg.n_lo = lo;
        cfg.n_hi = hi;
    }
    if let Some((lo, hi)) = args.m {
        cfg.m_lo = lo;
        cfg.m_hi = hi;
    }
    if let Some(trials) = args.trials {
        cfg.trials = trials;
    }
    cfg.seed = args.seed;
    cfg.variant = args.variant.kind();
    cfg.budget = args.budget;
    cfg.out = args.out.clone();
    if let Some(path) = &args.pattern {
        match load_pattern(path) {
            Ok(h) => cfg.pattern = Some(h),
            Err(code) => return code,
        }
    }
    if let Err(msg) = cfg.validate() {
        return usage_error(msg);
    }

    let report: Report = if verify {
        verify_suite(&cfg)
    } else {
        roundtrip_suite(&cfg)
    };
    say(report.lines());
    if let Some(out) = &cfg.out {
        let mut contents = report.lines();
        contents.push('\n');
        if let Err(code) = write_file(out, &contents) {
            return code;
        }
    }
    if report.all_passed() {
        0
    } else {
        1
    }
}
