use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use lefschetz::fixtures::{all_scenarios, build_scenario};
use lefschetz::invariants::{meyer_self_test, InvariantReport};
use lefschetz::model::HomologyClass;
use lefschetz::scenario::{parse_scenarios, run_scenario, to_json, CheckStatus, RunOptions, RunReport, Scenario};

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "lfcalc", version, about = "Check Lefschetz fibration scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct Limits {
    /// Coset table size limit for Todd-Coxeter.
    #[arg(long, default_value_t = lefschetz::fpgroups::DEFAULT_MAX_COSETS)]
    max_cosets: usize,
    /// Number of Tietze passes before giving up.
    #[arg(long, default_value_t = 1000)]
    tietze_budget: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check on the scenarios in FILE.
    Verify {
        file: PathBuf,
        /// Only run these scenarios (repeatable).
        #[arg(short, long = "scenario")]
        scenarios: Vec<String>,
        /// Worker threads; scenarios run in parallel, results keep file order.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        timings: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[command(flatten)]
        limits: Limits,
    },
    /// Print the invariant report of one scenario.
    Report {
        file: PathBuf,
        #[arg(short, long)]
        scenario: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        limits: Limits,
    },
    /// Print presentations, H1 and the π1 verdict of one scenario.
    Pi1 {
        file: PathBuf,
        #[arg(short, long)]
        scenario: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// Randomized checks of the Meyer cocycle; LF_SEED sets the seed.
    Meyer {
        #[arg(long, value_name = "N")]
        self_test: usize,
    },
    /// Write the built-in scenario catalog as JSON (stdout without PATH).
    Export { path: Option<PathBuf> },
}

/// Input problems exit with 2, failed checks with 1.
enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Verify { file, scenarios, jobs, timings, format, limits } => {
            verify(&file, &scenarios, jobs, options(&limits, timings), format)
        }
        Command::Report { file, scenario, format, limits } => report(&file, &scenario, &options(&limits, false), format),
        Command::Pi1 { file, scenario, limits } => pi1(&file, &scenario, &options(&limits, false)),
        Command::Meyer { self_test } => meyer(self_test),
        Command::Export { path } => {
            let text = to_json(&all_scenarios());
            match path {
                Some(p) => std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{text}"),
            }
            Ok(Outcome::Ok)
        }
    }
}

fn options(l: &Limits, timings: bool) -> RunOptions {
    RunOptions { max_cosets: l.max_cosets, tietze_budget: l.tietze_budget, timings }
}

fn load(path: &Path) -> Result<Vec<Scenario>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_scenarios(&text).with_context(|| format!("parsing {}", path.display()))
}

fn select(all: Vec<Scenario>, names: &[String]) -> Result<Vec<Scenario>> {
    if names.is_empty() {
        return Ok(all);
    }
    names
        .iter()
        .map(|n| all.iter().find(|s| &s.name == n).cloned().ok_or_else(|| anyhow!("no scenario named `{n}`")))
        .collect()
}

fn load_one(path: &Path, name: &str) -> Result<Scenario> {
    Ok(select(load(path)?, &[name.to_string()])?.remove(0))
}

fn verify(path: &Path, names: &[String], jobs: usize, opts: RunOptions, format: Format) -> Result<Outcome> {
    let scenarios = select(load(path)?, names)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    let reports: Vec<RunReport> = pool.install(|| {
        scenarios.par_iter().map(|s| run_scenario(s, &opts)).collect::<Result<Vec<_>, _>>()
    })?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&reports)?),
        Format::Table => {
            for r in &reports {
                print_line(r);
            }
            let passed = reports.iter().filter(|r| r.status == CheckStatus::Pass).count();
            println!("{passed} passed, {} failed", reports.len() - passed);
        }
    }
    Ok(if reports.iter().all(|r| r.status == CheckStatus::Pass) { Outcome::Ok } else { Outcome::Failed })
}

fn status_word(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "PASS",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Inconclusive => "INCONCLUSIVE",
    }
}

fn print_line(r: &RunReport) {
    let mut line = format!("{:<4} {:<12}", status_word(r.status), r.scenario);
    if let Some(rep) = &r.report {
        line += &format!(" e={} sigma={} c1sq={} h1={}", rep.e, rep.sigma, rep.c1sq, rep.h1);
        if let Some(l) = &rep.label {
            line += &format!(" [{l}]");
        }
    }
    if let Some(ms) = r.timing_ms {
        line += &format!(" ({ms} ms)");
    }
    println!("{line}");
    for c in r.checks.iter().filter(|c| c.mandatory && c.status == CheckStatus::Fail) {
        println!(
            "     {}: expected {}, computed {}",
            c.name,
            c.expected.as_deref().unwrap_or("-"),
            c.computed.as_deref().unwrap_or("-")
        );
    }
}

fn report(path: &Path, name: &str, opts: &RunOptions, format: Format) -> Result<Outcome> {
    let r = run_scenario(&load_one(path, name)?, opts)?;
    let Some(rep) = &r.report else {
        for c in r.checks.iter().filter(|c| c.status == CheckStatus::Fail) {
            eprintln!("{}: {}", c.name, c.computed.as_deref().unwrap_or("failed"));
        }
        return Ok(Outcome::Failed);
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(rep)?),
        Format::Table => print_table(rep),
    }
    Ok(if r.status == CheckStatus::Fail { Outcome::Failed } else { Outcome::Ok })
}

fn print_table(rep: &InvariantReport) {
    let rows = [
        ("e", rep.e.to_string()),
        ("sigma", rep.sigma.to_string()),
        ("c1sq", rep.c1sq.to_string()),
        ("b1", rep.b1.to_string()),
        ("b2plus", rep.b2plus.to_string()),
        ("b2minus", rep.b2minus.to_string()),
        ("h1", rep.h1.to_string()),
        ("label", rep.label.clone().unwrap_or_else(|| "-".into())),
        ("minimality", format!("{:?}", rep.minimality)),
    ];
    for (k, v) in rows {
        println!("{k:<11}{v}");
    }
    for c in &rep.caveats {
        println!("caveat     {c}");
    }
}

fn pi1(path: &Path, name: &str, opts: &RunOptions) -> Result<Outcome> {
    let r = run_scenario(&load_one(path, name)?, opts)?;
    if r.pi1.is_empty() {
        println!("{name}: no presentations");
    }
    for p in &r.pi1 {
        println!("{} ({} generators, {} relators)", p.presentation, p.generators, p.relators);
        println!("  H1           {}", p.h1);
        println!("  verdict      {:?}", p.verdict);
        println!("  tietze       {} generators left{}", p.simplified_generators, if p.tietze_exhausted { ", budget exhausted" } else { "" });
        if let Some(e) = &p.enumeration {
            println!("  enumeration  {e}");
        }
        if !p.stand_ins.is_empty() {
            println!("  stand-ins    {}", p.stand_ins.join(", "));
        }
        if !p.audit_conflicts.is_empty() {
            println!("  conflicts    {}", p.audit_conflicts.join(", "));
        }
    }
    Ok(Outcome::Ok)
}

fn seed() -> Result<u64> {
    match std::env::var("LF_SEED") {
        Ok(s) => s.trim().parse().with_context(|| format!("LF_SEED `{s}` is not an integer")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Nonzero classes of the curves in the X scenario.
fn fixture_pool() -> Result<Vec<HomologyClass>> {
    let x = build_scenario("X")?;
    let mut pool: Vec<HomologyClass> =
        x.curve_table()?.into_values().map(|c| c.homology.clone()).filter(|h| !h.is_zero()).collect();
    pool.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    pool.dedup();
    Ok(pool)
}

fn meyer(triples: usize) -> Result<Outcome> {
    let seed = seed()?;
    let t = meyer_self_test(&fixture_pool()?, triples, seed);
    println!(
        "seed {seed}: {} triples, {} identity, {} cocycle, {} bound violations",
        t.triples, t.identity_violations, t.cocycle_violations, t.bound_violations
    );
    Ok(if t.passed() { Outcome::Ok } else { Outcome::Failed })
}
