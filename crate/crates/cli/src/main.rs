mod config;
mod registry;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use epsdescent::benchmarks::Benchmark;
use epsdescent::{Config, Trace, Variant};
use rayon::prelude::*;
use serde::Serialize;

use config::{Overrides, VariantArg};
use registry::{LookupError, SuiteEntry};

#[derive(Parser)]
#[command(name = "epsdescent", version, about = "Benchmarks for epsilon-ball gradient descent")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one problem and print a summary line.
    Run {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        overrides: Overrides,
        /// Also write the per-iteration trace as JSON lines.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve every registered problem and write a CSV table.
    Suite {
        #[arg(long)]
        out: PathBuf,
        /// Problem names (comma separated); a name also selects `name_*`.
        #[arg(long, value_delimiter = ',')]
        filter: Vec<String>,
        #[arg(long)]
        parallel: bool,
        /// Largest dimension of the nonsmooth Nesterov chain.
        #[arg(long, default_value_t = 4)]
        nesterov_max_n: usize,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Solve one problem and write its trace as JSON lines.
    Trace {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        overrides: Overrides,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(clap::Args)]
struct Target {
    #[arg(long)]
    problem: String,
    #[arg(long)]
    n: Option<usize>,
    /// Starting-point label; the problem's first start by default.
    #[arg(long)]
    x0: Option<String>,
    #[arg(long, value_enum, default_value = "a", ignore_case = true)]
    variant: VariantArg,
}

/// Exit status for invalid input, matching clap's usage errors.
const USAGE: u8 = 2;

enum Failure {
    Usage(String),
    Run(String),
}

impl From<LookupError> for Failure {
    fn from(e: LookupError) -> Self {
        Failure::Usage(e.to_string())
    }
}

#[derive(Debug, Serialize)]
struct Row {
    problem: String,
    n: usize,
    variant: String,
    x0: String,
    iterations: Option<u64>,
    gradient_evals: Option<u64>,
    value_evals: Option<u64>,
    final_f: Option<f64>,
    gap: Option<f64>,
    status: String,
    seconds: f64,
}

#[derive(Serialize)]
struct RowConfig<'a> {
    problem: &'a str,
    n: usize,
    variant: String,
    x0: &'a str,
    config: Option<&'a Config>,
    error: Option<&'a str>,
}

fn variant_name(v: Variant) -> String {
    format!("{v:?}")
}

fn prepare(target: &Target, o: &Overrides) -> Result<(Benchmark, Config, String), Failure> {
    let bench = registry::build(&target.problem, target.n)?;
    let x0 = target.x0.clone().unwrap_or_else(|| bench.starts[0].0.clone());
    if bench.start(&x0).is_none() {
        let known: Vec<&str> = bench.starts.iter().map(|(l, _)| l.as_str()).collect();
        return Err(Failure::Usage(format!(
            "unknown start {x0:?} for {} (known: {})",
            target.problem,
            known.join(", ")
        )));
    }
    let cfg = config::resolve(&bench, target.variant.into(), o).map_err(Failure::Usage)?;
    Ok((bench, cfg, x0))
}

fn execute(bench: &Benchmark, cfg: &Config, x0: &str) -> Result<(Trace, f64), String> {
    let valid = cfg.validate().map_err(|e| e.to_string())?;
    let t = Instant::now();
    let trace = bench.solve(x0, &valid).map_err(|e| e.to_string())?;
    Ok((trace, t.elapsed().as_secs_f64()))
}

fn gap(bench: &Benchmark, trace: &Trace) -> Option<f64> {
    bench.optimum.as_ref().map(|o| trace.final_f - o.value)
}

fn write_trace(path: &Path, trace: &Trace) -> Result<(), String> {
    let io = |e: std::io::Error| format!("{}: {e}", path.display());
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    for rec in &trace.records {
        serde_json::to_writer(&mut w, rec).map_err(|e| e.to_string())?;
        w.write_all(b"\n").map_err(io)?;
    }
    w.flush().map_err(io)
}

fn cmd_run(target: &Target, o: &Overrides, out: Option<&Path>) -> Result<(), Failure> {
    let (bench, cfg, x0) = prepare(target, o)?;
    let (trace, secs) = execute(&bench, &cfg, &x0).map_err(Failure::Run)?;
    let gap = gap(&bench, &trace).map_or("n/a".to_string(), |g| format!("{g:e}"));
    println!(
        "problem={} n={} variant={} x0={} iterations={} gradient_evals={} value_evals={} final_f={:e} gap={} status={} seconds={:.3}",
        target.problem,
        bench.dim,
        variant_name(cfg.params.variant),
        x0,
        trace.iterations,
        trace.gradient_evals,
        trace.value_evals,
        trace.final_f,
        gap,
        trace.status,
        secs
    );
    if let Some(msg) = &trace.failure {
        eprintln!("{msg}");
    }
    if let Some(path) = out {
        write_trace(path, &trace).map_err(Failure::Run)?;
    }
    Ok(())
}

fn cmd_trace(target: &Target, o: &Overrides, out: &Path) -> Result<(), Failure> {
    let (bench, cfg, x0) = prepare(target, o)?;
    let (trace, _) = execute(&bench, &cfg, &x0).map_err(Failure::Run)?;
    write_trace(out, &trace).map_err(Failure::Run)?;
    eprintln!("{} records, status {}", trace.records.len(), trace.status);
    Ok(())
}

fn suite_row(entry: &SuiteEntry, o: &Overrides) -> (Row, Result<Config, String>) {
    let mut row = Row {
        problem: entry.problem.to_string(),
        n: entry.n,
        variant: variant_name(entry.variant),
        x0: entry.x0.clone(),
        iterations: None,
        gradient_evals: None,
        value_evals: None,
        final_f: None,
        gap: None,
        status: "error".into(),
        seconds: 0.0,
    };
    let bench = registry::build(entry.problem, Some(entry.n)).expect("suite problems are valid");
    let cfg = match config::resolve(&bench, entry.variant, o) {
        Ok(cfg) => cfg,
        Err(e) => return (row, Err(e)),
    };
    match execute(&bench, &cfg, &entry.x0) {
        Ok((trace, secs)) => {
            row.iterations = Some(trace.iterations);
            row.gradient_evals = Some(trace.gradient_evals);
            row.value_evals = Some(trace.value_evals);
            row.final_f = Some(trace.final_f);
            row.gap = gap(&bench, &trace);
            row.status = trace.status.to_string();
            row.seconds = secs;
            (row, Ok(cfg))
        }
        Err(e) => (row, Err(e)),
    }
}

/// `table.csv` -> `table.json`
fn config_path(out: &Path) -> PathBuf {
    out.with_extension("json")
}

fn cmd_suite(out: &Path, filter: &[String], parallel: bool, max_n: usize, o: &Overrides) -> Result<(), Failure> {
    for f in filter {
        if !registry::PROBLEMS.iter().any(|p| registry::matches_filter(p, std::slice::from_ref(f))) {
            return Err(Failure::Usage(format!("filter {f:?} matches no problem")));
        }
    }
    let entries: Vec<SuiteEntry> =
        registry::suite_entries(max_n).into_iter().filter(|e| registry::matches_filter(e.problem, filter)).collect();
    let results: Vec<(Row, Result<Config, String>)> = if parallel {
        entries.par_iter().map(|e| suite_row(e, o)).collect()
    } else {
        entries.iter().map(|e| suite_row(e, o)).collect()
    };

    let io = |p: &Path, e: &dyn std::fmt::Display| Failure::Run(format!("{}: {e}", p.display()));
    let mut csv = csv::Writer::from_path(out).map_err(|e| io(out, &e))?;
    for (row, _) in &results {
        csv.serialize(row).map_err(|e| io(out, &e))?;
    }
    csv.flush().map_err(|e| io(out, &e))?;

    let configs: Vec<RowConfig<'_>> = entries
        .iter()
        .zip(&results)
        .map(|(e, (_, cfg))| RowConfig {
            problem: e.problem,
            n: e.n,
            variant: variant_name(e.variant),
            x0: &e.x0,
            config: cfg.as_ref().ok(),
            error: cfg.as_ref().err().map(String::as_str),
        })
        .collect();
    let json_path = config_path(out);
    let file = File::create(&json_path).map_err(|e| io(&json_path, &e))?;
    serde_json::to_writer_pretty(BufWriter::new(file), &configs).map_err(|e| io(&json_path, &e))?;

    let failed: Vec<String> = entries
        .iter()
        .zip(&results)
        .filter_map(|(e, (_, r))| {
            r.as_ref().err().map(|msg| format!("{} n={} {:?} {}: {msg}", e.problem, e.n, e.variant, e.x0))
        })
        .collect();
    eprintln!("{} rows written to {}", results.len(), out.display());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Run(failed.join("\n")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { target, overrides, out } => cmd_run(target, overrides, out.as_deref()),
        Command::Trace { target, overrides, out } => cmd_trace(target, overrides, out),
        Command::Suite { out, filter, parallel, nesterov_max_n, overrides } => {
            cmd_suite(out, filter, *parallel, *nesterov_max_n, overrides)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
