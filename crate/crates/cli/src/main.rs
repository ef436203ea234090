use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use chromadyn::codec::{self, Format};
use chromadyn::exact::{chromatic_number, r_dynamic_number, Certified};
use chromadyn::harness::corpus::{format_for, read_graph};
use chromadyn::harness::{bound_table, generate, montgomery_scan, run_method, BoundReport, Corpus, Family, Method};
use chromadyn::{Budget, Graph, PipelineBudget};

#[derive(Parser)]
#[command(name = "chromadyn", version, about = "r-dynamic graph coloring toolkit")]
struct Cli {
    /// Default seed for randomized steps.
    #[arg(long, global = true, env = "CHROMADYN_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Table)]
    format: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Table,
    Json,
    /// Bound rows only; other commands fall back to JSON.
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph, e.g. `cycle:5`, `random_regular:20,3,7`.
    Gen {
        #[arg(long)]
        family: String,
        /// Output file; the extension picks graph6 or DIMACS. Stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact χ and χ_r with certificates.
    Exact {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = Budget::DEFAULT.0)]
        budget: u64,
    },
    /// Run one coloring construction.
    Construct {
        #[arg(long)]
        method: Method,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        r: usize,
    },
    /// Evaluate every bound row and verify it.
    Bounds {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Also write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Gap histogram of χ_2 - χ over a directory of graphs.
    Scan {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value_t = Budget::DEFAULT.0)]
        budget: u64,
    },
}

fn load(path: &Path) -> Result<Graph> {
    read_graph(path).with_context(|| format!("reading {}", path.display()))
}

fn show(c: &Certified) -> String {
    match c {
        Certified::Exact { value } => value.to_string(),
        Certified::Unknown { lower, upper } => format!("[{lower}, {upper}]"),
    }
}

fn gen(family: &str, out: Option<&Path>) -> Result<ExitCode> {
    let family = Family::parse(family)?;
    let g = generate(&family)?;
    let format = out.and_then(format_for).unwrap_or(Format::Graph6);
    let mut bytes = codec::serialize(format, &g)?;
    if bytes.last() != Some(&b'\n') {
        bytes.push(b'\n');
    }
    match out {
        Some(path) => std::fs::write(path, &bytes).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{}", String::from_utf8_lossy(&bytes)),
    }
    log::info!("{family}: n={} m={}", g.n(), g.m());
    Ok(ExitCode::SUCCESS)
}

fn exact(input: &Path, r: usize, budget: Budget, output: Output) -> Result<ExitCode> {
    let g = load(input)?;
    let chi = chromatic_number(&g, budget);
    let chi_r = r_dynamic_number(&g, r, budget);
    if output == Output::Table {
        println!("n = {}, m = {}", g.n(), g.m());
        println!("chi      = {} ({} nodes)", show(&chi.certified()), chi.nodes());
        println!("chi_{r}    = {} ({} nodes)", show(&chi_r.certified()), chi_r.nodes());
        if let Some(w) = chi_r.witness() {
            println!("witness  = {:?}", w.as_slice());
        }
    } else {
        let value = json!({
            "n": g.n(),
            "m": g.m(),
            "r": r,
            "chi": chi.certified(),
            "chi_r": chi_r.certified(),
            "chi_witness": chi.witness(),
            "chi_r_witness": chi_r.witness(),
            "nodes": chi.nodes() + chi_r.nodes(),
        });
        println!("{value}");
    }
    Ok(ExitCode::SUCCESS)
}

fn construct(method: Method, input: &Path, r: usize, seed: u64, output: Output) -> Result<ExitCode> {
    let g = load(input)?;
    let (coloring, record) = run_method(&g, method, r, seed, &PipelineBudget::default());
    if output == Output::Table {
        println!("method   = {}", record.method);
        println!("status   = {}", serde_json::to_value(&record.status)?["status"].as_str().unwrap_or(""));
        if let Some(used) = record.colors_used {
            println!("colors   = {used} (bound {})", record.bound.map_or("none".into(), |b| b.to_string()));
            println!("valid    = {}", record.valid);
        }
        if let Some(c) = &coloring {
            println!("coloring = {:?}", c.as_slice());
        }
    } else {
        println!("{}", json!({ "record": record, "coloring": coloring }));
    }
    let failed = matches!(record.status, chromadyn::harness::ConstructionStatus::Failed { .. })
        || (record.status == chromadyn::harness::ConstructionStatus::Ok && !record.conforms());
    Ok(if failed { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn bounds_table(report: &BoundReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}: n = {}, m = {}, r = {}", report.graph_id, report.n, report.m, report.r);
    let e = &report.exact;
    let _ = writeln!(
        out,
        "chi = {}, chi_r = {}, chi_2 = {}, alpha = {}, gamma = {}",
        show(&e.chi),
        show(&e.chi_r),
        show(&e.chi_2),
        show(&e.alpha),
        show(&e.gamma)
    );
    let _ = writeln!(out, "{:<26} {:>8} {:>10} {:<14}", "row", "bound", "observed", "verdict");
    for v in &report.conformance {
        let verdict = serde_json::to_value(v.status).ok().and_then(|s| s.as_str().map(String::from)).unwrap_or_default();
        let _ = writeln!(
            out,
            "{:<26} {:>8} {:>10} {:<14}{}",
            v.row,
            v.bound.map_or("-".into(), |b| b.to_string()),
            v.observed.as_ref().map_or("-".into(), show),
            verdict,
            if v.finding { " finding" } else { "" }
        );
    }
    out
}

fn bounds_csv(report: &BoundReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["graph_id", "row", "status", "bound", "observed_lower", "observed_upper", "enforced", "finding"])?;
    for v in &report.conformance {
        let status = serde_json::to_value(v.status)?;
        w.write_record([
            report.graph_id.clone(),
            v.row.clone(),
            status.as_str().unwrap_or_default().to_string(),
            v.bound.map_or(String::new(), |b| b.to_string()),
            v.observed.map_or(String::new(), |o| o.lower().to_string()),
            v.observed.map_or(String::new(), |o| o.upper().to_string()),
            v.enforced.to_string(),
            v.finding.to_string(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn bounds(input: &Path, r: usize, seed: u64, report_path: Option<&Path>, output: Output) -> Result<ExitCode> {
    let g = load(input)?;
    let id = input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let report = bound_table(&g, &id, r, &PipelineBudget::default(), seed);
    if let Some(path) = report_path {
        std::fs::write(path, report.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    match output {
        Output::Table => print!("{}", bounds_table(&report)),
        Output::Json => println!("{}", report.to_json()),
        Output::Csv => print!("{}", bounds_csv(&report)?),
    }
    let violations = report.conformance.iter().filter(|v| v.is_violation()).count();
    if violations > 0 {
        log::warn!("{violations} enforced rows failed");
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn scan(dir: &Path, budget: Budget, seed: u64, output: Output) -> Result<ExitCode> {
    let corpus = Corpus::load_dir(dir)?;
    if corpus.is_empty() {
        bail!("no graph files in {}", dir.display());
    }
    let report = montgomery_scan(&corpus, budget, seed);
    if output == Output::Table {
        println!("{} graphs: {} counted, {} skipped", corpus.len(), report.counted, report.skipped);
        for (gap, count) in &report.histogram {
            println!("gap {gap}: {count}");
        }
        for f in &report.findings {
            println!("finding: {} chi = {}, chi_2 = {} ({})", f.graph_id, f.chi, f.chi_2, f.graph6);
        }
    } else {
        println!("{}", report.to_json());
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen { family, out } => gen(family, out.as_deref()),
        Command::Exact { input, r, budget } => exact(input, *r, Budget(*budget), cli.format),
        Command::Construct { method, input, r } => construct(*method, input, *r, cli.seed, cli.format),
        Command::Bounds { input, r, report } => bounds(input, *r, cli.seed, report.as_deref(), cli.format),
        Command::Scan { corpus, budget } => scan(corpus, Budget(*budget), cli.seed, cli.format),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
