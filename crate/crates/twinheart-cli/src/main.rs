//! Command-line workbench: validate substrates, generate them, enumerate
//! cotorsion pairs, run the full analysis suite, and re-print stored reports.
//!
//! Exit codes: 0 all holds, 1 any verdict fails, 2 any verdict indeterminate,
//! 3 input error (unreadable/invalid input, bad arguments).

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use std::path::PathBuf;
use std::process::ExitCode;
use twinheart::io::{load_substrate, save_substrate};
use twinheart::nakayama::generate_nakayama_stable;
use twinheart::pairs::enumerate_cotorsion_pairs;
use twinheart::workbench::{
    read_report, run_suite, write_report, RunConfig, SubstrateSpec, TwinFilter,
};

const EXIT_HOLDS: u8 = 0;
const EXIT_FAILS: u8 = 1;
const EXIT_INDETERMINATE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "twinheart",
    about = "Workbench for hearts of twin cotorsion pairs on finite triangulated categories",
    disable_help_subcommand = true
)]
struct Cli {
    /// Optional JSON config file overriding enumeration caps and bounds.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for reports (overridden by TWINHEART_OUT_DIR).
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a substrate file (category laws + triangulation axioms).
    Validate { file: PathBuf },
    /// Generate a substrate from first principles.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Enumerate all cotorsion pairs of a substrate file.
    EnumeratePairs { substrate: PathBuf },
    /// Run the full twin/heart/verdict suite on a substrate file.
    Analyze {
        substrate: PathBuf,
        /// Restrict analyzed twins: all, single, double.
        #[arg(long, default_value = "all")]
        twin_filter: String,
    },
    /// Re-print the summary of a stored run directory.
    Report { run_dir: PathBuf },
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Stable category of a self-injective Nakayama algebra.
    Nakayama(NakayamaArgs),
}

#[derive(Args)]
struct NakayamaArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u8,
    #[arg(long)]
    out: PathBuf,
}

/// Optional config file contents; every field falls back to the default.
#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    enum_cap: Option<u64>,
    extra_multiplicity: Option<usize>,
    max_candidates: Option<usize>,
    max_summands: Option<usize>,
    pair_cap: Option<usize>,
}

fn build_config(cli: &Cli) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let file: ConfigFile = serde_json::from_str(&text)
            .map_err(|e| format!("invalid config {}: {e}", path.display()))?;
        if let Some(c) = file.enum_cap {
            cfg.star.enum_cap = c;
            cfg.sweep.enum_cap = c;
        }
        if let Some(x) = file.extra_multiplicity {
            cfg.star.extra_multiplicity = x;
        }
        if let Some(x) = file.max_candidates {
            cfg.star.max_candidates = x;
        }
        if let Some(x) = file.max_summands {
            cfg.sweep.max_summands = x;
        }
        if let Some(x) = file.pair_cap {
            cfg.pair_cap = x;
        }
    }
    Ok(cfg)
}

fn out_dir(cli: &Cli) -> Option<PathBuf> {
    std::env::var_os("TWINHEART_OUT_DIR").map(PathBuf::from).or_else(|| cli.out_dir.clone())
}

fn init_parallelism() {
    if let Some(n) = std::env::var("TWINHEART_PARALLELISM")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn run(cli: &Cli) -> Result<u8, String> {
    let cfg = build_config(cli)?;
    match &cli.command {
        Command::Validate { file } => match load_substrate(file) {
            Ok(sub) => {
                println!(
                    "valid: {} indecomposables over F_{}",
                    sub.n_indec(),
                    sub.cat().p
                );
                Ok(EXIT_HOLDS)
            }
            Err(twinheart::Error::Io(e)) => Err(format!("{}: {e}", file.display())),
            Err(twinheart::Error::Parse(e)) => Err(format!("{}: {e}", file.display())),
            Err(e) => {
                println!("invalid: {e}");
                Ok(EXIT_FAILS)
            }
        },
        Command::Generate { kind: GenerateKind::Nakayama(a) } => {
            let sub = generate_nakayama_stable(a.m, a.n, a.p).map_err(|e| e.to_string())?;
            save_substrate(&sub, &a.out).map_err(|e| e.to_string())?;
            println!(
                "wrote {} ({} indecomposables over F_{})",
                a.out.display(),
                sub.n_indec(),
                a.p
            );
            Ok(EXIT_HOLDS)
        }
        Command::EnumeratePairs { substrate } => {
            let sub = load_substrate(substrate).map_err(|e| e.to_string())?;
            let out = enumerate_cotorsion_pairs(&sub, &cfg.star, cfg.pair_cap)
                .map_err(|e| e.to_string())?;
            for pair in &out.pairs {
                println!(
                    "U={:?} V={:?}",
                    pair.u.0.iter().collect::<Vec<_>>(),
                    pair.v.0.iter().collect::<Vec<_>>()
                );
            }
            println!("{} cotorsion pairs", out.pairs.len());
            if out.indeterminate.is_empty() {
                Ok(EXIT_HOLDS)
            } else {
                for (u, v, why) in &out.indeterminate {
                    eprintln!("indeterminate: U={:?} V={:?}: {why}", u.0, v.0);
                }
                Ok(EXIT_INDETERMINATE)
            }
        }
        Command::Analyze { substrate, twin_filter } => {
            let mut cfg = cfg;
            cfg.twin_filter = twin_filter
                .parse::<TwinFilter>()
                .map_err(|e| e.to_string())?;
            let spec = SubstrateSpec::Fixture { path: substrate.clone() };
            let report = run_suite(&spec, &cfg).map_err(|e| e.to_string())?;
            print!("{}", report.summary());
            if let Some(dir) = out_dir(cli) {
                let run_dir = dir.join(report.substrate.clone());
                write_report(&report, &run_dir).map_err(|e| e.to_string())?;
                println!("report written to {}", run_dir.display());
            }
            Ok(report.status())
        }
        Command::Report { run_dir } => {
            let report = read_report(run_dir).map_err(|e| e.to_string())?;
            print!("{}", report.summary());
            Ok(report.status())
        }
    }
}

fn main() -> ExitCode {
    init_parallelism();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not input errors
            use clap::error::ErrorKind::*;
            let _ = e.print();
            return if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                ExitCode::from(EXIT_HOLDS)
            } else {
                ExitCode::from(EXIT_INPUT)
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
