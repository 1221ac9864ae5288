use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use qalink::verify::{
    cmd_invariants, cmd_qa_cert, cmd_report, cmd_verify_corollary, cmd_verify_theorem, exit_code,
    OutputFormat, RunConfig, Summary, VerifyError, WORKERS_ENV,
};

/// Exact link invariants and corpus verification.
#[derive(Parser)]
#[command(name = "qalink", version)]
struct Cli {
    /// `key = value` config file; its settings override command-line flags.
    /// Defaults to `qalink.conf` in the working directory when present.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for corpus sweeps (default: all cores).
    #[arg(long, global = true, env = WORKERS_ENV)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report for one link, as JSON.
    Invariants {
        corpus: PathBuf,
        #[arg(long)]
        link: String,
    },
    /// Signature against lattice and certificate correction terms.
    VerifyTheorem {
        corpus: PathBuf,
        #[arg(long)]
        max_crossings: Option<usize>,
    },
    /// Correction terms, Casson-Walker invariant and the Jones polynomial at -1.
    VerifyCorollary {
        corpus: PathBuf,
        #[arg(long)]
        max_crossings: Option<usize>,
    },
    /// Searches for a quasi-alternating certificate and prints its tree.
    QaCert {
        corpus: PathBuf,
        #[arg(long)]
        link: String,
        #[arg(long)]
        budget: Option<u64>,
        /// Print the serialized certificate instead of the tree.
        #[arg(long)]
        json: bool,
    },
    /// One row per link and quasi-orientation.
    Report {
        corpus: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        max_crossings: Option<usize>,
    },
}

/// Read from the working directory when `--config` is not given.
const DEFAULT_CONFIG: &str = "qalink.conf";

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn config(
    cli: &Cli,
    corpus: &PathBuf,
    edit: impl FnOnce(&mut RunConfig),
) -> anyhow::Result<RunConfig> {
    let mut cfg = RunConfig::new(corpus);
    cfg.workers = cli.workers;
    edit(&mut cfg);
    let default = PathBuf::from(DEFAULT_CONFIG);
    let path = cli.config.as_ref().or(default.exists().then_some(&default));
    if let Some(path) = path {
        cfg.apply_file(path)
            .with_context(|| format!("reading {}", path.display()))?;
    }
    Ok(cfg)
}

fn print_summary(s: &Summary) -> anyhow::Result<u8> {
    print!("{}", s.to_table());
    println!("failures: {}", serde_json::to_string(&s.failures())?);
    Ok(s.exit_code() as u8)
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    match &cli.command {
        Command::Invariants { corpus, link } => {
            let cfg = config(cli, corpus, |_| {})?;
            let r = cmd_invariants(&cfg, link)?;
            println!("{}", serde_json::to_string_pretty(&r)?);
            Ok(exit_code(std::slice::from_ref(&r)) as u8)
        }
        Command::VerifyTheorem {
            corpus,
            max_crossings,
        } => {
            let cfg = config(cli, corpus, |c| c.max_crossings = *max_crossings)?;
            print_summary(&cmd_verify_theorem(&cfg)?)
        }
        Command::VerifyCorollary {
            corpus,
            max_crossings,
        } => {
            let cfg = config(cli, corpus, |c| c.max_crossings = *max_crossings)?;
            print_summary(&cmd_verify_corollary(&cfg)?)
        }
        Command::QaCert {
            corpus,
            link,
            budget,
            json,
        } => {
            let cfg = config(cli, corpus, |c| {
                if let Some(b) = budget {
                    c.qa_budget = *b;
                }
            })?;
            let cert = cmd_qa_cert(&cfg, link)?;
            if *json {
                println!("{}", serde_json::to_string_pretty(&cert)?);
            } else {
                print!("{}", cert.to_tree_string());
            }
            Ok(0)
        }
        Command::Report {
            corpus,
            format,
            out,
            max_crossings,
        } => {
            let cfg = config(cli, corpus, |c| {
                c.max_crossings = *max_crossings;
                c.format = match format {
                    Format::Json => OutputFormat::Json,
                    Format::Csv => OutputFormat::Csv,
                };
            })?;
            let reports = cmd_report(&cfg, out)?;
            let rows: usize = reports.iter().map(|r| r.orientations.len()).sum();
            eprintln!(
                "{} links, {} rows written to {}",
                reports.len(),
                rows,
                out.display()
            );
            Ok(exit_code(&reports) as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e
                .downcast_ref::<VerifyError>()
                .map_or(1, VerifyError::exit_code);
            ExitCode::from(code as u8)
        }
    }
}
