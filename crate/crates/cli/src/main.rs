use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use log::{error, info};

mod cache;
mod config;
mod error;
mod run;

use config::{Format, Job, Overrides};
use error::CliError;

/// Partial conjugacy classes, class polynomials and parabolic centralizers
/// of Coxeter groups and their Hecke algebras.
#[derive(Parser, Debug)]
#[command(name = "coxhecke", version, about)]
struct Args {
    /// JSON job description.
    #[arg(long)]
    config: PathBuf,
    /// Output directory for artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    cap_length: Option<usize>,
    /// Node budget for every search.
    #[arg(long)]
    cap_nodes: Option<usize>,
    /// Seed word such as "1,0,1"; repeatable, replaces the config seeds.
    #[arg(long)]
    seed: Vec<String>,
    /// Directory for the persistent normal-form cache.
    #[arg(long)]
    cache: Option<PathBuf>,
}

fn run(args: Args) -> Result<(), CliError> {
    if let Some(n) = args.threads {
        if n == 0 {
            return Err(CliError::Validation("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| CliError::Validation(format!("{}: {e}", args.config.display())))?;
    let overrides = Overrides {
        out: args.out,
        format: args.format,
        cap_length: args.cap_length,
        cap_nodes: args.cap_nodes,
        seeds: args.seed,
    };
    let job = Job::from_json(&text, overrides)?;
    let cache = args.cache.as_deref().map(|dir| cache::NormalFormCache::new(dir, job.sys.matrix()));
    if let Some(c) = &cache {
        info!("normal-form cache {}", c.path().display());
        c.load(&job.sys);
    }

    let outcome = run::execute(&job)?;
    if let Some(c) = &cache {
        c.store(&job.sys);
    }
    for path in run::write_artifacts(&job, &outcome)? {
        info!("wrote {}", path.display());
    }
    match outcome.verification_failure {
        Some(msg) => Err(CliError::Verification(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            error!("{}", e.message());
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
