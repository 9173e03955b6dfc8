//! `superdegen` command-line driver.

mod commands;
mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use commands::Report;
use config::{JobConfig, Overrides};

/// Bad input from the user: exit status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

#[derive(Parser)]
#[command(name = "superdegen", version, about = "Toric degenerations of highest-weight supermodules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct Common {
    /// Job configuration (TOML).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory; overrides [output].dir.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    degree_bound: Option<u32>,
    #[arg(long)]
    favourable_k: Option<u32>,
    /// Comma-separated rational fiber parameters.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    samples: Option<Vec<String>>,
    /// graded-lex, graded-revlex or weighted.
    #[arg(long)]
    order: Option<String>,
    /// Comma-separated reordering of the negative basis.
    #[arg(long, value_delimiter = ',')]
    basis_perm: Option<Vec<usize>>,
}

#[derive(Subcommand)]
enum Command {
    /// Essential sets for levels 1..=K with semigroup and favourability checks.
    Essential(Common),
    /// Relations, family ideal and Hilbert check.
    Degenerate(Common),
    /// Toric certificate for an exponent set.
    Toric {
        #[command(flatten)]
        common: Common,
        /// Exponent file; overrides [toric].exponents.
        #[arg(long)]
        exponents: Option<PathBuf>,
        /// Largest number of summands in sum searches.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Lattice points of an inequality system.
    Polytope {
        #[command(flatten)]
        common: Common,
        /// Inequality file; overrides [polytope].file.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        dilate: Option<u32>,
        /// Compare the points with the essential set of the configured module.
        #[arg(long)]
        compare: bool,
    },
    /// Full osp(1|4) example pipeline with one line per stage.
    VerifyExample(Common),
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            out: self.out.clone(),
            degree_bound: self.degree_bound,
            favourable_k: self.favourable_k,
            samples: self.samples.clone(),
            order: self.order.clone(),
            basis_perm: self.basis_perm.clone(),
        }
    }

    fn load(&self) -> Result<Option<JobConfig>> {
        self.config.as_deref().map(|p| JobConfig::load(p, &self.overrides())).transpose()
    }

    fn require(&self) -> Result<JobConfig> {
        self.load()?.ok_or_else(|| UsageError("--config is required".into()).into())
    }

    fn out_dir(&self, cfg: Option<&JobConfig>) -> PathBuf {
        self.out
            .clone()
            .or_else(|| cfg.map(|c| c.output.dir.clone()))
            .unwrap_or_else(|| PathBuf::from("out"))
    }
}

fn write_report(report: &Report, dir: &Path, command: &str, started: Instant) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let write = |name: &str, body: &str| {
        std::fs::write(dir.join(name), body).with_context(|| format!("cannot write {}", dir.join(name).display()))
    };
    write(&format!("{}.txt", report.name), &report.text)?;
    write(&format!("{}.json", report.name), &(serde_json::to_string_pretty(&report.json)? + "\n"))?;
    for (name, body) in &report.files {
        write(name, body)?;
    }
    let meta = json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "elapsed_ms": started.elapsed().as_millis() as u64,
        "passed": report.passed,
    });
    write("meta.json", &(serde_json::to_string_pretty(&meta)? + "\n"))
}

fn run(cli: Cli) -> Result<bool> {
    let started = Instant::now();
    let (report, out, command) = match &cli.command {
        Command::Essential(c) => {
            let cfg = c.require()?;
            (commands::essential(&cfg)?, c.out_dir(Some(&cfg)), "essential")
        }
        Command::Degenerate(c) => {
            let cfg = c.require()?;
            (commands::degenerate(&cfg)?, c.out_dir(Some(&cfg)), "degenerate")
        }
        Command::Toric { common, exponents, bound } => {
            let cfg = common.load()?;
            let path = match (exponents, cfg.as_ref().and_then(|c| c.toric.as_ref().map(|t| (c, t)))) {
                (Some(p), _) => p.clone(),
                (None, Some((c, t))) => c.resolve(&t.exponents),
                (None, None) => return Err(UsageError("no exponent file: pass --exponents or a [toric] section".into()).into()),
            };
            let bound = bound
                .or_else(|| cfg.as_ref().and_then(|c| c.toric.as_ref().and_then(|t| t.bound)))
                .or_else(|| cfg.as_ref().and_then(|c| c.bounds.semigroup_bound));
            if bound == Some(0) {
                return Err(UsageError("--bound must be at least 1".into()).into());
            }
            let k = commands::load_exponents(&path)?;
            (commands::toric(&k, bound)?, common.out_dir(cfg.as_ref()), "toric")
        }
        Command::Polytope { common, file, dilate, compare } => {
            let cfg = common.load()?;
            let section = cfg.as_ref().and_then(|c| c.polytope.as_ref());
            let path = match (file, section) {
                (Some(p), _) => p.clone(),
                (None, Some(s)) => cfg.as_ref().unwrap().resolve(&s.file),
                (None, None) => return Err(UsageError("no inequality file: pass --file or a [polytope] section".into()).into()),
            };
            let k = dilate.or(section.map(|s| s.dilate)).unwrap_or(1);
            if k == 0 {
                return Err(UsageError("--dilate must be at least 1".into()).into());
            }
            let cmp = *compare || section.is_some_and(|s| s.compare);
            (commands::polytope(cfg.as_ref(), &path, k, cmp)?, common.out_dir(cfg.as_ref()), "polytope")
        }
        Command::VerifyExample(c) => {
            let path = c.config.clone().unwrap_or_else(|| PathBuf::from("fixtures/osp14_w1.toml"));
            let cfg = JobConfig::load(&path, &c.overrides())?;
            (commands::verify_example(&cfg)?, c.out_dir(Some(&cfg)), "verify-example")
        }
    };
    print!("{}", report.text);
    write_report(&report, &out, command, started)?;
    Ok(report.passed)
}

fn is_usage(e: &anyhow::Error) -> bool {
    use superdegen::Error as E;
    if e.downcast_ref::<UsageError>().is_some() {
        return true;
    }
    if let Some(io) = e.downcast_ref::<std::io::Error>() {
        return io.kind() == std::io::ErrorKind::NotFound;
    }
    matches!(
        e.downcast_ref::<E>(),
        Some(
            E::UnsupportedFamily(_)
                | E::InvalidParameters(_)
                | E::InvalidOrder(_)
                | E::Parse(_)
                | E::AmbientMismatch { .. }
                | E::Unbounded(_)
        )
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
