use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cl13_cli::{emit_report, parse_list, run_scenario, ConfigError, Format, ScenarioConfig, Suite, OUT_DIR_ENV};

#[derive(Parser)]
#[command(name = "cl13", version, about = "Verification suites for Cl(1,3) and the model Dirac-Yang-Mills equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit a report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

/// Comma-separated reals, kept whole so clap does not treat it as repeated values.
#[derive(Clone)]
struct FloatList(Vec<f64>);

fn float_list(s: &str) -> Result<FloatList, String> {
    parse_list(s).map(FloatList)
}

#[derive(Args)]
struct VerifyArgs {
    /// algebra, subspaces, idempotents, reduction, symmetries, convergence or all.
    suite: Option<String>,
    /// JSON scenario file; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated masses.
    #[arg(long = "m", value_parser = float_list)]
    m_values: Option<FloatList>,
    /// Comma-separated finite-difference steps.
    #[arg(long = "grid-steps", value_parser = float_list)]
    grid_steps: Option<FloatList>,
    /// Tolerance replacing every check's own.
    #[arg(long)]
    tol: Option<f64>,
    /// Sample points per check.
    #[arg(long)]
    samples: Option<usize>,
    /// Hermitian idempotent t1..t4.
    #[arg(long)]
    idempotent: Option<String>,
    /// Report path; relative paths resolve against $CL13_OUT_DIR when set.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Record per-check wall time (reports are then no longer reproducible).
    #[arg(long)]
    timings: bool,
}

impl VerifyArgs {
    fn into_config(self) -> Result<ScenarioConfig, ConfigError> {
        let flag_suite = self.suite.as_deref().map(str::parse::<Suite>).transpose()?;
        let mut cfg = match (&self.config, flag_suite) {
            (Some(path), _) => ScenarioConfig::from_file(path)?,
            (None, Some(s)) => ScenarioConfig::new(s),
            (None, None) => return Err(ConfigError::Invalid("a suite or --config is required".into())),
        };
        if let Some(s) = flag_suite {
            cfg.suite = s;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(FloatList(v)) = self.m_values {
            cfg.m_values = v;
        }
        if let Some(FloatList(v)) = self.grid_steps {
            cfg.grid_steps = v;
        }
        if let Some(v) = self.tol {
            cfg.tol = Some(v);
        }
        if let Some(v) = self.samples {
            cfg.samples = v;
        }
        if let Some(v) = self.idempotent {
            cfg.idempotent = v;
        }
        if let Some(v) = self.out {
            cfg.out = Some(v);
        }
        if let Some(f) = self.format {
            cfg.format = match f {
                FormatArg::Json => Format::Json,
                FormatArg::Text => Format::Text,
            };
        }
        cfg.timings |= self.timings;
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    let Command::Verify(args) = Cli::parse().command;
    let cfg = match args.into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run_scenario(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let doc = emit_report(&report, cfg.format);
    let out_dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    match cfg.resolved_out(out_dir.as_deref()) {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, doc) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{doc}"),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
