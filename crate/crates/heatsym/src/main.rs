use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use heatsym::io::read_file;
use heatsym::run::{run_report, Command, Operator, RunConfig, RunError};

/// Exact heat-kernel coefficients, local index densities and index pairings.
#[derive(Parser, Debug)]
#[command(name = "heatsym", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Top-degree index density, by characteristic forms and by the Getzler limit.
    IndexDensity {
        #[arg(long)]
        curvature: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Pointwise heat coefficients a_0..a_depth at the origin.
    HeatCoeffs {
        #[arg(long)]
        curvature: PathBuf,
        #[arg(long, value_enum, default_value_t = Operator::LaplaceBeltrami)]
        operator: Operator,
        #[arg(long, default_value_t = 1)]
        depth: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Even cocycle component on a flat torus (or (b+B)φ for an even-length tuple).
    CmEven {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Odd cocycle component on a flat torus (or (b+B)φ for an odd-length tuple).
    CmOdd {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Pairing with a projection (even tori, or the Bott projection on S²) or a unitary (odd tori).
    Pair {
        #[arg(long, required_unless_present = "bott", conflicts_with = "bott")]
        input: Option<PathBuf>,
        #[arg(long)]
        bott: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Spectral flow from D to U*DU on S¹ for U = e^{iwθ}.
    SpectralFlow {
        #[arg(long, allow_hyphen_values = true)]
        winding: i64,
        #[arg(long, default_value_t = 64)]
        cutoff: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Acceptance checks A1–A8.
    VerifyAll {
        #[arg(long)]
        seed: Option<u64>,
        /// Write the S² heat-trace fit table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Run a JSON configuration; relative paths resolve against its directory.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

fn config_from_file(path: &Path) -> Result<RunConfig, RunError> {
    let text = read_file(path)?;
    let mut cfg: RunConfig = serde_json::from_str(&text).map_err(|e| RunError::Input(e.into()))?;
    let base = path.parent().unwrap_or(Path::new("."));
    for p in [&mut cfg.curvature, &mut cfg.input, &mut cfg.output, &mut cfg.csv].into_iter().flatten() {
        if p.is_relative() {
            *p = base.join(&*p);
        }
    }
    Ok(cfg)
}

fn config(cmd: Cmd) -> Result<RunConfig, RunError> {
    let cfg = match cmd {
        Cmd::IndexDensity { curvature, out } => {
            RunConfig { curvature: Some(curvature), output: out.output, ..RunConfig::new(Command::IndexDensity) }
        }
        Cmd::HeatCoeffs { curvature, operator, depth, out } => RunConfig {
            curvature: Some(curvature),
            operator,
            depth,
            output: out.output,
            ..RunConfig::new(Command::HeatCoeffs)
        },
        Cmd::CmEven { input, out } => RunConfig { input: Some(input), output: out.output, ..RunConfig::new(Command::CmEven) },
        Cmd::CmOdd { input, out } => RunConfig { input: Some(input), output: out.output, ..RunConfig::new(Command::CmOdd) },
        Cmd::Pair { input, bott, out } => RunConfig { input, bott, output: out.output, ..RunConfig::new(Command::Pair) },
        Cmd::SpectralFlow { winding, cutoff, out } => {
            RunConfig { winding: Some(winding), cutoff, output: out.output, ..RunConfig::new(Command::SpectralFlow) }
        }
        Cmd::VerifyAll { seed, csv, out } => {
            let mut c = RunConfig { csv, output: out.output, ..RunConfig::new(Command::VerifyAll) };
            if let Some(s) = seed {
                c.seed = s;
            }
            c
        }
        Cmd::Run { config } => config_from_file(&config)?,
    };
    Ok(cfg)
}

fn init_threads() -> Result<(), RunError> {
    let Ok(v) = std::env::var("HEATSYM_THREADS") else { return Ok(()) };
    let n: usize = v.parse().map_err(|_| RunError::Invalid(format!("HEATSYM_THREADS={v:?} is not a thread count")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| RunError::Internal(e.to_string()))
}

fn execute(cmd: Cmd) -> Result<bool, RunError> {
    init_threads()?;
    let cfg = config(cmd)?;
    let report = run_report(&cfg)?;
    let text = report.to_json();
    match &cfg.output {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| RunError::Write { path: p.display().to_string(), message: e.to_string() })?,
        None => print!("{text}"),
    }
    Ok(report.pass())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
