use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fgzeta::fluctuation::DEFAULT_QUAD_TOL;
use fgzeta::report::{
    cmd_cumulants, cmd_evenize_file, cmd_fg_check, cmd_fluct, cmd_scan, emit, CumulantsConfig, FgCheckConfig,
    FluctConfig, Format, Grid, Report, ReportError, ScanConfig,
};
use fgzeta::ring::{Precision, DEFAULT_PRECISION_BITS};

#[derive(Parser)]
#[command(name = "fgzeta", version, about = "Cutoff zeta cumulants, evenization and fluctuation decompositions")]
struct Cli {
    /// Working precision in bits for big-real arithmetic.
    #[arg(long, global = true, env = "FGZETA_PRECISION", default_value_t = DEFAULT_PRECISION_BITS)]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cumulant table of the cutoff zeta at one P.
    Cumulants {
        #[arg(long)]
        pmax: u64,
        #[arg(long, default_value_t = 16)]
        order: usize,
        #[arg(long, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cumulant rows along a grid of cutoffs plus slope fits.
    Scan {
        #[arg(long, default_value_t = 2)]
        pmin: u64,
        #[arg(long)]
        pmax: u64,
        /// pow2 | geometric:<n> | list:<p1>,<p2>,...
        #[arg(long, default_value = "pow2")]
        grid: Grid,
        #[arg(long, default_value_t = 16)]
        order: usize,
        #[arg(long, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Boundary-bulk decomposition of a_2m(P).
    Fluct {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        pmax: u64,
        #[arg(long, default_value_t = DEFAULT_QUAD_TOL)]
        quad_tol: f64,
        /// Keep only the k = 1 prime-power terms.
        #[arg(long)]
        k1_only: bool,
    },
    /// Formal-group law checks.
    FgCheck {
        #[arg(long, default_value_t = 16)]
        order: usize,
        #[arg(long, default_value_t = 8)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Parity split of a log-series given as JSON.
    Evenize {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(Report, Option<PathBuf>), ReportError> {
    let precision = Precision(cli.precision);
    if cli.precision < 32 {
        return Err(ReportError::Usage(format!("--precision must be at least 32 bits, got {}", cli.precision)));
    }
    Ok(match cli.command {
        Command::Cumulants { pmax, order, format, out } => {
            (cmd_cumulants(&CumulantsConfig { pmax, order, precision, format })?, out)
        }
        Command::Scan { pmin, pmax, grid, order, format, out } => {
            let cfg = ScanConfig { pmin, pmax, grid, order, precision, format, out: out.clone() };
            (cmd_scan(&cfg)?, out)
        }
        Command::Fluct { m, pmax, quad_tol, k1_only } => {
            (cmd_fluct(&FluctConfig { m, pmax, quad_tol, k1_only, precision })?, None)
        }
        Command::FgCheck { order, trials, seed } => (cmd_fg_check(&FgCheckConfig { order, trials, seed })?, None),
        Command::Evenize { input } => (cmd_evenize_file(&input, precision)?, None),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(cli).and_then(|(report, out)| {
        if let Some(text) = emit(&report.text, out.as_deref())? {
            print!("{text}");
        }
        Ok(report.exit_code)
    });
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("fgzeta: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
