use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod report;

use commands::{ChowKind, CliError, Curve, Limits, Markings};
use report::Format;

/// Fans, Chow rings and motivic series of logarithmic Hilbert schemes of points.
#[derive(Debug, Parser)]
#[command(name = "loghilb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Ignore the size caps on n.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Toric fan of Hilb^n(P^1|0) or Hilb^n(P^1|0+inf).
    Fan {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        i: usize,
        /// Level at the second marking (defaults to --i).
        #[arg(long)]
        i_inf: Option<usize>,
        #[arg(long, value_enum, default_value = "0")]
        markings: Markings,
        /// Print the cone census table.
        #[arg(long)]
        census: bool,
    },
    /// Chow ring presentations.
    Chow {
        #[arg(value_enum)]
        kind: ChowKind,
        #[arg(long)]
        n: usize,
        /// Levels, one per marking (comma separated).
        #[arg(long, value_delimiter = ',', default_value = "1")]
        i: Vec<usize>,
        #[arg(long, value_enum, default_value = "p1")]
        curve: Curve,
        /// Number of markings (defaults to the number of levels).
        #[arg(long)]
        ell: Option<usize>,
        /// Compute graded groups.
        #[arg(long)]
        groups: bool,
        /// Compare against the toric presentation.
        #[arg(long)]
        compare_sr: bool,
    },
    /// Generating-function table with the strata oracle.
    Motive {
        #[arg(long, default_value = "motivic-p1")]
        mode: String,
        #[arg(long, default_value_t = 0)]
        g: u32,
        #[arg(long, default_value_t = 1)]
        ell: usize,
        #[arg(long = "N", default_value_t = 6)]
        order: usize,
    },
    /// Boundary strata of Hilb^n(C|D).
    Strata {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        ell: usize,
        /// A single profile such as "1;(1,2);();(1)".
        #[arg(long)]
        profile: Option<String>,
        #[arg(long, default_value = "motivic-p1")]
        mode: String,
        #[arg(long, default_value_t = 0)]
        g: u32,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let limits = Limits::from_env(cli.common.force)?;
    let report = match cli.command {
        Command::Fan {
            n,
            i,
            i_inf,
            markings,
            census,
        } => commands::fan(&limits, n, i, i_inf, markings, census)?,
        Command::Chow {
            kind,
            n,
            i,
            curve,
            ell,
            groups,
            compare_sr,
        } => commands::chow(&limits, kind, n, &i, curve, ell, groups, compare_sr)?,
        Command::Motive {
            mode,
            g,
            ell,
            order,
        } => commands::motive(&limits, &mode, g, ell, order)?,
        Command::Strata {
            n,
            ell,
            profile,
            mode,
            g,
        } => commands::strata(&limits, n, ell, profile.as_deref(), &mode, g)?,
    };
    let mut out: Box<dyn Write> = match &cli.common.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    report.write(cli.common.format, &mut out)?;
    out.flush()?;
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("loghilb: a cross-check failed");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("loghilb: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
