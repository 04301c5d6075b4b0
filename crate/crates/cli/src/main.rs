//! `fano`: command-line front end to the cohomology and extendability engines.
//!
//! Exit codes: 0 when every comparison matches, 2 when any comparison is
//! flagged, 1 on error (including usage errors).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "fano", version, about = "Extendability of Calabi-Yau ribbons on prime Fano threefolds")]
pub struct Cli {
    /// Output format; defaults to md for tables and csv for geography.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write the main output to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Print every chase step behind the numbers to stderr.
    #[arg(long, global = true)]
    pub trace: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Md,
    Svg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cohomology of the irreducible bundle S^a U* ⊗ S^b Q on Gr(k,n).
    Bbw {
        /// `k,n`
        #[arg(long, value_parser = parse_pair)]
        gr: (usize, usize),
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weight_a: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weight_b: Vec<i64>,
    },
    /// Cohomology of T_Y(-m).
    Tangent {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        twist: i64,
    },
    /// The beta bound at one l.
    Beta(FamilyL),
    /// Extendability report rows with published comparisons.
    Table2 {
        /// Comma-separated family ids; all families when omitted.
        #[arg(long, value_delimiter = ',')]
        families: Vec<String>,
        /// Last l per family; defaults to the family's published threshold.
        #[arg(long)]
        l_max: Option<i64>,
    },
    /// Stored smooth-extendability data.
    Table1,
    /// Engine threshold against the published and Veronese thresholds.
    Klm,
    /// Dimension N_l of the embedding.
    Nl(FamilyL),
    /// Hilbert polynomial of the double structure embedded by lH.
    Hilbert(FamilyL),
    /// Surface invariants over a range of l.
    Invariants {
        #[arg(long)]
        family: String,
        /// `a..b`, inclusive.
        #[arg(long, value_parser = parse_range)]
        l_range: (i64, i64),
    },
    /// Geography points (χ, K²) from l_Y to l_Y + extra.
    Geography {
        #[arg(long, value_delimiter = ',')]
        families: Vec<String>,
        #[arg(long, default_value_t = 3)]
        extra: i64,
    },
    /// One database record.
    Info { id: String },
}

#[derive(Args, Debug)]
pub struct FamilyL {
    #[arg(long)]
    pub family: String,
    #[arg(long, allow_hyphen_values = true)]
    pub l: i64,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected k,n")?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let (a, b): (i64, i64) = (a.parse().map_err(|e| format!("{e}"))?, b.parse().map_err(|e| format!("{e}"))?);
    if a > b {
        return Err("empty range".into());
    }
    Ok((a, b))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
