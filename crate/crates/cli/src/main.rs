use std::path::PathBuf;
use std::process::exit;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use cocycle_cli::commands::{
    cmd_ann, cmd_basis, cmd_count, cmd_kernel_report, cmd_lazard, cmd_scan_m, cmd_verify, cmd_zeta,
    CountFormat, CountLayer, EngineChoice, OutputFormat,
};
use cocycle_cli::EXIT_USAGE;

/// Additive symmetric cocycles over prime fields: bases, counts,
/// annihilating sets, kernel scans, and verification against golden tables.
#[derive(Parser)]
#[command(name = "cocycle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a cocycle basis for one degree, dimension, and characteristic
    Basis {
        /// Homogeneous degree
        #[arg(short = 'n', long = "degree")]
        degree: u64,
        /// Number of variables
        #[arg(short = 'k', long = "dimension")]
        dimension: usize,
        /// Prime characteristic
        #[arg(short = 'p', long = "characteristic")]
        characteristic: u64,
        /// Constructive classification, kernel oracle, or both with a
        /// span-equality verdict (exit 2 on mismatch)
        #[arg(long, value_enum, default_value = "constructive")]
        engine: EngineChoice,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Tabulate power-of-p partition counts and cocycle counts
    Count {
        /// Largest degree to tabulate
        #[arg(short = 'n', long = "degree")]
        degree: u64,
        /// Largest dimension to tabulate
        #[arg(short = 'k', long = "dimension")]
        dimension: usize,
        /// Prime characteristic
        #[arg(short = 'p', long = "characteristic")]
        characteristic: u64,
        /// c: raw power-of-p counts; d: cocycle counts
        #[arg(long, value_enum, default_value = "d")]
        layer: CountLayer,
        #[arg(long, value_enum, default_value = "text")]
        format: CountFormat,
    },
    /// Check both engines against a golden fixture (exit 2 on mismatch)
    Verify {
        /// Path to a fixture JSON file
        #[arg(long)]
        fixture: PathBuf,
        /// Only verify cells with degree at most this
        #[arg(short = 'n', long = "degree")]
        degree: Option<u64>,
        /// Only verify cells with dimension at most this
        #[arg(short = 'k', long = "dimension")]
        dimension: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Kernel dimensions of the order-m coboundary over a degree/dimension grid
    ScanM {
        /// Largest degree to scan
        #[arg(short = 'n', long = "degree")]
        degree: u64,
        /// Largest dimension to scan
        #[arg(short = 'k', long = "dimension")]
        dimension: usize,
        /// Prime characteristic
        #[arg(short = 'p', long = "characteristic")]
        characteristic: u64,
        /// Coboundary order m
        #[arg(short = 'm', long = "cocycle-order")]
        cocycle_order: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Kernel report for a single cell and coboundary order
    Kernel {
        /// Homogeneous degree
        #[arg(short = 'n', long = "degree")]
        degree: u64,
        /// Number of variables
        #[arg(short = 'k', long = "dimension")]
        dimension: usize,
        /// Prime characteristic
        #[arg(short = 'p', long = "characteristic")]
        characteristic: u64,
        /// Coboundary order m
        #[arg(short = 'm', long = "cocycle-order", default_value = "2")]
        cocycle_order: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Annihilating set of a partition
    Ann {
        /// Partition as comma-separated parts, e.g. 9,2,1
        partition: String,
        /// Prime characteristic
        #[arg(short = 'p', long = "characteristic")]
        characteristic: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// The integral cocycle zeta, or its mod-p projection
    Zeta {
        /// Homogeneous degree
        #[arg(short = 'n', long = "degree")]
        degree: u64,
        /// Number of variables
        #[arg(short = 'k', long = "dimension")]
        dimension: usize,
        /// Project mod this prime; omit for characteristic zero
        #[arg(short = 'p', long = "characteristic")]
        characteristic: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Generator/torsion summary of the representing ring in one bidegree
    Lazard {
        /// Homogeneous degree
        #[arg(short = 'n', long = "degree")]
        degree: u64,
        /// Number of variables
        #[arg(short = 'k', long = "dimension")]
        dimension: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            exit(code);
        }
    };

    let outcome = match cli.command {
        Command::Basis {
            degree,
            dimension,
            characteristic,
            engine,
            format,
        } => cmd_basis(degree, dimension, characteristic, engine, format),
        Command::Count {
            degree,
            dimension,
            characteristic,
            layer,
            format,
        } => cmd_count(degree, dimension, characteristic, layer, format),
        Command::Verify {
            fixture,
            degree,
            dimension,
            format,
        } => cmd_verify(&fixture, degree, dimension, format),
        Command::ScanM {
            degree,
            dimension,
            characteristic,
            cocycle_order,
            format,
        } => cmd_scan_m(degree, dimension, characteristic, cocycle_order, format),
        Command::Kernel {
            degree,
            dimension,
            characteristic,
            cocycle_order,
            format,
        } => cmd_kernel_report(degree, dimension, characteristic, cocycle_order, format),
        Command::Ann {
            partition,
            characteristic,
            format,
        } => cmd_ann(&partition, characteristic, format),
        Command::Zeta {
            degree,
            dimension,
            characteristic,
            format,
        } => cmd_zeta(degree, dimension, characteristic, format),
        Command::Lazard {
            degree,
            dimension,
            format,
        } => cmd_lazard(degree, dimension, format),
    };

    match outcome {
        Ok(code) => exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            exit(EXIT_USAGE);
        }
    }
}
