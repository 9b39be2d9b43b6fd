//! Subcommand implementations.  Each returns the process exit code: 0 for
//! success, 2 for a verification or span mismatch; usage and parse problems
//! surface as `CliError` and exit 1.

use std::path::Path;

use clap::ValueEnum;
use cocycle_core::classify::{annihilating_set, lazard_descriptor};
use cocycle_core::counting::CountTable;
use cocycle_core::multiindex::enumerate_power_of_p;
use cocycle_core::oracle::{higher_m_kernel, oracle_basis};
use cocycle_core::polyring::{zeta, zeta_mod_p, CocycleBasis, PrimeField};
use serde::Serialize;

use crate::engine::{compare_cell, constructive_or_empty, parallel_map, thread_count};
use crate::fixture::{load_fixture, match_basis, FixtureCell};
use crate::formats::{
    parse_partition_arg, render_sympoly, AnomalyJson, BasisJson, CheckJson, CountTableJson,
    KernelReportJson, LazardJson, ScanCellJson, ScanReportJson, SymPolyJson, VerifyCellJson,
    VerifyReportJson,
};
use crate::{CliError, CliResult, EXIT_MISMATCH, EXIT_OK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineChoice {
    Constructive,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountLayer {
    C,
    D,
}

fn require(cond: bool, msg: &str) -> CliResult<()> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Invalid(msg.into()))
    }
}

fn print_basis_text(label: &str, basis: &CocycleBasis) {
    println!(
        "{label} basis n={} k={} p={}: {} element(s)",
        basis.n,
        basis.k,
        basis.p,
        basis.len()
    );
    for (idx, element) in basis.elements.iter().enumerate() {
        println!("  [{}] {}", idx + 1, render_sympoly(element));
    }
}

#[derive(Serialize)]
struct BothEnginesJson {
    constructive: BasisJson,
    oracle: BasisJson,
    span_equal: bool,
}

pub fn cmd_basis(
    n: u64,
    k: usize,
    p: u64,
    engine: EngineChoice,
    format: OutputFormat,
) -> CliResult<i32> {
    require(k >= 2, "dimension must be at least 2")?;
    match engine {
        EngineChoice::Constructive => {
            let basis = constructive_or_empty(n, k, p)?;
            match format {
                OutputFormat::Text => print_basis_text("constructive", &basis),
                OutputFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&BasisJson::from_basis(&basis))?
                    )
                }
            }
            Ok(EXIT_OK)
        }
        EngineChoice::Oracle => {
            let basis = oracle_basis(n, k, p)?;
            match format {
                OutputFormat::Text => print_basis_text("oracle", &basis),
                OutputFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&BasisJson::from_basis(&basis))?
                    )
                }
            }
            Ok(EXIT_OK)
        }
        EngineChoice::Both => {
            let outcome = compare_cell(n, k, p)?;
            match format {
                OutputFormat::Text => {
                    print_basis_text("constructive", &outcome.constructive);
                    print_basis_text("oracle", &outcome.oracle);
                    println!(
                        "span equality: {}",
                        if outcome.span_equal {
                            "MATCH"
                        } else {
                            "MISMATCH"
                        }
                    );
                }
                OutputFormat::Json => {
                    let json = BothEnginesJson {
                        constructive: BasisJson::from_basis(&outcome.constructive),
                        oracle: BasisJson::from_basis(&outcome.oracle),
                        span_equal: outcome.span_equal,
                    };
                    println!("{}", serde_json::to_string_pretty(&json)?);
                }
            }
            Ok(if outcome.span_equal {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            })
        }
    }
}

pub fn count_table_json(table: &CountTable, layer: CountLayer) -> CountTableJson {
    let (n_min, k_min) = match layer {
        CountLayer::C => (0u64, 0usize),
        CountLayer::D => (2u64, 2usize),
    };
    let mut values = Vec::new();
    let mut n = n_min;
    while n <= table.n_max() {
        let mut row = Vec::new();
        for k in k_min..=table.k_max() {
            row.push(match layer {
                CountLayer::C => table.c(n, k),
                CountLayer::D => table.d(n, k),
            });
        }
        values.push(row);
        n += 1;
    }
    CountTableJson {
        p: table.p(),
        layer: match layer {
            CountLayer::C => "c".into(),
            CountLayer::D => "d".into(),
        },
        n_min,
        k_min,
        n_max: table.n_max(),
        k_max: table.k_max(),
        values,
    }
}

pub fn cmd_count(
    n_max: u64,
    k_max: usize,
    p: u64,
    layer: CountLayer,
    format: CountFormat,
) -> CliResult<i32> {
    require(n_max >= 2 && k_max >= 2, "table bounds must be at least 2")?;
    let table = CountTable::build(n_max, k_max, p)?;
    let json = count_table_json(&table, layer);
    match format {
        CountFormat::Csv => print!("{}", json.to_csv()),
        CountFormat::Json => println!("{}", serde_json::to_string_pretty(&json)?),
        CountFormat::Text => {
            println!(
                "{} counts for p={}, degrees {}..={}, dimensions {}..={}",
                match layer {
                    CountLayer::C => "power-of-p partition",
                    CountLayer::D => "cocycle",
                },
                json.p,
                json.n_min,
                json.n_max,
                json.k_min,
                json.k_max
            );
            print!("{}", json.to_csv());
        }
    }
    Ok(EXIT_OK)
}

fn verify_cell(cell: &FixtureCell, p: u64) -> CliResult<VerifyCellJson> {
    let field = PrimeField::new(p)?;
    let constructive = constructive_or_empty(cell.n, cell.k, p)?;
    let oracle = oracle_basis(cell.n, cell.k, p)?;
    let constructive_check = match match_basis(field, &cell.basis, &constructive.elements) {
        Ok(()) => CheckJson::pass(),
        Err(detail) => CheckJson::fail(detail),
    };
    let oracle_check = match match_basis(field, &cell.basis, &oracle.elements) {
        Ok(()) => CheckJson::pass(),
        Err(detail) => CheckJson::fail(detail),
    };
    let passed = constructive_check.passed && oracle_check.passed;
    Ok(VerifyCellJson {
        n: cell.n,
        k: cell.k,
        expected_elements: cell.basis.len(),
        constructive: constructive_check,
        oracle: oracle_check,
        passed,
    })
}

pub fn run_verify(
    fixture_path: &Path,
    n_limit: Option<u64>,
    k_limit: Option<usize>,
) -> CliResult<VerifyReportJson> {
    let fixture = load_fixture(fixture_path)?;
    let p = fixture.p;
    let mut cells: Vec<FixtureCell> = fixture
        .cells
        .into_iter()
        .filter(|cell| {
            n_limit.map(|n| cell.n <= n).unwrap_or(true)
                && k_limit.map(|k| cell.k <= k).unwrap_or(true)
        })
        .collect();
    cells.sort_by_key(|cell| (cell.n, cell.k));
    let outcomes = parallel_map(&cells, thread_count(), |cell| verify_cell(cell, p));
    let cells = outcomes.into_iter().collect::<CliResult<Vec<_>>>()?;
    let passed = cells.iter().all(|c| c.passed);
    Ok(VerifyReportJson { p, cells, passed })
}

pub fn cmd_verify(
    fixture_path: &Path,
    n_limit: Option<u64>,
    k_limit: Option<usize>,
    format: OutputFormat,
) -> CliResult<i32> {
    let report = run_verify(fixture_path, n_limit, k_limit)?;
    match format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        OutputFormat::Text => {
            println!(
                "verifying {} cells against p={} fixture",
                report.cells.len(),
                report.p
            );
            for cell in &report.cells {
                if cell.passed {
                    println!(
                        "  (n={:>2}, k={}) ok: {} element(s), both engines",
                        cell.n, cell.k, cell.expected_elements
                    );
                } else {
                    println!("  (n={:>2}, k={}) FAIL", cell.n, cell.k);
                    if let Some(detail) = &cell.constructive.detail {
                        println!("      constructive: {detail}");
                    }
                    if let Some(detail) = &cell.oracle.detail {
                        println!("      oracle: {detail}");
                    }
                }
            }
            let failed = report.cells.iter().filter(|c| !c.passed).count();
            println!(
                "summary: {}/{} cells passed",
                report.cells.len() - failed,
                report.cells.len()
            );
        }
    }
    Ok(if report.passed {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

pub fn run_scan(n_max: u64, k_max: usize, p: u64, m: usize) -> CliResult<ScanReportJson> {
    require(m >= 2, "cocycle order must be at least 2")?;
    let mut cells = Vec::new();
    for n in 2..=n_max {
        for k in m.max(2)..=k_max {
            cells.push((n, k));
        }
    }
    let outcomes = parallel_map(
        &cells,
        thread_count(),
        |&(n, k)| -> CliResult<ScanCellJson> {
            let report = higher_m_kernel(n, k, p, m)?;
            let pop = enumerate_power_of_p(n, k, p)?.len() as u64;
            let odd_order = !m.is_multiple_of(2);
            let exceeds = if odd_order {
                Some(report.dim as u64 > pop)
            } else {
                None
            };
            let contains_two = if !odd_order {
                let two = oracle_basis(n, k, p)?;
                let mut all = true;
                for element in &two.elements {
                    if !element.is_cocycle(m)? {
                        all = false;
                        break;
                    }
                }
                Some(all)
            } else {
                None
            };
            Ok(ScanCellJson {
                n,
                k,
                dim: report.dim,
                power_of_p_count: pop,
                exceeds_power_of_p: exceeds,
                contains_two_cocycles: contains_two,
                anomalies: report
                    .anomalies
                    .iter()
                    .map(AnomalyJson::from_anomaly)
                    .collect(),
            })
        },
    );
    let cells = outcomes.into_iter().collect::<CliResult<Vec<_>>>()?;
    Ok(ScanReportJson { p, m, cells })
}

pub fn cmd_scan_m(
    n_max: u64,
    k_max: usize,
    p: u64,
    m: usize,
    format: OutputFormat,
) -> CliResult<i32> {
    let report = run_scan(n_max, k_max, p, m)?;
    match format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        OutputFormat::Text => {
            println!("kernel scan for p={} m={}", report.p, report.m);
            for cell in &report.cells {
                let mut line = format!(
                    "  (n={:>2}, k={}) dim={} power-of-p={}",
                    cell.n, cell.k, cell.dim, cell.power_of_p_count
                );
                if cell.exceeds_power_of_p == Some(true) {
                    line.push_str("  EXCEEDS-POWER-OF-P");
                }
                if cell.contains_two_cocycles == Some(false) {
                    line.push_str("  MISSING-2-COCYCLES");
                }
                if !cell.anomalies.is_empty() {
                    line.push_str(&format!("  anomalies={}", cell.anomalies.len()));
                }
                println!("{line}");
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_kernel_report(
    n: u64,
    k: usize,
    p: u64,
    m: usize,
    format: OutputFormat,
) -> CliResult<i32> {
    require(m >= 2, "cocycle order must be at least 2")?;
    let report = higher_m_kernel(n, k, p, m)?;
    let json = KernelReportJson::from_report(&report);
    match format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&json)?),
        OutputFormat::Text => {
            println!(
                "kernel n={} k={} p={} m={}: dimension {}",
                n, k, p, m, report.dim
            );
            for (idx, element) in report.basis.iter().enumerate() {
                println!("  [{}] {}", idx + 1, render_sympoly(element));
            }
            for anomaly in &json.anomalies {
                println!("  anomaly: component of dimension {}", anomaly.dimension);
            }
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct AnnJson {
    p: u64,
    partition: Vec<u64>,
    annihilating_set: Vec<Vec<u64>>,
}

pub fn cmd_ann(partition: &str, p: u64, format: OutputFormat) -> CliResult<i32> {
    let lambda = parse_partition_arg(partition)?;
    require(lambda.len() >= 2, "partition needs at least two parts")?;
    let closure = annihilating_set(&lambda, p)?;
    match format {
        OutputFormat::Json => {
            let json = AnnJson {
                p,
                partition: lambda.parts().to_vec(),
                annihilating_set: closure.iter().map(|mu| mu.parts().to_vec()).collect(),
            };
            println!("{}", serde_json::to_string_pretty(&json)?);
        }
        OutputFormat::Text => {
            println!(
                "annihilating set of {lambda} over p={p}: {} partition(s)",
                closure.len()
            );
            for mu in &closure {
                println!("  {mu}");
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_zeta(n: u64, k: usize, p: Option<u64>, format: OutputFormat) -> CliResult<i32> {
    require(k >= 1, "dimension must be at least 1")?;
    match p {
        None => {
            let poly = zeta(n, k);
            match format {
                OutputFormat::Text => println!("{}", render_sympoly(&poly)),
                OutputFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&SymPolyJson::from_integral(&poly)?)?
                    )
                }
            }
        }
        Some(p) => {
            let poly = zeta_mod_p(n, k, p)?;
            match format {
                OutputFormat::Text => println!("{}", render_sympoly(&poly)),
                OutputFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&SymPolyJson::from_mod_p(&poly))?
                    )
                }
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_lazard(n: u64, k: usize, format: OutputFormat) -> CliResult<i32> {
    require(k >= 2 && n >= k as u64, "need degree >= dimension >= 2")?;
    let descriptor = lazard_descriptor(n, k)?;
    let json = LazardJson::from_descriptor(&descriptor);
    match format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&json)?),
        OutputFormat::Text => {
            let torsion = if json.torsion.is_empty() {
                "none".to_string()
            } else {
                json.torsion
                    .iter()
                    .map(|(p, l)| format!("{l} generator(s) of {p}-torsion"))
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            println!(
                "degree {} dimension {}: free generator {}, torsion: {torsion}",
                n, k, json.free
            );
        }
    }
    Ok(EXIT_OK)
}
