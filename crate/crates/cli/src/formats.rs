//! Wire formats.  Everything the tool emits is either one of these JSON
//! shapes, a CSV table, or plain text rendered from them.

use std::collections::BTreeMap;

use cocycle_core::classify::LazardDescriptor;
use cocycle_core::multiindex::{MultiIndex, Partition};
use cocycle_core::oracle::{Anomaly, KernelReport};
use cocycle_core::polyring::{CocycleBasis, CoeffDomain, Integers, PrimeField, SymPoly};
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

/// `{"p": 3 | null, "n": 12, "k": 3, "terms": [{"partition": [9,2,1], "coeff": 1}, ...]}`
/// with terms in descending-lexicographic partition order.  A null `p`
/// means characteristic zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymPolyJson {
    pub p: Option<u64>,
    pub n: u64,
    pub k: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub partition: Vec<u64>,
    pub coeff: i64,
}

impl SymPolyJson {
    pub fn from_mod_p(poly: &SymPoly<PrimeField>) -> Self {
        SymPolyJson {
            p: poly.domain().characteristic(),
            n: poly.degree(),
            k: poly.dimension(),
            terms: poly
                .terms()
                .map(|(part, &coeff)| TermJson {
                    partition: part.parts().to_vec(),
                    coeff: coeff as i64,
                })
                .collect(),
        }
    }

    pub fn from_integral(poly: &SymPoly<Integers>) -> CliResult<Self> {
        let terms = poly
            .terms()
            .map(|(part, coeff)| {
                let coeff = i64::try_from(coeff.clone()).map_err(|_| {
                    CliError::Invalid(format!("coefficient of tau{part} exceeds 64 bits"))
                })?;
                Ok(TermJson {
                    partition: part.parts().to_vec(),
                    coeff,
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(SymPolyJson {
            p: None,
            n: poly.degree(),
            k: poly.dimension(),
            terms,
        })
    }

    /// Rebuild the modular polynomial; negative coefficients are read as
    /// `p - |c|`.
    pub fn to_mod_p(&self) -> CliResult<SymPoly<PrimeField>> {
        let p = self
            .p
            .ok_or_else(|| CliError::Invalid("expected a modular polynomial".into()))?;
        let field = PrimeField::new(p)?;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let part = MultiIndex::new(t.partition.clone()).normalize()?;
                Ok((part, signed_residue(t.coeff, p)))
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(SymPoly::from_terms(field, self.n, self.k, terms))
    }
}

/// Map a signed printed coefficient into `[0, p)`.
pub fn signed_residue(c: i64, p: u64) -> u64 {
    let p_i = p as i64;
    (c.rem_euclid(p_i)) as u64
}

/// Human-readable rendering: `tau(9,2,1) + 2*tau(10,1,1)`.
pub fn render_sympoly<D: CoeffDomain>(poly: &SymPoly<D>) -> String
where
    D::Elem: std::fmt::Display,
{
    if poly.is_zero() {
        return "0".into();
    }
    poly.terms()
        .map(|(part, coeff)| {
            let c = coeff.to_string();
            let body = part
                .parts()
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",");
            if c == "1" {
                format!("tau({body})")
            } else {
                format!("{c}*tau({body})")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// `{"n":…, "k":…, "p":…, "basis":[SymPoly, …]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub n: u64,
    pub k: usize,
    pub p: u64,
    pub basis: Vec<SymPolyJson>,
}

impl BasisJson {
    pub fn from_basis(basis: &CocycleBasis) -> Self {
        BasisJson {
            n: basis.n,
            k: basis.k,
            p: basis.p,
            basis: basis.elements.iter().map(SymPolyJson::from_mod_p).collect(),
        }
    }
}

/// `{"n":…, "k":…, "free":"b_n", "torsion":{"3":1}}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LazardJson {
    pub n: u64,
    pub k: usize,
    pub free: String,
    pub torsion: BTreeMap<u64, u64>,
}

impl LazardJson {
    pub fn from_descriptor(d: &LazardDescriptor) -> Self {
        LazardJson {
            n: d.n,
            k: d.k,
            free: d.free_generator.clone(),
            torsion: d.torsion.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnomalyJson {
    pub support: Vec<Vec<u64>>,
    pub dimension: usize,
}

impl AnomalyJson {
    pub fn from_anomaly(a: &Anomaly) -> Self {
        AnomalyJson {
            support: a.support.iter().map(|p| p.parts().to_vec()).collect(),
            dimension: a.dimension,
        }
    }
}

/// `{"n","k","p","m","dim","basis":[SymPoly…],"anomalies":[…]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReportJson {
    pub n: u64,
    pub k: usize,
    pub p: u64,
    pub m: usize,
    pub dim: usize,
    pub basis: Vec<SymPolyJson>,
    pub anomalies: Vec<AnomalyJson>,
}

impl KernelReportJson {
    pub fn from_report(r: &KernelReport) -> Self {
        KernelReportJson {
            n: r.n,
            k: r.k,
            p: r.p,
            m: r.m,
            dim: r.dim,
            basis: r.basis.iter().map(SymPolyJson::from_mod_p).collect(),
            anomalies: r.anomalies.iter().map(AnomalyJson::from_anomaly).collect(),
        }
    }
}

/// Parsed CSV table: the `k` column labels, then `(n, counts)` rows.
pub type CsvCounts = (Vec<usize>, Vec<(u64, Vec<u64>)>);

/// One rectangular layer of a count table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTableJson {
    pub p: u64,
    pub layer: String,
    pub n_min: u64,
    pub k_min: usize,
    pub n_max: u64,
    pub k_max: usize,
    /// `values[i][j]` is the count at `n = n_min + i`, `k = k_min + j`.
    pub values: Vec<Vec<u64>>,
}

impl CountTableJson {
    /// CSV with header row `n\k`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n\\k");
        for k in self.k_min..=self.k_max {
            out.push_str(&format!(",{k}"));
        }
        out.push('\n');
        for (i, row) in self.values.iter().enumerate() {
            out.push_str(&format!("{}", self.n_min + i as u64));
            for v in row {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> CliResult<CsvCounts> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| CliError::Invalid("empty CSV".into()))?;
        let mut cols = header.split(',');
        if cols.next() != Some("n\\k") {
            return Err(CliError::Invalid("missing n\\k header".into()));
        }
        let ks = cols
            .map(|c| {
                c.parse::<usize>()
                    .map_err(|e| CliError::Invalid(e.to_string()))
            })
            .collect::<CliResult<Vec<_>>>()?;
        let mut rows = Vec::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let mut cells = line.split(',');
            let n = cells
                .next()
                .ok_or_else(|| CliError::Invalid("short row".into()))?
                .parse::<u64>()
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            let values = cells
                .map(|c| {
                    c.parse::<u64>()
                        .map_err(|e| CliError::Invalid(e.to_string()))
                })
                .collect::<CliResult<Vec<_>>>()?;
            rows.push((n, values));
        }
        Ok((ks, rows))
    }
}

/// Golden fixture: expected bases transcribed from printed tables, each
/// cell keyed by its table coordinates.  A basis element is a list of
/// `[partition, coefficient]` pairs; negative coefficients mean `p - |c|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureJson {
    pub p: u64,
    pub cells: Vec<FixtureCellJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureCellJson {
    pub n: u64,
    pub k: usize,
    pub basis: Vec<Vec<(Vec<u64>, i64)>>,
}

/// Scan report for one coboundary order over a degree/dimension rectangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReportJson {
    pub p: u64,
    pub m: usize,
    pub cells: Vec<ScanCellJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCellJson {
    pub n: u64,
    pub k: usize,
    /// Kernel dimension of the order-`m` coboundary.
    pub dim: usize,
    /// Number of power-of-`p` partitions in the cell.
    pub power_of_p_count: u64,
    /// For odd `m`: does the kernel exceed the power-of-`p` span?
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exceeds_power_of_p: Option<bool>,
    /// For even `m`: is every 2-cocycle also an `m`-cocycle here?
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contains_two_cocycles: Option<bool>,
    pub anomalies: Vec<AnomalyJson>,
}

/// Verification report against a golden fixture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReportJson {
    pub p: u64,
    pub cells: Vec<VerifyCellJson>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyCellJson {
    pub n: u64,
    pub k: usize,
    pub expected_elements: usize,
    pub constructive: CheckJson,
    pub oracle: CheckJson,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckJson {
    pub fn pass() -> Self {
        CheckJson {
            passed: true,
            detail: None,
        }
    }

    pub fn fail(detail: String) -> Self {
        CheckJson {
            passed: false,
            detail: Some(detail),
        }
    }
}

/// Partition from a comma-separated command-line argument like `9,2,1`.
pub fn parse_partition_arg(text: &str) -> CliResult<Partition> {
    let entries = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| CliError::Invalid(format!("bad partition entry {t:?}: {e}")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(MultiIndex::new(entries).normalize()?)
}
