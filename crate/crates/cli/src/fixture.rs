//! Golden-fixture loading and the scalar-equivalence basis matcher.
//!
//! Printed tables fix each basis element only up to a global nonzero
//! scalar, and list elements in no particular order.  A computed basis
//! matches a fixture cell when there is a bijection between elements such
//! that matched pairs have identical support and proportional coefficients.
//! Distinct elements have disjoint supports, so matching by support is
//! unambiguous.

use std::collections::BTreeSet;
use std::path::Path;

use cocycle_core::multiindex::{MultiIndex, Partition};
use cocycle_core::polyring::{PrimeField, SymPoly};

use crate::formats::{signed_residue, FixtureJson};
use crate::{CliError, CliResult};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub p: u64,
    pub cells: Vec<FixtureCell>,
}

#[derive(Debug, Clone)]
pub struct FixtureCell {
    pub n: u64,
    pub k: usize,
    /// Expected basis elements as reduced-residue term lists.
    pub basis: Vec<Vec<(Partition, u64)>>,
}

pub fn load_fixture(path: &Path) -> CliResult<Fixture> {
    let text = std::fs::read_to_string(path)?;
    parse_fixture(&text)
}

pub fn parse_fixture(text: &str) -> CliResult<Fixture> {
    let json: FixtureJson = serde_json::from_str(text)?;
    PrimeField::new(json.p)?;
    let mut cells = Vec::with_capacity(json.cells.len());
    for cell in &json.cells {
        let mut basis = Vec::with_capacity(cell.basis.len());
        for element in &cell.basis {
            let mut terms = Vec::with_capacity(element.len());
            for (entries, coeff) in element {
                let part = MultiIndex::new(entries.clone()).normalize()?;
                if part.weight() != cell.n || part.len() != cell.k {
                    return Err(CliError::Invalid(format!(
                        "fixture cell ({}, {}) lists partition {part} of wrong weight or length",
                        cell.n, cell.k
                    )));
                }
                let residue = signed_residue(*coeff, json.p);
                if residue == 0 {
                    return Err(CliError::Invalid(format!(
                        "fixture cell ({}, {}) has a zero coefficient at {part}",
                        cell.n, cell.k
                    )));
                }
                terms.push((part, residue));
            }
            basis.push(terms);
        }
        cells.push(FixtureCell {
            n: cell.n,
            k: cell.k,
            basis,
        });
    }
    Ok(Fixture { p: json.p, cells })
}

/// Compare a computed basis against an expected one, up to element
/// reordering and one nonzero scalar per element.  `Err` carries an
/// itemized description of the first failure.
pub fn match_basis(
    field: PrimeField,
    expected: &[Vec<(Partition, u64)>],
    computed: &[SymPoly<PrimeField>],
) -> Result<(), String> {
    if expected.len() != computed.len() {
        return Err(format!(
            "element count mismatch: expected {}, computed {}",
            expected.len(),
            computed.len()
        ));
    }
    let mut used = vec![false; computed.len()];
    for want in expected {
        let want_support: BTreeSet<&Partition> = want.iter().map(|(p, _)| p).collect();
        let found = computed.iter().enumerate().find(|(idx, poly)| {
            if used[*idx] || poly.term_count() != want.len() {
                return false;
            }
            let support: BTreeSet<&Partition> = poly.support().collect();
            support == want_support
        });
        let Some((idx, poly)) = found else {
            let supp = want_support
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            return Err(format!("no computed element with support {{{supp}}}"));
        };
        used[idx] = true;

        // One scalar must reconcile every coefficient.
        let (first_part, first_want) = &want[0];
        let got = *poly.coeff(first_part).expect("support checked");
        let scalar = field.mul_elems(*first_want, field.inv_elem(got));
        for (part, want_coeff) in want {
            let got = *poly.coeff(part).expect("support checked");
            if field.mul_elems(got, scalar) != *want_coeff {
                return Err(format!(
                    "element with support containing {part}: coefficients not proportional"
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use cocycle_core::polyring::SymPoly;

    fn part(entries: &[u64]) -> Partition {
        MultiIndex::new(entries.to_vec()).normalize().unwrap()
    }

    #[test]
    fn fixture_parses_negative_coefficients() {
        let text = r#"{"p":3,"cells":[{"n":5,"k":2,"basis":[[[[3,2],1],[[4,1],-1]]]}]}"#;
        let fixture = parse_fixture(text).unwrap();
        assert_eq!(
            fixture.cells[0].basis[0],
            vec![(part(&[3, 2]), 1), (part(&[4, 1]), 2)]
        );
    }

    #[test]
    fn scalar_equivalence_matching() {
        let field = PrimeField::new(5).unwrap();
        let expected = vec![vec![(part(&[3, 1]), 4u64), (part(&[2, 2]), 1u64)]];
        // 2x the expected element: 8 = 3, 2.
        let computed = vec![SymPoly::from_terms(
            field,
            4,
            2,
            [(part(&[3, 1]), 3u64), (part(&[2, 2]), 2u64)],
        )];
        assert!(match_basis(field, &expected, &computed).is_ok());

        let wrong = vec![SymPoly::from_terms(
            field,
            4,
            2,
            [(part(&[3, 1]), 3u64), (part(&[2, 2]), 3u64)],
        )];
        assert!(match_basis(field, &expected, &wrong).is_err());
    }

    #[test]
    fn count_mismatch_is_reported() {
        let field = PrimeField::new(3).unwrap();
        let err = match_basis(field, &[], &[SymPoly::zero(field, 2, 2)]).unwrap_err();
        assert!(err.contains("count mismatch"));
    }
}
