//! Acceptance suite: every release criterion as one test, each printing a
//! single PASS line (run with `-- --nocapture` to see them).  Tolerances are
//! pinned in the assertions; counts and spans are exact, timings are upper
//! bounds.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use cocycle_cli::commands::{run_scan, run_verify};
use cocycle_core::classify::{annihilating_set, constructive_basis, gather_orbits};
use cocycle_core::counting::CountTable;
use cocycle_core::multiindex::{enumerate_partitions, enumerate_power_of_p, MultiIndex, Partition};
use cocycle_core::oracle::{build_matrix, oracle_basis, span_echelon};
use cocycle_core::polyring::{zeta_mod_p, PrimeField, SymPoly};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const GRID_PRIMES: [u64; 3] = [2, 3, 5];

fn part(entries: &[u64]) -> Partition {
    MultiIndex::new(entries.to_vec()).normalize().unwrap()
}

fn fixture_path(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn verify_table(criterion: usize, name: &str, file: &str, budget_secs: u64) {
    let started = Instant::now();
    let report = run_verify(&fixture_path(file), None, None).unwrap();
    let elapsed = started.elapsed();
    let failed: Vec<String> = report
        .cells
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("(n={}, k={})", c.n, c.k))
        .collect();
    let pass = report.passed && elapsed.as_secs() < budget_secs;
    println!(
        "ACCEPTANCE {criterion:02} {name}: {} ({}/{} cells, {:.2?})",
        if pass { "PASS" } else { "FAIL" },
        report.cells.len() - failed.len(),
        report.cells.len(),
        elapsed
    );
    assert!(failed.is_empty(), "failed cells: {failed:?}");
    assert!(
        elapsed.as_secs() < budget_secs,
        "budget exceeded: {elapsed:.2?}"
    );
}

#[test]
fn criterion_01_char2_table_reproduction() {
    verify_table(1, "char-2 table reproduction", "char2.json", 60);
}

#[test]
fn criterion_02_char3_table_reproduction() {
    verify_table(2, "char-3 table reproduction", "char3.json", 120);
}

#[test]
fn criterion_03_char5_table_reproduction() {
    verify_table(3, "char-5 table reproduction", "char5.json", 120);
}

#[test]
fn criterion_04_span_equality_across_grid() {
    let mut cells = 0usize;
    for p in GRID_PRIMES {
        let field = PrimeField::new(p).unwrap();
        for n in 2..=16u64 {
            for k in 2..=6usize.min(n as usize) {
                let cols = enumerate_partitions(n, k);
                let constructive = constructive_basis(n, k, p).unwrap();
                let kernel = build_matrix(n, k, p, 2).unwrap().nullspace();
                let echelon = span_echelon(field, &constructive.elements, &cols);
                assert_eq!(
                    echelon, kernel.vectors,
                    "span mismatch at n={n} k={k} p={p}"
                );
                cells += 1;
            }
        }
    }
    println!("ACCEPTANCE 04 span equality constructive vs oracle: PASS ({cells} cells)");
}

#[test]
fn criterion_05_count_consistency() {
    let mut cells = 0usize;
    for p in GRID_PRIMES {
        let table = CountTable::build(16, 6, p).unwrap();
        for n in 2..=16u64 {
            for k in 2..=6usize {
                let kernel = build_matrix(n, k, p, 2).unwrap().nullspace();
                assert_eq!(
                    kernel.dim() as u64,
                    table.d(n, k),
                    "count mismatch at n={n} k={k} p={p}"
                );
                cells += 1;
            }
        }
    }
    println!("ACCEPTANCE 05 count consistency D = kernel dimension: PASS ({cells} cells)");
}

#[test]
fn criterion_06_worked_identities() {
    // pi_3 zeta_3^12 = tau(9,2,1) - tau(10,1,1) + tau(6,3,3), up to sign.
    let z = zeta_mod_p(12, 3, 3).unwrap();
    let expected = SymPoly::from_terms(
        PrimeField::new(3).unwrap(),
        12,
        3,
        [
            (part(&[9, 2, 1]), 1u64),
            (part(&[10, 1, 1]), 2),
            (part(&[6, 3, 3]), 1),
        ],
    );
    let negated = expected.scale(&2);
    assert!(
        z == expected || z == negated,
        "zeta_3^12 mod 3 mismatch: {z}"
    );

    // pi_3 zeta_2^8 = tau(7,1) - tau(6,2) + tau(5,3) - tau(4,4), up to sign.
    let z = zeta_mod_p(8, 2, 3).unwrap();
    let expected = SymPoly::from_terms(
        PrimeField::new(3).unwrap(),
        8,
        2,
        [
            (part(&[7, 1]), 1u64),
            (part(&[6, 2]), 2),
            (part(&[5, 3]), 1),
            (part(&[4, 4]), 2),
        ],
    );
    let negated = expected.scale(&2);
    assert!(
        z == expected || z == negated,
        "zeta_2^8 mod 3 mismatch: {z}"
    );

    // T^1(9,1,1,1) = {(9,2,1), (10,1,1)} and T^1(3,3,3,3) = {(6,3,3)}.
    let family = gather_orbits(12, 3, 3).unwrap();
    assert_eq!(
        family.sources,
        vec![part(&[9, 1, 1, 1]), part(&[3, 3, 3, 3])]
    );
    let orbit0: BTreeSet<_> = [part(&[9, 2, 1]), part(&[10, 1, 1])].into_iter().collect();
    let orbit1: BTreeSet<_> = [part(&[6, 3, 3])].into_iter().collect();
    assert_eq!(family.orbits, vec![orbit0, orbit1]);

    // T^2(3,3,1,1) = {(7,1), (6,2), (5,3), (4,4)}.
    let family = gather_orbits(8, 2, 3).unwrap();
    assert_eq!(family.sources, vec![part(&[3, 3, 1, 1])]);
    let orbit: BTreeSet<_> = [part(&[7, 1]), part(&[6, 2]), part(&[5, 3]), part(&[4, 4])]
        .into_iter()
        .collect();
    assert_eq!(family.orbits, vec![orbit]);

    println!("ACCEPTANCE 06 worked identities: PASS");
}

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    })
}

fn arb_partition(n_max: u64, k_max: usize) -> impl Strategy<Value = Partition> {
    (2u64..=n_max)
        .prop_flat_map(move |n| (Just(n), 1..=k_max.min(n as usize)))
        .prop_flat_map(|(n, k)| {
            let parts = enumerate_partitions(n, k);
            (0..parts.len()).prop_map(move |i| parts[i].clone())
        })
}

fn arb_grid_cell(k_min: usize) -> impl Strategy<Value = (u64, usize, u64)> {
    (2u64..=16, prop_oneof![Just(2u64), Just(3), Just(5)])
        .prop_flat_map(move |(n, p)| {
            let k_hi = 6usize.min(n as usize).max(k_min);
            (Just(n), k_min..=k_hi, Just(p))
        })
        .prop_map(|(n, k, p)| (n, k, p))
}

fn tau_mod_p(lambda: &Partition, p: u64) -> SymPoly<PrimeField> {
    let field = PrimeField::new(p).unwrap();
    SymPoly::from_terms(
        field,
        lambda.weight(),
        lambda.len(),
        [(lambda.clone(), 1u64)],
    )
}

#[test]
fn criterion_07a_differential_squares_to_zero() {
    let strategy = (
        arb_partition(10, 4),
        prop_oneof![Just(2u64), Just(3), Just(5)],
        any::<u64>(),
    );
    let outcome = runner().run(&strategy, |(lambda, p, seed)| {
        let m = 2 + (seed % lambda.len() as u64) as usize;
        let poly = tau_mod_p(&lambda, p);
        let second = poly.coboundary(m - 1).unwrap().coboundary(m).unwrap();
        assert!(
            second.is_zero(),
            "delta_{m} . delta_{} != 0 on {lambda} mod {p}",
            m - 1
        );
        Ok(())
    });
    println!(
        "ACCEPTANCE 07a differential squares to zero (1000 cases): {}",
        if outcome.is_ok() { "PASS" } else { "FAIL" }
    );
    outcome.unwrap();
}

#[test]
fn criterion_07b_power_of_p_cocycles() {
    let strategy = (
        2u64..=16,
        prop_oneof![Just(2u64), Just(3), Just(5)],
        any::<u64>(),
    );
    let outcome = runner().run(&strategy, |(n, p, seed)| {
        let mut pool = Vec::new();
        for k in 2..=n as usize {
            pool.extend(enumerate_power_of_p(n, k, p).unwrap());
        }
        if pool.is_empty() {
            return Ok(());
        }
        let lambda = pool[(seed % pool.len() as u64) as usize].clone();
        assert!(
            tau_mod_p(&lambda, p).is_cocycle(2).unwrap(),
            "{lambda} mod {p}"
        );
        Ok(())
    });
    println!(
        "ACCEPTANCE 07b power-of-p symmetrized monomials are cocycles (1000 cases): {}",
        if outcome.is_ok() { "PASS" } else { "FAIL" }
    );
    outcome.unwrap();
}

#[test]
fn criterion_07c_carry_preservation() {
    let strategy = (
        arb_partition(12, 4),
        prop_oneof![Just(2u64), Just(3), Just(5)],
        any::<u64>(),
    );
    let outcome = runner().run(&strategy, |(lambda, p, seed)| {
        if lambda.len() < 2 {
            return Ok(());
        }
        let m = 2 + (seed % (lambda.len() as u64 - 1)) as usize;
        let carries = lambda.carry_count(p).unwrap();
        let image = tau_mod_p(&lambda, p).coboundary(m).unwrap();
        for (exponents, _) in image.terms() {
            assert_eq!(
                exponents.carry_count(p).unwrap(),
                carries,
                "{lambda} mod {p}"
            );
        }
        Ok(())
    });
    println!(
        "ACCEPTANCE 07c coboundary preserves carry count (1000 cases): {}",
        if outcome.is_ok() { "PASS" } else { "FAIL" }
    );
    outcome.unwrap();
}

#[test]
fn criterion_07d_kernel_support_is_carry_minimal() {
    let outcome = runner().run(&arb_grid_cell(2), |(n, k, p)| {
        let kernel = build_matrix(n, k, p, 2).unwrap().nullspace();
        for v in &kernel.vectors {
            for (j, &c) in v.iter().enumerate() {
                if c != 0 {
                    assert!(
                        kernel.cols[j].is_carry_minimal(p).unwrap(),
                        "non-carry-minimal {} in kernel at n={n} k={k} p={p}",
                        kernel.cols[j]
                    );
                }
            }
        }
        Ok(())
    });
    println!(
        "ACCEPTANCE 07d kernel support carry-minimal (1000 cases): {}",
        if outcome.is_ok() { "PASS" } else { "FAIL" }
    );
    outcome.unwrap();
}

#[test]
fn criterion_07e_zeta_weights_nonzero_on_indecomposables() {
    let outcome = runner().run(&arb_grid_cell(2), |(n, k, p)| {
        let field = PrimeField::new(p).unwrap();
        let basis = oracle_basis(n, k, p).unwrap();
        let z = zeta_mod_p(n, k, p).unwrap();
        for element in &basis.elements {
            // zeta restricted to this support must be a nonzero multiple.
            let mut scalar = None;
            for (lambda, &coeff) in element.terms() {
                let weight = z.coeff(lambda).copied().unwrap_or(0);
                assert_ne!(weight, 0, "zeta misses {lambda} at n={n} k={k} p={p}");
                let ratio = field.mul_elems(weight, field.inv_elem(coeff));
                match scalar {
                    None => scalar = Some(ratio),
                    Some(s) => assert_eq!(s, ratio, "inconsistent ratio at n={n} k={k} p={p}"),
                }
            }
        }
        Ok(())
    });
    println!(
        "ACCEPTANCE 07e zeta decomposes over indecomposables with nonzero weights (1000 cases): {}",
        if outcome.is_ok() { "PASS" } else { "FAIL" }
    );
    outcome.unwrap();
}

#[test]
fn criterion_07f_composition_closure() {
    let outcome = runner().run(&arb_grid_cell(4), |(n, k, p)| {
        if k > n as usize {
            return Ok(());
        }
        let basis = oracle_basis(n, k, p).unwrap();
        for element in &basis.elements {
            assert!(
                element.is_cocycle(4).unwrap(),
                "m=4 fails at n={n} k={k} p={p}"
            );
            if k >= 6 {
                assert!(
                    element.is_cocycle(6).unwrap(),
                    "m=6 fails at n={n} k={k} p={p}"
                );
            }
        }
        Ok(())
    });
    println!(
        "ACCEPTANCE 07f composition closure on k >= 4 cocycles (1000 cases): {}",
        if outcome.is_ok() { "PASS" } else { "FAIL" }
    );
    outcome.unwrap();
}

#[test]
fn criterion_08_annihilating_set_examples() {
    let set = |parts: &[&[u64]]| -> BTreeSet<Partition> { parts.iter().map(|e| part(e)).collect() };

    assert_eq!(
        annihilating_set(&part(&[9, 2, 1]), 3).unwrap(),
        set(&[&[9, 2, 1], &[10, 1, 1]])
    );
    assert_eq!(
        annihilating_set(&part(&[6, 3, 3]), 3).unwrap(),
        set(&[&[6, 3, 3]])
    );

    let full_444 = set(&[
        &[4, 4, 4],
        &[5, 4, 3],
        &[6, 4, 2],
        &[6, 5, 1],
        &[7, 3, 2],
        &[7, 4, 1],
        &[8, 3, 1],
        &[9, 2, 1],
        &[10, 1, 1],
        &[6, 3, 3],
    ]);
    assert_eq!(annihilating_set(&part(&[4, 4, 4]), 3).unwrap(), full_444);

    let mut expected_552 = set(&[&[5, 5, 2], &[8, 2, 2]]);
    expected_552.extend(full_444);
    assert_eq!(
        annihilating_set(&part(&[5, 5, 2]), 3).unwrap(),
        expected_552
    );

    println!("ACCEPTANCE 08 annihilating set worked examples: PASS");
}

#[test]
fn criterion_09_oracle_independence() {
    // The oracle path (matrix + nullspace) must not call into classify.
    let core_src = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/src");
    for file in ["oracle.rs", "polyring.rs", "multiindex.rs"] {
        let text = std::fs::read_to_string(core_src.join(file)).unwrap();
        assert!(
            !text.contains("classify"),
            "{file} references the classify module"
        );
    }
    println!("ACCEPTANCE 09 oracle independence from classify: PASS");
}

#[test]
fn criterion_10_conjecture_scan() {
    for p in [2u64, 3] {
        let first = run_scan(10, 5, p, 3).unwrap();
        let second = run_scan(10, 5, p, 3).unwrap();
        assert_eq!(first, second, "scan not deterministic for p={p}");
        let mut exceeding = Vec::new();
        for cell in &first.cells {
            assert!(cell.k >= 3 && cell.n <= 10);
            let flag = cell.exceeds_power_of_p.expect("odd m sets the flag");
            assert_eq!(flag, (cell.dim as u64) > cell.power_of_p_count);
            if flag {
                exceeding.push((cell.n, cell.k));
            }
        }
        println!(
            "ACCEPTANCE 10 conjecture scan p={p} m=3: PASS ({} cells, {} exceeding power-of-p span: {:?})",
            first.cells.len(),
            exceeding.len(),
            exceeding
        );
    }
}
