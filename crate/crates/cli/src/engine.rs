//! Per-cell computation glue shared by the subcommands: run both engines on
//! a grid cell, compare spans, and fan cells out over a bounded worker pool.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use cocycle_core::classify::constructive_basis;
use cocycle_core::multiindex::enumerate_partitions;
use cocycle_core::oracle::{oracle_basis, span_echelon};
use cocycle_core::polyring::{CocycleBasis, PrimeField, SymPoly};
use cocycle_core::Error;

use crate::CliResult;

/// The constructive basis, with "no admissible source" mapped to the empty
/// basis: those are exactly the cells printed as `0` in the tables.
pub fn constructive_or_empty(n: u64, k: usize, p: u64) -> CliResult<CocycleBasis> {
    match constructive_basis(n, k, p) {
        Ok(basis) => Ok(basis),
        Err(Error::NoSource { .. }) => Ok(CocycleBasis {
            n,
            k,
            p,
            elements: Vec::new(),
        }),
        Err(e) => Err(e.into()),
    }
}

/// Bit-exact comparison of the spans of two families over the fixed
/// descending-lexicographic column order.
pub fn spans_equal(
    n: u64,
    k: usize,
    field: PrimeField,
    a: &[SymPoly<PrimeField>],
    b: &[SymPoly<PrimeField>],
) -> bool {
    let cols = enumerate_partitions(n, k);
    span_echelon(field, a, &cols) == span_echelon(field, b, &cols)
}

/// Both engines on one cell plus the span verdict.
pub struct CellComparison {
    pub constructive: CocycleBasis,
    pub oracle: CocycleBasis,
    pub span_equal: bool,
}

pub fn compare_cell(n: u64, k: usize, p: u64) -> CliResult<CellComparison> {
    let field = PrimeField::new(p)?;
    let constructive = constructive_or_empty(n, k, p)?;
    let oracle = oracle_basis(n, k, p)?;
    let span_equal = spans_equal(n, k, field, &constructive.elements, &oracle.elements);
    Ok(CellComparison {
        constructive,
        oracle,
        span_equal,
    })
}

/// Worker count: `COCYCLE_THREADS` when set, otherwise the machine's
/// available parallelism.
pub fn thread_count() -> usize {
    if let Ok(text) = std::env::var("COCYCLE_THREADS") {
        if let Ok(n) = text.trim().parse::<usize>() {
            return n.max(1);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Map a closure over items on a bounded pool.  Results come back in input
/// order, so output is deterministic regardless of scheduling.
pub fn parallel_map<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let workers = threads.max(1).min(items.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<R>>> = items.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= items.len() {
                    break;
                }
                let result = f(&items[idx]);
                *slots[idx].lock().expect("worker poisoned") = Some(result);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| {
            slot.into_inner()
                .expect("worker poisoned")
                .expect("slot filled")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_map_preserves_order() {
        let items: Vec<u64> = (0..100).collect();
        let doubled = parallel_map(&items, 8, |&x| x * 2);
        assert_eq!(doubled, (0..100).map(|x| x * 2).collect::<Vec<_>>());
    }

    #[test]
    fn empty_cells_compare_equal() {
        let outcome = compare_cell(3, 4, 2).unwrap();
        assert!(outcome.constructive.is_empty());
        assert!(outcome.oracle.is_empty());
        assert!(outcome.span_equal);
    }

    #[test]
    fn worked_cell_spans_match() {
        let outcome = compare_cell(12, 3, 3).unwrap();
        assert_eq!(outcome.constructive.len(), 2);
        assert_eq!(outcome.oracle.len(), 2);
        assert!(outcome.span_equal);
    }
}
