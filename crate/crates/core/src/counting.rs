//! Counting cocycles by generating function.
//!
//! `C(n, k)` counts the multisets of `k` powers of `p` (with `p^0 = 1`
//! allowed) summing to `n`; these are the coefficients of
//! `prod_{i>=0} (1 - t x^{p^i})^{-1}`.  The extended count `D(n, k)` walks
//! the dimension upward past empty cells: it equals `C(n, k)` when that is
//! nonzero, otherwise `D(n, k + 1)` while `k < n`, and zero beyond.  `D`
//! is the number of indecomposable cocycles in degree `n` and dimension `k`.

use alloc::vec;
use alloc::vec::Vec;

use crate::multiindex::check_prime;
use crate::Result;

/// Number of ways to write `n` as a multiset of exactly `k` powers of `p`.
pub fn count_c(n: u64, k: usize, p: u64) -> Result<u64> {
    Ok(CountTable::build(n, k, p)?.c(n, k))
}

/// The extended cocycle count for dimensions `k >= 2`.
pub fn count_d(n: u64, k: usize, p: u64) -> Result<u64> {
    debug_assert!(k >= 2);
    Ok(CountTable::build(n, k, p)?.d(n, k))
}

/// Dense rectangle of `C` and `D` values for one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    p: u64,
    n_max: u64,
    k_max: usize,
    /// `c[n][k]`, `0 <= n <= n_max`.  Columns run past `k_max` up to
    /// `max(k_max, n_max)` so the `D` recurrence never leaves the table.
    c: Vec<Vec<u64>>,
    /// `d[n][k]`; slots with `k < 2` are unused and hold zero.
    d: Vec<Vec<u64>>,
}

impl CountTable {
    /// Fill the rectangle by dynamic programming over the available powers,
    /// largest exponent last so each power may repeat.
    pub fn build(n_max: u64, k_max: usize, p: u64) -> Result<CountTable> {
        check_prime(p)?;
        let rows = n_max as usize + 1;
        let cols = k_max.max(n_max as usize) + 1;
        let mut c = vec![vec![0u64; cols]; rows];
        c[0][0] = 1;
        let mut power = 1u64;
        while power <= n_max {
            for n in power as usize..rows {
                for k in 1..cols {
                    c[n][k] += c[n - power as usize][k - 1];
                }
            }
            match power.checked_mul(p) {
                Some(next) => power = next,
                None => break,
            }
        }

        let mut d = vec![vec![0u64; cols]; rows];
        for n in 0..rows {
            // Walk k downward so D(n, k + 1) is ready when C(n, k) = 0.
            for k in (2..cols).rev() {
                d[n][k] = if c[n][k] != 0 {
                    c[n][k]
                } else if k < n {
                    d[n][k + 1]
                } else {
                    0
                };
            }
        }

        Ok(CountTable {
            p,
            n_max,
            k_max,
            c,
            d,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn c(&self, n: u64, k: usize) -> u64 {
        self.c[n as usize][k]
    }

    pub fn d(&self, n: u64, k: usize) -> u64 {
        debug_assert!(k >= 2);
        self.d[n as usize][k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiindex::enumerate_power_of_p;

    #[test]
    fn counts_match_enumeration() {
        for p in [2u64, 3, 5] {
            let table = CountTable::build(16, 8, p).unwrap();
            for n in 0..=16u64 {
                for k in 0..=8usize {
                    let listed = if n == 0 {
                        if k == 0 {
                            1
                        } else {
                            0
                        }
                    } else {
                        enumerate_power_of_p(n, k, p).unwrap().len() as u64
                    };
                    assert_eq!(table.c(n, k), listed, "C mismatch n={n} k={k} p={p}");
                }
            }
        }
    }

    #[test]
    fn worked_count_values() {
        assert_eq!(count_c(12, 4, 3).unwrap(), 2);
        assert_eq!(count_c(6, 3, 3).unwrap(), 0);
        assert_eq!(count_c(9, 9, 7).unwrap(), 1);
        assert_eq!(count_d(12, 3, 3).unwrap(), 2);
        // Deg 6 dim 3 over F_3 pulls its single element from dimension 4.
        assert_eq!(count_d(6, 3, 3).unwrap(), 1);
    }

    #[test]
    fn narrow_table_still_walks_right() {
        // k_max = 3 < n = 6: D(6, 3) needs C(6, 4).
        let table = CountTable::build(6, 3, 3).unwrap();
        assert_eq!(table.d(6, 3), 1);
    }

    #[test]
    fn char_two_rows_never_empty() {
        for n in 2..=20u64 {
            let sigma = crate::multiindex::digital_sum(n, 2).unwrap();
            for k in sigma..=n {
                assert!(count_c(n, k as usize, 2).unwrap() > 0, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn d_vanishes_above_the_diagonal() {
        let table = CountTable::build(10, 12, 5).unwrap();
        for n in 0..=10u64 {
            for k in 2..=12usize {
                if (k as u64) > n {
                    assert_eq!(table.d(n, k), 0);
                }
            }
        }
    }
}
