//! Multi-indices, partitions, and base-`p` carry combinatorics.
//!
//! A multi-index is a finite tuple of nonnegative integers; a partition is a
//! multi-index with strictly positive entries in nonincreasing order.  The
//! number-theoretic functions here (digital sum, carry count, splitting
//! distance, multinomial residues) drive everything else in the crate.
//!
//! All orderings are descending-lexicographic: `(10, 1, 1)` sorts before
//! `(9, 2, 1)`.  This fixes enumeration order, map iteration order, and
//! matrix row/column order once and for all, so that two runs (or two
//! algorithms) can be compared bit for bit.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;

use crate::{Error, Result};

/// A tuple of nonnegative integers.  Entry order is significant when the
/// multi-index is used as an exponent vector; the multiset operations
/// (`concat`, `difference`, membership) ignore it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    entries: Vec<u64>,
}

impl MultiIndex {
    pub fn new(entries: Vec<u64>) -> Self {
        MultiIndex { entries }
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of the entries.
    pub fn weight(&self) -> u64 {
        self.entries.iter().sum()
    }

    /// True when some entry equals `value`.
    pub fn contains(&self, value: u64) -> bool {
        self.entries.contains(&value)
    }

    /// Concatenation of two multi-indices.
    pub fn concat(&self, other: &MultiIndex) -> MultiIndex {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        MultiIndex { entries }
    }

    /// Multiset difference.  Defined exactly when `other` embeds into `self`
    /// as a multiset; the result is returned in descending order.
    pub fn difference(&self, other: &MultiIndex) -> Result<MultiIndex> {
        let mut remaining = self.entries.clone();
        for x in &other.entries {
            match remaining.iter().position(|y| y == x) {
                Some(pos) => {
                    remaining.swap_remove(pos);
                }
                None => return Err(Error::NotEmbedded),
            }
        }
        remaining.sort_unstable_by(|a, b| b.cmp(a));
        Ok(MultiIndex { entries: remaining })
    }

    /// Sort the entries into a partition.  Errors on any zero entry.
    pub fn normalize(&self) -> Result<Partition> {
        if self.entries.contains(&0) {
            return Err(Error::ZeroEntry);
        }
        let mut entries = self.entries.clone();
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { entries })
    }

    /// Product of the entry factorials, `lambda!`.
    pub fn factorial(&self) -> BigUint {
        let mut acc = BigUint::from(1u32);
        for &e in &self.entries {
            for t in 2..=e {
                acc *= t;
            }
        }
        acc
    }

    /// The exact multinomial coefficient `(|lambda| choose lambda)`.
    ///
    /// Computed as a product of binomials of partial sums so intermediate
    /// values stay small.
    pub fn multinomial(&self) -> BigUint {
        let mut acc = BigUint::from(1u32);
        let mut partial = 0u64;
        for &e in &self.entries {
            partial += e;
            acc *= binomial_exact(partial, e);
        }
        acc
    }

    /// `(|lambda| choose lambda)` reduced mod `p`, computed digit-wise so no
    /// big integer is ever formed.  Zero exactly when the base-`p` sum of
    /// the entries carries.
    pub fn multinomial_mod_p(&self, p: u64) -> Result<u64> {
        check_prime(p)?;
        let mut acc = 1u64;
        let mut partial = 0u64;
        for &e in &self.entries {
            partial += e;
            acc = mul_mod(acc, binomial_mod_p(partial, e, p), p);
            if acc == 0 {
                return Ok(0);
            }
        }
        Ok(acc)
    }

    /// Number of base-`p` carries performed when summing the entries; equals
    /// the `p`-adic valuation of the multinomial coefficient.
    pub fn carry_count(&self, p: u64) -> Result<u64> {
        check_prime(p)?;
        let digit_total: u64 = self
            .entries
            .iter()
            .map(|&e| digital_sum_unchecked(e, p))
            .sum();
        Ok((digit_total - digital_sum_unchecked(self.weight(), p)) / (p - 1))
    }

    /// True when every entry is an exact power of `p` (including `p^0 = 1`).
    pub fn is_power_of_p(&self, p: u64) -> Result<bool> {
        check_prime(p)?;
        Ok(self.entries.iter().all(|&e| is_pow(e, p)))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Descending-lexicographic order: entry-wise greater multi-indices sort
/// first, so ascending iteration over a `BTreeMap` keyed by `MultiIndex`
/// visits keys in descending-lex order.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        other.entries.cmp(&self.entries)
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<&Partition> for MultiIndex {
    fn from(p: &Partition) -> Self {
        MultiIndex {
            entries: p.entries.clone(),
        }
    }
}

/// A multi-index with strictly positive entries in nonincreasing order.
/// Every multi-index with positive entries normalizes to exactly one
/// partition, which is what makes partitions usable as map keys.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    entries: Vec<u64>,
}

impl Partition {
    /// Build a partition, sorting the entries into canonical descending
    /// order.  Errors on any zero entry.
    pub fn new(mut entries: Vec<u64>) -> Result<Self> {
        if entries.contains(&0) {
            return Err(Error::ZeroEntry);
        }
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { entries })
    }

    pub fn parts(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.entries.iter().sum()
    }

    pub fn multi_index(&self) -> MultiIndex {
        MultiIndex::from(self)
    }

    pub fn carry_count(&self, p: u64) -> Result<u64> {
        self.multi_index().carry_count(p)
    }

    pub fn is_power_of_p(&self, p: u64) -> Result<bool> {
        self.multi_index().is_power_of_p(p)
    }

    /// True when the carry count is minimal among all partitions of the same
    /// weight and length.  Computed by exhaustive minimum so it can serve as
    /// ground truth for the gathering theorems rather than depending on them.
    pub fn is_carry_minimal(&self, p: u64) -> Result<bool> {
        check_prime(p)?;
        let mine = self.carry_count(p)?;
        for other in enumerate_partitions(self.weight(), self.len()) {
            if other.carry_count(p)? < mine {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sum of the digital sums of the entries minus the length: the fewest
    /// gathering operations needed to reach this partition from a
    /// power-of-`p` multi-index.
    pub fn splitting_distance(&self, p: u64) -> Result<u64> {
        check_prime(p)?;
        let total: u64 = self
            .entries
            .iter()
            .map(|&e| digital_sum_unchecked(e, p))
            .sum();
        Ok(total - self.len() as u64)
    }

    /// Gathering operator: replace entries `i` and `j` by their sum.
    /// Indices are zero-based with `i < j < len`.  Weight is preserved and
    /// length drops by one.
    pub fn gather(&self, i: usize, j: usize) -> Result<Partition> {
        if i >= j || j >= self.entries.len() {
            return Err(Error::IndexOutOfRange {
                i,
                j,
                len: self.entries.len(),
            });
        }
        let mut entries = Vec::with_capacity(self.entries.len() - 1);
        for (t, &e) in self.entries.iter().enumerate() {
            if t != i && t != j {
                entries.push(e);
            }
        }
        entries.push(self.entries[i] + self.entries[j]);
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { entries })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.multi_index().fmt(f)
    }
}

/// Same descending-lexicographic convention as [`MultiIndex`].
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.entries.cmp(&self.entries)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Primality by trial division; the characteristics in play are tiny.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn digital_sum_unchecked(mut n: u64, p: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

/// Sum of the base-`p` digits of `n`.
pub fn digital_sum(n: u64, p: u64) -> Result<u64> {
    check_prime(p)?;
    Ok(digital_sum_unchecked(n, p))
}

/// The minimal-length power-of-`p` partition of `n`: each `p^i` repeated as
/// many times as the `i`-th base-`p` digit of `n`.  Its length is the
/// digital sum of `n`.
pub fn rho(n: u64, p: u64) -> Result<Partition> {
    check_prime(p)?;
    debug_assert!(n >= 1);
    let mut entries = Vec::new();
    let mut power = 1u64;
    let mut rest = n;
    while rest > 0 {
        let digit = rest % p;
        for _ in 0..digit {
            entries.push(power);
        }
        rest /= p;
        power *= p;
    }
    entries.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Partition { entries })
}

fn is_pow(mut e: u64, p: u64) -> bool {
    if e == 0 {
        return false;
    }
    while e.is_multiple_of(p) {
        e /= p;
    }
    e == 1
}

fn binomial_exact(n: u64, k: u64) -> BigUint {
    debug_assert!(k <= n);
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for t in 0..k {
        acc *= n - t;
        acc /= t + 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// `C(a, b) mod p` for digits `a, b < p`, by the falling-factorial formula
/// with modular inverses.
fn binomial_digit_mod_p(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for t in 0..b {
        num = mul_mod(num, a - t, p);
        den = mul_mod(den, t + 1, p);
    }
    mul_mod(num, pow_mod(den, p - 2, p), p)
}

/// `C(n, k) mod p` by Lucas' theorem: the product of digit binomials.
pub(crate) fn binomial_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        acc = mul_mod(acc, binomial_digit_mod_p(n % p, k % p, p), p);
        if acc == 0 {
            return 0;
        }
        n /= p;
        k /= p;
    }
    acc
}

/// All partitions of `n` with exactly `k` positive parts, in descending
/// lexicographic order.  Empty when `n < k` or `k = 0 < n`.
pub fn enumerate_partitions(n: u64, k: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    descend(n, k, u64::MAX, &mut prefix, &mut out);
    out
}

fn descend(n: u64, k: usize, cap: u64, prefix: &mut Vec<u64>, out: &mut Vec<Partition>) {
    if k == 0 {
        if n == 0 {
            out.push(Partition {
                entries: prefix.clone(),
            });
        }
        return;
    }
    if n < k as u64 {
        return;
    }
    // First part ranges from largest feasible downward, which yields
    // descending-lex output directly.
    let hi = cap.min(n - (k as u64 - 1));
    let lo = n.div_ceil(k as u64);
    let mut part = hi;
    while part >= lo {
        prefix.push(part);
        descend(n - part, k - 1, part, prefix, out);
        prefix.pop();
        if part == lo {
            break;
        }
        part -= 1;
    }
}

/// All power-of-`p` partitions of weight `n` and length `k`, in descending
/// lexicographic order.  Nonempty exactly when `k` is congruent to the
/// digital sum of `n` mod `p - 1` and lies between the digital sum and `n`.
pub fn enumerate_power_of_p(n: u64, k: usize, p: u64) -> Result<Vec<Partition>> {
    check_prime(p)?;
    let mut powers = Vec::new();
    let mut q = 1u64;
    while q <= n {
        powers.push(q);
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    powers.reverse();
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    descend_pop(n, k, &powers, 0, &mut prefix, &mut out);
    Ok(out)
}

fn descend_pop(
    n: u64,
    k: usize,
    powers: &[u64],
    from: usize,
    prefix: &mut Vec<u64>,
    out: &mut Vec<Partition>,
) {
    if k == 0 {
        if n == 0 {
            out.push(Partition {
                entries: prefix.clone(),
            });
        }
        return;
    }
    if n < k as u64 {
        return;
    }
    for (idx, &q) in powers.iter().enumerate().skip(from) {
        if q > n {
            continue;
        }
        prefix.push(q);
        descend_pop(n - q, k - 1, powers, idx, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn mi(entries: &[u64]) -> MultiIndex {
        MultiIndex::new(entries.to_vec())
    }

    fn part(entries: &[u64]) -> Partition {
        mi(entries).normalize().unwrap()
    }

    #[test]
    fn normalize_sorts_descending() {
        assert_eq!(part(&[1, 2, 3]).parts(), &[3, 2, 1]);
        assert_eq!(part(&[9, 1, 1, 1]).parts(), &[9, 1, 1, 1]);
        assert_eq!(part(&[1, 10, 1]).parts(), &[10, 1, 1]);
        assert_eq!(mi(&[1, 0, 2]).normalize(), Err(Error::ZeroEntry));
    }

    #[test]
    fn digital_sums() {
        assert_eq!(digital_sum(16, 3).unwrap(), 4);
        assert_eq!(digital_sum(0, 7).unwrap(), 0);
        assert_eq!(digital_sum(7, 2).unwrap(), 3);
        assert_eq!(digital_sum(5, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(16, 3).unwrap().parts(), &[9, 3, 3, 1]);
        assert_eq!(rho(1, 5).unwrap().parts(), &[1]);
        assert_eq!(rho(13, 2).unwrap().parts(), &[8, 4, 1]);
        assert_eq!(
            rho(16, 3).unwrap().len() as u64,
            digital_sum(16, 3).unwrap()
        );
    }

    #[test]
    fn carry_counts() {
        assert_eq!(mi(&[9, 2, 1]).carry_count(3).unwrap(), 1);
        assert_eq!(mi(&[8, 3, 1]).carry_count(3).unwrap(), 2);
        assert_eq!(mi(&[7]).carry_count(3).unwrap(), 0);
        assert_eq!(mi(&[4, 4, 4]).carry_count(3).unwrap(), 2);
    }

    #[test]
    fn multinomials() {
        assert_eq!(mi(&[2, 1]).multinomial(), BigUint::from(3u32));
        assert_eq!(mi(&[1, 1, 1, 1]).multinomial(), BigUint::from(24u32));
        assert_eq!(mi(&[4, 4, 4]).multinomial(), BigUint::from(34650u32));
        // Permutation invariance.
        assert_eq!(mi(&[1, 2]).multinomial(), mi(&[2, 1]).multinomial());
    }

    #[test]
    fn multinomial_is_weight_factorial_over_entry_factorials() {
        for entries in [&[5u64, 3, 2][..], &[7, 1, 1], &[4, 4, 4, 4], &[9, 2, 1]] {
            let lam = mi(entries);
            let weight_factorial = mi(&[lam.weight()]).factorial();
            assert_eq!(
                lam.multinomial() * lam.factorial(),
                weight_factorial,
                "{lam}"
            );
        }
    }

    #[test]
    fn membership_checks_values() {
        let lam = mi(&[9, 2, 1]);
        assert!(lam.contains(2));
        assert!(!lam.contains(3));
    }

    #[test]
    fn multinomial_residues() {
        // One carry in base 3, so the residue vanishes.
        assert_eq!(mi(&[9, 2, 1]).multinomial_mod_p(3).unwrap(), 0);
        assert_ne!(mi(&[9, 3]).multinomial_mod_p(3).unwrap(), 0);
        assert_eq!(mi(&[14]).multinomial_mod_p(3).unwrap(), 1);
    }

    #[test]
    fn power_of_p_detection() {
        assert!(mi(&[9, 3, 1, 1]).is_power_of_p(3).unwrap());
        assert!(!mi(&[9, 2, 1]).is_power_of_p(3).unwrap());
        assert!(mi(&[8, 4, 1]).is_power_of_p(2).unwrap());
    }

    #[test]
    fn carry_minimality() {
        assert!(part(&[9, 2, 1]).is_carry_minimal(3).unwrap());
        assert!(!part(&[8, 3, 1]).is_carry_minimal(3).unwrap());
        assert!(part(&[9, 1, 1, 1]).is_carry_minimal(3).unwrap());
    }

    #[test]
    fn splitting_distances() {
        assert_eq!(part(&[9, 1, 1, 1]).splitting_distance(3).unwrap(), 0);
        assert_eq!(part(&[10, 2]).splitting_distance(3).unwrap(), 2);
        assert_eq!(rho(37, 3).unwrap().splitting_distance(3).unwrap(), 0);
    }

    #[test]
    fn gather_examples() {
        let lam = part(&[9, 1, 1, 1]);
        assert_eq!(lam.gather(0, 1).unwrap().parts(), &[10, 1, 1]);
        assert_eq!(lam.gather(1, 2).unwrap().parts(), &[9, 2, 1]);
        assert_eq!(
            part(&[3, 3, 3, 3]).gather(0, 1).unwrap().parts(),
            &[6, 3, 3]
        );
        assert_eq!(
            lam.gather(2, 2),
            Err(Error::IndexOutOfRange { i: 2, j: 2, len: 4 })
        );
    }

    #[test]
    fn partition_enumeration() {
        let got: Vec<_> = enumerate_partitions(4, 2)
            .iter()
            .map(|p| p.parts().to_vec())
            .collect();
        assert_eq!(got, vec![vec![3, 1], vec![2, 2]]);
        assert_eq!(enumerate_partitions(12, 2).len(), 6);
        assert!(enumerate_partitions(3, 4).is_empty());
        // Descending lexicographic throughout.
        let twelve = enumerate_partitions(12, 2);
        assert_eq!(twelve.first().unwrap().parts(), &[11, 1]);
        assert_eq!(twelve.last().unwrap().parts(), &[6, 6]);
    }

    #[test]
    fn power_of_p_enumeration() {
        let got: Vec<_> = enumerate_power_of_p(12, 4, 3)
            .unwrap()
            .iter()
            .map(|p| p.parts().to_vec())
            .collect();
        assert_eq!(got, vec![vec![9, 1, 1, 1], vec![3, 3, 3, 3]]);
        assert!(enumerate_power_of_p(6, 3, 3).unwrap().is_empty());
        assert_eq!(enumerate_power_of_p(5, 5, 5).unwrap().len(), 1);
    }

    #[test]
    fn multiset_difference() {
        let d = mi(&[2, 2, 1]).difference(&mi(&[2, 1])).unwrap();
        assert_eq!(d.entries(), &[2]);
        assert_eq!(
            mi(&[2, 2, 1]).difference(&mi(&[3])),
            Err(Error::NotEmbedded)
        );
        // concat(difference(a, b), b) is multiset-equal to a.
        let a = mi(&[5, 3, 3, 1]);
        let b = mi(&[3, 1]);
        let back = a.difference(&b).unwrap().concat(&b);
        assert_eq!(back.normalize().unwrap(), a.normalize().unwrap());
    }

    #[test]
    fn ordering_is_descending_lex() {
        let a = part(&[10, 1, 1]);
        let b = part(&[9, 2, 1]);
        assert!(a < b, "lex-greater partitions sort first");
    }
}
