//! Exact polynomial arithmetic over `Z` and `F_p`.
//!
//! Two representations share the module.  [`SymPoly`] stores a symmetric
//! polynomial as a map from partitions (all of one weight and length) to
//! coefficients; the partition `lambda` stands for the symmetrized monomial
//! `tau(lambda)`, the sum of the distinct rearrangements of `x^lambda` with
//! unit coefficients.  [`MonoPoly`] stores an arbitrary polynomial as a map
//! from exponent vectors to coefficients and is the codomain of the
//! coboundary maps.
//!
//! Coefficients live in a [`CoeffDomain`]: either [`Integers`] (arbitrary
//! precision) or [`PrimeField`] (residues reduced to `[0, p)` with the prime
//! attached).  The two characteristics never mix; converting from `Z` to
//! `F_p` is the explicit [`project`] map.
//!
//! The `m`-coboundary of a polynomial `f` in `k >= m` variables is
//!
//! ```text
//! delta_m(f) = f(x1, ..., xk)
//!            + sum_{i=1}^{m} (-1)^i f(x0, ..., x_{i-2}, x_{i-1} + x_i, x_{i+1}, ..., xk)
//!            + (-1)^{m+1} f(x0, ..., x_{m-1}, x_{m+1}, ..., xk)
//! ```
//!
//! a degree-preserving map into `k + 1` variables with
//! `delta_m . delta_{m-1} = 0`.  Over `F_p` the expansion of
//! `(x + y)^c` runs over base-`p` digit splits only (Lucas), which keeps the
//! arithmetic in `u64`; over `Z` it uses full big-integer binomial rows.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;

use crate::multiindex::{check_prime, enumerate_partitions, MultiIndex, Partition};
use crate::{Error, Result};

/// A coefficient ring: exact integers or a prime field.
///
/// `exponent_splits(c)` returns every way `(a, b, coeff)` in which the ring
/// expands `(x + y)^c` as `sum coeff * x^a y^b`; this is the one place the
/// two characteristics genuinely differ, so the coboundary code can be
/// written once against it.
pub trait CoeffDomain: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn characteristic(&self) -> Option<u64>;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn exponent_splits(&self, c: u64) -> Vec<(u64, u64, Self::Elem)>;
}

/// The ring of arbitrary-precision integers (characteristic zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Integers;

impl CoeffDomain for Integers {
    type Elem = BigInt;

    fn characteristic(&self) -> Option<u64> {
        None
    }

    fn zero(&self) -> BigInt {
        BigInt::from(0)
    }

    fn one(&self) -> BigInt {
        BigInt::from(1)
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.sign() == Sign::NoSign
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    /// The full Pascal row: `(a, c - a, C(c, a))` for `a = 0..=c`.
    fn exponent_splits(&self, c: u64) -> Vec<(u64, u64, BigInt)> {
        let mut out = Vec::with_capacity(c as usize + 1);
        let mut binom = BigUint::from(1u32);
        for a in 0..=c {
            out.push((a, c - a, BigInt::from(binom.clone())));
            if a < c {
                binom *= c - a;
                binom /= a + 1;
            }
        }
        out
    }
}

/// The field `F_p` for a prime `p`.  Elements are residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_u64(&self, v: u64) -> u64 {
        v % self.p
    }

    /// Reduce a signed big integer into `[0, p)`.
    pub fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = v.mod_floor(&p);
        let (_, digits) = r.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }

    pub fn add_elems(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub_elems(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn neg_elem(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul_elems(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow_elem(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_elems(acc, base);
            }
            base = self.mul_elems(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv_elem(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow_elem(a, self.p - 2)
    }
}

impl CoeffDomain for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> Option<u64> {
        Some(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn neg(&self, a: &u64) -> u64 {
        self.neg_elem(*a)
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.add_elems(*a, *b)
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_elems(*a, *b)
    }

    fn exponent_splits(&self, c: u64) -> Vec<(u64, u64, u64)> {
        lucas_splits(c, self.p)
    }
}

/// All ordered pairs `(a, b)` with `a + b = c` whose binomial coefficient
/// `C(c, a)` survives mod `p`, together with that residue.  These are
/// exactly the splits where the base-`p` digits of `a` and `b` add to the
/// digits of `c` without carrying, i.e. `rho_p(a) u rho_p(b) = rho_p(c)`;
/// the multiplicity is the product of per-digit binomials.  Includes
/// `(c, 0)` and `(0, c)`.
pub fn binom_expand_mod_p(c: u64, p: u64) -> Result<Vec<(u64, u64, u64)>> {
    check_prime(p)?;
    Ok(lucas_splits(c, p))
}

fn lucas_splits(c: u64, p: u64) -> Vec<(u64, u64, u64)> {
    let field = PrimeField { p };
    // Base-p digits of c, least significant first.
    let mut digits = Vec::new();
    let mut rest = c;
    while rest > 0 {
        digits.push(rest % p);
        rest /= p;
    }
    let mut out = vec![(0u64, c, 1u64)];
    let mut place = 1u64;
    for &d in &digits {
        if d > 0 {
            let mut next = Vec::with_capacity(out.len() * (d as usize + 1));
            for &(a, b, mult) in &out {
                for e in 0..=d {
                    let m = field.mul_elems(mult, binomial_digit(d, e, &field));
                    next.push((a + e * place, b - e * place, m));
                }
            }
            out = next;
        }
        place *= p;
    }
    out.sort_unstable_by_key(|&(a, _, _)| a);
    out
}

fn binomial_digit(d: u64, e: u64, field: &PrimeField) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for t in 0..e {
        num = field.mul_elems(num, d - t);
        den = field.mul_elems(den, t + 1);
    }
    field.mul_elems(num, field.inv_elem(den))
}

/// An asymmetric polynomial: a finite map from fixed-length exponent vectors
/// to nonzero coefficients.  Iteration order over terms is descending
/// lexicographic on the exponent vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct MonoPoly<D: CoeffDomain> {
    domain: D,
    vars: usize,
    terms: BTreeMap<MultiIndex, D::Elem>,
}

impl<D: CoeffDomain> MonoPoly<D> {
    pub fn zero(domain: D, vars: usize) -> Self {
        MonoPoly {
            domain,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &D::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &MultiIndex) -> Option<&D::Elem> {
        self.terms.get(exponents)
    }

    /// Add `coeff * x^exponents`, dropping the term if it cancels to zero.
    pub fn accumulate(&mut self, exponents: MultiIndex, coeff: D::Elem) {
        debug_assert_eq!(exponents.len(), self.vars);
        if self.domain.is_zero(&coeff) {
            return;
        }
        match self.terms.entry(exponents) {
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = self.domain.add(slot.get(), &coeff);
                if self.domain.is_zero(&sum) {
                    slot.remove();
                } else {
                    slot.insert(sum);
                }
            }
        }
    }

    /// The `m`-coboundary: an exact polynomial in one more variable.
    /// Variable slot 0 of the result is the fresh variable `x0`.
    pub fn coboundary(&self, m: usize) -> Result<MonoPoly<D>> {
        let k = self.vars;
        if m == 0 || m > k {
            return Err(Error::DimensionTooSmall { m, dim: k });
        }
        let mut out = MonoPoly::zero(self.domain.clone(), k + 1);
        for (e, c) in &self.terms {
            let ev = e.entries();

            // Leading term f(x1, ..., xk), sign +.
            let mut r = vec![0u64; k + 1];
            r[1..].copy_from_slice(ev);
            out.accumulate(MultiIndex::new(r), c.clone());

            // Term i substitutes x_{i-1} + x_i into argument slot i.
            for i in 1..=m {
                let mut base = vec![0u64; k + 1];
                base[..i - 1].copy_from_slice(&ev[..i - 1]);
                base[i + 1..=k].copy_from_slice(&ev[i..k]);
                let negate = i % 2 == 1;
                for (a, b, mult) in self.domain.exponent_splits(ev[i - 1]) {
                    let mut r = base.clone();
                    r[i - 1] = a;
                    r[i] = b;
                    let mut coeff = self.domain.mul(&mult, c);
                    if negate {
                        coeff = self.domain.neg(&coeff);
                    }
                    out.accumulate(MultiIndex::new(r), coeff);
                }
            }

            // Trailing term drops x_m, sign (-1)^{m+1}.
            let mut r = vec![0u64; k + 1];
            r[..m].copy_from_slice(&ev[..m]);
            r[m + 1..=k].copy_from_slice(&ev[m..k]);
            let coeff = if (m + 1) % 2 == 1 {
                self.domain.neg(c)
            } else {
                c.clone()
            };
            out.accumulate(MultiIndex::new(r), coeff);
        }
        Ok(out)
    }
}

/// A symmetric polynomial in the monomial symmetric basis: a finite map from
/// partitions of weight `degree` and length `dimension` to nonzero
/// coefficients, where the partition `lambda` stands for `tau(lambda)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymPoly<D: CoeffDomain> {
    domain: D,
    degree: u64,
    dimension: usize,
    terms: BTreeMap<Partition, D::Elem>,
}

impl<D: CoeffDomain> SymPoly<D> {
    pub fn zero(domain: D, degree: u64, dimension: usize) -> Self {
        SymPoly {
            domain,
            degree,
            dimension,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(domain: D, degree: u64, dimension: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Partition, D::Elem)>,
    {
        let mut poly = SymPoly::zero(domain, degree, dimension);
        for (part, coeff) in terms {
            poly.accumulate(part, coeff);
        }
        poly
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending-lexicographic partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &D::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, part: &Partition) -> Option<&D::Elem> {
        self.terms.get(part)
    }

    pub fn support(&self) -> impl Iterator<Item = &Partition> {
        self.terms.keys()
    }

    pub fn accumulate(&mut self, part: Partition, coeff: D::Elem) {
        debug_assert_eq!(part.weight(), self.degree);
        debug_assert_eq!(part.len(), self.dimension);
        if self.domain.is_zero(&coeff) {
            return;
        }
        match self.terms.entry(part) {
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = self.domain.add(slot.get(), &coeff);
                if self.domain.is_zero(&sum) {
                    slot.remove();
                } else {
                    slot.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &SymPoly<D>) -> SymPoly<D> {
        debug_assert_eq!(self.domain, other.domain);
        debug_assert_eq!(
            (self.degree, self.dimension),
            (other.degree, other.dimension)
        );
        let mut out = self.clone();
        for (part, coeff) in &other.terms {
            out.accumulate(part.clone(), coeff.clone());
        }
        out
    }

    pub fn scale(&self, factor: &D::Elem) -> SymPoly<D> {
        let mut out = SymPoly::zero(self.domain.clone(), self.degree, self.dimension);
        for (part, coeff) in &self.terms {
            out.accumulate(part.clone(), self.domain.mul(coeff, factor));
        }
        out
    }

    /// Expand into the monomial representation: each partition contributes
    /// its distinct rearrangements, all scaled by the stored coefficient.
    pub fn expand(&self) -> MonoPoly<D> {
        let mut out = MonoPoly::zero(self.domain.clone(), self.dimension);
        for (part, coeff) in &self.terms {
            for arrangement in distinct_rearrangements(part.parts()) {
                out.accumulate(MultiIndex::new(arrangement), coeff.clone());
            }
        }
        out
    }

    /// The `m`-coboundary of the expanded polynomial.
    pub fn coboundary(&self, m: usize) -> Result<MonoPoly<D>> {
        if m == 0 || m > self.dimension {
            return Err(Error::DimensionTooSmall {
                m,
                dim: self.dimension,
            });
        }
        self.expand().coboundary(m)
    }

    /// True when the `m`-coboundary vanishes identically.
    pub fn is_cocycle(&self, m: usize) -> Result<bool> {
        Ok(self.coboundary(m)?.is_zero())
    }
}

impl<D: CoeffDomain> fmt::Display for SymPoly<D>
where
    D::Elem: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (part, coeff)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let c = alloc::format!("{coeff}");
            if c == "1" {
                write!(f, "tau{part}")?;
            } else {
                write!(f, "{c}*tau{part}")?;
            }
        }
        Ok(())
    }
}

/// The symmetrized monomial `tau(lambda)`: the sum over all distinct
/// rearrangements of `lambda`, each with coefficient one.  Dividing the
/// naive symmetrization by the stabilizer order never happens explicitly,
/// so nothing is ever divided in a modular domain.
pub fn tau_expand<D: CoeffDomain>(part: &Partition, domain: D) -> MonoPoly<D> {
    let mut out = MonoPoly::zero(domain.clone(), part.len());
    let one = domain.one();
    for arrangement in distinct_rearrangements(part.parts()) {
        out.accumulate(MultiIndex::new(arrangement), one.clone());
    }
    out
}

/// All distinct rearrangements of a descending slice, in descending
/// lexicographic order.
pub(crate) fn distinct_rearrangements(sorted_desc: &[u64]) -> Vec<Vec<u64>> {
    let mut pool: Vec<(u64, usize)> = Vec::new();
    for &v in sorted_desc {
        match pool.iter_mut().find(|(value, _)| *value == v) {
            Some((_, count)) => *count += 1,
            None => pool.push((v, 1)),
        }
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(sorted_desc.len());
    fill_slots(sorted_desc.len(), &mut pool, &mut prefix, &mut out);
    out
}

fn fill_slots(
    total: usize,
    pool: &mut Vec<(u64, usize)>,
    prefix: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if prefix.len() == total {
        out.push(prefix.clone());
        return;
    }
    for idx in 0..pool.len() {
        if pool[idx].1 == 0 {
            continue;
        }
        let value = pool[idx].0;
        pool[idx].1 -= 1;
        prefix.push(value);
        fill_slots(total, pool, prefix, out);
        prefix.pop();
        pool[idx].1 += 1;
    }
}

/// The integral cocycle `zeta_k^n`: the sum over all partitions of `n` into
/// `k` positive parts of the multinomial coefficient times the symmetrized
/// monomial, divided by the gcd of those multinomials.  All coefficients
/// come out positive, which fixes the overall sign.
pub fn zeta(n: u64, k: usize) -> SymPoly<Integers> {
    let parts = enumerate_partitions(n, k);
    let mut coeffs: Vec<BigUint> = Vec::with_capacity(parts.len());
    let mut g = BigUint::from(0u32);
    for part in &parts {
        let m = part.multi_index().multinomial();
        g = g.gcd(&m);
        coeffs.push(m);
    }
    let mut poly = SymPoly::zero(Integers, n, k);
    for (part, coeff) in parts.into_iter().zip(coeffs) {
        poly.accumulate(part, BigInt::from(coeff / &g));
    }
    poly
}

/// `zeta_k^n` built from its defining construction: `k - 1` applications of
/// the 1-coboundary to `x^n` (re-indexing variables each time), then gcd
/// normalization with the descending-lex-greatest coefficient made positive.
/// Kept as an independent route for cross-checking [`zeta`].
pub fn zeta_from_coboundary(n: u64, k: usize) -> Result<SymPoly<Integers>> {
    debug_assert!(k >= 1);
    let mut mono = MonoPoly::zero(Integers, 1);
    mono.accumulate(MultiIndex::new(vec![n]), BigInt::from(1));
    for _ in 1..k {
        // Re-indexing x_i -> x_{i+1} is positional, so the stored exponent
        // vectors carry over unchanged.
        mono = mono.coboundary(1)?;
    }

    let mut collected: BTreeMap<Partition, BigInt> = BTreeMap::new();
    for (exponents, coeff) in mono.terms() {
        let part = exponents.normalize()?;
        match collected.get(&part) {
            None => {
                collected.insert(part, coeff.clone());
            }
            Some(existing) => {
                if existing != coeff {
                    // The iterated coboundary of a single power is symmetric;
                    // a mismatch would mean the expansion is broken.
                    return Err(Error::SplitAnomaly {
                        dim: k,
                        detail: "asymmetric iterated coboundary".to_owned(),
                    });
                }
            }
        }
    }

    let mut g = BigUint::from(0u32);
    for coeff in collected.values() {
        g = g.gcd(&coeff.magnitude().clone());
    }
    if g == BigUint::from(0u32) {
        return Ok(SymPoly::zero(Integers, n, k));
    }
    let flip = collected
        .values()
        .next()
        .map(|leading| leading.sign() == Sign::Minus)
        .unwrap_or(false);
    let g = BigInt::from(g);
    let mut poly = SymPoly::zero(Integers, n, k);
    for (part, coeff) in collected {
        let reduced = if flip { -&coeff / &g } else { coeff / &g };
        poly.accumulate(part, reduced);
    }
    Ok(poly)
}

/// Reduce an integral symmetric polynomial mod `p`, dropping vanishing terms.
pub fn project(poly: &SymPoly<Integers>, p: u64) -> Result<SymPoly<PrimeField>> {
    let field = PrimeField::new(p)?;
    let mut out = SymPoly::zero(field, poly.degree(), poly.dimension());
    for (part, coeff) in poly.terms() {
        out.accumulate(part.clone(), field.reduce_bigint(coeff));
    }
    Ok(out)
}

/// `pi_p(zeta_k^n)`.  Supported exactly on the carry-minimal partitions of
/// weight `n` and length `k`.
pub fn zeta_mod_p(n: u64, k: usize, p: u64) -> Result<SymPoly<PrimeField>> {
    project(&zeta(n, k), p)
}

/// An ordered list of indecomposable cocycles spanning the kernel of the
/// 2-coboundary in one degree, dimension, and characteristic.
#[derive(Debug, Clone, PartialEq)]
pub struct CocycleBasis {
    pub n: u64,
    pub k: usize,
    pub p: u64,
    pub elements: Vec<SymPoly<PrimeField>>,
}

impl CocycleBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}
