//! The constructive classification of modular symmetric 2-cocycles.
//!
//! Fix a degree `n`, dimension `k`, and prime `p`.  Take the smallest
//! `k0 >= k` at which power-of-`p` partitions of `n` exist and gather each
//! of them `m = k0 - k` times; when either `m <= p - 2` or the source is
//! the base-`p` representation of `n` (the shortest power-of-`p` partition),
//! the gathering orbits of distinct sources stay disjoint, every orbit
//! member is carry-minimal, and assigning each member its coefficient in
//! `pi_p(zeta_k^n)` turns each orbit into one indecomposable cocycle.
//! Those elements form a basis of the kernel of the 2-coboundary.
//!
//! The annihilating set of a partition is the closure of the "forced
//! companion" step: any cocycle containing `tau(lambda)` must also contain
//! `tau(mu)` for every `mu` in the set.  Within the hypotheses above it
//! coincides with the gathering orbit.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::counting;
use crate::multiindex::{check_prime, digital_sum, enumerate_power_of_p, is_prime, Partition};
use crate::polyring::{binom_expand_mod_p, zeta_mod_p, CocycleBasis, PrimeField, SymPoly};
use crate::{Error, Result};

/// Gathering orbits of the power-of-`p` partitions at one source length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GatherOrbitFamily {
    pub n: u64,
    /// Source length: smallest admissible `k0 >= k_target`.
    pub k0: usize,
    /// Gather depth `k0 - k_target`.
    pub m: usize,
    pub p: u64,
    /// Power-of-`p` partitions of `(n, k0)` in descending-lex order.
    pub sources: Vec<Partition>,
    /// `T^m({source})` for each source, in source order.
    pub orbits: Vec<BTreeSet<Partition>>,
}

/// Locate the source length and build the `m`-fold gathering orbit of every
/// power-of-`p` partition there.
///
/// Errors with [`Error::NoSource`] when `k_target > n` (no partitions at
/// all) or when no admissible source length exists.  The theorem hypotheses
/// (`m <= p - 2`, or the source is the base-`p` representation) are always
/// met when a source exists, because power-of-`p` lengths recur at steps of
/// `p - 1`; the check is kept anyway so a violation surfaces as an error
/// instead of a silent wrong answer.
pub fn gather_orbits(n: u64, k_target: usize, p: u64) -> Result<GatherOrbitFamily> {
    check_prime(p)?;
    debug_assert!(k_target >= 2);
    if k_target as u64 > n {
        return Err(Error::NoSource { n, k: k_target, p });
    }
    let mut found = None;
    for k0 in k_target..=n as usize {
        let sources = enumerate_power_of_p(n, k0, p)?;
        if !sources.is_empty() {
            found = Some((k0, sources));
            break;
        }
    }
    let Some((k0, sources)) = found else {
        return Err(Error::NoSource { n, k: k_target, p });
    };
    let m = k0 - k_target;
    let sigma = digital_sum(n, p)? as usize;
    if m > (p - 2) as usize && k0 != sigma {
        return Err(Error::NoSource { n, k: k_target, p });
    }
    let orbits = sources.iter().map(|source| orbit(source, m)).collect();
    Ok(GatherOrbitFamily {
        n,
        k0,
        m,
        p,
        sources,
        orbits,
    })
}

/// All partitions reachable from `source` by exactly `depth` gathering
/// operations.
fn orbit(source: &Partition, depth: usize) -> BTreeSet<Partition> {
    let mut current: BTreeSet<Partition> = BTreeSet::new();
    current.insert(source.clone());
    for _ in 0..depth {
        let mut next = BTreeSet::new();
        for part in &current {
            for i in 0..part.len() {
                for j in (i + 1)..part.len() {
                    next.insert(part.gather(i, j).expect("indices in range"));
                }
            }
        }
        current = next;
    }
    current
}

/// The constructive basis: one element per orbit, each member weighted by
/// its coefficient in `pi_p(zeta_k^n)`, in source order.  Every element is
/// verified to be a cocycle before it is returned.
pub fn constructive_basis(n: u64, k: usize, p: u64) -> Result<CocycleBasis> {
    let family = gather_orbits(n, k, p)?;
    let field = PrimeField::new(p)?;
    let weights = zeta_mod_p(n, k, p)?;
    let mut elements = Vec::with_capacity(family.orbits.len());
    for orbit in &family.orbits {
        let mut element = SymPoly::zero(field, n, k);
        for member in orbit {
            let coeff = weights.coeff(member).copied().unwrap_or(0);
            element.accumulate(member.clone(), coeff);
        }
        if !element.is_cocycle(2)? {
            return Err(Error::NotACocycle { n, k, p });
        }
        elements.push(element);
    }
    Ok(CocycleBasis { n, k, p, elements })
}

/// Least fixpoint of the companion step: reorder, split the first entry
/// along its base-`p` digits (both halves positive), merge the second half
/// into another entry, renormalize.  Always contains `lambda` itself.
pub fn annihilating_set(lambda: &Partition, p: u64) -> Result<BTreeSet<Partition>> {
    check_prime(p)?;
    debug_assert!(lambda.len() >= 2);
    let mut seen: BTreeSet<Partition> = BTreeSet::new();
    seen.insert(lambda.clone());
    let mut queue = vec![lambda.clone()];
    while let Some(current) = queue.pop() {
        for next in companion_step(&current, p)? {
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    Ok(seen)
}

/// Single step of the annihilating-set closure.
fn companion_step(part: &Partition, p: u64) -> Result<Vec<Partition>> {
    let entries = part.parts();
    let mut out = Vec::new();
    for i in 0..entries.len() {
        for j in 0..entries.len() {
            if i == j {
                continue;
            }
            for (left, right, _) in binom_expand_mod_p(entries[i], p)? {
                if left == 0 || right == 0 {
                    continue;
                }
                let mut next: Vec<u64> = Vec::with_capacity(entries.len());
                for (t, &e) in entries.iter().enumerate() {
                    if t == i {
                        next.push(left);
                    } else if t == j {
                        next.push(right + e);
                    } else {
                        next.push(e);
                    }
                }
                next.sort_unstable_by(|a, b| b.cmp(a));
                out.push(Partition::new(next)?);
            }
        }
    }
    Ok(out)
}

/// Generator/torsion summary of the representing ring in one degree and
/// dimension: a free generator from the rational cocycle, plus one
/// `p`-torsion polynomial generator for every indecomposable past the first
/// at each prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LazardDescriptor {
    pub n: u64,
    pub k: usize,
    /// Name of the free generator, e.g. `b_12`.
    pub free_generator: String,
    /// Prime -> count of torsion generators; zero counts are omitted.
    pub torsion: BTreeMap<u64, u64>,
}

/// Compute the descriptor for `n >= k >= 2` by counting indecomposables at
/// every prime up to `n`.  Primes beyond `n` admit no partition of `n`
/// with a carry, so they never contribute torsion.
pub fn lazard_descriptor(n: u64, k: usize) -> Result<LazardDescriptor> {
    debug_assert!(k >= 2 && n >= k as u64);
    let mut torsion = BTreeMap::new();
    for p in 2..=n {
        if !is_prime(p) {
            continue;
        }
        let count = counting::count_d(n, k, p)?;
        if count > 1 {
            torsion.insert(p, count - 1);
        }
    }
    Ok(LazardDescriptor {
        n,
        k,
        free_generator: format!("b_{n}"),
        torsion,
    })
}
