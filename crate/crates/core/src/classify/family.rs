//! Families of exponent pairs from a list of primes, and batch comparison.

use num_bigint::BigInt;
use num_traits::One;

use super::{compare_specs, ClassifyError, Comparison};
use crate::ktheory::TransformationSpec;
use crate::par::{map, Exec};
use crate::theta::ThetaSymbol;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `(m_k, n_k) = (p₁⋯p_k, p_{k+1}⋯p_r)` for `k = 0..=r`.
pub fn family_from_primes(primes: &[u64]) -> Result<Vec<(BigInt, BigInt)>, ClassifyError> {
    if primes.is_empty() {
        return Err(ClassifyError::NoPrimes);
    }
    for (i, &p) in primes.iter().enumerate() {
        if !is_prime(p) {
            return Err(ClassifyError::NotPrime(p));
        }
        if primes[..i].contains(&p) {
            return Err(ClassifyError::RepeatedPrime(p));
        }
    }
    let product = |ps: &[u64]| ps.iter().fold(BigInt::one(), |acc, &p| acc * p);
    Ok((0..=primes.len())
        .map(|k| (product(&primes[..k]), product(&primes[k..])))
        .collect())
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub members: Vec<(BigInt, BigInt)>,
    pub specs: Vec<TransformationSpec>,
    /// `(i, j, comparison)` for `i < j`, in lexicographic order.
    pub pairs: Vec<(usize, usize, Comparison)>,
}

impl FamilyReport {
    /// Every pair has isomorphic invariants and is separated from flip
    /// conjugacy.
    pub fn all_isomorphic_and_distinct(&self) -> bool {
        self.pairs
            .iter()
            .all(|(_, _, c)| c.elliott.is_isomorphic() && c.flip_distinct())
    }
}

/// Builds the `T³` members of the family and compares all pairs.
pub fn family_report(
    primes: &[u64],
    theta: &ThetaSymbol,
    bound: u32,
    exec: Exec,
) -> Result<FamilyReport, ClassifyError> {
    let members = family_from_primes(primes)?;
    let specs = members
        .iter()
        .map(|(m, n)| TransformationSpec::torus_big(vec![m.clone(), n.clone()], theta, false))
        .collect::<Result<Vec<_>, _>>()?;
    let index_pairs: Vec<(usize, usize)> = (0..specs.len())
        .flat_map(|i| (i + 1..specs.len()).map(move |j| (i, j)))
        .collect();
    let results = map(exec, &index_pairs, |&(i, j)| {
        compare_specs(&specs[i], &specs[j], bound, Exec::Sequential)
    });
    let pairs = index_pairs
        .into_iter()
        .zip(results)
        .map(|((i, j), r)| r.map(|c| (i, j, c)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FamilyReport {
        members,
        specs,
        pairs,
    })
}
