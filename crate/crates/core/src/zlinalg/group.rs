use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{snf, IntMatrix, LinalgError};

/// A finitely generated abelian group `Z^rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` in
/// invariant-factor form: every `dᵢ ≥ 2` and `dᵢ | dᵢ₊₁`.
///
/// The representation is canonical, so structural equality is isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FgAbGroup {
    /// Validating constructor; the factors must already be canonical.
    pub fn new(rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self, LinalgError> {
        for (i, d) in invariant_factors.iter().enumerate() {
            if d < &BigInt::from(2) {
                return Err(LinalgError::InvalidInvariantFactor(d.clone()));
            }
            if let Some(next) = invariant_factors.get(i + 1) {
                if !(next % d).is_zero() {
                    return Err(LinalgError::BrokenDivisibilityChain {
                        smaller: d.clone(),
                        larger: next.clone(),
                    });
                }
            }
        }
        Ok(Self {
            rank,
            invariant_factors,
        })
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        Self {
            rank,
            invariant_factors: Vec::new(),
        }
    }

    /// The group `⊕ Z/cᵢ`, where an order of 0 contributes a copy of Z and
    /// an order of ±1 contributes nothing. Any list of orders is accepted.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let s = snf(&IntMatrix::diagonal(orders));
        let factors: Vec<BigInt> = s
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        Self {
            rank: orders.len() - s.rank,
            invariant_factors: factors,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn torsion(&self) -> Self {
        Self {
            rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.is_free()
    }

    /// Number of cyclic summands in the canonical decomposition.
    pub fn num_generators(&self) -> usize {
        self.rank + self.invariant_factors.len()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders: Vec<BigInt> = vec![BigInt::zero(); self.rank + other.rank];
        orders.extend(self.invariant_factors.iter().cloned());
        orders.extend(other.invariant_factors.iter().cloned());
        Self::from_cyclic_orders(&orders)
    }

    /// Cyclic orders in generator order: `None` for each free summand first,
    /// then the invariant factors.
    pub fn generator_orders(&self) -> Vec<Option<BigInt>> {
        std::iter::repeat_n(None, self.rank)
            .chain(self.invariant_factors.iter().cloned().map(Some))
            .collect()
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{}", d.abs()));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn canonicalizes_coprime_orders() {
        let g = FgAbGroup::from_cyclic_orders(&big(&[2, 3, 0, 1, -4]));
        assert_eq!(g.rank(), 1);
        assert_eq!(g.invariant_factors(), big(&[2, 12]).as_slice());
        assert_eq!(g.to_string(), "Z + Z/2 + Z/12");
    }

    #[test]
    fn validating_constructor() {
        assert!(FgAbGroup::new(0, big(&[2, 4])).is_ok());
        assert!(matches!(
            FgAbGroup::new(0, big(&[2, 3])),
            Err(LinalgError::BrokenDivisibilityChain { .. })
        ));
        assert!(matches!(
            FgAbGroup::new(1, big(&[1])),
            Err(LinalgError::InvalidInvariantFactor(_))
        ));
    }

    #[test]
    fn display() {
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
        assert_eq!(FgAbGroup::free(4).to_string(), "Z^4");
        let g = FgAbGroup::free(4).direct_sum(&FgAbGroup::from_cyclic_orders(&big(&[2, 3])));
        assert_eq!(g.to_string(), "Z^4 + Z/6");
    }
}
