//! Elliott-invariant comparison and similarity obstructions to flip
//! conjugacy.

mod compare;
mod family;
mod similarity;

use thiserror::Error;

use crate::crossed::{elliott, CrossedError, ElliottInvariant};
use crate::ktheory::{KTheoryError, SpaceTag, TransformationSpec};
use crate::par::Exec;
use crate::zlinalg::LinalgError;

pub use compare::{elliott_compare, validate_witness, CompareVerdict, IsomorphismWitness};
pub use family::{family_from_primes, family_report, FamilyReport};
pub use similarity::{
    check_conjugator, flip_conjugacy_verdict, unipotent_invariants, ConjugacyVerdict, FlipTarget,
    Separation, SimilarityInvariants, DEFAULT_SEARCH_BOUND, MAX_CANDIDATES,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrices have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("no primes given")]
    NoPrimes,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is repeated")]
    RepeatedPrime(u64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    KTheory(#[from] KTheoryError),
    #[error(transparent)]
    Crossed(#[from] CrossedError),
}

/// The flip-conjugacy check is only meaningful between tori of equal
/// dimension, where `h*` on `H¹` is available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlipCheck {
    Computed(ConjugacyVerdict),
    Excluded(String),
}

#[derive(Clone, Debug)]
pub struct Comparison {
    pub first: ElliottInvariant,
    pub second: ElliottInvariant,
    pub elliott: CompareVerdict,
    pub flip: FlipCheck,
}

impl Comparison {
    pub fn flip_distinct(&self) -> bool {
        matches!(
            self.flip,
            FlipCheck::Computed(ConjugacyVerdict::Distinct { .. })
        )
    }

    /// Isomorphic invariants together with a flip-conjugacy obstruction.
    pub fn headline(&self) -> Option<&'static str> {
        (self.elliott.is_isomorphic() && self.flip_distinct())
            .then_some("isomorphic C*-algebras, not flip conjugate")
    }
}

pub fn compare_specs(
    a: &TransformationSpec,
    b: &TransformationSpec,
    bound: u32,
    exec: Exec,
) -> Result<Comparison, ClassifyError> {
    let first = elliott(a)?;
    let second = elliott(b)?;
    let verdict = elliott_compare(&first, &second);
    let flip = match (a.tag(), b.tag()) {
        (SpaceTag::Torus(n1), SpaceTag::Torus(n2)) if n1 == n2 => FlipCheck::Computed(
            flip_conjugacy_verdict(&a.degree1_matrix()?, &b.degree1_matrix()?, bound, exec)?,
        ),
        (SpaceTag::Torus(n1), SpaceTag::Torus(n2)) => {
            FlipCheck::Excluded(format!("spaces differ (T^{n1} vs T^{n2}); not computed"))
        }
        (t1, t2) if t1 != t2 => {
            FlipCheck::Excluded(format!("spaces differ ({t1} vs {t2}); not computed"))
        }
        _ => FlipCheck::Excluded(
            "no first-cohomology obstruction on sphere-circle products; not computed".into(),
        ),
    };
    Ok(Comparison {
        first,
        second,
        elliott: verdict,
        flip,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::ThetaSymbol;

    fn theta() -> ThetaSymbol {
        ThetaSymbol::from_decimals("theta", "0.5624", "0.5626").unwrap()
    }

    #[test]
    fn swapped_pair_headline() {
        let a = TransformationSpec::torus(&[2, 3], &theta()).unwrap();
        let b = TransformationSpec::torus(&[3, 2], &theta()).unwrap();
        let c = compare_specs(&a, &b, 5, Exec::default()).unwrap();
        assert_eq!(
            c.headline(),
            Some("isomorphic C*-algebras, not flip conjugate")
        );
    }

    #[test]
    fn flip_excluded_across_spaces() {
        let a = TransformationSpec::sphere_circle(3, &theta()).unwrap();
        let b = TransformationSpec::sphere_circle(5, &theta()).unwrap();
        let c = compare_specs(&a, &b, 5, Exec::default()).unwrap();
        assert!(c.elliott.is_isomorphic());
        assert!(matches!(c.flip, FlipCheck::Excluded(_)));
        assert_eq!(c.headline(), None);
    }
}
