use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::pv::{pv_assemble, CrossedKTheory, GeneratorSource};
use super::CrossedError;
use crate::ktheory::{space_ktheory, SpaceTag, TransformationSpec};
use crate::theta::{Sign, ThetaSymbol, TraceValue};
use crate::zlinalg::FgAbGroup;

/// Ordered `K₀` with unit and trace, and `K₁`: the data compared by the
/// classification checklist.
///
/// The order is the strict-trace cone: `x ≥ 0` iff `x = 0` or `τ(x) > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElliottInvariant {
    pub space: SpaceTag,
    pub k0: FgAbGroup,
    pub k1: FgAbGroup,
    pub k0_labels: Vec<String>,
    pub k1_labels: Vec<String>,
    /// Coordinates of `[1]` in the `K₀` generators.
    pub unit: Vec<BigInt>,
    /// `τ_*` on each free `K₀` generator; torsion generators map to 0.
    pub trace: Vec<TraceValue>,
    pub theta: ThetaSymbol,
    /// The induced map came from the general exterior-power rule.
    pub extrapolated: bool,
}

impl ElliottInvariant {
    pub fn free_rank(&self) -> usize {
        self.k0.rank()
    }

    /// `τ_*(x)` for `x` in `K₀` generator coordinates.
    pub fn trace_of(&self, x: &[BigInt]) -> TraceValue {
        let free = &x[..self.free_rank()];
        TraceValue::combination(free, &self.trace, &self.theta).expect("trace values share theta")
    }

    /// Membership of `x` in the positive cone, `None` if the θ interval is
    /// too coarse to decide.
    pub fn is_positive(&self, x: &[BigInt]) -> Option<bool> {
        if x.iter().all(Zero::is_zero) {
            return Some(true);
        }
        // torsion entries are taken modulo their orders
        let free_zero = x[..self.free_rank()].iter().all(Zero::is_zero);
        let torsion_zero = x[self.free_rank()..]
            .iter()
            .zip(self.k0.invariant_factors())
            .all(|(c, d)| (c % d).is_zero());
        if free_zero && torsion_zero {
            return Some(true);
        }
        match self.trace_of(x).sign() {
            Sign::Positive => Some(true),
            Sign::Zero | Sign::Negative => Some(false),
            Sign::NeedTighterTheta => None,
        }
    }

    pub fn dense_range(&self) -> bool {
        dense_range(self)
    }

    pub fn order_rule(&self) -> String {
        format!(
            "x >= 0 iff x = 0 or tau(x) > 0 ({} irrational)",
            self.theta.label()
        )
    }
}

/// True iff `τ_*(K₀)` is dense in R, i.e. some generator has an irrational
/// trace `a + bθ` with `b ≠ 0`.
pub fn dense_range(inv: &ElliottInvariant) -> bool {
    inv.trace.iter().any(|t| !t.b().is_zero())
}

fn fixed_by(
    spec: &TransformationSpec,
    class: &[BigInt],
) -> Result<(SpaceTag, usize), CrossedError> {
    let (kt, h) = space_ktheory(spec)?;
    if class.len() != kt.k1_rank() {
        return Err(CrossedError::ClassLength {
            expected: kt.k1_rank(),
            got: class.len(),
        });
    }
    if h.on_k1.mul_vec(class) != class {
        return Err(CrossedError::NotFixed);
    }
    Ok((kt.tag, kt.rotated_circle_index()))
}

/// Rotation number of a fixed odd class, as the representative `c·θ`.
///
/// `c` is the coefficient of the rotated circle coordinate. Every other
/// fixed basis class (wedge products on tori, the sphere class on
/// `S^d × S¹`) is represented by a unitary of constant determinant and
/// contributes nothing.
pub fn rotation_number(
    odd_class: &[BigInt],
    spec: &TransformationSpec,
) -> Result<TraceValue, CrossedError> {
    let (_, idx) = fixed_by(spec, odd_class)?;
    Ok(TraceValue::new(
        BigRational::zero(),
        BigRational::from_integer(odd_class[idx].clone()),
        spec.theta(),
    ))
}

/// Attaches `τ_*` to the assembled K-theory.
///
/// Cokernel images take the value of the rank functional (1 on `[1]`, 0 on
/// every class vanishing under point evaluation); lifts of fixed classes
/// take their rotation number, reduced into `[0, 1)` by subtracting
/// multiples of the unit.
pub fn trace_functional(
    ck: &CrossedKTheory,
    spec: &TransformationSpec,
) -> Result<ElliottInvariant, CrossedError> {
    let theta = spec.theta();
    let unit_idx = ck.space.unit_index();
    let mut trace = Vec::with_capacity(ck.k0.group.rank());
    for g in ck.k0.free_generators() {
        let value = match &g.source {
            GeneratorSource::CokerImage { lift } => {
                TraceValue::integers(lift[unit_idx].clone(), 0, theta)
            }
            GeneratorSource::KernelLift { class } => rotation_number(class, spec)?
                .reduce_mod_one()
                .ok_or_else(|| CrossedError::ThetaTooCoarse(g.label.clone()))?,
        };
        trace.push(value);
    }
    let inv = ElliottInvariant {
        space: ck.space.tag,
        k0: ck.k0.group.clone(),
        k1: ck.k1.group.clone(),
        k0_labels: ck.k0.generators.iter().map(|g| g.label.clone()).collect(),
        k1_labels: ck.k1.generators.iter().map(|g| g.label.clone()).collect(),
        unit: ck.unit.clone(),
        trace,
        theta: theta.clone(),
        extrapolated: spec.is_extrapolated(),
    };
    if inv.trace_of(&inv.unit) != TraceValue::integers(1, 0, theta) {
        return Err(CrossedError::UnitTrace);
    }
    Ok(inv)
}

/// The full pipeline: K-theory of the space, PV assembly, trace.
pub fn elliott(spec: &TransformationSpec) -> Result<ElliottInvariant, CrossedError> {
    let (kt, h) = space_ktheory(spec)?;
    let ck = pv_assemble(&kt, &h)?;
    trace_functional(&ck, spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> ThetaSymbol {
        ThetaSymbol::from_decimals("theta", "0.5624", "0.5626").unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn trace_rows(inv: &ElliottInvariant) -> Vec<String> {
        inv.trace.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn rotation_numbers_on_t3() {
        let spec = TransformationSpec::torus(&[2, 3], &theta()).unwrap();
        let t = theta();
        assert_eq!(
            rotation_number(&big(&[1, 0, 0, 0]), &spec).unwrap(),
            TraceValue::integers(0, 1, &t)
        );
        assert!(rotation_number(&big(&[0, 0, 0, 1]), &spec)
            .unwrap()
            .is_zero());
        assert_eq!(
            rotation_number(&big(&[2, 0, 0, 1]), &spec).unwrap(),
            TraceValue::integers(0, 2, &t)
        );
        assert_eq!(
            rotation_number(&big(&[0, 1, 0, 0]), &spec),
            Err(CrossedError::NotFixed)
        );
        assert!(matches!(
            rotation_number(&big(&[1, 0]), &spec),
            Err(CrossedError::ClassLength { .. })
        ));
    }

    #[test]
    fn t3_trace_functional() {
        let inv = elliott(&TransformationSpec::torus(&[2, 3], &theta()).unwrap()).unwrap();
        assert_eq!(trace_rows(&inv), vec!["1", "0", "theta", "0"]);
        assert_eq!(inv.k0.to_string(), "Z^4 + Z/6");
        assert_eq!(inv.k1.to_string(), "Z^4 + Z/6");
        assert_eq!(inv.unit, big(&[1, 0, 0, 0, 0]));
        assert!(inv.dense_range());
        assert!(!inv.extrapolated);
        // the torsion generator has trace zero and is not positive
        assert!(inv.trace_of(&big(&[0, 0, 0, 0, 1])).is_zero());
        assert_eq!(inv.is_positive(&big(&[0, 0, 0, 0, 1])), Some(false));
        assert_eq!(inv.is_positive(&big(&[0, 0, 0, 0, 6])), Some(true));
        assert!(inv.trace_of(&vec![BigInt::zero(); 5]).is_zero());
    }

    #[test]
    fn positivity_follows_trace() {
        let inv = elliott(&TransformationSpec::torus(&[1, 1], &theta()).unwrap()).unwrap();
        assert_eq!(inv.is_positive(&big(&[1, 0, 0, 0])), Some(true));
        // 1 - 2θ < 0 for θ ≈ 0.5625
        assert_eq!(inv.is_positive(&big(&[1, 0, -2, 0])), Some(false));
        assert_eq!(inv.is_positive(&big(&[-1, 5, 2, 7])), Some(true));
    }

    #[test]
    fn sphere_circle_traces() {
        for d in [2, 3] {
            let inv = elliott(&TransformationSpec::sphere_circle(d, &theta()).unwrap()).unwrap();
            assert_eq!(inv.k0, FgAbGroup::free(4));
            assert_eq!(trace_rows(&inv), vec!["1", "0", "theta", "0"]);
            assert_eq!(inv.k0_labels, vec!["eta1", "eta2", "nu1", "nu2"]);
            assert!(inv.dense_range());
        }
    }

    #[test]
    fn cocycle_flag_does_not_change_invariant() {
        let t = theta();
        let plain = TransformationSpec::torus_big(big(&[1]), &t, false).unwrap();
        let perturbed = TransformationSpec::torus_big(big(&[1]), &t, true).unwrap();
        assert_eq!(elliott(&plain).unwrap(), elliott(&perturbed).unwrap());
    }

    #[test]
    fn integer_traces_are_not_dense() {
        let mut inv = elliott(&TransformationSpec::torus(&[1, 1], &theta()).unwrap()).unwrap();
        for t in inv.trace.iter_mut() {
            *t = TraceValue::integers(t.a().to_integer(), 0, &theta());
        }
        assert!(!dense_range(&inv));
    }

    #[test]
    fn negative_fixed_class_normalizes_into_unit_interval() {
        // exponents (0, 3): γ₂ is fixed with rotation 0, γ₁ with θ
        let inv = elliott(&TransformationSpec::torus(&[0, 3], &theta()).unwrap()).unwrap();
        for t in &inv.trace {
            let (lo, hi) = t.enclosure();
            assert!(
                lo >= BigRational::zero() && hi <= BigRational::from_integer(1.into()),
                "{t}"
            );
        }
    }
}
