//! Comparison of Elliott invariants: groups, unit, trace and dense range.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::crossed::ElliottInvariant;
use crate::zlinalg::{
    complete_to_basis, hermite_normal_form, inverse_unimodular, is_unimodular, kernel_basis, solve,
    IntMatrix,
};

/// `f₀` on `K₀` and `f₁` on `K₁`, in generator coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsomorphismWitness {
    /// Unimodular map on the free part of `K₀`.
    pub k0_free: IntMatrix,
    /// `k0_free ⊕ identity` on the torsion generators.
    pub k0: IntMatrix,
    /// Identity between equal canonical forms of `K₁`.
    pub k1: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompareVerdict {
    Isomorphic { witness: IsomorphismWitness },
    NotIsomorphic { reason: String },
    Undecided { reason: String },
}

impl CompareVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, CompareVerdict::Isomorphic { .. })
    }
}

fn denominators_lcm(inv: &ElliottInvariant) -> BigInt {
    inv.trace
        .iter()
        .flat_map(|t| [t.a().denom().clone(), t.b().denom().clone()])
        .fold(BigInt::one(), |acc, d| acc.lcm(&d))
}

/// `2 × f` integer matrix of `scale·(a_j, b_j)`.
fn trace_matrix(inv: &ElliottInvariant, scale: &BigInt) -> IntMatrix {
    let f = inv.free_rank();
    let s = BigRational::from_integer(scale.clone());
    IntMatrix::from_fn(2, f, |i, j| {
        let t = &inv.trace[j];
        let v = if i == 0 { t.a() } else { t.b() } * &s;
        v.to_integer()
    })
}

/// Nonzero columns of the Hermite form: a canonical basis of the column span.
fn span_basis(m: &IntMatrix) -> IntMatrix {
    let h = hermite_normal_form(m);
    let keep: Vec<usize> = (0..h.cols())
        .filter(|&j| h.column(j).iter().any(|x| !x.is_zero()))
        .collect();
    h.select_columns(&keep)
}

/// Basis `[u | p | k]` of `Z^f` adapted to the trace: `u` the unit, `p`
/// preimages of the rest of the trace-image basis `ℓ`, `k` a basis of the
/// trace kernel.
fn adapted_basis(t: &IntMatrix, unit: &[BigInt], ell: &IntMatrix) -> Option<IntMatrix> {
    let f = t.cols();
    let mut cols = vec![unit.to_vec()];
    for j in 1..ell.cols() {
        let target = ell.select_columns(&[j]);
        let pre = solve(t, &target).ok()??;
        cols.push(pre.column(0));
    }
    cols.extend(kernel_basis(t).columns());
    if cols.len() != f {
        return None;
    }
    Some(IntMatrix::from_columns(f, &cols))
}

fn traces_match(inv1: &ElliottInvariant, inv2: &ElliottInvariant, w: &IntMatrix) -> bool {
    (0..inv1.k0.num_generators()).all(|j| {
        let mut e = vec![BigInt::zero(); inv1.k0.num_generators()];
        e[j] = BigInt::one();
        let image = inv2.trace_of(&w.mul_vec(&e));
        let orig = inv1.trace_of(&e);
        image.a() == orig.a() && image.b() == orig.b()
    })
}

/// Checks the three conditions on a candidate witness: unimodular on the
/// free part, unit to unit, and trace compatibility.
pub fn validate_witness(
    inv1: &ElliottInvariant,
    inv2: &ElliottInvariant,
    w: &IsomorphismWitness,
) -> bool {
    matches!(is_unimodular(&w.k0_free), Ok(true))
        && w.k0.mul_vec(&inv1.unit) == inv2.unit
        && traces_match(inv1, inv2, &w.k0)
        && matches!(is_unimodular(&w.k1), Ok(true))
}

pub fn elliott_compare(inv1: &ElliottInvariant, inv2: &ElliottInvariant) -> CompareVerdict {
    let not = |reason: String| CompareVerdict::NotIsomorphic { reason };
    let undecided = |reason: String| CompareVerdict::Undecided { reason };
    if inv1.k0.rank() != inv2.k0.rank() || inv1.k1.rank() != inv2.k1.rank() {
        return not(format!(
            "ranks differ: K0 {} vs {}, K1 {} vs {}",
            inv1.k0, inv2.k0, inv1.k1, inv2.k1
        ));
    }
    if inv1.k0 != inv2.k0 {
        return not(format!(
            "K0 torsion differs: {} vs {}",
            inv1.k0.torsion(),
            inv2.k0.torsion()
        ));
    }
    if inv1.k1 != inv2.k1 {
        return not(format!(
            "K1 torsion differs: {} vs {}",
            inv1.k1.torsion(),
            inv2.k1.torsion()
        ));
    }
    let (dense1, dense2) = (inv1.dense_range(), inv2.dense_range());
    if dense1 != dense2 {
        return not("exactly one trace image is dense".into());
    }
    if inv1.theta.label() != inv2.theta.label() {
        return undecided(format!(
            "invariants refer to different irrationals ({} vs {})",
            inv1.theta.label(),
            inv2.theta.label()
        ));
    }

    let scale = denominators_lcm(inv1).lcm(&denominators_lcm(inv2));
    let t1 = trace_matrix(inv1, &scale);
    let t2 = trace_matrix(inv2, &scale);
    let l1 = span_basis(&t1);
    if l1 != span_basis(&t2) {
        return not("trace images differ".into());
    }
    if !dense1 {
        return undecided("trace image is not dense".into());
    }

    // express τ(unit) = 1 in the trace-image basis and extend it to a basis
    let one = IntMatrix::from_columns(2, &[vec![scale.clone(), BigInt::zero()]]);
    let coords = match solve(&l1, &one) {
        Ok(Some(c)) => c,
        _ => return undecided("1 is not in the trace image".into()),
    };
    let Ok(ext) = complete_to_basis(&coords) else {
        return undecided("1 is not primitive in the trace image".into());
    };
    let ell = &l1 * &ext;

    let f = inv1.free_rank();
    let u1 = &inv1.unit[..f];
    let u2 = &inv2.unit[..f];
    let (Some(b1), Some(b2)) = (adapted_basis(&t1, u1, &ell), adapted_basis(&t2, u2, &ell)) else {
        return undecided("could not lift the trace-image basis".into());
    };
    let Ok(b1_inv) = inverse_unimodular(&b1) else {
        return undecided("adapted basis is not unimodular".into());
    };
    let k0_free = &b2 * &b1_inv;
    let torsion = inv1.k0.invariant_factors().len();
    let witness = IsomorphismWitness {
        k0: k0_free.block_diag(&IntMatrix::identity(torsion)),
        k0_free,
        k1: IntMatrix::identity(inv1.k1.num_generators()),
    };
    if !validate_witness(inv1, inv2, &witness) {
        return undecided("constructed witness failed validation".into());
    }
    CompareVerdict::Isomorphic { witness }
}
