//! K-theory of the crossed product from the split Pimsner–Voiculescu
//! sequence:
//!
//! ```text
//! 0 → coker(id − h* on K^j(X)) → K_j(C*(Z, X, h)) → ker(id − h* on K^{j+1}(X)) → 0
//! ```
//!
//! The right-hand term is a subgroup of a free group, so the sequence splits
//! and `K_j ≅ coker ⊕ ker`. Generators are tracked by provenance: images of
//! classes of `K^j(X)`, or chosen lifts of fixed classes of `K^{j+1}(X)`
//! through the boundary map.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::CrossedError;
use crate::ktheory::{InducedMap, SpaceKTheory};
use crate::zlinalg::{
    cokernel, complete_to_basis, inverse_unimodular, kernel_basis, rank, snf, FgAbGroup, IntMatrix,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSource {
    /// Image of the class `lift ∈ K^j(X)`.
    CokerImage { lift: Vec<BigInt> },
    /// A preimage under the boundary map of `class ∈ ker(id − h*) ⊆ K^{j+1}(X)`.
    KernelLift { class: Vec<BigInt> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedGenerator {
    pub label: String,
    pub source: GeneratorSource,
    /// `None` for infinite order.
    pub order: Option<BigInt>,
}

impl CrossedGenerator {
    pub fn is_torsion(&self) -> bool {
        self.order.is_some()
    }
}

/// One of `K₀`, `K₁` of the crossed product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedGroup {
    pub group: FgAbGroup,
    /// Ordered: free cokernel images, kernel lifts, then torsion images.
    pub generators: Vec<CrossedGenerator>,
    /// Column `i` is the coordinate vector (in `generators`) of the image of
    /// basis class `i` of `K^j(X)`. Torsion rows are meaningful modulo order.
    pub image_coordinates: IntMatrix,
    /// Z-basis (columns) of `ker(id − h*)` on `K^{j+1}(X)`, in Hermite form.
    pub fixed_classes: IntMatrix,
}

impl CrossedGroup {
    pub fn free_generators(&self) -> impl Iterator<Item = &CrossedGenerator> {
        self.generators.iter().filter(|g| !g.is_torsion())
    }

    /// Coordinates of the image of `x ∈ K^j(X)`, torsion entries reduced.
    pub fn image_of(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.image_coordinates.mul_vec(x);
        for (c, g) in y.iter_mut().zip(&self.generators) {
            if let Some(d) = &g.order {
                *c = num_integer::Integer::mod_floor(c, d);
            }
        }
        y
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedKTheory {
    pub space: SpaceKTheory,
    pub hstar: InducedMap,
    pub k0: CrossedGroup,
    pub k1: CrossedGroup,
    /// Coordinates of `[1]` in the `K₀` generators.
    pub unit: Vec<BigInt>,
}

/// Renders `Σ cᵢ·labelᵢ` compactly, e.g. `eta4`, `eta2-eta3`, `2gamma1+gamma4`.
pub(crate) fn combination_label(coeffs: &[BigInt], label: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c < &BigInt::zero();
        let mag = if neg { -c } else { c.clone() };
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(&label(i));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn unit_vector(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

/// Chooses a basis of the free part `Z^f` of a cokernel. Standard basis
/// classes are preferred (in the order given) whenever their images extend
/// the chosen set to a saturated sublattice; the rest is completed
/// abstractly. Returns `(basis in Z^f as columns, lifts in Z^r as columns)`.
fn choose_free_basis(
    free_projection: &IntMatrix,
    free_lifts: &IntMatrix,
    preference: &[usize],
) -> Result<(IntMatrix, IntMatrix), CrossedError> {
    let f = free_projection.rows();
    let r = free_projection.cols();
    let mut chosen: Vec<Vec<BigInt>> = Vec::new();
    let mut lifts: Vec<Vec<BigInt>> = Vec::new();
    for &i in preference {
        if chosen.len() == f {
            break;
        }
        let v = free_projection.column(i);
        let mut trial = chosen.clone();
        trial.push(v);
        let m = IntMatrix::from_columns(f, &trial);
        let s = snf(&m);
        if s.rank == trial.len() && s.invariant_factors().iter().all(One::is_one) {
            chosen = trial;
            lifts.push(unit_vector(r, i));
        }
    }
    if chosen.len() < f {
        let full = complete_to_basis(&IntMatrix::from_columns(f, &chosen))?;
        for k in chosen.len()..f {
            let v = full.column(k);
            lifts.push(free_lifts.mul_vec(&v));
            chosen.push(v);
        }
    }
    Ok((
        IntMatrix::from_columns(f, &chosen),
        IntMatrix::from_columns(r, &lifts),
    ))
}

struct CokerPart {
    free_lifts: Vec<Vec<BigInt>>,
    torsion_lifts: Vec<Vec<BigInt>>,
    torsion_orders: Vec<BigInt>,
    /// rows: free coordinates then torsion coordinates
    coords_free: IntMatrix,
    coords_torsion: IntMatrix,
}

/// Cokernel of `id − h*` with a free basis adapted to `preference`; when
/// `unit` is given, the other free generators are shifted by multiples of it
/// so that their `unit` coordinate vanishes.
fn coker_part(
    m: &IntMatrix,
    preference: &[usize],
    unit: Option<usize>,
) -> Result<CokerPart, CrossedError> {
    let c = cokernel(m);
    let f = c.free_rank();
    let t = c.group.invariant_factors().len();
    let all_rows: Vec<usize> = (0..m.rows()).collect();
    let free_idx: Vec<usize> = (0..f).collect();
    let tor_idx: Vec<usize> = (f..f + t).collect();
    let fp = c.projection.submatrix(&free_idx, &all_rows);
    let tp = c.projection.submatrix(&tor_idx, &all_rows);
    let fl = c.lifts.select_columns(&free_idx);
    let (mut basis, mut lifts) = choose_free_basis(&fp, &fl, preference)?;

    if let Some(u) = unit {
        if f == 0 || lifts.get(u, 0) != &BigInt::one() {
            return Err(CrossedError::UnitNotFree);
        }
        for k in 1..f {
            let r = lifts.get(u, k).clone();
            if r.is_zero() {
                continue;
            }
            for i in 0..basis.rows() {
                let v = basis.get(i, k) - &r * basis.get(i, 0);
                basis.set(i, k, v);
            }
            for i in 0..lifts.rows() {
                let v = lifts.get(i, k) - &r * lifts.get(i, 0);
                lifts.set(i, k, v);
            }
        }
    }

    // free coordinates: B⁻¹·F; torsion: T − (T·L)·B⁻¹·F
    let binv = inverse_unimodular(&basis)?;
    let coords_free = &binv * &fp;
    let correction = &(&tp * &lifts) * &coords_free;
    let coords_torsion = &tp - &correction;
    Ok(CokerPart {
        free_lifts: lifts.columns(),
        torsion_lifts: c.lifts.select_columns(&tor_idx).columns(),
        torsion_orders: c.group.invariant_factors().to_vec(),
        coords_free,
        coords_torsion,
    })
}

fn assemble_group(
    coker: CokerPart,
    fixed: IntMatrix,
    coker_label: impl Fn(usize) -> String,
    kernel_prefix: &str,
) -> CrossedGroup {
    let r = coker.coords_free.cols();
    let f = coker.free_lifts.len();
    let k = fixed.cols();
    let t = coker.torsion_lifts.len();
    let mut generators = Vec::with_capacity(f + k + t);
    for lift in &coker.free_lifts {
        generators.push(CrossedGenerator {
            label: combination_label(lift, &coker_label),
            source: GeneratorSource::CokerImage { lift: lift.clone() },
            order: None,
        });
    }
    for class in fixed.columns() {
        let pivot = class
            .iter()
            .position(|c| !c.is_zero())
            .expect("kernel basis vectors are nonzero");
        generators.push(CrossedGenerator {
            label: format!("{kernel_prefix}{}", pivot + 1),
            source: GeneratorSource::KernelLift { class },
            order: None,
        });
    }
    for (lift, d) in coker.torsion_lifts.iter().zip(&coker.torsion_orders) {
        generators.push(CrossedGenerator {
            label: format!("[{}]", combination_label(lift, &coker_label)),
            source: GeneratorSource::CokerImage { lift: lift.clone() },
            order: Some(d.clone()),
        });
    }
    // kernel lifts have zero coordinate on every image class
    let image_coordinates = IntMatrix::from_fn(f + k + t, r, |row, col| {
        if row < f {
            coker.coords_free.get(row, col).clone()
        } else if row < f + k {
            BigInt::zero()
        } else {
            coker.coords_torsion.get(row - f - k, col).clone()
        }
    });
    let group =
        FgAbGroup::new(f + k, coker.torsion_orders.clone()).expect("cokernel torsion is canonical");
    CrossedGroup {
        group,
        generators,
        image_coordinates,
        fixed_classes: fixed,
    }
}

/// Assembles `K₀` and `K₁` of the crossed product from `K*(X)` and `h*`.
pub fn pv_assemble(kt: &SpaceKTheory, hstar: &InducedMap) -> Result<CrossedKTheory, CrossedError> {
    let (r0, r1) = (kt.k0_rank(), kt.k1_rank());
    if hstar.on_k0.rows() != r0
        || !hstar.on_k0.is_square()
        || hstar.on_k1.rows() != r1
        || !hstar.on_k1.is_square()
    {
        return Err(CrossedError::ShapeMismatch);
    }
    let m0 = hstar.on_k0.identity_minus()?;
    let m1 = hstar.on_k1.identity_minus()?;
    let unit_idx = kt.unit_index();
    if !m0.row(unit_idx).iter().all(Zero::is_zero) {
        return Err(CrossedError::UnitNotFree);
    }

    let mut pref0 = vec![unit_idx];
    pref0.extend((0..r0).filter(|&i| i != unit_idx));
    let pref1: Vec<usize> = (0..r1).collect();

    let coker0 = coker_part(&m0, &pref0, Some(unit_idx))?;
    let coker1 = coker_part(&m1, &pref1, None)?;
    let k0 = assemble_group(coker0, kernel_basis(&m1), |i| kt.k0_label(i), "nu");
    let k1 = assemble_group(coker1, kernel_basis(&m0), |i| kt.k1_label(i), "mu");

    // both ranks equal dim ker(id − h*) on K⁰ plus the same on K¹
    debug_assert_eq!(k0.group.rank(), (r0 - rank(&m0)) + (r1 - rank(&m1)));
    debug_assert_eq!(k1.group.rank(), k0.group.rank());

    let unit = k0.image_of(&unit_vector(r0, unit_idx));
    Ok(CrossedKTheory {
        space: kt.clone(),
        hstar: hstar.clone(),
        k0,
        k1,
        unit,
    })
}
