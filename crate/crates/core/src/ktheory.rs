//! Topological K-theory of tori and sphere-circle products, and the map
//! induced on it by the transformations this crate knows about.
//!
//! Tori use the Künneth exterior-algebra model: `K*(Tⁿ)` has one generator
//! `γ_S` per subset `S ⊆ {1..n}`, even subsets in `K⁰` and odd ones in `K¹`,
//! and `h*(γ_S) = ∧_{i∈S} h*(γᵢ)`. The coefficient of `γ_T` in `h*(γ_S)` is
//! therefore the minor of the degree-one matrix on rows `T`, columns `S`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::theta::ThetaSymbol;
use crate::zlinalg::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KTheoryError {
    #[error("torus dimension must be at least 1")]
    ZeroDimension,
    #[error("a Furstenberg transformation needs a torus of dimension at least 2, got {0}")]
    TorusTooSmall(usize),
    #[error("torus of dimension {dimension} needs {expected} exponents, got {got}")]
    ExponentCount {
        dimension: usize,
        expected: usize,
        got: usize,
    },
    #[error(
        "no minimal diffeomorphism model for S^{0} x S^1 (sphere dimension must be 2 or odd >= 3)"
    )]
    UnsupportedSphere(usize),
    #[error("expected a torus transformation")]
    NotTorus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceTag {
    Torus(usize),
    SphereCircle(usize),
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceTag::Torus(n) => write!(f, "T^{n}"),
            SpaceTag::SphereCircle(d) => write!(f, "S^{d} x S^1"),
        }
    }
}

/// One generator of `K*(X)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BasisClass {
    /// `γ_S` on a torus; indices are 1-based and increasing.
    Wedge(Vec<usize>),
    /// `x ⊗ y ∈ K*(S^d) ⊗ K*(S¹)`: `sphere_top` selects the top class of the
    /// sphere (β for S², γ for odd spheres) over `[1]`, `circle_z` selects `[z]`
    /// over `[1]`.
    SphereCircle { sphere_top: bool, circle_z: bool },
}

impl BasisClass {
    pub fn describe(&self) -> String {
        match self {
            BasisClass::Wedge(s) if s.is_empty() => "[1]".to_string(),
            BasisClass::Wedge(s) => s
                .iter()
                .map(|i| format!("z{i}"))
                .collect::<Vec<_>>()
                .join("^"),
            BasisClass::SphereCircle {
                sphere_top,
                circle_z,
            } => {
                let left = if *sphere_top { "top" } else { "[1]" };
                let right = if *circle_z { "[z]" } else { "[1]" };
                format!("{left} (x) {right}")
            }
        }
    }
}

/// `K⁰(X)` and `K¹(X)` with ordered bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceKTheory {
    pub tag: SpaceTag,
    pub k0_basis: Vec<BasisClass>,
    pub k1_basis: Vec<BasisClass>,
}

impl SpaceKTheory {
    pub fn k0_rank(&self) -> usize {
        self.k0_basis.len()
    }

    pub fn k1_rank(&self) -> usize {
        self.k1_basis.len()
    }

    /// `η_{i+1}`, the name of the i-th even generator.
    pub fn k0_label(&self, i: usize) -> String {
        format!("eta{}", i + 1)
    }

    /// `γ_{i+1}`, the name of the i-th odd generator.
    pub fn k1_label(&self, i: usize) -> String {
        format!("gamma{}", i + 1)
    }

    /// Index of `[1]` in the even basis.
    pub fn unit_index(&self) -> usize {
        0
    }

    /// Index in the odd basis of the class of the rotated circle coordinate
    /// (`[z₁]` on a torus, `[u] = [1] ⊗ [z]` on `S^d × S¹`).
    pub fn rotated_circle_index(&self) -> usize {
        0
    }
}

/// Matrices of `h*` on `K⁰` and `K¹`. Column `j` holds the image of basis
/// vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub on_k0: IntMatrix,
    pub on_k1: IntMatrix,
    /// Action on the degree-one classes `γ₁ … γₙ` (tori only); this is also
    /// the matrix of `h*` on `H¹(Tⁿ; Z)`.
    pub degree1: Option<IntMatrix>,
}

/// A transformation from the supported catalog. Minimality and unique
/// ergodicity are assumptions of the caller, not checked here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransformationSpec {
    /// `h(ζ) = (e^{2πiθ}ζ₁, ζ₁^{m₁}ζ₂, …, ζ_{n−1}^{m_{n−1}}ζₙ)` on `Tⁿ`.
    /// `cocycle_perturbed` marks a null-homotopic perturbation of the skew
    /// factor; it never changes `h*`.
    AffineFurstenbergTorus {
        dimension: usize,
        exponents: Vec<BigInt>,
        theta: ThetaSymbol,
        cocycle_perturbed: bool,
    },
    /// A minimal diffeomorphism of `S^d × S¹` homotopic to the identity,
    /// with rotation number `θ` on the circle coordinate.
    SphereTimesCircle {
        sphere_dim: usize,
        theta: ThetaSymbol,
    },
}

impl TransformationSpec {
    pub fn torus(exponents: &[i64], theta: &ThetaSymbol) -> Result<Self, KTheoryError> {
        Self::torus_big(
            exponents.iter().map(|&e| BigInt::from(e)).collect(),
            theta,
            false,
        )
    }

    pub fn torus_big(
        exponents: Vec<BigInt>,
        theta: &ThetaSymbol,
        cocycle_perturbed: bool,
    ) -> Result<Self, KTheoryError> {
        let spec = TransformationSpec::AffineFurstenbergTorus {
            dimension: exponents.len() + 1,
            exponents,
            theta: theta.clone(),
            cocycle_perturbed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn sphere_circle(sphere_dim: usize, theta: &ThetaSymbol) -> Result<Self, KTheoryError> {
        let spec = TransformationSpec::SphereTimesCircle {
            sphere_dim,
            theta: theta.clone(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), KTheoryError> {
        match self {
            TransformationSpec::AffineFurstenbergTorus {
                dimension,
                exponents,
                ..
            } => {
                if *dimension < 2 {
                    return Err(KTheoryError::TorusTooSmall(*dimension));
                }
                if exponents.len() != dimension - 1 {
                    return Err(KTheoryError::ExponentCount {
                        dimension: *dimension,
                        expected: dimension - 1,
                        got: exponents.len(),
                    });
                }
                Ok(())
            }
            TransformationSpec::SphereTimesCircle { sphere_dim, .. } => {
                if *sphere_dim == 2 || (*sphere_dim >= 3 && sphere_dim % 2 == 1) {
                    Ok(())
                } else {
                    Err(KTheoryError::UnsupportedSphere(*sphere_dim))
                }
            }
        }
    }

    pub fn theta(&self) -> &ThetaSymbol {
        match self {
            TransformationSpec::AffineFurstenbergTorus { theta, .. }
            | TransformationSpec::SphereTimesCircle { theta, .. } => theta,
        }
    }

    pub fn tag(&self) -> SpaceTag {
        match self {
            TransformationSpec::AffineFurstenbergTorus { dimension, .. } => {
                SpaceTag::Torus(*dimension)
            }
            TransformationSpec::SphereTimesCircle { sphere_dim, .. } => {
                SpaceTag::SphereCircle(*sphere_dim)
            }
        }
    }

    /// True for tori other than `T³`: the induced map there follows the
    /// general exterior-power rule rather than a worked computation.
    pub fn is_extrapolated(&self) -> bool {
        matches!(self.tag(), SpaceTag::Torus(n) if n != 3)
    }

    /// The unipotent matrix of `h*` on `H¹(Tⁿ; Z)`.
    pub fn degree1_matrix(&self) -> Result<IntMatrix, KTheoryError> {
        match self {
            TransformationSpec::AffineFurstenbergTorus {
                dimension,
                exponents,
                ..
            } => {
                let n = *dimension;
                Ok(IntMatrix::from_fn(n, n, |i, j| {
                    if i == j {
                        BigInt::from(1)
                    } else if j == i + 1 {
                        exponents[i].clone()
                    } else {
                        BigInt::zero()
                    }
                }))
            }
            TransformationSpec::SphereTimesCircle { .. } => Err(KTheoryError::NotTorus),
        }
    }
}

/// Nonempty-or-empty subsets of `{1..n}` of the given parity, ordered by
/// size and then lexicographically.
fn subsets_by_parity(n: usize, odd: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in (0..=n).filter(|k| (k % 2 == 1) == odd) {
        let mut current = Vec::with_capacity(size);
        push_combinations(1, n, size, &mut current, &mut out);
    }
    out
}

fn push_combinations(
    start: usize,
    n: usize,
    size: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == size {
        out.push(current.clone());
        return;
    }
    for i in start..=n {
        if n - i + 1 < size - current.len() {
            break;
        }
        current.push(i);
        push_combinations(i + 1, n, size, current, out);
        current.pop();
    }
}

pub fn torus_ktheory(n: usize) -> Result<SpaceKTheory, KTheoryError> {
    if n == 0 {
        return Err(KTheoryError::ZeroDimension);
    }
    Ok(SpaceKTheory {
        tag: SpaceTag::Torus(n),
        k0_basis: subsets_by_parity(n, false)
            .into_iter()
            .map(BasisClass::Wedge)
            .collect(),
        k1_basis: subsets_by_parity(n, true)
            .into_iter()
            .map(BasisClass::Wedge)
            .collect(),
    })
}

/// Matrix of `Λ(A)` on the given wedge basis: entry `(T, S)` is the minor
/// `det A[T, S]`, zero when `|T| ≠ |S|`.
pub fn exterior_extension(degree1: &IntMatrix, basis: &[BasisClass]) -> IntMatrix {
    let sets: Vec<Vec<usize>> = basis
        .iter()
        .map(|b| match b {
            BasisClass::Wedge(s) => s.iter().map(|i| i - 1).collect(),
            BasisClass::SphereCircle { .. } => panic!("exterior extension needs a wedge basis"),
        })
        .collect();
    let k = sets.len();
    IntMatrix::from_fn(k, k, |t, s| {
        if sets[t].len() != sets[s].len() {
            return BigInt::zero();
        }
        degree1
            .submatrix(&sets[t], &sets[s])
            .determinant()
            .expect("minor is square")
    })
}

pub fn furstenberg_induced_map(
    spec: &TransformationSpec,
) -> Result<(SpaceKTheory, InducedMap), KTheoryError> {
    spec.validate()?;
    let SpaceTag::Torus(n) = spec.tag() else {
        return Err(KTheoryError::NotTorus);
    };
    let kt = torus_ktheory(n)?;
    let a = spec.degree1_matrix()?;
    let map = InducedMap {
        on_k0: exterior_extension(&a, &kt.k0_basis),
        on_k1: exterior_extension(&a, &kt.k1_basis),
        degree1: Some(a),
    };
    Ok((kt, map))
}

/// `K*(S^d × S¹)` with its explicit generators; `h* = id` because the
/// diffeomorphism is homotopic to the identity.
pub fn sphere_circle_ktheory(
    spec: &TransformationSpec,
) -> Result<(SpaceKTheory, InducedMap), KTheoryError> {
    spec.validate()?;
    let SpaceTag::SphereCircle(d) = spec.tag() else {
        return Err(KTheoryError::UnsupportedSphere(0));
    };
    // K⁰(S^d) is Z[1] ⊕ Zβ for d = 2; for odd d, K⁰(S^d) = Z[1], K¹(S^d) = Zγ
    let even_sphere = d == 2;
    let class = |sphere_top, circle_z| BasisClass::SphereCircle {
        sphere_top,
        circle_z,
    };
    let (k0, k1) = if even_sphere {
        (
            vec![class(false, false), class(true, false)],
            vec![class(false, true), class(true, true)],
        )
    } else {
        (
            vec![class(false, false), class(true, true)],
            vec![class(false, true), class(true, false)],
        )
    };
    let kt = SpaceKTheory {
        tag: SpaceTag::SphereCircle(d),
        k0_basis: k0,
        k1_basis: k1,
    };
    let map = InducedMap {
        on_k0: IntMatrix::identity(2),
        on_k1: IntMatrix::identity(2),
        degree1: None,
    };
    Ok((kt, map))
}

/// K-theory and induced map for any supported transformation.
pub fn space_ktheory(
    spec: &TransformationSpec,
) -> Result<(SpaceKTheory, InducedMap), KTheoryError> {
    match spec {
        TransformationSpec::AffineFurstenbergTorus { .. } => furstenberg_induced_map(spec),
        TransformationSpec::SphereTimesCircle { .. } => sphere_circle_ktheory(spec),
    }
}
