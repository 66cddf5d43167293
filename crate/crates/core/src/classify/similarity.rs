//! `GL(n, Z)`-similarity invariants of unipotent matrices and the bounded
//! search for flip conjugators.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::ClassifyError;
use crate::par::{find_map_first, Exec};
use crate::zlinalg::{is_unimodular, kernel_basis, lattice_index, rank, snf, FgAbGroup, IntMatrix};

/// Default bound on conjugator entries.
pub const DEFAULT_SEARCH_BOUND: u32 = 5;
/// Largest number of candidates the bounded search will enumerate.
pub const MAX_CANDIDATES: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimilarityInvariants {
    /// Smith diagonal (zeros included) of `(A − I)^k` for `k = 1..=n`.
    pub snf_powers: Vec<Vec<BigInt>>,
    /// `[ker c : c(ker c²)]` for `c = A − I`, when both lattices have equal rank.
    pub ladder_multiplier: Option<BigInt>,
    /// Number of nonzero powers among `c, c², …, cⁿ`; 0 for `A = I`.
    pub nilpotency_index: usize,
    pub unipotent: bool,
}

impl SimilarityInvariants {
    /// `Zⁿ / c^k(Zⁿ)`.
    pub fn power_cokernel(&self, k: usize) -> FgAbGroup {
        FgAbGroup::from_cyclic_orders(&self.snf_powers[k - 1])
    }
}

fn square(a: &IntMatrix) -> Result<(), ClassifyError> {
    if a.is_square() {
        Ok(())
    } else {
        Err(ClassifyError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

pub fn unipotent_invariants(a: &IntMatrix) -> Result<SimilarityInvariants, ClassifyError> {
    square(a)?;
    let n = a.rows();
    let c = a.minus_identity()?;
    let mut snf_powers = Vec::with_capacity(n);
    let mut nilpotency_index = 0;
    let mut power = IntMatrix::identity(n);
    for _ in 0..n {
        power = &power * &c;
        if !power.is_zero() {
            nilpotency_index += 1;
        }
        snf_powers.push(snf(&power).diagonal());
    }
    let unipotent = n == 0 || power.is_zero();

    let ker_c = kernel_basis(&c);
    let ker_c2 = kernel_basis(&(&c * &c));
    let image = &c * &ker_c2;
    let ladder_multiplier = if ker_c.cols() > 0 && rank(&image) == ker_c.cols() {
        lattice_index(&ker_c, &image)?
    } else {
        None
    };
    Ok(SimilarityInvariants {
        snf_powers,
        ladder_multiplier,
        nilpotency_index,
        unipotent,
    })
}

/// Which of `A₂`, `A₂⁻¹` a conjugator intertwines `A₁` with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlipTarget {
    Direct,
    Inverse,
}

/// An invariant of `A₁` that differs from the same invariant of both `A₂`
/// and `A₂⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub invariant: String,
    pub first: String,
    pub second: String,
    pub second_inverse: String,
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} vs {}", self.invariant, self.first, self.second)?;
        if self.second_inverse != self.second {
            write!(f, " (inverse {})", self.second_inverse)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugacyVerdict {
    Distinct {
        separation: Separation,
    },
    /// `witness·A₁ = A₂·witness` (or `A₂⁻¹`), witness unimodular.
    PossiblyConjugate {
        witness: IntMatrix,
        target: FlipTarget,
    },
    /// No witness with entries in `[−bound, bound]`; `exhaustive` is false
    /// when the candidate space was too large to enumerate.
    Unknown {
        bound: u32,
        exhaustive: bool,
    },
}

fn show_opt(v: &Option<BigInt>) -> String {
    v.as_ref()
        .map_or_else(|| "none".to_string(), ToString::to_string)
}

fn show_list(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn separation(
    i1: &SimilarityInvariants,
    i2: &SimilarityInvariants,
    i2inv: &SimilarityInvariants,
) -> Option<Separation> {
    let sep = |name: String, a: String, b: String, c: String| {
        (a != b && a != c).then_some(Separation {
            invariant: name,
            first: a,
            second: b,
            second_inverse: c,
        })
    };
    if let Some(s) = sep(
        "ladder".into(),
        show_opt(&i1.ladder_multiplier),
        show_opt(&i2.ladder_multiplier),
        show_opt(&i2inv.ladder_multiplier),
    ) {
        return Some(s);
    }
    for k in 0..i1.snf_powers.len() {
        if let Some(s) = sep(
            format!("snf(c^{})", k + 1),
            show_list(&i1.snf_powers[k]),
            show_list(&i2.snf_powers[k]),
            show_list(&i2inv.snf_powers[k]),
        ) {
            return Some(s);
        }
    }
    if let Some(s) = sep(
        "nilpotency".into(),
        i1.nilpotency_index.to_string(),
        i2.nilpotency_index.to_string(),
        i2inv.nilpotency_index.to_string(),
    ) {
        return Some(s);
    }
    if i1 != i2 && i1 != i2inv {
        // no single invariant separates from both, but the tuple does
        return Some(Separation {
            invariant: "invariant tuple".into(),
            first: "A1".into(),
            second: "A2".into(),
            second_inverse: "A2^-1".into(),
        });
    }
    None
}

/// Lattice of integer solutions `X` of `X·A₁ = A₂·X`, as columns of the
/// row-major flattening of `X`.
fn intertwiner_lattice(a1: &IntMatrix, a2: &IntMatrix) -> IntMatrix {
    let n = a1.rows();
    let mut l = IntMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            // (X·A₁)[i][j] = Σ_k X[i][k]·A₁[k][j]
            for k in 0..n {
                let v = l.get(row, i * n + k) + a1.get(k, j);
                l.set(row, i * n + k, v);
                // (A₂·X)[i][j] = Σ_k A₂[i][k]·X[k][j]
                let v = l.get(row, k * n + j) - a2.get(i, k);
                l.set(row, k * n + j, v);
            }
        }
    }
    kernel_basis(&l)
}

/// Rows of `basis` forming a nonsingular square submatrix.
fn independent_rows(basis: &IntMatrix) -> Vec<usize> {
    let mut rows = Vec::new();
    let all: Vec<usize> = (0..basis.cols()).collect();
    for r in 0..basis.rows() {
        let mut trial = rows.clone();
        trial.push(r);
        if rank(&basis.submatrix(&trial, &all)) == trial.len() {
            rows = trial;
        }
        if rows.len() == basis.cols() {
            break;
        }
    }
    rows
}

enum SearchOutcome {
    Found(IntMatrix),
    Exhausted,
    TooLarge,
}

/// Every intertwiner `X` with entries in `[−B, B]` has its coordinates on
/// the rows `R` in `[−B, B]^d`, and `X` is determined by them; so
/// enumerating those coordinates is exhaustive.
fn bounded_search(a1: &IntMatrix, a2: &IntMatrix, bound: u32, exec: Exec) -> SearchOutcome {
    let n = a1.rows();
    let basis = intertwiner_lattice(a1, a2);
    let d = basis.cols();
    if d == 0 {
        return SearchOutcome::Exhausted;
    }
    let side = 2 * bound as u64 + 1;
    let total = match side.checked_pow(d as u32) {
        Some(t) if t <= MAX_CANDIDATES => t,
        _ => return SearchOutcome::TooLarge,
    };
    let rows = independent_rows(&basis);
    let all: Vec<usize> = (0..d).collect();
    let dec = snf(&basis.submatrix(&rows, &all));
    let diag = dec.diagonal();
    let b = BigInt::from(bound);

    let candidate = |idx: usize| -> Option<IntMatrix> {
        let mut rest = idx as u64;
        let coords: Vec<BigInt> = (0..d)
            .map(|_| {
                let digit = (rest % side) as i64 - bound as i64;
                rest /= side;
                BigInt::from(digit)
            })
            .collect();
        let y = dec.left.mul_vec(&coords);
        let mut z = Vec::with_capacity(d);
        for (yi, di) in y.iter().zip(&diag) {
            if !(yi % di).is_zero() {
                return None;
            }
            z.push(yi / di);
        }
        let t = dec.right.mul_vec(&z);
        let flat = basis.mul_vec(&t);
        if flat.iter().any(|e| e.abs() > b) {
            return None;
        }
        let x = IntMatrix::new(n, n, flat).expect("n² entries");
        matches!(is_unimodular(&x), Ok(true)).then_some(x)
    };
    match find_map_first(exec, 0..total as usize, candidate) {
        Some(x) => SearchOutcome::Found(x),
        None => SearchOutcome::Exhausted,
    }
}

/// Decides whether `A₁` is similar over Z to `A₂` or `A₂⁻¹`, up to the
/// bounded search.
pub fn flip_conjugacy_verdict(
    a1: &IntMatrix,
    a2: &IntMatrix,
    bound: u32,
    exec: Exec,
) -> Result<ConjugacyVerdict, ClassifyError> {
    square(a1)?;
    square(a2)?;
    if a1.rows() != a2.rows() {
        return Err(ClassifyError::SizeMismatch(a1.rows(), a2.rows()));
    }
    if !is_unimodular(a1)? || !is_unimodular(a2)? {
        return Err(ClassifyError::NotUnimodular);
    }
    let a2inv = crate::zlinalg::inverse_unimodular(a2)?;
    let i1 = unipotent_invariants(a1)?;
    let i2 = unipotent_invariants(a2)?;
    let i2inv = unipotent_invariants(&a2inv)?;
    if let Some(separation) = separation(&i1, &i2, &i2inv) {
        return Ok(ConjugacyVerdict::Distinct { separation });
    }

    let targets = [(FlipTarget::Direct, a2), (FlipTarget::Inverse, &a2inv)];
    let id = IntMatrix::identity(a1.rows());
    for (target, t) in targets {
        if a1 == t {
            return Ok(ConjugacyVerdict::PossiblyConjugate {
                witness: id,
                target,
            });
        }
    }
    let mut exhaustive = true;
    for (target, t) in targets {
        match bounded_search(a1, t, bound, exec) {
            SearchOutcome::Found(witness) => {
                return Ok(ConjugacyVerdict::PossiblyConjugate { witness, target })
            }
            SearchOutcome::Exhausted => {}
            SearchOutcome::TooLarge => exhaustive = false,
        }
    }
    Ok(ConjugacyVerdict::Unknown { bound, exhaustive })
}

/// Checks `witness·A₁ = target·witness` with `target` one of `A₂`, `A₂⁻¹`.
pub fn check_conjugator(
    a1: &IntMatrix,
    a2: &IntMatrix,
    witness: &IntMatrix,
    target: FlipTarget,
) -> bool {
    let t = match target {
        FlipTarget::Direct => a2.clone(),
        FlipTarget::Inverse => match crate::zlinalg::inverse_unimodular(a2) {
            Ok(t) => t,
            Err(_) => return false,
        },
    };
    matches!(is_unimodular(witness), Ok(true))
        && witness.checked_mul(a1).ok() == t.checked_mul(witness).ok()
}
