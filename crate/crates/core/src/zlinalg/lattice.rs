use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{snf, FgAbGroup, IntMatrix, LinalgError};

/// The cokernel of `M: Z^cols → Z^rows` with explicit generators.
///
/// Generators come free ones first, then one torsion generator per
/// invariant factor, matching [`FgAbGroup::generator_orders`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub group: FgAbGroup,
    /// Row `k` is the coordinate functional of generator `k` on `Z^rows`.
    /// Torsion coordinates are only meaningful modulo the generator order.
    pub projection: IntMatrix,
    /// Column `k` is a representative in `Z^rows` of generator `k`.
    pub lifts: IntMatrix,
    pub orders: Vec<Option<BigInt>>,
}

impl Cokernel {
    /// Coordinates of the class of `x`, torsion entries reduced into `[0, order)`.
    pub fn coordinates(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.projection.mul_vec(x);
        for (c, order) in y.iter_mut().zip(&self.orders) {
            if let Some(d) = order {
                *c = c.mod_floor(d);
            }
        }
        y
    }

    pub fn free_rank(&self) -> usize {
        self.group.rank()
    }
}

pub fn cokernel(m: &IntMatrix) -> Cokernel {
    let s = snf(m);
    let rows = m.rows();
    let mut free = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..rows {
        if i >= s.rank {
            free.push(i);
        } else if !s.d.get(i, i).is_one() {
            torsion.push(i);
        }
    }
    let order: Vec<usize> = free.iter().chain(&torsion).copied().collect();
    let all_cols: Vec<usize> = (0..rows).collect();
    let projection = s.left.submatrix(&order, &all_cols);
    let lifts = s.u.select_columns(&order);
    let orders = free
        .iter()
        .map(|_| None)
        .chain(torsion.iter().map(|&i| Some(s.d.get(i, i).clone())))
        .collect();
    let factors = torsion.iter().map(|&i| s.d.get(i, i).clone()).collect();
    Cokernel {
        group: FgAbGroup::new(free.len(), factors).expect("Smith diagonal is canonical"),
        projection,
        lifts,
        orders,
    }
}

/// A saturated Z-basis of `{x : Mx = 0}`, returned as the columns of a
/// `cols × k` matrix in column Hermite normal form.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let s = snf(m);
    let ker: Vec<usize> = (s.rank..m.cols()).collect();
    hermite_normal_form(&s.right.select_columns(&ker))
}

pub fn is_unimodular(m: &IntMatrix) -> Result<bool, LinalgError> {
    Ok(m.determinant()?.abs().is_one())
}

pub fn rank(m: &IntMatrix) -> usize {
    snf(m).rank
}

/// Canonical basis of the lattice spanned by the columns of `m`.
///
/// Output columns `h₁ … h_r` have strictly increasing pivot rows `p_j`
/// (first nonzero entry), `h_j[p_j] > 0`, and every earlier column satisfies
/// `0 ≤ h_i[p_j] < h_j[p_j]`.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let mut c = 0;
    for p in 0..a.rows() {
        if c == a.cols() {
            break;
        }
        // gcd-combine row p over columns c.. into column c
        loop {
            let mut best: Option<(usize, BigInt)> = None;
            for j in c..a.cols() {
                let e = a.get(p, j).abs();
                if !e.is_zero() && best.as_ref().is_none_or(|(_, b)| e < *b) {
                    best = Some((j, e));
                }
            }
            let Some((j, _)) = best else { break };
            a.swap_cols(c, j);
            let pivot = a.get(p, c).clone();
            let mut done = true;
            for j in c + 1..a.cols() {
                let e = a.get(p, j);
                if e.is_zero() {
                    continue;
                }
                let q = e.div_floor(&pivot);
                a.add_col_multiple(j, c, &-q);
                done &= a.get(p, j).is_zero();
            }
            if done {
                break;
            }
        }
        if a.get(p, c).is_zero() {
            continue;
        }
        if a.get(p, c).is_negative() {
            a.negate_col(c);
        }
        let pivot = a.get(p, c).clone();
        for i in 0..c {
            let q = a.get(p, i).div_floor(&pivot);
            a.add_col_multiple(i, c, &-q);
        }
        c += 1;
    }
    a.select_columns(&(0..c).collect::<Vec<_>>())
}

/// An integer solution `X` of `A·X = B`, or `None` if some column of `B`
/// has no integral preimage. Free directions are set to zero.
pub fn solve(a: &IntMatrix, b: &IntMatrix) -> Result<Option<IntMatrix>, LinalgError> {
    if a.rows() != b.rows() {
        return Err(LinalgError::DimensionMismatch {
            op: "solve",
            left: (a.rows(), a.cols()),
            right: (b.rows(), b.cols()),
        });
    }
    let s = snf(a);
    let y = &s.left * b;
    let mut z = IntMatrix::zeros(a.cols(), b.cols());
    for j in 0..b.cols() {
        for i in 0..a.rows() {
            let yi = y.get(i, j);
            if i < s.rank {
                let (q, r) = yi.div_rem(s.d.get(i, i));
                if !r.is_zero() {
                    return Ok(None);
                }
                z.set(i, j, q);
            } else if !yi.is_zero() {
                return Ok(None);
            }
        }
    }
    Ok(Some(&s.right * &z))
}

/// Inverse of a unimodular matrix, exact over Z.
pub fn inverse_unimodular(m: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    if !is_unimodular(m)? {
        return Err(LinalgError::NotUnimodular);
    }
    Ok(solve(m, &IntMatrix::identity(m.rows()))?.expect("unimodular matrices are invertible"))
}

/// Extends the columns of `s` (a basis of a saturated sublattice of `Z^n`)
/// to a unimodular `n × n` matrix whose leading columns are `s`.
pub fn complete_to_basis(s: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    let n = s.rows();
    let k = s.cols();
    let dec = snf(s);
    if dec.rank != k || dec.invariant_factors().iter().any(|d| !d.is_one()) {
        return Err(LinalgError::NotSaturated);
    }
    let rest: Vec<usize> = (k..n).collect();
    let tail = dec.u.select_columns(&rest);
    let mut cols = s.columns();
    cols.extend(tail.columns());
    Ok(IntMatrix::from_columns(n, &cols))
}

/// Index of the lattice spanned by `sub` inside the lattice with basis
/// `basis` (full column rank). `Ok(None)` when the index is infinite.
pub fn lattice_index(basis: &IntMatrix, sub: &IntMatrix) -> Result<Option<BigInt>, LinalgError> {
    let coords = solve(basis, sub)?.ok_or(LinalgError::NotSublattice)?;
    let s = snf(&coords);
    if s.rank < basis.cols() {
        return Ok(None);
    }
    Ok(Some(s.invariant_factors().iter().product()))
}
