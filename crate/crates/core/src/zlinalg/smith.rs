//! Smith normal form over Z.
//!
//! The reduction keeps four transforms in lock step: `left · M · right = D`
//! and `M = u · D · v`, with `u = left⁻¹` and `v = right⁻¹`. Every row
//! operation applied to `D` is applied to `left` and, inverted, as a column
//! operation on `u`; column operations mirror this on `right` and `v`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `M = U · D · V` with `U`, `V` unimodular and `D` in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// `U⁻¹`, so that `left · M · right = D`.
    pub left: IntMatrix,
    /// `V⁻¹`.
    pub right: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries `d₁ | d₂ | … | d_rank`, all positive.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Full diagonal of `D` (length `min(rows, cols)`), zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Reducer {
    d: IntMatrix,
    left: IntMatrix,
    u: IntMatrix,
    right: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.left.swap_rows(a, b);
        self.u.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.right.swap_cols(a, b);
        self.v.swap_rows(a, b);
    }

    /// `row[target] += k·row[src]`
    fn add_row(&mut self, target: usize, src: usize, k: &BigInt) {
        self.d.add_row_multiple(target, src, k);
        self.left.add_row_multiple(target, src, k);
        self.u.add_col_multiple(src, target, &-k);
    }

    /// `col[target] += k·col[src]`
    fn add_col(&mut self, target: usize, src: usize, k: &BigInt) {
        self.d.add_col_multiple(target, src, k);
        self.right.add_col_multiple(target, src, k);
        self.v.add_row_multiple(src, target, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.left.negate_row(i);
        self.u.negate_col(i);
    }

    /// Position of the smallest nonzero |entry| in the trailing block from `t`.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let e = self.d.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let a = e.abs();
                if best.as_ref().is_none_or(|(_, b)| a < *b) {
                    best = Some(((i, j), a));
                }
            }
        }
        best.map(|(p, _)| p)
    }

    /// Clears row and column `t` outside the pivot, re-pivoting on the
    /// smallest remainder until the pivot divides its whole row and column.
    fn clear_cross(&mut self, t: usize) {
        loop {
            let pivot = self.d.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..self.d.rows() {
                let e = self.d.get(i, t);
                if e.is_zero() {
                    continue;
                }
                let q = e / &pivot;
                self.add_row(i, t, &-q);
                dirty |= !self.d.get(i, t).is_zero();
            }
            for j in t + 1..self.d.cols() {
                let e = self.d.get(t, j);
                if e.is_zero() {
                    continue;
                }
                let q = e / &pivot;
                self.add_col(j, t, &-q);
                dirty |= !self.d.get(t, j).is_zero();
            }
            if !dirty {
                return;
            }
            // a remainder smaller than the pivot survived; move it into place
            let mut best = (t, t, pivot.abs());
            for i in t + 1..self.d.rows() {
                let a = self.d.get(i, t).abs();
                if !a.is_zero() && a < best.2 {
                    best = (i, t, a);
                }
            }
            for j in t + 1..self.d.cols() {
                let a = self.d.get(t, j).abs();
                if !a.is_zero() && a < best.2 {
                    best = (t, j, a);
                }
            }
            self.swap_rows(t, best.0);
            self.swap_cols(t, best.1);
        }
    }

    /// Returns a row index whose entries in the trailing block are not all
    /// divisible by the pivot at `t`.
    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let pivot = self.d.get(t, t);
        for i in t + 1..self.d.rows() {
            for j in t + 1..self.d.cols() {
                if !(self.d.get(i, j) % pivot).is_zero() {
                    return Some(i);
                }
            }
        }
        None
    }
}

/// Smith normal form with minimal-absolute-value pivoting.
pub fn snf(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = Reducer {
        d: m.clone(),
        left: IntMatrix::identity(rows),
        u: IntMatrix::identity(rows),
        right: IntMatrix::identity(cols),
        v: IntMatrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = r.min_pivot(t) else {
            break;
        };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        loop {
            r.clear_cross(t);
            match r.non_divisible_row(t) {
                Some(i) => {
                    let one = BigInt::from(1);
                    r.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if r.d.get(t, t).is_negative() {
            r.negate_row(t);
        }
        t += 1;
    }
    SmithDecomposition {
        u: r.u,
        d: r.d,
        v: r.v,
        left: r.left,
        right: r.right,
        rank: t,
    }
}
