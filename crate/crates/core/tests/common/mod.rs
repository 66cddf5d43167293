#![allow(dead_code)]

use std::collections::HashSet;

use elliott_core::theta::ThetaSymbol;
use elliott_core::zlinalg::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

pub fn theta() -> ThetaSymbol {
    ThetaSymbol::from_decimals("theta", "0.5624", "0.5626").unwrap()
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn furstenberg(m: i64, n: i64) -> IntMatrix {
    IntMatrix::from_i64_rows(&[[1, m, 0], [0, 1, n], [0, 0, 1]])
}

pub fn to_i64(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_i64().unwrap()).collect())
        .collect()
}

/// Random unimodular matrix with entries bounded by `max_entry`, built from
/// elementary operations and sign flips.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, max_entry: i64) -> IntMatrix {
    loop {
        let mut u = vec![vec![0i64; n]; n];
        for (i, row) in u.iter_mut().enumerate() {
            row[i] = 1;
        }
        let steps = rng.gen_range(1..=3 * n);
        let mut ok = true;
        for _ in 0..steps {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a == b {
                if rng.gen_bool(0.3) {
                    for row in u.iter_mut() {
                        row[a] = -row[a];
                    }
                }
                continue;
            }
            let k = rng.gen_range(-2..=2);
            for row in u.iter_mut() {
                row[a] += k * row[b];
                if row[a].abs() > max_entry {
                    ok = false;
                }
            }
        }
        if ok {
            return IntMatrix::from_i64_rows(&u);
        }
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, max_entry: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| {
        BigInt::from(rng.gen_range(-max_entry..=max_entry))
    })
}

/// Subgroup of `(Z/N)^r` generated by the columns of `m`, by closure.
pub fn generated_subgroup(m: &IntMatrix, modulus: i64) -> HashSet<Vec<i64>> {
    let r = m.rows();
    let gens: Vec<Vec<i64>> = (0..m.cols())
        .map(|j| {
            (0..r)
                .map(|i| {
                    m.get(i, j)
                        .mod_floor(&BigInt::from(modulus))
                        .to_i64()
                        .unwrap()
                })
                .collect()
        })
        .collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut stack = vec![vec![0i64; r]];
    seen.insert(vec![0i64; r]);
    while let Some(x) = stack.pop() {
        for g in &gens {
            let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| (a + b) % modulus).collect();
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}

/// `|Zʳ / (im m + N·Zʳ)|` by enumeration.
pub fn quotient_order_mod(m: &IntMatrix, modulus: i64) -> u64 {
    let s = generated_subgroup(m, modulus).len() as u64;
    (modulus as u64).pow(m.rows() as u32) / s
}

/// The same count predicted by a finitely generated group `Z^f ⊕ ⊕ Z/dᵢ`.
pub fn predicted_quotient_order(free: usize, factors: &[BigInt], modulus: i64) -> u64 {
    let n = BigInt::from(modulus);
    let torsion: BigInt = factors.iter().map(|d| d.gcd(&n)).product();
    (modulus as u64).pow(free as u32) * torsion.to_u64().unwrap()
}

/// All `k × k` minors of `m`, via Laplace expansion.
pub fn minors(m: &IntMatrix, k: usize) -> Vec<BigInt> {
    let rows = combinations(m.rows(), k);
    let cols = combinations(m.cols(), k);
    let mut out = Vec::new();
    for r in &rows {
        for c in &cols {
            out.push(laplace_det(&m.submatrix(r, c)));
        }
    }
    out
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn laplace_det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        let rest_rows: Vec<usize> = (1..n).collect();
        let rest_cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let minor = laplace_det(&m.submatrix(&rest_rows, &rest_cols));
        let term = m.get(0, j) * minor;
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `d_k = gcd of all k × k minors`; the `k`-th invariant factor is
/// `d_k / d_{k−1}`.
pub fn determinantal_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=m.rows().min(m.cols()) {
        let g = minors(m, k)
            .iter()
            .fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

pub fn max_abs(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_default()
}
