//! Floating-point cross-check of rotation numbers on degree-1 classes.
//!
//! For `z = Π ζⱼ^{cⱼ}` we have `z(h⁻¹(x))* z(x) = exp(2πi a(x))` with
//! `a(x) = Σ cⱼ (xⱼ − yⱼ)`, `y = h⁻¹(x)`. The rotation number is the
//! Lebesgue integral of a continuous branch of `a`, estimated here with a
//! Halton sequence.

use num_traits::ToPrimitive;

use super::{rotation_number, CrossedError};
use crate::ktheory::TransformationSpec;
use crate::par::{chunked_sum, Exec};
use num_bigint::BigInt;

const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[derive(Clone, Debug, PartialEq)]
pub struct WindingEstimate {
    pub samples: usize,
    /// Sample mean of the winding branch, reduced into `[0, 1)`.
    pub mean: f64,
    /// `c·θ` at the midpoint of the θ interval, reduced into `[0, 1)`.
    pub symbolic: f64,
    /// Distance between `mean` and `symbolic` on `R/Z`.
    pub error: f64,
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += (i % base) as f64 * f;
        i /= base;
        f *= inv;
    }
    r
}

fn frac(x: f64) -> f64 {
    x - x.floor()
}

/// Representative of `x` mod 1 nearest to `reference`.
fn unwrap_near(x: f64, reference: f64) -> f64 {
    x - (x - reference).round()
}

fn circle_distance(a: f64, b: f64) -> f64 {
    let d = frac(a - b);
    d.min(1.0 - d)
}

/// Estimates the rotation number of the fixed class `odd_class` (coordinates
/// in the `K¹(Tⁿ)` basis, supported on degree 1) from `samples` Halton points.
pub fn winding_integral(
    spec: &TransformationSpec,
    odd_class: &[BigInt],
    samples: usize,
    exec: Exec,
) -> Result<WindingEstimate, CrossedError> {
    let symbolic_value = rotation_number(odd_class, spec)?;
    let TransformationSpec::AffineFurstenbergTorus {
        dimension,
        exponents,
        ..
    } = spec
    else {
        return Err(CrossedError::NotDegreeOne);
    };
    let n = *dimension;
    if n > PRIMES.len()
        || odd_class[n..]
            .iter()
            .any(|c| c.sign() != num_bigint::Sign::NoSign)
    {
        return Err(CrossedError::NotDegreeOne);
    }
    if samples == 0 {
        return Err(CrossedError::NoSamples);
    }
    let c: Vec<f64> = odd_class[..n].iter().map(|v| v.to_f64().unwrap()).collect();
    let m: Vec<f64> = exponents.iter().map(|v| v.to_f64().unwrap()).collect();
    let theta = spec.theta().midpoint_f64();

    let branch = |i: usize| {
        let mut y_prev = 0.0;
        let mut a = 0.0;
        for j in 0..n {
            let x = radical_inverse(i as u64 + 1, PRIMES[j]);
            let y = if j == 0 {
                frac(x - theta)
            } else {
                frac(x - m[j - 1] * y_prev)
            };
            a += c[j] * (x - y);
            y_prev = y;
        }
        a
    };
    let reference = branch(0);
    let total = chunked_sum(exec, samples, |i| unwrap_near(branch(i), reference));
    let mean = frac(total / samples as f64);
    let symbolic = frac(symbolic_value.evaluate(theta));
    Ok(WindingEstimate {
        samples,
        mean,
        symbolic,
        error: circle_distance(mean, symbolic),
    })
}
