//! Parameters of the smooth skew rotation of `T²` built from the lacunary
//! sequence `ν₁ = 1`, `ν_{k+1} = 2^{ν_k} + ν_k + 1`.
//!
//! `n_k = 2^{ν_k}`, `θ = Σ_k 2^{−ν_k}` and `β_k = (e^{2πi n_k θ} − 1)/|k|`.
//! The smoothness argument needs `|β_k| ≤ 2π·2^{−n_k}/|k|` and convergence
//! of `Σ n^m / 2^n` for every `m`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::CrossedError;

pub const MAX_DEPTH: usize = 4;
/// Highest derivative order certified.
pub const MAX_ORDER: u32 = 6;
/// Number of terms in each derivative-series partial sum.
/// Largest n_k for which the f64 cross-check of the β bound is run.
pub const NUMERIC_MAX_N: u32 = 32;
pub const SERIES_TERMS: usize = 60;

#[derive(Clone, Debug, PartialEq)]
pub struct BetaCertificate {
    pub k: usize,
    /// `ν_k + 1 − ν_{k+1}`: the binary exponent bounding `frac(n_k θ)`.
    pub exponent: BigInt,
    /// `n_k·θ_k` is an integer, so `frac(n_k θ)` is the tail `n_k(θ − θ_k)`.
    pub head_integral: bool,
    /// `exponent ≤ −n_k`, hence `|β_k| ≤ 2π·2^{−n_k}/k` (and the same for `−k`).
    pub holds: bool,
    /// `(|β_k|, 2π·2^{−n_k}/k)` in floating point, when `n_k` is small enough
    /// for the value not to underflow.
    pub numeric: Option<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeSeries {
    pub order: u32,
    /// `S_N = Σ_{n=1}^{N} n^m / 2^n` for `N = 1..=SERIES_TERMS`.
    pub partials: Vec<BigRational>,
    /// Rigorous upper bound on `Σ_{n>N} n^m / 2^n` at the last `N`.
    pub tail_bound: BigRational,
}

impl DerivativeSeries {
    /// `2(2π)^{m+1}`, the factor between this series and the bound on the
    /// `m`-th derivative series.
    pub fn prefactor(&self) -> f64 {
        2.0 * (2.0 * std::f64::consts::PI).powi(self.order as i32 + 1)
    }

    pub fn is_monotone(&self) -> bool {
        self.partials.windows(2).all(|w| w[0] < w[1])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RouhaniParameters {
    pub depth: usize,
    pub nu: Vec<BigInt>,
    pub n: Vec<BigInt>,
    /// `θ_K = Σ_{k≤K} 2^{−ν_k}`.
    pub theta_partial: BigRational,
    pub beta: Vec<BetaCertificate>,
    pub derivative: Vec<DerivativeSeries>,
}

impl RouhaniParameters {
    pub fn beta_bound_ok(&self) -> bool {
        self.beta.iter().all(|b| b.holds && b.head_integral)
    }
}

fn pow2(e: &BigInt) -> BigInt {
    let e = e.to_usize().expect("exponent fits in memory");
    BigInt::one() << e
}

fn nu_sequence(len: usize) -> Vec<BigInt> {
    let mut nu = vec![BigInt::one()];
    while nu.len() < len {
        let last = nu.last().unwrap();
        nu.push(pow2(last) + last + 1);
    }
    nu
}

fn theta_partial(nu: &[BigInt]) -> BigRational {
    let denom = pow2(nu.last().unwrap());
    let numer = nu.iter().map(|v| &denom / pow2(v)).sum::<BigInt>();
    BigRational::new(numer, denom)
}

fn beta_certificate(k: usize, nu: &[BigInt], n: &[BigInt]) -> BetaCertificate {
    let (nu_k, nu_next, n_k) = (&nu[k - 1], &nu[k], &n[k - 1]);
    let exponent = nu_k + 1 - nu_next;
    let head = theta_partial(&nu[..k]) * BigRational::from_integer(n_k.clone());
    // 2^-n_k must stay resolvable next to frac(n_k θ) in double precision
    let numeric = (*n_k <= BigInt::from(NUMERIC_MAX_N)).then(|| {
        let theta = theta_partial(&nu[..=k]).to_f64().unwrap_or(f64::NAN);
        let n_f = n_k.to_f64().unwrap();
        let frac = (n_f * theta).fract();
        let beta = 2.0 * (std::f64::consts::PI * frac).sin().abs() / k as f64;
        let bound = 2.0 * std::f64::consts::PI * (-n_f).exp2() / k as f64;
        (beta, bound)
    });
    BetaCertificate {
        k,
        holds: exponent <= -n_k,
        head_integral: head.is_integer(),
        exponent,
        numeric,
    }
}

fn derivative_series(order: u32) -> DerivativeSeries {
    let term = |n: usize| BigRational::new(BigInt::from(n).pow(order), BigInt::one() << n);
    let mut partials = Vec::with_capacity(SERIES_TERMS);
    let mut acc = BigRational::zero();
    for n in 1..=SERIES_TERMS {
        acc += term(n);
        partials.push(acc.clone());
    }
    // consecutive term ratios ((n+1)/n)^m / 2 decrease, so the tail after N is
    // dominated by a geometric series with ratio q at n = N+1
    let n = SERIES_TERMS;
    let q = BigRational::new(
        BigInt::from(n + 2).pow(order),
        BigInt::from(n + 1).pow(order),
    ) / BigInt::from(2);
    let tail_bound = term(n + 1) / (BigRational::one() - q);
    DerivativeSeries {
        order,
        partials,
        tail_bound,
    }
}

/// Parameters truncated at depth `K` (`1 ≤ K ≤ 4`).
pub fn rouhani_parameters(depth: usize) -> Result<RouhaniParameters, CrossedError> {
    if depth == 0 {
        return Err(CrossedError::ZeroDepth);
    }
    if depth > MAX_DEPTH {
        return Err(CrossedError::DepthTooLarge(depth));
    }
    // one extra term for the β certificate at k = K
    let nu_ext = nu_sequence(depth + 1);
    let n_ext: Vec<BigInt> = nu_ext[..depth].iter().map(pow2).collect();
    let beta = (1..=depth)
        .map(|k| beta_certificate(k, &nu_ext, &n_ext))
        .collect();
    Ok(RouhaniParameters {
        depth,
        nu: nu_ext[..depth].to_vec(),
        n: n_ext,
        theta_partial: theta_partial(&nu_ext[..depth]),
        beta,
        derivative: (0..=MAX_ORDER).map(derivative_series).collect(),
    })
}
