//! Symbolic values `a + bθ` over an interval-bounded irrational θ.
//!
//! θ is never evaluated exactly. Its only numeric content is an open
//! rational interval `(lo, hi) ⊂ (0, 1)`, and every sign or floor decision
//! is made by interval arithmetic over that bracket.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error("theta label must be a nonempty identifier, got {0:?}")]
    BadLabel(String),
    #[error("theta interval lower bound {lo} must be > 0")]
    LowerBound { lo: String },
    #[error("theta interval upper bound {hi} must be < 1")]
    UpperBound { hi: String },
    #[error("theta interval is empty: lower bound {lo} is not below upper bound {hi}")]
    Empty { lo: String, hi: String },
    #[error("not a decimal number: {0:?}")]
    Decimal(String),
    #[error("values reference different theta symbols ({0} and {1})")]
    Mismatch(String, String),
}

/// Parses a plain decimal string (`-12`, `0.5624`, `.25`) into an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational, ThetaError> {
    let bad = || ThetaError::Decimal(s.to_string());
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = BigRational::new(numer, denom);
    Ok(if neg { -value } else { value })
}

/// Decimal rendering of a rational when it terminates, else `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    let mut d = r.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut pow2 = 0usize;
    let mut pow5 = 0usize;
    while d.is_even() {
        d /= &two;
        pow2 += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        pow5 += 1;
    }
    if !d.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let places = pow2.max(pow5);
    if places == 0 {
        return r.numer().to_string();
    }
    let scaled = r * BigRational::from_integer(num_traits::pow(BigInt::from(10), places));
    let n = scaled.to_integer();
    let sign = if n.is_negative() { "-" } else { "" };
    let digits = format!("{:0>width$}", n.abs().to_string(), width = places + 1);
    let (ip, fp) = digits.split_at(digits.len() - places);
    format!("{sign}{ip}.{fp}")
}

/// An irrational number known only by name and an enclosing interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaSymbol {
    label: String,
    lo: BigRational,
    hi: BigRational,
}

impl ThetaSymbol {
    pub fn new(
        label: impl Into<String>,
        lo: BigRational,
        hi: BigRational,
    ) -> Result<Self, ThetaError> {
        let label = label.into();
        let ident_ok = label
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && label.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ident_ok {
            return Err(ThetaError::BadLabel(label));
        }
        if !lo.is_positive() {
            return Err(ThetaError::LowerBound {
                lo: format_rational(&lo),
            });
        }
        if hi >= BigRational::one() {
            return Err(ThetaError::UpperBound {
                hi: format_rational(&hi),
            });
        }
        if lo >= hi {
            return Err(ThetaError::Empty {
                lo: format_rational(&lo),
                hi: format_rational(&hi),
            });
        }
        Ok(Self { label, lo, hi })
    }

    pub fn from_decimals(label: impl Into<String>, lo: &str, hi: &str) -> Result<Self, ThetaError> {
        Self::new(label, parse_decimal(lo)?, parse_decimal(hi)?)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Zero,
    Negative,
    /// The θ interval is too wide to decide.
    NeedTighterTheta,
}

/// The real number `a + bθ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TraceValue {
    a: BigRational,
    b: BigRational,
    theta: ThetaSymbol,
}

impl TraceValue {
    pub fn new(a: BigRational, b: BigRational, theta: &ThetaSymbol) -> Self {
        Self {
            a,
            b,
            theta: theta.clone(),
        }
    }

    pub fn zero(theta: &ThetaSymbol) -> Self {
        Self::new(BigRational::zero(), BigRational::zero(), theta)
    }

    pub fn integers(a: impl Into<BigInt>, b: impl Into<BigInt>, theta: &ThetaSymbol) -> Self {
        Self::new(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
            theta,
        )
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn theta(&self) -> &ThetaSymbol {
        &self.theta
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ThetaError> {
        if self.theta.label != other.theta.label {
            return Err(ThetaError::Mismatch(
                self.theta.label.clone(),
                other.theta.label.clone(),
            ));
        }
        Ok(Self::new(
            &self.a + &other.a,
            &self.b + &other.b,
            &self.theta,
        ))
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.a, -&self.b, &self.theta)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        Self::new(&self.a * &k, &self.b * &k, &self.theta)
    }

    /// `Σ cᵢ·vᵢ`; all values must share one θ.
    pub fn combination(
        coeffs: &[BigInt],
        values: &[Self],
        theta: &ThetaSymbol,
    ) -> Result<Self, ThetaError> {
        let mut acc = Self::zero(theta);
        for (c, v) in coeffs.iter().zip(values) {
            acc = acc.checked_add(&v.scale(c))?;
        }
        Ok(acc)
    }

    /// Closed enclosure `[min, max]` of `a + bθ` for θ in its interval.
    pub fn enclosure(&self) -> (BigRational, BigRational) {
        let at_lo = &self.a + &self.b * &self.theta.lo;
        let at_hi = &self.a + &self.b * &self.theta.hi;
        if at_lo <= at_hi {
            (at_lo, at_hi)
        } else {
            (at_hi, at_lo)
        }
    }

    pub fn sign(&self) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        if self.b.is_zero() {
            return if self.a.is_positive() {
                Sign::Positive
            } else {
                Sign::Negative
            };
        }
        // θ lies strictly inside (lo, hi), so a zero endpoint still decides
        let (min, max) = self.enclosure();
        if !min.is_negative() {
            Sign::Positive
        } else if !max.is_positive() {
            Sign::Negative
        } else {
            Sign::NeedTighterTheta
        }
    }

    /// `⌊a + bθ⌋` when the interval pins it down.
    pub fn floor(&self) -> Option<BigInt> {
        if self.b.is_zero() {
            return Some(self.a.floor().to_integer());
        }
        let (min, max) = self.enclosure();
        // the open interval (min, max) contains the value
        let f = min.floor().to_integer();
        if BigRational::from_integer(&f + 1) >= max {
            Some(f)
        } else {
            None
        }
    }

    /// The representative of `self mod Z` in `[0, 1)`.
    pub fn reduce_mod_one(&self) -> Option<Self> {
        let f = self.floor()?;
        Some(Self::new(
            &self.a - BigRational::from_integer(f),
            self.b.clone(),
            &self.theta,
        ))
    }

    /// Value at a concrete θ, for numerical cross-checks.
    pub fn evaluate(&self, theta: f64) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * theta
    }
}

impl fmt::Display for TraceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = &self.theta.label;
        let theta_term = |b: &BigRational| -> String {
            let mag = b.abs();
            if mag.is_one() {
                label.clone()
            } else {
                format!("{}*{label}", format_rational(&mag))
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", format_rational(&self.a)),
            (true, false) => {
                let sign = if self.b.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}", theta_term(&self.b))
            }
            (false, false) => {
                let op = if self.b.is_negative() { "-" } else { "+" };
                write!(
                    f,
                    "{} {op} {}",
                    format_rational(&self.a),
                    theta_term(&self.b)
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_decimal(s).unwrap()
    }

    fn theta(lo: &str, hi: &str) -> ThetaSymbol {
        ThetaSymbol::from_decimals("theta", lo, hi).unwrap()
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(q("0.5624"), BigRational::new(5624.into(), 10000.into()));
        assert_eq!(q("-1.5"), BigRational::new((-3).into(), 2.into()));
        assert_eq!(q(".25"), BigRational::new(1.into(), 4.into()));
        assert_eq!(q("3"), BigRational::from_integer(3.into()));
        for bad in ["", ".", "1e-3", "0.1.2", "abc", "--1"] {
            assert!(parse_decimal(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn interval_validation_names_the_bound() {
        let err = ThetaSymbol::from_decimals("theta", "0.7", "0.6").unwrap_err();
        assert!(err.to_string().contains("0.7"), "{err}");
        assert!(matches!(err, ThetaError::Empty { .. }));
        assert!(matches!(
            ThetaSymbol::from_decimals("theta", "0", "0.5"),
            Err(ThetaError::LowerBound { .. })
        ));
        assert!(matches!(
            ThetaSymbol::from_decimals("theta", "0.5", "1"),
            Err(ThetaError::UpperBound { .. })
        ));
        assert!(ThetaSymbol::from_decimals("9x", "0.1", "0.2").is_err());
    }

    #[test]
    fn sign_examples() {
        let t = theta("0.1", "0.9");
        assert_eq!(TraceValue::integers(0, 1, &t).sign(), Sign::Positive);

        let t = theta("0.5624", "0.5626");
        let v = TraceValue::integers(1, -2, &t);
        assert_eq!(v.sign(), Sign::Negative);
        let (lo, hi) = v.enclosure();
        assert_eq!(lo, q("-0.1252"));
        assert_eq!(hi, q("-0.1248"));

        let t = theta("0.4", "0.6");
        assert_eq!(
            TraceValue::integers(-1, 2, &t).sign(),
            Sign::NeedTighterTheta
        );
        assert_eq!(TraceValue::zero(&t).sign(), Sign::Zero);
    }

    #[test]
    fn floor_and_reduction() {
        let t = theta("0.5624", "0.5626");
        let v = TraceValue::integers(0, -1, &t);
        let r = v.reduce_mod_one().unwrap();
        assert_eq!(r, TraceValue::integers(1, -1, &t));
        assert_eq!(r.to_string(), "1 - theta");
        assert_eq!(TraceValue::integers(0, 2, &t).floor(), Some(BigInt::one()));

        let wide = theta("0.4", "0.6");
        assert_eq!(TraceValue::integers(0, 2, &wide).floor(), None);
    }

    #[test]
    fn display_forms() {
        let t = theta("0.1", "0.2");
        assert_eq!(TraceValue::integers(0, 1, &t).to_string(), "theta");
        assert_eq!(TraceValue::integers(1, 0, &t).to_string(), "1");
        assert_eq!(TraceValue::integers(0, -2, &t).to_string(), "-2*theta");
        let v = TraceValue::new(q("0.5"), q("0.75"), &t);
        assert_eq!(v.to_string(), "0.5 + 0.75*theta");
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(TraceValue::new(third, q("0"), &t).to_string(), "1/3");
    }

    #[test]
    fn arithmetic_requires_same_symbol() {
        let a = TraceValue::integers(1, 0, &theta("0.1", "0.2"));
        let other = ThetaSymbol::from_decimals("phi", "0.1", "0.2").unwrap();
        let b = TraceValue::integers(0, 1, &other);
        assert!(a.checked_add(&b).is_err());
        assert_eq!(a.checked_add(&a.neg()).unwrap().sign(), Sign::Zero);
    }
}
