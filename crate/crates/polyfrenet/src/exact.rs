//! Exact rational arithmetic helpers: parsing, perfect-square detection and
//! quadratic surds `a + b√d` for presenting the roots of the classification
//! quadratics without losing exactness.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational scalar used by the classification layer.
pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("cannot parse {input:?} as a rational number")]
    Invalid { input: String },
    #[error("zero denominator in {input:?}")]
    ZeroDenominator { input: String },
}

/// Parses `"3"`, `"-5/4"` or a finite decimal like `"0.25"` into an exact
/// rational.
pub fn parse_rational(input: &str) -> Result<Rat, ParseRationalError> {
    let s = input.trim();
    let invalid = || ParseRationalError::Invalid {
        input: input.to_string(),
    };
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| invalid())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| invalid())?;
        if d.is_zero() {
            return Err(ParseRationalError::ZeroDenominator {
                input: input.to_string(),
            });
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int = match int_part {
            "" | "-" | "+" => BigInt::zero(),
            other => BigInt::from_str(other).map_err(|_| invalid())?,
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        let frac = BigInt::from_str(frac_part).map_err(|_| invalid())?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let magnitude = int.magnitude().clone() * scale.magnitude().clone()
            + frac.magnitude().clone();
        let mut numer = BigInt::from(magnitude);
        if negative {
            numer = -numer;
        }
        return Ok(Rat::new(numer, scale));
    }
    let n = BigInt::from_str(s).map_err(|_| invalid())?;
    Ok(Rat::from_integer(n))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn bigint_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// `√x` when `x` is the square of a rational, `None` otherwise.
pub fn rational_sqrt_exact(x: &Rat) -> Option<Rat> {
    let n = bigint_sqrt_exact(x.numer())?;
    let d = bigint_sqrt_exact(x.denom())?;
    Some(Rat::new(n, d))
}

/// Exact real of the form `a + b √d` with rational `a`, `b` and `d >= 0`.
///
/// Square roots of perfect squares are folded away on construction, so a
/// rational value always has `b = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadVal {
    a: Rat,
    b: Rat,
    d: Rat,
}

impl QuadVal {
    pub fn rational(a: Rat) -> Self {
        QuadVal {
            a,
            b: Rat::zero(),
            d: Rat::zero(),
        }
    }

    /// `a + b √d`; requires `d >= 0`.
    pub fn new(a: Rat, b: Rat, d: Rat) -> Self {
        assert!(!d.is_negative(), "radicand must be non-negative");
        if b.is_zero() || d.is_zero() {
            return QuadVal::rational(a);
        }
        if let Some(root) = rational_sqrt_exact(&d) {
            return QuadVal::rational(a + b * root);
        }
        QuadVal { a, b, d }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn is_zero(&self) -> bool {
        // a + b√d with b ≠ 0 and d not a perfect square is irrational
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign: -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        if self.b.is_zero() {
            return sign_of(&self.a);
        }
        if self.a.is_zero() {
            return sign_of(&self.b);
        }
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa == sb {
            return sa;
        }
        // compare a² with b²·d; the signs differ, so the larger magnitude wins
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * &self.d;
        match a2.cmp(&b2d) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * to_f64(&self.d).sqrt()
    }
}

fn sign_of(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for QuadVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            if self.b.is_one() {
                return write!(f, "sqrt({})", self.d);
            }
            return write!(f, "({})*sqrt({})", self.b, self.d);
        }
        write!(f, "{} + ({})*sqrt({})", self.a, self.b, self.d)
    }
}

/// 15-significant-digit decimal rendering used in reports and CSV output.
pub fn decimal15(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    format!("{x:.14e}")
}
