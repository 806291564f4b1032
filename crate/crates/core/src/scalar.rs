//! Exact coefficient fields.
//!
//! Every algebraic structure in this crate is generic over a [`Scalar`], an
//! exact field of characteristic zero. Floating point types are deliberately
//! not implementors: ranks over the rationals are not stable under rounding.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact field of characteristic zero, convertible to and from
/// arbitrary-precision rationals.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Eq + Send + Sync + 'static + num_traits::Num + Signed
{
    fn from_int(value: i64) -> Self;

    /// `None` when the value does not fit the representation.
    fn from_rational(value: &BigRational) -> Option<Self>;

    fn to_rational(&self) -> BigRational;

    fn is_integral(&self) -> bool;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    /// Multiplication by a Koszul sign in `{-1, 0, 1}`.
    fn signed(self, sign: i8) -> Self {
        match sign {
            0 => Self::zero(),
            s if s > 0 => self,
            _ => -self,
        }
    }
}

impl Scalar for BigRational {
    fn from_int(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn from_rational(value: &BigRational) -> Option<Self> {
        Some(value.clone())
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

/// Machine-word rationals. Faster for small inputs; arithmetic overflow
/// panics, so prefer [`BigRational`] for anything that is not tiny.
impl Scalar for Rational64 {
    fn from_int(value: i64) -> Self {
        Rational64::from_integer(value)
    }

    fn from_rational(value: &BigRational) -> Option<Self> {
        let numer = value.numer().to_i64()?;
        let denom = value.denom().to_i64()?;
        Some(Rational64::new(numer, denom))
    }

    fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

/// `1/m!` in any scalar field.
pub fn inverse_factorial<S: Scalar>(m: u32) -> S {
    let mut fact = S::one();
    for k in 2..=m {
        fact = fact * S::from_int(k as i64);
    }
    S::one() / fact
}

/// Renders a coefficient as `p` or `p/q` in lowest terms.
pub fn format_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses the canonical `p/q` (or bare `p`) coefficient syntax: `q > 0` and
/// `gcd(|p|, q) = 1`.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (text, None),
    };
    let numer: BigInt = numer
        .parse()
        .map_err(|_| format!("invalid numerator in coefficient {text:?}"))?;
    let denom: BigInt = match denom {
        Some(q) => {
            if q.starts_with('-') || q.starts_with('+') {
                return Err(format!("denominator must be a positive integer in {text:?}"));
            }
            q.parse()
                .map_err(|_| format!("invalid denominator in coefficient {text:?}"))?
        }
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(format!("zero denominator in coefficient {text:?}"));
    }
    let g = num_integer::Integer::gcd(&numer.abs(), &denom);
    if !g.is_one() && !numer.is_zero() {
        return Err(format!("coefficient {text:?} is not in lowest terms"));
    }
    if numer.is_zero() && !denom.is_one() {
        return Err(format!("coefficient {text:?} is not in lowest terms"));
    }
    Ok(BigRational::new_raw(numer, denom))
}
