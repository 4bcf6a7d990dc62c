// SPDX-License-Identifier: Apache-2.0

//! Scalar types shared by exact and floating instances.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact rational number used by every exact instance.
pub type Q = BigRational;

/// Arithmetic needed by the audit engines. Implemented for [`Q`] and `f64`.
pub trait Scalar:
    Clone
    + PartialOrd
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn zero() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// `base^exp` for a small integer base and possibly negative exponent.
    fn int_pow(base: i64, exp: i32) -> Self;
    fn to_f64(&self) -> f64;
    /// `p/q` for rationals, shortest round-trip decimal for floats.
    fn render(&self) -> String;

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn half(&self) -> Self {
        self.clone() / Self::from_ratio(2, 1)
    }

    fn min_of(a: &Self, b: &Self) -> Self {
        if b < a {
            b.clone()
        } else {
            a.clone()
        }
    }

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            Self::zero() - self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for Q {
    fn zero() -> Self {
        <Q as Zero>::zero()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Q::new(BigInt::from(num), BigInt::from(den))
    }

    fn int_pow(base: i64, exp: i32) -> Self {
        let b = BigInt::from(base);
        let p = num_traits::pow(b, exp.unsigned_abs() as usize);
        if exp >= 0 {
            Q::from_integer(p)
        } else {
            Q::new(BigInt::one(), p)
        }
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn render(&self) -> String {
        format_q(self)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn int_pow(base: i64, exp: i32) -> Self {
        (base as f64).powi(exp)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}

/// Builds `num/den` as an exact rational.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Always `p/q`, including integers (`3/1`), so exactness survives JSON.
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// `p/q` when fractional, bare integer otherwise. Used for human output.
pub fn display_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format_q(x)
    }
}

/// Parses `p/q`, `p`, or a finite decimal such as `-0.125`.
pub fn parse_q(s: &str) -> Result<Q, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.trim_start().starts_with('-');
        let int_part = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_part = BigInt::from_str(frac).map_err(|_| bad())?;
        let mag = Q::new(int_part.abs() * &scale + frac_part, scale);
        return Ok(if negative { -mag } else { mag });
    }
    let n = BigInt::from_str(s).map_err(|_| bad())?;
    Ok(Q::from_integer(n))
}

/// Exact dyadic rational equal to the given finite float.
pub fn q_from_f64(x: f64) -> Q {
    Q::from_float(x).expect("finite float")
}

pub fn floor_to_i128(x: &Q) -> i128 {
    let (quot, _) = x.numer().div_mod_floor(x.denom());
    quot.to_i128().expect("position fits in i128")
}

pub fn ceil_to_i64(x: &Q) -> i64 {
    x.ceil().to_integer().to_i64().expect("value fits in i64")
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_q("3/10").unwrap(), q(3, 10));
        assert_eq!(parse_q("-7").unwrap(), qi(-7));
        assert_eq!(parse_q("0.125").unwrap(), q(1, 8));
        assert_eq!(parse_q("-0.5").unwrap(), q(-1, 2));
        assert_eq!(parse_q("-.5").unwrap(), q(-1, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(format_q(&qi(3)), "3/1");
        assert_eq!(display_q(&qi(3)), "3");
        assert_eq!(display_q(&q(-6, 20)), "-3/10");
    }

    #[test]
    fn powers() {
        assert_eq!(<Q as Scalar>::int_pow(3, 4), qi(81));
        assert_eq!(<Q as Scalar>::int_pow(3, -2), q(1, 9));
        assert_eq!(<Q as Scalar>::int_pow(2, 0), qi(1));
        assert_eq!(<f64 as Scalar>::int_pow(2, -3), 0.125);
    }

    #[test]
    fn floors() {
        assert_eq!(floor_to_i128(&q(-1, 2)), -1);
        assert_eq!(floor_to_i128(&q(7, 2)), 3);
        assert_eq!(ceil_to_i64(&q(7, 3)), 3);
        assert_eq!(ceil_to_i64(&qi(2)), 2);
    }
}
