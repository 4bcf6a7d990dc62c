// SPDX-License-Identifier: Apache-2.0

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::number::Scalar;

/// A value in `[0, ∞]`.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtendedDistance<N> {
    Finite(N),
    Infinite,
}

impl<N: Scalar> ExtendedDistance<N> {
    pub fn zero() -> Self {
        ExtendedDistance::Finite(N::zero())
    }

    /// Wraps a finite value. Negative values are rejected.
    pub fn finite(value: N) -> Result<Self> {
        if value < N::zero() {
            return Err(Error::InvalidArgument(format!(
                "negative distance {}",
                value.render()
            )));
        }
        Ok(ExtendedDistance::Finite(value))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedDistance::Infinite)
    }

    pub fn as_finite(&self) -> Option<&N> {
        match self {
            ExtendedDistance::Finite(v) => Some(v),
            ExtendedDistance::Infinite => None,
        }
    }

    /// Strict comparison against a finite bound; `∞ < b` is always false.
    pub fn lt(&self, bound: &N) -> bool {
        match self {
            ExtendedDistance::Finite(v) => v < bound,
            ExtendedDistance::Infinite => false,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (ExtendedDistance::Finite(a), ExtendedDistance::Finite(b)) => {
                ExtendedDistance::Finite(a.clone() + b.clone())
            }
            _ => ExtendedDistance::Infinite,
        }
    }

    pub fn render(&self) -> String {
        match self {
            ExtendedDistance::Finite(v) => v.render(),
            ExtendedDistance::Infinite => "inf".to_string(),
        }
    }
}

impl<N: Scalar> PartialOrd for ExtendedDistance<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (ExtendedDistance::Finite(a), ExtendedDistance::Finite(b)) => a.partial_cmp(b),
            (ExtendedDistance::Finite(_), ExtendedDistance::Infinite) => Some(Ordering::Less),
            (ExtendedDistance::Infinite, ExtendedDistance::Finite(_)) => Some(Ordering::Greater),
            (ExtendedDistance::Infinite, ExtendedDistance::Infinite) => Some(Ordering::Equal),
        }
    }
}

impl<N: Scalar> fmt::Display for ExtendedDistance<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A strictly positive scale `r`.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Scale<N>(N);

impl<N: Scalar> Scale<N> {
    pub fn new(r: N) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "scale must be positive, got {}",
                r.render()
            )));
        }
        Ok(Scale(r))
    }

    pub fn get(&self) -> &N {
        &self.0
    }

    pub fn into_inner(self) -> N {
        self.0
    }

    /// `self + other`; both positive so the sum is too.
    pub fn plus(&self, other: &Scale<N>) -> Scale<N> {
        Scale(self.0.clone() + other.0.clone())
    }

    pub fn plus_value(&self, delta: &N) -> Result<Scale<N>> {
        Scale::new(self.0.clone() + delta.clone())
    }
}

/// How a family's values are compared.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ArithmeticMode {
    Exact,
    /// Single absolute tolerance applied to `≤` and `=` comparisons.
    Float { tolerance: f64 },
}

impl Default for ArithmeticMode {
    fn default() -> Self {
        ArithmeticMode::Exact
    }
}

pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1e-9;

impl ArithmeticMode {
    pub fn float() -> Self {
        ArithmeticMode::Float {
            tolerance: DEFAULT_FLOAT_TOLERANCE,
        }
    }

    /// `a ≤ b`, with `∞` on the left failing against any finite right side.
    pub fn le<N: Scalar>(&self, a: &ExtendedDistance<N>, b: &ExtendedDistance<N>) -> bool {
        match (a, b) {
            (_, ExtendedDistance::Infinite) => true,
            (ExtendedDistance::Infinite, ExtendedDistance::Finite(_)) => false,
            (ExtendedDistance::Finite(x), ExtendedDistance::Finite(y)) => match self {
                ArithmeticMode::Exact => x <= y,
                ArithmeticMode::Float { tolerance } => x.to_f64() <= y.to_f64() + tolerance,
            },
        }
    }

    pub fn eq<N: Scalar>(&self, a: &ExtendedDistance<N>, b: &ExtendedDistance<N>) -> bool {
        match (a, b) {
            (ExtendedDistance::Infinite, ExtendedDistance::Infinite) => true,
            (ExtendedDistance::Finite(x), ExtendedDistance::Finite(y)) => match self {
                ArithmeticMode::Exact => x == y,
                ArithmeticMode::Float { tolerance } => (x.to_f64() - y.to_f64()).abs() <= *tolerance,
            },
            _ => false,
        }
    }

    pub fn is_zero<N: Scalar>(&self, a: &ExtendedDistance<N>) -> bool {
        self.eq(a, &ExtendedDistance::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{q, Q};

    #[test]
    fn infinity_orders_above_finite() {
        let inf: ExtendedDistance<Q> = ExtendedDistance::Infinite;
        let one = ExtendedDistance::Finite(q(1, 1));
        assert!(inf > one);
        assert!(!inf.lt(&q(1000, 1)));
        assert!(inf.add(&one).is_infinite());
        assert!(one.add(&inf).is_infinite());
    }

    #[test]
    fn infinity_on_left_fails_le() {
        let m = ArithmeticMode::Exact;
        let inf: ExtendedDistance<Q> = ExtendedDistance::Infinite;
        let one = ExtendedDistance::Finite(q(1, 1));
        assert!(!m.le(&inf, &one));
        assert!(m.le(&one, &inf));
        assert!(m.le(&inf, &inf));
    }

    #[test]
    fn float_tolerance() {
        let m = ArithmeticMode::float();
        let a = ExtendedDistance::Finite(1.0 + 1e-12);
        let b = ExtendedDistance::Finite(1.0);
        assert!(m.le(&a, &b));
        assert!(m.eq(&a, &b));
        assert!(!ArithmeticMode::Exact.le(&a, &b));
    }

    #[test]
    fn scale_rejects_nonpositive() {
        assert!(Scale::new(q(0, 1)).is_err());
        assert!(Scale::new(q(-1, 2)).is_err());
        assert!(Scale::new(q(1, 2)).is_ok());
        assert!(ExtendedDistance::finite(q(-1, 2)).is_err());
    }
}
