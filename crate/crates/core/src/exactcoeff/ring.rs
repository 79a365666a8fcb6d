use std::fmt;

use num_traits::{One, Zero};

use super::{BPoly, CoeffError, Rational};

/// Commutative coefficient ring used by every series type in the crate.
///
/// Implemented by [`Rational`], [`BPoly`], [`super::FlowFraction`] and
/// [`super::TruncatedTSeries`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    /// Multiplicative inverse when it exists in the ring.
    fn try_inverse(&self) -> Option<Self>;

    fn from_rational(c: &Rational) -> Self {
        Self::one().scale(c)
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&super::rat(n))
    }

    /// Equality up to the precision the values carry. Exact types use `==`;
    /// truncated expansions compare on their common prefix.
    fn agrees(&self, other: &Self) -> bool {
        self == other
    }

    fn accumulate(&mut self, other: &Self) {
        *self = self.plus(other);
    }

    /// Lossless JSON form: rationals as `"p"` or `"p/q"` strings.
    fn to_wire(&self) -> serde_json::Value;
}

/// Coefficients that depend on the flow parameter `t` (and on `b`).
pub trait TCoefficient: Coefficient {
    fn from_bpoly(p: &BPoly) -> Self;
    /// Value at `t = 0`, embedded back as a `t`-constant element.
    fn at_t0(&self) -> Self;
    /// Exact division by `t`; fails unless the value vanishes at `t = 0`.
    fn div_t(&self) -> Result<Self, CoeffError>;
    fn mul_t(&self) -> Self;
    /// Multiplication by `1 / (1 - t)`.
    fn over_one_minus_t(&self) -> Self;
    fn mul_b(&self) -> Self;
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn try_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(c: &Rational) -> Self {
        c.clone()
    }
    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }
    fn to_wire(&self) -> serde_json::Value {
        serde_json::Value::String(super::format_rational(self))
    }
}
