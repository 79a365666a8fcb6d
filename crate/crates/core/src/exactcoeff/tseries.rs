use std::fmt;

use super::ring::{Coefficient, TCoefficient};
use super::{BPoly, CoeffError, Rational};

/// Order carried by `t`-free values (constants) so that they never lower
/// the precision of what they are combined with.
pub const EXACT_ORDER: usize = usize::MAX;

/// A power series in `t` over `b`-polynomials known modulo `t^{order + 1}`.
///
/// Trailing zero coefficients are not stored. Arithmetic keeps the smaller
/// of the two orders; use [`Coefficient::agrees`] to compare values of
/// different precision on their common prefix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedTSeries {
    coeffs: Vec<BPoly>,
    order: usize,
}

impl TruncatedTSeries {
    pub fn new(coeffs: Vec<BPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs order >= 0");
        let order = coeffs.len() - 1;
        Self::with_order(coeffs, order)
    }

    pub fn with_order(mut coeffs: Vec<BPoly>, order: usize) -> Self {
        if order < EXACT_ORDER {
            coeffs.truncate(order + 1);
        }
        while coeffs.last().is_some_and(BPoly::is_zero) {
            coeffs.pop();
        }
        TruncatedTSeries { coeffs, order }
    }

    pub fn zero(order: usize) -> Self {
        Self::with_order(Vec::new(), order)
    }

    pub fn constant(p: BPoly, order: usize) -> Self {
        Self::with_order(vec![p], order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order == EXACT_ORDER
    }

    /// Coefficients `t^0 ..= t^order` (panics for exact values).
    pub fn coeffs(&self) -> Vec<BPoly> {
        assert!(!self.is_exact(), "exact value has no finite coefficient list");
        (0..=self.order).map(|j| self.coeff(j)).collect()
    }

    pub fn coeff(&self, j: usize) -> BPoly {
        self.coeffs.get(j).cloned().unwrap_or_else(BPoly::zero)
    }

    /// Number of stored (possibly nonzero) coefficients.
    pub fn stored_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::with_order(self.coeffs.clone(), order.min(self.order))
    }

    fn zip(&self, other: &Self, f: impl Fn(&BPoly, &BPoly) -> BPoly) -> Self {
        let order = self.order.min(other.order);
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::with_order((0..n).map(|j| f(&self.coeff(j), &other.coeff(j))).collect(), order)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero(order);
        }
        let n = (self.coeffs.len() + other.coeffs.len() - 1).min(order.saturating_add(1));
        let mut out = vec![BPoly::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::with_order(out, order)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Debug for TruncatedTSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedTSeries({self})")
    }
}

impl fmt::Display for TruncatedTSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})t^{j}")?;
        }
        if !self.is_exact() {
            write!(f, " + O(t^{})", self.order + 1)?;
        }
        Ok(())
    }
}

impl serde::Serialize for TruncatedTSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.is_exact() {
            self.coeffs.serialize(serializer)
        } else {
            self.coeffs().serialize(serializer)
        }
    }
}

impl Coefficient for TruncatedTSeries {
    fn to_wire(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
    fn zero() -> Self {
        Self::zero(EXACT_ORDER)
    }
    fn one() -> Self {
        Self::constant(BPoly::one(), EXACT_ORDER)
    }
    fn is_zero(&self) -> bool {
        TruncatedTSeries::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }
    fn minus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negate(&self) -> Self {
        Self::with_order(self.coeffs.iter().map(|c| -c).collect(), self.order)
    }
    fn scale(&self, c: &Rational) -> Self {
        Self::with_order(self.coeffs.iter().map(|p| p.scale(c)).collect(), self.order)
    }
    fn try_inverse(&self) -> Option<Self> {
        let c0 = self.coeffs.first()?.try_inverse()?;
        if self.coeffs.len() == 1 {
            return Some(Self::with_order(vec![c0], self.order));
        }
        if self.is_exact() {
            return None;
        }
        let mut inv = vec![BPoly::zero(); self.order + 1];
        inv[0] = c0.clone();
        for n in 1..=self.order {
            let mut acc = BPoly::zero();
            for k in 1..=n.min(self.coeffs.len() - 1) {
                acc = &acc + &(&self.coeffs[k] * &inv[n - k]);
            }
            inv[n] = -&(&acc * &c0);
        }
        Some(Self::with_order(inv, self.order))
    }
    fn agrees(&self, other: &Self) -> bool {
        let order = self.order.min(other.order);
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).take_while(|&j| j <= order).all(|j| self.coeff(j) == other.coeff(j))
    }
}

impl TCoefficient for TruncatedTSeries {
    fn from_bpoly(p: &BPoly) -> Self {
        Self::constant(p.clone(), EXACT_ORDER)
    }
    fn at_t0(&self) -> Self {
        Self::constant(self.coeff(0), EXACT_ORDER)
    }
    fn div_t(&self) -> Result<Self, CoeffError> {
        if !self.coeff(0).is_zero() {
            return Err(CoeffError::NotDivisible);
        }
        if self.order == 0 {
            return Err(CoeffError::SeriesTooShort {
                order: 0,
                pole_bound: 0,
                numdeg_bound: 0,
                needed: 1,
            });
        }
        let order = if self.is_exact() { EXACT_ORDER } else { self.order - 1 };
        Ok(Self::with_order(self.coeffs.iter().skip(1).cloned().collect(), order))
    }
    fn mul_t(&self) -> Self {
        let mut c = vec![BPoly::zero()];
        c.extend(self.coeffs.iter().cloned());
        Self::with_order(c, self.order.saturating_add(1))
    }
    fn over_one_minus_t(&self) -> Self {
        assert!(!self.is_exact() || self.is_zero(), "1/(1-t) of an exact value is not a polynomial");
        let mut c = self.coeffs();
        for j in 1..c.len() {
            c[j] = &c[j] + &c[j - 1];
        }
        Self::with_order(c, self.order)
    }
    fn mul_b(&self) -> Self {
        Self::with_order(self.coeffs.iter().map(|c| c.shift(1)).collect(), self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcoeff::FlowFraction;

    #[test]
    fn inverse_of_one_minus_t() {
        let s = TruncatedTSeries::new(vec![BPoly::one(), -&BPoly::one(), BPoly::zero(), BPoly::zero()]);
        let inv = s.try_inverse().unwrap();
        assert_eq!(inv, FlowFraction::geometric(1).expand(3));
    }

    #[test]
    fn precision_is_the_minimum() {
        let a = FlowFraction::geometric(1).expand(5);
        let b = FlowFraction::geometric(2).expand(3);
        assert_eq!(a.times(&b).order(), 3);
        assert_eq!(a.times(&b), FlowFraction::geometric(3).expand(3));
        assert!(a.agrees(&FlowFraction::geometric(1).expand(2)));
        let b_const = TruncatedTSeries::from_bpoly(&BPoly::b());
        assert_eq!(a.times(&b_const).order(), 5);
        assert!(a.div_t().is_err());
        assert_eq!(a.minus(&a.at_t0()).div_t().unwrap().order(), 4);
    }
}
