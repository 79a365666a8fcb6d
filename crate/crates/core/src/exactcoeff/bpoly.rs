use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use super::{format_rational, rat, Rational};

/// Polynomial in `b` with rational coefficients, lowest degree first.
/// Trailing zeros are always stripped, so the zero polynomial has no
/// coefficients and `degree() == None`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BPoly {
    coeffs: Vec<Rational>,
}

impl BPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        BPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The variable `b`.
    pub fn b() -> Self {
        Self::monomial(rat(1), 1)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplication by `b^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        BPoly { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &BPoly) -> (BPoly, BPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (BPoly::new(quot), BPoly::new(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &BPoly) -> BPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(l) => a.scale(&l.recip()),
            None => a,
        }
    }

    /// Coefficient of `b^k` equals coefficient of `b^{n-k}` for all `k`.
    pub fn is_palindromic_in(&self, n: usize) -> bool {
        if self.degree().is_some_and(|d| d > n) {
            return false;
        }
        (0..=n).all(|k| self.coeff(k) == self.coeff(n - k))
    }

    /// Inverse when `self` is a nonzero constant.
    pub fn try_inverse(&self) -> Option<Self> {
        match self.degree() {
            Some(0) => Some(BPoly::constant(self.coeffs[0].recip())),
            _ => None,
        }
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl fmt::Debug for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BPoly({self})")
    }
}

impl fmt::Display for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "b")
    }
}

pub(crate) fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[Rational], var: &str) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let body = if abs.denom().is_one() {
            format_rational(&abs)
        } else {
            format!("({})", format_rational(&abs))
        };
        match k {
            0 => write!(f, "{body}")?,
            _ => {
                if !abs.is_one() {
                    write!(f, "{body}")?;
                }
                write!(f, "{var}")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl Serialize for BPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&format_rational(c))?;
        }
        seq.end()
    }
}

impl Add for &BPoly {
    type Output = BPoly;
    fn add(self, rhs: &BPoly) -> BPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &BPoly {
    type Output = BPoly;
    fn sub(self, rhs: &BPoly) -> BPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &BPoly {
    type Output = BPoly;
    fn mul(self, rhs: &BPoly) -> BPoly {
        if self.is_zero() || rhs.is_zero() {
            return BPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, c) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * c;
            }
        }
        BPoly::new(out)
    }
}

impl Neg for &BPoly {
    type Output = BPoly;
    fn neg(self) -> BPoly {
        BPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl super::ring::Coefficient for BPoly {
    fn to_wire(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
    fn zero() -> Self {
        BPoly::zero()
    }
    fn one() -> Self {
        BPoly::one()
    }
    fn is_zero(&self) -> bool {
        BPoly::is_zero(self)
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
        BPoly::scale(self, c)
    }
    fn try_inverse(&self) -> Option<Self> {
        BPoly::try_inverse(self)
    }
    fn from_rational(c: &Rational) -> Self {
        BPoly::constant(c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(BPoly::zero().degree(), None);
        assert_eq!(BPoly::from_ints(&[0, 0]).degree(), None);
        assert_eq!(BPoly::from_ints(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn division_and_gcd() {
        let p = BPoly::from_ints(&[0, 2, 2]); // 2b(1+b)
        let q = BPoly::from_ints(&[1, 1]);
        let (quot, rem) = p.div_rem(&q);
        assert_eq!(quot, BPoly::from_ints(&[0, 2]));
        assert!(rem.is_zero());
        assert_eq!(p.gcd(&BPoly::from_ints(&[2, 2])), q);
    }

    #[test]
    fn display() {
        assert_eq!(BPoly::from_ints(&[1, 5, 3]).to_string(), "1 + 5b + 3b^2");
        assert_eq!(BPoly::from_ints(&[0, -1, 1]).to_string(), "-b + b^2");
        assert_eq!(BPoly::zero().to_string(), "0");
    }

    #[test]
    fn palindromes() {
        assert!(BPoly::from_ints(&[1, 3, 1]).is_palindromic_in(2));
        assert!(BPoly::from_ints(&[0, 2, 2, 0]).is_palindromic_in(3));
        assert!(!BPoly::from_ints(&[0, 2, 2]).is_palindromic_in(2));
    }
}
