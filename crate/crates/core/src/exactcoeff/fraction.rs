use std::fmt;

use num_traits::Zero;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::ring::TCoefficient;
use super::{format_rational, BPoly, CoeffError, Rational, TruncatedTSeries};

/// `P(b, t) / (1 - t)^pole` with `P` stored as a list of `b`-polynomials
/// indexed by the power of `t`.
///
/// Always normalized: no trailing zero `t`-coefficients, and the numerator
/// is not divisible by `1 - t` unless the pole is zero. Structural equality
/// is therefore equality of rational functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FlowFraction {
    num: Vec<BPoly>,
    pole: u32,
}

impl FlowFraction {
    pub fn new(num: Vec<BPoly>, pole: u32) -> Self {
        let mut f = FlowFraction { num, pole };
        f.normalize();
        f
    }

    pub fn zero() -> Self {
        FlowFraction { num: Vec::new(), pole: 0 }
    }

    pub fn one() -> Self {
        Self::from_bpoly(BPoly::one())
    }

    pub fn from_bpoly(p: BPoly) -> Self {
        Self::new(vec![p], 0)
    }

    /// `1 / (1 - t)^m`.
    pub fn geometric(m: u32) -> Self {
        Self::new(vec![BPoly::one()], m)
    }

    /// The monomial `t^k`.
    pub fn t_power(k: usize) -> Self {
        let mut num = vec![BPoly::zero(); k + 1];
        num[k] = BPoly::one();
        FlowFraction { num, pole: 0 }
    }

    /// `(1 - t)^k` as a polynomial.
    pub fn one_minus_t_pow(k: u32) -> Self {
        let num = FlowFraction::geometric(0).raise_pole_to(k);
        FlowFraction { num, pole: 0 }
    }

    pub fn numerator(&self) -> &[BPoly] {
        &self.num
    }

    pub fn pole(&self) -> u32 {
        self.pole
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Highest power of `t` in the numerator.
    pub fn numerator_t_degree(&self) -> Option<usize> {
        self.num.len().checked_sub(1)
    }

    /// Highest power of `b` anywhere in the numerator.
    pub fn b_degree(&self) -> Option<usize> {
        self.num.iter().filter_map(BPoly::degree).max()
    }

    fn normalize(&mut self) {
        while self.num.last().is_some_and(BPoly::is_zero) {
            self.num.pop();
        }
        if self.num.is_empty() {
            self.pole = 0;
            return;
        }
        while self.pole > 0 {
            let at_one = self.num.iter().fold(BPoly::zero(), |acc, c| &acc + c);
            if !at_one.is_zero() {
                break;
            }
            // P = (1 - t) Q with q_j = p_j + q_{j-1}
            let mut q = Vec::with_capacity(self.num.len() - 1);
            let mut acc = BPoly::zero();
            for c in &self.num[..self.num.len() - 1] {
                acc = &acc + c;
                q.push(acc.clone());
            }
            self.num = q;
            self.pole -= 1;
            while self.num.last().is_some_and(BPoly::is_zero) {
                self.num.pop();
            }
        }
    }

    /// Numerator multiplied by `(1 - t)^k`, pole left unchanged.
    fn raise_pole_to(&self, pole: u32) -> Vec<BPoly> {
        let mut num = self.num.clone();
        for _ in self.pole..pole {
            let mut next = vec![BPoly::zero(); num.len() + 1];
            for (j, c) in num.iter().enumerate() {
                next[j] = &next[j] + c;
                next[j + 1] = &next[j + 1] - c;
            }
            num = next;
        }
        num
    }

    fn combine(&self, other: &Self, sign: bool) -> Self {
        let pole = self.pole.max(other.pole);
        let a = self.raise_pole_to(pole);
        let b = other.raise_pole_to(pole);
        let n = a.len().max(b.len());
        let zero = BPoly::zero();
        let num = (0..n)
            .map(|j| {
                let x = a.get(j).unwrap_or(&zero);
                let y = b.get(j).unwrap_or(&zero);
                if sign {
                    x + y
                } else {
                    x - y
                }
            })
            .collect();
        Self::new(num, pole)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut num = vec![BPoly::zero(); self.num.len() + other.num.len() - 1];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.num.iter().enumerate() {
                num[i + j] = &num[i + j] + &(x * y);
            }
        }
        Self::new(num, self.pole + other.pole)
    }

    pub fn neg(&self) -> Self {
        FlowFraction {
            num: self.num.iter().map(|c| -c).collect(),
            pole: self.pole,
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        Self::new(self.num.iter().map(|p| p.scale(c)).collect(), self.pole)
    }

    pub fn scale_bpoly(&self, p: &BPoly) -> Self {
        Self::new(self.num.iter().map(|c| c * p).collect(), self.pole)
    }

    pub fn divide_by_t(&self) -> Result<Self, CoeffError> {
        match self.num.first() {
            None => Ok(Self::zero()),
            Some(c0) if !c0.is_zero() => Err(CoeffError::NotDivisible),
            Some(_) => Ok(Self::new(self.num[1..].to_vec(), self.pole)),
        }
    }

    pub fn eval_t0(&self) -> BPoly {
        self.num.first().cloned().unwrap_or_else(BPoly::zero)
    }

    /// `t`-adic expansion modulo `t^{order + 1}`.
    pub fn expand(&self, order: usize) -> TruncatedTSeries {
        let mut coeffs: Vec<BPoly> = (0..=order)
            .map(|j| self.num.get(j).cloned().unwrap_or_else(BPoly::zero))
            .collect();
        for _ in 0..self.pole {
            for j in 1..coeffs.len() {
                coeffs[j] = &coeffs[j] + &coeffs[j - 1];
            }
        }
        TruncatedTSeries::new(coeffs)
    }

    /// Recover the fraction with pole at most `pole_bound` and numerator
    /// `t`-degree at most `numdeg_bound` whose expansion is `s`. All
    /// coefficients beyond the numerator are used as guards.
    pub fn reconstruct(
        s: &TruncatedTSeries,
        pole_bound: u32,
        numdeg_bound: usize,
    ) -> Result<Self, CoeffError> {
        let needed = pole_bound as usize + numdeg_bound + 2;
        let order = s.order();
        if order < needed {
            return Err(CoeffError::SeriesTooShort {
                order,
                pole_bound,
                numdeg_bound,
                needed,
            });
        }
        let top = if s.is_exact() { needed.max(s.stored_len()) } else { order };
        let mut coeffs: Vec<BPoly> = (0..=top).map(|j| s.coeff(j)).collect();
        for _ in 0..pole_bound {
            for j in (1..coeffs.len()).rev() {
                coeffs[j] = &coeffs[j] - &coeffs[j - 1];
            }
        }
        if let Some(index) = (numdeg_bound + 1..coeffs.len()).find(|&j| !coeffs[j].is_zero()) {
            return Err(CoeffError::ReconstructionFailed {
                index,
                pole_bound,
                numdeg_bound,
            });
        }
        coeffs.truncate(numdeg_bound + 1);
        Ok(Self::new(coeffs, pole_bound))
    }

    /// Coefficient of `b^i t^j` in the numerator.
    pub fn numerator_coeff(&self, b_deg: usize, t_deg: usize) -> Rational {
        self.num.get(t_deg).map(|p| p.coeff(b_deg)).unwrap_or_else(Rational::zero)
    }

    /// Numerator as a dense `[b-degree][t-degree]` matrix of wire strings.
    pub fn numerator_matrix(&self) -> Vec<Vec<String>> {
        let bdeg = match self.b_degree() {
            Some(d) => d,
            None => return Vec::new(),
        };
        (0..=bdeg)
            .map(|i| {
                (0..self.num.len())
                    .map(|j| format_rational(&self.numerator_coeff(i, j)))
                    .collect()
            })
            .collect()
    }

    pub fn from_numerator_matrix(matrix: &[Vec<Rational>], pole: u32) -> Self {
        let tlen = matrix.iter().map(Vec::len).max().unwrap_or(0);
        let num = (0..tlen)
            .map(|j| {
                BPoly::new(
                    matrix
                        .iter()
                        .map(|row| row.get(j).cloned().unwrap_or_else(Rational::zero))
                        .collect(),
                )
            })
            .collect();
        Self::new(num, pole)
    }
}

impl Default for FlowFraction {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for FlowFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FlowFraction({self})")
    }
}

impl fmt::Display for FlowFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let t = match j {
                    0 => String::new(),
                    1 => "t".to_string(),
                    _ => format!("t^{j}"),
                };
                if j == 0 {
                    format!("({c})")
                } else {
                    format!("({c}){t}")
                }
            })
            .collect();
        let body = terms.join(" + ");
        match self.pole {
            0 => write!(f, "{body}"),
            1 => write!(f, "[{body}]/(1-t)"),
            m => write!(f, "[{body}]/(1-t)^{m}"),
        }
    }
}

impl Serialize for FlowFraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("FlowFraction", 2)?;
        st.serialize_field("num", &self.numerator_matrix())?;
        st.serialize_field("pole", &self.pole)?;
        st.end()
    }
}

impl super::ring::Coefficient for FlowFraction {
    fn to_wire(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
    fn zero() -> Self {
        FlowFraction::zero()
    }
    fn one() -> Self {
        FlowFraction::one()
    }
    fn is_zero(&self) -> bool {
        FlowFraction::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn scale(&self, c: &Rational) -> Self {
        self.scale_rational(c)
    }
    fn try_inverse(&self) -> Option<Self> {
        // units are c (1 - t)^k with c a nonzero rational and k in Z
        let c = self.num.first()?.try_inverse()?;
        let j = self.num.len() as u32 - 1;
        if self.pole > 0 && j > 0 {
            return None;
        }
        let lead = self.num[0].clone();
        let power = Self::one_minus_t_pow(j);
        if self.pole == 0 && *self != power.scale_bpoly(&lead) {
            return None;
        }
        let inv = if self.pole > 0 {
            Self::one_minus_t_pow(self.pole)
        } else {
            FlowFraction::geometric(j)
        };
        Some(inv.scale_bpoly(&c))
    }
    fn from_rational(c: &Rational) -> Self {
        FlowFraction::from_bpoly(BPoly::constant(c.clone()))
    }
}

impl TCoefficient for FlowFraction {
    fn from_bpoly(p: &BPoly) -> Self {
        FlowFraction::from_bpoly(p.clone())
    }
    fn at_t0(&self) -> Self {
        FlowFraction::from_bpoly(self.eval_t0())
    }
    fn div_t(&self) -> Result<Self, CoeffError> {
        self.divide_by_t()
    }
    fn mul_t(&self) -> Self {
        self.mul(&FlowFraction::t_power(1))
    }
    fn over_one_minus_t(&self) -> Self {
        self.mul(&FlowFraction::geometric(1))
    }
    fn mul_b(&self) -> Self {
        self.scale_bpoly(&BPoly::b())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcoeff::Coefficient;

    fn ca2t() -> FlowFraction {
        FlowFraction::new(vec![BPoly::from_ints(&[1, 1]), BPoly::from_ints(&[0, -1])], 2)
    }

    #[test]
    fn like_terms_and_cancellation() {
        let g = FlowFraction::geometric(1);
        assert_eq!(g.add(&g), FlowFraction::new(vec![BPoly::from_ints(&[2])], 1));
        let x = ca2t();
        let z = x.sub(&x);
        assert!(z.is_zero());
        assert_eq!(z.pole(), 0);
        assert_eq!(g.mul(&g), FlowFraction::geometric(2));
    }

    #[test]
    fn normalization_cancels_one_minus_t() {
        let f = FlowFraction::new(vec![BPoly::one(), -&BPoly::one()], 3);
        assert_eq!(f, FlowFraction::geometric(2));
    }

    #[test]
    fn divide_by_t() {
        let tb = FlowFraction::new(vec![BPoly::zero(), BPoly::b()], 1);
        assert_eq!(
            tb.divide_by_t().unwrap(),
            FlowFraction::new(vec![BPoly::b()], 1)
        );
        let x = ca2t().sub(&FlowFraction::from_bpoly(BPoly::from_ints(&[1, 1])));
        assert_eq!(x.divide_by_t().unwrap().eval_t0(), BPoly::from_ints(&[2, 1]));
        let bad = FlowFraction::new(vec![BPoly::from_ints(&[1, 1])], 1);
        assert_eq!(bad.divide_by_t(), Err(CoeffError::NotDivisible));
    }

    #[test]
    fn expansion() {
        let g = FlowFraction::geometric(1).expand(2);
        assert_eq!(g.coeffs(), vec![BPoly::one(), BPoly::one(), BPoly::one()]);
        let c = ca2t().expand(1);
        assert_eq!(c.coeffs(), vec![BPoly::from_ints(&[1, 1]), BPoly::from_ints(&[2, 1])]);
        assert!(FlowFraction::zero().expand(3).coeffs().iter().all(BPoly::is_zero));
    }

    #[test]
    fn reconstruction() {
        let g = FlowFraction::geometric(1);
        assert_eq!(FlowFraction::reconstruct(&g.expand(4), 1, 0).unwrap(), g);
        let c = FlowFraction::from_bpoly(BPoly::from_ints(&[1, 1]));
        assert_eq!(FlowFraction::reconstruct(&c.expand(3), 0, 0).unwrap(), c);
        assert!(matches!(
            FlowFraction::reconstruct(&FlowFraction::geometric(3).expand(6), 1, 1),
            Err(CoeffError::ReconstructionFailed { .. })
        ));
        assert!(matches!(
            FlowFraction::reconstruct(&g.expand(2), 1, 0),
            Err(CoeffError::SeriesTooShort { .. })
        ));
    }

    #[test]
    fn units() {
        let g = FlowFraction::geometric(2);
        let inv = g.try_inverse().unwrap();
        assert_eq!(g.mul(&inv), FlowFraction::one());
        let one_minus_t = FlowFraction::new(vec![BPoly::one(), -&BPoly::one()], 0);
        assert_eq!(one_minus_t.try_inverse().unwrap(), FlowFraction::geometric(1));
        assert!(ca2t().try_inverse().is_none());
    }
}
