use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;

use crate::exactcoeff::{BPoly, Coefficient, FlowFraction, TCoefficient};
use crate::flows::flows_gf;
use crate::trees::{linear, Letter, Word};

use super::DendError;

/// Noncommutative series in the letters `+` and `-`, truncated at words of
/// length `max_len`.
#[derive(Clone, PartialEq)]
pub struct WordSeries<R> {
    max_len: usize,
    coeffs: BTreeMap<Word, R>,
}

impl<R: Coefficient> WordSeries<R> {
    pub fn zero(max_len: usize) -> Self {
        WordSeries {
            max_len,
            coeffs: BTreeMap::new(),
        }
    }

    /// The empty word `∅`.
    pub fn empty_word(max_len: usize) -> Self {
        Self::monomial(max_len, Word::empty(), R::one())
    }

    pub fn letter(max_len: usize, l: Letter) -> Self {
        Self::monomial(max_len, Word(vec![l]), R::one())
    }

    pub fn monomial(max_len: usize, w: Word, c: R) -> Self {
        let mut s = Self::zero(max_len);
        s.insert(w, c);
        s
    }

    fn insert(&mut self, w: Word, c: R) {
        if w.len() > self.max_len {
            return;
        }
        let e = self.coeffs.entry(w.clone()).or_insert_with(R::zero);
        e.accumulate(&c);
        if e.is_zero() {
            self.coeffs.remove(&w);
        }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn get(&self, w: &Word) -> R {
        self.coeffs.get(w).cloned().unwrap_or_else(R::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &R)> {
        self.coeffs.iter()
    }

    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> WordSeries<S> {
        let mut out = WordSeries::zero(self.max_len);
        for (w, c) in &self.coeffs {
            out.insert(w.clone(), f(c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.max_len = self.max_len.min(other.max_len);
        out.coeffs.retain(|w, _| w.len() <= out.max_len);
        for (w, c) in &other.coeffs {
            out.insert(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(R::negate)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.times(c))
    }

    /// Concatenation product.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.max_len.min(other.max_len));
        for (u, a) in &self.coeffs {
            for (v, b) in &other.coeffs {
                if u.len() + v.len() <= out.max_len {
                    out.insert(u.concat(v), a.times(b));
                }
            }
        }
        out
    }

    pub fn then_letter(&self, l: Letter) -> Self {
        self.concat(&Self::letter(self.max_len, l))
    }

    pub fn letter_then(&self, l: Letter) -> Self {
        Self::letter(self.max_len, l).concat(self)
    }

    /// The anti-automorphism sending `+` to `-(-)` and `-` to `-(+)`.
    pub fn bar(&self) -> Self {
        self.map_words(|w, c| {
            let c = if w.len() % 2 == 1 { c.negate() } else { c.clone() };
            (w.mirrored(), c)
        })
    }

    fn map_words(&self, f: impl Fn(&Word, &R) -> (Word, R)) -> Self {
        let mut out = Self::zero(self.max_len);
        for (w, c) in &self.coeffs {
            let (w, c) = f(w, c);
            out.insert(w, c);
        }
        out
    }

    /// First word (shortest, then lexicographic) where the series differ.
    pub fn first_difference(&self, other: &Self) -> Option<Word> {
        let len = self.max_len.min(other.max_len);
        let mut words: Vec<&Word> = self.coeffs.keys().chain(other.coeffs.keys()).filter(|w| w.len() <= len).collect();
        words.sort_by(|a, b| (a.len(), *a).cmp(&(b.len(), *b)));
        words.dedup();
        words.into_iter().find(|w| !self.get(w).agrees(&other.get(w))).cloned()
    }

    pub fn to_wire(&self) -> serde_json::Value {
        json!({
            "max_len": self.max_len,
            "coeffs": self.coeffs.iter().map(|(w, v)| json!({"word": w.to_string(), "value": v.to_wire()})).collect::<Vec<_>>(),
        })
    }
}

impl<R: TCoefficient> WordSeries<R> {
    pub fn at_t0(&self) -> Self {
        self.map(R::at_t0)
    }

    pub fn div_t(&self) -> Result<Self, DendError> {
        let mut out = Self::zero(self.max_len);
        for (w, c) in &self.coeffs {
            out.insert(w.clone(), c.div_t().map_err(|e| DendError::WordCoefficient(w.clone(), e))?);
        }
        Ok(out)
    }
}

impl<R: Coefficient> fmt::Debug for WordSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (w, v) in &self.coeffs {
            m.entry(&w.to_string(), &format_args!("{v}"));
        }
        m.finish()
    }
}

/// `ca_{k,t}`: flows on the linear tree with `k` vertices.
pub fn narayana_t(k: usize) -> FlowFraction {
    flows_gf(&linear(k).expect("k >= 1"))
}

/// `ca_k`, the Narayana polynomial.
pub fn narayana(k: usize) -> BPoly {
    narayana_t(k).eval_t0()
}

/// The word series of linear flows and the series built from them.
#[derive(Debug, Clone)]
pub struct WordFamily {
    pub max_len: usize,
    pub p_t: WordSeries<FlowFraction>,
    pub n_t: WordSeries<FlowFraction>,
    pub p: WordSeries<FlowFraction>,
    pub n: WordSeries<FlowFraction>,
    pub p_c: WordSeries<FlowFraction>,
    pub n_c: WordSeries<FlowFraction>,
    pub t: WordSeries<FlowFraction>,
    pub u_t: WordSeries<FlowFraction>,
    pub v_t: WordSeries<FlowFraction>,
}

fn b_times(s: &WordSeries<FlowFraction>) -> WordSeries<FlowFraction> {
    s.map(TCoefficient::mul_b)
}

impl WordFamily {
    pub fn build(max_len: usize) -> Self {
        let mut p_t = WordSeries::zero(max_len);
        let mut n_t = WordSeries::zero(max_len);
        for k in 1..=max_len {
            let c = narayana_t(k);
            p_t.insert(Word::repeat(Letter::Plus, k), c.clone());
            let c = if k % 2 == 1 { c.negate() } else { c };
            n_t.insert(Word::repeat(Letter::Minus, k), c);
        }
        let p = p_t.at_t0();
        let n = n_t.at_t0();
        let empty = WordSeries::empty_word(max_len);
        let e_bp = empty.add(&b_times(&p));
        let e_bn = empty.add(&b_times(&n));
        let p_c = e_bp.then_letter(Letter::Plus);
        let n_c = e_bn.letter_then(Letter::Minus).neg();
        let pn = b_times(&p.concat(&n));
        let mut t = empty.clone();
        for _ in 0..max_len / 2 {
            t = empty.add(&pn.concat(&t));
        }
        let u_t = e_bn.concat(&t).concat(&p_t);
        let v_t = n_t.concat(&t).concat(&e_bp);
        WordFamily {
            max_len,
            p_t,
            n_t,
            p,
            n,
            p_c,
            n_c,
            t,
            u_t,
            v_t,
        }
    }

    /// `N_v T P_u` with `v`, `u` each either `t` or `0`.
    pub fn ntp(&self, v_is_t: bool, u_is_t: bool) -> WordSeries<FlowFraction> {
        let n = if v_is_t { &self.n_t } else { &self.n };
        let p = if u_is_t { &self.p_t } else { &self.p };
        n.concat(&self.t).concat(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcoeff::rat;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn first_terms_of_u_and_v() {
        let f = WordFamily::build(3);
        let b = FlowFraction::from_bpoly(BPoly::b());
        assert_eq!(f.u_t.get(&w("+")), narayana_t(1));
        assert_eq!(f.u_t.get(&w("++")), narayana_t(2));
        assert_eq!(f.u_t.get(&w("-+")), narayana_t(1).times(&b).negate());
        assert_eq!(f.v_t.get(&w("-")), narayana_t(1).negate());
        assert_eq!(f.v_t.get(&w("--")), narayana_t(2));
        assert_eq!(f.v_t.get(&w("-+")), narayana_t(1).times(&b).negate());
    }

    #[test]
    fn t_is_bar_fixed() {
        let f = WordFamily::build(6);
        assert_eq!(f.t.bar(), f.t);
        assert_eq!(f.p_t.bar(), f.n_t);
        assert_eq!(f.u_t.bar(), f.v_t);
    }

    #[test]
    fn concat_truncates() {
        let x = WordSeries::<crate::exactcoeff::Rational>::letter(2, Letter::Plus);
        let xx = x.concat(&x).concat(&x);
        assert_eq!(xx.get(&w("+++")), rat(0));
        assert_eq!(x.concat(&x).get(&w("++")), rat(1));
    }
}
