use std::collections::BTreeMap;

use crate::dend::DendSeries;
use crate::exactcoeff::Coefficient;
use crate::trees::{Letter, Word};

use super::internal::{descent_mask, mask_word, ribbon_table};
use super::SymError;

/// Homogeneous element of degree `n` in the ribbon basis. Keys are words
/// of length `n - 1`; `-` means "cut here".
#[derive(Debug, Clone, PartialEq)]
pub struct RibbonElement<R> {
    degree: usize,
    coeffs: BTreeMap<Word, R>,
}

impl<R: Coefficient> RibbonElement<R> {
    pub fn zero(degree: usize) -> Self {
        assert!(degree >= 1, "ribbon degree starts at 1");
        RibbonElement { degree, coeffs: BTreeMap::new() }
    }

    pub fn ribbon(w: Word, c: R) -> Self {
        let mut out = Self::zero(w.len() + 1);
        out.set(w, c).expect("length matches");
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, w: &Word) -> R {
        self.coeffs.get(w).cloned().unwrap_or_else(R::zero)
    }

    pub fn set(&mut self, w: Word, c: R) -> Result<(), SymError> {
        if w.len() + 1 != self.degree {
            return Err(SymError::WrongWordLength { word: w, degree: self.degree });
        }
        if c.is_zero() {
            self.coeffs.remove(&w);
        } else {
            self.coeffs.insert(w, c);
        }
        Ok(())
    }

    /// Nonzero terms in word order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &R)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self, SymError> {
        self.same_degree(other)?;
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            let v = out.get(w).plus(c);
            out.set(w.clone(), v)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.degree);
        for (w, v) in &self.coeffs {
            out.set(w.clone(), v.times(c)).expect("same length");
        }
        out
    }

    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> RibbonElement<S> {
        let mut out = RibbonElement::zero(self.degree);
        for (w, v) in &self.coeffs {
            out.set(w.clone(), f(v)).expect("same length");
        }
        out
    }

    /// Coefficient of `(+)^{n-1}`, the ribbon of the identity permutation.
    pub fn identity_coefficient(&self) -> R {
        self.get(&Word::repeat(Letter::Plus, self.degree - 1))
    }

    /// The internal product, as in the descent algebra of the symmetric
    /// group.
    pub fn internal_product(&self, other: &Self) -> Result<Self, SymError> {
        self.same_degree(other)?;
        let n = self.degree;
        let table = ribbon_table(n);
        let mut dense = vec![R::zero(); table.size];
        for (wa, ca) in &self.coeffs {
            let a = descent_mask(wa) as usize;
            for (wb, cb) in &other.coeffs {
                let b = descent_mask(wb) as usize;
                let prod = ca.times(cb);
                for &(c, k) in &table.entries[a * table.size + b] {
                    dense[c as usize].accumulate(&prod.scale(&crate::exactcoeff::rat(k)));
                }
            }
        }
        let mut out = Self::zero(n);
        for (c, v) in dense.into_iter().enumerate() {
            out.set(mask_word(c as u32, n - 1), v)?;
        }
        Ok(out)
    }

    /// First word, in word order, where the two elements differ.
    pub fn first_difference(&self, other: &Self) -> Option<Word> {
        self.coeffs
            .keys()
            .chain(other.coeffs.keys())
            .filter(|w| !self.get(w).agrees(&other.get(w)))
            .min()
            .cloned()
    }

    /// The sum over each word of all planar binary trees with that canopy.
    pub fn embed(&self, degree: usize) -> DendSeries<R> {
        DendSeries::from_fn(degree, |t| {
            if t.degree() != self.degree {
                return R::zero();
            }
            t.canopy().map(|w| self.get(&w)).unwrap_or_else(|_| R::zero())
        })
    }

    /// `(degree, word, coefficient)` rows for tabular output.
    pub fn rows(&self) -> Vec<(usize, String, String)> {
        self.coeffs.iter().map(|(w, c)| (self.degree, w.to_string(), c.to_string())).collect()
    }

    pub fn to_wire(&self) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree,
            "coeffs": self.coeffs.iter().map(|(w, c)| serde_json::json!({"word": w.to_string(), "value": c.to_wire()})).collect::<Vec<_>>(),
        })
    }

    fn same_degree(&self, other: &Self) -> Result<(), SymError> {
        if self.degree != other.degree {
            return Err(SymError::DegreeMismatch { left: self.degree, right: other.degree });
        }
        Ok(())
    }
}

/// The external product: `ε * δ = ε+δ + ε-δ`, extended bilinearly.
pub fn ribbon_product<R: Coefficient>(x: &RibbonElement<R>, y: &RibbonElement<R>) -> RibbonElement<R> {
    let mut out = RibbonElement::<R>::zero(x.degree + y.degree);
    for (e, a) in &x.coeffs {
        for (d, b) in &y.coeffs {
            let c = a.times(b);
            for l in [Letter::Plus, Letter::Minus] {
                let mut w = e.clone();
                w.push(l);
                let w = w.concat(d);
                let v = out.get(&w).plus(&c);
                out.set(w, v).expect("lengths add up");
            }
        }
    }
    out
}
