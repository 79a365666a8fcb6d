use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::exactcoeff::{rat, Coefficient, Rational, TCoefficient};
use crate::trees::RootedTree;

use super::basis::{basis, PreLieBasis};
use super::PreLieError;

/// Series `Σ s_T T / aut(T)` over rooted trees with at most `degree`
/// vertices. The stored value for `T` is `s_T`.
#[derive(Clone)]
pub struct PreLieSeries<R> {
    degree: usize,
    basis: Arc<PreLieBasis>,
    coeffs: Vec<R>,
}

impl<R: Coefficient> PreLieSeries<R> {
    pub fn zero(degree: usize) -> Self {
        let basis = basis(degree);
        let coeffs = vec![R::zero(); basis.len_up_to(degree)];
        PreLieSeries { degree, basis, coeffs }
    }

    /// The group unit: the single-vertex tree with coefficient 1.
    pub fn unit(degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = R::one();
        s
    }

    pub fn from_fn(degree: usize, f: impl Fn(&RootedTree) -> R + Sync) -> Self
    where
        R: Send,
    {
        let basis = basis(degree);
        let coeffs = basis.trees[..basis.len_up_to(degree)].par_iter().map(&f).collect();
        PreLieSeries { degree, basis, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &PreLieBasis {
        &self.basis
    }

    pub fn trees(&self) -> &[RootedTree] {
        &self.basis.trees[..self.coeffs.len()]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn get(&self, t: &RootedTree) -> Option<&R> {
        self.basis.id(t).and_then(|i| self.coeffs.get(i))
    }

    pub fn set(&mut self, t: &RootedTree, value: R) -> Result<(), PreLieError> {
        let i = self
            .basis
            .id(t)
            .filter(|&i| i < self.coeffs.len())
            .ok_or_else(|| PreLieError::OutOfRange(t.clone()))?;
        self.coeffs[i] = value;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RootedTree, &R)> {
        self.trees().iter().zip(&self.coeffs)
    }

    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> PreLieSeries<S> {
        PreLieSeries {
            degree: self.degree,
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Same coefficients, cut down to a smaller degree.
    pub fn truncate(&self, degree: usize) -> Self {
        let degree = degree.min(self.degree);
        PreLieSeries {
            degree,
            basis: self.basis.clone(),
            coeffs: self.coeffs[..self.basis.len_up_to(degree)].to_vec(),
        }
    }

    fn check(&self, other_degree: usize) -> Result<(), PreLieError> {
        if self.degree != other_degree {
            return Err(PreLieError::TruncationMismatch {
                left: self.degree,
                right: other_degree,
            });
        }
        Ok(())
    }

    fn zip(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Result<Self, PreLieError> {
        self.check(other.degree)?;
        Ok(PreLieSeries {
            degree: self.degree,
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, PreLieError> {
        self.zip(other, R::plus)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PreLieError> {
        self.zip(other, R::minus)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.times(c))
    }

    /// `(s ∘ t)_U = Σ s_{U/E} Π t_{pieces}` over edge subsets `E` of `U`.
    pub fn compose(&self, t: &Self) -> Result<Self, PreLieError> {
        self.check(t.degree)?;
        Ok(self.substitute(t, t))
    }

    /// As [`Self::compose`], with the piece containing the root taken from
    /// `root` and every other piece from `rest`.
    pub fn diamond(&self, root: &Self, rest: &Self) -> Result<Self, PreLieError> {
        self.check(root.degree)?;
        self.check(rest.degree)?;
        Ok(self.substitute(root, rest))
    }

    fn substitute(&self, root: &Self, rest: &Self) -> Self {
        let n = self.coeffs.len();
        let coeffs = (0..n)
            .into_par_iter()
            .map(|u| {
                let mut acc = R::zero();
                for d in &self.basis.decompositions[u] {
                    let s = &self.coeffs[d.quotient];
                    if s.is_zero() {
                        continue;
                    }
                    let mut term = s.times(&root.coeffs[d.root_part]);
                    for &p in &d.other_parts {
                        if term.is_zero() {
                            break;
                        }
                        term = term.times(&rest.coeffs[p]);
                    }
                    if d.multiplicity != 1 {
                        term = term.scale(&rat(d.multiplicity as i64));
                    }
                    acc.accumulate(&term);
                }
                acc
            })
            .collect();
        PreLieSeries {
            degree: self.degree,
            basis: self.basis.clone(),
            coeffs,
        }
    }

    /// Compositional inverse, solved one size at a time.
    pub fn inverse(&self) -> Result<Self, PreLieError> {
        let lead_inv = self.coeffs[0].try_inverse().ok_or(PreLieError::NotInvertible)?;
        let mut x = Self::zero(self.degree);
        x.coeffs[0] = lead_inv.clone();
        for size in 2..=self.degree {
            let ids: Vec<usize> = self.basis.ids_of_size(size).collect();
            let vals: Vec<R> = ids
                .par_iter()
                .map(|&u| {
                    let mut acc = R::zero();
                    for d in &self.basis.decompositions[u] {
                        // the term with a single piece is s_• x_U itself
                        if d.quotient == 0 {
                            continue;
                        }
                        let mut term = self.coeffs[d.quotient].times(&x.coeffs[d.root_part]);
                        for &p in &d.other_parts {
                            term = term.times(&x.coeffs[p]);
                        }
                        if d.multiplicity != 1 {
                            term = term.scale(&rat(d.multiplicity as i64));
                        }
                        acc.accumulate(&term);
                    }
                    acc.negate().times(&lead_inv)
                })
                .collect();
            for (u, v) in ids.into_iter().zip(vals) {
                x.coeffs[u] = v;
            }
        }
        Ok(x)
    }

    /// Multiply the size-`n` part by `(-1)^{n-1}`.
    pub fn suspension(&self) -> Self {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            if self.basis.trees[i].size().is_multiple_of(2) {
                *c = c.negate();
            }
        }
        out
    }

    /// First tree, in basis order, where the two series disagree.
    pub fn first_difference(&self, other: &Self) -> Option<RootedTree> {
        let n = self.coeffs.len().min(other.coeffs.len());
        (0..n)
            .find(|&i| !self.coeffs[i].agrees(&other.coeffs[i]))
            .map(|i| self.basis.trees[i].clone())
    }

    pub fn agrees(&self, other: &Self) -> bool {
        self.degree == other.degree && self.first_difference(other).is_none()
    }

    pub fn to_wire(&self) -> serde_json::Value {
        json!({
            "degree": self.degree,
            "coeffs": self.iter().map(|(t, v)| json!({"tree": t.code(), "value": v.to_wire()})).collect::<Vec<_>>(),
        })
    }
}

impl<R: TCoefficient> PreLieSeries<R> {
    pub fn at_t0(&self) -> Self {
        self.map(R::at_t0)
    }

    pub fn div_t(&self) -> Result<Self, PreLieError> {
        let coeffs = self
            .coeffs
            .iter()
            .zip(self.trees())
            .map(|(c, t)| c.div_t().map_err(|e| PreLieError::Coefficient(t.clone(), e)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PreLieSeries {
            degree: self.degree,
            basis: self.basis.clone(),
            coeffs,
        })
    }
}

impl<R: Coefficient> PartialEq for PreLieSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.coeffs == other.coeffs
    }
}

impl<R: Coefficient> fmt::Debug for PreLieSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (t, v) in self.iter() {
            if !v.is_zero() {
                m.entry(&t.code(), &format_args!("{v}"));
            }
        }
        m.finish()
    }
}

/// Embed rational coefficients into another ring.
pub fn lift_rational<R: Coefficient>(s: &PreLieSeries<Rational>) -> PreLieSeries<R> {
    s.map(R::from_rational)
}
