use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::exactcoeff::{rat, Coefficient, Rational, TCoefficient};
use crate::trees::PBTree;

use super::algebra::{dend_basis, tree_prec, tree_star, tree_succ, DendBasis};
use super::DendError;

/// Series over planar binary trees with at most `degree` internal vertices,
/// including the unit tree in degree 0.
#[derive(Clone)]
pub struct DendSeries<R> {
    degree: usize,
    basis: Arc<DendBasis>,
    coeffs: Vec<R>,
}

type TreeProduct = fn(PBTree, PBTree) -> Result<Arc<Vec<PBTree>>, DendError>;

impl<R: Coefficient> DendSeries<R> {
    pub fn zero(degree: usize) -> Self {
        let basis = dend_basis(degree);
        let coeffs = vec![R::zero(); basis.len_up_to(degree)];
        DendSeries { degree, basis, coeffs }
    }

    /// The unit tree `1`.
    pub fn one(degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = R::one();
        s
    }

    /// The tree with one internal vertex, the unit of composition.
    pub fn single(degree: usize) -> Self {
        Self::monomial(degree, PBTree::single(), R::one())
    }

    pub fn monomial(degree: usize, t: PBTree, c: R) -> Self {
        let mut s = Self::zero(degree);
        if t.degree() <= degree {
            s.set(&t, c).expect("within degree");
        }
        s
    }

    pub fn from_fn(degree: usize, f: impl Fn(&PBTree) -> R + Sync) -> Self {
        let basis = dend_basis(degree);
        let coeffs = basis.trees[..basis.len_up_to(degree)].par_iter().map(&f).collect();
        DendSeries { degree, basis, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn trees(&self) -> &[PBTree] {
        &self.basis.trees[..self.coeffs.len()]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn get(&self, t: &PBTree) -> Option<&R> {
        self.basis.id(t).and_then(|i| self.coeffs.get(i))
    }

    pub fn unit_coeff(&self) -> &R {
        &self.coeffs[0]
    }

    pub fn set(&mut self, t: &PBTree, value: R) -> Result<(), DendError> {
        let i = self
            .basis
            .id(t)
            .filter(|&i| i < self.coeffs.len())
            .ok_or(DendError::OutOfRange(*t))?;
        self.coeffs[i] = value;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PBTree, &R)> {
        self.trees().iter().zip(&self.coeffs)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&PBTree, &R)> {
        self.iter().filter(|(_, c)| !c.is_zero())
    }

    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> DendSeries<S> {
        DendSeries {
            degree: self.degree,
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn map_trees(&self, f: impl Fn(&PBTree, &R) -> R) -> Self {
        DendSeries {
            degree: self.degree,
            basis: self.basis.clone(),
            coeffs: self.iter().map(|(t, c)| f(t, c)).collect(),
        }
    }

    pub fn truncate(&self, degree: usize) -> Self {
        let degree = degree.min(self.degree);
        DendSeries {
            degree,
            basis: self.basis.clone(),
            coeffs: self.coeffs[..self.basis.len_up_to(degree)].to_vec(),
        }
    }

    /// The homogeneous part of degree `n`.
    pub fn component(&self, n: usize) -> Self {
        self.map_trees(|t, c| if t.degree() == n { c.clone() } else { R::zero() })
    }

    fn check(&self, other: usize) -> Result<(), DendError> {
        if self.degree != other {
            return Err(DendError::TruncationMismatch {
                left: self.degree,
                right: other,
            });
        }
        Ok(())
    }

    fn zip(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Result<Self, DendError> {
        self.check(other.degree)?;
        Ok(DendSeries {
            degree: self.degree,
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, DendError> {
        self.zip(other, R::plus)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, DendError> {
        self.zip(other, R::minus)
    }

    pub fn neg(&self) -> Self {
        self.map(R::negate)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.times(c))
    }

    /// `1 + self`.
    pub fn one_plus(&self) -> Self {
        let mut s = self.clone();
        s.coeffs[0] = s.coeffs[0].plus(&R::one());
        s
    }

    fn product(&self, other: &Self, op: TreeProduct) -> Result<Self, DendError> {
        self.check(other.degree)?;
        let mut out = Self::zero(self.degree);
        for (a, x) in self.nonzero() {
            for (b, y) in other.nonzero() {
                if a.degree() + b.degree() > self.degree {
                    continue;
                }
                let xy = x.times(y);
                for c in op(*a, *b)?.iter() {
                    let i = self.basis.id(c).expect("product within basis");
                    out.coeffs[i].accumulate(&xy);
                }
            }
        }
        Ok(out)
    }

    pub fn prec(&self, other: &Self) -> Result<Self, DendError> {
        self.product(other, tree_prec)
    }

    pub fn succ(&self, other: &Self) -> Result<Self, DendError> {
        self.product(other, tree_succ)
    }

    pub fn star(&self, other: &Self) -> Result<Self, DendError> {
        self.product(other, tree_star)
    }

    /// `x ∨_y z = x ≻ y ≺ z`.
    pub fn vee_over(&self, y: &Self, z: &Self) -> Result<Self, DendError> {
        self.succ(y)?.prec(z)
    }

    /// `x ∨ z`: both sides glued on a new root.
    pub fn vee(&self, z: &Self) -> Result<Self, DendError> {
        self.check(z.degree)?;
        let mut out = Self::zero(self.degree);
        for (a, x) in self.nonzero() {
            for (c, y) in z.nonzero() {
                if a.degree() + c.degree() < self.degree {
                    out.set(&PBTree::join(*a, *c), x.times(y))?;
                }
            }
        }
        Ok(out)
    }

    /// `γ(T; u)` for every tree, using `root` at the root vertex of `T`
    /// and `rest` at all other vertices.
    fn substitute(&self, root: &Self, rest: &Self) -> Result<Self, DendError> {
        self.check(root.degree)?;
        self.check(rest.degree)?;
        if !root.coeffs[0].is_zero() || !rest.coeffs[0].is_zero() {
            return Err(DendError::UnitUndefined("substituted series has a unit term"));
        }
        let n = self.coeffs.len();
        // images of every tree with `rest` everywhere, in degree order
        let mut images: Vec<Option<Self>> = vec![None; n];
        images[0] = Some(Self::one(self.degree));
        for d in 1..=self.degree {
            let ids: Vec<usize> = self.basis.ids_of_degree(d).collect();
            let computed: Vec<Result<Self, DendError>> = ids
                .par_iter()
                .map(|&i| {
                    let (l, r) = self.basis.trees[i].split().expect("not the unit");
                    let gl = images[self.basis.id(&l).unwrap()].as_ref().unwrap();
                    let gr = images[self.basis.id(&r).unwrap()].as_ref().unwrap();
                    gl.vee_over(rest, gr)
                })
                .collect();
            for (i, g) in ids.into_iter().zip(computed) {
                images[i] = Some(g?);
            }
        }
        let same = std::ptr::eq(root, rest) || root == rest;
        let mut out = Self::zero(self.degree);
        out.coeffs[0] = self.coeffs[0].clone();
        for (i, (t, s)) in self.iter().enumerate().skip(1) {
            if s.is_zero() {
                continue;
            }
            let img = if same {
                images[i].clone().unwrap()
            } else {
                let (l, r) = t.split().unwrap();
                let gl = images[self.basis.id(&l).unwrap()].as_ref().unwrap();
                let gr = images[self.basis.id(&r).unwrap()].as_ref().unwrap();
                gl.vee_over(root, gr)?
            };
            out = out.add(&img.scale(s))?;
        }
        Ok(out)
    }

    /// Group composition `s ∘ t`.
    pub fn compose(&self, t: &Self) -> Result<Self, DendError> {
        self.substitute(t, t)
    }

    /// `s ⋄ (t, u)`: `t` at the root vertex, `u` elsewhere.
    pub fn diamond(&self, root: &Self, rest: &Self) -> Result<Self, DendError> {
        self.substitute(root, rest)
    }

    /// Compositional inverse; `self` must have no unit term and an
    /// invertible coefficient on the single-vertex tree.
    pub fn inverse(&self) -> Result<Self, DendError> {
        if !self.coeffs[0].is_zero() {
            return Err(DendError::UnitUndefined("series has a unit term"));
        }
        let lead = self.coeffs[1].try_inverse().ok_or(DendError::NotInvertible)?;
        let single = Self::single(self.degree);
        let higher = self.map_trees(|t, c| if t.degree() >= 2 { c.clone() } else { R::zero() });
        let mut x = single.scale(&lead);
        for _ in 1..self.degree {
            x = single.sub(&higher.compose(&x)?)?.scale(&lead);
        }
        Ok(x)
    }

    /// Sign `(-1)^{n-1}` in degree `n ≥ 1`; the unit term is kept.
    pub fn suspension(&self) -> Self {
        self.map_trees(|t, c| if t.degree() % 2 == 0 && t.degree() > 0 { c.negate() } else { c.clone() })
    }

    /// Left-right reversal of every tree.
    pub fn reversal(&self) -> Self {
        let mut out = Self::zero(self.degree);
        for (t, c) in self.iter() {
            out.set(&t.reversal(), c.clone()).expect("same degree");
        }
        out
    }

    /// Suspension composed with reversal.
    pub fn bar(&self) -> Self {
        self.reversal().suspension()
    }

    pub fn first_difference(&self, other: &Self) -> Option<PBTree> {
        let n = self.coeffs.len().min(other.coeffs.len());
        (0..n)
            .find(|&i| !self.coeffs[i].agrees(&other.coeffs[i]))
            .map(|i| self.basis.trees[i])
    }

    pub fn agrees(&self, other: &Self) -> bool {
        self.degree == other.degree && self.first_difference(other).is_none()
    }

    pub fn to_wire(&self) -> serde_json::Value {
        json!({
            "degree": self.degree,
            "coeffs": self.iter().map(|(t, v)| json!({"pbt": t.to_string(), "value": v.to_wire()})).collect::<Vec<_>>(),
        })
    }
}

impl<R: TCoefficient> DendSeries<R> {
    pub fn at_t0(&self) -> Self {
        self.map(R::at_t0)
    }

    pub fn div_t(&self) -> Result<Self, DendError> {
        let coeffs = self
            .iter()
            .map(|(t, c)| c.div_t().map_err(|e| DendError::Coefficient(*t, e)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DendSeries {
            degree: self.degree,
            basis: self.basis.clone(),
            coeffs,
        })
    }
}

impl<R: Coefficient> PartialEq for DendSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.coeffs == other.coeffs
    }
}

impl<R: Coefficient> fmt::Debug for DendSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (t, v) in self.nonzero() {
            m.entry(&t.to_string(), &format_args!("{v}"));
        }
        m.finish()
    }
}

pub fn lift_rational_dend<R: Coefficient>(s: &DendSeries<Rational>) -> DendSeries<R> {
    s.map(R::from_rational)
}

/// `Σ n L_n` with `L_n` the left comb of degree `n`.
pub fn weighted_left_combs(degree: usize) -> DendSeries<Rational> {
    let mut s = DendSeries::zero(degree);
    for n in 1..=degree {
        s.set(&PBTree::left_comb(n), rat(n as i64)).unwrap();
    }
    s
}
