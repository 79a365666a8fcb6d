use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::exactcoeff::Coefficient;

use super::internal::{descent_mask, mask_word};
use super::{RibbonElement, SymError};

/// Largest degree accepted by the group ring oracle.
pub const GROUP_RING_LIMIT: usize = 7;

/// A permutation of `{1..n}` in one-line notation, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(images: Vec<u8>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i as usize >= images.len() || std::mem::replace(&mut seen[i as usize], true) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(self · other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Permutation(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation(inv)
    }

    /// Bit `i` is set when `σ(i+1) > σ(i+2)` (1-based positions).
    pub fn descent_mask(&self) -> u32 {
        self.0.windows(2).enumerate().filter(|(_, w)| w[0] > w[1]).fold(0, |m, (i, _)| m | (1 << i))
    }

    /// All permutations in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Permutation(cur.clone()));
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                return out;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

/// Element of `Q[S_n]` (or of `R[S_n]` for another coefficient ring).
#[derive(Debug, Clone, PartialEq)]
pub struct GroupRingElement<R> {
    degree: usize,
    coeffs: BTreeMap<Permutation, R>,
}

impl<R: Coefficient> GroupRingElement<R> {
    pub fn zero(degree: usize) -> Self {
        GroupRingElement { degree, coeffs: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, p: &Permutation) -> R {
        self.coeffs.get(p).cloned().unwrap_or_else(R::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &R)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    fn insert(&mut self, p: Permutation, c: R) {
        if !c.is_zero() {
            self.coeffs.insert(p, c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            let v = out.get(p).plus(c);
            out.coeffs.remove(p);
            out.insert(p.clone(), v);
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.degree);
        for (p, v) in &self.coeffs {
            out.insert(p.clone(), v.times(c));
        }
        out
    }

    pub fn first_difference(&self, other: &Self) -> Option<Permutation> {
        self.coeffs
            .keys()
            .chain(other.coeffs.keys())
            .filter(|p| !self.get(p).agrees(&other.get(p)))
            .min()
            .cloned()
    }

    /// Reads the element back as a ribbon element when it is constant on
    /// descent classes.
    pub fn to_ribbon(&self) -> Option<RibbonElement<R>> {
        let n = self.degree;
        let mut classes: HashMap<u32, R> = HashMap::new();
        for p in Permutation::all(n) {
            let v = self.get(&p);
            match classes.get(&p.descent_mask()) {
                Some(c) if !c.agrees(&v) => return None,
                Some(_) => {}
                None => {
                    classes.insert(p.descent_mask(), v);
                }
            }
        }
        let mut out = RibbonElement::zero(n);
        for (m, c) in classes {
            out.set(mask_word(m, n - 1), c).expect("length n - 1");
        }
        Some(out)
    }
}

/// Sends each ribbon word to the sum of the permutations whose descent set
/// is the set of `-` positions.
pub fn groupring_oracle<R: Coefficient>(x: &RibbonElement<R>) -> Result<GroupRingElement<R>, SymError> {
    let n = x.degree();
    if n > GROUP_RING_LIMIT {
        return Err(SymError::DegreeTooLarge { degree: n, limit: GROUP_RING_LIMIT });
    }
    let by_mask: HashMap<u32, R> = x.iter().map(|(w, c)| (descent_mask(w), c.clone())).collect();
    let mut out = GroupRingElement::zero(n);
    for p in Permutation::all(n) {
        if let Some(c) = by_mask.get(&p.descent_mask()) {
            out.insert(p, c.clone());
        }
    }
    Ok(out)
}

/// Convolution in the group ring, computed output by output.
pub fn groupring_multiply<R: Coefficient>(
    a: &GroupRingElement<R>,
    b: &GroupRingElement<R>,
) -> Result<GroupRingElement<R>, SymError> {
    if a.degree != b.degree {
        return Err(SymError::DegreeMismatch { left: a.degree, right: b.degree });
    }
    let n = a.degree;
    if n > GROUP_RING_LIMIT {
        return Err(SymError::DegreeTooLarge { degree: n, limit: GROUP_RING_LIMIT });
    }
    let left: Vec<(Permutation, &R)> = a.coeffs.iter().map(|(p, c)| (p.inverse(), c)).collect();
    let values: Vec<(Permutation, R)> = Permutation::all(n)
        .into_par_iter()
        .map(|pi| {
            let mut acc = R::zero();
            for (sigma_inv, ca) in &left {
                if let Some(cb) = b.coeffs.get(&sigma_inv.compose(&pi)) {
                    acc.accumulate(&ca.times(cb));
                }
            }
            (pi, acc)
        })
        .collect();
    let mut out = GroupRingElement::zero(n);
    for (p, c) in values {
        out.insert(p, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcoeff::{rat, Rational};
    use crate::trees::{Letter, Word};

    #[test]
    fn identity_word_is_the_identity_permutation() {
        for n in 1..=5 {
            let x = RibbonElement::ribbon(Word::repeat(Letter::Plus, n - 1), rat(1));
            let g = groupring_oracle(&x).unwrap();
            assert_eq!(g.support_len(), 1);
            assert_eq!(g.get(&Permutation::identity(n)), rat(1));
        }
    }

    #[test]
    fn single_descent_in_degree_two_is_the_transposition() {
        let g = groupring_oracle(&RibbonElement::ribbon("-".parse().unwrap(), rat(1))).unwrap();
        assert_eq!(g.iter().map(|(p, _)| p.clone()).collect::<Vec<_>>(), vec![Permutation::new(vec![1, 0]).unwrap()]);
    }

    #[test]
    fn descent_classes_partition_the_group() {
        for n in 1..=6 {
            let total: usize = Word::all(n - 1)
                .into_iter()
                .map(|w| groupring_oracle(&RibbonElement::ribbon(w, rat(1))).unwrap().support_len())
                .sum();
            assert_eq!(total, (1..=n).product::<usize>());
        }
    }

    #[test]
    fn composition_convention() {
        let s = Permutation::new(vec![1, 2, 0]).unwrap();
        let t = Permutation::new(vec![1, 0, 2]).unwrap();
        assert_eq!(s.compose(&t), Permutation::new(vec![2, 1, 0]).unwrap());
        assert_eq!(s.compose(&s.inverse()), Permutation::identity(3));
    }

    #[test]
    fn too_large() {
        let x = RibbonElement::<Rational>::zero(8);
        assert!(matches!(groupring_oracle(&x), Err(SymError::DegreeTooLarge { .. })));
    }
}
