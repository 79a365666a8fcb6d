use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use dashmap::DashMap;

use crate::trees::{enumerate_pbtrees, PBTree};

use super::DendError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Op {
    Prec,
    Succ,
    Star,
}

type ProductMemo = DashMap<(PBTree, PBTree, Op), Arc<Vec<PBTree>>>;

fn memo() -> &'static ProductMemo {
    static MEMO: OnceLock<ProductMemo> = OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

fn cached(a: PBTree, b: PBTree, op: Op, f: impl FnOnce() -> Result<Vec<PBTree>, DendError>) -> Result<Arc<Vec<PBTree>>, DendError> {
    if let Some(v) = memo().get(&(a, b, op)) {
        return Ok(v.clone());
    }
    let v = Arc::new(f()?);
    memo().insert((a, b, op), v.clone());
    Ok(v)
}

/// `a ≺ b` on trees, as the list of trees in the result.
pub fn tree_prec(a: PBTree, b: PBTree) -> Result<Arc<Vec<PBTree>>, DendError> {
    cached(a, b, Op::Prec, || match (a.split(), b.is_leaf()) {
        (None, true) => Err(DendError::UnitUndefined("1 ≺ 1")),
        (None, false) => Ok(Vec::new()),
        (Some(_), true) => Ok(vec![a]),
        (Some((l, r)), false) => Ok(tree_star(r, b)?.iter().map(|c| PBTree::join(l, *c)).collect()),
    })
}

/// `a ≻ b` on trees.
pub fn tree_succ(a: PBTree, b: PBTree) -> Result<Arc<Vec<PBTree>>, DendError> {
    cached(a, b, Op::Succ, || match (a.is_leaf(), b.split()) {
        (true, None) => Err(DendError::UnitUndefined("1 ≻ 1")),
        (false, None) => Ok(Vec::new()),
        (true, Some(_)) => Ok(vec![b]),
        (false, Some((l, r))) => Ok(tree_star(a, l)?.iter().map(|c| PBTree::join(*c, r)).collect()),
    })
}

/// `a * b = a ≺ b + a ≻ b`, with the unit acting trivially.
pub fn tree_star(a: PBTree, b: PBTree) -> Result<Arc<Vec<PBTree>>, DendError> {
    cached(a, b, Op::Star, || {
        if a.is_leaf() {
            return Ok(vec![b]);
        }
        if b.is_leaf() {
            return Ok(vec![a]);
        }
        let mut out = tree_prec(a, b)?.to_vec();
        out.extend(tree_succ(a, b)?.iter().copied());
        Ok(out)
    })
}

/// Planar binary trees with at most `max_degree` internal vertices, by
/// degree then in enumeration order.
#[derive(Debug)]
pub struct DendBasis {
    pub max_degree: usize,
    pub trees: Vec<PBTree>,
    index: HashMap<PBTree, usize>,
    offsets: Vec<usize>,
}

impl DendBasis {
    fn build(max_degree: usize) -> DendBasis {
        let mut trees = Vec::new();
        let mut offsets = vec![0];
        for n in 0..=max_degree {
            trees.extend(enumerate_pbtrees(n).iter().copied());
            offsets.push(trees.len());
        }
        let index = trees.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        DendBasis {
            max_degree,
            trees,
            index,
            offsets,
        }
    }

    pub fn len_up_to(&self, degree: usize) -> usize {
        self.offsets[degree.min(self.max_degree) + 1]
    }

    pub fn id(&self, t: &PBTree) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn ids_of_degree(&self, n: usize) -> std::ops::Range<usize> {
        self.offsets[n]..self.offsets[n + 1]
    }
}

/// Shared basis covering at least `degree`.
pub fn dend_basis(degree: usize) -> Arc<DendBasis> {
    static CELL: OnceLock<RwLock<Option<Arc<DendBasis>>>> = OnceLock::new();
    let cell = CELL.get_or_init(|| RwLock::new(None));
    if let Some(b) = cell.read().unwrap().as_ref() {
        if b.max_degree >= degree {
            return b.clone();
        }
    }
    let mut guard = cell.write().unwrap();
    if let Some(b) = guard.as_ref() {
        if b.max_degree >= degree {
            return b.clone();
        }
    }
    let b = Arc::new(DendBasis::build(degree));
    *guard = Some(b.clone());
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PBTree {
        s.parse().unwrap()
    }

    #[test]
    fn degree_two_products() {
        let x = PBTree::single();
        assert_eq!(*tree_prec(x, x).unwrap(), vec![p("(. (. .))")]);
        assert_eq!(*tree_succ(x, x).unwrap(), vec![p("((. .) .)")]);
        assert_eq!(tree_star(x, x).unwrap().len(), 2);
    }

    #[test]
    fn unit_cases() {
        let one = PBTree::leaf();
        let x = PBTree::single();
        assert!(tree_prec(one, one).is_err());
        assert!(tree_succ(one, one).is_err());
        assert!(tree_prec(one, x).unwrap().is_empty());
        assert_eq!(*tree_prec(x, one).unwrap(), vec![x]);
        assert_eq!(*tree_succ(one, x).unwrap(), vec![x]);
        assert!(tree_succ(x, one).unwrap().is_empty());
    }

    #[test]
    fn star_is_multiplicity_free() {
        for a in enumerate_pbtrees(2).iter() {
            for b in enumerate_pbtrees(3).iter() {
                let prod = tree_star(*a, *b).unwrap();
                let distinct: std::collections::BTreeSet<_> = prod.iter().collect();
                assert_eq!(distinct.len(), prod.len());
                assert!(prod.iter().all(|t| t.degree() == 5));
                assert!(!prod.is_empty() && prod.len() <= 10);
            }
        }
    }

    #[test]
    fn star_sizes_sum_like_shuffles() {
        // summing over a fixed left factor of degree 1 covers each
        // degree-2 tree once per way of inserting a vertex
        let total: usize = enumerate_pbtrees(1)
            .iter()
            .flat_map(|a| enumerate_pbtrees(1).iter().map(move |b| tree_star(*a, *b).unwrap().len()).collect::<Vec<_>>())
            .sum();
        assert_eq!(total, 2);
    }
}
