use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;

use crate::exactcoeff::{rat_frac, Coefficient, Rational};
use crate::prelie::PreLieSeries;
use crate::trees::{PBTree, RootedTree};

use super::algebra::{tree_prec, tree_succ};
use super::DendSeries;

/// Homogeneous linear combination of planar binary trees.
pub type DendTerms = BTreeMap<PBTree, Rational>;

fn add_into(acc: &mut DendTerms, terms: &DendTerms, c: &Rational) {
    for (t, v) in terms {
        let e = acc.entry(*t).or_insert_with(<Rational as num_traits::Zero>::zero);
        *e += v * c;
        if num_traits::Zero::is_zero(e) {
            acc.remove(t);
        }
    }
}

fn half_product(x: &DendTerms, y: &DendTerms, succ: bool) -> DendTerms {
    let mut out = DendTerms::new();
    for (a, u) in x {
        for (b, v) in y {
            let prod = if succ { tree_succ(*a, *b) } else { tree_prec(*a, *b) };
            let w = u * v;
            for c in prod.expect("no unit terms").iter() {
                let e = out.entry(*c).or_insert_with(<Rational as num_traits::Zero>::zero);
                *e += &w;
            }
        }
    }
    out.retain(|_, v| !num_traits::Zero::is_zero(v));
    out
}

/// Every tree obtained by grafting `top` on one vertex of `base`, with
/// multiplicity.
pub fn graft_everywhere(base: &RootedTree, top: &RootedTree) -> Vec<RootedTree> {
    base.vertices()
        .iter()
        .map(|p| {
            base.replace_at(p, |v| {
                let mut ch = v.children().to_vec();
                ch.push(top.clone());
                RootedTree::graft(ch)
            })
            .expect("vertex exists")
        })
        .collect()
}

fn memo() -> &'static DashMap<String, Arc<DendTerms>> {
    static MEMO: OnceLock<DashMap<String, Arc<DendTerms>>> = OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

/// Image of a single rooted tree (unlabelled) under the morphism to the
/// dendriform operad, computed through the grafting product:
/// `x ↶ y ↦ y ≻ x - x ≺ y`.
pub fn phi_tree(t: &RootedTree) -> Arc<DendTerms> {
    if let Some(v) = memo().get(t.code()) {
        return v.clone();
    }
    let out = Arc::new(compute(t));
    memo().insert(t.code().to_string(), out.clone());
    out
}

fn compute(t: &RootedTree) -> DendTerms {
    let children = t.children();
    let Some((last, rest)) = children.split_last() else {
        return DendTerms::from([(PBTree::single(), Rational::from_integer(1.into()))]);
    };
    let base = RootedTree::graft(rest.to_vec());
    let (phi_base, phi_top) = (phi_tree(&base), phi_tree(last));
    let one = Rational::from_integer(1.into());
    let mut out = half_product(&phi_top, &phi_base, true);
    add_into(&mut out, &half_product(&phi_base, &phi_top, false), &-one.clone());
    for i in 0..rest.len() {
        for s in graft_everywhere(&rest[i], last) {
            let mut ch = rest.to_vec();
            ch[i] = s;
            add_into(&mut out, &phi_tree(&RootedTree::graft(ch)), &-one.clone());
        }
    }
    out
}

/// The morphism applied to a whole series: `Σ s_T φ(T) / aut(T)`.
pub fn phi<R: Coefficient>(s: &PreLieSeries<R>) -> DendSeries<R> {
    let mut out = DendSeries::<R>::zero(s.degree());
    let mut acc: Vec<R> = vec![R::zero(); out.coeffs().len()];
    let trees = out.trees().to_vec();
    let index: std::collections::HashMap<PBTree, usize> = trees.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    for (t, c) in s.iter() {
        if c.is_zero() {
            continue;
        }
        let aut = u64::try_from(t.aut()).expect("automorphism count fits");
        for (pb, v) in phi_tree(t).iter() {
            acc[index[pb]].accumulate(&c.scale(&(v * rat_frac(1, aut as i64))));
        }
    }
    for (t, v) in trees.iter().zip(acc) {
        out.set(t, v).expect("within degree");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::linear;

    #[test]
    fn image_of_the_edge() {
        let img = phi_tree(&linear(2).unwrap());
        let left: PBTree = "((. .) .)".parse().unwrap();
        let right: PBTree = "(. (. .))".parse().unwrap();
        assert_eq!(img.len(), 2);
        assert_eq!(img[&left], Rational::from_integer(1.into()));
        assert_eq!(img[&right], Rational::from_integer((-1).into()));
    }

    #[test]
    fn graft_counts() {
        let t = linear(3).unwrap();
        assert_eq!(graft_everywhere(&t, &RootedTree::leaf()).len(), 3);
    }
}
