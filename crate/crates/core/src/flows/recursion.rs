use std::sync::OnceLock;

use dashmap::DashMap;

use crate::exactcoeff::{BPoly, FlowFraction};
use crate::trees::{as_corolla, as_linear, RootedTree, VertexPath};

use super::{FlowError, Inconsistency};

/// The trees produced by moving a leaf `w` down one step: `w` sits on `v`,
/// whose parent is `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullStep {
    pub leaf: VertexPath,
    /// The tree with `w` moved from `v` to `u`.
    pub leaf_on_lower: RootedTree,
    /// The tree without `w` and with everything above `v` removed.
    pub bottom: RootedTree,
    /// Subtrees on the children of `v` other than `w`.
    pub tops: Vec<RootedTree>,
    /// The subtree rooted at `v`, `w` included.
    pub upper_branch: RootedTree,
}

/// Decompose `x` along the leaf at `leaf`, which must have height at least 2.
pub fn pull_step(x: &RootedTree, leaf: &[usize]) -> Result<PullStep, FlowError> {
    let bad = || FlowError::NotPullable(leaf.to_vec());
    if leaf.len() < 2 || !x.subtree(leaf).map_err(|_| bad())?.is_leaf() {
        return Err(bad());
    }
    let v = &leaf[..leaf.len() - 1];
    let u = &leaf[..leaf.len() - 2];
    let (i, j) = (leaf[leaf.len() - 2], leaf[leaf.len() - 1]);
    let vt = x.subtree(v).map_err(|_| bad())?;
    let mut tops = vt.children().to_vec();
    tops.remove(j);
    let leaf_on_lower = x
        .replace_at(u, |ut| {
            let mut ch = ut.children().to_vec();
            ch.remove(i);
            ch.push(RootedTree::graft(tops.clone()));
            ch.push(RootedTree::leaf());
            RootedTree::graft(ch)
        })
        .map_err(|_| bad())?;
    let bottom = x.replace_at(v, |_| RootedTree::leaf()).map_err(|_| bad())?;
    Ok(PullStep {
        leaf: leaf.to_vec(),
        leaf_on_lower,
        bottom,
        tops,
        upper_branch: vt.clone(),
    })
}

/// Leaves of height at least 2, in preorder.
pub fn pullable_leaves(t: &RootedTree) -> Vec<VertexPath> {
    t.leaves().into_iter().filter(|p| p.len() >= 2).collect()
}

/// First leaf of maximal height, if that height is at least 2.
pub fn highest_leaf(t: &RootedTree) -> Option<VertexPath> {
    let leaves = t.leaves();
    let h = leaves.iter().map(Vec::len).max()?;
    if h < 2 {
        return None;
    }
    leaves.into_iter().find(|p| p.len() == h)
}

fn e_memo() -> &'static DashMap<String, FlowFraction> {
    static M: OnceLock<DashMap<String, FlowFraction>> = OnceLock::new();
    M.get_or_init(DashMap::new)
}

fn f_memo() -> &'static DashMap<String, BPoly> {
    static M: OnceLock<DashMap<String, BPoly>> = OnceLock::new();
    M.get_or_init(DashMap::new)
}

fn ft_memo() -> &'static DashMap<String, Result<FlowFraction, FlowError>> {
    static M: OnceLock<DashMap<String, Result<FlowFraction, FlowError>>> = OnceLock::new();
    M.get_or_init(DashMap::new)
}

fn product_at_t0(trees: &[RootedTree]) -> BPoly {
    trees
        .iter()
        .fold(BPoly::one(), |acc, t| &acc * &flows_gf(t).eval_t0())
}

/// Generating function of all flows on `t` by size (`b`) and exit rate (`t`).
pub fn flows_gf(t: &RootedTree) -> FlowFraction {
    if let Some(v) = e_memo().get(t.code()) {
        return v.clone();
    }
    let value = match as_corolla(t) {
        Some(n) => {
            let mut e = FlowFraction::geometric(1);
            for _ in 0..n {
                e = e
                    .add(&FlowFraction::from_bpoly(BPoly::b()))
                    .mul(&FlowFraction::geometric(1));
            }
            e
        }
        None => flows_gf_via(t, &highest_leaf(t).expect("non-corolla has a high leaf"))
            .expect("highest leaf is pullable"),
    };
    e_memo().insert(t.code().to_string(), value.clone());
    value
}

/// One reduction step through a chosen leaf, then the memoized recursion.
pub fn flows_gf_via(t: &RootedTree, leaf: &[usize]) -> Result<FlowFraction, FlowError> {
    let s = pull_step(t, leaf)?;
    let extra = flows_gf(&s.bottom).scale_bpoly(&(&product_at_t0(&s.tops) * &BPoly::b()));
    Ok(flows_gf(&s.leaf_on_lower).add(&extra))
}

/// Generating function of small flows (root neither input nor output).
pub fn small_flows_gf(t: &RootedTree) -> FlowFraction {
    t.children()
        .iter()
        .fold(FlowFraction::one(), |acc, c| acc.mul(&flows_gf(c)))
}

/// The small-flow analogue of [`flows_gf_via`], used as a cross-check.
pub fn small_flows_gf_via(t: &RootedTree, leaf: &[usize]) -> Result<FlowFraction, FlowError> {
    let s = pull_step(t, leaf)?;
    let extra = small_flows_gf(&s.bottom).scale_bpoly(&(&product_at_t0(&s.tops) * &BPoly::b()));
    Ok(small_flows_gf(&s.leaf_on_lower).add(&extra))
}

/// Every reduction choice gives the same flow fraction.
pub fn check_commuting(t: &RootedTree) -> Result<(), FlowError> {
    let reference = flows_gf(t);
    for leaf in pullable_leaves(t) {
        let e = flows_gf_via(t, &leaf)?;
        if e != reference {
            return Err(FlowError::Inconsistent(Box::new(Inconsistency {
                tree: t.clone(),
                first_leaf: highest_leaf(t).unwrap_or_default(),
                other_leaf: leaf,
                first: reference,
                other: e,
            })));
        }
        let d = small_flows_gf_via(t, &leaf)?;
        let d_ref = small_flows_gf(t);
        if d != d_ref {
            return Err(FlowError::Inconsistent(Box::new(Inconsistency {
                tree: t.clone(),
                first_leaf: Vec::new(),
                other_leaf: leaf,
                first: d_ref,
                other: d,
            })));
        }
    }
    Ok(())
}

/// Generating function by size of connected flows with exit rate 1.
pub fn unit_exit_gf(t: &RootedTree) -> BPoly {
    if let Some(v) = f_memo().get(t.code()) {
        return v.clone();
    }
    let value = match as_corolla(t) {
        Some(0) => BPoly::one(),
        Some(1) => BPoly::from_ints(&[1, 1]),
        Some(2) => BPoly::b(),
        Some(_) => BPoly::zero(),
        None => unit_exit_gf_via(t, &highest_leaf(t).expect("non-corolla has a high leaf"))
            .expect("highest leaf is pullable"),
    };
    f_memo().insert(t.code().to_string(), value.clone());
    value
}

pub fn unit_exit_gf_via(t: &RootedTree, leaf: &[usize]) -> Result<BPoly, FlowError> {
    let s = pull_step(t, leaf)?;
    Ok(&unit_exit_gf(&s.leaf_on_lower) + &(&unit_exit_gf(&s.bottom) * &unit_exit_gf(&s.upper_branch)))
}

fn one_minus_t() -> FlowFraction {
    FlowFraction::one_minus_t_pow(1)
}

/// Fraction refining [`unit_exit_gf`] by a parameter `t`, defined by the
/// pull-down rule with a `(1 - t)` factor and the linear and corolla bases.
/// Every admissible leaf is tried and the results must agree.
pub fn unit_exit_t_gf(t: &RootedTree) -> Result<FlowFraction, FlowError> {
    if let Some(v) = ft_memo().get(t.code()) {
        return v.clone();
    }
    let value = unit_exit_t_uncached(t);
    ft_memo().insert(t.code().to_string(), value.clone());
    value
}

fn unit_exit_t_uncached(t: &RootedTree) -> Result<FlowFraction, FlowError> {
    if as_linear(t).is_some() {
        return Ok(flows_gf(t));
    }
    if let Some(n) = as_corolla(t) {
        // n >= 2 here: smaller corollas are linear
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let num = FlowFraction::t_power(n - 2).scale_bpoly(&BPoly::b().scale(&crate::exactcoeff::rat(sign)));
        return Ok(num.mul(&FlowFraction::geometric(n as u32 - 1)));
    }
    let leaves = pullable_leaves(t);
    let mut first: Option<(VertexPath, FlowFraction)> = None;
    for leaf in leaves {
        let value = unit_exit_t_gf_via(t, &leaf)?;
        match &first {
            None => first = Some((leaf, value)),
            Some((l0, v0)) => {
                if *v0 != value {
                    return Err(FlowError::Inconsistent(Box::new(Inconsistency {
                        tree: t.clone(),
                        first_leaf: l0.clone(),
                        other_leaf: leaf,
                        first: v0.clone(),
                        other: value,
                    })));
                }
            }
        }
    }
    Ok(first.expect("non-corolla has a high leaf").1)
}

pub fn unit_exit_t_gf_via(t: &RootedTree, leaf: &[usize]) -> Result<FlowFraction, FlowError> {
    let s = pull_step(t, leaf)?;
    let lower = unit_exit_t_gf(&s.leaf_on_lower)?;
    let prod = unit_exit_t_gf(&s.bottom)?.mul(&unit_exit_t_gf(&s.upper_branch)?);
    Ok(lower.add(&one_minus_t().mul(&prod)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{corolla, fork, linear};

    fn frac(rows: &[&[i64]], pole: u32) -> FlowFraction {
        FlowFraction::new(rows.iter().map(|r| BPoly::from_ints(r)).collect(), pole)
    }

    #[test]
    fn fork_fraction() {
        let e = flows_gf(&fork(2, 2).unwrap());
        let expected = frac(&[&[1, 5, 3], &[0, -9, -8], &[0, 5, 7], &[0, -1, -2]], 4);
        assert_eq!(e, expected);
        assert_eq!(e.eval_t0(), BPoly::from_ints(&[1, 5, 3]));
    }

    #[test]
    fn narayana_fractions() {
        assert_eq!(flows_gf(&RootedTree::leaf()), FlowFraction::geometric(1));
        assert_eq!(flows_gf(&linear(2).unwrap()), frac(&[&[1, 1], &[0, -1]], 2));
        assert_eq!(
            flows_gf(&linear(3).unwrap()),
            frac(&[&[1, 3, 1], &[0, -4, -2], &[0, 1, 1]], 3)
        );
    }

    #[test]
    fn pull_step_on_linear_three() {
        let s = pull_step(&linear(3).unwrap(), &[0, 0]).unwrap();
        assert_eq!(s.leaf_on_lower, corolla(2));
        assert_eq!(s.bottom, linear(2).unwrap());
        assert!(s.tops.is_empty());
        assert_eq!(s.upper_branch, linear(2).unwrap());
        assert!(pull_step(&corolla(2), &[0]).is_err());
    }

    #[test]
    fn unit_exit_values() {
        assert_eq!(unit_exit_gf(&fork(2, 2).unwrap()), BPoly::from_ints(&[0, 2, 2]));
        assert!(unit_exit_gf(&corolla(4)).is_zero());
        let ft = unit_exit_t_gf(&fork(2, 2).unwrap()).unwrap();
        let expected = FlowFraction::geometric(2)
            .scale_bpoly(&BPoly::b())
            .add(&FlowFraction::geometric(1).scale_bpoly(&BPoly::from_ints(&[0, 1, 2])));
        assert_eq!(ft, expected);
        assert_eq!(
            unit_exit_t_gf(&linear(3).unwrap()).unwrap(),
            flows_gf(&linear(3).unwrap())
        );
        let c3 = unit_exit_t_gf(&corolla(3)).unwrap();
        assert_eq!(c3, frac(&[&[], &[0, -1]], 2));
    }

    #[test]
    fn commuting() {
        for n in 1..=6 {
            for t in crate::trees::enumerate_rooted_trees(n).iter() {
                check_commuting(t).unwrap();
            }
        }
    }
}
