use std::collections::HashMap;

use crate::exactcoeff::{rat, rat_frac, Coefficient, Rational};
use crate::trees::RootedTree;

use super::basis::tree_from_parents;
use super::PreLieSeries;

/// Composition by brute force: every outer tree (in its preorder
/// labelling) gets an inner tree at each vertex, and every outer edge is
/// realized by attaching the inner root to each vertex of the inner tree
/// below it. The weighted sum of canonical results is rescaled by `aut`.
pub fn labelled_compose<R: Coefficient>(s: &PreLieSeries<R>, t: &PreLieSeries<R>) -> PreLieSeries<R> {
    let degree = s.degree().min(t.degree());
    let basis = s.basis();
    let inner: Vec<(RootedTree, R)> = t
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(tr, v)| (tr.clone(), v.scale(&inv_aut(tr))))
        .collect();
    let mut acc: HashMap<String, R> = HashMap::new();
    for (outer, sv) in s.iter() {
        if sv.is_zero() || outer.size() > degree {
            continue;
        }
        let weight = sv.scale(&inv_aut(outer));
        let parent = outer.parent_array();
        let mut chosen = Vec::with_capacity(parent.len());
        assign(&parent, &inner, degree, &mut chosen, 0, &weight, &mut acc);
    }
    let mut out = PreLieSeries::zero(degree);
    for (code, v) in acc {
        let id = basis.id_of_code(&code).expect("result within basis");
        let u = basis.trees[id].clone();
        let aut = rat(basis.aut[id] as i64);
        out.set(&u, v.scale(&aut)).expect("result within degree");
    }
    out
}

fn inv_aut(t: &RootedTree) -> Rational {
    let a = u64::try_from(t.aut()).expect("automorphism count fits");
    rat_frac(1, a as i64)
}

fn assign<R: Coefficient>(
    parent: &[Option<usize>],
    inner: &[(RootedTree, R)],
    degree: usize,
    chosen: &mut Vec<usize>,
    used: usize,
    weight: &R,
    acc: &mut HashMap<String, R>,
) {
    let remaining = parent.len() - chosen.len();
    if remaining == 0 {
        attach(parent, inner, chosen, weight, acc);
        return;
    }
    for (i, (tr, v)) in inner.iter().enumerate() {
        // every later vertex needs at least one more vertex
        if used + tr.size() + remaining - 1 > degree {
            continue;
        }
        chosen.push(i);
        assign(parent, inner, degree, chosen, used + tr.size(), &weight.times(v), acc);
        chosen.pop();
    }
}

fn attach<R: Coefficient>(
    parent: &[Option<usize>],
    inner: &[(RootedTree, R)],
    chosen: &[usize],
    weight: &R,
    acc: &mut HashMap<String, R>,
) {
    let mut offsets = Vec::with_capacity(chosen.len());
    let mut base: Vec<Option<usize>> = Vec::new();
    for &i in chosen {
        offsets.push(base.len());
        let local = inner[i].0.parent_array();
        base.extend(local.iter().map(|p| p.map(|q| q + offsets[offsets.len() - 1])));
    }
    // choice[v] is the vertex of the inner tree at parent[v] receiving v
    let sizes: Vec<usize> = chosen.iter().map(|&i| inner[i].0.size()).collect();
    let edges: Vec<(usize, usize)> = parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (v, p))).collect();
    let mut choice = vec![0usize; edges.len()];
    loop {
        let mut glued = base.clone();
        for (e, &(v, p)) in edges.iter().enumerate() {
            glued[offsets[v]] = Some(offsets[p] + choice[e]);
        }
        let code = tree_from_parents(&glued).code().to_string();
        acc.entry(code).or_insert_with(R::zero).accumulate(weight);
        let mut e = 0;
        loop {
            if e == edges.len() {
                return;
            }
            choice[e] += 1;
            if choice[e] < sizes[edges[e].1] {
                break;
            }
            choice[e] = 0;
            e += 1;
        }
    }
}

/// Number of trees produced when `inner` is substituted at `vertex` of
/// `outer` (every other vertex keeping a single vertex): one per way of
/// reattaching the incoming edges.
pub fn reattachment_count(outer: &RootedTree, vertex: usize, inner: &RootedTree) -> usize {
    let parent = outer.parent_array();
    let indegree = parent.iter().filter(|p| **p == Some(vertex)).count();
    inner.size().pow(indegree as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prelie::h_series;
    use crate::trees::{corolla, linear};

    #[test]
    fn oracle_matches_group_law_on_h() {
        let h = h_series(1, 4);
        assert_eq!(labelled_compose(&h, &h), h_series(2, 4));
    }

    #[test]
    fn reattachment_counts() {
        let lnr2 = linear(2).unwrap();
        assert_eq!(reattachment_count(&lnr2, 0, &RootedTree::leaf()), 1);
        assert_eq!(reattachment_count(&lnr2, 0, &corolla(2)), 3);
        assert_eq!(reattachment_count(&lnr2, 1, &corolla(2)), 1);
    }
}
