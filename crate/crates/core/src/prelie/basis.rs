use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::trees::{enumerate_rooted_trees, RootedTree};

/// Canonical tree built from a parent array (entry `None` marks the root).
pub fn tree_from_parents(parent: &[Option<usize>]) -> RootedTree {
    let n = parent.len();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut root = None;
    for (v, p) in parent.iter().enumerate() {
        match p {
            Some(p) => children[*p].push(v),
            None => root = Some(v),
        }
    }
    fn build(v: usize, children: &[Vec<usize>]) -> RootedTree {
        RootedTree::graft(children[v].iter().map(|&c| build(c, children)).collect())
    }
    build(root.expect("parent array has a root"), &children)
}

/// One way of cutting a tree into subtrees: the contracted tree, the piece
/// containing the root, and the remaining pieces, with a multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub quotient: usize,
    pub root_part: usize,
    pub other_parts: Vec<usize>,
    pub multiplicity: u64,
}

/// All rooted trees up to a size, indexed by size then encoding, with the
/// edge-subset decompositions used by composition.
#[derive(Debug)]
pub struct PreLieBasis {
    pub max_degree: usize,
    pub trees: Vec<RootedTree>,
    index: HashMap<String, usize>,
    /// `offsets[n]` is the id of the first tree with `n` vertices.
    offsets: Vec<usize>,
    pub decompositions: Vec<Vec<Decomposition>>,
    pub aut: Vec<u64>,
}

impl PreLieBasis {
    fn build(max_degree: usize) -> PreLieBasis {
        let mut trees = Vec::new();
        let mut offsets = vec![0, 0];
        for n in 1..=max_degree {
            trees.extend(enumerate_rooted_trees(n).iter().cloned());
            offsets.push(trees.len());
        }
        let index: HashMap<String, usize> = trees
            .iter()
            .enumerate()
            .map(|(i, t)| (t.code().to_string(), i))
            .collect();
        let aut = trees
            .iter()
            .map(|t| u64::try_from(t.aut()).expect("automorphism count fits"))
            .collect();
        let decompositions = trees.iter().map(|t| decompose(t, &index)).collect();
        PreLieBasis {
            max_degree,
            trees,
            index,
            offsets,
            decompositions,
            aut,
        }
    }

    pub fn len_up_to(&self, degree: usize) -> usize {
        self.offsets[degree.min(self.max_degree) + 1]
    }

    pub fn id(&self, t: &RootedTree) -> Option<usize> {
        self.index.get(t.code()).copied()
    }

    pub fn id_of_code(&self, code: &str) -> Option<usize> {
        self.index.get(code).copied()
    }

    pub fn ids_of_size(&self, n: usize) -> std::ops::Range<usize> {
        self.offsets[n]..self.offsets[n + 1]
    }
}

fn decompose(t: &RootedTree, index: &HashMap<String, usize>) -> Vec<Decomposition> {
    let parent = t.parent_array();
    let n = parent.len();
    let mut tally: HashMap<(usize, usize, Vec<usize>), u64> = HashMap::new();
    for mask in 0u64..(1u64 << (n - 1)) {
        // vertex v >= 1 keeps its edge to the parent when bit v-1 is set
        let kept = |v: usize| mask >> (v - 1) & 1 == 1;
        let mut comp = vec![0usize; n];
        for v in 1..n {
            comp[v] = if kept(v) { comp[parent[v].unwrap()] } else { v };
        }
        let tops: Vec<usize> = (0..n).filter(|&v| comp[v] == v).collect();
        let slot: HashMap<usize, usize> = tops.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let qparent: Vec<Option<usize>> = tops
            .iter()
            .map(|&c| parent[c].map(|p| slot[&comp[p]]))
            .collect();
        let quotient = index[tree_from_parents(&qparent).code()];
        let mut parts: Vec<usize> = tops
            .iter()
            .map(|&c| {
                let members: Vec<usize> = (0..n).filter(|&v| comp[v] == c).collect();
                let local: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
                let pp: Vec<Option<usize>> = members
                    .iter()
                    .map(|&v| if v == c { None } else { Some(local[&parent[v].unwrap()]) })
                    .collect();
                index[tree_from_parents(&pp).code()]
            })
            .collect();
        let root_part = parts.remove(0);
        parts.sort_unstable();
        *tally.entry((quotient, root_part, parts)).or_insert(0) += 1;
    }
    let mut out: Vec<Decomposition> = tally
        .into_iter()
        .map(|((quotient, root_part, other_parts), multiplicity)| Decomposition {
            quotient,
            root_part,
            other_parts,
            multiplicity,
        })
        .collect();
    out.sort_by(|a, b| (a.quotient, a.root_part, &a.other_parts).cmp(&(b.quotient, b.root_part, &b.other_parts)));
    out
}

/// Shared basis covering at least `degree`.
pub fn basis(degree: usize) -> Arc<PreLieBasis> {
    static CELL: OnceLock<RwLock<Option<Arc<PreLieBasis>>>> = OnceLock::new();
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
    let b = Arc::new(PreLieBasis::build(degree));
    *guard = Some(b.clone());
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_prefix_stable() {
        let b = basis(5);
        assert_eq!(b.len_up_to(1), 1);
        assert_eq!(b.len_up_to(3), 4);
        assert_eq!(b.trees[b.ids_of_size(4).start].size(), 4);
        assert_eq!(b.id(&RootedTree::leaf()), Some(0));
    }

    #[test]
    fn decomposition_counts() {
        let b = basis(5);
        for (id, d) in b.decompositions.iter().enumerate() {
            let total: u64 = d.iter().map(|x| x.multiplicity).sum();
            assert_eq!(total, 1u64 << (b.trees[id].size() - 1));
        }
    }

    #[test]
    fn parents_round_trip() {
        for t in crate::trees::trees_up_to(6) {
            assert_eq!(tree_from_parents(&t.parent_array()), t);
        }
    }
}
