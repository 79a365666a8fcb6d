use super::{RootedTree, TreeError};

/// Everything derived from an edge `v -> u` (with `u` the parent of `v`)
/// when a new leaf `w` is placed on `v` or on `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryContext {
    pub base: RootedTree,
    pub upper: Vec<usize>,
    pub lower: Vec<usize>,
    /// New leaf added on the upper vertex `v`.
    pub leaf_on_upper: RootedTree,
    /// New leaf added on the lower vertex `u`.
    pub leaf_on_lower: RootedTree,
    /// `T` with everything above `v` removed.
    pub bottom: RootedTree,
    /// Subtrees carried by the children of `v`.
    pub tops: Vec<RootedTree>,
    /// Subtree rooted at `v` in `leaf_on_upper`.
    pub upper_branch: RootedTree,
}

/// Build the surgery data for the edge from `upper` down to `lower`.
pub fn surgery(t: &RootedTree, upper: &[usize], lower: &[usize]) -> Result<SurgeryContext, TreeError> {
    let not_edge = || TreeError::NotAnEdge {
        upper: upper.to_vec(),
        lower: lower.to_vec(),
    };
    if upper.len() != lower.len() + 1 || !upper.starts_with(lower) {
        return Err(not_edge());
    }
    let v = t.subtree(upper).map_err(|_| not_edge())?;
    let tops = v.children().to_vec();
    let mut with_leaf = tops.clone();
    with_leaf.push(RootedTree::leaf());
    let upper_branch = RootedTree::graft(with_leaf);
    Ok(SurgeryContext {
        base: t.clone(),
        upper: upper.to_vec(),
        lower: lower.to_vec(),
        leaf_on_upper: t.add_leaf(upper)?,
        leaf_on_lower: t.add_leaf(lower)?,
        bottom: t.replace_at(upper, |_| RootedTree::leaf())?,
        tops,
        upper_branch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{corolla, linear};

    #[test]
    fn linear_two() {
        let t = linear(2).unwrap();
        let s = surgery(&t, &[0], &[]).unwrap();
        assert_eq!(s.leaf_on_upper, linear(3).unwrap());
        assert_eq!(s.leaf_on_lower, corolla(2));
        assert_eq!(s.bottom, linear(2).unwrap());
        assert!(s.tops.is_empty());
        assert_eq!(s.upper_branch, linear(2).unwrap());
    }

    #[test]
    fn corolla_two() {
        let t = corolla(2);
        for i in 0..2 {
            let s = surgery(&t, &[i], &[]).unwrap();
            assert_eq!(
                s.leaf_on_upper,
                RootedTree::graft(vec![linear(2).unwrap(), RootedTree::leaf()])
            );
            assert_eq!(s.leaf_on_lower, corolla(3));
        }
    }

    #[test]
    fn not_an_edge() {
        let t = linear(3).unwrap();
        assert!(surgery(&t, &[0, 0], &[]).is_err());
        assert!(surgery(&t, &[1], &[]).is_err());
        assert!(surgery(&t, &[], &[0]).is_err());
    }
}
