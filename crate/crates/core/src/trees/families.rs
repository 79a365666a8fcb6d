use super::{RootedTree, TreeError};

/// Named tree families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Path with `l` vertices.
    Linear(usize),
    /// Root with `n` leaves on top.
    Corolla(usize),
    /// Linear stem of `i` vertices with `l` leaves on the top vertex.
    Fork(usize, usize),
}

impl Family {
    pub fn build(self) -> Result<RootedTree, TreeError> {
        match self {
            Family::Linear(l) => linear(l),
            Family::Corolla(n) => Ok(corolla(n)),
            Family::Fork(i, l) => fork(i, l),
        }
    }
}

pub fn linear(l: usize) -> Result<RootedTree, TreeError> {
    if l == 0 {
        return Err(TreeError::InvalidParams("linear tree needs at least one vertex".into()));
    }
    Ok((1..l).fold(RootedTree::leaf(), |t, _| RootedTree::graft(vec![t])))
}

/// Corolla with `n` leaves (`n + 1` vertices); the zero corolla is the single vertex.
pub fn corolla(n: usize) -> RootedTree {
    RootedTree::graft(vec![RootedTree::leaf(); n])
}

pub fn fork(i: usize, l: usize) -> Result<RootedTree, TreeError> {
    if i == 0 {
        return Err(TreeError::InvalidParams("fork needs a stem of at least one vertex".into()));
    }
    Ok((1..i).fold(corolla(l), |t, _| RootedTree::graft(vec![t])))
}

/// Whether `t` is a corolla, and with how many leaves.
pub fn as_corolla(t: &RootedTree) -> Option<usize> {
    t.children().iter().all(RootedTree::is_leaf).then(|| t.root_valency())
}

/// Whether `t` is a linear tree, and with how many vertices.
pub fn as_linear(t: &RootedTree) -> Option<usize> {
    (t.height() + 1 == t.size()).then(|| t.size())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_trees() {
        assert_eq!(linear(1).unwrap(), RootedTree::leaf());
        assert_eq!(linear(3).unwrap().code(), "((()))");
        assert_eq!(corolla(3).size(), 4);
        assert_eq!(corolla(0), RootedTree::leaf());
        assert_eq!(fork(1, 2).unwrap(), corolla(2));
        assert_eq!(fork(2, 2).unwrap().code(), "((()()))");
        assert_eq!(fork(3, 0).unwrap(), linear(3).unwrap());
        assert!(linear(0).is_err());
        assert!(fork(0, 3).is_err());
    }

    #[test]
    fn fork_three_four() {
        let t = fork(3, 4).unwrap();
        assert_eq!(t.size(), 7);
        let branch: Vec<(usize, usize)> = t
            .vertices()
            .iter()
            .map(|p| (p.len(), t.subtree(p).unwrap().root_valency()))
            .filter(|&(_, v)| v > 1)
            .collect();
        assert_eq!(branch, vec![(2, 4)]);
    }

    #[test]
    fn recognizers() {
        assert_eq!(as_corolla(&corolla(4)), Some(4));
        assert_eq!(as_corolla(&linear(3).unwrap()), None);
        assert_eq!(as_linear(&linear(4).unwrap()), Some(4));
        assert_eq!(as_linear(&corolla(2)), None);
    }
}
