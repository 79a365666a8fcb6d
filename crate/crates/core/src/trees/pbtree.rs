use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use super::{Letter, TreeError, Word};

/// Largest supported number of internal vertices.
pub const MAX_PB_DEGREE: usize = 31;

/// Planar binary tree, stored as its preorder bit string
/// (internal vertex = 1, leaf = 0) in the low `2n + 1` bits.
///
/// Ordered by number of internal vertices, then by that bit string.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PBTree {
    len: u8,
    code: u64,
}

impl PBTree {
    /// The tree with no internal vertex (the unit).
    pub const LEAF: PBTree = PBTree { len: 1, code: 0 };

    pub fn leaf() -> PBTree {
        Self::LEAF
    }

    /// The tree with one internal vertex.
    pub fn single() -> PBTree {
        Self::join(Self::LEAF, Self::LEAF)
    }

    /// `l ∨ r`: new root with the given left and right subtrees.
    pub fn join(l: PBTree, r: PBTree) -> PBTree {
        let len = 1 + l.len as u32 + r.len as u32;
        assert!(len <= 2 * MAX_PB_DEGREE as u32 + 1, "planar binary tree too large");
        PBTree {
            len: len as u8,
            code: (1u64 << (len - 1)) | (l.code << r.len) | r.code,
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.len == 1
    }

    /// Number of internal vertices.
    pub fn degree(&self) -> usize {
        (self.len as usize - 1) / 2
    }

    pub fn split(&self) -> Option<(PBTree, PBTree)> {
        if self.is_leaf() {
            return None;
        }
        let total = self.len as u32 - 1;
        let mut pending = 1i32;
        let mut llen = 0u32;
        while pending > 0 {
            let bit = (self.code >> (total - 1 - llen)) & 1;
            pending += if bit == 1 { 1 } else { -1 };
            llen += 1;
        }
        let rlen = total - llen;
        let rmask = (1u64 << rlen) - 1;
        let lmask = (1u64 << llen) - 1;
        Some((
            PBTree {
                len: llen as u8,
                code: (self.code >> rlen) & lmask,
            },
            PBTree {
                len: rlen as u8,
                code: self.code & rmask,
            },
        ))
    }

    pub fn left(&self) -> Option<PBTree> {
        self.split().map(|(l, _)| l)
    }

    pub fn right(&self) -> Option<PBTree> {
        self.split().map(|(_, r)| r)
    }

    /// Left-right mirror image.
    pub fn reversal(&self) -> PBTree {
        match self.split() {
            None => *self,
            Some((l, r)) => PBTree::join(r.reversal(), l.reversal()),
        }
    }

    fn leaf_sides(&self, side: Letter, out: &mut Vec<Letter>) {
        match self.split() {
            None => out.push(side),
            Some((l, r)) => {
                l.leaf_sides(Letter::Minus, out);
                r.leaf_sides(Letter::Plus, out);
            }
        }
    }

    /// For every leaf from left to right, whether it is a left child (`-`)
    /// or a right child (`+`).
    pub fn full_canopy(&self) -> Result<Word, TreeError> {
        if self.is_leaf() {
            return Err(TreeError::UnitTree);
        }
        let mut out = Vec::with_capacity(self.degree() + 1);
        self.leaf_sides(Letter::Minus, &mut out);
        Ok(Word(out))
    }

    /// Full canopy without its two extreme letters; length `n - 1`.
    pub fn canopy(&self) -> Result<Word, TreeError> {
        let w = self.full_canopy()?.0;
        Ok(Word(w[1..w.len() - 1].to_vec()))
    }

    /// `-` followed by the canopy.
    pub fn left_completed_canopy(&self) -> Result<Word, TreeError> {
        let w = self.full_canopy()?.0;
        Ok(Word(w[..w.len() - 1].to_vec()))
    }

    /// The canopy followed by `+`.
    pub fn right_completed_canopy(&self) -> Result<Word, TreeError> {
        let w = self.full_canopy()?.0;
        Ok(Word(w[1..].to_vec()))
    }

    /// Left comb with `n` internal vertices, each hanging on the left.
    pub fn left_comb(n: usize) -> PBTree {
        (0..n).fold(Self::LEAF, |t, _| PBTree::join(t, Self::LEAF))
    }

    /// Right comb with `n` internal vertices.
    pub fn right_comb(n: usize) -> PBTree {
        (0..n).fold(Self::LEAF, |t, _| PBTree::join(Self::LEAF, t))
    }

    pub fn parse(s: &str) -> Result<PBTree, TreeError> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        fn go(c: &[char], pos: &mut usize) -> Option<PBTree> {
            match c.get(*pos)? {
                '.' => {
                    *pos += 1;
                    Some(PBTree::LEAF)
                }
                '(' => {
                    *pos += 1;
                    let l = go(c, pos)?;
                    let r = go(c, pos)?;
                    if c.get(*pos) != Some(&')') {
                        return None;
                    }
                    *pos += 1;
                    if l.degree() + r.degree() + 1 > MAX_PB_DEGREE {
                        return None;
                    }
                    Some(PBTree::join(l, r))
                }
                _ => None,
            }
        }
        let mut pos = 0;
        match go(&chars, &mut pos) {
            Some(t) if pos == chars.len() => Ok(t),
            _ => Err(TreeError::Malformed(s.to_string())),
        }
    }
}

impl fmt::Display for PBTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.split() {
            None => write!(f, "."),
            Some((l, r)) => write!(f, "({l} {r})"),
        }
    }
}

impl fmt::Debug for PBTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PBTree {
    type Err = TreeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PBTree::parse(s)
    }
}

impl serde::Serialize for PBTree {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

type PbTable = RwLock<HashMap<usize, Arc<Vec<PBTree>>>>;

fn table() -> &'static PbTable {
    static TABLE: OnceLock<PbTable> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// All planar binary trees with `n` internal vertices, in increasing order.
pub fn enumerate_pbtrees(n: usize) -> Arc<Vec<PBTree>> {
    assert!(n <= MAX_PB_DEGREE, "planar binary tree too large");
    if let Some(v) = table().read().unwrap().get(&n) {
        return v.clone();
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(PBTree::LEAF);
    } else {
        for k in 0..n {
            let lefts = enumerate_pbtrees(k);
            let rights = enumerate_pbtrees(n - 1 - k);
            for l in lefts.iter() {
                for r in rights.iter() {
                    out.push(PBTree::join(*l, *r));
                }
            }
        }
        out.sort();
    }
    let out = Arc::new(out);
    table().write().unwrap().insert(n, out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_two() {
        let trees = enumerate_pbtrees(2);
        assert_eq!(trees.len(), 2);
        let canopies: Vec<String> = trees.iter().map(|t| t.canopy().unwrap().to_string()).collect();
        assert_eq!(canopies, ["-", "+"]);
        let under: PBTree = "(. (. .))".parse().unwrap();
        assert_eq!(under.canopy().unwrap().to_string(), "-");
    }

    #[test]
    fn figure_tree() {
        let t: PBTree = "((. ((. .) .)) ((. .) .))".parse().unwrap();
        assert_eq!(t.degree(), 6);
        assert_eq!(t.canopy().unwrap().to_string(), "-++-+");
        assert_eq!(t.full_canopy().unwrap().to_string(), "--++-++");
        assert_eq!(t.left_completed_canopy().unwrap().to_string(), "--++-+");
        assert_eq!(t.right_completed_canopy().unwrap().to_string(), "-++-++");
        assert_eq!(t.reversal().canopy().unwrap(), t.canopy().unwrap().mirrored());
    }

    #[test]
    fn split_join() {
        for n in 0..6 {
            for t in enumerate_pbtrees(n).iter() {
                if let Some((l, r)) = t.split() {
                    assert_eq!(PBTree::join(l, r), *t);
                }
                assert_eq!(PBTree::parse(&t.to_string()).unwrap(), *t);
            }
        }
        assert_eq!(PBTree::LEAF.to_string(), ".");
        assert!(PBTree::LEAF.canopy().is_err());
        assert!(PBTree::parse("(. .").is_err());
    }

    #[test]
    fn combs() {
        assert_eq!(PBTree::left_comb(2).to_string(), "((. .) .)");
        assert_eq!(PBTree::right_comb(2).to_string(), "(. (. .))");
        assert_eq!(PBTree::left_comb(4).canopy().unwrap().to_string(), "+++");
    }
}
