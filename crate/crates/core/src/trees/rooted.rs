use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::One;

use super::TreeError;

/// Vertex address: child indices from the root, in canonical child order.
pub type VertexPath = Vec<usize>;

/// Unordered rooted tree in canonical form.
///
/// Children are kept sorted by their parenthesis encoding; equality,
/// ordering and hashing all go through that encoding. The one-vertex tree
/// is `"()"`.
#[derive(Clone)]
pub struct RootedTree {
    children: Vec<RootedTree>,
    code: String,
}

impl RootedTree {
    pub fn leaf() -> Self {
        RootedTree {
            children: Vec::new(),
            code: "()".to_string(),
        }
    }

    /// `B+`: a new root carrying the given subtrees.
    pub fn graft(mut children: Vec<RootedTree>) -> Self {
        children.sort();
        let mut code = String::with_capacity(2 + children.iter().map(|c| c.code.len()).sum::<usize>());
        code.push('(');
        for c in &children {
            code.push_str(&c.code);
        }
        code.push(')');
        RootedTree { children, code }
    }

    pub fn children(&self) -> &[RootedTree] {
        &self.children
    }

    pub fn code(&self) -> &str {
        &self.code
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Number of vertices `#T`.
    pub fn size(&self) -> usize {
        self.code.len() / 2
    }

    pub fn root_valency(&self) -> usize {
        self.children.len()
    }

    /// Largest distance from the root to a vertex.
    pub fn height(&self) -> usize {
        self.children.iter().map(|c| c.height() + 1).max().unwrap_or(0)
    }

    pub fn leaf_count(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(RootedTree::leaf_count).sum()
        }
    }

    pub fn nonleaf_count(&self) -> usize {
        self.size() - self.leaf_count()
    }

    /// Number of vertices at each height, from the root up.
    pub fn height_profile(&self) -> Vec<usize> {
        let mut prof = Vec::new();
        self.walk(&mut Vec::new(), &mut |path, _| {
            if prof.len() <= path.len() {
                prof.resize(path.len() + 1, 0);
            }
            prof[path.len()] += 1;
        });
        prof
    }

    /// Valency (number of children) of every vertex, in preorder.
    pub fn valencies(&self) -> Vec<usize> {
        let mut v = Vec::new();
        self.walk(&mut Vec::new(), &mut |_, t| v.push(t.root_valency()));
        v
    }

    /// Order of the automorphism group.
    pub fn aut(&self) -> BigUint {
        let mut total = BigUint::one();
        let mut i = 0;
        while i < self.children.len() {
            let mut j = i;
            while j < self.children.len() && self.children[j] == self.children[i] {
                j += 1;
            }
            let sub = self.children[i].aut();
            for m in 1..=(j - i) {
                total *= &sub * BigUint::from(m);
            }
            i = j;
        }
        total
    }

    fn walk<'a>(&'a self, path: &mut VertexPath, f: &mut impl FnMut(&VertexPath, &'a RootedTree)) {
        f(path, self);
        for (i, c) in self.children.iter().enumerate() {
            path.push(i);
            c.walk(path, f);
            path.pop();
        }
    }

    /// All vertex addresses in preorder.
    pub fn vertices(&self) -> Vec<VertexPath> {
        let mut out = Vec::new();
        self.walk(&mut Vec::new(), &mut |p, _| out.push(p.clone()));
        out
    }

    pub fn subtree(&self, path: &[usize]) -> Result<&RootedTree, TreeError> {
        let mut t = self;
        for &i in path {
            t = t
                .children
                .get(i)
                .ok_or_else(|| TreeError::NoSuchVertex(path.to_vec()))?;
        }
        Ok(t)
    }

    /// Rebuild the tree with the subtree at `path` replaced by `f(subtree)`.
    pub fn replace_at(
        &self,
        path: &[usize],
        f: impl FnOnce(&RootedTree) -> RootedTree,
    ) -> Result<RootedTree, TreeError> {
        match path.split_first() {
            None => Ok(f(self)),
            Some((&i, rest)) => {
                let child = self
                    .children
                    .get(i)
                    .ok_or_else(|| TreeError::NoSuchVertex(path.to_vec()))?;
                let mut children = self.children.clone();
                children[i] = child.replace_at(rest, f).map_err(|_| TreeError::NoSuchVertex(path.to_vec()))?;
                Ok(RootedTree::graft(children))
            }
        }
    }

    /// Add a new leaf on top of the vertex at `path`.
    pub fn add_leaf(&self, path: &[usize]) -> Result<RootedTree, TreeError> {
        self.replace_at(path, |t| {
            let mut ch = t.children.clone();
            ch.push(RootedTree::leaf());
            RootedTree::graft(ch)
        })
    }

    /// Paths of all leaves, in preorder.
    pub fn leaves(&self) -> Vec<VertexPath> {
        let mut out = Vec::new();
        self.walk(&mut Vec::new(), &mut |p, t| {
            if t.is_leaf() {
                out.push(p.clone())
            }
        });
        out
    }

    /// Canonical level sequence: depths of vertices in preorder.
    pub fn level_sequence(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.walk(&mut Vec::new(), &mut |p, _| out.push(p.len()));
        out
    }

    /// Parent index of each vertex in preorder numbering (root has none).
    pub fn parent_array(&self) -> Vec<Option<usize>> {
        let mut out = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        for depth in self.level_sequence() {
            stack.truncate(depth);
            out.push(stack.last().copied());
            stack.push(out.len() - 1);
        }
        out
    }

    pub fn parse(s: &str) -> Result<RootedTree, TreeError> {
        let bytes: Vec<u8> = s.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let bad = || TreeError::Malformed(s.to_string());
        fn go(b: &[u8], pos: &mut usize) -> Option<RootedTree> {
            if b.get(*pos) != Some(&b'(') {
                return None;
            }
            *pos += 1;
            let mut children = Vec::new();
            while b.get(*pos) == Some(&b'(') {
                children.push(go(b, pos)?);
            }
            if b.get(*pos) != Some(&b')') {
                return None;
            }
            *pos += 1;
            Some(RootedTree::graft(children))
        }
        let mut pos = 0;
        let t = go(&bytes, &mut pos).ok_or_else(bad)?;
        if pos != bytes.len() {
            return Err(bad());
        }
        Ok(t)
    }
}

impl PartialEq for RootedTree {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
    }
}

impl Eq for RootedTree {}

impl Hash for RootedTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state)
    }
}

impl PartialOrd for RootedTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RootedTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code.cmp(&other.code)
    }
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code)
    }
}

impl FromStr for RootedTree {
    type Err = TreeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RootedTree::parse(s)
    }
}

impl serde::Serialize for RootedTree {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.code)
    }
}

type TreeTable = RwLock<HashMap<usize, Arc<Vec<RootedTree>>>>;

fn table() -> &'static TreeTable {
    static TABLE: OnceLock<TreeTable> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// All rooted trees with `n` vertices, sorted by encoding. Empty for `n = 0`.
pub fn enumerate_rooted_trees(n: usize) -> Arc<Vec<RootedTree>> {
    if let Some(v) = table().read().unwrap().get(&n) {
        return v.clone();
    }
    let trees = if n == 0 {
        Vec::new()
    } else {
        // multisets of subtrees with total size n - 1, listed in nonincreasing order
        let pool: Vec<RootedTree> = (1..n)
            .flat_map(|k| enumerate_rooted_trees(k).iter().cloned().collect::<Vec<_>>())
            .collect();
        let mut out = Vec::new();
        fn extend(
            pool: &[RootedTree],
            start: usize,
            remaining: usize,
            acc: &mut Vec<RootedTree>,
            out: &mut Vec<RootedTree>,
        ) {
            if remaining == 0 {
                out.push(RootedTree::graft(acc.clone()));
                return;
            }
            for i in start..pool.len() {
                let s = pool[i].size();
                if s <= remaining {
                    acc.push(pool[i].clone());
                    extend(pool, i, remaining - s, acc, out);
                    acc.pop();
                }
            }
        }
        extend(&pool, 0, n - 1, &mut Vec::new(), &mut out);
        out.sort();
        out
    };
    let trees = Arc::new(trees);
    table().write().unwrap().insert(n, trees.clone());
    trees
}

/// All rooted trees with between 1 and `n` vertices, by size then encoding.
pub fn trees_up_to(n: usize) -> Vec<RootedTree> {
    (1..=n).flat_map(|k| enumerate_rooted_trees(k).iter().cloned().collect::<Vec<_>>()).collect()
}
