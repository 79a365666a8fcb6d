//! Rooted trees, planar binary trees, `±` words and Dyck paths.

mod dyck;
mod families;
mod pbtree;
mod rooted;
mod surgery;
mod word;

pub use dyck::{DyckPath, DyckStructure};
pub use families::{as_corolla, as_linear, corolla, fork, linear, Family};
pub use pbtree::{enumerate_pbtrees, PBTree, MAX_PB_DEGREE};
pub use rooted::{enumerate_rooted_trees, trees_up_to, RootedTree, VertexPath};
pub use surgery::{surgery, SurgeryContext};
pub use word::{Letter, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("malformed encoding {0:?}")]
    Malformed(String),
    #[error("no vertex at {0:?}")]
    NoSuchVertex(Vec<usize>),
    #[error("{upper:?} -> {lower:?} is not an edge")]
    NotAnEdge { upper: Vec<usize>, lower: Vec<usize> },
    #[error("the unit tree has no canopy")]
    UnitTree,
    #[error("{0:?} is not a Dyck word")]
    NotDyck(String),
}
