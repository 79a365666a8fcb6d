//! Planar binary trees as a dendriform algebra, its series group, the
//! morphism from rooted trees, and the series of flows written with
//! `±` words.

mod algebra;
mod canopy;
mod identities;
mod named;
mod phi;
mod series;
mod words;

pub use algebra::{dend_basis, tree_prec, tree_star, tree_succ, DendBasis};
pub use canopy::{canopy_coefficient, z_poly, CanopySeries};
pub use identities::{check_comb_identities, check_dend_identities, check_quotient_tail, connected_fractions};
pub use named::{
    all_trees_image, build_dend_named, corolla_image, flows_from_small, left_combs, lift_by_canopy, linear_trees,
    right_combs, CanopyMode, DendFamily, NamedDend,
};
pub use phi::{graft_everywhere, phi, phi_tree, DendTerms};
pub use series::{lift_rational_dend, weighted_left_combs, DendSeries};
pub use words::{narayana, narayana_t, WordFamily, WordSeries};

use thiserror::Error;

use crate::exactcoeff::CoeffError;
use crate::trees::{PBTree, Word};

#[derive(Debug, Clone, Error)]
pub enum DendError {
    #[error("undefined product: {0}")]
    UnitUndefined(&'static str),
    #[error("series truncated at different degrees ({left} and {right})")]
    TruncationMismatch { left: usize, right: usize },
    #[error("coefficient of the single vertex is not invertible")]
    NotInvertible,
    #[error("tree {0} is beyond the truncation degree")]
    OutOfRange(PBTree),
    #[error("coefficient of {0}: {1}")]
    Coefficient(PBTree, CoeffError),
    #[error("coefficient of word {0}: {1}")]
    WordCoefficient(Word, CoeffError),
    #[error("unknown series {0:?}")]
    UnknownSeries(String),
    #[error("the unit tree has no canopy")]
    UnitTree,
}
