//! The group of series indexed by rooted trees.
//!
//! A series is stored by its normalized coefficients `s_T`, standing for
//! `Σ s_T T / aut(T)`. Composition runs over edge subsets of the target
//! tree; a brute-force labelled substitution is kept as an oracle.

mod basis;
mod identities;
mod labelled;
mod named;
mod series;

pub use basis::{basis, tree_from_parents, Decomposition, PreLieBasis};
pub use identities::{check_prelie_identities, quotient_conjecture_scan, FlowBundle, IdentityCheck, QuotientRow};
pub use labelled::{labelled_compose, reattachment_count};
pub use named::{
    all_trees, build_named, closed_connected_series, connected_series, corollas, flows_series, h_series,
    quotient_series, small_flows_series, unit_exit_series, z_series, NamedSeries, SeriesValue,
};
pub use series::{lift_rational, PreLieSeries};

use thiserror::Error;

use crate::exactcoeff::CoeffError;
use crate::flows::FlowError;
use crate::trees::RootedTree;

#[derive(Debug, Clone, Error)]
pub enum PreLieError {
    #[error("series truncated at different degrees ({left} and {right})")]
    TruncationMismatch { left: usize, right: usize },
    #[error("coefficient of the single vertex is not invertible")]
    NotInvertible,
    #[error("tree {0} is beyond the truncation degree")]
    OutOfRange(RootedTree),
    #[error("coefficient of {0}: {1}")]
    Coefficient(RootedTree, CoeffError),
    #[error("coefficient of {0} is not divisible by b")]
    NotDivisibleByB(RootedTree),
    #[error("unknown series name {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Flow(#[from] FlowError),
}
