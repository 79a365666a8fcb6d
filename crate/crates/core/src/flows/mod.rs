//! Flows on rooted trees: brute-force enumeration and the recursive
//! computation of their generating functions.

mod connected;
mod dyck_bijection;
mod flow;
mod forks;
mod linear;
mod recursion;

pub use connected::{
    admits_closed_connected, connected_flows_gf, connected_flows_series, min_connected_exit, saturated_series,
    supports_closed_connected, valor,
};
pub use dyck_bijection::{narayana_by_peaks, narayana_via_rho, rho, rho_inverse};
pub use flow::{
    component_count, components, count_flows, count_flows_multi, enumerate_flows, flow_rates,
    for_each_flow, Flow, FlowClass, FlowCounts, FlowView, Shape,
};
pub use forks::{fork_conjecture_check, fork_formula, ForkReport, ForkRow};
pub use linear::{linear_data, linear_ordinary_series_check, LinearData, LinearSeriesReport, SeriesIdentity};
pub use recursion::{
    check_commuting, flows_gf, flows_gf_via, highest_leaf, pull_step, pullable_leaves,
    small_flows_gf, small_flows_gf_via, unit_exit_gf, unit_exit_gf_via, unit_exit_t_gf,
    unit_exit_t_gf_via, PullStep,
};

use thiserror::Error;

use crate::exactcoeff::{CoeffError, FlowFraction};
use crate::trees::{RootedTree, TreeError, VertexPath};

/// Two reduction choices that gave different fractions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inconsistency {
    pub tree: RootedTree,
    pub first_leaf: VertexPath,
    pub other_leaf: VertexPath,
    pub first: FlowFraction,
    pub other: FlowFraction,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("rate out of vertex {0:?} is negative")]
    NegativeRate(VertexPath),
    #[error("vertex {0:?} is both an output and an input")]
    OutputIsInput(VertexPath),
    #[error("no vertex at {0:?}")]
    NoSuchVertex(VertexPath),
    #[error("expected data for {expected} vertices")]
    WrongLength { expected: usize },
    #[error("flow is not closed")]
    NotClosed,
    #[error("{0} is not a linear tree")]
    NotLinear(RootedTree),
    #[error("root of {0} has more than one child")]
    InvalidShape(RootedTree),
    #[error("{0:?} is not a leaf of height at least 2")]
    NotPullable(VertexPath),
    #[error("reductions of {} through {:?} and {:?} disagree: {} vs {}", .0.tree, .0.first_leaf, .0.other_leaf, .0.first, .0.other)]
    Inconsistent(Box<Inconsistency>),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}
