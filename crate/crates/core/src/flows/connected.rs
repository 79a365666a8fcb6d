use crate::exactcoeff::{rat, BPoly, FlowFraction, TruncatedTSeries};
use crate::trees::RootedTree;

use super::flow::{count_flows, FlowClass};
use super::FlowError;

/// Arditti's statistic at the root: 1 on leaves, otherwise
/// `max(1, Σ children - 1)`.
pub fn valor(t: &RootedTree) -> u64 {
    if t.is_leaf() {
        return 1;
    }
    let s: u64 = t.children().iter().map(valor).sum();
    s.saturating_sub(1).max(1)
}

/// Whether `t` carries a closed connected flow. Only meaningful for trees
/// whose root has at most one child; wider roots are rejected.
pub fn admits_closed_connected(t: &RootedTree) -> Result<bool, FlowError> {
    match t.children() {
        [] => Ok(true),
        [top] => Ok(valor(top) == 1),
        _ => Err(FlowError::InvalidShape(t.clone())),
    }
}

/// Total version of [`admits_closed_connected`]: wide roots give `false`.
pub fn supports_closed_connected(t: &RootedTree) -> bool {
    admits_closed_connected(t).unwrap_or(false)
}

/// Saturated flows counted with weight `b^{#non-leaf}`.
pub fn saturated_series(t: &RootedTree) -> BPoly {
    let c = count_flows(t, FlowClass::Saturated, 0).total();
    BPoly::monomial(rat(c as i64), t.nonleaf_count())
}

/// Connected-flow generating function, by enumeration, to `t^order`.
pub fn connected_flows_series(t: &RootedTree, order: u32) -> TruncatedTSeries {
    count_flows(t, FlowClass::Connected, order).series()
}

/// Connected-flow generating function as an exact fraction, recovered
/// from enumeration with pole and numerator degree at most the size.
pub fn connected_flows_gf(t: &RootedTree) -> Result<FlowFraction, FlowError> {
    let n = t.size();
    let series = connected_flows_series(t, (2 * n + 2) as u32);
    Ok(FlowFraction::reconstruct(&series, n as u32, n)?)
}

/// Smallest nonzero exit rate of a connected flow, by enumeration.
pub fn min_connected_exit(t: &RootedTree) -> Option<u32> {
    let c = count_flows(t, FlowClass::Connected, t.size() as u32);
    c.counts.keys().map(|&(_, i)| i).filter(|&i| i > 0).min()
}
