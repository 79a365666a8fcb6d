use std::collections::BTreeMap;

use crate::exactcoeff::{rat, BPoly, TruncatedTSeries};
use crate::trees::{RootedTree, VertexPath};

use super::FlowError;

/// Index-based view of a rooted tree, vertices numbered in preorder.
#[derive(Debug, Clone)]
pub struct Shape {
    pub parent: Vec<Option<usize>>,
    pub is_leaf: Vec<bool>,
    pub paths: Vec<VertexPath>,
}

impl Shape {
    pub fn of(t: &RootedTree) -> Shape {
        let paths = t.vertices();
        let parent = t.parent_array();
        let mut is_leaf = vec![true; paths.len()];
        for p in parent.iter().flatten() {
            is_leaf[*p] = false;
        }
        Shape { parent, is_leaf, paths }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn index_of(&self, path: &[usize]) -> Option<usize> {
        self.paths.iter().position(|p| p == path)
    }
}

/// Flow families counted by the generating functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlowClass {
    All,
    /// Root is neither an output nor an input.
    Small,
    /// Exit rate zero.
    Closed,
    /// Every edge has positive rate.
    Connected,
    ClosedConnected,
    /// Connected with exit rate exactly one.
    ConnectedUnitExit,
    /// Closed, connected, and every non-leaf vertex is an output.
    Saturated,
}

impl FlowClass {
    pub fn parse(s: &str) -> Option<FlowClass> {
        Some(match s {
            "all" => FlowClass::All,
            "small" => FlowClass::Small,
            "closed" => FlowClass::Closed,
            "connected" => FlowClass::Connected,
            "closed-connected" => FlowClass::ClosedConnected,
            "unit-exit" => FlowClass::ConnectedUnitExit,
            "saturated" => FlowClass::Saturated,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            FlowClass::All => "all",
            FlowClass::Small => "small",
            FlowClass::Closed => "closed",
            FlowClass::Connected => "connected",
            FlowClass::ClosedConnected => "closed-connected",
            FlowClass::ConnectedUnitExit => "unit-exit",
            FlowClass::Saturated => "saturated",
        }
    }

    pub fn contains(self, shape: &Shape, v: &FlowView<'_>) -> bool {
        match self {
            FlowClass::All => true,
            FlowClass::Small => !v.outputs[0] && v.inputs[0] == 0,
            FlowClass::Closed => v.exit_rate() == 0,
            FlowClass::Connected => component_count(shape, v.rates) == 1,
            FlowClass::ClosedConnected => v.exit_rate() == 0 && component_count(shape, v.rates) == 1,
            FlowClass::ConnectedUnitExit => v.exit_rate() == 1 && component_count(shape, v.rates) == 1,
            FlowClass::Saturated => {
                v.exit_rate() == 0
                    && component_count(shape, v.rates) == 1
                    && (0..shape.len()).all(|i| shape.is_leaf[i] || v.outputs[i])
            }
        }
    }
}

/// Borrowed flow data produced during enumeration.
#[derive(Debug, Clone, Copy)]
pub struct FlowView<'a> {
    pub outputs: &'a [bool],
    pub inputs: &'a [u32],
    /// Outgoing rate of every vertex; the root's is the exit rate.
    pub rates: &'a [u32],
}

impl FlowView<'_> {
    pub fn size(&self) -> usize {
        self.outputs.iter().filter(|&&o| o).count()
    }

    pub fn exit_rate(&self) -> u32 {
        self.rates[0]
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Component label (smallest preorder index) for every vertex, joining
/// the two ends of each edge with positive rate.
pub fn components(shape: &Shape, rates: &[u32]) -> Vec<usize> {
    let mut uf = UnionFind::new(shape.len());
    for (v, p) in shape.parent.iter().enumerate() {
        if let Some(p) = p {
            if rates[v] > 0 {
                uf.union(v, *p);
            }
        }
    }
    (0..shape.len()).map(|v| uf.find(v)).collect()
}

pub fn component_count(shape: &Shape, rates: &[u32]) -> usize {
    let labels = components(shape, rates);
    labels.iter().enumerate().filter(|&(v, &l)| v == l).count()
}

/// A flow on a fixed carrier tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Flow {
    pub carrier: RootedTree,
    /// Output flag per vertex, preorder.
    pub outputs: Vec<bool>,
    /// Input multiplicity per vertex, preorder.
    pub inputs: Vec<u32>,
    /// Outgoing rate per vertex, preorder.
    pub rates: Vec<u32>,
}

impl Flow {
    pub fn view(&self) -> FlowView<'_> {
        FlowView {
            outputs: &self.outputs,
            inputs: &self.inputs,
            rates: &self.rates,
        }
    }

    pub fn size(&self) -> usize {
        self.view().size()
    }

    pub fn exit_rate(&self) -> u32 {
        self.rates[0]
    }

    pub fn is_in(&self, class: FlowClass) -> bool {
        class.contains(&Shape::of(&self.carrier), &self.view())
    }

    /// Rebuild from per-vertex data given by preorder index.
    pub fn from_indices(t: &RootedTree, outputs: Vec<bool>, inputs: Vec<u32>) -> Result<Flow, FlowError> {
        let shape = Shape::of(t);
        let n = shape.len();
        if outputs.len() != n || inputs.len() != n {
            return Err(FlowError::WrongLength { expected: n });
        }
        if let Some(v) = (0..n).find(|&v| outputs[v] && inputs[v] > 0) {
            return Err(FlowError::OutputIsInput(shape.paths[v].clone()));
        }
        let mut incoming = vec![0i64; n];
        let mut rates = vec![0u32; n];
        for v in (0..n).rev() {
            let out = incoming[v] + inputs[v] as i64 - outputs[v] as i64;
            if out < 0 {
                return Err(FlowError::NegativeRate(shape.paths[v].clone()));
            }
            rates[v] = out as u32;
            if let Some(p) = shape.parent[v] {
                incoming[p] += out;
            }
        }
        Ok(Flow {
            carrier: t.clone(),
            outputs,
            inputs,
            rates,
        })
    }
}

/// Build a flow from outputs and inputs given by vertex path.
pub fn flow_rates(
    t: &RootedTree,
    outputs: &[VertexPath],
    inputs: &[(VertexPath, u32)],
) -> Result<Flow, FlowError> {
    let shape = Shape::of(t);
    let n = shape.len();
    let mut out = vec![false; n];
    let mut inp = vec![0u32; n];
    for p in outputs {
        let v = shape.index_of(p).ok_or_else(|| FlowError::NoSuchVertex(p.clone()))?;
        out[v] = true;
    }
    for (p, m) in inputs {
        let v = shape.index_of(p).ok_or_else(|| FlowError::NoSuchVertex(p.clone()))?;
        inp[v] += m;
    }
    Flow::from_indices(t, out, inp)
}

/// Visit every flow on `t` with exit rate at most `max_exit`.
///
/// Brute force: every set of non-leaf outputs, then every input multiset on
/// the remaining vertices with total at most `#outputs + max_exit`, keeping
/// the assignments whose rates are all nonnegative.
pub fn for_each_flow(t: &RootedTree, max_exit: u32, mut visit: impl FnMut(&Shape, FlowView<'_>)) {
    let shape = Shape::of(t);
    let n = shape.len();
    let nonleaf: Vec<usize> = (0..n).filter(|&v| !shape.is_leaf[v]).collect();
    let mut outputs = vec![false; n];
    let mut inputs = vec![0u32; n];
    let mut rates = vec![0u32; n];
    let mut incoming = vec![0u32; n];
    for mask in 0u64..(1u64 << nonleaf.len()) {
        outputs.iter_mut().for_each(|o| *o = false);
        for (j, &v) in nonleaf.iter().enumerate() {
            if mask >> j & 1 == 1 {
                outputs[v] = true;
            }
        }
        let budget = mask.count_ones() + max_exit;
        assign(
            &shape,
            n,
            budget,
            &outputs,
            &mut inputs,
            &mut rates,
            &mut incoming,
            &mut visit,
        );
    }
}

// vertices are assigned in reverse preorder, so children come before parents
#[allow(clippy::too_many_arguments)]
fn assign(
    shape: &Shape,
    remaining: usize,
    budget: u32,
    outputs: &[bool],
    inputs: &mut [u32],
    rates: &mut [u32],
    incoming: &mut [u32],
    visit: &mut impl FnMut(&Shape, FlowView<'_>),
) {
    if remaining == 0 {
        visit(
            shape,
            FlowView {
                outputs,
                inputs,
                rates,
            },
        );
        return;
    }
    let v = remaining - 1;
    let inc = incoming[v];
    let top = if outputs[v] {
        if inc == 0 {
            return;
        }
        0
    } else {
        budget
    };
    for m in 0..=top {
        let out = if outputs[v] { inc - 1 } else { inc + m };
        inputs[v] = m;
        rates[v] = out;
        if let Some(p) = shape.parent[v] {
            incoming[p] += out;
        }
        assign(shape, v, budget - m, outputs, inputs, rates, incoming, visit);
        if let Some(p) = shape.parent[v] {
            incoming[p] -= out;
        }
    }
    inputs[v] = 0;
    rates[v] = 0;
}

/// All flows of a class with exit rate at most `max_exit`.
pub fn enumerate_flows(t: &RootedTree, class: FlowClass, max_exit: u32) -> Vec<Flow> {
    let mut out = Vec::new();
    for_each_flow(t, max_exit, |shape, v| {
        if class.contains(shape, &v) {
            out.push(Flow {
                carrier: t.clone(),
                outputs: v.outputs.to_vec(),
                inputs: v.inputs.to_vec(),
                rates: v.rates.to_vec(),
            });
        }
    });
    out
}

/// Number of flows of a class by (size, exit rate).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlowCounts {
    pub max_exit: u32,
    pub counts: BTreeMap<(usize, u32), u64>,
}

impl FlowCounts {
    pub fn get(&self, size: usize, exit: u32) -> u64 {
        self.counts.get(&(size, exit)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `Σ count(k, i) b^k` for a fixed exit rate `i`.
    pub fn b_polynomial(&self, exit: u32) -> BPoly {
        let deg = self.counts.keys().map(|&(k, _)| k).max().unwrap_or(0);
        BPoly::new((0..=deg).map(|k| rat(self.get(k, exit) as i64)).collect())
    }

    /// The generating function in `b` and `t`, known up to `t^{max_exit}`.
    pub fn series(&self) -> TruncatedTSeries {
        TruncatedTSeries::new((0..=self.max_exit).map(|i| self.b_polynomial(i)).collect())
    }
}

pub fn count_flows(t: &RootedTree, class: FlowClass, max_exit: u32) -> FlowCounts {
    let mut counts = BTreeMap::new();
    for_each_flow(t, max_exit, |shape, v| {
        if class.contains(shape, &v) {
            *counts.entry((v.size(), v.exit_rate())).or_insert(0) += 1;
        }
    });
    FlowCounts { max_exit, counts }
}

/// Counts for several classes in a single pass.
pub fn count_flows_multi(t: &RootedTree, classes: &[FlowClass], max_exit: u32) -> Vec<FlowCounts> {
    let mut tallies = vec![BTreeMap::new(); classes.len()];
    for_each_flow(t, max_exit, |shape, v| {
        for (c, tally) in classes.iter().zip(tallies.iter_mut()) {
            if c.contains(shape, &v) {
                *tally.entry((v.size(), v.exit_rate())).or_insert(0u64) += 1;
            }
        }
    });
    tallies
        .into_iter()
        .map(|counts| FlowCounts { max_exit, counts })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{corolla, linear};

    #[test]
    fn rates() {
        let dot = RootedTree::leaf();
        let f = flow_rates(&dot, &[], &[(vec![], 2)]).unwrap();
        assert_eq!(f.exit_rate(), 2);
        let l2 = linear(2).unwrap();
        let f = flow_rates(&l2, &[vec![]], &[(vec![0], 1)]).unwrap();
        assert_eq!(f.exit_rate(), 0);
        assert_eq!(f.size(), 1);
        assert_eq!(f.rates[1], 1);
        assert!(matches!(
            flow_rates(&l2, &[vec![]], &[]),
            Err(FlowError::NegativeRate(_))
        ));
        assert!(flow_rates(&l2, &[vec![]], &[(vec![], 1)]).is_err());
    }

    #[test]
    fn closed_flow_counts() {
        for n in 1..5 {
            let t = linear(n).unwrap();
            let c = count_flows(&t, FlowClass::Closed, 0);
            assert_eq!(c.get(0, 0), 1);
        }
        let c = count_flows(&linear(3).unwrap(), FlowClass::Closed, 0);
        assert_eq!(c.get(1, 0), 3);
        let c = count_flows(&corolla(2), FlowClass::ClosedConnected, 0);
        assert_eq!(c.total(), 0);
    }

    #[test]
    fn max_size_is_nonleaf_count() {
        let t = RootedTree::parse("((()())())").unwrap();
        let c = count_flows(&t, FlowClass::All, 3);
        let max = c.counts.keys().map(|&(k, _)| k).max().unwrap();
        assert_eq!(max, t.nonleaf_count());
    }
}
