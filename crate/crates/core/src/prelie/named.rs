use std::fmt;
use std::str::FromStr;

use crate::exactcoeff::{rat, BPoly, Coefficient, FlowFraction, Rational, TruncatedTSeries};
use crate::flows::{connected_flows_series, flows_gf, small_flows_gf};
use crate::trees::{as_corolla, RootedTree};

use super::{PreLieError, PreLieSeries};

/// `H_k`: coefficient `k^{#T-1}` on every tree.
pub fn h_series(k: i64, degree: usize) -> PreLieSeries<Rational> {
    PreLieSeries::from_fn(degree, |t| num_traits::pow(rat(k), t.size() - 1))
}

/// `Σ T / aut(T)`.
pub fn all_trees(degree: usize) -> PreLieSeries<Rational> {
    h_series(1, degree)
}

/// Sum of all corollas, each with coefficient 1.
pub fn corollas(degree: usize) -> PreLieSeries<Rational> {
    PreLieSeries::from_fn(degree, |t| if as_corolla(t).is_some() { rat(1) } else { rat(0) })
}

/// Generating functions of all flows.
pub fn flows_series(degree: usize) -> PreLieSeries<FlowFraction> {
    PreLieSeries::from_fn(degree, flows_gf)
}

/// Generating functions of small flows.
pub fn small_flows_series(degree: usize) -> PreLieSeries<FlowFraction> {
    PreLieSeries::from_fn(degree, small_flows_gf)
}

/// Connected flows, expanded to `t^order`.
pub fn connected_series(degree: usize, order: usize) -> PreLieSeries<TruncatedTSeries> {
    PreLieSeries::from_fn(degree, |t| connected_flows_series(t, order as u32))
}

/// Closed connected flows (the value of [`connected_series`] at `t = 0`).
pub fn closed_connected_series(degree: usize) -> PreLieSeries<BPoly> {
    PreLieSeries::from_fn(degree, closed_connected)
}

fn closed_connected(t: &RootedTree) -> BPoly {
    connected_flows_series(t, 0).coeff(0)
}

fn div_b(t: &RootedTree, p: &BPoly) -> Result<BPoly, PreLieError> {
    if !p.coeff(0).is_zero() {
        return Err(PreLieError::NotDivisibleByB(t.clone()));
    }
    Ok(p.div_rem(&BPoly::b()).0)
}

/// The series `F` with closed connected flows `= • + b (• ↶ F)`, read off
/// from closed connected flows on `B+(T)`.
pub fn unit_exit_series(degree: usize) -> Result<PreLieSeries<BPoly>, PreLieError> {
    let mut out = PreLieSeries::zero(degree);
    let trees = out.trees().to_vec();
    for t in &trees {
        let grafted = RootedTree::graft(vec![t.clone()]);
        out.set(t, div_b(&grafted, &closed_connected(&grafted))?)?;
    }
    Ok(out)
}

/// `Y = E ∘ D^{-1}` at `t = 0`.
pub fn quotient_series(degree: usize) -> Result<PreLieSeries<BPoly>, PreLieError> {
    let e = PreLieSeries::from_fn(degree, |t| flows_gf(t).eval_t0());
    let d = PreLieSeries::from_fn(degree, |t| small_flows_gf(t).eval_t0());
    e.compose(&d.inverse()?)
}

/// `Z` with `Y = • + b (• ↶ Z)`.
pub fn z_series(degree: usize) -> Result<PreLieSeries<BPoly>, PreLieError> {
    let y = quotient_series(degree + 1)?;
    let mut out = PreLieSeries::zero(degree);
    let trees = out.trees().to_vec();
    for t in &trees {
        let grafted = RootedTree::graft(vec![t.clone()]);
        let v = y.get(&grafted).expect("grafted tree within degree");
        out.set(t, div_b(&grafted, v)?)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedSeries {
    H(i64),
    Corollas,
    Flows,
    SmallFlows,
    ConnectedFlows,
    ClosedFlows,
    ClosedSmallFlows,
    ClosedConnected,
    UnitExit,
    Quotient,
    QuotientTail,
}

impl NamedSeries {
    pub const NAMES: &'static [&'static str] =
        &["H:k", "Crls", "E_t", "D_t", "Ec_t", "E", "D", "Ec", "F", "Y", "Z"];
}

impl FromStr for NamedSeries {
    type Err = PreLieError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use NamedSeries::*;
        Ok(match s {
            "Crls" => Corollas,
            "E_t" => Flows,
            "D_t" => SmallFlows,
            "Ec_t" => ConnectedFlows,
            "E" => ClosedFlows,
            "D" => ClosedSmallFlows,
            "Ec" => ClosedConnected,
            "F" => UnitExit,
            "Y" => Quotient,
            "Z" => QuotientTail,
            _ => match s.strip_prefix("H:").map(str::parse) {
                Some(Ok(k)) => H(k),
                _ => return Err(PreLieError::UnknownName(s.to_string())),
            },
        })
    }
}

impl fmt::Display for NamedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use NamedSeries::*;
        match self {
            H(k) => write!(f, "H:{k}"),
            Corollas => f.write_str("Crls"),
            Flows => f.write_str("E_t"),
            SmallFlows => f.write_str("D_t"),
            ConnectedFlows => f.write_str("Ec_t"),
            ClosedFlows => f.write_str("E"),
            ClosedSmallFlows => f.write_str("D"),
            ClosedConnected => f.write_str("Ec"),
            UnitExit => f.write_str("F"),
            Quotient => f.write_str("Y"),
            QuotientTail => f.write_str("Z"),
        }
    }
}

/// A series over whichever coefficient ring it naturally lives in.
#[derive(Debug, Clone)]
pub enum SeriesValue {
    Rational(PreLieSeries<Rational>),
    BPoly(PreLieSeries<BPoly>),
    Fraction(PreLieSeries<FlowFraction>),
    TSeries(PreLieSeries<TruncatedTSeries>),
}

impl SeriesValue {
    pub fn to_wire(&self) -> serde_json::Value {
        match self {
            SeriesValue::Rational(s) => s.to_wire(),
            SeriesValue::BPoly(s) => s.to_wire(),
            SeriesValue::Fraction(s) => s.to_wire(),
            SeriesValue::TSeries(s) => s.to_wire(),
        }
    }

    /// `(tree code, displayed value)` rows.
    pub fn rows(&self) -> Vec<(String, String)> {
        fn rows<R: Coefficient>(s: &PreLieSeries<R>) -> Vec<(String, String)> {
            s.iter().map(|(t, v)| (t.code().to_string(), v.to_string())).collect()
        }
        match self {
            SeriesValue::Rational(s) => rows(s),
            SeriesValue::BPoly(s) => rows(s),
            SeriesValue::Fraction(s) => rows(s),
            SeriesValue::TSeries(s) => rows(s),
        }
    }
}

/// Build a named series up to `degree`; `order` is the `t`-precision used
/// where only expansions are available.
pub fn build_named(name: NamedSeries, degree: usize, order: usize) -> Result<SeriesValue, PreLieError> {
    use NamedSeries::*;
    Ok(match name {
        H(k) => SeriesValue::Rational(h_series(k, degree)),
        Corollas => SeriesValue::Rational(corollas(degree)),
        Flows => SeriesValue::Fraction(flows_series(degree)),
        SmallFlows => SeriesValue::Fraction(small_flows_series(degree)),
        ConnectedFlows => SeriesValue::TSeries(connected_series(degree, order)),
        ClosedFlows => SeriesValue::BPoly(flows_series(degree).map(FlowFraction::eval_t0)),
        ClosedSmallFlows => SeriesValue::BPoly(small_flows_series(degree).map(FlowFraction::eval_t0)),
        ClosedConnected => SeriesValue::BPoly(closed_connected_series(degree)),
        UnitExit => SeriesValue::BPoly(unit_exit_series(degree)?),
        Quotient => SeriesValue::BPoly(quotient_series(degree)?),
        QuotientTail => SeriesValue::BPoly(z_series(degree)?),
    })
}
