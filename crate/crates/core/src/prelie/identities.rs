use rayon::prelude::*;
use serde::Serialize;

use crate::exactcoeff::{BPoly, Coefficient, FlowFraction, TCoefficient, TruncatedTSeries};
use crate::flows::{saturated_series, unit_exit_gf};
use crate::trees::RootedTree;

use super::named::{all_trees, connected_series, corollas, flows_series, quotient_series, small_flows_series};
use super::{lift_rational, PreLieError, PreLieSeries};

/// Outcome of one coefficientwise identity, with the first tree (in basis
/// order) where it breaks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    pub witness: Option<String>,
    pub detail: Option<String>,
}

impl IdentityCheck {
    pub fn new(name: &str, witness: Option<String>, detail: Option<String>) -> Self {
        IdentityCheck {
            name: name.to_string(),
            holds: witness.is_none() && detail.is_none(),
            witness,
            detail,
        }
    }

    pub fn failed(name: &str, detail: String) -> Self {
        IdentityCheck {
            name: name.to_string(),
            holds: false,
            witness: None,
            detail: Some(detail),
        }
    }

    fn compare<R: Coefficient>(name: &str, lhs: &PreLieSeries<R>, rhs: &PreLieSeries<R>) -> Self {
        let witness = lhs.first_difference(rhs);
        let detail = witness.as_ref().map(|t| {
            format!("{} vs {}", lhs.get(t).expect("in range"), rhs.get(t).expect("in range"))
        });
        IdentityCheck {
            name: name.to_string(),
            holds: witness.is_none(),
            witness: witness.map(|t| t.code().to_string()),
            detail,
        }
    }

    fn broken(name: &str, err: PreLieError) -> Self {
        let witness = match &err {
            PreLieError::Coefficient(t, _) | PreLieError::OutOfRange(t) | PreLieError::NotDivisibleByB(t) => {
                Some(t.code().to_string())
            }
            _ => None,
        };
        IdentityCheck {
            name: name.to_string(),
            holds: false,
            witness,
            detail: Some(err.to_string()),
        }
    }
}

/// The flow series the identities are stated on. Fields are public so that
/// callers can perturb them.
#[derive(Debug, Clone)]
pub struct FlowBundle {
    pub degree: usize,
    pub order: usize,
    pub flows: PreLieSeries<FlowFraction>,
    pub small: PreLieSeries<FlowFraction>,
    pub connected: PreLieSeries<TruncatedTSeries>,
    /// Unit-exit polynomials from the flow recursion, one degree lower.
    pub unit_exit: PreLieSeries<BPoly>,
}

impl FlowBundle {
    pub fn build(degree: usize, order: usize) -> Self {
        FlowBundle {
            degree,
            order,
            flows: flows_series(degree),
            small: small_flows_series(degree),
            connected: connected_series(degree, order),
            unit_exit: PreLieSeries::from_fn(degree.saturating_sub(1).max(1), unit_exit_gf),
        }
    }
}

/// Check every global identity on the bundle.
pub fn check_prelie_identities(x: &FlowBundle) -> Vec<IdentityCheck> {
    let checks: Vec<fn(&FlowBundle) -> IdentityCheck> = vec![
        corolla_insertion,
        master_equation,
        connected_equation,
        root_insertion_of_connected,
        closed_gluing,
        connected_from_unit_exit,
    ];
    checks.par_iter().map(|c| c(x)).collect()
}

fn corolla_insertion(x: &FlowBundle) -> IdentityCheck {
    let name = "small_flows_from_corollas";
    let crls = lift_rational::<FlowFraction>(&corollas(x.degree));
    let unit = PreLieSeries::unit(x.degree);
    match crls.diamond(&unit, &x.flows) {
        Ok(rhs) => IdentityCheck::compare(name, &x.small, &rhs),
        Err(e) => IdentityCheck::broken(name, e),
    }
}

fn master_equation(x: &FlowBundle) -> IdentityCheck {
    let name = "master_eq_E";
    let rhs = || -> Result<PreLieSeries<FlowFraction>, PreLieError> {
        let output_root = x.small.sub(&x.small.at_t0())?.map(TCoefficient::mul_b).div_t()?;
        x.small.map(TCoefficient::over_one_minus_t).add(&output_root)
    };
    match rhs() {
        Ok(rhs) => IdentityCheck::compare(name, &x.flows, &rhs),
        Err(e) => IdentityCheck::broken(name, e),
    }
}

fn connected_equation(x: &FlowBundle) -> IdentityCheck {
    let name = "global_eq_connected";
    let rhs = || -> Result<PreLieSeries<TruncatedTSeries>, PreLieError> {
        let crls = lift_rational::<TruncatedTSeries>(&corollas(x.degree));
        let unit = PreLieSeries::unit(x.degree);
        let open = x.connected.sub(&x.connected.at_t0())?;
        let g = crls.diamond(&unit, &open)?;
        let input_root = g.map(|c| c.truncate(x.order).over_one_minus_t());
        let output_root = g.sub(&unit)?.map(TCoefficient::mul_b).div_t()?;
        input_root.add(&output_root)
    };
    match rhs() {
        Ok(rhs) => IdentityCheck::compare(name, &x.connected, &rhs),
        Err(e) => IdentityCheck::broken(name, e),
    }
}

fn root_insertion_of_connected(x: &FlowBundle) -> IdentityCheck {
    let name = "rela_ect_e";
    let trees = lift_rational::<TruncatedTSeries>(&all_trees(x.degree));
    let lhs = x.flows.map(|f| f.expand(x.order));
    match trees.diamond(&x.connected, &x.connected.at_t0()) {
        Ok(rhs) => IdentityCheck::compare(name, &lhs, &rhs),
        Err(e) => IdentityCheck::broken(name, e),
    }
}

fn closed_gluing(x: &FlowBundle) -> IdentityCheck {
    let name = "flow_is_tree_of_connected";
    let trees = lift_rational::<BPoly>(&all_trees(x.degree));
    let closed = x.flows.map(FlowFraction::eval_t0);
    let closed_connected = x.connected.map(|c| c.coeff(0));
    match trees.compose(&closed_connected) {
        Ok(rhs) => IdentityCheck::compare(name, &closed, &rhs),
        Err(e) => IdentityCheck::broken(name, e),
    }
}

fn connected_from_unit_exit(x: &FlowBundle) -> IdentityCheck {
    let name = "from_EC_to_F";
    let closed_connected = x.connected.map(|c| c.coeff(0));
    let mut rhs = PreLieSeries::unit(x.degree);
    for (t, f) in x.unit_exit.iter() {
        if t.size() < x.degree {
            let grafted = RootedTree::graft(vec![t.clone()]);
            rhs.set(&grafted, f.shift(1)).expect("grafted tree within degree");
        }
    }
    IdentityCheck::compare(name, &closed_connected, &rhs)
}

/// One tree of the scan comparing `Y = E ∘ D^{-1}` with signed saturated
/// flows.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientRow {
    pub tree: String,
    pub value: BPoly,
    pub predicted: BPoly,
    pub matches: bool,
    pub root_valency: usize,
}

pub fn quotient_conjecture_scan(degree: usize) -> Result<Vec<QuotientRow>, PreLieError> {
    let y = quotient_series(degree)?;
    Ok(y.iter()
        .map(|(t, v)| {
            let sat = saturated_series(t);
            let predicted = if t.leaf_count() % 2 == 1 { sat } else { -&sat };
            QuotientRow {
                tree: t.code().to_string(),
                matches: *v == predicted,
                value: v.clone(),
                predicted,
                root_valency: t.root_valency(),
            }
        })
        .collect())
}
