//! Randomized dendriform properties, shared by the core property tests and
//! the acceptance harness.

use std::sync::OnceLock;

use flowseries::dend::{phi, DendFamily, DendSeries};
use flowseries::exactcoeff::{rat, FlowFraction, Rational};
use flowseries::prelie::PreLieSeries;
use flowseries::symfun::{ribbon_product, sym_membership, RibbonElement};
use flowseries::trees::{enumerate_pbtrees, PBTree, Word};
use proptest::prelude::*;
use proptest::sample::Index;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const MAX: usize = 5;
// trees of degree <= 5
const DEND_LEN: usize = 65;
// rooted trees with <= 5 vertices
const PRELIE_LEN: usize = 17;

type Check = Result<(), TestCaseError>;

fn dend(n: usize, coeffs: &[i64], unit: bool) -> DendSeries<Rational> {
    let mut s = DendSeries::zero(n);
    for (t, c) in s.trees().to_vec().iter().zip(coeffs) {
        if t.is_leaf() && !unit {
            continue;
        }
        s.set(t, rat(*c)).unwrap();
    }
    s
}

/// Unit-free with coefficient 1 on the single vertex.
fn group_element(n: usize, coeffs: &[i64]) -> DendSeries<Rational> {
    let mut s = dend(n, coeffs, false);
    s.set(&PBTree::single(), rat(1)).unwrap();
    s
}

fn prelie(n: usize, coeffs: &[i64]) -> PreLieSeries<Rational> {
    let mut s = PreLieSeries::zero(n);
    for (i, t) in s.trees().to_vec().iter().enumerate() {
        s.set(t, rat(if t.size() == 1 { 1 } else { coeffs[i] })).unwrap();
    }
    s
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, len)
}

fn family() -> &'static (DendSeries<FlowFraction>, DendSeries<FlowFraction>) {
    static F: OnceLock<(DendSeries<FlowFraction>, DendSeries<FlowFraction>)> = OnceLock::new();
    F.get_or_init(|| {
        let f = DendFamily::build(MAX);
        (f.d_t.at_t0(), f.unit_exit())
    })
}

fn dendriform_axioms((n, a, b, c): (usize, Vec<i64>, Vec<i64>, Vec<i64>)) -> Check {
    let (x, y, z) = (dend(n, &a, false), dend(n, &b, false), dend(n, &c, false));
    prop_assert_eq!(x.prec(&y).unwrap().prec(&z).unwrap(), x.prec(&y.star(&z).unwrap()).unwrap());
    prop_assert_eq!(x.succ(&y).unwrap().prec(&z).unwrap(), x.succ(&y.prec(&z).unwrap()).unwrap());
    prop_assert_eq!(x.star(&y).unwrap().succ(&z).unwrap(), x.succ(&y.succ(&z).unwrap()).unwrap());
    Ok(())
}

fn vee_star((n, a, b, c): (usize, Vec<i64>, Vec<i64>, Vec<i64>)) -> Check {
    let (x, y, z) = (dend(n, &a, true), dend(n, &b, true), dend(n, &c, true));
    prop_assert_eq!(x.vee(&y).unwrap().prec(&z).unwrap(), x.vee(&y.star(&z).unwrap()).unwrap());
    prop_assert_eq!(x.succ(&y.vee(&z).unwrap()).unwrap(), x.star(&y).unwrap().vee(&z).unwrap());
    Ok(())
}

type FiveSeries = (usize, Vec<i64>, Vec<i64>, Vec<i64>, Vec<i64>, Vec<i64>);

fn double_inversion((n, a, b, c, d, e): FiveSeries) -> Check {
    let (x, y, t, u) = (dend(n, &a, true), dend(n, &b, true), dend(n, &d, true), dend(n, &e, true));
    let z = dend(n, &c, false);
    let v = y.vee_over(&z, &t).unwrap();
    let lhs = x.vee_over(&v, &u).unwrap();
    let rhs = x.star(&y).unwrap().vee_over(&z, &t.star(&u).unwrap()).unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

fn diamond_of_a_join((n, a, b, c, d): (usize, Vec<i64>, Vec<i64>, Vec<i64>, Vec<i64>)) -> Check {
    let (x, y) = (dend(n, &a, true), dend(n, &b, true));
    let (z, t) = (dend(n, &c, false), group_element(n, &d));
    let lhs = x.vee(&y).unwrap().diamond(&z, &t).unwrap();
    let rhs = x.compose(&t).unwrap().vee_over(&z, &y.compose(&t).unwrap()).unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

fn bar_relations((n, a, b): (usize, Vec<i64>, Vec<i64>)) -> Check {
    let (x, y) = (dend(n, &a, false), dend(n, &b, false));
    prop_assert_eq!(x.bar().bar(), x.clone());
    prop_assert_eq!(x.prec(&y).unwrap().bar(), y.bar().succ(&x.bar()).unwrap().neg());
    prop_assert_eq!(x.star(&y).unwrap().bar(), y.bar().star(&x.bar()).unwrap().neg());
    prop_assert_eq!(x.vee(&y).unwrap().bar(), y.bar().vee(&x.bar()).unwrap());
    let (s, t) = (group_element(n, &a), group_element(n, &b));
    prop_assert_eq!(s.compose(&t).unwrap().bar(), s.bar().compose(&t.bar()).unwrap());
    Ok(())
}

fn phi_suspension_composition((n, a, b): (usize, Vec<i64>, Vec<i64>)) -> Check {
    let (s, t) = (prelie(n, &a), prelie(n, &b));
    prop_assert_eq!(phi(&s.suspension()), phi(&s).suspension());
    prop_assert_eq!(phi(&s.compose(&t).unwrap()), phi(&s).compose(&phi(&t)).unwrap());
    prop_assert_eq!(phi(&s.inverse().unwrap()), phi(&s).inverse().unwrap());
    Ok(())
}

fn canopy_constancy((n, i, j): (usize, Index, Index)) -> Check {
    let trees = enumerate_pbtrees(n);
    let first = trees[i.index(trees.len())];
    let canopy = first.canopy().unwrap();
    let fiber: Vec<PBTree> = trees.iter().copied().filter(|t| t.canopy().unwrap() == canopy).collect();
    let second = fiber[j.index(fiber.len())];
    let (d, f) = family();
    prop_assert_eq!(d.get(&first), d.get(&second));
    prop_assert_eq!(f.get(&first), f.get(&second));
    prop_assert!(sym_membership(d, n).is_ok());
    prop_assert!(sym_membership(f, n).is_ok());
    Ok(())
}

fn sym_subalgebra((p, q, a, b): (usize, usize, Vec<i64>, Vec<i64>)) -> Check {
    let ribbon = |deg: usize, c: &[i64]| {
        let mut x = RibbonElement::<Rational>::zero(deg);
        for (w, v) in Word::all(deg - 1).into_iter().zip(c) {
            x.set(w, rat(*v)).unwrap();
        }
        x
    };
    let (x, y) = (ribbon(p, &a), ribbon(q, &b));
    let lhs = x.embed(MAX).star(&y.embed(MAX)).unwrap();
    prop_assert_eq!(lhs, ribbon_product(&x, &y).embed(MAX));
    Ok(())
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config { cases, failure_persistence: None, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Check) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

/// Names of the properties, in run order.
pub const NAMES: &[&str] = &[
    "dendriform_axioms",
    "vee_star",
    "double_inversion",
    "diamond_of_a_join",
    "bar_relations",
    "phi_suspension_composition",
    "canopy_constancy_sD_sF",
    "sym_subalgebra",
];

/// Runs one property on `cases` deterministic random inputs.
pub fn run(name: &str, cases: u32) -> Result<(), String> {
    let deg = 1..=MAX;
    match name {
        "dendriform_axioms" => check(cases, (deg, coeffs(DEND_LEN), coeffs(DEND_LEN), coeffs(DEND_LEN)), dendriform_axioms),
        "vee_star" => check(cases, (deg, coeffs(DEND_LEN), coeffs(DEND_LEN), coeffs(DEND_LEN)), vee_star),
        "double_inversion" => check(
            cases,
            (deg, coeffs(DEND_LEN), coeffs(DEND_LEN), coeffs(DEND_LEN), coeffs(DEND_LEN), coeffs(DEND_LEN)),
            double_inversion,
        ),
        "diamond_of_a_join" => check(
            cases,
            (deg, coeffs(DEND_LEN), coeffs(DEND_LEN), coeffs(DEND_LEN), coeffs(DEND_LEN)),
            diamond_of_a_join,
        ),
        "bar_relations" => check(cases, (deg, coeffs(DEND_LEN), coeffs(DEND_LEN)), bar_relations),
        "phi_suspension_composition" => check(cases, (deg, coeffs(PRELIE_LEN), coeffs(PRELIE_LEN)), phi_suspension_composition),
        "canopy_constancy_sD_sF" => check(cases, (deg, any::<Index>(), any::<Index>()), canopy_constancy),
        "sym_subalgebra" => check(cases, (1usize..=3, 1usize..=2, coeffs(4), coeffs(2)), sym_subalgebra),
        _ => Err(format!("no property {name}")),
    }
}
