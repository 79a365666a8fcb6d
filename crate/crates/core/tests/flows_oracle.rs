use flowseries::exactcoeff::{count_real_roots, BPoly, FlowFraction, RootInterval};
use flowseries::flows::*;
use flowseries::trees::{corolla, enumerate_rooted_trees, linear, trees_up_to, DyckPath, RootedTree};

const ORDER: u32 = 8;

#[test]
fn recursion_matches_enumeration_up_to_six_vertices() {
    for t in trees_up_to(6) {
        let counts = count_flows_multi(
            &t,
            &[FlowClass::All, FlowClass::Small, FlowClass::ConnectedUnitExit],
            ORDER,
        );
        assert_eq!(flows_gf(&t).expand(ORDER as usize), counts[0].series(), "all flows on {t}");
        assert_eq!(small_flows_gf(&t).expand(ORDER as usize), counts[1].series(), "small flows on {t}");
        assert_eq!(unit_exit_gf(&t), counts[2].b_polynomial(1), "unit exit on {t}");
    }
}

#[test]
fn degree_and_constant_term() {
    for t in trees_up_to(6) {
        let e = flows_gf(&t);
        assert_eq!(e.b_degree(), Some(t.nonleaf_count()), "{t}");
        let constant: Vec<BPoly> = e.numerator().iter().map(|p| BPoly::constant(p.coeff(0))).collect();
        assert_eq!(FlowFraction::new(constant, e.pole()), FlowFraction::geometric(t.size() as u32));
        assert_eq!(e.pole() as usize, t.size());
    }
}

#[test]
fn pulling_a_leaf_up_grows_coefficients() {
    for t in trees_up_to(6) {
        for leaf in pullable_leaves(&t) {
            let s = pull_step(&t, &leaf).unwrap();
            let hi = flows_gf(&t).eval_t0();
            let lo = flows_gf(&s.leaf_on_lower).eval_t0();
            assert!((&hi - &lo).has_nonnegative_coeffs(), "{t} via {leaf:?}");
        }
    }
}

#[test]
fn unit_exit_symmetry_and_positivity() {
    for t in trees_up_to(7) {
        let f = unit_exit_gf(&t);
        assert!(f.has_nonnegative_coeffs(), "{t}");
        assert!(f.is_palindromic_in(t.size() - 1), "{t}: {f}");
    }
}

#[test]
fn unit_exit_t_specializes() {
    for t in trees_up_to(6) {
        let ft = unit_exit_t_gf(&t).unwrap();
        assert_eq!(ft.eval_t0(), unit_exit_gf(&t), "{t}");
    }
}

#[test]
fn valor_is_minimal_exit() {
    for t in trees_up_to(6) {
        assert_eq!(min_connected_exit(&t), Some(valor(&t) as u32), "{t}");
    }
}

#[test]
fn closed_connected_support() {
    for t in trees_up_to(6) {
        let enumerated = count_flows(&t, FlowClass::ClosedConnected, 0).total() > 0;
        assert_eq!(supports_closed_connected(&t), enumerated, "{t}");
        assert_eq!(!saturated_series(&t).is_zero(), enumerated, "{t}");
    }
    assert_eq!(count_flows(&corolla(2), FlowClass::ClosedConnected, 0).total(), 0);
}

#[test]
fn closed_flows_on_linear_trees_are_catalan() {
    for n in 1..=8 {
        let t = linear(n).unwrap();
        let flows = enumerate_flows(&t, FlowClass::Closed, 0);
        assert_eq!(flows.len(), DyckPath::all(n).len());
        let mut comps_ok = true;
        for f in &flows {
            let p = rho(f).unwrap();
            let shape = Shape::of(&t);
            comps_ok &= component_count(&shape, &f.rates) == p.factors().len();
        }
        assert!(comps_ok);
        let via_rho = narayana_via_rho(n).unwrap();
        assert_eq!(via_rho, flows_gf(&t).eval_t0());
        assert_eq!(via_rho, narayana_by_peaks(n));
    }
}

#[test]
fn closed_size_one_is_height_sum() {
    for t in enumerate_rooted_trees(5).iter() {
        let heights: usize = t.vertices().iter().map(Vec::len).sum();
        assert_eq!(count_flows(t, FlowClass::Closed, 0).get(1, 0), heights as u64);
    }
}

#[test]
fn real_roots_small_trees() {
    for t in trees_up_to(6) {
        let e = flows_gf(&t).eval_t0();
        let deg = e.degree().unwrap();
        assert!(count_real_roots(&e, RootInterval::Negative).unwrap() <= deg);
    }
    let leaf = RootedTree::leaf();
    assert_eq!(flows_gf(&leaf).eval_t0(), BPoly::one());
}
