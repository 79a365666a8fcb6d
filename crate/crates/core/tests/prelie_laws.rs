use flowseries::exactcoeff::{rat, Rational};
use flowseries::prelie::{
    check_prelie_identities, h_series, labelled_compose, quotient_conjecture_scan, FlowBundle, PreLieSeries,
};
use flowseries::trees::{linear, RootedTree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_series(rng: &mut ChaCha8Rng, degree: usize) -> PreLieSeries<Rational> {
    let mut s = PreLieSeries::<Rational>::zero(degree);
    let trees = s.trees().to_vec();
    for t in &trees {
        let v = if t.size() == 1 { 1 } else { rng.gen_range(-3..=3) };
        s.set(t, rat(v)).unwrap();
    }
    s
}

fn indicator(degree: usize, t: &RootedTree) -> PreLieSeries<Rational> {
    let mut s = PreLieSeries::zero(degree);
    s.set(t, rat(1)).unwrap();
    s
}

#[test]
fn h_series_form_a_one_parameter_group() {
    for (k, l) in [(1, 1), (2, 3), (1, -1)] {
        let lhs = h_series(k, 6).compose(&h_series(l, 6)).unwrap();
        assert_eq!(lhs, h_series(k + l, 6), "k={k} l={l}");
    }
}

#[test]
fn inverse_of_h_is_h_of_opposite() {
    assert_eq!(h_series(1, 6).inverse().unwrap(), h_series(-1, 6));
    let unit = PreLieSeries::<Rational>::unit(5);
    assert_eq!(unit.inverse().unwrap(), unit);
}

#[test]
fn suspension_of_h() {
    assert_eq!(h_series(1, 6).suspension(), h_series(-1, 6));
    let s = h_series(3, 5);
    assert_eq!(s.suspension().suspension(), s);
}

#[test]
fn degree_two_coefficient() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let s = random_series(&mut rng, 3);
    let t = random_series(&mut rng, 3);
    let lnr2 = linear(2).unwrap();
    let leaf = RootedTree::leaf();
    let st = s.compose(&t).unwrap();
    let expected = s.get(&lnr2).unwrap() * t.get(&leaf).unwrap() * t.get(&leaf).unwrap()
        + s.get(&leaf).unwrap() * t.get(&lnr2).unwrap();
    assert_eq!(st.get(&lnr2).unwrap(), &expected);
}

#[test]
fn group_axioms_on_random_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let s = random_series(&mut rng, 4);
        let t = random_series(&mut rng, 4);
        let u = random_series(&mut rng, 4);
        let unit = PreLieSeries::unit(4);
        assert_eq!(s.compose(&unit).unwrap(), s);
        assert_eq!(unit.compose(&s).unwrap(), s);
        let left = s.compose(&t).unwrap().compose(&u).unwrap();
        let right = s.compose(&t.compose(&u).unwrap()).unwrap();
        assert_eq!(left, right);
    }
    for _ in 0..3 {
        let s = random_series(&mut rng, 5);
        let inv = s.inverse().unwrap();
        assert_eq!(s.compose(&inv).unwrap(), PreLieSeries::unit(5));
        assert_eq!(inv.inverse().unwrap(), s);
    }
}

#[test]
fn diamond_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..3 {
        let s = random_series(&mut rng, 5);
        let t = random_series(&mut rng, 5);
        let u = random_series(&mut rng, 5);
        assert_eq!(s.diamond(&t, &t).unwrap(), s.compose(&t).unwrap());
        assert_eq!(PreLieSeries::unit(5).diamond(&t, &u).unwrap(), t);
    }
    for _ in 0..5 {
        let [s, t, u, v, w] = std::array::from_fn(|_| random_series(&mut rng, 4));
        let lhs = s.diamond(&t, &u).unwrap().diamond(&v, &w).unwrap();
        let rhs = s.diamond(&t.diamond(&v, &w).unwrap(), &u.compose(&w).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn truncation_mismatch_is_reported() {
    assert!(h_series(1, 3).compose(&h_series(1, 4)).is_err());
}

#[test]
fn edge_subsets_match_labelled_substitution_on_basis() {
    let unit = PreLieSeries::<Rational>::unit(4);
    let trees = unit.trees().to_vec();
    for a in &trees {
        for b in &trees {
            let s = indicator(4, a);
            let t = unit.add(&indicator(4, b)).unwrap();
            assert_eq!(s.compose(&t).unwrap(), labelled_compose(&s, &t), "{a} {b}");
            let t = indicator(4, b);
            assert_eq!(s.compose(&t).unwrap(), labelled_compose(&s, &t), "{a} {b}");
        }
    }
}

#[test]
fn edge_subsets_match_labelled_substitution_on_h() {
    for (k, l) in [(1, 1), (2, -1), (3, 2)] {
        let s = h_series(k, 6);
        let t = h_series(l, 6);
        assert_eq!(s.compose(&t).unwrap(), labelled_compose(&s, &t));
    }
}

#[test]
fn global_flow_identities_at_degree_five() {
    let x = FlowBundle::build(5, 8);
    for c in check_prelie_identities(&x) {
        assert!(c.holds, "{c:?}");
    }
}

#[test]
fn quotient_is_signed_saturated_up_to_seven() {
    for row in quotient_conjecture_scan(7).unwrap() {
        assert!(row.matches, "{row:?}");
        if !row.value.is_zero() {
            assert!(row.root_valency <= 1 || row.tree == "()", "{row:?}");
        }
    }
}
