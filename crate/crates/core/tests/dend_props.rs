mod support;

use support::properties::run;

const CASES: u32 = 100;

#[test]
fn dendriform_axioms() {
    run("dendriform_axioms", CASES).unwrap();
}

#[test]
fn vee_star() {
    run("vee_star", CASES).unwrap();
}

#[test]
fn double_inversion() {
    run("double_inversion", CASES).unwrap();
}

#[test]
fn diamond_of_a_join() {
    run("diamond_of_a_join", CASES).unwrap();
}

#[test]
fn bar_relations() {
    run("bar_relations", CASES).unwrap();
}

#[test]
fn phi_commutes_with_suspension_and_composition() {
    run("phi_suspension_composition", CASES).unwrap();
}

#[test]
fn small_flows_and_unit_exit_are_canopy_constant() {
    run("canopy_constancy_sD_sF", CASES).unwrap();
}

#[test]
fn sym_is_a_subalgebra() {
    run("sym_subalgebra", CASES).unwrap();
}

#[test]
fn every_property_is_named() {
    for name in support::properties::NAMES {
        assert!(run(name, 1).is_ok(), "{name}");
    }
    assert!(run("nonexistent", 1).is_err());
}
