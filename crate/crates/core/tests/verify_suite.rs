use flowseries::verify::*;

#[test]
fn degree_one_suite_passes() {
    let config = SuiteConfig { degree: 1, t_order: 4, ..Default::default() };
    let checks = run_theorem_suite(&config);
    assert!(!checks.is_empty());
    for c in &checks {
        assert_eq!(c.status, CheckStatus::ProvedPass, "{c:?}");
    }
}

#[test]
fn corrupted_linear_tree_is_caught() {
    let config = SuiteConfig { degree: 3, t_order: 4, fault: Some(Fault::CorruptLinearTwo), ..Default::default() };
    let checks = run_theorem_suite(&config);
    let master = checks.iter().find(|c| c.id == "master_eq_E").unwrap();
    assert_eq!(master.status, CheckStatus::ProvedFail);
    assert_eq!(master.witness.as_deref(), Some("(())"));
    let report = Report { degree: 3, t_order: 4, seed: 0, checks };
    assert_eq!(report.exit_code(), 1);
}

#[test]
fn report_order_and_statuses_are_stable() {
    let config = SuiteConfig { degree: 3, t_order: 4, ..Default::default() };
    let a: Vec<_> = run_theorem_suite(&config).into_iter().map(|c| (c.id, c.status, c.witness)).collect();
    let b: Vec<_> = run_theorem_suite(&config).into_iter().map(|c| (c.id, c.status, c.witness)).collect();
    assert_eq!(a, b);
}

#[test]
fn small_conjecture_scan_and_json() {
    let checks = run_conjecture_scan(&ConjectureLimits::capped(4));
    assert!(checks.iter().all(|c| c.status == CheckStatus::ConjectureConsistent), "{checks:?}");
    let report = Report { degree: 4, t_order: 8, seed: 1, checks };
    assert_eq!(report.exit_code(), 0);
    let json = report.to_json();
    assert_eq!(json["checks"][0]["status"], "conjecture-consistent");
    assert!(json["checks"][0]["wall_time_ms"].is_number());
}
