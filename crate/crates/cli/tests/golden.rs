//! Pinned JSON outputs for small degrees. Set `FLOWSERIES_UPDATE_GOLDEN=1`
//! to rewrite them.

use std::path::PathBuf;
use std::process::Command;

use flowseries::trees::fork;

fn cases() -> Vec<(&'static str, Vec<String>)> {
    let frk = fork(2, 2).unwrap().code().to_string();
    let args = |s: &str| s.split_whitespace().map(String::from).collect::<Vec<_>>();
    vec![
        ("trees_4", args("trees --size 4")),
        ("pbtrees_3", args("trees --size 3 --planar")),
        ("flow_fork", vec!["-M".into(), "4".into(), "flow".into(), "--tree".into(), frk]),
        ("series_E_t_4", args("-N 4 series --name E_t")),
        ("series_D_t_4", args("-N 4 series --name D_t")),
        ("series_Ec_t_3", args("-N 3 -M 6 series --name Ec_t")),
        ("series_F_4", args("-N 4 series --name F")),
        ("series_Y_4", args("-N 4 series --name Y")),
        ("series_Z_4", args("-N 4 series --name Z")),
        ("series_H2_4", args("-N 4 series --name H:2")),
        ("series_Crls_4", args("-N 4 series --name Crls")),
        ("dend_sD_t_3", args("-N 3 dend --name sD_t")),
        ("dend_sE_t_3", args("-N 3 dend --name sE_t")),
        ("dend_sF_4", args("-N 4 dend --name sF")),
        ("dend_R_4", args("-N 4 dend --name R")),
        ("phi_Crls_4", args("-N 4 phi --name Crls")),
        ("idempotent_D_4", args("idempotent --family D --n 4")),
        ("idempotent_F_3", args("idempotent --family F --n 3")),
        ("idempotent_F_t_3", args("idempotent --family F_t --n 3")),
        ("idempotent_Z_4", args("idempotent --family Z --n 4")),
        ("dyck_4", args("dyck --n 4")),
    ]
}

fn run(args: &[String]) -> serde_json::Value {
    let out = Command::new(env!("CARGO_BIN_EXE_flowseries"))
        .args(["-f", "json"])
        .args(args)
        .env_remove("FLOWSERIES_DEGREE")
        .env_remove("FLOWSERIES_ORDER")
        .env_remove("FLOWSERIES_FORMAT")
        .output()
        .unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn golden_outputs() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("FLOWSERIES_UPDATE_GOLDEN").is_some();
    for (name, args) in cases() {
        let got = run(&args);
        let path = dir.join(format!("{name}.json"));
        if update {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, serde_json::to_string_pretty(&got).unwrap() + "\n").unwrap();
            continue;
        }
        let want: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn env_overrides_defaults() {
    let out = Command::new(env!("CARGO_BIN_EXE_flowseries"))
        .args(["series", "--name", "Crls"])
        .env("FLOWSERIES_DEGREE", "2")
        .env("FLOWSERIES_FORMAT", "csv")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "tree,value\n(),1\n(()),1\n");
}

#[test]
fn bad_input_gives_one_line_and_nonzero_exit() {
    for args in [vec!["flow", "--tree", "(()"], vec!["dend", "--name", "sQ"], vec!["-N", "0", "series", "--name", "E"]] {
        let out = Command::new(env!("CARGO_BIN_EXE_flowseries")).args(&args).output().unwrap();
        assert!(!out.status.success(), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    }
}

#[test]
fn verify_reports_injected_fault() {
    let out = Command::new(env!("CARGO_BIN_EXE_flowseries"))
        .args(["-f", "json", "-N", "3", "-M", "4", "verify", "--theorems", "--fault", "corrupt-linear-two"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let master = report["checks"].as_array().unwrap().iter().find(|c| c["id"] == "master_eq_E").unwrap();
    assert_eq!(master["status"], "proved-identity-FAIL");
    assert_eq!(master["witness"], "(())");
}
