use std::path::PathBuf;
use std::process::Command;

use modlie::report::{Report, Status};

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn modlie(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_modlie"))
        .args(args)
        .current_dir(manifest())
        .env_remove("MODLIE_FIXTURES")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn eps_zero_is_an_input_error() {
    let (code, _, err) = modlie(&["verify", "L3", "--eps", "0"]);
    assert_eq!(code, 2);
    assert!(err.contains("eps"), "{err}");
}

#[test]
fn unknown_target_and_bad_json_exit_2() {
    assert_eq!(modlie(&["verify", "nonsense"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("broken.json");
    std::fs::write(&f, "{ not json").unwrap();
    assert_eq!(modlie(&["check-file", f.to_str().unwrap()]).0, 2);
    assert_eq!(modlie(&["pmap", f.to_str().unwrap(), "x"]).0, 2);
    assert_eq!(modlie(&["verify", &format!("file:{}", f.display())]).0, 2);
}

#[test]
fn eq_new_passes() {
    let (code, out, _) = modlie(&[
        "verify", "eq-new", "--p", "3", "--m", "1", "--s", "1", "--json",
    ]);
    assert_eq!(code, 0);
    let r = Report::from_json(&out).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.checks.len(), 3);
}

#[test]
fn l3_report_is_machine_readable_and_names_the_mismatches() {
    let (code, out, _) = modlie(&["verify", "L3", "--symbolic", "--json"]);
    let r = Report::from_json(&out).unwrap();
    assert_eq!(code, if r.status == Status::Fail { 1 } else { 0 });
    assert!(r.checks.iter().any(|c| c.name == "symbolic: y3^[3]"));
    assert!(r.checks.len() > 100);
}

#[test]
fn pmap_of_y4_on_l() {
    let (code, out, _) = modlie(&["pmap", "L", "y4"]);
    assert_eq!(code, 0);
    assert!(out.contains("(y4)^[3]: eps*delta*rho*h1"), "{out}");
    let (code, out, _) = modlie(&["pmap", "L", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("(0)^[3]: 0"), "{out}");
}

#[test]
fn pmap_on_a_non_restricted_algebra_has_no_solution() {
    let (code, out, _) = modlie(&["pmap", "data/vect_1_2.json", "d_u1"]);
    assert_eq!(code, 1);
    assert!(out.contains("no solution"), "{out}");
}

#[test]
fn fixtures_resolve_through_flag_and_env() {
    assert_eq!(modlie(&["verify", "fixture:br2:rho"]).0, 0);
    let empty = tempfile::tempdir().unwrap();
    let flag = [
        "verify",
        "fixture:br2:rho",
        "--fixtures",
        empty.path().to_str().unwrap(),
    ];
    assert_eq!(modlie(&flag).0, 2);
    let out = Command::new(env!("CARGO_BIN_EXE_modlie"))
        .args(["verify", "fixture:osp12:tau"])
        .env("MODLIE_FIXTURES", empty.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fingerprints_of_sp4_and_l_at_minus_one_agree() {
    let (c1, a, _) = modlie(&["fingerprint", "L", "--eps", "-1", "--json"]);
    let (c2, b, _) = modlie(&["fingerprint", "data/sp4.json", "--json"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert_eq!(modlie(&["fingerprint", "data/L_symbolic.json"]).0, 2);
}

#[test]
fn check_file_accepts_each_kind() {
    for f in [
        "data/sp4.json",
        "fixtures/br2/expect.json",
        "fixtures/osp12/algebra.json",
    ] {
        let (code, out, err) = modlie(&["check-file", f]);
        assert_eq!(code, 0, "{f}: {out}{err}");
    }
}
