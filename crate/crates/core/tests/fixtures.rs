use std::fs;
use std::path::PathBuf;

use modlie::families::{verify_expectation_file, verify_lemma_fixture, FixtureBundle};
use modlie::report::{Report, Status};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[test]
fn bundles_are_discovered_and_load() {
    assert_eq!(FixtureBundle::discover(&fixtures()), ["br2", "osp12"]);
    let b = FixtureBundle::load(&fixtures().join("br2")).unwrap();
    assert_eq!(b.cocycles.keys().collect::<Vec<_>>(), ["delta", "rho"]);
    assert_eq!(b.digests.len(), 4);
    assert!(b.digests.values().all(|d| d.len() == 64));
}

#[test]
fn br2_deformations_are_conditional_passes() {
    for key in ["rho", "delta"] {
        let r = verify_lemma_fixture(&fixtures().join("br2"), key).unwrap();
        assert_eq!(r.status, Status::ConditionalPass, "{}", r.render_text());
        assert!(r.checks.iter().any(|c| c.name.starts_with("flipped: ")));
        assert_eq!(r.target, format!("fixture:br2:{key}"));
    }
}

#[test]
fn odd_deformation_of_osp12() {
    let r = verify_lemma_fixture(&fixtures().join("osp12"), "tau").unwrap();
    assert_eq!(r.status, Status::ConditionalPass, "{}", r.render_text());
}

#[test]
fn missing_cocycle_key_is_an_input_error() {
    assert!(verify_lemma_fixture(&fixtures().join("br2"), "nope").is_err());
}

#[test]
fn standalone_expectation_file_with_a_wrong_sign_fails() {
    let dir = tempfile::tempdir().unwrap();
    let src = fixtures().join("br2");
    for f in ["algebra.json", "cocycle_rho.json"] {
        fs::copy(src.join(f), dir.path().join(f)).unwrap();
    }
    let write = |value: &str| {
        let path = dir.path().join("expect.json");
        let text = serde_json::json!({
            "algebra": "br(2;1) + lambda*c_rho",
            "algebra_file": "algebra.json",
            "cocycle": "rho",
            "entries": [
                {"element": "h1", "value": "h1"},
                {"element": "h2", "value": "h2"},
                {"element": "y3", "value": value},
            ],
            "rest_zero": true,
        });
        fs::write(&path, text.to_string()).unwrap();
        verify_expectation_file(&path).unwrap()
    };
    let good = write("2*lambda*h1 + lambda*h2");
    assert_eq!(good.status, Status::ConditionalPass);
    let bad = write("-2*lambda*h1 + lambda*h2");
    assert_eq!(bad.status, Status::Fail);
    let names: Vec<_> = bad.mismatches().map(|c| c.name.clone()).collect();
    assert_eq!(names, ["y3^[3]"]);
    let back = Report::from_json(&bad.to_json()).unwrap();
    assert_eq!(back.render_text(), bad.render_text());
}
