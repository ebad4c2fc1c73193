//! Shipped data and fixture files are reproducible from code.
//!
//! Run with `MODLIE_REGEN=1` to rewrite them.

use std::fs;
use std::path::{Path, PathBuf};

use modlie::divpow::{vect_algebra, DPDescriptor};
use modlie::families::{
    build_l_at, build_l_symbolic, invariant_fingerprint, Cocycle, ExpectedEntry, LemmaExpectation,
};
use modlie::scalars::{GaloisField, ParameterRing, Parity};
use modlie::superalg::{AlgebraBuilder, BasisElement, SuperAlgebra};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn check_or_write(path: &Path, content: &str) {
    if std::env::var_os("MODLIE_REGEN").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(path, content).unwrap();
        return;
    }
    let on_disk = fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(
        on_disk.trim_end(),
        content.trim_end(),
        "{} is stale",
        path.display()
    );
}

const SP4_NAMES: [&str; 10] = [
    "ha", "hb", "a12", "a21", "b11", "b22", "b12", "c11", "c22", "c12",
];

/// sp(4) = {X : XᵀJ + JX = 0}, J = [[0, I], [-I, 0]], as 4x4 matrices over Z.
fn sp4_matrix(name: &str) -> [[i64; 4]; 4] {
    let mut m = [[0; 4]; 4];
    let mut put = |r: usize, c: usize, v: i64| m[r][c] += v;
    match name {
        "ha" => {
            put(0, 0, 1);
            put(2, 2, -1);
        }
        "hb" => {
            put(1, 1, 1);
            put(3, 3, -1);
        }
        "a12" => {
            put(0, 1, 1);
            put(3, 2, -1);
        }
        "a21" => {
            put(1, 0, 1);
            put(2, 3, -1);
        }
        "b11" => put(0, 2, 1),
        "b22" => put(1, 3, 1),
        "b12" => {
            put(0, 3, 1);
            put(1, 2, 1);
        }
        "c11" => put(2, 0, 1),
        "c22" => put(3, 1, 1),
        "c12" => {
            put(3, 0, 1);
            put(2, 1, 1);
        }
        _ => unreachable!(),
    }
    m
}

fn commutator(a: &[[i64; 4]; 4], b: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
    let mut out = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                out[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
            }
        }
    }
    out
}

/// Coordinates read off at one distinguished entry per basis matrix, then checked.
fn sp4_coordinates(m: &[[i64; 4]; 4]) -> Vec<i64> {
    let at = [
        (0, 0),
        (1, 1),
        (0, 1),
        (1, 0),
        (0, 2),
        (1, 3),
        (0, 3),
        (2, 0),
        (3, 1),
        (3, 0),
    ];
    let coords: Vec<i64> = at.iter().map(|&(r, c)| m[r][c]).collect();
    let mut back = [[0; 4]; 4];
    for (c, name) in coords.iter().zip(SP4_NAMES) {
        let b = sp4_matrix(name);
        for i in 0..4 {
            for j in 0..4 {
                back[i][j] += c * b[i][j];
            }
        }
    }
    assert_eq!(&back, m, "not in sp(4)");
    coords
}

fn sp4() -> SuperAlgebra {
    let ring = ParameterRing::new(GaloisField::prime(3).unwrap());
    let mut b = AlgebraBuilder::new(ring.clone());
    for n in SP4_NAMES {
        b.add_basis(BasisElement::even(n)).unwrap();
    }
    for i in 0..10 {
        for j in i + 1..10 {
            let c = sp4_coordinates(&commutator(
                &sp4_matrix(SP4_NAMES[i]),
                &sp4_matrix(SP4_NAMES[j]),
            ));
            let terms: Vec<_> = c
                .into_iter()
                .enumerate()
                .filter(|(_, x)| x % 3 != 0)
                .map(|(k, x)| (k, ring.int(x)))
                .collect();
            b.set_bracket(i, j, &terms).unwrap();
        }
    }
    b.build()
}

#[test]
fn sp4_reference() {
    let g = sp4();
    assert!(g.check_super_identities().is_empty());
    check_or_write(&root().join("data/sp4.json"), &g.to_json());
}

#[test]
fn brown_algebra_at_minus_one_has_the_sp4_fingerprint() {
    let reference =
        SuperAlgebra::from_json(&fs::read_to_string(root().join("data/sp4.json")).unwrap())
            .unwrap();
    let l = build_l_at(-1, 0, 0).unwrap();
    let a = invariant_fingerprint(&l).unwrap();
    assert_eq!(a, invariant_fingerprint(&reference).unwrap());
    assert_eq!(
        (a.dim, a.center_dim, a.derived_dims.clone()),
        (10, 0, vec![10])
    );
    let f9 = GaloisField::new(3, 2).unwrap();
    let b = invariant_fingerprint(&l.embed(f9).unwrap()).unwrap();
    assert_eq!(
        b,
        invariant_fingerprint(&reference.embed(f9).unwrap()).unwrap()
    );
    assert_eq!(b.ad_nilpotency, None);
    assert_eq!(
        (b.dim, b.derived_dims, b.weight_dims),
        (a.dim, a.derived_dims, a.weight_dims)
    );
}

#[test]
fn brown_algebra_at_one_is_not_sp4() {
    let reference =
        SuperAlgebra::from_json(&fs::read_to_string(root().join("data/sp4.json")).unwrap())
            .unwrap();
    let a = invariant_fingerprint(&build_l_at(1, 0, 0).unwrap()).unwrap();
    let b = invariant_fingerprint(&reference).unwrap();
    assert_eq!(a.weight_dims, b.weight_dims);
    assert_ne!(a.ad_nilpotency, b.ad_nilpotency);
}

#[test]
fn symbolic_l_file() {
    let g = build_l_symbolic().unwrap();
    check_or_write(&root().join("data/L_symbolic.json"), &g.to_json());
}

#[test]
fn tall_vectorial_algebra_file() {
    let d = DPDescriptor::new(3, vec![2], 0).unwrap();
    let w = vect_algebra(&d).unwrap();
    check_or_write(&root().join("data/vect_1_2.json"), &w.algebra.to_json());
}

fn entry(e: &str, v: &str) -> ExpectedEntry {
    ExpectedEntry {
        element: e.into(),
        value: v.into(),
    }
}

fn expectation(cocycle: &str, entries: Vec<ExpectedEntry>, flip: bool) -> LemmaExpectation {
    LemmaExpectation {
        algebra: String::new(),
        algebra_file: None,
        cocycle: Some(cocycle.into()),
        entries,
        rest_zero: true,
        modulo_center: true,
        modulo: Vec::new(),
        flip,
    }
}

fn cocycle(
    g: &SuperAlgebra,
    parameter: &str,
    parity: Parity,
    values: &[(&str, &str, &str)],
) -> Cocycle {
    let mut c = Cocycle::zero(parameter, parity);
    for (a, b, v) in values {
        c.set(
            g,
            g.index_of(a).unwrap(),
            g.index_of(b).unwrap(),
            g.parse_vector(v).unwrap(),
        );
    }
    c
}

/// br(2;1) = L(1,0,0) with the δ- and ρ-parts of the deformation as λ-cocycles.
#[test]
fn br2_fixture() {
    let dir = root().join("fixtures/br2");
    let g = build_l_at(1, 0, 0).unwrap();
    let mut rho = cocycle(
        &g,
        "lambda",
        Parity::Even,
        &[("y4", "y3", "y1"), ("y3", "x1", "-x4"), ("y4", "x1", "-x3")],
    );
    rho.degree = Some(3);
    let mut delta = cocycle(
        &g,
        "lambda",
        Parity::Even,
        &[("y4", "y1", "x2"), ("y4", "y2", "x1"), ("y2", "y1", "-x4")],
    );
    delta.degree = Some(3);
    let toral = || vec![entry("h1", "h1"), entry("h2", "h2")];
    let mut e_rho = expectation("rho", toral(), true);
    e_rho.algebra = "br(2;1) + lambda*c_rho".into();
    e_rho.entries.push(entry("y3", "2*lambda*h1 + lambda*h2"));
    let mut e_delta = expectation("delta", toral(), true);
    e_delta.algebra = "br(2;1) + lambda*c_delta".into();
    e_delta.entries.push(entry("y2", "2*lambda*h2"));
    check_or_write(&dir.join("algebra.json"), &g.to_json());
    check_or_write(&dir.join("cocycle_rho.json"), &rho.to_json(&g));
    check_or_write(&dir.join("cocycle_delta.json"), &delta.to_json(&g));
    check_or_write(
        &dir.join("expect.json"),
        &serde_json::to_string_pretty(&vec![e_rho, e_delta]).unwrap(),
    );
}

/// osp(1|2) plus an odd central k, with the odd cocycle c(a, b) = -(h-part of [a, b])·k.
#[test]
fn osp12_fixture() {
    let dir = root().join("fixtures/osp12");
    let ring = ParameterRing::new(GaloisField::prime(3).unwrap());
    let mut b = AlgebraBuilder::new(ring.clone());
    for n in ["h", "e", "f"] {
        b.add_basis(BasisElement::even(n)).unwrap();
    }
    for n in ["x", "y", "k"] {
        b.add_basis(BasisElement::odd(n)).unwrap();
    }
    let one = ring.one();
    let s = |n: i64| ring.int(n);
    b.set_bracket_named("h", "e", &[("e", s(2))]).unwrap();
    b.set_bracket_named("h", "f", &[("f", s(-2))]).unwrap();
    b.set_bracket_named("e", "f", &[("h", one.clone())])
        .unwrap();
    b.set_bracket_named("h", "x", &[("x", one.clone())])
        .unwrap();
    b.set_bracket_named("h", "y", &[("y", s(-1))]).unwrap();
    b.set_bracket_named("e", "y", &[("x", s(-1))]).unwrap();
    b.set_bracket_named("f", "x", &[("y", s(-1))]).unwrap();
    b.set_bracket_named("x", "x", &[("e", s(2))]).unwrap();
    b.set_bracket_named("y", "y", &[("f", s(-2))]).unwrap();
    b.set_bracket_named("x", "y", &[("h", one.clone())])
        .unwrap();
    let g = b.build();
    assert!(g.check_super_identities().is_empty());
    let c = cocycle(
        &g,
        "tau",
        Parity::Odd,
        &[("e", "f", "-k"), ("x", "y", "-k")],
    );
    let mut e = expectation("tau", vec![entry("h", "h")], false);
    e.algebra = "osp(1|2) + k, deformed by tau*c".into();
    check_or_write(&dir.join("algebra.json"), &g.to_json());
    check_or_write(&dir.join("cocycle_tau.json"), &c.to_json(&g));
    check_or_write(
        &dir.join("expect.json"),
        &serde_json::to_string_pretty(&vec![e]).unwrap(),
    );
}
