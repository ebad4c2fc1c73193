use std::collections::BTreeMap;

use super::*;
use crate::divpow::{contact_bracket, DPDescriptor};
use crate::linalg::Matrix;
use crate::pstruct::{check_pmap, verify_restricted};
use crate::scalars::{GaloisField, ParameterRing, Parity, Scalar};
use crate::superalg::{AlgebraBuilder, BasisElement, SuperAlgebra};

fn ring() -> ParameterRing {
    DPDescriptor::k31().ring().clone()
}

fn same_constants(a: &SuperAlgebra, b: &SuperAlgebra) -> bool {
    a.dim() == b.dim()
        && (0..a.dim())
            .all(|i| (i..a.dim()).all(|j| a.bracket_basis(i, j) == b.bracket_basis(i, j)))
}

#[test]
fn symbolic_l_is_a_lie_algebra() {
    let g = build_l_symbolic().unwrap();
    assert_eq!(g.dim(), 10);
    assert_eq!(g.sdim(), (10, 0));
    let rep = g.check_super_identities();
    assert!(rep.is_empty(), "{rep}");
}

#[test]
fn table_defining_brackets() {
    let g = build_l_at(1, 0, 0).unwrap();
    let v = |s: &str| g.parse_vector(s).unwrap();
    let br = |a: &str, b: &str| g.bracket(&v(a), &v(b)).unwrap();
    assert_eq!(br("y1", "x2"), v("x3"));
    assert_eq!(br("x2", "x3"), v("x4"));
    assert_eq!(br("y2", "y3"), v("y4"));
    assert_eq!(br("x1", "y2"), v("y3"));
}

#[test]
fn deformation_values_on_named_pairs() {
    let g = build_l_symbolic().unwrap();
    let v = |s: &str| g.parse_vector(s).unwrap();
    let br = |a: &str, b: &str| g.bracket(&v(a), &v(b)).unwrap();
    assert_eq!(br("y4", "y3"), v("rho*y1"));
    assert_eq!(br("y2", "y1"), v("-delta*eps^-1*x4"));
    assert_eq!(br("y4", "y1"), v("delta*x2"));
    assert_eq!(br("y4", "y2"), v("delta*x1"));
    assert_eq!(br("y3", "x1"), v("-rho*eps^-1*x4"));
    assert_eq!(br("y4", "x1"), v("-rho*x3"));
}

#[test]
fn undeformed_brackets_respect_degrees() {
    let r = ring();
    let g = build_l(&r.var("eps").unwrap(), &Scalar::zero(), &Scalar::zero()).unwrap();
    assert!(degree_violations(&g).is_empty());
    let full = build_l_symbolic().unwrap();
    assert_eq!(degree_violations(&full).len(), 6);
}

#[test]
fn table_closes_under_the_contact_bracket() {
    let r = ring();
    let eps = r.var("eps").unwrap();
    let g = build_l(&eps, &Scalar::zero(), &Scalar::zero()).unwrap();
    assert!(table_closure_mismatches(&g, &eps).unwrap().is_empty());
    let full = build_l_symbolic().unwrap();
    assert_eq!(table_closure_mismatches(&full, &eps).unwrap().len(), 6);
}

#[test]
fn table_expansion_rejects_outside_functions() {
    let t = GeneratingTable::new(&ring().var("eps").unwrap()).unwrap();
    let d = &t.descriptor;
    let f = d.parse("ph*qh*t").unwrap();
    assert!(matches!(
        t.expand(&f),
        Err(FamilyError::ExpansionFailure(_))
    ));
    let x = contact_bracket(d, &t.entries[7].function, &t.entries[8].function).unwrap();
    assert_eq!(t.combine(&t.expand(&x).unwrap()), x);
    assert_eq!(GeneratingTable::degree_of(&t.entries[9].function), Some(2));
    for e in &t.entries {
        assert_eq!(
            GeneratingTable::degree_of(&e.function),
            Some(e.degree),
            "{}",
            e.alias
        );
    }
}

#[test]
fn eps_must_be_a_unit() {
    assert!(matches!(
        build_l_at(0, 1, 1),
        Err(FamilyError::EpsilonZero(_))
    ));
    let r = ring();
    assert!(matches!(
        build_l(&r.var("delta").unwrap(), &Scalar::zero(), &Scalar::zero()),
        Err(FamilyError::EpsilonZero(_))
    ));
    let g = build_l_symbolic().unwrap();
    assert!(g.at(&[("eps", 0)]).is_err());
}

#[test]
fn specializing_commutes_with_building() {
    let g = build_l_symbolic().unwrap();
    for &(e, d, r) in &L3_SPECIALIZATIONS {
        let a = g.at(&[("eps", e), ("delta", d), ("rho", r)]).unwrap();
        let b = build_l_at(e, d, r).unwrap();
        assert!(same_constants(&a, &b), "{e} {d} {r}");
    }
}

#[test]
fn three_structure_of_l() {
    let g = build_l_symbolic().unwrap();
    let r = verify_restricted(&g);
    assert!(r.is_restricted());
    assert!(r.pmap.center.is_empty());
    assert!(check_pmap(&g, &r.pmap).is_empty());
    let val = |s: &str| r.pmap.get(g.index_of(s).unwrap()).unwrap().clone();
    let v = |s: &str| g.parse_vector(s).unwrap();
    assert_eq!(val("h1"), v("h1"));
    assert_eq!(val("h2"), v("(eps^2 - 1)*h1 + eps^2*h2"));
    assert_eq!(val("y2"), v("delta*(1 - eps^-1)*h1 - delta*eps^-1*h2"));
    assert_eq!(val("y3"), v("rho*(1 + eps^-1)*h1 + rho*eps^-1*h2"));
    assert_eq!(val("y4"), v("eps*delta*rho*h1"));
    for z in ["x1", "x2", "x3", "x4", "y1"] {
        assert!(crate::superalg::vector::is_zero(&val(z)), "{z}");
    }
}

#[test]
fn l3_driver_reports_every_entry() {
    let rep = verify_lemma_l3(true, &L3_SPECIALIZATIONS).unwrap();
    assert_eq!(rep.checks.len(), 10 + 18 * 10 + 1);
    let torus = rep
        .checks
        .iter()
        .find(|c| c.name.ends_with("torus ansatz coincides"))
        .unwrap();
    assert!(torus.matches);
    let names: Vec<&str> = rep.mismatches().map(|c| c.name.as_str()).collect();
    assert!(names.contains(&"symbolic: h2^[3]"));
    assert!(names.contains(&"symbolic: y4^[3]"));
    assert!(!names.contains(&"symbolic: h1^[3]"));
    assert_eq!(rep.status, crate::report::Status::Fail);
}

#[test]
fn expectation_text_parses_over_the_ring() {
    let g = build_l_symbolic().unwrap();
    for e in lemma_l3_expectation().entries {
        assert!(g.parse_vector(&e.value).is_ok(), "{}", e.value);
    }
    let back = LemmaExpectation::from_json(&lemma_l3_expectation().to_json()).unwrap();
    assert_eq!(back, lemma_l3_expectation());
}

fn abelian(n: usize) -> SuperAlgebra {
    let mut b = AlgebraBuilder::new(ParameterRing::standard(GaloisField::prime(3).unwrap()));
    for i in 1..=n {
        b.add_basis(BasisElement::even(&format!("e{i}"))).unwrap();
    }
    b.build()
}

#[test]
fn fingerprints() {
    let a = invariant_fingerprint(&abelian(3)).unwrap();
    assert_eq!(
        a,
        Fingerprint {
            dim: 3,
            sdim: (3, 0),
            center_dim: 3,
            derived_dims: vec![3, 0],
            trace_form_rank: 0,
            weight_dims: vec![3],
            ad_nilpotency: Some([(1, 27)].into()),
        }
    );
    let l = invariant_fingerprint(&build_l_at(2, 0, 0).unwrap()).unwrap();
    assert_eq!(l.dim, 10);
    assert_eq!(l.center_dim, 0);
    assert_eq!(l.derived_dims, vec![10]);
    assert_eq!(l.weight_dims, vec![2, 1, 1, 1, 1, 1, 1, 1, 1]);
}

#[test]
fn nilpotency_profile_separates_brown_algebras() {
    let profile = |e| ad_nilpotency_profile(&build_l_at(e, 0, 0).unwrap()).unwrap();
    let b1 = profile(1);
    assert_eq!(
        b1,
        [(0, 52488), (1, 1), (3, 800), (7, 1152), (9, 4608)].into()
    );
    assert_eq!(
        profile(-1),
        [(0, 52488), (1, 1), (3, 800), (7, 5760)].into()
    );
    assert_eq!(ad_nilpotency_profile(&build_l_symbolic().unwrap()), None);
}

#[test]
fn zero_cocycle_changes_nothing() {
    let g = build_l_at(1, 0, 0).unwrap();
    let h = apply_cocycle_deform(&g, &Cocycle::zero("lambda", Parity::Even)).unwrap();
    assert!(same_constants(&g, &h));
}

fn rho_part(g: &SuperAlgebra) -> Cocycle {
    let mut c = Cocycle::zero("lambda", Parity::Even);
    let v = |s: &str| g.parse_vector(s).unwrap();
    let i = |s: &str| g.index_of(s).unwrap();
    c.set(g, i("y4"), i("y3"), v("y1"));
    c.set(g, i("y3"), i("x1"), v("-x4"));
    c.set(g, i("y4"), i("x1"), v("-x3"));
    c.degree = Some(3);
    c
}

#[test]
fn deform_by_rho_part_matches_family() {
    let g = build_l_at(1, 0, 0).unwrap();
    let h = apply_cocycle_deform(&g, &rho_part(&g)).unwrap();
    assert!(same_constants(
        &h.at(&[("lambda", 2)]).unwrap(),
        &build_l_at(1, 0, 2).unwrap()
    ));
    assert!(same_constants(&h.at(&[("lambda", 0)]).unwrap(), &g));
    let c = rho_part(&g);
    assert_eq!(Cocycle::from_json(&g, &c.to_json(&g)).unwrap(), c);
}

#[test]
fn non_cocycles_and_non_integrable_cocycles_are_rejected() {
    let g = build_l_at(1, 0, 0).unwrap();
    let mut c = Cocycle::zero("lambda", Parity::Even);
    c.set(
        &g,
        g.index_of("h1").unwrap(),
        g.index_of("x1").unwrap(),
        g.named("x1").unwrap(),
    );
    assert!(matches!(
        apply_cocycle_deform(&g, &c),
        Err(FamilyError::NotACocycle(_))
    ));

    let a = abelian(3);
    let mut c = Cocycle::zero("lambda", Parity::Even);
    c.set(&a, 0, 1, a.named("e1").unwrap());
    c.set(&a, 0, 2, a.named("e2").unwrap());
    match apply_cocycle_deform(&a, &c) {
        Err(FamilyError::JacobiFailure(names, _)) => assert_eq!(names.len(), 3),
        other => panic!("{other:?}"),
    }
    let mut odd = Cocycle::zero("lambda", Parity::Odd);
    odd.set(&a, 0, 1, a.named("e1").unwrap());
    assert!(matches!(
        apply_cocycle_deform(&a, &odd),
        Err(FamilyError::InvalidCocycle(_))
    ));
}

#[test]
fn coboundary_deform_is_transported_to_first_order() {
    let g = build_l_at(2, 0, 0).unwrap();
    let f = g.field();
    let n = g.dim();
    let mut phi = Matrix::zeros(n, n);
    for (k, (r, c)) in [(0, 2), (3, 3), (7, 1), (9, 0), (4, 8)]
        .into_iter()
        .enumerate()
    {
        phi.set(r, c, Scalar::int(f, k as i64 + 1));
    }
    let c = coboundary(&g, &phi, "lambda").unwrap();
    let mut b = g.with_ring(g.ring().clone()).unwrap().to_builder();
    let lam = g.ring().var("lambda").unwrap();
    for (&(i, j), v) in &c.values {
        let terms: Vec<(usize, Scalar)> =
            v.iter().enumerate().map(|(k, x)| (k, &lam * x)).collect();
        b.add_bracket(i, j, &terms).unwrap();
    }
    let h = b.build();
    // T = id + λφ satisfies [Tx, Ty]_g = T[x, y]_h modulo λ².
    let t = |v: &[Scalar]| -> Vec<Scalar> {
        (0..n)
            .map(|k| {
                let mut s = v[k].clone();
                for (j, x) in v.iter().enumerate() {
                    s += &(&(&lam * phi.get(k, j)) * x);
                }
                s
            })
            .collect()
    };
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (g.basis_vector(i), g.basis_vector(j));
            let lhs = g.bracket(&t(&ei), &t(&ej)).unwrap();
            let rhs = t(&h.bracket(&ei, &ej).unwrap());
            for (a, b) in lhs.iter().zip(&rhs) {
                assert_eq!((a - b).truncate("lambda", 1), Scalar::zero(), "{i} {j}");
            }
        }
    }
}

#[test]
fn flip_is_an_involution_and_mirrors_l() {
    let g = build_l_at(1, 0, 0).unwrap();
    let c = rho_part(&g);
    let (fg, fc) = chevalley_flip(&g, &c).unwrap();
    let (gg, cc) = chevalley_flip(&fg, &fc).unwrap();
    assert!(same_constants(&gg, &g));
    assert_eq!(cc, c);
    assert!(fg.check_super_identities().is_empty());
    for i in 0..g.dim() {
        for j in i..g.dim() {
            let a = g.bracket_basis(i, j);
            let b = fg.bracket_basis(i, j);
            let support = |v: &[Scalar]| v.iter().map(Scalar::is_zero).collect::<Vec<_>>();
            assert_eq!(
                support(&a),
                support(&b),
                "[{}, {}]",
                g.basis()[i].name,
                g.basis()[j].name
            );
        }
    }
    let deformed = apply_cocycle_deform(&fg, &fc).unwrap();
    assert!(deformed.check_super_identities().is_empty());
}

#[test]
fn flip_needs_paired_names() {
    let a = abelian(2);
    assert!(matches!(
        chevalley_flip(&a, &Cocycle::zero("lambda", Parity::Even)),
        Err(FamilyError::NamingConvention(_))
    ));
    assert_eq!(flip_name("x12").as_deref(), Some("y12"));
    assert_eq!(flip_name("h1"), None);
    assert_eq!(flip_name("x"), None);
    let e = flip_expectation(&LemmaExpectation {
        algebra: "a".into(),
        algebra_file: None,
        cocycle: None,
        entries: vec![ExpectedEntry {
            element: "x3".into(),
            value: "-lambda*h3 + 2*y1".into(),
        }],
        rest_zero: true,
        modulo_center: true,
        modulo: vec!["x10 - y10".into()],
        flip: true,
    });
    assert_eq!(e.entries[0].element, "y3");
    assert_eq!(e.entries[0].value, "-lambda*h3 + 2*x1");
    assert_eq!(e.modulo, vec!["y10 - x10".to_string()]);
}

#[test]
fn wrong_expectation_is_named() {
    let g = build_l_at(1, 0, 0).unwrap();
    let r = verify_restricted(&g);
    let mut e = lemma_l3_expectation();
    e.entries = vec![ExpectedEntry {
        element: "h2".into(),
        value: "-h2".into(),
    }];
    e.rest_zero = false;
    let checks = compare_pmap(&g, &r, &e, Some(&BTreeMap::new()), "").unwrap();
    let bad: Vec<&str> = checks
        .iter()
        .filter(|c| !c.matches)
        .map(|c| c.name.as_str())
        .collect();
    assert_eq!(bad, vec!["h2^[3]"]);
}
