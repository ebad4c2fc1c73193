use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;

use modlie::families::{apply_cocycle_deform, build_l_at, greedy_torus, Cocycle};
use modlie::pstruct::{same_coset, solve_p_power};
use modlie::scalars::{GaloisField, ParameterRing, Parity, Scalar};
use modlie::superalg::{vector, SuperAlgebra, Vector};

fn gf3() -> GaloisField {
    GaloisField::prime(3).unwrap()
}

fn ring() -> ParameterRing {
    ParameterRing::standard(gf3())
}

/// Sums of c·eps^a·delta^b·rho^c·tau^t with small exponents.
fn scalar(odd: bool) -> impl Strategy<Value = Scalar> {
    let term = (0i64..3, -2i32..3, 0u32..3, 0u32..3, any::<bool>());
    prop::collection::vec(term, 0..5).prop_map(move |terms| {
        let r = ring();
        let mut s = Scalar::zero();
        for (c, e, d, rho, t) in terms {
            let mut m = r.int(c) * r.var("delta").unwrap().pow(d) * r.var("rho").unwrap().pow(rho);
            let eps = r.var("eps").unwrap();
            let eps = if e < 0 {
                eps.invert().unwrap().pow((-e) as u32)
            } else {
                eps.pow(e as u32)
            };
            m = m * eps;
            if odd && t {
                m = m * r.var("tau").unwrap();
            }
            s += &m;
        }
        s
    })
}

fn field_value() -> impl Strategy<Value = i64> {
    0i64..3
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in scalar(true), b in scalar(true), c in scalar(true)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        prop_assert_eq!(&a * &ring().one(), a.clone());
    }

    #[test]
    fn a_single_odd_generator_squares_to_zero(a in scalar(true)) {
        let tau = ring().var("tau").unwrap();
        prop_assert!((&(&a * &tau) * &tau).is_zero());
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative(a in scalar(false), b in scalar(false)) {
        let f = |s: &Scalar| s.frobenius().unwrap();
        prop_assert_eq!(f(&(&a + &b)), &f(&a) + &f(&b));
        prop_assert_eq!(f(&(&a * &b)), &f(&a) * &f(&b));
        prop_assert_eq!(f(&a), a.pow(3));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        a in scalar(true), b in scalar(true),
        e in 1i64..3, d in field_value(), r in field_value(),
    ) {
        let f = gf3();
        let at: BTreeMap<String, _> = [("eps", e), ("delta", d), ("rho", r)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), f.int(v)))
            .collect();
        let ev = |s: &Scalar| s.evaluate(f, &at).unwrap();
        prop_assert_eq!(ev(&(&a + &b)), ev(&a).add(&ev(&b)));
        prop_assert_eq!(ev(&(&a * &b)), ev(&a).mul(&ev(&b)));
    }

    #[test]
    fn laurent_monomials_invert(c in 1i64..3, k in -4i32..5) {
        let r = ring();
        let eps = r.var("eps").unwrap();
        let m = if k < 0 { eps.invert().unwrap().pow((-k) as u32) } else { eps.pow(k as u32) };
        let m = &r.int(c) * &m;
        prop_assert_eq!(&m * &m.invert().unwrap(), r.one());
    }

    #[test]
    fn ad_is_a_homomorphism(x in even_vector(), y in even_vector()) {
        let g = l111();
        let xy = g.bracket(&x, &y).unwrap();
        let (ax, ay) = (g.ad_matrix(&x).unwrap(), g.ad_matrix(&y).unwrap());
        prop_assert_eq!(g.ad_matrix(&xy).unwrap(), ax.mul(&ay).sub(&ay.mul(&ax)));
    }

    #[test]
    fn brackets_of_weight_vectors_add_weights(i in 0usize..10, j in 0usize..10) {
        let g = build_l_at(2, 0, 0).unwrap();
        let torus = greedy_torus(&g).unwrap();
        let ads: Vec<_> = torus.iter().map(|t| g.ad_matrix(t).unwrap()).collect();
        let wt = |k: usize| -> Vec<Scalar> { ads.iter().map(|m| m.get(k, k).clone()).collect() };
        let sum: Vec<Scalar> = wt(i).iter().zip(wt(j)).map(|(a, b)| a + &b).collect();
        for (k, c) in g.bracket_basis(i, j).iter().enumerate() {
            if !c.is_zero() {
                prop_assert_eq!(wt(k), sum.clone());
            }
        }
    }

    #[test]
    fn deforming_then_specializing_the_parameter(l in field_value()) {
        let g = build_l_at(1, 0, 0).unwrap();
        let h = apply_cocycle_deform(&g, &rho_part(&g)).unwrap();
        let at = h.at(&[("lambda", l)]).unwrap();
        prop_assert_eq!(at.to_json(), build_l_at(1, 0, l).unwrap().to_json());
    }

    #[test]
    fn p_powers_exist_and_are_semilinear(x in even_vector(), c in 1i64..3) {
        let g = l111();
        let px = solve_p_power(g, &x).unwrap();
        let cs = Scalar::int(gf3(), c);
        let pcx = solve_p_power(g, &vector::scale(&cs, &x)).unwrap();
        let expected = vector::scale(&cs.pow(3), &px.value);
        prop_assert!(same_coset(&pcx.value, &expected, &px.center));
    }
}

fn l111() -> &'static SuperAlgebra {
    static G: OnceLock<SuperAlgebra> = OnceLock::new();
    G.get_or_init(|| build_l_at(1, 1, 1).unwrap())
}

fn even_vector() -> impl Strategy<Value = Vector> {
    prop::collection::vec(0i64..3, 10)
        .prop_map(|v| v.into_iter().map(|c| Scalar::int(gf3(), c)).collect())
}

fn rho_part(g: &SuperAlgebra) -> Cocycle {
    let mut c = Cocycle::zero("lambda", Parity::Even);
    for (a, b, v) in [("y4", "y3", "y1"), ("y3", "x1", "-x4"), ("y4", "x1", "-x3")] {
        c.set(
            g,
            g.index_of(a).unwrap(),
            g.index_of(b).unwrap(),
            g.parse_vector(v).unwrap(),
        );
    }
    c
}
