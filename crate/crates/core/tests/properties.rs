use num_traits::{One, Zero};
use proptest::prelude::*;

use kummer_core::cubic::{
    cubic_d, cubic_family, cubic_from_point, cubic_poly, fixed_disc_curve, point_from_monic,
};
use kummer_core::curves::{CurvePoint, WeierstrassCurve};
use kummer_core::exact::{int, is_rational_square, poly_discriminant, rat};
use kummer_core::isogeny::compose;
use kummer_core::quintic::{
    brumer_from_point, brumer_poly, doubling_transform, family, kummer_poly, lambda_star_x_map,
    lecacheux_transform, phi_star_eval, quintic_d, star_j_invariant,
};
use kummer_core::septic::septic_family;
use kummer_core::{QuadExt, RatFunc, Rational, UniPoly};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn pt(x: i64, y: i64) -> CurvePoint {
    CurvePoint::from_ints(x, y)
}

fn e_1_0() -> (WeierstrassCurve, [CurvePoint; 2]) {
    let fam = family(&int(1), &int(0)).unwrap();
    (fam.e().clone(), [pt(-188, 8836), pt(0, -8836)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn brumer_discriminant(a in nonzero_rational(), b in small_rational()) {
        let d = quintic_d(&a, &b);
        prop_assert_eq!(poly_discriminant(&brumer_poly(&a, &b)).unwrap(), &a * &a * &d * &d);
    }

    #[test]
    fn cubic_discriminant(a in small_rational(), b in small_rational()) {
        prop_assert_eq!(poly_discriminant(&cubic_poly(&a, &b)).unwrap(), cubic_d(&a, &b));
    }

    #[test]
    fn ratfunc_normalisation_is_stable(n in prop::collection::vec(-9i64..=9, 1..5), d in prop::collection::vec(-9i64..=9, 1..5)) {
        let den = UniPoly::from_ints(&d);
        prop_assume!(!den.is_zero());
        let f = RatFunc::new(UniPoly::from_ints(&n), den).unwrap();
        let again = RatFunc::new(f.num().clone(), f.den().clone()).unwrap();
        prop_assert!(f.den().is_monic());
        prop_assert_eq!(f, again);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn norm_is_multiplicative(d in prop::sample::select(vec![-47i64, -31, -74, 2, 5, 13]), u1 in small_rational(), v1 in small_rational(), u2 in small_rational(), v2 in small_rational()) {
        let x = QuadExt::new(int(d), u1, v1).unwrap();
        let y = QuadExt::new(int(d), u2, v2).unwrap();
        prop_assert_eq!(x.try_mul(&y).unwrap().norm(), x.norm() * y.norm());
    }

    #[test]
    fn fixed_disc_polynomial(n in -6i64..=6) {
        let fd = fixed_disc_curve(&int(-31)).unwrap();
        let (_, g) = point_from_monic(&UniPoly::from_ints(&[1, 1, 0, 1])).unwrap();
        let p = fd.curve().mul(n, &g).unwrap();
        prop_assume!(!p.is_infinity());
        prop_assert_eq!(poly_discriminant(&cubic_from_point(&fd, &p).unwrap()).unwrap(), int(-31));
    }

    #[test]
    fn monic_point_round_trip(p in small_rational(), q in small_rational(), r in small_rational()) {
        let g = UniPoly::new(vec![-r.clone(), q.clone(), -p.clone(), Rational::one()]);
        let disc = poly_discriminant(&g).unwrap();
        prop_assume!(!disc.is_zero());
        let (dd, pg) = point_from_monic(&g).unwrap();
        prop_assert_eq!(&dd, &disc);
        let fd = fixed_disc_curve(&dd).unwrap();
        prop_assert!(fd.curve().contains(&pg));
        // F(P_g; X) is g shifted to kill the X^2 term
        let shifted = g.compose(&UniPoly::new(vec![p / int(3), Rational::one()]));
        prop_assert_eq!(cubic_from_point(&fd, &pg).unwrap(), shifted);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn group_law_is_associative(i in -3i64..=3, j in -3i64..=3, k in -3i64..=3, l in -2i64..=2) {
        let (e, [p1, p2]) = e_1_0();
        let p = e.mul(i, &p1).unwrap();
        let q = e.mul(j, &p2).unwrap();
        let r = e.add(&e.mul(k, &p1).unwrap(), &e.mul(l, &p2).unwrap()).unwrap();
        let left = e.add(&e.add(&p, &q).unwrap(), &r).unwrap();
        let right = e.add(&p, &e.add(&q, &r).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert!(e.contains(&left));
        prop_assert_eq!(e.mul(i + k, &p1).unwrap(), e.add(&p, &e.mul(k, &p1).unwrap()).unwrap());
    }

    #[test]
    fn j_invariant_ignores_b(a in nonzero_rational(), b1 in small_rational(), b2 in small_rational()) {
        let (Ok(f1), Ok(f2)) = (family(&a, &b1), family(&a, &b2)) else { return Ok(()) };
        let j = star_j_invariant(&a).unwrap();
        prop_assert_eq!(f1.e_star().j_invariant().unwrap(), j.clone());
        prop_assert_eq!(f2.e_star().j_invariant().unwrap(), j);
    }

    #[test]
    fn lecacheux_identity(a in nonzero_rational(), b in small_rational(), n in 1i64..=3) {
        let Ok(fam) = family(&a, &b) else { return Ok(()) };
        prop_assert!(fam.e().contains(&fam.p0));
        let p = fam.e().mul(n, &fam.p0).unwrap();
        prop_assume!(!p.is_infinity());
        let big_b = kummer_poly(&fam, &p).unwrap();
        prop_assert_eq!(lecacheux_transform(&big_b, &a), brumer_from_point(&fam, &p).unwrap());
    }

    #[test]
    fn doubling_keeps_square_class(a in nonzero_rational(), b in small_rational()) {
        let Ok(fam) = family(&a, &b) else { return Ok(()) };
        let Ok(beta) = doubling_transform(&fam, &fam.p0) else { return Ok(()) };
        let ratio = quintic_d(&a, &beta) / &fam.params.d;
        prop_assert!(is_rational_square(&ratio).is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn quintic_velu_matches_closed_form(a in nonzero_rational()) {
        let Ok(fam) = family(&a, &int(0)) else { return Ok(()) };
        let (n, d) = lambda_star_x_map(&a);
        prop_assert_eq!(&fam.lambda_star().x_map, &RatFunc::new(n, d).unwrap());
    }

    #[test]
    fn septic_velu_matches_closed_form(a in nonzero_rational()) {
        let Ok(fam) = septic_family(&a) else { return Ok(()) };
        prop_assert!(fam.matches_closed_form());
    }

    #[test]
    fn cubic_lambda_codomain(a in nonzero_rational(), b in small_rational()) {
        let Ok(fam) = cubic_family(&a, &b) else { return Ok(()) };
        let want = WeierstrassCurve::new([int(0), int(0), int(216) * &a, int(0), int(-326592) * &a * &a]).unwrap();
        prop_assert_eq!(&fam.lambda_star().codomain, &want);
    }

    #[test]
    fn cubic_dual_composition(n in 1i64..=10) {
        let fam = cubic_family(&int(1), &int(1)).unwrap();
        let round = compose(&fam.phi_star, &fam.phi).unwrap();
        let p = fam.e().mul(n, &pt(124, 3844)).unwrap();
        let img = round.evaluate_rational(&p).unwrap();
        let three = fam.e().mul(3, &p).unwrap();
        prop_assert!(img == three || img == fam.e().neg(&three).unwrap());
    }

    #[test]
    fn phi_star_is_homomorphism(i in -2i64..=2, j in -2i64..=2, k in -2i64..=2, l in -2i64..=2) {
        let fam = family(&int(1), &int(0)).unwrap();
        let es = fam.e_star();
        let (q1, q2) = (pt(10528, 1104500), pt(4653, 276125));
        let p = es.add(&es.mul(i, &q1).unwrap(), &es.mul(j, &q2).unwrap()).unwrap();
        let q = es.add(&es.mul(k, &q1).unwrap(), &es.mul(l, &q2).unwrap()).unwrap();
        let lhs = phi_star_eval(&fam, &es.add(&p, &q).unwrap()).unwrap();
        let rhs = fam.e().add(&phi_star_eval(&fam, &p).unwrap(), &phi_star_eval(&fam, &q).unwrap()).unwrap();
        prop_assert!(fam.e().contains(&lhs));
        prop_assert_eq!(lhs, rhs);
    }
}
