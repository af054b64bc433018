//! Randomized invariants of the exact layer and the Gram-space plumbing.

use gramdim_core::{
    build_gram_space, gram_apply, two_squares, verify_dimension, LiftMap, Polynomial, SymMatrix,
    Tolerances,
};
use proptest::prelude::*;

fn arb_poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-9i64..=9, 1..=max_deg + 1).prop_map(|c| Polynomial::from_ints(&c))
}

fn arb_sos_poly(half_deg: usize) -> impl Strategy<Value = Polynomial> {
    (arb_poly(half_deg), arb_poly(half_deg)).prop_map(|(a, b)| {
        a.mul(&a).add(&b.mul(&b)).add(&Polynomial::one())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn squarefree_decomposition_reconstructs(f in arb_poly(8)) {
        prop_assume!(!f.is_zero());
        let parts = f.square_free_decomposition().unwrap();
        let lc = f.leading_coeff().unwrap().clone();
        let mut prod = Polynomial::constant(lc);
        for (fk, k) in &parts {
            prop_assert!(fk.count_real_roots().is_ok(), "factor not squarefree");
            prod = prod.mul(&fk.pow(*k));
        }
        prop_assert_eq!(prod, f);
    }

    #[test]
    fn gram_points_hit_the_coefficients(
        f in arb_sos_poly(4),
        t_raw in prop::collection::vec(-10.0f64..10.0, 6),
    ) {
        let space = build_gram_space(&f).unwrap();
        let t = &t_raw[..space.kernel.len()];
        let q = space.point(t);
        prop_assert!(space.residual(&q) <= 1e-12);
        for b in &space.kernel {
            prop_assert_eq!(gram_apply(b), vec![0.0; 2 * space.d + 1]);
        }
    }

    #[test]
    fn projection_restores_membership(
        f in arb_sos_poly(4),
        noise in prop::collection::vec(-1.0f64..1.0, 25),
    ) {
        let space = build_gram_space(&f).unwrap();
        let mut q = space.q0.clone();
        for i in 0..space.n {
            for j in i..space.n {
                q.set(i, j, q.get(i, j) + noise[i * space.n + j]);
            }
        }
        let back = space.project(&q);
        prop_assert!(space.residual(&back) <= 1e-12, "{}", space.residual(&back));
    }

    #[test]
    fn two_squares_certifies_sos_polynomials(f in arb_sos_poly(6)) {
        let cert = two_squares(&f).unwrap();
        prop_assert!(cert.residual <= 1e-8);
        let trace = cert.gram_point.trace();
        prop_assert!(cert.gram_point.lambda_min() >= -1e-9 * trace.max(1.0));
    }

    #[test]
    fn lift_coefficient_action_is_polynomial_multiplication(
        f in arb_poly(6),
        a in -5i64..=5,
        b in -5i64..=5,
    ) {
        prop_assume!(!f.is_zero() && (a, b) != (0, 0));
        let deg = f.degree().unwrap();
        let lift = LiftMap::new(a as f64, b as f64, deg).unwrap();
        let lifted = lift.apply_coeffs(&f.coeffs_f64());
        let linear = Polynomial::from_ints(&[b, a]);
        let expect = linear.mul(&f).coeffs_f64();
        for (x, y) in lifted.iter().zip(expect.iter().chain(std::iter::repeat(&0.0))) {
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + y.abs()));
        }
    }
}

#[test]
fn dimension_is_invariant_under_positive_scaling() {
    let tol = Tolerances::default();
    for ints in [&[1i64, 0, 2, 0, 1][..], &[4, 0, 5, 0, 1], &[1, 2, 3, 2, 1]] {
        let f = Polynomial::from_ints(ints);
        let scaled = f.scale(&num_rational::BigRational::from_integer(7.into()));
        let a = verify_dimension(&f, &tol).unwrap();
        let b = verify_dimension(&scaled, &tol).unwrap();
        assert_eq!(a.computed, b.computed, "f = {ints:?}");
        assert_eq!(a.predicted, b.predicted);
    }
}

#[test]
fn rank_history_is_monotone() {
    let tol = Tolerances::default();
    let f = Polynomial::from_ints(&[2, 0, 3, 0, 3, 0, 1]);
    let space = build_gram_space(&f).unwrap();
    let cert = two_squares(&f).unwrap();
    let out = gramdim_core::max_rank_point(&space, &cert.gram_point, &tol).unwrap();
    for w in out.rank_history.windows(2) {
        assert!(w[0] <= w[1], "{:?}", out.rank_history);
    }
    assert!(out.converged);
}

#[test]
fn symmetric_clip_is_psd_projection() {
    let mut m = SymMatrix::zeros(3);
    m.set(0, 0, 1.0);
    m.set(1, 1, -2.0);
    m.set(0, 2, 0.5);
    let c = m.clip_negative();
    assert!(c.lambda_min() >= -1e-12);
    // Idempotent on PSD input.
    let again = c.clip_negative();
    assert!((c.as_dmatrix() - again.as_dmatrix()).norm() <= 1e-12);
}
