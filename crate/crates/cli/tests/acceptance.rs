//! Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

use gramdim_core::battery::{theorem_battery, BATTERY_SEED};
use gramdim_core::{
    binom, brute_force_dimension, build_gram_space, expected_full_dimension, psd_line_search,
    two_squares, verify_dimension, verify_isomorphism, Polynomial, Tolerances,
};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn report(criterion: usize, ok: bool, detail: &str) {
    println!("criterion {criterion}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_1_dimension_battery() {
    let tol = Tolerances::default();
    let start = Instant::now();
    let cases = theorem_battery(BATTERY_SEED, 8, 2);
    let mut failures = Vec::new();
    let total = cases.len();
    for case in cases {
        let expected = binom((case.d - case.e) as u64, 2);
        match verify_dimension(&case.poly, &tol) {
            Ok(rep) if rep.computed == expected => {}
            Ok(rep) => failures.push(format!(
                "{}: computed {} != expected {expected}",
                case.name, rep.computed
            )),
            Err(e) => failures.push(format!("{}: {e}", case.name)),
        }
    }
    let elapsed = start.elapsed();
    let in_time = elapsed.as_secs() < 60;
    let detail = format!(
        "{} of {total} cases failed in {elapsed:?}: {:?}",
        failures.len(),
        failures
    );
    report(1, failures.is_empty() && total >= 60 && in_time, &detail);
}

#[test]
fn criterion_2_closed_form_dimensions() {
    let mut ok = true;
    for d in 1..=20u64 {
        ok &= expected_full_dimension(1, d) == binom(d, 2);
    }
    for n in 1..=10u64 {
        ok &= expected_full_dimension(n, 1) == 0;
    }
    ok &= expected_full_dimension(2, 2) == 6;
    report(2, ok, "closed-form dimension mismatch");
}

#[test]
fn criterion_3_sampling_oracle() {
    let tol = Tolerances { rank_rel: 1e-8, ..Tolerances::default() };
    let mut failures = Vec::new();
    for case in theorem_battery(BATTERY_SEED, 3, 2) {
        let rep = verify_dimension(&case.poly, &tol).unwrap();
        match brute_force_dimension(&case.poly, 10_000, 0x6f7261, &tol) {
            Ok(sampled) if sampled as u64 == rep.computed => {}
            Ok(sampled) => failures.push(format!(
                "{}: sampled {sampled} != computed {}",
                case.name, rep.computed
            )),
            Err(e) => failures.push(format!("{}: {e}", case.name)),
        }
    }
    report(3, failures.is_empty(), &format!("{failures:?}"));
}

#[test]
fn criterion_4_worked_quartic() {
    let tol = Tolerances::default();
    let f = Polynomial::from_ints(&[1, 0, 2, 0, 1]);
    let space = build_gram_space(&f).unwrap();
    let (lo, hi) = psd_line_search(&space.q0, &space.kernel[0], &tol).unwrap();
    let endpoints_ok = (lo + 1.0).abs() <= 1e-8 && (hi - 1.0).abs() <= 1e-8;
    let rep = verify_dimension(&f, &tol).unwrap();
    report(
        4,
        endpoints_ok && rep.computed == 1,
        &format!("interval [{lo}, {hi}], dim {}", rep.computed),
    );
}

#[test]
fn criterion_5_sos_residuals() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x736f73);
    let mut worst = 0.0f64;
    let mut failures = 0usize;
    let rand_poly = |rng: &mut ChaCha8Rng, deg: usize| {
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
        Polynomial::from_ints(&coeffs)
    };
    for i in 0..100 {
        let f = if i < 80 {
            let half = rng.gen_range(1..=10);
            let p = rand_poly(&mut rng, half);
            let q = rand_poly(&mut rng, half);
            let f = p.mul(&p).add(&q.mul(&q));
            if f.is_zero() {
                Polynomial::one()
            } else {
                f
            }
        } else {
            // Repeated real roots: a square real-root factor times a
            // two-squares positive part.
            let r = rng.gen_range(-2i64..=2);
            let m = rng.gen_range(1usize..=2);
            let half = rng.gen_range(1..=(10 - m).min(8));
            let p = rand_poly(&mut rng, half);
            let q = rand_poly(&mut rng, half);
            let core = p.mul(&p).add(&q.mul(&q)).add(&Polynomial::one());
            let root = Polynomial::from_ints(&[-r, 1]);
            root.pow(2 * m).mul(&core)
        };
        match two_squares(&f) {
            Ok(cert) => {
                worst = worst.max(cert.residual);
                if cert.residual > 1e-8 {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }
    report(5, failures == 0, &format!("{failures} failures, worst residual {worst:.3e}"));
}

#[test]
fn criterion_6_lifting_isomorphism() {
    let tol = Tolerances::default();
    let polys = [
        Polynomial::from_ints(&[1, 0, 2, 0, 1]),
        Polynomial::from_ints(&[2, 0, 3, 0, 3, 0, 1]),
        Polynomial::from_ints(&[1, -2, 2, -2, 1]),
        Polynomial::from_ints(&[1, 2, 3, 2, 1]),
        Polynomial::from_ints(&[5, 0, 0, 0, 0, 0, 1]),
    ];
    let shifts: [(i64, i64); 4] = [(1, 1), (2, -1), (-1, 2), (1, 0)];
    let mut failures = Vec::new();
    for f in &polys {
        for &(a, b) in &shifts {
            let ar = BigRational::from_integer(a.into());
            let br = BigRational::from_integer(b.into());
            match verify_isomorphism(f, &ar, &br, &tol) {
                Ok(iso) => {
                    let ok = iso.coeff_identity_err <= 1e-12
                        && iso.psd_preserved
                        && iso.injective
                        && iso.dim_transport
                        && iso.dim_source == iso.dim_lifted;
                    if !ok {
                        failures.push(format!("{:?} lift ({a},{b}): {iso:?}", f.coeffs_f64()));
                    }
                }
                Err(e) => failures.push(format!("{:?} lift ({a},{b}): {e}", f.coeffs_f64())),
            }
        }
    }
    report(6, failures.is_empty(), &format!("{failures:?}"));
}

#[test]
fn criterion_7_selftest_determinism() {
    let run = || {
        std::process::Command::new(env!("CARGO_BIN_EXE_gramdim"))
            .args(["selftest", "--json"])
            .output()
            .expect("selftest run")
    };
    let first = run();
    let second = run();
    let ok = first.status.success()
        && second.status.success()
        && !first.stdout.is_empty()
        && first.stdout == second.stdout;
    report(
        7,
        ok,
        &format!(
            "exit {:?}/{:?}, identical: {}",
            first.status.code(),
            second.status.code(),
            first.stdout == second.stdout
        ),
    );
}
