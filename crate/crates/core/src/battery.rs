//! Deterministic generator for the verification battery: polynomials
//! `f = prod (x - r_i)^{2 e_i} * g` with rational roots in
//! `{-2, -1, 0, 1, 2}` and `g = a^2 + b^2 + 1` for random integer `a, b`,
//! covering every `(d, e)` with `d <= 8`, `e <= d`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::Polynomial;

/// One battery polynomial with its known structure.
#[derive(Debug, Clone)]
pub struct BatteryCase {
    pub name: String,
    pub poly: Polynomial,
    pub d: usize,
    pub e: usize,
}

pub const BATTERY_SEED: u64 = 0x62617474; // "batt"

fn int_poly(rng: &mut ChaCha8Rng, degree: usize) -> Polynomial {
    let mut coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-3..=3)).collect();
    if coeffs[degree] == 0 {
        coeffs[degree] = rng.gen_range(1..=3);
    }
    Polynomial::from_ints(&coeffs)
}

/// A random positive polynomial of degree `2m`, built as
/// `a^2 + b^2 + 1` with `deg a = m`.
fn positive_part(rng: &mut ChaCha8Rng, m: usize) -> Polynomial {
    let a = int_poly(rng, m);
    let b = int_poly(rng, m.saturating_sub(1));
    a.mul(&a).add(&b.mul(&b)).add(&Polynomial::one())
}

fn case(rng: &mut ChaCha8Rng, d: usize, e: usize, variant: usize) -> BatteryCase {
    let mut f = positive_part(rng, d - e);
    // Spread the excess over distinct roots in {-2, ..., 2}.
    let mut roots = vec![-2i64, -1, 0, 1, 2];
    for i in (1..roots.len()).rev() {
        roots.swap(i, rng.gen_range(0..=i));
    }
    let mut remaining = e;
    let mut idx = 0;
    while remaining > 0 {
        let ei = if idx + 1 == roots.len() {
            remaining
        } else {
            rng.gen_range(1..=remaining)
        };
        let r = roots[idx];
        let linear = Polynomial::normalize(vec![
            BigRational::from_integer(BigInt::from(-r)),
            BigRational::from_integer(BigInt::from(1)),
        ]);
        f = f.mul(&linear.pow(2 * ei));
        remaining -= ei;
        idx += 1;
    }
    BatteryCase {
        name: format!("d{d}e{e}v{variant}"),
        poly: f,
        d,
        e,
    }
}

/// The full battery: `variants` cases for every `(d, e)` with
/// `1 <= d <= max_d` and `0 <= e <= d`, generated deterministically from
/// the seed.
pub fn theorem_battery(seed: u64, max_d: usize, variants: usize) -> Vec<BatteryCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for d in 1..=max_d {
        for e in 0..=d {
            for v in 0..variants {
                out.push(case(&mut rng, d, e, v));
            }
        }
    }
    out
}
