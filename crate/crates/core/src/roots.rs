//! Numeric root finding for squarefree polynomials: scaled companion
//! matrix eigenvalues refined by Newton polishing. The number of real
//! roots is taken from the exact Sturm count, never from imaginary-part
//! clustering alone.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Roots of a squarefree polynomial: real roots plus one representative
/// (positive imaginary part) per conjugate pair.
#[derive(Debug, Clone)]
pub struct SquarefreeRoots {
    pub real: Vec<f64>,
    pub complex_upper: Vec<Complex<f64>>,
}

/// All complex roots of a squarefree polynomial, unclassified.
///
/// The QR iteration on a companion matrix can stall on some inputs, so
/// it runs with a bounded iteration count and falls back to the shifted
/// polynomial `f(x + c)` for a few fixed offsets `c`; a shift that moves
/// the stalling eigenvalue cluster lets the iteration converge, and the
/// roots shift back exactly.
pub fn companion_roots(monic: &[f64]) -> Result<Vec<Complex<f64>>> {
    let n = monic.len() - 1;
    debug_assert!((monic[n] - 1.0).abs() < 1e-12);
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![Complex::new(-monic[0], 0.0)]);
    }
    const SHIFTS: [f64; 5] = [0.0, 0.34375, -0.71875, 1.15625, -1.53125];
    for &c in &SHIFTS {
        let shifted = taylor_shift(monic, c);
        if let Some(roots) = companion_eigenvalues(&shifted) {
            return Ok(roots.into_iter().map(|z| z + c).collect());
        }
    }
    Err(Error::Numerical(
        "companion eigenvalue iteration failed to converge".into(),
    ))
}

/// Coefficients of `f(x + c)` by repeated synthetic division.
fn taylor_shift(coeffs: &[f64], c: f64) -> Vec<f64> {
    let mut out = coeffs.to_vec();
    if c == 0.0 {
        return out;
    }
    let n = out.len();
    for i in 0..n - 1 {
        for j in (i..n - 1).rev() {
            let next = out[j + 1];
            out[j] += c * next;
        }
    }
    out
}

fn companion_eigenvalues(monic: &[f64]) -> Option<Vec<Complex<f64>>> {
    let n = monic.len() - 1;
    // Scale x = s*y so the companion matrix of f(s*y)/s^n is balanced.
    let mut s = 0.0f64;
    for (i, &a) in monic.iter().enumerate().take(n) {
        if a != 0.0 {
            s = s.max(a.abs().powf(1.0 / (n - i) as f64));
        }
    }
    if s == 0.0 {
        return Some(vec![Complex::new(0.0, 0.0); n]);
    }
    let scaled: Vec<f64> = monic
        .iter()
        .enumerate()
        .map(|(i, &a)| a / s.powi((n - i) as i32))
        .collect();

    let mut comp = DMatrix::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        comp[(i, n - 1)] = -scaled[i];
    }
    let schur = nalgebra::linalg::Schur::try_new(comp, 1e-15, 200 * n * n)?;
    let roots: Vec<Complex<f64>> = schur.complex_eigenvalues().iter().map(|z| z * s).collect();
    if roots.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return None;
    }
    Some(roots)
}

fn eval_complex(coeffs: &[f64], z: Complex<f64>) -> Complex<f64> {
    coeffs
        .iter()
        .rev()
        .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn derivative_coeffs(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(m, &c)| c * m as f64)
        .collect()
}

/// Newton refinement; roots of squarefree polynomials are simple, so the
/// iteration is locally quadratic.
pub fn polish(coeffs: &[f64], mut z: Complex<f64>) -> Complex<f64> {
    let deriv = derivative_coeffs(coeffs);
    for _ in 0..30 {
        let f = eval_complex(coeffs, z);
        let fp = eval_complex(&deriv, z);
        if fp.norm() == 0.0 {
            break;
        }
        let step = f / fp;
        z -= step;
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Classified roots of a squarefree polynomial with exact rational
/// coefficients. The count of real roots comes from the Sturm sequence;
/// the numerically smallest imaginary parts are declared real.
pub fn squarefree_roots(fk: &Polynomial) -> Result<SquarefreeRoots> {
    let deg = fk.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(SquarefreeRoots {
            real: Vec::new(),
            complex_upper: Vec::new(),
        });
    }
    let n_real = fk.count_real_roots()?;
    let monic = fk.monic().coeffs_f64();
    let mut roots = companion_roots(&monic)?;
    for z in roots.iter_mut() {
        *z = polish(&monic, *z);
    }
    roots.sort_by(|a, b| {
        a.im.abs()
            .partial_cmp(&b.im.abs())
            .unwrap()
            .then(a.re.partial_cmp(&b.re).unwrap())
    });

    let mut real: Vec<f64> = roots[..n_real]
        .iter()
        .map(|z| polish(&monic, Complex::new(z.re, 0.0)).re)
        .collect();
    real.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut complex_upper: Vec<Complex<f64>> = roots[n_real..]
        .iter()
        .filter(|z| z.im > 0.0)
        .copied()
        .collect();
    complex_upper.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    if 2 * complex_upper.len() != deg - n_real {
        return Err(Error::Numerical(format!(
            "conjugate pairing failed: {} real roots, {} upper-half roots, degree {}",
            n_real,
            complex_upper.len(),
            deg
        )));
    }
    Ok(SquarefreeRoots { real, complex_upper })
}

/// Deflates `coeffs` by the linear factor `(x - r)` via synthetic
/// division, dropping the remainder.
pub fn synthetic_div(coeffs: &[f64], r: f64) -> Vec<f64> {
    let n = coeffs.len();
    if n <= 1 {
        return Vec::new();
    }
    let mut out = vec![0.0; n - 1];
    let mut carry = coeffs[n - 1];
    for m in (0..n - 1).rev() {
        out[m] = carry;
        carry = coeffs[m] + carry * r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_x2_plus_1() {
        let r = squarefree_roots(&Polynomial::from_ints(&[1, 0, 1])).unwrap();
        assert!(r.real.is_empty());
        assert_eq!(r.complex_upper.len(), 1);
        let z = r.complex_upper[0];
        assert!((z.re).abs() < 1e-12 && (z.im - 1.0).abs() < 1e-12);
    }

    #[test]
    fn roots_of_x2_minus_2() {
        let r = squarefree_roots(&Polynomial::from_ints(&[-2, 0, 1])).unwrap();
        assert_eq!(r.real.len(), 2);
        assert!((r.real[0] + 2.0f64.sqrt()).abs() < 1e-12);
        assert!((r.real[1] - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn mixed_roots() {
        // x(x^2+4): roots 0, +-2i.
        let r = squarefree_roots(&Polynomial::from_ints(&[0, 4, 0, 1])).unwrap();
        assert_eq!(r.real, vec![0.0]);
        assert_eq!(r.complex_upper.len(), 1);
        assert!((r.complex_upper[0] - Complex::new(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn synthetic_division() {
        // (x-2)(x+3) = x^2 + x - 6.
        let q = synthetic_div(&[-6.0, 1.0, 1.0], 2.0);
        assert_eq!(q, vec![3.0, 1.0]);
    }
}
