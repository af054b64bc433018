//! Two-squares certificates: an explicit feasible point of the Gram
//! spectrahedron built from the classical pairing of complex-conjugate
//! roots, `f = p^2 + q^2` with `p + iq` assembled from one representative
//! per conjugate pair.

use nalgebra::DVector;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::gram::gram_apply;
use crate::poly::Polynomial;
use crate::roots::squarefree_roots;
use crate::symmat::SymMatrix;

/// Maximum accepted relative residual of `p^2 + q^2 - f`.
pub const SOS_RESIDUAL_TOL: f64 = 1e-8;

/// A certificate `f = p^2 + q^2` with its induced rank-<=2 Gram point.
#[derive(Debug, Clone)]
pub struct SosCertificate {
    /// Coefficients of `p`, ascending.
    pub p: Vec<f64>,
    /// Coefficients of `q`, ascending.
    pub q: Vec<f64>,
    /// `v_p v_p^t + v_q v_q^t` with coefficient vectors padded to `d + 1`.
    pub gram_point: SymMatrix,
    /// Max-norm of `(p^2 + q^2) - f` relative to the max-norm of `f`.
    pub residual: f64,
}

/// All complex roots of `f` with multiplicities. Multiplicities come from
/// the exact squarefree decomposition; the numeric roots are therefore
/// always simple roots of their factor. Conjugate pairs are exact by
/// construction.
pub fn complex_roots(f: &Polynomial) -> Result<Vec<(Complex<f64>, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (fk, k) in f.square_free_decomposition()? {
        let roots = squarefree_roots(&fk)?;
        for r in roots.real {
            out.push((Complex::new(r, 0.0), k));
        }
        for z in roots.complex_upper {
            out.push((z, k));
            out.push((z.conj(), k));
        }
    }
    out.sort_by(|a, b| {
        a.0.re
            .partial_cmp(&b.0.re)
            .unwrap()
            .then(a.0.im.partial_cmp(&b.0.im).unwrap())
    });
    Ok(out)
}

/// Builds a two-squares certificate of a nonnegative polynomial.
///
/// `h = sqrt(lc) * prod (x - z_j)^{m_j} * prod (x - r_i)^{e_i}` over the
/// upper-half representatives and the real roots at half multiplicity;
/// then `p = Re h`, `q = Im h`. When `f` has no roots off the real line,
/// `q = 0` and the certificate is a single square.
pub fn two_squares(f: &Polynomial) -> Result<SosCertificate> {
    two_squares_selected(f, 0)
}

/// Like [`two_squares`], but bit `b` of `mask` swaps the representative
/// of the `b`-th conjugate-root slot (one slot per copy of each complex
/// root) to the lower half plane. Different masks give different rank-<=2
/// feasible points whose ranges jointly span the maximal face.
pub fn two_squares_selected(f: &Polynomial, mask: u64) -> Result<SosCertificate> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_nonnegative() {
        return Err(Error::NotNonnegative);
    }
    let deg = f.degree().unwrap();
    let d = deg / 2;
    let lc = crate::poly::rational_to_f64(f.leading_coeff().unwrap());

    let mut h = vec![Complex::new(lc.sqrt(), 0.0)];
    let mut slot = 0u32;
    for (fk, k) in f.square_free_decomposition()? {
        let roots = squarefree_roots(&fk)?;
        if !roots.real.is_empty() && k % 2 == 1 {
            return Err(Error::NotNonnegative);
        }
        for &r in &roots.real {
            for _ in 0..k / 2 {
                h = mul_linear(&h, Complex::new(r, 0.0));
            }
        }
        for &z in &roots.complex_upper {
            for _ in 0..k {
                let pick = if mask >> slot & 1 == 1 { z.conj() } else { z };
                slot += 1;
                h = mul_linear(&h, pick);
            }
        }
    }
    debug_assert_eq!(h.len(), d + 1);

    let p: Vec<f64> = h.iter().map(|c| c.re).collect();
    let q: Vec<f64> = h.iter().map(|c| c.im).collect();

    let vp = DVector::from_iterator(d + 1, p.iter().copied());
    let vq = DVector::from_iterator(d + 1, q.iter().copied());
    let gram_point = SymMatrix::outer(&vp).add(&SymMatrix::outer(&vq));

    let target = f.coeffs_f64();
    let applied = gram_apply(&gram_point);
    let scale = target.iter().fold(0.0f64, |a, &c| a.max(c.abs()));
    let residual = applied
        .iter()
        .zip(&target)
        .fold(0.0f64, |a, (x, y)| a.max((x - y).abs()))
        / scale;
    if residual > SOS_RESIDUAL_TOL {
        return Err(Error::Numerical(format!(
            "two-squares residual {residual:.3e} exceeds {SOS_RESIDUAL_TOL:.0e}"
        )));
    }
    Ok(SosCertificate {
        p,
        q,
        gram_point,
        residual,
    })
}

/// Multiplies a complex-coefficient polynomial by `(x - z)`.
fn mul_linear(h: &[Complex<f64>], z: Complex<f64>) -> Vec<Complex<f64>> {
    let mut out = vec![Complex::new(0.0, 0.0); h.len() + 1];
    for (i, &c) in h.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c * z;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_sum_of_squares(f: &Polynomial, cert: &SosCertificate) {
        let target = f.coeffs_f64();
        let mut got = vec![0.0; target.len()];
        for (i, &a) in cert.p.iter().enumerate() {
            for (j, &b) in cert.p.iter().enumerate() {
                got[i + j] += a * b;
            }
        }
        for (i, &a) in cert.q.iter().enumerate() {
            for (j, &b) in cert.q.iter().enumerate() {
                got[i + j] += a * b;
            }
        }
        let scale = target.iter().fold(1.0f64, |a, &c| a.max(c.abs()));
        for (x, y) in got.iter().zip(&target) {
            assert!((x - y).abs() <= 1e-8 * scale, "{got:?} vs {target:?}");
        }
    }

    #[test]
    fn complex_roots_examples() {
        let roots = complex_roots(&Polynomial::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].0 - Complex::new(0.0, -1.0)).norm() < 1e-12);
        assert!((roots[1].0 - Complex::new(0.0, 1.0)).norm() < 1e-12);

        let roots = complex_roots(&Polynomial::from_ints(&[4, 0, 5, 0, 1])).unwrap();
        let expect = [
            Complex::new(0.0, -2.0),
            Complex::new(0.0, -1.0),
            Complex::new(0.0, 1.0),
            Complex::new(0.0, 2.0),
        ];
        for ((z, m), w) in roots.iter().zip(expect) {
            assert_eq!(*m, 1);
            assert!((z - w).norm() < 1e-10);
        }

        let roots = complex_roots(&Polynomial::monomial(4)).unwrap();
        assert_eq!(roots, vec![(Complex::new(0.0, 0.0), 4)]);
    }

    #[test]
    fn two_squares_x2_plus_1() {
        let f = Polynomial::from_ints(&[1, 0, 1]);
        let cert = two_squares(&f).unwrap();
        assert_sum_of_squares(&f, &cert);
        assert!(cert.residual <= 1e-12);
    }

    #[test]
    fn two_squares_biquadratics() {
        // (x^2-1)^2 + 4x^2 = x^4 + 2x^2 + 1.
        let f = Polynomial::from_ints(&[1, 0, 2, 0, 1]);
        let cert = two_squares(&f).unwrap();
        assert_sum_of_squares(&f, &cert);

        // (x^2-2)^2 + 9x^2 = x^4 + 5x^2 + 4.
        let f = Polynomial::from_ints(&[4, 0, 5, 0, 1]);
        let cert = two_squares(&f).unwrap();
        assert_sum_of_squares(&f, &cert);
    }

    #[test]
    fn pure_even_power_is_single_square() {
        let f = Polynomial::monomial(4);
        let cert = two_squares(&f).unwrap();
        assert_sum_of_squares(&f, &cert);
        assert!(cert.q.iter().all(|&c| c == 0.0));
    }

    #[test]
    fn gram_point_is_low_rank_psd() {
        let f = Polynomial::from_ints(&[4, 0, 5, 0, 1]);
        let cert = two_squares(&f).unwrap();
        let ev = cert.gram_point.eigenvalues();
        let trace = cert.gram_point.trace();
        assert!(ev.iter().filter(|&&l| l > 1e-8 * trace).count() <= 2);
        assert!(ev.iter().all(|&l| l >= -1e-9 * trace));
    }

    #[test]
    fn rejects_non_nonnegative() {
        assert!(matches!(
            two_squares(&Polynomial::monomial(3)),
            Err(Error::NotNonnegative)
        ));
    }
}
