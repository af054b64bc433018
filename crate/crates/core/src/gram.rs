//! The Gram map `Q -> X^t Q X` for the monomial vector `X = (1, x, ..., x^d)`,
//! its affine fibers, and the combinatorial dimension formulas.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::symmat::SymMatrix;

/// Binomial coefficient, zero when `k > n`.
pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// `dim GramS(f) = binom(d, 2)` for a positive univariate polynomial of
/// degree `2d`.
pub fn gram_space_dimension(d: u64) -> u64 {
    binom(d, 2)
}

/// Full dimension of the Gram spectrahedron of a polynomial of degree `2d`
/// in `n` variables lying in the interior of the SOS cone:
/// `binom(binom(d+n, n) + 1, 2) - binom(2d+n, n)`.
pub fn expected_full_dimension(n: u64, d: u64) -> u64 {
    let big_n = binom(d + n, n);
    binom(big_n + 1, 2) - binom(2 * d + n, n)
}

/// Coefficient sequence of `X^t Q X`: the coefficient of `x^m` is the sum
/// of the entries on the anti-diagonal `i + j = m`.
pub fn gram_apply(q: &SymMatrix) -> Vec<f64> {
    let n = q.size();
    let mut coeffs = vec![0.0; 2 * n - 1];
    for i in 0..n {
        for j in 0..n {
            coeffs[i + j] += q.get(i, j);
        }
    }
    coeffs
}

/// The affine space `Gram(f)` of a polynomial of degree `2d`, given as a
/// particular solution plus a basis of the kernel of the anti-diagonal-sum
/// map. The kernel basis has integer entries and length `binom(d, 2)`.
#[derive(Debug, Clone)]
pub struct GramAffineSpace {
    /// Half-degree.
    pub d: usize,
    /// Matrix size `d + 1`.
    pub n: usize,
    /// Particular Gram matrix of `f`.
    pub q0: SymMatrix,
    /// Kernel basis of the Gram map.
    pub kernel: Vec<SymMatrix>,
    /// Target coefficients of `f` as floats, ascending.
    pub coeffs: Vec<f64>,
}

impl GramAffineSpace {
    /// Point `q0 + sum t_k B_k`.
    pub fn point(&self, t: &[f64]) -> SymMatrix {
        assert_eq!(t.len(), self.kernel.len());
        let mut q = self.q0.clone();
        for (tk, bk) in t.iter().zip(&self.kernel) {
            q = q.add_scaled(*tk, bk);
        }
        q
    }

    /// Re-projects a drifted point onto `Gram(f)` by spreading each
    /// anti-diagonal coefficient residual evenly over its slots. Keeps
    /// the Gram residual at rounding level through long iterations.
    pub fn project(&self, q: &SymMatrix) -> SymMatrix {
        let applied = gram_apply(q);
        let mut out = q.clone();
        for m in 0..self.coeffs.len() {
            let err = applied[m] - self.coeffs[m];
            if err == 0.0 {
                continue;
            }
            let i_lo = m.saturating_sub(self.d);
            let i_hi = m.min(self.d);
            let slots = (i_hi - i_lo + 1) as f64;
            let delta = err / slots;
            // Each ordered slot drops by delta; setting the symmetric
            // entry once covers both ordered slots of an off-diagonal.
            for i in i_lo..=i_hi {
                let j = m - i;
                if i <= j {
                    out.set(i, j, out.get(i, j) - delta);
                }
            }
        }
        out
    }

    /// Max-norm residual of `gram_apply(q)` against the coefficients of
    /// `f`, relative to `max(1, max |coeff|)`.
    pub fn residual(&self, q: &SymMatrix) -> f64 {
        let applied = gram_apply(q);
        let scale = self
            .coeffs
            .iter()
            .fold(1.0f64, |a, &c| a.max(c.abs()));
        applied
            .iter()
            .zip(&self.coeffs)
            .fold(0.0f64, |a, (x, y)| a.max((x - y).abs()))
            / scale
    }
}

/// Builds `Gram(f)` for a nonzero polynomial of even degree `2d`.
///
/// The particular solution places even coefficients on the diagonal and
/// splits odd coefficients onto the adjacent superdiagonal. The kernel
/// basis consists of adjacent-slot differences along each anti-diagonal.
pub fn build_gram_space(f: &Polynomial) -> Result<GramAffineSpace> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg % 2 != 0 {
        return Err(Error::OddDegree(deg));
    }
    let d = deg / 2;
    let n = d + 1;
    let coeffs = f.coeffs_f64();

    let mut q0 = SymMatrix::zeros(n);
    for m in 0..=deg {
        let c = coeffs[m];
        if m % 2 == 0 {
            q0.set(m / 2, m / 2, c);
        } else {
            q0.set(m / 2, m / 2 + 1, c / 2.0);
        }
    }

    let mut kernel = Vec::new();
    for m in 0..=deg {
        // Slots (i, j) with i <= j, i + j = m.
        let i_lo = m.saturating_sub(d);
        let i_hi = m / 2;
        for i in i_lo..i_hi {
            let j = m - i;
            let mut b = SymMatrix::zeros(n);
            b.set(i, j, 1.0);
            if i + 1 == j - 1 {
                b.set(i + 1, i + 1, -2.0);
            } else {
                b.set(i + 1, j - 1, -1.0);
            }
            kernel.push(b);
        }
    }
    debug_assert_eq!(kernel.len() as u64, binom(d as u64, 2));

    Ok(GramAffineSpace {
        d,
        n,
        q0,
        kernel,
        coeffs,
    })
}
