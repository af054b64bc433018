//! Real-root excess of a nonnegative polynomial: every real root has even
//! multiplicity `2 e_i`, and `e = sum e_i` is the discrete invariant that
//! shrinks the spectrahedron dimension. The excess is computed exactly
//! from the squarefree structure; root values are numeric and only appear
//! in the report.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::roots::{squarefree_roots, synthetic_div};

/// A real root of the input together with half its multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    pub half_multiplicity: usize,
}

/// Outcome of deflating the real roots of a nonnegative polynomial.
#[derive(Debug, Clone)]
pub struct DeflationReport {
    pub real_roots: Vec<RealRoot>,
    /// `e = sum of half multiplicities`.
    pub excess: usize,
    /// Floating-coefficient approximation of the positive part `g`, with
    /// `degree(g) = degree(f) - 2 * excess`.
    pub positive_part: Vec<f64>,
    /// Exact squarefree factors `(f_k, k)` of the input.
    pub squarefree_factors: Vec<(Polynomial, usize)>,
}

/// Computes the real-root excess `e` and the deflation report of a
/// nonnegative polynomial.
pub fn real_root_excess(f: &Polynomial) -> Result<(usize, DeflationReport)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_nonnegative() {
        return Err(Error::NotNonnegative);
    }
    let factors = f.square_free_decomposition()?;

    let mut real_roots = Vec::new();
    let mut excess = 0usize;
    // positive_part = lc * prod over factors of (f_k with real roots
    // removed)^k, assembled in floating point. Real roots of a squarefree
    // factor are simple, so synthetic division is well conditioned.
    let lc = f
        .leading_coeff()
        .map(crate::poly::rational_to_f64)
        .unwrap_or(1.0);
    let mut positive = vec![lc];
    for (fk, k) in &factors {
        let roots = squarefree_roots(fk)?;
        if !roots.real.is_empty() && k % 2 == 1 {
            return Err(Error::NotNonnegative);
        }
        for &r in &roots.real {
            excess += k / 2;
            real_roots.push(RealRoot {
                value: r,
                half_multiplicity: k / 2,
            });
        }
        let mut deflated = fk.monic().coeffs_f64();
        for &r in &roots.real {
            deflated = synthetic_div(&deflated, r);
        }
        for _ in 0..*k {
            positive = mul_f64(&positive, &deflated);
        }
    }
    real_roots.sort_by(|a, b| a.value.partial_cmp(&b.value).unwrap());

    let report = DeflationReport {
        real_roots,
        excess,
        positive_part: positive,
        squarefree_factors: factors,
    };
    debug_assert_eq!(
        report.positive_part.len(),
        f.degree().unwrap() + 1 - 2 * excess
    );
    Ok((excess, report))
}

fn mul_f64(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
