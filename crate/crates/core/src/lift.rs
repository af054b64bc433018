//! The affine isomorphism `GramS(f) -> GramS((ax+b)^2 f)` given by
//! `M -> A M A^t` with `A = aR + bS`, where `R` shifts coefficients up by
//! one degree and `S` pads with a zero row. Since "affine isomorphism" is
//! not a single assertable predicate, the verification harness decomposes
//! it into four finite checks: coefficient identity, PSD preservation,
//! injectivity, and dimension transport.

use nalgebra::DMatrix;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dim::{verify_dimension, Status, Tolerances};
use crate::error::{Error, Result};
use crate::gram::{build_gram_space, gram_apply};
use crate::poly::Polynomial;
use crate::sos::two_squares;
use crate::symmat::SymMatrix;

/// The shift matrices of the lift: `R` is `(d+2) x (d+1)` with ones on the
/// subdiagonal, `S` is `(d+2) x (d+1)` with ones on the diagonal of its
/// top square block.
pub fn shift_matrices(d: usize) -> (DMatrix<f64>, DMatrix<f64>) {
    let rows = d + 2;
    let cols = d + 1;
    let mut r = DMatrix::zeros(rows, cols);
    let mut s = DMatrix::zeros(rows, cols);
    for i in 0..cols {
        r[(i + 1, i)] = 1.0;
        s[(i, i)] = 1.0;
    }
    (r, s)
}

/// The linear map `q -> (ax + b) q` on coefficient vectors, realized by
/// the matrix `A = aR + bS`.
#[derive(Debug, Clone)]
pub struct LiftMap {
    pub a: f64,
    pub b: f64,
    pub d: usize,
    pub matrix: DMatrix<f64>,
}

impl LiftMap {
    pub fn new(a: f64, b: f64, d: usize) -> Result<Self> {
        if a == 0.0 && b == 0.0 {
            return Err(Error::DegenerateLift);
        }
        let (r, s) = shift_matrices(d);
        Ok(LiftMap {
            a,
            b,
            d,
            matrix: r * a + s * b,
        })
    }

    /// Applies `A` to a coefficient vector of length `d + 1`.
    pub fn apply_coeffs(&self, q: &[f64]) -> Vec<f64> {
        assert_eq!(q.len(), self.d + 1);
        let v = nalgebra::DVector::from_column_slice(q);
        (&self.matrix * v).iter().copied().collect()
    }

    /// `A M A^t`, the Gram-space action of multiplication by `(ax+b)^2`.
    pub fn apply_gram(&self, m: &SymMatrix) -> SymMatrix {
        assert_eq!(m.size(), self.d + 1);
        let lifted = &self.matrix * m.as_dmatrix() * self.matrix.transpose();
        SymMatrix::from_dense(&lifted)
    }
}

/// `A M A^t` for `A = aR + bS` sized to `M`.
pub fn lift_gram(m: &SymMatrix, a: f64, b: f64) -> Result<SymMatrix> {
    let lift = LiftMap::new(a, b, m.size() - 1)?;
    Ok(lift.apply_gram(m))
}

/// Outcome of the four-part isomorphism verification.
#[derive(Debug, Clone)]
pub struct IsoReport {
    /// Worst relative coefficient error of `gram_apply(A Q A^t)` against
    /// the coefficients of `(ax+b)^2 f` over random Gram points of `f`.
    pub coeff_identity_err: f64,
    pub coeff_identity: bool,
    pub psd_preserved: bool,
    /// Numerical rank of the induced map on vectorized symmetric
    /// matrices; injectivity requires the full `binom(d+2, 2)`.
    pub injectivity_rank: usize,
    pub injective: bool,
    pub dim_source: u64,
    pub dim_lifted: u64,
    pub dim_transport: bool,
    pub ok: bool,
}

const ISO_SEED: u64 = 0x6c696674; // "lift"

/// Verifies the lifting isomorphism for a nonnegative `f` and scalars
/// `(a, b) != (0, 0)`, given exactly so the lifted polynomial stays
/// exact.
pub fn verify_isomorphism(
    f: &Polynomial,
    a: &BigRational,
    b: &BigRational,
    tol: &Tolerances,
) -> Result<IsoReport> {
    use num_traits::Zero;
    if a.is_zero() && b.is_zero() {
        return Err(Error::DegenerateLift);
    }
    if !f.is_nonnegative() {
        return Err(Error::NotNonnegative);
    }
    let linear = Polynomial::normalize(vec![b.clone(), a.clone()]);
    let lifted_poly = linear.mul(&linear).mul(f);

    let space = build_gram_space(f)?;
    let af = crate::poly::rational_to_f64(a);
    let bf = crate::poly::rational_to_f64(b);
    let lift = LiftMap::new(af, bf, space.d)?;

    // (1) Coefficient identity on random (not necessarily PSD) Gram
    // points of f; the identity is linear, so PSD is irrelevant here.
    let target = lifted_poly.coeffs_f64();
    let scale = target.iter().fold(1.0f64, |acc, &c| acc.max(c.abs()));
    let mut rng = ChaCha8Rng::seed_from_u64(ISO_SEED);
    let mut coeff_err = 0.0f64;
    for _ in 0..5 {
        let t: Vec<f64> = (0..space.kernel.len())
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect();
        let q = space.point(&t);
        let applied = gram_apply(&lift.apply_gram(&q));
        for (x, y) in applied.iter().zip(&target) {
            coeff_err = coeff_err.max((x - y).abs() / scale);
        }
    }
    let coeff_identity = coeff_err <= 1e-12;

    // (2) PSD preservation at the SOS feasible point.
    let cert = two_squares(f)?;
    let lifted_point = lift.apply_gram(&cert.gram_point);
    let psd_preserved =
        lifted_point.lambda_min() >= -1e-9 * lifted_point.trace().abs().max(1.0);

    // (3) Injectivity of M -> A M A^t on vectorized symmetric matrices.
    let n = space.n;
    let sym_dim = n * (n + 1) / 2;
    let rows = (n + 1) * (n + 1);
    let mut induced = DMatrix::zeros(rows, sym_dim);
    let mut col = 0;
    for i in 0..n {
        for j in i..n {
            let mut basis = SymMatrix::zeros(n);
            basis.set(i, j, 1.0);
            induced.set_column(col, &lift.apply_gram(&basis).vec_entries());
            col += 1;
        }
    }
    let sv = induced.svd(false, false).singular_values;
    let s_max = sv.iter().fold(0.0f64, |acc, &s| acc.max(s));
    let injectivity_rank = sv.iter().filter(|&&s| s > tol.rank_rel * s_max).count();
    let injective = injectivity_rank == sym_dim;

    // (4) Dimension transport through the full pipeline.
    let source = verify_dimension(f, tol)?;
    let lifted = verify_dimension(&lifted_poly, tol)?;
    let dim_transport = source.status == Status::Determined
        && lifted.status == Status::Determined
        && source.computed == lifted.computed;

    Ok(IsoReport {
        coeff_identity_err: coeff_err,
        coeff_identity,
        psd_preserved,
        injectivity_rank,
        injective,
        dim_source: source.computed,
        dim_lifted: lifted.computed,
        dim_transport,
        ok: coeff_identity && psd_preserved && injective && dim_transport,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn shift_matrices_small() {
        let (r, s) = shift_matrices(0);
        assert_eq!(r.as_slice(), &[0.0, 1.0]);
        assert_eq!(s.as_slice(), &[1.0, 0.0]);

        let (r, s) = shift_matrices(1);
        assert_eq!(r.nrows(), 3);
        assert_eq!(r[(1, 0)], 1.0);
        assert_eq!(r[(2, 1)], 1.0);
        assert_eq!(s[(0, 0)], 1.0);
        assert_eq!(s[(1, 1)], 1.0);
        assert_eq!(s[(2, 0)], 0.0);
    }

    #[test]
    fn coefficient_action_is_multiplication() {
        // A(a=1, b=0) shifts: q(x) -> x q(x).
        let lift = LiftMap::new(1.0, 0.0, 2).unwrap();
        assert_eq!(lift.apply_coeffs(&[3.0, 2.0, 1.0]), vec![0.0, 3.0, 2.0, 1.0]);
        // General (a, b): (2x + 3)(1 + x) = 3 + 5x + 2x^2.
        let lift = LiftMap::new(2.0, 3.0, 1).unwrap();
        assert_eq!(lift.apply_coeffs(&[1.0, 1.0]), vec![3.0, 5.0, 2.0]);
    }

    #[test]
    fn lift_gram_examples() {
        // M = [1] (f = 1), a=1, b=0: Gram matrix of x^2.
        let one = SymMatrix::identity(1);
        let lifted = lift_gram(&one, 1.0, 0.0).unwrap();
        assert_eq!(gram_apply(&lifted), vec![0.0, 0.0, 1.0]);

        // M = I_2 (f = x^2 + 1), a=1, b=0: x^2 (x^2 + 1).
        let lifted = lift_gram(&SymMatrix::identity(2), 1.0, 0.0).unwrap();
        assert_eq!(gram_apply(&lifted), vec![0.0, 0.0, 1.0, 0.0, 1.0]);

        // M = [1] (f = 1), a=b=1: Gram of (x + 1)^2.
        let lifted = lift_gram(&one, 1.0, 1.0).unwrap();
        assert_eq!(gram_apply(&lifted), vec![1.0, 2.0, 1.0]);
    }

    #[test]
    fn degenerate_lift_rejected() {
        assert!(matches!(
            lift_gram(&SymMatrix::identity(2), 0.0, 0.0),
            Err(Error::DegenerateLift)
        ));
    }

    #[test]
    fn isomorphism_shift_by_x() {
        let tol = Tolerances::default();
        let f = Polynomial::from_ints(&[1, 0, 2, 0, 1]);
        let report = verify_isomorphism(&f, &rat(1), &rat(0), &tol).unwrap();
        assert!(report.ok, "{report:?}");
        assert_eq!(report.dim_source, 1);
        assert_eq!(report.dim_lifted, 1);
    }

    #[test]
    fn isomorphism_on_constant() {
        let tol = Tolerances::default();
        let f = Polynomial::one();
        let report = verify_isomorphism(&f, &rat(2), &rat(-1), &tol).unwrap();
        assert!(report.ok, "{report:?}");
        assert_eq!(report.dim_source, 0);
        assert_eq!(report.dim_lifted, 0);
    }

    #[test]
    fn coefficient_identity_general_scalars() {
        let tol = Tolerances::default();
        let f = Polynomial::from_ints(&[4, 0, 5, 0, 1]);
        let report = verify_isomorphism(&f, &rat(2), &rat(3), &tol).unwrap();
        assert!(report.coeff_identity, "err = {}", report.coeff_identity_err);
        assert!(report.ok, "{report:?}");
    }
}
