//! Exact univariate polynomial arithmetic over the rationals.
//!
//! Everything structural (gcd, squarefree decomposition, Sturm counts,
//! the nonnegativity decision and the real-root excess) is computed in
//! exact rational arithmetic. Floating point only enters when roots are
//! approximated numerically for reports and downstream numerics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A univariate polynomial with exact rational coefficients in ascending
/// degree order: `coeffs[m]` multiplies `x^m`.
///
/// The representation is normalized: the trailing coefficient is nonzero.
/// The zero polynomial is the empty coefficient sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    /// Builds a polynomial from raw coefficients, stripping trailing zeros.
    pub fn normalize(raw: Vec<BigRational>) -> Self {
        let mut coeffs = raw;
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Polynomial::normalize(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        Polynomial { coeffs }
    }

    /// Convenience constructor from integer coefficients (ascending).
    pub fn from_ints(ints: &[i64]) -> Self {
        Polynomial::normalize(
            ints.iter()
                .map(|&n| BigRational::from_integer(BigInt::from(n)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^m` (zero beyond the degree).
    pub fn coeff(&self, m: usize) -> BigRational {
        self.coeffs.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs_f64().iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for m in 0..n {
            out.push(self.coeff(m) + other.coeff(m));
        }
        Polynomial::normalize(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for m in 0..n {
            out.push(self.coeff(m) - other.coeff(m));
        }
        Polynomial::normalize(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::normalize(out)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        Polynomial::normalize(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, c)| c * BigRational::from_integer(BigInt::from(m)))
            .collect();
        Polynomial::normalize(out)
    }

    pub fn pow(&self, k: usize) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder` and
    /// `deg remainder < deg divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lc = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for m in (dd..rem.len()).rev() {
            let q = &rem[m] / &lc;
            if !q.is_zero() {
                for j in 0..dd {
                    let t = &q * &divisor.coeffs[j];
                    rem[m - dd + j] -= t;
                }
            }
            rem[m] = BigRational::zero();
            quot[m - dd] = q;
        }
        Ok((Polynomial::normalize(quot), Polynomial::normalize(rem)))
    }

    /// Exact division; errors unless the remainder is exactly zero.
    pub fn divide_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => Polynomial::zero(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor via the Euclidean algorithm.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Squarefree decomposition by Yun's algorithm: returns pairs
    /// `(f_k, k)` with each `f_k` monic, squarefree and pairwise coprime,
    /// so that `self = lc * prod f_k^k`. Only nontrivial factors are
    /// listed.
    pub fn square_free_decomposition(&self) -> Result<Vec<(Polynomial, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.monic();
        if f.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.divide_exact(&a0)?;
        let c = fp.divide_exact(&a0)?;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut k = 1usize;
        while b.degree() != Some(0) {
            let a = b.gcd(&d);
            if a.degree().map_or(false, |deg| deg >= 1) {
                out.push((a.clone(), k));
            }
            b = b.divide_exact(&a)?;
            let c_next = d.divide_exact(&a)?;
            d = c_next.sub(&b.derivative());
            k += 1;
        }
        Ok(out)
    }

    /// Number of distinct real roots, counted exactly with a Sturm
    /// sequence over the whole real line. The input must be squarefree.
    pub fn count_real_roots(&self) -> Result<usize> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        if deg == 0 {
            return Ok(0);
        }
        let g = self.gcd(&self.derivative());
        if g.degree() != Some(0) {
            return Err(Error::NotSquarefree);
        }
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1])?;
            if r.is_zero() {
                break;
            }
            seq.push(r.neg());
        }
        // Signs at -inf and +inf come from leading coefficients.
        let sign_at = |p: &Polynomial, at_minus_inf: bool| -> i8 {
            let lc = p.leading_coeff().unwrap();
            let mut s: i8 = if lc.is_positive() { 1 } else { -1 };
            if at_minus_inf && p.degree().unwrap() % 2 == 1 {
                s = -s;
            }
            s
        };
        let variations = |at_minus_inf: bool| -> usize {
            let signs: Vec<i8> = seq.iter().map(|p| sign_at(p, at_minus_inf)).collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        Ok(variations(true) - variations(false))
    }

    /// Exact decision of global nonnegativity: even degree, positive
    /// leading coefficient, and no real root of odd multiplicity.
    pub fn is_nonnegative(&self) -> bool {
        let deg = match self.degree() {
            None => return true,
            Some(d) => d,
        };
        if deg == 0 {
            return !self.coeffs[0].is_negative();
        }
        if deg % 2 == 1 || self.leading_coeff().unwrap().is_negative() {
            return false;
        }
        let factors = match self.square_free_decomposition() {
            Ok(f) => f,
            Err(_) => return false,
        };
        for (fk, k) in &factors {
            if k % 2 == 1 {
                match fk.count_real_roots() {
                    Ok(0) => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    // Direct numer/denom conversion overflows for big integers; go through
    // a reduced float ratio instead.
    let numer = bigint_to_f64(r.numer());
    let denom = bigint_to_f64(r.denom());
    numer / denom
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    n.to_f64().unwrap_or(f64::NAN)
}
