//! Benchmark-only crate; see `benches/pipeline.rs`.
//!
//! A few shared fixture polynomials live here so the benches stay small.

use gramdim_core::Polynomial;

/// `(x^2 + 1)^2 = x^4 + 2x^2 + 1`, the worked spectrahedron example.
pub fn biquadratic() -> Polynomial {
    Polynomial::from_ints(&[1, 0, 2, 0, 1])
}

/// A positive degree-12 polynomial built as a sum of two squares plus one.
pub fn degree_12_positive() -> Polynomial {
    let a = Polynomial::from_ints(&[1, -2, 0, 3, 1, 0, 2]);
    let b = Polynomial::from_ints(&[2, 1, -1, 0, 1]);
    a.mul(&a).add(&b.mul(&b)).add(&Polynomial::one())
}

/// `(x - 1)^4 (x^2 + 2)` with excess 2.
pub fn deflatable_sextic() -> Polynomial {
    Polynomial::from_ints(&[-1, 1])
        .pow(4)
        .mul(&Polynomial::from_ints(&[2, 0, 1]))
}
