//! Dimension of Gram spectrahedra of univariate polynomials.
//!
//! The Gram spectrahedron `GramS(f)` of a nonnegative univariate
//! polynomial `f` of degree `2d` is the set of positive semidefinite
//! matrices `Q` with `f = X^t Q X` for the monomial vector
//! `X = (1, x, ..., x^d)`; it parametrizes the sums-of-squares
//! representations of `f`. Writing the real roots of `f` with their
//! (necessarily even) multiplicities `2 e_i` and `e = sum e_i`, the
//! dimension of `GramS(f)` is `binom(d - e, 2)`.
//!
//! This crate computes `e` exactly, predicts the dimension, verifies it
//! numerically from a max-rank feasible point, and checks the lifting
//! isomorphism `GramS(f) ~ GramS((ax+b)^2 f)`.

pub mod battery;
pub mod deflate;
pub mod dim;
pub mod error;
pub mod gram;
pub mod lift;
pub mod poly;
pub mod roots;
pub mod sos;
pub mod symmat;

pub use deflate::{real_root_excess, DeflationReport, RealRoot};
pub use dim::{
    brute_force_dimension, face_dimension, max_rank_point, psd_line_search, verify_dimension,
    DimensionReport, MaxRankOutcome, Status, Tolerances,
};
pub use error::{Error, Result};
pub use gram::{
    binom, build_gram_space, expected_full_dimension, gram_apply, gram_space_dimension,
    GramAffineSpace,
};
pub use lift::{lift_gram, shift_matrices, verify_isomorphism, IsoReport, LiftMap};
pub use poly::Polynomial;
pub use sos::{complex_roots, two_squares, SosCertificate};
pub use symmat::SymMatrix;
