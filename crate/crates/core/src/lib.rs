//! Orthonormal polynomials in `z` and `z̄` for rotation-invariant probability
//! measures on the plane, their two-index recurrence coefficients, and the
//! truncated ladder-operator representation built from them.
//!
//! Every numerical routine is generic over [`Scalar`]: [`Surd`] gives exact
//! results for rational inputs, `f64` covers everything else.

pub mod bipoly;
pub mod cli;
pub mod error;
pub mod factorize;
pub mod ladder;
pub mod matrix;
pub mod measures;
pub mod orthosystem;
pub mod report;
pub mod scalar;
pub mod tolerance;

pub use bipoly::{conjugate_swap, inner_product, moment_functional, BivariatePolynomial};
pub use error::{Error, Result};
pub use factorize::{
    closed_form_alphas, detect_factorization, q_fock_operators, verify_q_relations,
    FactorizationResult, QFockOperators, QRelationsReport,
};
pub use ladder::{build_ladder_rep, vacuum_moment, verify_normality_interior, LadderRep, NormalityReport};
pub use matrix::SparseMatrix;
pub use measures::{
    bivariate_moment, check_nondegenerate, radial_moments, MeasureSpec, Param, RadialMomentSequence,
};
pub use orthosystem::{
    extract_alphas, gram_schmidt, sector_cholesky, verify_recurrence, verify_relations, AlphaTable,
    OrthonormalSystem,
};
pub use scalar::{Arith, Rational, Scalar, Surd};
pub use tolerance::Tolerance;
