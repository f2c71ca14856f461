//! Acceptance thresholds for identity checks.

use crate::scalar::{Arith, Scalar};

/// `|residual| ≤ rel·scale + abs` in floating mode; literal zero in exact mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-10,
            abs: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn relative(rel: f64) -> Self {
        Tolerance {
            rel,
            ..Tolerance::default()
        }
    }

    pub fn accepts<S: Scalar>(&self, residual: &S, scale: f64) -> bool {
        match S::ARITH {
            Arith::Exact => residual.is_zero(),
            Arith::Float => residual.abs_f64() <= self.rel * scale.abs() + self.abs,
        }
    }

    pub fn accepts_f64(&self, arith: Arith, residual: f64, scale: f64) -> bool {
        match arith {
            Arith::Exact => residual == 0.0,
            Arith::Float => residual.abs() <= self.rel * scale.abs() + self.abs,
        }
    }
}
