//! Truncated representation of the field operator on the two-index basis.
//!
//! Basis vectors `e_{k,l}`, `0 ≤ k, l ≤ M`, ordered row-major by `(k, l)`;
//! `k` counts particles and `l` antiparticles, and `e_{0,0}` is the vacuum.
//!
//! ```text
//! Φ  e_{k,l} = α_{k,l} e_{k+1,l} + α_{l-1,k} e_{k,l-1}
//! Φ* e_{k,l} = α_{l,k} e_{k,l+1} + α_{k-1,l} e_{k-1,l}
//! ```
//!
//! `Φ = K* + Λ`, where `K*` raises `k` and `Λ` lowers `l`. Transitions that
//! leave the grid are dropped, so identities are exact only on the interior
//! `k, l ≤ M − 1` or along short vacuum paths.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::orthosystem::AlphaTable;
use crate::report::float_value;
use crate::scalar::{Arith, Scalar};
use crate::tolerance::Tolerance;

/// Row-major index of `e_{k,l}` on a grid with cutoff `M`.
pub fn basis_index(cutoff: usize, k: usize, l: usize) -> usize {
    k * (cutoff + 1) + l
}

pub fn basis_state(cutoff: usize, index: usize) -> (usize, usize) {
    (index / (cutoff + 1), index % (cutoff + 1))
}

#[derive(Clone, Debug)]
pub struct LadderRep<S> {
    pub cutoff: usize,
    pub phi: SparseMatrix<S>,
    pub phi_star: SparseMatrix<S>,
    pub k_star: SparseMatrix<S>,
    pub lambda: SparseMatrix<S>,
    pub n_particles: SparseMatrix<S>,
    pub n_antiparticles: SparseMatrix<S>,
}

impl<S: Scalar> LadderRep<S> {
    pub fn dim(&self) -> usize {
        (self.cutoff + 1) * (self.cutoff + 1)
    }

    pub fn index(&self, k: usize, l: usize) -> usize {
        basis_index(self.cutoff, k, l)
    }

    pub fn state(&self, index: usize) -> (usize, usize) {
        basis_state(self.cutoff, index)
    }

    pub fn is_interior(&self, index: usize) -> bool {
        let (k, l) = self.state(index);
        k < self.cutoff && l < self.cutoff
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cutoff": self.cutoff,
            "phi": self.phi.to_json(),
            "phi_star": self.phi_star.to_json(),
            "k_star": self.k_star.to_json(),
            "lambda": self.lambda.to_json(),
            "n_particles": self.n_particles.to_json(),
            "n_antiparticles": self.n_antiparticles.to_json(),
        })
    }
}

fn required<S: Scalar>(a: &AlphaTable<S>, k: usize, l: usize) -> Result<S> {
    a.get(k, l).cloned().ok_or(Error::MissingAlpha { k, l })
}

/// Populates `Φ`, `Φ*`, `K*`, `Λ`, `N_k`, `N_l` on the `(M+1)²` grid.
///
/// Only the entries the grid actually uses are required: `α_{i,j}` with
/// `i ≤ M − 1`, `j ≤ M`, i.e. a table complete up to `k + l + 1 ≤ 2M`.
pub fn build_ladder_rep<S: Scalar>(a: &AlphaTable<S>, cutoff: usize) -> Result<LadderRep<S>> {
    let n = (cutoff + 1) * (cutoff + 1);
    let idx = |k, l| basis_index(cutoff, k, l);
    let mut k_star = SparseMatrix::zeros(n);
    let mut lambda = SparseMatrix::zeros(n);
    let mut phi_star = SparseMatrix::zeros(n);
    for k in 0..=cutoff {
        for l in 0..=cutoff {
            let from = idx(k, l);
            if k < cutoff {
                k_star.set(idx(k + 1, l), from, required(a, k, l)?);
            }
            if l >= 1 {
                lambda.set(idx(k, l - 1), from, required(a, l - 1, k)?);
            }
            if l < cutoff {
                phi_star.set(idx(k, l + 1), from, required(a, l, k)?);
            }
            if k >= 1 {
                phi_star.set(idx(k - 1, l), from, required(a, k - 1, l)?);
            }
        }
    }
    let phi = &k_star + &lambda;
    let grid = || (0..=cutoff).flat_map(|k| (0..=cutoff).map(move |l| (k, l)));
    Ok(LadderRep {
        cutoff,
        phi,
        phi_star,
        k_star,
        lambda,
        n_particles: SparseMatrix::diagonal(grid().map(|(k, _)| S::from_i64(k as i64))),
        n_antiparticles: SparseMatrix::diagonal(grid().map(|(_, l)| S::from_i64(l as i64))),
    })
}

/// `⟨e_{0,0}, Φ^k Φ*^l e_{0,0}⟩`, exact on the grid whenever `k + l ≤ M`.
pub fn vacuum_moment<S: Scalar>(rep: &LadderRep<S>, k: usize, l: usize) -> Result<S> {
    if k + l > rep.cutoff {
        return Err(Error::CutoffTooSmall {
            k,
            l,
            cutoff: rep.cutoff,
        });
    }
    let mut v = vec![S::zero(); rep.dim()];
    v[0] = S::one();
    for _ in 0..l {
        v = rep.phi_star.apply(&v);
    }
    for _ in 0..k {
        v = rep.phi.apply(&v);
    }
    Ok(v.swap_remove(0))
}

/// The creation/annihilation split `Φ = K* + Λ`, `Φ* = K + Λ*`.
#[derive(Clone, Debug)]
pub struct PhiSplit<S> {
    pub k_star: SparseMatrix<S>,
    pub lambda: SparseMatrix<S>,
    pub k: SparseMatrix<S>,
    pub lambda_star: SparseMatrix<S>,
}

pub fn split_phi<S: Scalar>(rep: &LadderRep<S>) -> PhiSplit<S> {
    PhiSplit {
        k_star: rep.k_star.clone(),
        lambda: rep.lambda.clone(),
        k: rep.k_star.transpose(),
        lambda_star: rep.lambda.transpose(),
    }
}

/// Largest entry of `[Φ, Φ*]` over interior rows and columns.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalityReport {
    pub arith: Arith,
    pub cutoff: usize,
    pub max_residual: f64,
    pub max_diagonal_residual: f64,
    pub max_offdiagonal_residual: f64,
    /// `((k, l), (k', l'))` of the largest entry, as (row state, column state).
    pub worst: Option<((usize, usize), (usize, usize))>,
    pub exact_zero: bool,
    pub passed: bool,
}

impl NormalityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "cutoff": self.cutoff,
            "max_residual": float_value(self.max_residual),
            "max_diagonal_residual": float_value(self.max_diagonal_residual),
            "max_offdiagonal_residual": float_value(self.max_offdiagonal_residual),
            "worst": self.worst.map_or(Value::Null, |((a, b), (c, d))| json!([[a, b], [c, d]])),
            "exact_zero": self.exact_zero,
            "passed": self.passed,
        })
    }
}

pub fn normality_commutator<S: Scalar>(rep: &LadderRep<S>) -> SparseMatrix<S> {
    &(&rep.phi * &rep.phi_star) - &(&rep.phi_star * &rep.phi)
}

pub fn verify_normality_interior<S: Scalar>(rep: &LadderRep<S>) -> NormalityReport {
    let tol = Tolerance::default();
    let c = normality_commutator(rep);
    let scale = rep.phi.max_abs().powi(2);
    let mut report = NormalityReport {
        arith: S::ARITH,
        cutoff: rep.cutoff,
        max_residual: 0.0,
        max_diagonal_residual: 0.0,
        max_offdiagonal_residual: 0.0,
        worst: None,
        exact_zero: true,
        passed: rep.cutoff >= 2,
    };
    for (r, col, v) in c.nonzeros() {
        if !rep.is_interior(r) || !rep.is_interior(col) {
            continue;
        }
        let size = v.abs_f64();
        report.exact_zero = false;
        report.passed &= tol.accepts(v, scale);
        if r == col {
            report.max_diagonal_residual = report.max_diagonal_residual.max(size);
        } else {
            report.max_offdiagonal_residual = report.max_offdiagonal_residual.max(size);
        }
        if size > report.max_residual || report.worst.is_none() {
            report.max_residual = report.max_residual.max(size);
            report.worst = Some((rep.state(r), rep.state(col)));
        }
    }
    report
}
