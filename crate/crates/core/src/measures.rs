//! Rotation-invariant probability measures on the complex plane.
//!
//! A rotation-invariant measure is determined by its radial moments
//! `m_n = ∫ |z|^{2n} dμ`; every mixed moment `∫ z^k z̄^l dμ` with `k ≠ l`
//! vanishes. Nothing downstream ever sees a density.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::factorize::closed_form_alphas;
use crate::ladder::{build_ladder_rep, vacuum_moment};
use crate::scalar::{format_f64, format_rational, parse_rational, Arith, Rational, Scalar};

/// A measure parameter: exact when given as `p` or `p/q`, floating when
/// given as decimal text.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Rational(Rational),
    Float(f64),
}

impl Param {
    pub fn parse(text: &str) -> Result<Param> {
        if let Some(r) = parse_rational(text) {
            return Ok(Param::Rational(r));
        }
        text.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .map(Param::Float)
            .ok_or_else(|| Error::InvalidParameter(format!("cannot parse number {text:?}")))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Param::Rational(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Param::Rational(r) => f64::from_rational(r),
            Param::Float(x) => *x,
        }
    }

    pub fn to_scalar<S: Scalar>(&self) -> Result<S> {
        match self {
            Param::Rational(r) => Ok(S::from_rational(r)),
            Param::Float(x) => S::from_f64(*x),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Param::Rational(r) => format_rational(r),
            Param::Float(x) => format_f64(*x),
        }
    }

    fn require_positive(&self, name: &str) -> Result<()> {
        if self.to_f64() > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("{name} must be positive, got {}", self.to_text())))
        }
    }
}

impl From<i64> for Param {
    fn from(n: i64) -> Param {
        Param::Rational(Rational::from_integer(n.into()))
    }
}

/// Named measure families plus explicit moment input.
#[derive(Clone, Debug, PartialEq)]
pub enum MeasureSpec {
    /// Density `e^{-|z|²/σ²}/(πσ²)`.
    Gaussian { sigma: Param },
    /// Uniform on the disc `|z| ≤ R`.
    UniformDisc { radius: Param },
    /// Uniform on `|z| = 1`. Degenerate: `|z|² = 1` on its support.
    UnitCircle,
    Explicit { moments: Vec<Param> },
    /// The measure whose recurrence coefficients are the closed-form
    /// factorized table with parameters `q`, `c`.
    FromClosedForm { q: Param, c: Param },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum Descriptor {
    Gaussian { sigma: String },
    UniformDisc { radius: String },
    UnitCircle,
    Explicit { moments: Vec<String> },
    FromClosedForm { q: String, c: String },
}

impl MeasureSpec {
    pub fn gaussian(sigma: impl Into<Param>) -> MeasureSpec {
        MeasureSpec::Gaussian {
            sigma: sigma.into(),
        }
    }

    pub fn uniform_disc(radius: impl Into<Param>) -> MeasureSpec {
        MeasureSpec::UniformDisc {
            radius: radius.into(),
        }
    }

    pub fn from_closed_form(q: Param, c: Param) -> MeasureSpec {
        MeasureSpec::FromClosedForm { q, c }
    }

    /// Parses the JSON measure descriptor, e.g.
    /// `{"kind":"explicit","moments":["1","1/2","1/3"]}`.
    pub fn from_json(text: &str) -> Result<MeasureSpec> {
        let desc: Descriptor =
            serde_json::from_str(text).map_err(|e| Error::InvalidDescriptor(e.to_string()))?;
        let spec = match desc {
            Descriptor::Gaussian { sigma } => MeasureSpec::Gaussian {
                sigma: Param::parse(&sigma)?,
            },
            Descriptor::UniformDisc { radius } => MeasureSpec::UniformDisc {
                radius: Param::parse(&radius)?,
            },
            Descriptor::UnitCircle => MeasureSpec::UnitCircle,
            Descriptor::Explicit { moments } => MeasureSpec::Explicit {
                moments: moments.iter().map(|m| Param::parse(m)).collect::<Result<_>>()?,
            },
            Descriptor::FromClosedForm { q, c } => MeasureSpec::FromClosedForm {
                q: Param::parse(&q)?,
                c: Param::parse(&c)?,
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> Value {
        match self {
            MeasureSpec::Gaussian { sigma } => json!({"kind": "gaussian", "sigma": sigma.to_text()}),
            MeasureSpec::UniformDisc { radius } => {
                json!({"kind": "uniform-disc", "radius": radius.to_text()})
            }
            MeasureSpec::UnitCircle => json!({"kind": "unit-circle"}),
            MeasureSpec::Explicit { moments } => json!({
                "kind": "explicit",
                "moments": moments.iter().map(Param::to_text).collect::<Vec<_>>(),
            }),
            MeasureSpec::FromClosedForm { q, c } => {
                json!({"kind": "from-closed-form", "q": q.to_text(), "c": c.to_text()})
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MeasureSpec::Gaussian { sigma } => sigma.require_positive("sigma"),
            MeasureSpec::UniformDisc { radius } => radius.require_positive("radius"),
            MeasureSpec::UnitCircle => Ok(()),
            MeasureSpec::Explicit { moments } => {
                if moments.is_empty() {
                    return Err(Error::InvalidDescriptor("explicit measure needs moments".into()));
                }
                Ok(())
            }
            MeasureSpec::FromClosedForm { q, c } => {
                q.require_positive("q")?;
                c.require_positive("c")
            }
        }
    }

    /// True when every parameter is rational, so exact arithmetic applies.
    pub fn is_rational(&self) -> bool {
        match self {
            MeasureSpec::Gaussian { sigma } => sigma.is_rational(),
            MeasureSpec::UniformDisc { radius } => radius.is_rational(),
            MeasureSpec::UnitCircle => true,
            MeasureSpec::Explicit { moments } => moments.iter().all(Param::is_rational),
            MeasureSpec::FromClosedForm { q, c } => q.is_rational() && c.is_rational(),
        }
    }

    pub fn default_arith(&self) -> Arith {
        if self.is_rational() {
            Arith::Exact
        } else {
            Arith::Float
        }
    }
}

/// Radial moments `m_0..m_N` of a rotation-invariant probability measure.
#[derive(Clone, Debug)]
pub struct RadialMomentSequence<S> {
    moments: Vec<S>,
}

impl<S: Scalar> RadialMomentSequence<S> {
    /// Checks `m_0 = 1` and `m_n > 0`.
    pub fn new(moments: Vec<S>) -> Result<Self> {
        let Some(m0) = moments.first() else {
            return Err(Error::NotNormalized("empty sequence".into()));
        };
        let normalized = match S::ARITH {
            Arith::Exact => (m0.clone() - S::one()).is_zero(),
            Arith::Float => (m0.to_f64() - 1.0).abs() <= 1e-12,
        };
        if !normalized {
            return Err(Error::NotNormalized(m0.to_text()));
        }
        if let Some(index) = moments.iter().position(|m| !m.is_positive()) {
            return Err(Error::NonPositiveMoment { index });
        }
        Ok(RadialMomentSequence { moments })
    }

    pub fn arithmetic_mode(&self) -> Arith {
        S::ARITH
    }

    /// Largest available index `N`.
    pub fn max_index(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn get(&self, n: usize) -> Result<&S> {
        self.moments.get(n).ok_or(Error::OutOfRange {
            index: n,
            available: self.max_index(),
        })
    }

    pub fn as_slice(&self) -> &[S] {
        &self.moments
    }

    /// Moments of the dilated measure `z ↦ λz`: `m_n ↦ λ^{2n} m_n`.
    pub fn dilate(&self, lambda: &S) -> Self {
        let lambda_sq = lambda.clone() * lambda.clone();
        let mut scale = S::one();
        let moments = self
            .moments
            .iter()
            .map(|m| {
                let out = m.clone() * scale.clone();
                scale = scale.clone() * lambda_sq.clone();
                out
            })
            .collect();
        RadialMomentSequence { moments }
    }

    pub fn truncate(&self, n_max: usize) -> Result<Self> {
        self.get(n_max)?;
        Ok(RadialMomentSequence {
            moments: self.moments[..=n_max].to_vec(),
        })
    }
}

/// Radial moments `m_0..m_{n_max}` of a named measure.
pub fn radial_moments<S: Scalar>(spec: &MeasureSpec, n_max: usize) -> Result<RadialMomentSequence<S>> {
    spec.validate()?;
    let moments: Vec<S> = match spec {
        MeasureSpec::Gaussian { sigma } => {
            // m_n = n!·σ^{2n}
            let sigma: S = sigma.to_scalar()?;
            let sigma_sq = sigma.clone() * sigma;
            let mut out = vec![S::one()];
            for n in 1..=n_max {
                let prev = out[n - 1].clone();
                out.push(prev * S::from_i64(n as i64) * sigma_sq.clone());
            }
            out
        }
        MeasureSpec::UniformDisc { radius } => {
            // m_n = R^{2n}/(n+1)
            let radius: S = radius.to_scalar()?;
            let r_sq = radius.clone() * radius;
            let mut power = S::one();
            let mut out = Vec::with_capacity(n_max + 1);
            for n in 0..=n_max {
                let inv = S::from_rational(&Rational::new(1.into(), (n as i64 + 1).into()));
                out.push(power.clone() * inv);
                power = power * r_sq.clone();
            }
            out
        }
        MeasureSpec::UnitCircle => vec![S::one(); n_max + 1],
        MeasureSpec::Explicit { moments } => {
            if moments.len() <= n_max {
                return Err(Error::OutOfRange {
                    index: n_max,
                    available: moments.len() - 1,
                });
            }
            moments[..=n_max]
                .iter()
                .map(Param::to_scalar)
                .collect::<Result<_>>()?
        }
        MeasureSpec::FromClosedForm { q, c } => {
            let q: S = q.to_scalar()?;
            let c: S = c.to_scalar()?;
            let cutoff = (2 * n_max).max(1);
            let table = closed_form_alphas(&q, &c, 2 * cutoff)?;
            let rep = build_ladder_rep(&table, cutoff)?;
            (0..=n_max)
                .map(|n| vacuum_moment(&rep, n, n))
                .collect::<Result<_>>()?
        }
    };
    RadialMomentSequence::new(moments)
}

/// `∫ z^k z̄^l dμ`: the radial moment on the diagonal, zero elsewhere.
pub fn bivariate_moment<S: Scalar>(m: &RadialMomentSequence<S>, k: usize, l: usize) -> Result<S> {
    if k == l {
        m.get(k).cloned()
    } else {
        Ok(S::zero())
    }
}

/// Floating pivot threshold, relative to the pivot's own diagonal entry.
pub const FLOAT_PIVOT_RTOL: f64 = 1e-12;

/// Cholesky factor of the sector Hankel matrix `H_{ij} = m_{d+i+j}`,
/// `0 ≤ i,j < size`, together with the pivots `L_jj²`.
pub fn hankel_cholesky<S: Scalar>(
    m: &RadialMomentSequence<S>,
    sector: usize,
    size: usize,
) -> Result<(Vec<Vec<S>>, Vec<S>)> {
    let h = |i: usize, j: usize| m.get(sector + i + j).cloned();
    let mut lower = vec![vec![S::zero(); size]; size];
    let mut pivots = Vec::with_capacity(size);
    for j in 0..size {
        let diagonal = h(j, j)?.to_f64();
        let mut pivot = h(j, j)?;
        for k in 0..j {
            pivot = pivot - lower[j][k].clone() * lower[j][k].clone();
        }
        let degenerate = match S::ARITH {
            Arith::Exact => !pivot.is_positive(),
            Arith::Float => pivot.to_f64() <= FLOAT_PIVOT_RTOL * diagonal,
        };
        if degenerate {
            return Err(Error::DegenerateMeasure { sector, size: j + 1 });
        }
        let diag = pivot.sqrt().ok_or(Error::DegenerateMeasure { sector, size: j + 1 })?;
        for i in j + 1..size {
            let mut acc = h(i, j)?;
            for k in 0..j {
                acc = acc - lower[i][k].clone() * lower[j][k].clone();
            }
            lower[i][j] = acc
                .checked_div(&diag)
                .ok_or(Error::DegenerateMeasure { sector, size: j + 1 })?;
        }
        lower[j][j] = diag;
        pivots.push(pivot);
    }
    Ok((lower, pivots))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SectorPivot {
    pub sector: usize,
    pub size: usize,
    pub min_pivot: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NondegeneracyReport {
    pub degree: usize,
    pub sectors: Vec<SectorPivot>,
    pub nondegenerate: bool,
}

impl NondegeneracyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "nondegenerate": self.nondegenerate,
            "sectors": self.sectors.iter().map(|s| json!({
                "sector": s.sector,
                "size": s.size,
                "min_pivot": crate::report::float_value(s.min_pivot),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Size of the sector-`d` Hankel block used at total degree `degree`.
pub fn sector_size(degree: usize, sector: usize) -> usize {
    (degree - sector) / 2 + 1
}

/// Factorizes every sector Hankel matrix reachable at total degree `degree`.
pub fn check_nondegenerate<S: Scalar>(
    m: &RadialMomentSequence<S>,
    degree: usize,
) -> Result<NondegeneracyReport> {
    m.get(degree)?;
    let mut sectors = Vec::with_capacity(degree + 1);
    for d in 0..=degree {
        let size = sector_size(degree, d);
        let (_, pivots) = hankel_cholesky(m, d, size)?;
        let min_pivot = pivots.iter().map(Scalar::to_f64).fold(f64::INFINITY, f64::min);
        sectors.push(SectorPivot {
            sector: d,
            size,
            min_pivot,
        });
    }
    Ok(NondegeneracyReport {
        degree,
        sectors,
        nondegenerate: true,
    })
}

/// Independent moment oracle: `m_n = ∫_0^R r^{2n} ρ(r) 2πr dr` by composite
/// 16-point Gauss–Legendre on `[0, R]`.
pub fn quadrature_oracle_moments<F>(
    radial_density: F,
    support_radius: f64,
    n_max: usize,
    nodes: usize,
) -> Result<RadialMomentSequence<f64>>
where
    F: Fn(f64) -> f64,
{
    const PANEL_ORDER: usize = 16;
    if nodes < 64 {
        return Err(Error::InvalidParameter(format!("need at least 64 nodes, got {nodes}")));
    }
    if support_radius.is_nan() || support_radius <= 0.0 {
        return Err(Error::InvalidParameter("support radius must be positive".into()));
    }
    let rule = GaussLegendre::new(NonZeroUsize::new(PANEL_ORDER).expect("nonzero"));
    let panels = nodes / PANEL_ORDER;
    let width = support_radius / panels as f64;
    let integrate = |n: usize| -> f64 {
        (0..panels)
            .map(|p| {
                let a = p as f64 * width;
                rule.integrate(a, a + width, |r| {
                    r.powi(2 * n as i32) * radial_density(r) * 2.0 * std::f64::consts::PI * r
                })
            })
            .sum()
    };
    let moments: Vec<f64> = (0..=n_max).map(integrate).collect();
    if (moments[0] - 1.0).abs() > 1e-9 {
        return Err(Error::NotAProbability(moments[0]));
    }
    Ok(RadialMomentSequence { moments })
}
