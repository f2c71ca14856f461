//! Orthonormal polynomials `P_{k,l}` for a rotation-invariant measure and
//! their recurrence coefficients `α_{k,l}`:
//!
//! ```text
//! z·P_{k,l}  = α_{k,l}·P_{k+1,l} + α_{l-1,k}·P_{k,l-1}
//! z̄·P_{k,l} = α_{l,k}·P_{k,l+1} + α_{k-1,l}·P_{k-1,l}
//! ```
//!
//! with `α_{-1,l} = 0`. Two constructions are provided and must agree:
//! plain Gram–Schmidt over the graded monomial sequence, and a per-sector
//! Cholesky factorization of the Hankel matrices `H^{(d)}_{ij} = m_{d+i+j}`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::bipoly::{inner_product, BivariatePolynomial};
use crate::error::{Error, Result};
use crate::measures::{hankel_cholesky, sector_size, RadialMomentSequence, FLOAT_PIVOT_RTOL};
use crate::report::{float_value, scalar_value};
use crate::scalar::{Arith, Scalar};
use crate::tolerance::Tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    GramSchmidt,
    SectorCholesky,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::GramSchmidt => "gram-schmidt",
            Construction::SectorCholesky => "sector-cholesky",
        }
    }
}

/// `P_{k,l}` for all `k + l ≤ N`.
#[derive(Clone, Debug)]
pub struct OrthonormalSystem<S> {
    max_total_degree: usize,
    polys: BTreeMap<(usize, usize), BivariatePolynomial<S>>,
    source: Construction,
}

impl<S: Scalar> OrthonormalSystem<S> {
    pub fn max_total_degree(&self) -> usize {
        self.max_total_degree
    }

    pub fn source(&self) -> Construction {
        self.source
    }

    pub fn get(&self, k: usize, l: usize) -> Option<&BivariatePolynomial<S>> {
        self.polys.get(&(k, l))
    }

    fn poly(&self, k: usize, l: usize) -> &BivariatePolynomial<S> {
        &self.polys[&(k, l)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &BivariatePolynomial<S>)> {
        self.polys.iter()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Polynomials in canonical text form, keyed `"k,l"`.
    pub fn to_json(&self) -> Value {
        let polys: serde_json::Map<String, Value> = self
            .polys
            .iter()
            .map(|((k, l), p)| (format!("{k},{l}"), Value::String(p.to_text())))
            .collect();
        json!({
            "max_total_degree": self.max_total_degree,
            "source": self.source.name(),
            "polynomials": polys,
        })
    }
}

/// `1, z, z̄, z², z z̄, z̄², …`: total degree ascending, `z` power descending.
pub fn graded_order(max_total_degree: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=max_total_degree).flat_map(|n| (0..=n).rev().map(move |k| (k, n - k)))
}

fn degenerate_at(k: usize, l: usize) -> Error {
    Error::DegenerateMeasure {
        sector: k.abs_diff(l),
        size: k.min(l) + 1,
    }
}

/// Gram–Schmidt over the graded monomial sequence.
///
/// Floating mode runs the projection sweep twice to hold orthogonality at
/// the level of the final rounding error.
pub fn gram_schmidt<S: Scalar>(
    m: &RadialMomentSequence<S>,
    max_total_degree: usize,
) -> Result<OrthonormalSystem<S>> {
    m.get(max_total_degree)?;
    let sweeps = match S::ARITH {
        Arith::Exact => 1,
        Arith::Float => 2,
    };
    let mut done: Vec<BivariatePolynomial<S>> = Vec::new();
    let mut polys = BTreeMap::new();
    for (k, l) in graded_order(max_total_degree) {
        let mut w = BivariatePolynomial::monomial(k, l);
        for _ in 0..sweeps {
            for prev in &done {
                let c = inner_product(prev, &w, m)?;
                if !c.is_zero() {
                    w = &w - &prev.scale(&c);
                }
            }
        }
        let norm_sq = inner_product(&w, &w, m)?;
        let degenerate = match S::ARITH {
            Arith::Exact => !norm_sq.is_positive(),
            Arith::Float => norm_sq.to_f64() <= FLOAT_PIVOT_RTOL * m.get(k + l)?.to_f64(),
        };
        if degenerate {
            return Err(degenerate_at(k, l));
        }
        let norm = norm_sq.sqrt().ok_or_else(|| degenerate_at(k, l))?;
        let inv = S::one().checked_div(&norm).ok_or_else(|| degenerate_at(k, l))?;
        let p = w.scale(&inv);
        done.push(p.clone());
        polys.insert((k, l), p);
    }
    Ok(OrthonormalSystem {
        max_total_degree,
        polys,
        source: Construction::GramSchmidt,
    })
}

/// Per-sector construction. In sector `d ≥ 0` the monomials are
/// `z^{d+i} z̄^i` with Gram matrix `H^{(d)} = L·Lᵀ`; the rows of `L⁻¹` are the
/// coefficient vectors of `P_{d+j,j}`. Sector `-d` follows by conjugation.
pub fn sector_cholesky<S: Scalar>(
    m: &RadialMomentSequence<S>,
    max_total_degree: usize,
) -> Result<OrthonormalSystem<S>> {
    m.get(max_total_degree)?;
    let mut polys = BTreeMap::new();
    for d in 0..=max_total_degree {
        let size = sector_size(max_total_degree, d);
        let (lower, _) = hankel_cholesky(m, d, size)?;
        let inverse = invert_lower(&lower).ok_or(Error::DegenerateMeasure { sector: d, size })?;
        for (j, row) in inverse.iter().enumerate() {
            let p = BivariatePolynomial::from_terms(
                row.iter()
                    .take(j + 1)
                    .enumerate()
                    .map(|(i, c)| ((d + i, i), c.clone())),
            );
            if d > 0 {
                polys.insert((j, d + j), p.conjugate_swap());
            }
            polys.insert((d + j, j), p);
        }
    }
    Ok(OrthonormalSystem {
        max_total_degree,
        polys,
        source: Construction::SectorCholesky,
    })
}

/// Forward substitution for the inverse of a lower-triangular matrix.
fn invert_lower<S: Scalar>(lower: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = lower.len();
    let mut inv = vec![vec![S::zero(); n]; n];
    for j in 0..n {
        inv[j][j] = S::one().checked_div(&lower[j][j])?;
        for i in 0..j {
            let mut acc = S::zero();
            for k in i..j {
                if !lower[j][k].is_zero() && !inv[k][i].is_zero() {
                    acc = acc + lower[j][k].clone() * inv[k][i].clone();
                }
            }
            inv[j][i] = (-acc).checked_div(&lower[j][j])?;
        }
    }
    Some(inv)
}

/// Recurrence coefficients `α_{k,l}` for `k, l ≥ 0`; `α_{-1,l} = 0` is implicit.
#[derive(Clone, Debug)]
pub struct AlphaTable<S> {
    values: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> Default for AlphaTable<S> {
    fn default() -> Self {
        AlphaTable {
            values: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> AlphaTable<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, k: usize, l: usize, value: S) {
        self.values.insert((k, l), value);
    }

    pub fn get(&self, k: usize, l: usize) -> Option<&S> {
        self.values.get(&(k, l))
    }

    /// Entry with the boundary convention: `k = -1` gives zero.
    pub fn entry(&self, k: i64, l: usize) -> Option<S> {
        match k {
            -1 => Some(S::zero()),
            k if k >= 0 => self.get(k as usize, l).cloned(),
            _ => None,
        }
    }

    pub fn alpha_sq(&self, k: usize, l: usize) -> Option<S> {
        self.get(k, l).map(|a| a.clone() * a.clone())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &S)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest `N` with every `k + l + 1 ≤ N` present.
    pub fn complete_degree(&self) -> usize {
        let mut n = 0;
        loop {
            let next = n + 1;
            if (0..next).all(|k| self.values.contains_key(&(k, next - 1 - k))) {
                n = next;
            } else {
                return n;
            }
        }
    }

    /// Copy with `α_{k,l}` shifted by `delta`.
    pub fn perturbed(&self, k: usize, l: usize, delta: S) -> Self {
        let mut out = self.clone();
        if let Some(v) = out.values.get_mut(&(k, l)) {
            *v = v.clone() + delta;
        }
        out
    }

    /// Restriction to `k + l + 1 ≤ max_total_degree`.
    pub fn restricted(&self, max_total_degree: usize) -> Self {
        AlphaTable {
            values: self
                .values
                .iter()
                .filter(|((k, l), _)| k + l < max_total_degree)
                .map(|(kl, v)| (*kl, v.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.values
                .iter()
                .map(|(&(k, l), a)| {
                    json!({
                        "k": k,
                        "l": l,
                        "alpha": float_value(a.to_f64()),
                        "alpha_sq": scalar_value(&(a.clone() * a.clone())),
                    })
                })
                .collect(),
        )
    }
}

/// Reads `α_{k,l} = ⟨P_{k+1,l}, z·P_{k,l}⟩` for every `k + l + 1 ≤ N`.
///
/// Also checks that `z·P_{k,l}` has no component outside
/// `span{P_{k+1,l}, P_{k,l-1}}` and that its `P_{k,l-1}` coefficient equals
/// `α_{l-1,k}` from the same table.
pub fn extract_alphas<S: Scalar>(
    sys: &OrthonormalSystem<S>,
    m: &RadialMomentSequence<S>,
) -> Result<AlphaTable<S>> {
    let tol = Tolerance::default();
    let n = sys.max_total_degree();
    let mut table = AlphaTable::new();
    let mut down = BTreeMap::new();
    for (k, l) in graded_order(n.saturating_sub(1)).filter(|_| n >= 1) {
        let zp = sys.poly(k, l).shift(1, 0);
        let alpha = inner_product(sys.poly(k + 1, l), &zp, m)?;
        let beta = if l >= 1 {
            inner_product(sys.poly(k, l - 1), &zp, m)?
        } else {
            S::zero()
        };
        let total = inner_product(&zp, &zp, m)?;
        let leftover = total.clone() - alpha.clone() * alpha.clone() - beta.clone() * beta.clone();
        if !tol.accepts(&leftover, total.to_f64()) {
            return Err(Error::RecurrenceViolation {
                k,
                l,
                residual: leftover.abs_f64().sqrt(),
            });
        }
        if l >= 1 {
            down.insert((k, l), beta);
        }
        table.insert(k, l, alpha);
    }
    for ((k, l), beta) in down {
        let expected = table.get(l - 1, k).cloned().unwrap_or_else(S::zero);
        let diff = beta - expected.clone();
        if !tol.accepts(&diff, expected.to_f64()) {
            return Err(Error::RecurrenceViolation {
                k,
                l,
                residual: diff.abs_f64(),
            });
        }
    }
    Ok(table)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recurrence {
    /// `z·P_{k,l}`
    Z,
    /// `z̄·P_{k,l}`
    Zbar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceFailure {
    pub k: usize,
    pub l: usize,
    pub which: Recurrence,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceReport {
    pub arith: Arith,
    pub checked: usize,
    pub max_residual: f64,
    /// Every residual polynomial is literally zero.
    pub exact_zero: bool,
    pub failures: Vec<RecurrenceFailure>,
}

impl RecurrenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "checked": self.checked,
            "max_residual": float_value(self.max_residual),
            "exact_zero": self.exact_zero,
            "passed": self.passed(),
            "failures": self.failures.iter().map(|f| json!({
                "k": f.k,
                "l": f.l,
                "recurrence": match f.which { Recurrence::Z => "z", Recurrence::Zbar => "zb" },
                "residual": float_value(f.residual),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Residual polynomials of both two-term recurrences for every `k + l + 1 ≤ N`.
pub fn verify_recurrence<S: Scalar>(sys: &OrthonormalSystem<S>, a: &AlphaTable<S>) -> RecurrenceReport {
    let tol = Tolerance::default();
    let n = sys.max_total_degree();
    let mut report = RecurrenceReport {
        arith: S::ARITH,
        checked: 0,
        max_residual: 0.0,
        exact_zero: true,
        failures: Vec::new(),
    };
    if n == 0 {
        return report;
    }
    for (k, l) in graded_order(n - 1) {
        let p = sys.poly(k, l);
        let zp = p.shift(1, 0);
        let zbp = p.shift(0, 1);
        let z_terms = [
            (a.entry(k as i64, l), Some((k + 1, l))),
            (a.entry(l as i64 - 1, k), l.checked_sub(1).map(|l1| (k, l1))),
        ];
        let zb_terms = [
            (a.entry(l as i64, k), Some((k, l + 1))),
            (a.entry(k as i64 - 1, l), k.checked_sub(1).map(|k1| (k1, l))),
        ];
        for (which, target, terms) in [(Recurrence::Z, zp, z_terms), (Recurrence::Zbar, zbp, zb_terms)] {
            report.checked += 1;
            let scale = target.max_abs_coeff();
            let mut residual = target;
            let mut missing = false;
            for (coeff, index) in terms {
                match (coeff, index) {
                    (Some(c), Some((i, j))) => residual = &residual - &sys.poly(i, j).scale(&c),
                    (Some(c), None) if c.is_zero() => {}
                    _ => missing = true,
                }
            }
            let size = if missing {
                f64::INFINITY
            } else {
                residual.max_abs_coeff()
            };
            report.max_residual = report.max_residual.max(size);
            if !residual.is_zero() || missing {
                report.exact_zero = false;
            }
            let ok = !missing
                && match S::ARITH {
                    Arith::Exact => residual.is_zero(),
                    Arith::Float => size <= tol.rel * scale + tol.abs,
                };
            if !ok {
                report.failures.push(RecurrenceFailure {
                    k,
                    l,
                    which,
                    residual: size,
                });
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationsReport {
    pub arith: Arith,
    pub relation1_checked: usize,
    pub relation2_checked: usize,
    /// Largest `|α_{k,l}α_{l,k+1} − α_{l,k}α_{k,l+1}|`.
    pub relation1_max: f64,
    /// Largest `|α_{k,l}² + α_{l-1,k}² − α_{l,k}² − α_{k-1,l}²|`.
    pub relation2_max: f64,
    pub relation1_worst: Option<(usize, usize)>,
    pub relation2_worst: Option<(usize, usize)>,
    pub relation1_ok: bool,
    pub relation2_ok: bool,
    pub nonpositive: Vec<(usize, usize)>,
    pub exact_zero: bool,
}

impl RelationsReport {
    pub fn positivity_ok(&self) -> bool {
        self.nonpositive.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.relation1_ok && self.relation2_ok && self.positivity_ok()
    }

    pub fn to_json(&self) -> Value {
        let pair = |p: Option<(usize, usize)>| p.map_or(Value::Null, |(k, l)| json!([k, l]));
        json!({
            "relation1": {
                "checked": self.relation1_checked,
                "max_residual": float_value(self.relation1_max),
                "worst_entry": pair(self.relation1_worst),
                "passed": self.relation1_ok,
            },
            "relation2": {
                "checked": self.relation2_checked,
                "max_residual": float_value(self.relation2_max),
                "worst_entry": pair(self.relation2_worst),
                "passed": self.relation2_ok,
            },
            "positivity": {
                "passed": self.positivity_ok(),
                "nonpositive": self.nonpositive.iter().map(|&(k, l)| json!([k, l])).collect::<Vec<_>>(),
            },
            "exact_zero": self.exact_zero,
            "passed": self.passed(),
        })
    }
}

/// Checks positivity and both algebraic relations wherever all participating
/// entries exist.
pub fn verify_relations<S: Scalar>(a: &AlphaTable<S>) -> RelationsReport {
    let tol = Tolerance::default();
    let mut report = RelationsReport {
        arith: S::ARITH,
        relation1_checked: 0,
        relation2_checked: 0,
        relation1_max: 0.0,
        relation2_max: 0.0,
        relation1_worst: None,
        relation2_worst: None,
        relation1_ok: true,
        relation2_ok: true,
        nonpositive: a.iter().filter(|(_, v)| !v.is_positive()).map(|(kl, _)| *kl).collect(),
        exact_zero: true,
    };
    for &(k, l) in a.values.keys() {
        // α_{k,l}·α_{l,k+1} = α_{l,k}·α_{k,l+1}
        if let (Some(a1), Some(a2), Some(a3), Some(a4)) =
            (a.get(k, l), a.get(l, k + 1), a.get(l, k), a.get(k, l + 1))
        {
            let lhs = a1.clone() * a2.clone();
            let rhs = a3.clone() * a4.clone();
            let scale = lhs.abs_f64().max(rhs.abs_f64());
            let diff = lhs - rhs;
            report.relation1_checked += 1;
            record(&mut report.relation1_max, &mut report.relation1_worst, &diff, (k, l));
            report.exact_zero &= diff.is_zero();
            report.relation1_ok &= tol.accepts(&diff, scale);
        }
        // α_{k,l}² + α_{l-1,k}² = α_{l,k}² + α_{k-1,l}²
        if let (Some(a1), Some(a2), Some(a3), Some(a4)) = (
            a.get(k, l),
            a.entry(l as i64 - 1, k),
            a.get(l, k),
            a.entry(k as i64 - 1, l),
        ) {
            let lhs = a1.clone() * a1.clone() + a2.clone() * a2;
            let rhs = a3.clone() * a3.clone() + a4.clone() * a4;
            let scale = lhs.abs_f64().max(rhs.abs_f64());
            let diff = lhs - rhs;
            report.relation2_checked += 1;
            record(&mut report.relation2_max, &mut report.relation2_worst, &diff, (k, l));
            report.exact_zero &= diff.is_zero();
            report.relation2_ok &= tol.accepts(&diff, scale);
        }
    }
    report
}

fn record<S: Scalar>(max: &mut f64, worst: &mut Option<(usize, usize)>, diff: &S, at: (usize, usize)) {
    let size = diff.abs_f64();
    if size > *max || (worst.is_none() && !diff.is_zero()) {
        *max = size;
        *worst = Some(at);
    }
}

/// Entrywise comparison of two systems over the same index set.
#[derive(Clone, Debug, PartialEq)]
pub struct AgreementReport {
    pub compared: usize,
    pub max_abs_diff: f64,
    pub max_rel_diff: f64,
    pub identical: bool,
    pub passed: bool,
}

impl AgreementReport {
    pub fn to_json(&self) -> Value {
        json!({
            "compared": self.compared,
            "max_abs_diff": float_value(self.max_abs_diff),
            "max_rel_diff": float_value(self.max_rel_diff),
            "identical": self.identical,
            "passed": self.passed,
        })
    }
}

pub fn compare_systems<S: Scalar>(
    a: &OrthonormalSystem<S>,
    b: &OrthonormalSystem<S>,
    tol: Tolerance,
) -> AgreementReport {
    let mut report = AgreementReport {
        compared: 0,
        max_abs_diff: 0.0,
        max_rel_diff: 0.0,
        identical: a.max_total_degree == b.max_total_degree && a.len() == b.len(),
        passed: a.max_total_degree == b.max_total_degree && a.len() == b.len(),
    };
    for (kl, p) in a.iter() {
        let Some(q) = b.polys.get(kl) else {
            report.identical = false;
            report.passed = false;
            continue;
        };
        let keys: std::collections::BTreeSet<_> =
            p.terms().chain(q.terms()).map(|(kl, _)| *kl).collect();
        for (i, j) in keys {
            let (x, y) = (p.coeff(i, j), q.coeff(i, j));
            let scale = x.abs_f64().max(y.abs_f64());
            let diff = x - y;
            report.compared += 1;
            let abs = diff.abs_f64();
            report.max_abs_diff = report.max_abs_diff.max(abs);
            if scale > 0.0 {
                report.max_rel_diff = report.max_rel_diff.max(abs / scale);
            }
            report.identical &= diff.is_zero();
            report.passed &= tol.accepts(&diff, scale);
        }
    }
    report
}

/// `⟨P_{k,l}, P_{m,n}⟩ − δ`, leading-coefficient signs and conjugation symmetry.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthonormalityReport {
    pub pairs: usize,
    pub max_residual: f64,
    pub exact_zero: bool,
    pub leading_positive: bool,
    pub conjugation_symmetric: bool,
    pub passed: bool,
}

impl OrthonormalityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "pairs": self.pairs,
            "max_residual": float_value(self.max_residual),
            "exact_zero": self.exact_zero,
            "leading_positive": self.leading_positive,
            "conjugation_symmetric": self.conjugation_symmetric,
            "passed": self.passed,
        })
    }
}

pub fn check_orthonormality<S: Scalar>(
    sys: &OrthonormalSystem<S>,
    m: &RadialMomentSequence<S>,
) -> Result<OrthonormalityReport> {
    let tol = Tolerance::default();
    let mut report = OrthonormalityReport {
        pairs: 0,
        max_residual: 0.0,
        exact_zero: true,
        leading_positive: true,
        conjugation_symmetric: true,
        passed: true,
    };
    for (&(k, l), p) in sys.iter() {
        report.leading_positive &= p.coeff(k, l).is_positive();
        let scale = p.max_abs_coeff();
        if let Some(mirror) = sys.get(l, k) {
            let diff = &p.conjugate_swap() - mirror;
            let ok = match S::ARITH {
                Arith::Exact => diff.is_zero(),
                Arith::Float => diff.max_abs_coeff() <= tol.rel * scale + tol.abs,
            };
            report.conjugation_symmetric &= ok;
        }
        for (&kl2, q) in sys.iter() {
            let mut g = inner_product(p, q, m)?;
            if (k, l) == kl2 {
                g = g - S::one();
            }
            report.pairs += 1;
            report.max_residual = report.max_residual.max(g.abs_f64());
            report.exact_zero &= g.is_zero();
            report.passed &= tol.accepts(&g, 1.0);
        }
    }
    report.passed &= report.leading_positive && report.conjugation_symmetric;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{radial_moments, MeasureSpec, Param};
    use crate::scalar::{Rational, Surd};

    type P = BivariatePolynomial<Surd>;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn r(n: i64, d: i64) -> Surd {
        Surd::from_rational(rat(n, d))
    }

    fn sqrt(n: i64, d: i64) -> Surd {
        Surd::sqrt_of(&rat(n, d)).unwrap()
    }

    fn moments(spec: MeasureSpec, n: usize) -> RadialMomentSequence<Surd> {
        radial_moments(&spec, n).unwrap()
    }

    #[test]
    fn graded_order_matches_the_monomial_listing() {
        let order: Vec<_> = graded_order(2).collect();
        assert_eq!(order, vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]);
    }

    #[test]
    fn gram_schmidt_examples() {
        let disc = moments(MeasureSpec::uniform_disc(1), 2);
        let sys = gram_schmidt(&disc, 2).unwrap();
        // √12·(z z̄ − 1/2)
        let expected = &P::monomial(1, 1).scale(&sqrt(12, 1)) - &P::one().scale(&sqrt(3, 1));
        assert_eq!(sys.get(1, 1).unwrap(), &expected);
        assert_eq!(sys.get(0, 0).unwrap(), &P::one());

        let gauss = moments(MeasureSpec::gaussian(1), 2);
        let sys = gram_schmidt(&gauss, 2).unwrap();
        assert_eq!(sys.get(2, 0).unwrap(), &P::monomial(2, 0).scale(&sqrt(1, 2)));
        assert_eq!(sys.len(), 6);
    }

    #[test]
    fn sector_cholesky_examples() {
        let disc = moments(MeasureSpec::uniform_disc(1), 3);
        let sys = sector_cholesky(&disc, 3).unwrap();
        let expected = &P::term(2, 1, r(6, 1)) - &P::term(1, 0, r(4, 1));
        assert_eq!(sys.get(2, 1).unwrap(), &expected);
        assert_eq!(sys.get(2, 1).unwrap().to_text(), "6·z^2·zb - 4·z");
        assert_eq!(sys.get(1, 2).unwrap(), &expected.conjugate_swap());

        let gauss = moments(MeasureSpec::gaussian(1), 3);
        let sys = sector_cholesky(&gauss, 3).unwrap();
        assert_eq!(sys.get(1, 0).unwrap(), &P::z());
        assert_eq!(sys.len(), 10);
    }

    #[test]
    fn unit_circle_is_degenerate_for_both_constructions() {
        let circle = moments(MeasureSpec::UnitCircle, 2);
        let want = Error::DegenerateMeasure { sector: 0, size: 2 };
        assert_eq!(gram_schmidt(&circle, 2).unwrap_err(), want);
        assert_eq!(sector_cholesky(&circle, 2).unwrap_err(), want);
        let circle_f = radial_moments::<f64>(&MeasureSpec::UnitCircle, 2).unwrap();
        assert_eq!(gram_schmidt(&circle_f, 2).unwrap_err(), want);
        assert_eq!(sector_cholesky(&circle_f, 2).unwrap_err(), want);
        // Degree 1 never meets z·z̄ and is fine.
        assert!(gram_schmidt(&circle, 1).is_ok());
    }

    #[test]
    fn constructions_agree_exactly() {
        for spec in [MeasureSpec::gaussian(1), MeasureSpec::uniform_disc(1), MeasureSpec::uniform_disc(2)] {
            let m = moments(spec, 7);
            let a = gram_schmidt(&m, 7).unwrap();
            let b = sector_cholesky(&m, 7).unwrap();
            let report = compare_systems(&a, &b, Tolerance::default());
            assert!(report.identical, "{report:?}");
        }
    }

    #[test]
    fn alpha_examples() {
        let gauss = moments(MeasureSpec::gaussian(1), 3);
        let a = extract_alphas(&gram_schmidt(&gauss, 3).unwrap(), &gauss).unwrap();
        assert_eq!(a.get(1, 1).unwrap(), &sqrt(2, 1));
        assert!(a.entry(-1, 2).unwrap().is_zero());

        let disc = moments(MeasureSpec::uniform_disc(1), 3);
        let a = extract_alphas(&gram_schmidt(&disc, 3).unwrap(), &disc).unwrap();
        assert_eq!(a.get(0, 0).unwrap(), &sqrt(1, 2));
        assert_eq!(a.get(0, 1).unwrap(), &sqrt(1, 6));
        assert_eq!(a.get(1, 0).unwrap(), &sqrt(2, 3));
        assert_eq!(a.get(1, 1).unwrap(), &sqrt(1, 3));
        assert_eq!(a.alpha_sq(1, 0).unwrap().as_rational(), Some(rat(2, 3)));
        assert_eq!(a.len(), 6);
        assert_eq!(a.complete_degree(), 3);
    }

    #[test]
    fn recurrence_holds_exactly_and_flags_faults() {
        for spec in [MeasureSpec::gaussian(1), MeasureSpec::uniform_disc(1)] {
            let m = moments(spec, 6);
            let sys = gram_schmidt(&m, 6).unwrap();
            let a = extract_alphas(&sys, &m).unwrap();
            let report = verify_recurrence(&sys, &a);
            assert!(report.passed() && report.exact_zero, "{report:?}");
            assert_eq!(report.max_residual, 0.0);
            assert_eq!(report.checked, 2 * 21);
        }
        let m = moments(MeasureSpec::gaussian(1), 6);
        let sys = gram_schmidt(&m, 6).unwrap();
        let bad = extract_alphas(&sys, &m).unwrap().perturbed(0, 0, r(1, 1000));
        let report = verify_recurrence(&sys, &bad);
        assert!(!report.passed());
        assert!((report.max_residual - 1e-3).abs() < 1e-12, "{}", report.max_residual);
        assert!(report.failures.iter().any(|f| (f.k, f.l, f.which) == (0, 0, Recurrence::Z)));
    }

    #[test]
    fn recurrence_violation_is_detected_during_extraction() {
        // A system whose P_{1,0} is scaled wrong is not orthonormal; the
        // projection of z·P_{0,0} no longer exhausts its norm.
        let m = moments(MeasureSpec::gaussian(1), 2);
        let mut sys = gram_schmidt(&m, 2).unwrap();
        sys.polys.insert((1, 0), P::z().scale(&r(1, 2)));
        assert!(matches!(
            extract_alphas(&sys, &m),
            Err(Error::RecurrenceViolation { k: 0, l: 0, .. })
        ));
    }

    #[test]
    fn disc_relation_two_example() {
        let disc = moments(MeasureSpec::uniform_disc(1), 3);
        let a = extract_alphas(&gram_schmidt(&disc, 3).unwrap(), &disc).unwrap();
        // α_{0,1}² + α_{0,0}² = α_{1,0}²: 1/6 + 1/2 = 2/3
        let lhs = a.alpha_sq(0, 1).unwrap() + a.alpha_sq(0, 0).unwrap();
        assert_eq!(lhs, a.alpha_sq(1, 0).unwrap());
        let report = verify_relations(&a);
        assert!(report.passed() && report.exact_zero, "{report:?}");
    }

    #[test]
    fn rank_one_tables_satisfy_relation_one() {
        // α_{k,l} = f_k·q^l with arbitrary f
        let f = [r(3, 1), r(1, 7), r(5, 2), r(2, 9), r(11, 3)];
        let q = r(2, 5);
        let mut a = AlphaTable::new();
        for k in 0..5 {
            let mut g = Surd::one();
            for l in 0..5 - k {
                a.insert(k, l, f[k].clone() * g.clone());
                g = g * q.clone();
            }
        }
        let report = verify_relations(&a);
        assert!(report.relation1_checked > 0);
        assert_eq!(report.relation1_max, 0.0);
        assert!(report.relation1_ok);
    }

    #[test]
    fn relations_flag_nonpositive_entries() {
        let mut a = AlphaTable::new();
        a.insert(0, 0, r(-1, 1));
        let report = verify_relations(&a);
        assert_eq!(report.nonpositive, vec![(0, 0)]);
        assert!(!report.passed());
    }

    #[test]
    fn orthonormality_and_symmetry() {
        let m = moments(MeasureSpec::uniform_disc(1), 6);
        let sys = sector_cholesky(&m, 6).unwrap();
        let report = check_orthonormality(&sys, &m).unwrap();
        assert!(report.passed && report.exact_zero, "{report:?}");
        assert_eq!(report.pairs, 28 * 28);
    }

    #[test]
    fn floating_constructions_agree() {
        let spec = MeasureSpec::Gaussian {
            sigma: Param::Float(0.8),
        };
        let m = radial_moments::<f64>(&spec, 10).unwrap();
        let a = gram_schmidt(&m, 10).unwrap();
        let b = sector_cholesky(&m, 10).unwrap();
        let report = compare_systems(&a, &b, Tolerance::default());
        assert!(report.passed, "{report:?}");
        let ortho = check_orthonormality(&a, &m).unwrap();
        assert!(ortho.passed, "{ortho:?}");
        let alphas = extract_alphas(&a, &m).unwrap();
        assert!(verify_recurrence(&a, &alphas).passed());
        assert!(verify_relations(&alphas).passed());
    }

    #[test]
    fn dilation_scales_alphas() {
        let m = moments(MeasureSpec::uniform_disc(1), 5);
        let lambda = r(3, 2);
        let scaled = m.dilate(&lambda);
        let a = extract_alphas(&gram_schmidt(&m, 5).unwrap(), &m).unwrap();
        let b = extract_alphas(&sector_cholesky(&scaled, 5).unwrap(), &scaled).unwrap();
        for (&(k, l), v) in a.iter() {
            assert_eq!(b.get(k, l).unwrap(), &(v.clone() * lambda.clone()));
        }
    }

    #[test]
    fn diagonal_product_identity() {
        for spec in [MeasureSpec::gaussian(1), MeasureSpec::uniform_disc(1)] {
            let m = moments(spec, 6);
            let a = extract_alphas(&gram_schmidt(&m, 6).unwrap(), &m).unwrap();
            let mut product = Surd::one();
            for n in 0..=6 {
                assert_eq!(&product, m.get(n).unwrap());
                if n < 6 {
                    product = product * a.alpha_sq(n, 0).unwrap();
                }
            }
        }
    }
}
