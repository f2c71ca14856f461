//! Factorized recurrence coefficients `α_{k,l} = f_k·g_l`.
//!
//! The product relation forces `g` to be geometric, `g_l = q^l`; the sum
//! relation then telescopes to `α_{k,l} = c·√[k+1]_{q²}·q^l` with the
//! q-number `[n]_{q²} = 1 + q² + … + q^{2(n-1)}`. On the grid this means
//! `K* = c·A_k*·q^{N_l}` and `Λ = c·A_l·q^{N_k}`, where `A` satisfies
//! `A·A* − q²·A*·A = 1`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ladder::{basis_index, LadderRep};
use crate::matrix::SparseMatrix;
use crate::orthosystem::AlphaTable;
use crate::report::{float_value, scalar_value};
use crate::scalar::{Arith, Scalar};
use crate::tolerance::Tolerance;

/// `|q − 1|` below which the `q = 1` branch is used in floating mode.
pub const Q_ONE_BAND: f64 = 1e-9;

/// Default log-domain detection tolerance.
pub const DEFAULT_DETECTION_TOL: f64 = 1e-8;

fn is_unit<S: Scalar>(q: &S) -> bool {
    match S::ARITH {
        Arith::Exact => (q.clone() - S::one()).is_zero(),
        Arith::Float => (q.to_f64() - 1.0).abs() <= Q_ONE_BAND,
    }
}

fn require_positive<S: Scalar>(name: &str, x: &S) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive, got {}", x.to_text())))
    }
}

/// `[n]_{q²} = (1 − q^{2n})/(1 − q²)`, and `n` at `q = 1`.
pub fn q_number<S: Scalar>(q: &S, n: usize) -> Result<S> {
    if is_unit(q) {
        return Ok(S::from_i64(n as i64));
    }
    let q_sq = q.clone() * q.clone();
    let mut power = S::one();
    for _ in 0..n {
        power = power * q_sq.clone();
    }
    (S::one() - power)
        .checked_div(&(S::one() - q_sq))
        .ok_or_else(|| Error::InvalidParameter(format!("q = {} leaves exact arithmetic", q.to_text())))
}

fn sqrt_q_number<S: Scalar>(q: &S, n: usize) -> Result<S> {
    q_number(q, n)?.sqrt().ok_or_else(|| {
        Error::InvalidParameter(format!(
            "√[{n}] is not representable for q = {}; exact mode needs rational q²",
            q.to_text()
        ))
    })
}

/// `α_{k,l} = c·√((1 − q^{2k+2})/(1 − q²))·q^l` for all `k + l + 1 ≤ N`.
pub fn closed_form_alphas<S: Scalar>(q: &S, c: &S, max_total_degree: usize) -> Result<AlphaTable<S>> {
    require_positive("q", q)?;
    require_positive("c", c)?;
    let mut table = AlphaTable::new();
    for k in 0..max_total_degree {
        let f = c.clone() * sqrt_q_number(q, k + 1)?;
        let mut g = S::one();
        for l in 0..max_total_degree - k {
            table.insert(k, l, f.clone() * g.clone());
            g = g * q.clone();
        }
    }
    Ok(table)
}

#[derive(Clone, Debug)]
pub struct FactorizationResult<S> {
    pub factorizable: bool,
    pub q: S,
    pub c: S,
    /// `max |log(α_{k,l}·α_{0,0}) − log(α_{k,0}·α_{0,l})|`.
    pub log_residual: f64,
    pub worst_entry: (usize, usize),
    pub entry_residuals: BTreeMap<(usize, usize), f64>,
    /// `max |log α_{k,l} − log α^{closed}_{k,l}(q, c)|`.
    pub closed_form_residual: f64,
    /// Entrywise literal equality with the closed form (exact mode only).
    pub exact_match: Option<bool>,
    pub f: Vec<S>,
    pub g: Vec<S>,
    pub tolerance: f64,
}

impl<S: Scalar> FactorizationResult<S> {
    /// q > 1 admits the closed form but its moments grow without bound.
    pub fn q_exceeds_one(&self) -> bool {
        self.q.to_f64() > 1.0 + Q_ONE_BAND
    }

    pub fn to_json(&self) -> Value {
        json!({
            "factorizable": self.factorizable,
            "q": float_value(self.q.to_f64()),
            "c": float_value(self.c.to_f64()),
            "q_exact": scalar_value(&self.q),
            "c_exact": scalar_value(&self.c),
            "log_residual": float_value(self.log_residual),
            "worst_entry": [self.worst_entry.0, self.worst_entry.1],
            "closed_form_residual": float_value(self.closed_form_residual),
            "exact_match": self.exact_match,
            "tolerance": float_value(self.tolerance),
            "q_exceeds_one": self.q_exceeds_one(),
            "entry_log_residuals": self.entry_residuals.iter()
                .map(|(&(k, l), r)| json!([k, l, float_value(*r)]))
                .collect::<Vec<_>>(),
        })
    }
}

/// Log-domain rank-one test of an α-table, followed by identification of
/// `q = α_{0,1}/α_{0,0}`, `c = α_{0,0}` and a comparison with the closed form.
pub fn detect_factorization<S: Scalar>(a: &AlphaTable<S>, tol: f64) -> Result<FactorizationResult<S>> {
    let n = a.complete_degree();
    if n < 3 {
        return Err(Error::IncompleteTable(format!(
            "need every entry with k + l + 1 ≤ 3, table is complete only to {n}"
        )));
    }
    if let Some((&(k, l), _)) = a.iter().find(|(_, v)| !v.is_positive()) {
        return Err(Error::NonPositiveEntry { k, l });
    }
    let table = a.restricted(n);
    let ln = |k: usize, l: usize| table.get(k, l).map(|v| v.to_f64().ln()).unwrap_or(f64::NAN);
    let mut entry_residuals = BTreeMap::new();
    let mut log_residual = 0.0;
    let mut worst_entry = (0, 0);
    let entry = |k: usize, l: usize| table.get(k, l).cloned().expect("complete table");
    for (&(k, l), v) in table.iter() {
        let exact_rank_one = S::ARITH == Arith::Exact
            && (v.clone() * entry(0, 0) - entry(k, 0) * entry(0, l)).is_zero();
        let r = if exact_rank_one {
            0.0
        } else {
            (v.to_f64().ln() + ln(0, 0) - ln(k, 0) - ln(0, l)).abs()
        };
        if r > log_residual {
            log_residual = r;
            worst_entry = (k, l);
        }
        entry_residuals.insert((k, l), r);
    }
    let c = table.get(0, 0).cloned().expect("complete table");
    let q = table
        .get(0, 1)
        .expect("complete table")
        .checked_div(&c)
        .ok_or_else(|| Error::InvalidParameter("cannot form α_{0,1}/α_{0,0}".into()))?;
    let f = (0..n).map(|k| table.get(k, 0).cloned().expect("complete table")).collect();
    let mut g = Vec::with_capacity(n);
    let mut power = S::one();
    for _ in 0..n {
        g.push(power.clone());
        power = power * q.clone();
    }

    let (closed_form_residual, exact_match) = match closed_form_alphas(&q, &c, n) {
        Ok(closed) => {
            let mut worst = 0.0f64;
            let mut equal = true;
            for (&(k, l), v) in table.iter() {
                let w = closed.get(k, l).expect("same shape");
                let same = (v.clone() - w.clone()).is_zero();
                if !(same && S::ARITH == Arith::Exact) {
                    worst = worst.max((v.to_f64().ln() - w.to_f64().ln()).abs());
                }
                equal &= same;
            }
            (worst, (S::ARITH == Arith::Exact).then_some(equal))
        }
        Err(_) => (f64::INFINITY, (S::ARITH == Arith::Exact).then_some(false)),
    };
    let factorizable =
        log_residual <= tol && closed_form_residual <= tol && exact_match.unwrap_or(true);
    Ok(FactorizationResult {
        factorizable,
        q,
        c,
        log_residual,
        worst_entry,
        entry_residuals,
        closed_form_residual,
        exact_match,
        f,
        g,
        tolerance: tol,
    })
}

/// Deformed oscillators on the `(M+1)²` grid.
#[derive(Clone, Debug)]
pub struct QFockOperators<S> {
    pub q: S,
    pub c: S,
    pub cutoff: usize,
    /// `A_k e_{k,l} = √[k] e_{k-1,l}`
    pub a_k: SparseMatrix<S>,
    pub a_k_star: SparseMatrix<S>,
    /// `A_l e_{k,l} = √[l] e_{k,l-1}`
    pub a_l: SparseMatrix<S>,
    pub a_l_star: SparseMatrix<S>,
    pub q_pow_nk: SparseMatrix<S>,
    pub q_pow_nl: SparseMatrix<S>,
    /// `c·A_k*·q^{N_l}`
    pub k_star_product: SparseMatrix<S>,
    /// `c·A_l·q^{N_k}`
    pub lambda_product: SparseMatrix<S>,
}

pub fn q_fock_operators<S: Scalar>(q: &S, c: &S, cutoff: usize) -> Result<QFockOperators<S>> {
    require_positive("q", q)?;
    require_positive("c", c)?;
    if cutoff < 1 {
        return Err(Error::InvalidParameter("cutoff must be at least 1".into()));
    }
    let n = (cutoff + 1) * (cutoff + 1);
    let idx = |k, l| basis_index(cutoff, k, l);
    let roots = (0..=cutoff).map(|j| sqrt_q_number(q, j)).collect::<Result<Vec<S>>>()?;
    let mut powers = vec![S::one()];
    for j in 1..=cutoff {
        powers.push(powers[j - 1].clone() * q.clone());
    }
    let mut a_k = SparseMatrix::zeros(n);
    let mut a_k_star = SparseMatrix::zeros(n);
    let mut a_l = SparseMatrix::zeros(n);
    let mut a_l_star = SparseMatrix::zeros(n);
    for k in 0..=cutoff {
        for l in 0..=cutoff {
            let from = idx(k, l);
            if k >= 1 {
                a_k.set(idx(k - 1, l), from, roots[k].clone());
            }
            if k < cutoff {
                a_k_star.set(idx(k + 1, l), from, roots[k + 1].clone());
            }
            if l >= 1 {
                a_l.set(idx(k, l - 1), from, roots[l].clone());
            }
            if l < cutoff {
                a_l_star.set(idx(k, l + 1), from, roots[l + 1].clone());
            }
        }
    }
    let grid = || (0..=cutoff).flat_map(|k| (0..=cutoff).map(move |l| (k, l)));
    let q_pow_nk = SparseMatrix::diagonal(grid().map(|(k, _)| powers[k].clone()));
    let q_pow_nl = SparseMatrix::diagonal(grid().map(|(_, l)| powers[l].clone()));
    let k_star_product = (&a_k_star * &q_pow_nl).scale(c);
    let lambda_product = (&a_l * &q_pow_nk).scale(c);
    Ok(QFockOperators {
        q: q.clone(),
        c: c.clone(),
        cutoff,
        a_k,
        a_k_star,
        a_l,
        a_l_star,
        q_pow_nk,
        q_pow_nl,
        k_star_product,
        lambda_product,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct QRelationsReport {
    pub arith: Arith,
    pub cutoff: usize,
    /// Largest interior residual of each named identity.
    pub residuals: BTreeMap<&'static str, f64>,
    pub exact_zero: bool,
    pub passed: bool,
}

impl QRelationsReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        let residuals: serde_json::Map<String, Value> = self
            .residuals
            .iter()
            .map(|(k, v)| (k.to_string(), float_value(*v)))
            .collect();
        json!({
            "cutoff": self.cutoff,
            "residuals": residuals,
            "max_residual": float_value(self.max_residual()),
            "exact_zero": self.exact_zero,
            "passed": self.passed,
        })
    }
}

/// Interior check of the deformed commutation relations, the cross
/// commutators, and the reconstruction of `K*` and `Λ` from a ladder rep.
pub fn verify_q_relations<S: Scalar>(ops: &QFockOperators<S>, rep: &LadderRep<S>) -> Result<QRelationsReport> {
    if rep.cutoff != ops.cutoff {
        return Err(Error::InvalidParameter(format!(
            "cutoff mismatch: operators {} vs rep {}",
            ops.cutoff, rep.cutoff
        )));
    }
    let tol = Tolerance::default();
    let q_sq = ops.q.clone() * ops.q.clone();
    let identity = SparseMatrix::identity(rep.dim());
    let deformed = |a: &SparseMatrix<S>, a_star: &SparseMatrix<S>| {
        &(&(a * a_star) - &(a_star * a).scale(&q_sq)) - &identity
    };
    let commutator = |x: &SparseMatrix<S>, y: &SparseMatrix<S>| &(x * y) - &(y * x);
    let checks: Vec<(&'static str, SparseMatrix<S>, f64)> = vec![
        ("a_k a_k* - q^2 a_k* a_k - 1", deformed(&ops.a_k, &ops.a_k_star), 1.0),
        ("a_l a_l* - q^2 a_l* a_l - 1", deformed(&ops.a_l, &ops.a_l_star), 1.0),
        ("[a_k, a_l]", commutator(&ops.a_k, &ops.a_l), 1.0),
        ("[a_k*, a_l*]", commutator(&ops.a_k_star, &ops.a_l_star), 1.0),
        ("[a_k*, a_l]", commutator(&ops.a_k_star, &ops.a_l), 1.0),
        ("[a_k, a_l*]", commutator(&ops.a_k, &ops.a_l_star), 1.0),
        ("K* - c a_k* q^N_l", &rep.k_star - &ops.k_star_product, rep.k_star.max_abs()),
        ("Lambda - c a_l q^N_k", &rep.lambda - &ops.lambda_product, rep.lambda.max_abs()),
    ];
    let mut report = QRelationsReport {
        arith: S::ARITH,
        cutoff: rep.cutoff,
        residuals: BTreeMap::new(),
        exact_zero: true,
        passed: true,
    };
    for (name, matrix, base) in checks {
        // Deformed relations carry entries of size up to [M]_{q²}.
        let scale = base.max(ops.a_k.max_abs().powi(2) * q_sq.to_f64().max(1.0));
        let mut worst = 0.0f64;
        for (r, c, v) in matrix.nonzeros() {
            if rep.is_interior(r) && rep.is_interior(c) {
                worst = worst.max(v.abs_f64());
                report.exact_zero = false;
                report.passed &= tol.accepts(v, scale);
            }
        }
        report.residuals.insert(name, worst);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladder::build_ladder_rep;
    use crate::orthosystem::verify_relations;
    use crate::scalar::{Rational, Surd};
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Surd {
        Surd::from_rational(Rational::new(n.into(), d.into()))
    }

    #[test]
    fn closed_form_examples() {
        let one = closed_form_alphas(&rat(1, 1), &rat(1, 1), 5).unwrap();
        for (&(k, _), v) in one.iter() {
            assert_eq!(v, &Surd::sqrt_of(&Rational::from_integer((k as i64 + 1).into())).unwrap());
        }
        let half = closed_form_alphas(&rat(1, 2), &rat(1, 1), 3).unwrap();
        assert_eq!(half.get(0, 1).unwrap(), &rat(1, 2));
        let a10 = half.get(1, 0).unwrap();
        assert_eq!(a10, &Surd::sqrt_of(&Rational::new(5.into(), 4.into())).unwrap());
        assert!((a10.to_f64() - 1.118033988749895).abs() < 1e-15);
        assert_eq!(half.len(), 6);
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(closed_form_alphas(&rat(0, 1), &rat(1, 1), 3), Err(Error::InvalidParameter(_))));
        assert!(matches!(closed_form_alphas(&rat(1, 2), &rat(-1, 1), 3), Err(Error::InvalidParameter(_))));
        assert!(matches!(q_fock_operators(&-1.0, &1.0, 3), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn float_branch_is_continuous_at_one() {
        for k in 0..6 {
            let near = closed_form_alphas(&(1.0 + 1e-7), &1.0, 7).unwrap();
            let at = closed_form_alphas(&1.0, &1.0, 7).unwrap();
            let (a, b) = (near.get(k, 0).unwrap(), at.get(k, 0).unwrap());
            assert!((a - b).abs() < 1e-5, "{a} {b}");
            let inside = closed_form_alphas(&(1.0 + 1e-10), &1.0, 7).unwrap();
            assert_eq!(inside.get(k, 0).unwrap(), b);
        }
    }

    #[test]
    fn detection_round_trip() {
        let table = closed_form_alphas(&rat(1, 2), &rat(1, 1), 6).unwrap();
        let result = detect_factorization(&table, DEFAULT_DETECTION_TOL).unwrap();
        assert!(result.factorizable);
        assert_eq!(result.q, rat(1, 2));
        assert_eq!(result.c, rat(1, 1));
        assert_eq!(result.log_residual, 0.0);
        assert_eq!(result.exact_match, Some(true));
        assert!(!result.q_exceeds_one());

        let steep = closed_form_alphas(&rat(2, 1), &rat(3, 1), 6).unwrap();
        let result = detect_factorization(&steep, DEFAULT_DETECTION_TOL).unwrap();
        assert!(result.factorizable && result.q_exceeds_one());
        assert_eq!(result.c, rat(3, 1));
    }

    #[test]
    fn detection_rejects_small_or_bad_tables() {
        let small = closed_form_alphas(&rat(1, 2), &rat(1, 1), 2).unwrap();
        assert!(matches!(detect_factorization(&small, 1e-8), Err(Error::IncompleteTable(_))));
        let bad = closed_form_alphas(&rat(1, 2), &rat(1, 1), 4).unwrap().perturbed(1, 1, rat(-10, 1));
        assert_eq!(
            detect_factorization(&bad, 1e-8).unwrap_err(),
            Error::NonPositiveEntry { k: 1, l: 1 }
        );
    }

    #[test]
    fn rank_one_but_not_closed_form_is_rejected() {
        // f_k arbitrary, g geometric: relation (1) holds, relation (2) fails.
        let mut a = AlphaTable::new();
        let f = [1.0, 3.0, 2.0, 7.0];
        for k in 0..4 {
            for l in 0..4 - k {
                a.insert(k, l, f[k] * 0.5f64.powi(l as i32));
            }
        }
        let result = detect_factorization(&a, 1e-8).unwrap();
        assert!(result.log_residual < 1e-12);
        assert!(!result.factorizable);
        assert!(result.closed_form_residual > 0.1);
    }

    #[test]
    fn fock_operator_examples() {
        let ops = q_fock_operators(&rat(1, 2), &rat(1, 1), 2).unwrap();
        let idx = |k, l| basis_index(2, k, l);
        // (c·A_k*·q^{N_l}) e_{0,1} = (1/2) e_{1,1}
        assert_eq!(ops.k_star_product.get(idx(1, 1), idx(0, 1)), &rat(1, 2));
        let col: Vec<_> = (0..9).filter(|&r| !ops.k_star_product.get(r, idx(0, 1)).is_zero()).collect();
        assert_eq!(col, vec![idx(1, 1)]);
        for l in 0..=2 {
            assert!((0..9).all(|r| ops.a_k.get(r, idx(0, l)).is_zero()));
        }
        let bosonic = q_fock_operators(&rat(1, 1), &rat(1, 1), 3).unwrap();
        let idx3 = |k, l| basis_index(3, k, l);
        for k in 1..=3 {
            let want = Surd::sqrt_of(&Rational::from_integer((k as i64).into())).unwrap();
            assert_eq!(bosonic.a_k.get(idx3(k - 1, 2), idx3(k, 2)), &want);
        }
    }

    #[test]
    fn q_relations_hold_exactly() {
        for q in [rat(1, 2), rat(1, 1), rat(2, 1)] {
            let table = closed_form_alphas(&q, &rat(1, 1), 12).unwrap();
            let rep = build_ladder_rep(&table, 6).unwrap();
            let ops = q_fock_operators(&q, &rat(1, 1), 6).unwrap();
            let report = verify_q_relations(&ops, &rep).unwrap();
            assert!(report.passed && report.exact_zero, "{report:?}");
            assert_eq!(report.residuals.len(), 8);
        }
    }

    #[test]
    fn q_relations_in_floating_mode() {
        let q = 0.7f64;
        let table = closed_form_alphas(&q, &1.3, 12).unwrap();
        let rep = build_ladder_rep(&table, 6).unwrap();
        let ops = q_fock_operators(&q, &1.3, 6).unwrap();
        let report = verify_q_relations(&ops, &rep).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.max_residual() < 1e-12);
    }

    #[test]
    fn q_relations_notice_a_wrong_c() {
        let table = closed_form_alphas(&rat(1, 2), &rat(1, 1), 8).unwrap();
        let rep = build_ladder_rep(&table, 4).unwrap();
        let ops = q_fock_operators(&rat(1, 2), &rat(2, 1), 4).unwrap();
        let report = verify_q_relations(&ops, &rep).unwrap();
        assert!(!report.passed);
        assert!(report.residuals["K* - c a_k* q^N_l"] > 0.5);
        assert_eq!(report.residuals["[a_k, a_l]"], 0.0);
    }

    proptest! {
        #[test]
        fn closed_form_satisfies_both_relations(num in 1i64..12, den in 1i64..12, c in 1i64..5) {
            let table = closed_form_alphas(&rat(num, den), &rat(c, 1), 7).unwrap();
            let report = verify_relations(&table);
            prop_assert!(report.passed() && report.exact_zero);
        }

        #[test]
        fn closed_form_satisfies_relations_in_floats(q in 0.05f64..3.0, c in 0.1f64..4.0) {
            let table = closed_form_alphas(&q, &c, 8).unwrap();
            let report = verify_relations(&table);
            prop_assert!(report.passed(), "{:?}", report);
        }

        #[test]
        fn q_numbers_are_positive(q in 0.01f64..5.0, n in 1usize..20) {
            prop_assert!(q_number(&q, n).unwrap() > 0.0);
        }

        #[test]
        fn detection_recovers_parameters(q in 0.1f64..2.5, c in 0.2f64..3.0) {
            let table = closed_form_alphas(&q, &c, 6).unwrap();
            let result = detect_factorization(&table, DEFAULT_DETECTION_TOL).unwrap();
            prop_assert!(result.factorizable);
            prop_assert!((result.q - q).abs() <= 1e-12 * q);
            prop_assert!((result.c - c).abs() <= 1e-12 * c);
        }
    }
}
