//! Real-coefficient polynomials in the commuting variables `z` and `z̄`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Result;
use crate::measures::{bivariate_moment, RadialMomentSequence};
use crate::scalar::Scalar;

/// Sparse map from exponent pair `(k, l)` of `z^k z̄^l` to a nonzero coefficient.
#[derive(Clone, Debug)]
pub struct BivariatePolynomial<S> {
    terms: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> Default for BivariatePolynomial<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> BivariatePolynomial<S> {
    pub fn zero() -> Self {
        BivariatePolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: S) -> Self {
        Self::term(0, 0, c)
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    /// `z^k z̄^l`.
    pub fn monomial(k: usize, l: usize) -> Self {
        Self::term(k, l, S::one())
    }

    pub fn term(k: usize, l: usize, c: S) -> Self {
        let mut p = Self::zero();
        p.add_term(k, l, c);
        p
    }

    pub fn z() -> Self {
        Self::monomial(1, 0)
    }

    pub fn zbar() -> Self {
        Self::monomial(0, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, usize), S)>) -> Self {
        let mut p = Self::zero();
        for ((k, l), c) in terms {
            p.add_term(k, l, c);
        }
        p
    }

    /// Adds `c·z^k z̄^l`, dropping the entry if it cancels.
    pub fn add_term(&mut self, k: usize, l: usize, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&(k, l)) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert((k, l), sum);
                }
            }
            None => {
                self.terms.insert((k, l), c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: usize, l: usize) -> S {
        self.terms.get(&(k, l)).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Maximum `k + l`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|(k, l)| k + l).max()
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(&kl, v)| (kl, v.clone() * c.clone())))
    }

    /// `z^a z̄^b · p`.
    pub fn shift(&self, a: usize, b: usize) -> Self {
        BivariatePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&(k, l), v)| ((k + a, l + b), v.clone()))
                .collect(),
        }
    }

    /// Complex conjugate. Coefficients are real, so this swaps exponents.
    pub fn conjugate_swap(&self) -> Self {
        BivariatePolynomial {
            terms: self.terms.iter().map(|(&(k, l), v)| ((l, k), v.clone())).collect(),
        }
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    /// Canonical text form: highest total degree first, then `z` power
    /// descending; `zb` stands for `z̄`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(k, l)| std::cmp::Reverse((k + l, k)));
        let mut out = String::new();
        for (i, (k, l)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(k, l)];
            let mut coeff = c.to_text();
            if coeff.contains(' ') {
                coeff = format!("({coeff})");
            }
            let (negative, magnitude) = match coeff.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, coeff),
            };
            let mut factors = Vec::new();
            if (k, l) == (0, 0) || magnitude != "1" {
                factors.push(magnitude);
            }
            if k > 0 {
                factors.push(if k == 1 { "z".to_string() } else { format!("z^{k}") });
            }
            if l > 0 {
                factors.push(if l == 1 { "zb".to_string() } else { format!("zb^{l}") });
            }
            let body = factors.join("·");
            match (i, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

impl<S: Scalar> PartialEq for BivariatePolynomial<S> {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl<S: Scalar> fmt::Display for BivariatePolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<S: Scalar> Add for &BivariatePolynomial<S> {
    type Output = BivariatePolynomial<S>;
    fn add(self, rhs: Self) -> BivariatePolynomial<S> {
        let mut out = self.clone();
        for (&(k, l), c) in &rhs.terms {
            out.add_term(k, l, c.clone());
        }
        out
    }
}

impl<S: Scalar> Neg for &BivariatePolynomial<S> {
    type Output = BivariatePolynomial<S>;
    fn neg(self) -> BivariatePolynomial<S> {
        BivariatePolynomial {
            terms: self.terms.iter().map(|(&kl, c)| (kl, -c.clone())).collect(),
        }
    }
}

impl<S: Scalar> Sub for &BivariatePolynomial<S> {
    type Output = BivariatePolynomial<S>;
    fn sub(self, rhs: Self) -> BivariatePolynomial<S> {
        let mut out = self.clone();
        for (&(k, l), c) in &rhs.terms {
            out.add_term(k, l, -c.clone());
        }
        out
    }
}

impl<S: Scalar> Mul for &BivariatePolynomial<S> {
    type Output = BivariatePolynomial<S>;
    fn mul(self, rhs: Self) -> BivariatePolynomial<S> {
        poly_product(self, rhs)
    }
}

/// Coefficient convolution over exponent pairs.
pub fn poly_product<S: Scalar>(
    p: &BivariatePolynomial<S>,
    q: &BivariatePolynomial<S>,
) -> BivariatePolynomial<S> {
    let mut out = BivariatePolynomial::zero();
    for (&(a, b), x) in &p.terms {
        for (&(c, d), y) in &q.terms {
            out.add_term(a + c, b + d, x.clone() * y.clone());
        }
    }
    out
}

pub fn conjugate_swap<S: Scalar>(p: &BivariatePolynomial<S>) -> BivariatePolynomial<S> {
    p.conjugate_swap()
}

/// `∫ p dμ`: only the diagonal terms `c_{k,k}·m_k` survive.
pub fn moment_functional<S: Scalar>(
    p: &BivariatePolynomial<S>,
    m: &RadialMomentSequence<S>,
) -> Result<S> {
    let mut acc = S::zero();
    for (&(k, l), c) in &p.terms {
        if k == l {
            acc = acc + c.clone() * bivariate_moment(m, k, l)?;
        }
    }
    Ok(acc)
}

/// `⟨p, q⟩ = ∫ conj(p)·q dμ`.
///
/// Evaluated without forming the product: a pair of terms contributes only
/// when both lie in the same sector `k − l`.
pub fn inner_product<S: Scalar>(
    p: &BivariatePolynomial<S>,
    q: &BivariatePolynomial<S>,
    m: &RadialMomentSequence<S>,
) -> Result<S> {
    let mut acc = S::zero();
    for (&(a, b), x) in &p.terms {
        let mut inner = S::zero();
        for (&(c, d), y) in &q.terms {
            // conj(z^a z̄^b)·z^c z̄^d = z^{b+c} z̄^{a+d}
            if b + c == a + d {
                inner = inner + y.clone() * m.get(b + c)?.clone();
            }
        }
        if !inner.is_zero() {
            acc = acc + x.clone() * inner;
        }
    }
    Ok(acc)
}
