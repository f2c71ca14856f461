//! Scalar arithmetic shared by every pipeline.
//!
//! Two implementations of [`Scalar`] exist: `f64` for floating mode and
//! [`Surd`] for exact mode. A `Surd` is a finite sum `Σ cᵢ·√rᵢ` with rational
//! `cᵢ` and positive integer radicands whose pairwise products are not perfect
//! squares. Square roots of distinct square-free integers are linearly
//! independent over the rationals, so that normal form makes the zero test
//! exact. Orthonormal polynomials built from rational moments only ever need
//! `√(rational)` factors, which keeps every quantity in this ring.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Arithmetic mode a computation runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arith {
    Exact,
    Float,
}

impl fmt::Display for Arith {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arith::Exact => "exact",
            Arith::Float => "float",
        })
    }
}

/// Real scalar usable by the polynomial and operator code.
pub trait Scalar:
    Clone
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const ARITH: Arith;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn from_f64(x: f64) -> Result<Self>;
    fn to_f64(&self) -> f64;

    /// Literal zero. For `f64` this is `== 0.0`.
    fn is_zero(&self) -> bool;

    /// Square root, `None` when the value is negative or the root leaves the
    /// representable set.
    fn sqrt(&self) -> Option<Self>;

    /// Division, `None` on a zero divisor or an unrepresentable quotient.
    fn checked_div(&self, rhs: &Self) -> Option<Self>;

    /// Sign of the value; exact where the representation allows it.
    fn signum(&self) -> Ordering;

    /// The value as a rational, when it is one.
    fn as_rational(&self) -> Option<Rational>;

    /// Canonical text form used in reports.
    fn to_text(&self) -> String;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }
}

/// Formats a float with 17 significant digits.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    format!("{x:.16e}")
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q` into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

impl Scalar for f64 {
    const ARITH: Arith = Arith::Float;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
    fn from_f64(x: f64) -> Result<Self> {
        Ok(x)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        (*rhs != 0.0).then(|| self / rhs)
    }
    fn signum(&self) -> Ordering {
        self.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
    }
    fn as_rational(&self) -> Option<Rational> {
        None
    }
    fn to_text(&self) -> String {
        format_f64(*self)
    }
}

const SMALL_PRIMES: [u32; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

fn perfect_square_root(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let root = n.sqrt();
    (&root * &root == *n).then_some(root)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Term {
    coeff: Rational,
    /// Positive integer; `1` marks the rational part.
    radicand: BigInt,
}

impl Term {
    /// Builds `coeff·√radicand` for a positive rational radicand, moving every
    /// detectable square factor into the coefficient.
    fn new(coeff: Rational, radicand: &Rational) -> Term {
        debug_assert!(radicand.is_positive());
        // √(p/q) = √(p·q)/q
        let mut coeff = coeff / Rational::from_integer(radicand.denom().clone());
        let mut rad = radicand.numer() * radicand.denom();
        if let Some(root) = perfect_square_root(&rad) {
            return Term {
                coeff: coeff * Rational::from_integer(root),
                radicand: BigInt::one(),
            };
        }
        for &p in &SMALL_PRIMES {
            let p = BigInt::from(p);
            let sq = &p * &p;
            while (&rad % &sq).is_zero() {
                rad /= &sq;
                coeff *= Rational::from_integer(p.clone());
            }
        }
        Term {
            coeff,
            radicand: rad,
        }
    }
}

/// Exact real number of the form `Σ cᵢ·√rᵢ`.
#[derive(Clone, Default)]
pub struct Surd {
    terms: Vec<Term>,
}

impl Surd {
    pub fn from_rational(r: Rational) -> Surd {
        if r.is_zero() {
            Surd::default()
        } else {
            Surd {
                terms: vec![Term {
                    coeff: r,
                    radicand: BigInt::one(),
                }],
            }
        }
    }

    /// `√r` for a nonnegative rational.
    pub fn sqrt_of(r: &Rational) -> Option<Surd> {
        match r.signum().to_i32() {
            Some(0) => Some(Surd::default()),
            Some(1) => Some(Surd {
                terms: vec![Term::new(Rational::one(), r)],
            }),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn push_term(&mut self, term: Term) {
        if term.coeff.is_zero() {
            return;
        }
        for existing in self.terms.iter_mut() {
            if existing.radicand == term.radicand {
                existing.coeff += term.coeff;
                self.prune();
                return;
            }
            let product = &existing.radicand * &term.radicand;
            if let Some(root) = perfect_square_root(&product) {
                // √b = (√(ab)/a)·√a
                let scale = Rational::new(root, existing.radicand.clone());
                existing.coeff += term.coeff * scale;
                self.prune();
                return;
            }
        }
        self.terms.push(term);
        self.terms.sort_by(|a, b| a.radicand.cmp(&b.radicand));
    }

    fn prune(&mut self) {
        self.terms.retain(|t| !t.coeff.is_zero());
    }

    /// The only term, when the value is a single rational multiple of a root.
    fn single(&self) -> Option<&Term> {
        match self.terms.as_slice() {
            [t] => Some(t),
            _ => None,
        }
    }

    fn reciprocal(&self) -> Option<Surd> {
        let t = self.single()?;
        // 1/(c√r) = √r/(c·r)
        let r = Rational::from_integer(t.radicand.clone());
        let coeff = (t.coeff.clone() * r).recip();
        Some(Surd {
            terms: vec![Term {
                coeff,
                radicand: t.radicand.clone(),
            }],
        })
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({})", self.to_text())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Surd) -> bool {
        (self.clone() - other.clone()).terms.is_empty()
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(mut self, rhs: Surd) -> Surd {
        for t in rhs.terms {
            self.push_term(t);
        }
        self
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(mut self) -> Surd {
        for t in self.terms.iter_mut() {
            t.coeff = -t.coeff.clone();
        }
        self
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        self + (-rhs)
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        let mut out = Surd::default();
        for a in &self.terms {
            for b in &rhs.terms {
                let coeff = &a.coeff * &b.coeff;
                let term = if a.radicand.is_one() {
                    Term {
                        coeff,
                        radicand: b.radicand.clone(),
                    }
                } else if b.radicand.is_one() {
                    Term {
                        coeff,
                        radicand: a.radicand.clone(),
                    }
                } else if a.radicand == b.radicand {
                    Term {
                        coeff: coeff * Rational::from_integer(a.radicand.clone()),
                        radicand: BigInt::one(),
                    }
                } else {
                    Term::new(coeff, &Rational::from_integer(&a.radicand * &b.radicand))
                };
                out.push_term(term);
            }
        }
        out
    }
}

fn term_text(t: &Term) -> String {
    if t.radicand.is_one() {
        format_rational(&t.coeff)
    } else if t.coeff.is_one() {
        format!("sqrt({})", t.radicand)
    } else if (-t.coeff.clone()).is_one() {
        format!("-sqrt({})", t.radicand)
    } else {
        format!("{}*sqrt({})", format_rational(&t.coeff), t.radicand)
    }
}

impl Scalar for Surd {
    const ARITH: Arith = Arith::Exact;

    fn zero() -> Self {
        Surd::default()
    }
    fn one() -> Self {
        Surd::from_rational(Rational::one())
    }
    fn from_rational(r: &Rational) -> Self {
        Surd::from_rational(r.clone())
    }
    fn from_f64(x: f64) -> Result<Self> {
        Err(Error::InvalidParameter(format!(
            "floating value {x} cannot enter exact arithmetic"
        )))
    }
    fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let c = t.coeff.to_f64().unwrap_or(f64::NAN);
                if t.radicand.is_one() {
                    c
                } else {
                    c * t.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
                }
            })
            .sum()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn sqrt(&self) -> Option<Self> {
        if self.terms.is_empty() {
            return Some(Surd::default());
        }
        let r = self.as_rational()?;
        Surd::sqrt_of(&r)
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        Some(self.clone() * rhs.reciprocal()?)
    }
    fn signum(&self) -> Ordering {
        match self.terms.as_slice() {
            [] => Ordering::Equal,
            [t] => t.coeff.numer().sign().cmp(&Sign::NoSign),
            _ => {
                // Nonzero by construction; a float estimate decides the sign.
                // Refine with exact squaring when the estimate is not clear-cut.
                let approx = self.to_f64();
                if approx.abs() > 1e-9 * self.terms.iter().map(term_magnitude).fold(0.0, f64::max)
                {
                    approx.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
                } else {
                    exact_sign(self, 0)
                }
            }
        }
    }
    fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [t] if t.radicand.is_one() => Some(t.coeff.clone()),
            _ => None,
        }
    }
    fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let text = term_text(t);
            if i == 0 {
                out.push_str(&text);
            } else if let Some(rest) = text.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&text);
            }
        }
        out
    }
}

fn term_magnitude(t: &Term) -> f64 {
    (t.coeff.to_f64().unwrap_or(0.0) * t.radicand.to_f64().unwrap_or(0.0).sqrt()).abs()
}

/// Exact sign of a nonzero multi-term surd: split off one radical `√r`,
/// write the value as `a + b√r` with `a`, `b` free of `√r`, and compare
/// `a²` against `b²·r` recursively.
fn exact_sign(x: &Surd, depth: usize) -> Ordering {
    if depth > 8 {
        return x.to_f64().partial_cmp(&0.0).unwrap_or(Ordering::Equal);
    }
    let Some(pivot) = x.terms.iter().find(|t| !t.radicand.is_one()) else {
        return x.as_rational().map_or(Ordering::Equal, |r| r.numer().sign().cmp(&Sign::NoSign));
    };
    let pivot_rad = pivot.radicand.clone();
    let mut a = Surd::default();
    let mut b = Surd::default();
    for t in &x.terms {
        if t.radicand == pivot_rad {
            b.push_term(Term {
                coeff: t.coeff.clone(),
                radicand: BigInt::one(),
            });
        } else {
            a.push_term(t.clone());
        }
    }
    let sa = exact_sign(&a, depth + 1);
    let sb = exact_sign(&b, depth + 1);
    if sa == sb || sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal {
        return sb;
    }
    let r = Surd::from_rational(Rational::from_integer(pivot_rad));
    let diff = a.clone() * a - b.clone() * b * r;
    match exact_sign(&diff, depth + 1) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}
