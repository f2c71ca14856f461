//! Square matrices over a [`Scalar`], stored as sparse rows.
//!
//! Ladder operators have at most two nonzeros per column, so only nonzero
//! entries are kept; reads of absent entries return zero.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use serde_json::{json, Value};

use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct SparseMatrix<S> {
    n: usize,
    rows: Vec<BTreeMap<usize, S>>,
    zero: S,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        SparseMatrix {
            n,
            rows: vec![BTreeMap::new(); n],
            zero: S::zero(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal((0..n).map(|_| S::one()))
    }

    pub fn diagonal(entries: impl IntoIterator<Item = S>) -> Self {
        let entries: Vec<S> = entries.into_iter().collect();
        let mut m = Self::zeros(entries.len());
        for (i, v) in entries.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        assert!(col < self.n, "column {col} out of range");
        self.rows[row].get(&col).unwrap_or(&self.zero)
    }

    pub fn set(&mut self, row: usize, col: usize, value: S) {
        assert!(col < self.n, "column {col} out of range");
        if value.is_zero() {
            self.rows[row].remove(&col);
        } else {
            self.rows[row].insert(col, value);
        }
    }

    fn accumulate(&mut self, row: usize, col: usize, value: S) {
        let sum = self.get(row, col).clone() + value;
        self.set(row, col, sum);
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for (r, c, v) in self.nonzeros() {
            t.rows[c].insert(r, v.clone());
        }
        t
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zeros(self.n);
        for (r, col, v) in self.nonzeros() {
            out.set(r, col, v.clone() * c.clone());
        }
        out
    }

    /// `self · v`.
    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(&c, _)| !v[c].is_zero())
                    .fold(S::zero(), |acc, (&c, a)| acc + a.clone() * v[c].clone())
            })
            .collect()
    }

    /// Nonzero entries in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, v)| (r, c, v)))
    }

    pub fn max_abs(&self) -> f64 {
        self.nonzeros().map(|(_, _, v)| v.abs_f64()).fold(0.0, f64::max)
    }

    /// `(row, col, value)` triples of the nonzero entries, row-major.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.nonzeros()
                .map(|(r, c, v)| json!([r, c, crate::report::scalar_value(v)]))
                .collect(),
        )
    }
}

impl<S: Scalar> Mul for &SparseMatrix<S> {
    type Output = SparseMatrix<S>;
    fn mul(self, rhs: Self) -> SparseMatrix<S> {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out: SparseMatrix<S> = SparseMatrix::zeros(self.n);
        for (i, k, a) in self.nonzeros() {
            for (&j, b) in &rhs.rows[k] {
                out.accumulate(i, j, a.clone() * b.clone());
            }
        }
        out
    }
}

impl<S: Scalar> Add for &SparseMatrix<S> {
    type Output = SparseMatrix<S>;
    fn add(self, rhs: Self) -> SparseMatrix<S> {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for (r, c, v) in rhs.nonzeros() {
            out.accumulate(r, c, v.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &SparseMatrix<S> {
    type Output = SparseMatrix<S>;
    fn sub(self, rhs: Self) -> SparseMatrix<S> {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for (r, c, v) in rhs.nonzeros() {
            out.accumulate(r, c, S::zero() - v.clone());
        }
        out
    }
}
