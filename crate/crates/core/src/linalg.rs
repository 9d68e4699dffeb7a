//! Exact dense rational matrices with fraction-free elimination.
//!
//! Each row is scaled to a primitive integer row up front (this changes
//! neither the row space nor the kernel), and elimination runs on sparse
//! integer rows, dividing by the row content after every update to keep the
//! entries small.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, actual: r.len() });
            }
            data.extend(r);
        }
        Ok(RationalMatrix { rows: nrows, cols, data })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        let mut m = RationalMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, actual: col.len() });
            }
            for (i, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = RationalMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, actual: x.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    fn integer_rows(&self, extra: Option<&[Rational]>) -> Vec<SparseRow> {
        (0..self.rows)
            .map(|i| {
                let mut entries: Vec<(usize, &Rational)> =
                    self.row(i).iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
                if let Some(v) = extra {
                    if !v[i].is_zero() {
                        entries.push((self.cols, &v[i]));
                    }
                }
                SparseRow::from_rationals(entries)
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        echelon(self.integer_rows(None)).len()
    }

    /// Basis of the right kernel, one vector per free column (in increasing
    /// column order), with the free coordinate set to 1.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let reduced = reduce(echelon(self.integer_rows(None)));
        let pivot_cols: Vec<usize> = reduced.iter().map(|r| r.lead()).collect();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for row in &reduced {
                if let Some(a) = row.get(free) {
                    let p = row.lead_value();
                    v[row.lead()] = -Rational::new(a.clone(), p.clone());
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self · x = v` when `v` lies in the column space; free
    /// variables are set to zero.
    pub fn solve(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, actual: v.len() });
        }
        let rows = echelon(self.integer_rows(Some(v)));
        if rows.iter().any(|r| r.lead() == self.cols) {
            return Ok(None);
        }
        let reduced = reduce(rows);
        let mut x = vec![Rational::zero(); self.cols];
        for row in &reduced {
            if let Some(b) = row.get(self.cols) {
                x[row.lead()] = Rational::new(b.clone(), row.lead_value().clone());
            }
        }
        Ok(Some(x))
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", format_rational(self.get(i, j)))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    m.kernel_basis()
}

/// Coefficients `x` with `m · x = v` if `v` is in the span of the columns of
/// `m`; `None` otherwise.
pub fn in_span(v: &[Rational], m: &RationalMatrix) -> Result<Option<Vec<Rational>>> {
    m.solve(v)
}

/// Primitive integer row stored sparsely, sorted by column.
#[derive(Clone, Debug)]
struct SparseRow(Vec<(usize, BigInt)>);

impl SparseRow {
    fn from_rationals(entries: Vec<(usize, &Rational)>) -> Self {
        let lcm = entries.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
        let mut row = SparseRow(
            entries
                .into_iter()
                .map(|(c, x)| (c, x.numer() * (&lcm / x.denom())))
                .collect(),
        );
        row.make_primitive();
        row
    }

    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn lead(&self) -> usize {
        self.0[0].0
    }

    fn lead_value(&self) -> &BigInt {
        &self.0[0].1
    }

    fn get(&self, col: usize) -> Option<&BigInt> {
        self.0.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &self.0[i].1)
    }

    fn make_primitive(&mut self) {
        let g = self.0.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
        if !g.is_zero() && !g.is_one() {
            for (_, x) in &mut self.0 {
                *x /= &g;
            }
        }
        if self.0.first().is_some_and(|(_, x)| x.is_negative()) {
            for (_, x) in &mut self.0 {
                *x = -&*x;
            }
        }
    }

    /// Eliminates `col` from `self` using `pivot`, whose leading column is `col`.
    fn eliminate(&mut self, pivot: &SparseRow, col: usize) {
        let Some(a) = self.get(col).cloned() else { return };
        let p = pivot.lead_value();
        let g = a.gcd(p);
        let self_scale = p / &g;
        let pivot_scale = &a / &g;
        let mut out = Vec::with_capacity(self.0.len() + pivot.0.len());
        let (mut i, mut j) = (0, 0);
        let (lhs, rhs) = (&self.0, &pivot.0);
        while i < lhs.len() || j < rhs.len() {
            let next = match (lhs.get(i), rhs.get(j)) {
                (Some((ci, xi)), Some((cj, xj))) if ci == cj => {
                    i += 1;
                    j += 1;
                    (*ci, xi * &self_scale - xj * &pivot_scale)
                }
                (Some((ci, xi)), Some((cj, _))) if ci < cj => {
                    i += 1;
                    (*ci, xi * &self_scale)
                }
                (Some((ci, xi)), None) => {
                    i += 1;
                    (*ci, xi * &self_scale)
                }
                (_, Some((cj, xj))) => {
                    j += 1;
                    (*cj, -(xj * &pivot_scale))
                }
                (None, None) => unreachable!(),
            };
            if !next.1.is_zero() {
                out.push(next);
            }
        }
        self.0 = out;
        self.make_primitive();
    }
}

/// Row echelon form: distinct leading columns, sorted by leading column.
fn echelon(rows: Vec<SparseRow>) -> Vec<SparseRow> {
    use std::collections::BTreeMap;
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    // Shorter rows first keeps fill-in down.
    let mut rows = rows;
    rows.sort_by_key(|r| r.0.len());
    for mut row in rows {
        while !row.is_empty() {
            let lead = row.lead();
            match pivots.get(&lead) {
                Some(p) => {
                    // Prefer the pivot with the smaller leading entry.
                    if row.0.len() < p.0.len() && row.lead_value().abs() <= p.lead_value().abs() {
                        let mut old = pivots.insert(lead, row).expect("present");
                        old.eliminate(&pivots[&lead], lead);
                        row = old;
                    } else {
                        row.eliminate(p, lead);
                    }
                }
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.into_values().collect()
}

/// Reduced echelon form: each leading column is zero in every other row.
fn reduce(mut rows: Vec<SparseRow>) -> Vec<SparseRow> {
    for k in (0..rows.len()).rev() {
        let (upper, lower) = rows.split_at_mut(k);
        let pivot = &lower[0];
        let col = pivot.lead();
        for r in upper.iter_mut() {
            r.eliminate(pivot, col);
        }
    }
    rows
}
