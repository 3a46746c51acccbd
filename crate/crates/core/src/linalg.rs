//! Exact rational linear algebra.
//!
//! Dense matrices for morphism coefficients and an incremental sparse row
//! reducer for the linear systems behind hom spaces and isomorphism tests.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&mut self, s: &Q) {
        for v in &mut self.data {
            *v *= s;
        }
    }

    pub fn neg(&self) -> Self {
        let mut m = self.clone();
        for v in &mut m.data {
            *v = -v.clone();
        }
        m
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn remove_row(&mut self, r: usize) {
        let start = r * self.cols;
        self.data.drain(start..start + self.cols);
        self.rows -= 1;
    }

    pub fn remove_col(&mut self, c: usize) {
        let cols = self.cols;
        let mut i = 0;
        self.data.retain(|_| {
            let keep = i % cols != c;
            i += 1;
            keep
        });
        self.cols -= 1;
    }

    /// Plain matrix product, no walk structure.
    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + a * b;
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &QMatrix, b: &QMatrix, c: &QMatrix, d: &QMatrix) -> QMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut out = QMatrix::zeros(a.rows + c.rows, a.cols + b.cols);
        for (blk, r0, c0) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for r in 0..blk.rows {
                for col in 0..blk.cols {
                    out.set(r0 + r, c0 + col, blk.get(r, col).clone());
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut red = RowReducer::new(self.cols);
        for r in 0..self.rows {
            red.add_dense(&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        red.rank()
    }

    pub fn row_slice(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

pub type SparseRow = Vec<(usize, Q)>;

/// `a - s * b` for sorted sparse rows.
fn sub_scaled(a: &SparseRow, s: &Q, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(s * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - s * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental reduced row echelon form over the rationals.
///
/// Rows are kept fully reduced against each other, so reducing a new row
/// needs one pass over its pivot-column entries.
#[derive(Clone, Debug)]
pub struct RowReducer {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl RowReducer {
    pub fn new(ncols: usize) -> Self {
        RowReducer {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Remainder of `row` modulo the current row space.
    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let mut cur = row.clone();
        let hits: Vec<(usize, Q)> = row
            .iter()
            .filter(|(c, _)| self.pivots.contains_key(c))
            .cloned()
            .collect();
        for (c, _) in hits {
            let coeff = match cur.iter().find(|(cc, _)| *cc == c) {
                Some((_, v)) => v.clone(),
                None => continue,
            };
            cur = sub_scaled(&cur, &coeff, &self.pivots[&c]);
        }
        cur
    }

    /// Adds a row; returns whether it was independent of the rows so far.
    pub fn add(&mut self, row: SparseRow) -> bool {
        let mut cur = self.reduce(&row);
        let Some((p, lead)) = cur.first().cloned() else {
            return false;
        };
        let inv = Q::one() / lead;
        for (_, v) in &mut cur {
            *v *= &inv;
        }
        for other in self.pivots.values_mut() {
            if let Some((_, v)) = other.iter().find(|(c, _)| *c == p) {
                let v = v.clone();
                *other = sub_scaled(other, &v, &cur);
            }
        }
        self.pivots.insert(p, cur);
        true
    }

    pub fn add_dense(&mut self, row: &[Q]) -> bool {
        self.add(to_sparse(row))
    }

    /// Basis of `{x : row . x = 0 for every added row}`.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if self.pivots.contains_key(&free) {
                continue;
            }
            let mut x = vec![Q::zero(); self.ncols];
            x[free] = Q::one();
            for (&p, row) in &self.pivots {
                if let Some((_, v)) = row.iter().find(|(c, _)| *c == free) {
                    x[p] = -v.clone();
                }
            }
            basis.push(x);
        }
        basis
    }
}

pub fn to_sparse(row: &[Q]) -> SparseRow {
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Determinant of a small square integer matrix via fraction-free elimination.
pub fn det_i64(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let piv = a[col][col].clone();
        det *= &piv;
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &piv;
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = &*x - &f * p;
            }
        }
    }
    debug_assert!(det.is_integer());
    det.to_integer()
}

pub fn is_positive(x: &BigInt) -> bool {
    x.is_positive()
}
