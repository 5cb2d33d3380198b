use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Integer matrix stored row by row without zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    cols: usize,
    rows: Vec<SparseRow>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { cols, rows: vec![Vec::new(); rows] }
    }

    /// Build from rows given as arbitrary `(col, value)` lists; repeated
    /// columns are summed and zeros dropped.
    pub fn from_rows(cols: usize, rows: Vec<Vec<(usize, BigInt)>>) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (c, v) in row {
                if c >= cols {
                    return Err(Error::DimensionMismatch { expected: cols, found: c + 1 });
                }
                *acc.entry(c).or_default() += v;
            }
            out.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        Ok(SparseIntMatrix { cols, rows: out })
    }

    pub fn from_dense(m: &[Vec<BigInt>]) -> Self {
        let cols = m.first().map_or(0, Vec::len);
        let rows = m
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect())
            .collect();
        SparseIntMatrix { cols, rows }
    }

    pub fn from_i64(m: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let mut out = Self::from_dense(&dense);
        if m.is_empty() {
            out.cols = 0;
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn push_row(&mut self, row: Vec<(usize, BigInt)>) -> Result<()> {
        let m = SparseIntMatrix::from_rows(self.cols, vec![row])?;
        self.rows.extend(m.rows);
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// All nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows.len()];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![Vec::new(); self.cols];
        for (i, j, v) in self.entries() {
            rows[j].push((i, v.clone()));
        }
        SparseIntMatrix { cols: self.rows.len(), rows }
    }

    pub fn permute_rows(&self, order: &[usize]) -> Self {
        SparseIntMatrix { cols: self.cols, rows: order.iter().map(|&i| self.rows[i].clone()).collect() }
    }

    pub fn permute_cols(&self, order: &[usize]) -> Self {
        // new column k is old column order[k]
        let mut inverse = vec![0; self.cols];
        for (k, &c) in order.iter().enumerate() {
            inverse[c] = k;
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut v: SparseRow = r.iter().map(|(c, x)| (inverse[*c], x.clone())).collect();
                v.sort_by_key(|(c, _)| *c);
                v
            })
            .collect();
        SparseIntMatrix { cols: self.cols, rows }
    }

    /// Row vector times matrix: `x^T M`.
    pub fn left_mul(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.rows.len() {
            return Err(Error::DimensionMismatch { expected: self.rows.len(), found: x.len() });
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, r) in self.rows.iter().enumerate() {
            if x[i].is_zero() {
                continue;
            }
            for (j, v) in r {
                out[*j] += &x[i] * v;
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols != other.rows.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows.len() });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (k, a) in r {
                    for (j, b) in &other.rows[*k] {
                        *acc.entry(*j).or_default() += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(SparseIntMatrix { cols: other.cols, rows })
    }
}

/// `a + c*b` for sparse rows.
pub(crate) fn axpy(a: &[(usize, BigInt)], c: &BigInt, b: &[(usize, BigInt)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub(crate) fn lookup(row: &[(usize, BigInt)], col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|k| &row[k].1)
}
