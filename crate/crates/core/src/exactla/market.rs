//! Matrix Market coordinate format with integer field.

use std::fmt::Write;

use num_bigint::BigInt;

use super::matrix::SparseIntMatrix;
use crate::error::{Error, Result};

impl SparseIntMatrix {
    pub fn to_matrix_market(&self) -> String {
        let mut out = String::from("%%MatrixMarket matrix coordinate integer general\n");
        writeln!(out, "{} {} {}", self.nrows(), self.ncols(), self.nnz()).unwrap();
        for (i, j, v) in self.entries() {
            writeln!(out, "{} {} {}", i + 1, j + 1, v).unwrap();
        }
        out
    }

    pub fn from_matrix_market(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Input("empty matrix file".into()))?;
        let lower = header.to_ascii_lowercase();
        if !lower.starts_with("%%matrixmarket matrix coordinate") || !lower.contains("integer") {
            return Err(Error::Input(format!("unsupported header `{header}`")));
        }
        let mut lines = lines.filter(|l| !l.starts_with('%'));
        let size = lines.next().ok_or_else(|| Error::Input("missing size line".into()))?;
        let dims: Vec<usize> = size
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| Error::Input(format!("bad size line `{size}`"))))
            .collect::<Result<_>>()?;
        let [rows, cols, nnz] = dims[..] else {
            return Err(Error::Input(format!("bad size line `{size}`")));
        };
        let mut data = vec![Vec::new(); rows];
        let mut count = 0;
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Input(format!("bad entry `{line}`"));
            let [i, j, v] = parts[..] else { return Err(bad()) };
            let i: usize = i.parse().map_err(|_| bad())?;
            let j: usize = j.parse().map_err(|_| bad())?;
            let v: BigInt = v.parse().map_err(|_| bad())?;
            if i == 0 || i > rows || j == 0 || j > cols {
                return Err(bad());
            }
            data[i - 1].push((j - 1, v));
            count += 1;
        }
        if count != nnz {
            return Err(Error::Input(format!("expected {nnz} entries, found {count}")));
        }
        SparseIntMatrix::from_rows(cols, data)
    }
}
