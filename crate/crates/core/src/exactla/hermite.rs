//! Row-style Hermite normal form by incremental gcd elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{axpy, lookup, SparseIntMatrix, SparseRow};
use super::xgcd;
use crate::error::{Error, Result};

struct Echelon {
    track: bool,
    // pivot column -> (row, combination of input rows)
    basis: BTreeMap<usize, (SparseRow, SparseRow)>,
    kernel: Vec<SparseRow>,
}

fn scale(row: &[(usize, BigInt)], c: &BigInt) -> SparseRow {
    if c.is_zero() {
        return Vec::new();
    }
    row.iter().map(|(j, v)| (*j, v * c)).collect()
}

fn combine(x: &BigInt, a: &[(usize, BigInt)], y: &BigInt, b: &[(usize, BigInt)]) -> SparseRow {
    axpy(&scale(a, x), y, b)
}

impl Echelon {
    fn new(track: bool) -> Self {
        Echelon { track, basis: BTreeMap::new(), kernel: Vec::new() }
    }

    fn insert(&mut self, mut row: SparseRow, mut comb: SparseRow) {
        loop {
            let Some((p, r)) = row.first().cloned() else {
                if self.track {
                    self.kernel.push(comb);
                }
                return;
            };
            let Some((brow, bcomb)) = self.basis.get_mut(&p) else {
                self.basis.insert(p, (row, comb));
                return;
            };
            let a = brow[0].1.clone();
            if r.is_multiple_of(&a) {
                let q = -(&r / &a);
                row = axpy(&row, &q, brow);
                if self.track {
                    comb = axpy(&comb, &q, bcomb);
                }
            } else {
                let (g, x, y) = xgcd(&a, &r);
                let (ra, rr) = (&r / &g, -(&a / &g));
                let new_b = combine(&x, brow, &y, &row);
                let new_row = combine(&ra, brow, &rr, &row);
                if self.track {
                    let new_bc = combine(&x, bcomb, &y, &comb);
                    comb = combine(&ra, bcomb, &rr, &comb);
                    *bcomb = new_bc;
                }
                *brow = new_b;
                row = new_row;
            }
        }
    }

    /// Positive pivots and entries above each pivot reduced into `[0, pivot)`.
    fn finish(self) -> (Vec<(SparseRow, SparseRow)>, Vec<SparseRow>) {
        let mut rows: Vec<(SparseRow, SparseRow)> = self.basis.into_values().collect();
        for (r, c) in rows.iter_mut() {
            if r[0].1.is_negative() {
                *r = scale(r, &-BigInt::one());
                *c = scale(c, &-BigInt::one());
            }
        }
        for i in 0..rows.len() {
            let (p, h) = rows[i].0[0].clone();
            let (pivot_row, pivot_comb) = rows[i].clone();
            for (row, comb) in rows.iter_mut().take(i) {
                let Some(e) = lookup(row, p) else { continue };
                let q = -e.div_floor(&h);
                if q.is_zero() {
                    continue;
                }
                *row = axpy(row, &q, &pivot_row);
                if self.track {
                    *comb = axpy(comb, &q, &pivot_comb);
                }
            }
        }
        (rows, self.kernel)
    }
}

fn echelon(m: &SparseIntMatrix, track: bool) -> (Vec<(SparseRow, SparseRow)>, Vec<SparseRow>) {
    let mut e = Echelon::new(track);
    for (i, row) in m.rows().iter().enumerate() {
        let comb = if track { vec![(i, BigInt::one())] } else { Vec::new() };
        e.insert(row.clone(), comb);
    }
    e.finish()
}

/// Hermite normal form `H` and a unimodular `U` with `U * M = H`.
///
/// `H` has the shape of `M`: the nonzero rows come first with strictly
/// increasing pivot columns, positive pivots, and entries above each pivot
/// in `[0, pivot)`.
pub fn hermite_normal_form(m: &SparseIntMatrix) -> (SparseIntMatrix, SparseIntMatrix) {
    let (basis, kernel) = echelon(m, true);
    let mut h_rows: Vec<SparseRow> = basis.iter().map(|(r, _)| r.clone()).collect();
    h_rows.resize(m.nrows(), Vec::new());
    let mut u_rows: Vec<SparseRow> = basis.into_iter().map(|(_, c)| c).collect();
    u_rows.extend(kernel);
    let h = SparseIntMatrix::from_rows(m.ncols(), h_rows).expect("columns in range");
    let u = SparseIntMatrix::from_rows(m.nrows(), u_rows).expect("rows in range");
    (h, u)
}

/// The nonzero rows of the Hermite normal form: the canonical basis of the
/// row lattice.
pub fn hermite_form(m: &SparseIntMatrix) -> SparseIntMatrix {
    let (basis, _) = echelon(m, false);
    SparseIntMatrix::from_rows(m.ncols(), basis.into_iter().map(|(r, _)| r).collect()).expect("columns in range")
}

/// Integer `x` with `x^T M = v`, or `NotInLattice`.
pub fn solve_membership(m: &SparseIntMatrix, v: &[BigInt]) -> Result<Vec<BigInt>> {
    if v.len() != m.ncols() {
        return Err(Error::DimensionMismatch { expected: m.ncols(), found: v.len() });
    }
    let (basis, _) = echelon(m, true);
    let mut rest: SparseRow = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect();
    let mut x: SparseRow = Vec::new();
    for (row, comb) in &basis {
        let (p, h) = &row[0];
        let Some(e) = lookup(&rest, *p) else { continue };
        let (q, r) = e.div_rem(h);
        if !r.is_zero() {
            return Err(Error::NotInLattice);
        }
        rest = axpy(&rest, &-&q, row);
        x = axpy(&x, &q, comb);
    }
    if !rest.is_empty() {
        return Err(Error::NotInLattice);
    }
    let mut out = vec![BigInt::zero(); m.nrows()];
    for (i, c) in x {
        out[i] = c;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::determinant;

    fn m(rows: &[Vec<i64>]) -> SparseIntMatrix {
        SparseIntMatrix::from_i64(rows)
    }

    #[test]
    fn examples() {
        let id = m(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(hermite_normal_form(&id).0, id);
        let (h, u) = hermite_normal_form(&m(&[vec![2, 4], vec![1, 2]]));
        assert_eq!(h, m(&[vec![1, 2], vec![0, 0]]));
        assert_eq!(u.mul(&m(&[vec![2, 4], vec![1, 2]])).unwrap(), h);
        assert_eq!(determinant(&u.to_dense()).abs(), BigInt::one());
    }

    #[test]
    fn reduced_above_pivots() {
        let a = m(&[vec![3, 5, 1], vec![0, 2, 7], vec![1, 1, 1]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(u.mul(&a).unwrap(), h);
        let d = h.to_dense();
        for (i, row) in d.iter().enumerate() {
            let p = row.iter().position(|x| !x.is_zero()).unwrap();
            assert!(row[p].is_positive());
            for above in d.iter().take(i) {
                assert!(!above[p].is_negative() && above[p] < row[p]);
            }
        }
        assert_eq!(hermite_normal_form(&h).0, h);
    }

    #[test]
    fn membership() {
        let a = m(&[vec![2]]);
        assert_eq!(solve_membership(&a, &[BigInt::from(4)]).unwrap(), vec![BigInt::from(2)]);
        assert_eq!(solve_membership(&a, &[BigInt::from(3)]), Err(Error::NotInLattice));
        assert!(matches!(solve_membership(&a, &[]), Err(Error::DimensionMismatch { .. })));
        let b = m(&[vec![2, 1, 0], vec![0, 3, 3], vec![4, 2, 0]]);
        let v = vec![BigInt::from(2), BigInt::from(-2), BigInt::from(-3)];
        let x = solve_membership(&b, &v).unwrap();
        assert_eq!(b.left_mul(&x).unwrap(), v);
    }
}
