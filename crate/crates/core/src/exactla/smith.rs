//! Dense Smith normal form with column-transform tracking.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Result of [`dense_smith`]: `diag` holds the nonzero invariant factors in
/// divisibility order, and `v`, `v_inv` are the accumulated column
/// transform and its inverse, so that `U * A * v = diag(...)` for some
/// unimodular `U`.
#[derive(Clone, Debug)]
pub struct DenseSmith {
    pub diag: Vec<BigInt>,
    pub v: Vec<Vec<BigInt>>,
    pub v_inv: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

struct Work {
    a: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

impl Work {
    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// column j += q * column i
    fn add_col(&mut self, j: usize, i: usize, q: &BigInt) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            let t = &row[i] * q;
            row[j] += t;
        }
        // inverse: row i -= q * row j
        let rj = self.v_inv[j].clone();
        for (x, y) in self.v_inv[i].iter_mut().zip(rj) {
            *x -= q * y;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row[j] = -&row[j];
        }
        for x in self.v_inv[j].iter_mut() {
            *x = -&*x;
        }
    }

    fn add_row(&mut self, j: usize, i: usize, q: &BigInt) {
        let ri = self.a[i].clone();
        for (x, y) in self.a[j].iter_mut().zip(ri) {
            *x += q * y;
        }
    }
}

/// Smith normal form of a dense matrix. Pivots are chosen by minimal
/// absolute value, ties broken by lowest row and then lowest column.
pub fn dense_smith(a: &[Vec<BigInt>], cols: usize) -> DenseSmith {
    let rows = a.len();
    let mut w = Work { a: a.to_vec(), v: identity(cols), v_inv: identity(cols) };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &w.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.a.swap(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = -w.a[i][t].div_floor(&p);
                w.add_row(i, t, &q);
                if !w.a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = -w.a[t][j].div_floor(&p);
                w.add_col(j, t, &q);
                if !w.a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                move_min_to_pivot(&mut w, t, rows, cols);
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    w.add_row(t, i, &BigInt::one());
                    move_min_to_pivot(&mut w, t, rows, cols);
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_col(t);
        }
        diag.push(w.a[t][t].clone());
        t += 1;
    }
    DenseSmith { diag, v: w.v, v_inv: w.v_inv }
}

/// Bring the smallest nonzero entry of row `t` and column `t` to `(t, t)`.
fn move_min_to_pivot(w: &mut Work, t: usize, rows: usize, cols: usize) {
    let mut best = (t, t);
    let mut best_abs: Option<BigInt> = None;
    for i in t..rows {
        let x = &w.a[i][t];
        if !x.is_zero() && best_abs.as_ref().is_none_or(|b| &x.abs() < b) {
            best = (i, t);
            best_abs = Some(x.abs());
        }
    }
    for j in t..cols {
        let x = &w.a[t][j];
        if !x.is_zero() && best_abs.as_ref().is_none_or(|b| &x.abs() < b) {
            best = (t, j);
            best_abs = Some(x.abs());
        }
    }
    w.a.swap(t, best.0);
    w.swap_cols(t, best.1);
}
