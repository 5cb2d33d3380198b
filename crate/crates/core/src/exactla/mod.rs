//! Exact integer linear algebra over arbitrary precision integers.
//!
//! Relation matrices are stored by rows; a matrix presents the quotient of
//! `Z^cols` by its row lattice.

mod hermite;
mod market;
mod matrix;
mod presentation;
mod smith;

pub use hermite::{hermite_form, hermite_normal_form, solve_membership};
pub use matrix::{SparseIntMatrix, SparseRow};
pub use presentation::{cokernel, rank, smith_normal_form, QuotientPresentation};
pub use smith::dense_smith;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Extended gcd with a nonnegative gcd: returns `(g, x, y)` with `a*x + b*y = g`.
pub(crate) fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Determinant of a small dense matrix by fraction-free elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
