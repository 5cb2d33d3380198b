use jacobi_trees::exactla::{
    cokernel, determinant, hermite_form, hermite_normal_form, rank, smith_normal_form, solve_membership,
    SparseIntMatrix,
};
use jacobi_trees::relations::lie_relations;
use jacobi_trees::tree::enumerate_trees;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, spread: i64) -> Vec<Vec<i64>> {
    (0..rows).map(|_| (0..cols).map(|_| rng.random_range(-spread..=spread)).collect()).collect()
}

// Leibniz expansion, independent of the library's elimination
fn leibniz(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * leibniz(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..1u32 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// gcd of all k x k minors
fn minor_gcd(m: &[Vec<BigInt>], k: usize) -> BigInt {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    let mut g = BigInt::zero();
    for rows in subsets(r, k) {
        for cols in subsets(c, k) {
            let sub: Vec<Vec<BigInt>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect();
            g = g.gcd(&leibniz(&sub));
        }
    }
    g
}

#[test]
fn invariant_factors_match_minor_gcds() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..150 {
        let (r, c) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let a = random_matrix(&mut rng, r, c, 4);
        let m = SparseIntMatrix::from_i64(&a);
        let factors = smith_normal_form(&m);
        for w in factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        let dense = m.to_dense();
        let mut product = BigInt::one();
        for k in 1..=r.min(c) {
            let g = minor_gcd(&dense, k);
            if k <= factors.len() {
                product *= &factors[k - 1];
                assert_eq!(product, g, "{a:?}");
            } else {
                assert!(g.is_zero());
            }
        }
    }
}

#[test]
fn smith_is_permutation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..60 {
        let a = random_matrix(&mut rng, 5, 6, 3);
        let m = SparseIntMatrix::from_i64(&a);
        let mut rows: Vec<usize> = (0..5).collect();
        let mut cols: Vec<usize> = (0..6).collect();
        rows.shuffle(&mut rng);
        cols.shuffle(&mut rng);
        let p = m.permute_rows(&rows).permute_cols(&cols);
        assert_eq!(smith_normal_form(&m), smith_normal_form(&p));
    }
}

#[test]
fn hermite_transform_is_unimodular() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..80 {
        let (r, c) = (rng.random_range(1..=5), rng.random_range(1..=5));
        let a = random_matrix(&mut rng, r, c, 5);
        let m = SparseIntMatrix::from_i64(&a);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(u.mul(&m).unwrap(), h);
        assert_eq!(leibniz(&u.to_dense()).abs(), BigInt::one());
        assert_eq!(hermite_normal_form(&h).0, h, "idempotence");
        assert_eq!(hermite_form(&m).nrows(), rank(&m));
    }
}

#[test]
fn hermite_preserves_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..40 {
        let a = random_matrix(&mut rng, 5, 5, 6);
        let m = SparseIntMatrix::from_i64(&a);
        let dense = m.to_dense();
        let det = leibniz(&dense);
        assert_eq!(determinant(&dense), det);
        let (h, _) = hermite_normal_form(&m);
        let hd = h.to_dense();
        let diag: BigInt = (0..5).map(|i| hd[i][i].clone()).product();
        assert_eq!(diag, det.abs());
    }
}

#[test]
fn membership_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..60 {
        let a = random_matrix(&mut rng, 4, 5, 4);
        let m = SparseIntMatrix::from_i64(&a);
        let x: Vec<BigInt> = (0..4).map(|_| BigInt::from(rng.random_range(-3..=3))).collect();
        let v = m.left_mul(&x).unwrap();
        let y = solve_membership(&m, &v).unwrap();
        assert_eq!(m.left_mul(&y).unwrap(), v);
        let c = cokernel(&m);
        let coords =
            c.reduce(&v.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect::<Vec<_>>()).unwrap();
        assert!(coords.iter().all(Zero::is_zero));
    }
}

#[test]
fn cokernel_reduce_lift_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..60 {
        let a = random_matrix(&mut rng, 3, 5, 4);
        let c = cokernel(&SparseIntMatrix::from_i64(&a));
        for j in 0..5 {
            let coords = c.reduce(&[(j, BigInt::one())]).unwrap();
            let back = c.reduce(&c.lift(&coords).unwrap()).unwrap();
            assert_eq!(back, coords);
        }
        assert_eq!(c.free_rank + c.relation_rank(), 5);
    }
}

#[test]
fn lie_three_relation_matrix() {
    let labels = [1, 2, 3];
    let trees = enumerate_trees(&labels).unwrap();
    let rows = lie_relations(&labels)
        .unwrap()
        .vectors
        .iter()
        .map(|v| v.iter().map(|(t, c)| (trees.iter().position(|x| x == t).unwrap(), c.clone())).collect())
        .collect();
    let m = SparseIntMatrix::from_rows(trees.len(), rows).unwrap();
    assert_eq!(smith_normal_form(&m), vec![BigInt::one(); 10]);
    let c = cokernel(&m);
    assert_eq!((c.free_rank, c.torsion.len()), (2, 0));
    let text = m.to_matrix_market();
    assert_eq!(SparseIntMatrix::from_matrix_market(&text).unwrap(), m);
}
