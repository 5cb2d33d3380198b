//! Cokernel presentations of sparse relation matrices.
//!
//! The elimination runs in three stages. Rows `±x_i ± x_j` are absorbed by a
//! signed union-find, identifying columns up to sign. The remaining rows are
//! brought into reduced echelon form using only pivots of absolute value 1,
//! which keeps every entry integral without any gcd steps. Rows without a
//! unit entry are deferred, and whatever survives at the end is handed to a
//! dense Smith normal form over the columns that never became pivots.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{axpy, lookup, SparseIntMatrix, SparseRow};
use super::smith::{dense_smith, DenseSmith};
use crate::error::{Error, Result};

/// Shape of `Z^cols / rowspace(M)` together with the data needed to map
/// vectors into it.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    ambient: usize,
    unit_factors: usize,
    class: Vec<(usize, bool)>,
    pivots: HashMap<usize, SparseRow>,
    quotient_cols: Vec<usize>,
    quotient_index: HashMap<usize, usize>,
    smith: Option<DenseSmith>,
}

struct SignedUnionFind {
    parent: Vec<usize>,
    // sign of x_i relative to x_parent; true = negative
    flip: Vec<bool>,
}

impl SignedUnionFind {
    fn new(n: usize) -> Self {
        SignedUnionFind { parent: (0..n).collect(), flip: vec![false; n] }
    }

    fn find(&mut self, i: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = i;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // compress from the top so each node's flip becomes relative to root
        for &node in path.iter().rev() {
            let p = self.parent[node];
            if p != root {
                self.flip[node] ^= self.flip[p];
            }
            self.parent[node] = root;
        }
        (root, self.flip[i] && i != root)
    }

    /// Impose `a*x_i + b*x_j = 0` for units `a, b`. Returns the root of the
    /// class when the relation forces `2*x = 0` on it.
    fn relate(&mut self, i: usize, a_neg: bool, j: usize, b_neg: bool) -> Option<usize> {
        let (ri, si) = self.find(i);
        let (rj, sj) = self.find(j);
        // a*si*x_ri + b*sj*x_rj = 0
        let ci = a_neg ^ si;
        let cj = b_neg ^ sj;
        if ri != rj {
            // x_ri = -(cj/ci) x_rj
            self.parent[ri] = rj;
            self.flip[ri] = !(ci ^ cj);
            None
        } else if ci == cj {
            // 2 x_r = 0
            Some(ri)
        } else {
            None
        }
    }
}

struct Rref {
    pivots: HashMap<usize, SparseRow>,
    col_rows: HashMap<usize, HashSet<usize>>,
}

impl Rref {
    fn reduce(&self, row: &[(usize, BigInt)]) -> SparseRow {
        reduce_with(&self.pivots, row)
    }

    /// Insert a row already reduced against all pivots. Returns false when
    /// it has no unit entry.
    fn try_insert(&mut self, row: SparseRow) -> bool {
        let Some(k) = row.iter().position(|(_, v)| v.abs().is_one()) else { return false };
        let p = row[k].0;
        let flip = row[k].1.is_negative();
        let tail: SparseRow =
            row.into_iter().filter(|(c, _)| *c != p).map(|(c, v)| (c, if flip { -v } else { v })).collect();
        if let Some(users) = self.col_rows.remove(&p) {
            for q in users {
                let old = self.pivots.remove(&q).expect("indexed pivot");
                let Some(e) = lookup(&old, p).cloned() else {
                    self.pivots.insert(q, old);
                    continue;
                };
                let without: SparseRow = old.iter().filter(|(c, _)| *c != p).cloned().collect();
                let new = axpy(&without, &-e, &tail);
                for (c, _) in &old {
                    if *c != p && lookup(&new, *c).is_none() {
                        if let Some(set) = self.col_rows.get_mut(c) {
                            set.remove(&q);
                        }
                    }
                }
                for (c, _) in &new {
                    self.col_rows.entry(*c).or_default().insert(q);
                }
                self.pivots.insert(q, new);
            }
        }
        for (c, _) in &tail {
            self.col_rows.entry(*c).or_default().insert(p);
        }
        self.pivots.insert(p, tail);
        true
    }
}

impl QuotientPresentation {
    pub fn new(m: &SparseIntMatrix) -> Self {
        let n = m.ncols();
        let mut uf = SignedUnionFind::new(n);
        let mut unions = 0;
        let mut rest: Vec<&SparseRow> = Vec::new();
        let mut hard: Vec<SparseRow> = Vec::new();
        for row in m.rows() {
            let doubleton = row.len() == 2 && row.iter().all(|(_, v)| v.abs().is_one());
            if !doubleton {
                rest.push(row);
                continue;
            }
            let (i, a) = (&row[0].0, row[0].1.is_negative());
            let (j, b) = (&row[1].0, row[1].1.is_negative());
            let before = uf.find(*i).0 != uf.find(*j).0;
            if uf.relate(*i, a, *j, b).is_some() {
                hard.push(vec![(*i, BigInt::from(2))]);
            }
            if before {
                unions += 1;
            }
        }
        let class: Vec<(usize, bool)> = (0..n).map(|j| uf.find(j)).collect();

        let mut rref = Rref { pivots: HashMap::new(), col_rows: HashMap::new() };
        let mut deferred: Vec<SparseRow> = Vec::new();
        for row in hard.iter().chain(rest).map(|r| map_to_classes(&class, r)) {
            let reduced = rref.reduce(&row);
            if !reduced.is_empty() && !rref.try_insert(reduced.clone()) {
                deferred.push(reduced);
            }
        }
        loop {
            let before = rref.pivots.len();
            let mut next = Vec::new();
            for row in deferred {
                let reduced = rref.reduce(&row);
                if !reduced.is_empty() && !rref.try_insert(reduced.clone()) {
                    next.push(reduced);
                }
            }
            deferred = next;
            if rref.pivots.len() == before {
                break;
            }
        }
        let deferred: Vec<SparseRow> = deferred.iter().map(|r| rref.reduce(r)).filter(|r| !r.is_empty()).collect();

        let mut quotient_cols: Vec<usize> =
            (0..n).filter(|&j| class[j].0 == j && !rref.pivots.contains_key(&j)).collect();
        quotient_cols.sort_unstable();
        let quotient_index: HashMap<usize, usize> = quotient_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();

        let smith = if deferred.is_empty() {
            None
        } else {
            let q = quotient_cols.len();
            let dense: Vec<Vec<BigInt>> = deferred
                .iter()
                .map(|r| {
                    let mut d = vec![BigInt::zero(); q];
                    for (c, v) in r {
                        d[quotient_index[c]] = v.clone();
                    }
                    d
                })
                .collect();
            Some(dense_smith(&dense, q))
        };
        let diag: &[BigInt] = smith.as_ref().map_or(&[], |s| &s.diag);
        let torsion: Vec<BigInt> = diag.iter().filter(|d| !d.is_one()).cloned().collect();
        let unit_factors = unions + rref.pivots.len();
        let free_rank = quotient_cols.len() - diag.len();
        QuotientPresentation {
            free_rank,
            torsion,
            ambient: n,
            unit_factors,
            class,
            pivots: rref.pivots,
            quotient_cols,
            quotient_index,
            smith,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Rank of the relation lattice.
    pub fn relation_rank(&self) -> usize {
        self.ambient - self.free_rank
    }

    /// Nonzero invariant factors of the relation matrix, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::one(); self.unit_factors];
        if let Some(s) = &self.smith {
            out.extend(s.diag.iter().cloned());
        }
        out
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Number of coordinates returned by [`reduce`](Self::reduce): one per
    /// torsion summand followed by one per free summand.
    pub fn coordinate_count(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    fn diag(&self) -> &[BigInt] {
        self.smith.as_ref().map_or(&[], |s| &s.diag)
    }

    /// Coordinates of the class of an ambient vector. Torsion coordinates are
    /// reduced into `[0, d)`.
    pub fn reduce(&self, v: &[(usize, BigInt)]) -> Result<Vec<BigInt>> {
        if let Some((c, _)) = v.iter().find(|(c, _)| *c >= self.ambient) {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: c + 1 });
        }
        let mut sorted = v.to_vec();
        sorted.sort_by_key(|(c, _)| *c);
        let mapped = map_to_classes(&self.class, &sorted);
        let reduced = reduce_with(&self.pivots, &mapped);
        let q = self.quotient_cols.len();
        let mut w = vec![BigInt::zero(); q];
        for (c, x) in reduced {
            w[self.quotient_index[&c]] = x;
        }
        let y = match &self.smith {
            None => w,
            Some(s) => (0..q).map(|j| (0..q).fold(BigInt::zero(), |acc, i| acc + &w[i] * &s.v[i][j])).collect(),
        };
        let diag = self.diag();
        let mut out = Vec::with_capacity(self.coordinate_count());
        for (i, d) in diag.iter().enumerate() {
            if !d.is_one() {
                out.push(y[i].mod_floor(d));
            }
        }
        out.extend(y[diag.len()..].iter().cloned());
        Ok(out)
    }

    /// A sparse ambient vector whose class has the given coordinates.
    pub fn lift(&self, coords: &[BigInt]) -> Result<SparseRow> {
        if coords.len() != self.coordinate_count() {
            return Err(Error::DimensionMismatch { expected: self.coordinate_count(), found: coords.len() });
        }
        let q = self.quotient_cols.len();
        let diag = self.diag();
        let mut y = vec![BigInt::zero(); q];
        let mut k = 0;
        for (i, d) in diag.iter().enumerate() {
            if !d.is_one() {
                y[i] = coords[k].clone();
                k += 1;
            }
        }
        for (i, c) in coords[k..].iter().enumerate() {
            y[diag.len() + i] = c.clone();
        }
        let w = match &self.smith {
            None => y,
            Some(s) => (0..q).map(|j| (0..q).fold(BigInt::zero(), |acc, i| acc + &y[i] * &s.v_inv[i][j])).collect(),
        };
        Ok(w.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (self.quotient_cols[k], x)).collect())
    }
}

fn reduce_with(pivots: &HashMap<usize, SparseRow>, row: &[(usize, BigInt)]) -> SparseRow {
    let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (c, a) in row {
        match pivots.get(c) {
            None => *acc.entry(*c).or_default() += a,
            Some(tail) => {
                for (j, b) in tail {
                    *acc.entry(*j).or_default() -= a * b;
                }
            }
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn map_to_classes(class: &[(usize, bool)], row: &[(usize, BigInt)]) -> SparseRow {
    let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (c, v) in row {
        let (r, neg) = class[*c];
        let e = acc.entry(r).or_default();
        if neg {
            *e -= v;
        } else {
            *e += v;
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Free rank and torsion of `Z^cols / rowspace(M)`.
pub fn cokernel(m: &SparseIntMatrix) -> QuotientPresentation {
    QuotientPresentation::new(m)
}

/// Nonzero invariant factors `d1 | d2 | ...` of `M`.
pub fn smith_normal_form(m: &SparseIntMatrix) -> Vec<BigInt> {
    QuotientPresentation::new(m).invariant_factors()
}

pub fn rank(m: &SparseIntMatrix) -> usize {
    QuotientPresentation::new(m).relation_rank()
}
