//! Quotient groups with a fixed enumeration of generators.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{decorated_relations, decoration_tuples, lie_relations, stu2_relations, Family, RelationSet};
use crate::error::{Error, Result};
use crate::exactla::{cokernel, hermite_normal_form, QuotientPresentation, SparseIntMatrix, SparseRow};
use crate::freelie::LeftNormedBasis;
use crate::group::GroupModel;
use crate::sum::FormalSum;
use crate::tree::{enumerate_trees, DecoratedTree, Tree};

use super::generalized_stu2_relations;

/// `Z[generators] / span(relations)` with reduction to coordinates.
///
/// When a preferred basis is installed (the left-normed trees for `Lie(S)`
/// and its decorated versions) coordinates refer to it; otherwise they
/// refer to the basis found by the elimination, torsion coordinates first.
#[derive(Clone, Debug)]
pub struct QuotientContext<K: Ord> {
    labels: Vec<u32>,
    generators: Vec<K>,
    index: HashMap<K, usize>,
    relations: RelationSet<K>,
    matrix: SparseIntMatrix,
    presentation: QuotientPresentation,
    basis: Option<(Vec<K>, Vec<Vec<BigInt>>)>,
}

pub type TreeContext = QuotientContext<Tree>;
pub type DecoratedContext = QuotientContext<DecoratedTree>;

impl<K: Ord + Clone + Hash + fmt::Display> QuotientContext<K> {
    pub fn new(generators: Vec<K>, relations: RelationSet<K>) -> Result<Self> {
        let index: HashMap<K, usize> = generators.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let rows = relations.vectors.iter().map(|v| sparse(&index, v)).collect::<Result<Vec<_>>>()?;
        let matrix = SparseIntMatrix::from_rows(generators.len(), rows)?;
        let presentation = cokernel(&matrix);
        Ok(QuotientContext {
            labels: relations.labels.clone(),
            generators,
            index,
            relations,
            matrix,
            presentation,
            basis: None,
        })
    }

    /// Use `elements` as the coordinate basis. They must form a basis of a
    /// torsion-free quotient.
    pub fn with_basis(mut self, elements: Vec<K>) -> Result<Self> {
        if !self.presentation.is_free() || elements.len() != self.presentation.free_rank {
            return Err(Error::Input("preferred basis does not match the quotient".into()));
        }
        let raw: Vec<Vec<BigInt>> =
            elements.iter().map(|e| self.raw_coordinates(&FormalSum::single(e.clone()))).collect::<Result<_>>()?;
        let b = SparseIntMatrix::from_dense(&raw);
        let (h, u) = hermite_normal_form(&b);
        let k = elements.len();
        let unimodular =
            (0..k).all(|i| (0..k).all(|j| h.get(i, j) == if i == j { BigInt::one() } else { BigInt::zero() }));
        if !unimodular {
            return Err(Error::Input("preferred basis elements do not span the quotient".into()));
        }
        self.basis = Some((elements, u.to_dense()));
        Ok(self)
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn family(&self) -> Family {
        self.relations.family
    }

    pub fn generators(&self) -> &[K] {
        &self.generators
    }

    pub fn relations(&self) -> &RelationSet<K> {
        &self.relations
    }

    pub fn relation_matrix(&self) -> &SparseIntMatrix {
        &self.matrix
    }

    pub fn presentation(&self) -> &QuotientPresentation {
        &self.presentation
    }

    pub fn free_rank(&self) -> usize {
        self.presentation.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.presentation.torsion
    }

    pub fn basis_elements(&self) -> Option<&[K]> {
        self.basis.as_ref().map(|(e, _)| e.as_slice())
    }

    /// The sum as a sparse vector over the generator enumeration.
    pub fn vector(&self, s: &FormalSum<K>) -> Result<SparseRow> {
        sparse(&self.index, s)
    }

    fn raw_coordinates(&self, s: &FormalSum<K>) -> Result<Vec<BigInt>> {
        self.presentation.reduce(&self.vector(s)?)
    }

    pub fn reduce(&self, s: &FormalSum<K>) -> Result<Vec<BigInt>> {
        let raw = self.raw_coordinates(s)?;
        Ok(match &self.basis {
            None => raw,
            Some((_, inv)) => {
                let k = raw.len();
                (0..k).map(|j| (0..k).fold(BigInt::zero(), |acc, i| acc + &raw[i] * &inv[i][j])).collect()
            }
        })
    }

    pub fn equal(&self, a: &FormalSum<K>, b: &FormalSum<K>) -> Result<bool> {
        Ok(self.reduce(&(a - b))?.iter().all(Zero::is_zero))
    }

    /// A sum whose class has the given coordinates.
    pub fn lift(&self, coords: &[BigInt]) -> Result<FormalSum<K>> {
        match &self.basis {
            Some((elements, _)) => {
                if coords.len() != elements.len() {
                    return Err(Error::DimensionMismatch { expected: elements.len(), found: coords.len() });
                }
                Ok(elements.iter().cloned().zip(coords.iter().cloned()).collect())
            }
            None => {
                let v = self.presentation.lift(coords)?;
                Ok(v.into_iter().map(|(j, c)| (self.generators[j].clone(), c)).collect())
            }
        }
    }
}

fn sparse<K: Ord + Clone + Hash + fmt::Display>(index: &HashMap<K, usize>, s: &FormalSum<K>) -> Result<SparseRow> {
    let mut row: SparseRow = s
        .iter()
        .map(|(k, c)| index.get(k).map(|&j| (j, c.clone())).ok_or(Error::ModelMismatch))
        .collect::<Result<_>>()?;
    row.sort_by_key(|(j, _)| *j);
    Ok(row)
}

impl TreeContext {
    /// `Lie(S)` with coordinates in the left-normed basis.
    pub fn lie(labels: &[u32]) -> Result<Self> {
        let relations = lie_relations(labels)?;
        let generators = enumerate_trees(&relations.labels)?;
        let basis = LeftNormedBasis::new(&relations.labels)?.trees();
        QuotientContext::new(generators, relations)?.with_basis(basis)
    }

    /// `A^T_n = Lie(n) / STU²`.
    pub fn jacobi(n: u32) -> Result<Self> {
        Self::jacobi_with(n, stu2_relations(n)?)
    }

    /// `Lie(n)` divided by STU relations between any two legs on the loop of
    /// any one-loop diagram.
    pub fn jacobi_generalized(n: u32) -> Result<Self> {
        Self::jacobi_with(n, generalized_stu2_relations(n)?)
    }

    fn jacobi_with(n: u32, stu: RelationSet<Tree>) -> Result<Self> {
        let labels: Vec<u32> = (1..=n).collect();
        let relations = lie_relations(&labels)?.merged(stu, Family::AsIhxStu2);
        let generators = enumerate_trees(&labels)?;
        QuotientContext::new(generators, relations)
    }
}

impl DecoratedContext {
    /// `Lie_π(S)` with coordinates in the basis of left-normed trees times
    /// decoration tuples, tuple-major.
    pub fn decorated(labels: &[u32], model: &GroupModel, max_word_len: Option<usize>) -> Result<Self> {
        let relations = decorated_relations(labels, model, max_word_len)?;
        let tuples = decoration_tuples(&relations.labels, model, max_word_len)?;
        let trees = enumerate_trees(&relations.labels)?;
        let left_normed = LeftNormedBasis::new(&relations.labels)?.trees();
        let mut generators = Vec::with_capacity(tuples.len() * trees.len());
        let mut basis = Vec::with_capacity(tuples.len() * left_normed.len());
        for d in &tuples {
            for t in &trees {
                generators.push(DecoratedTree::new(t.clone(), d.clone())?);
            }
            for t in &left_normed {
                basis.push(DecoratedTree::new(t.clone(), d.clone())?);
            }
        }
        QuotientContext::new(generators, relations)?.with_basis(basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_sum;

    #[test]
    fn lie_two() {
        let ctx = TreeContext::lie(&[1, 2]).unwrap();
        assert_eq!(ctx.free_rank(), 1);
        assert_eq!(ctx.reduce(&parse_sum("[2,1]").unwrap()).unwrap(), vec![BigInt::from(-1)]);
        assert!(ctx.equal(&parse_sum("[1,2]").unwrap(), &parse_sum("-[2,1]").unwrap()).unwrap());
        assert_eq!(ctx.reduce(&parse_sum("[1,3]").unwrap()), Err(Error::ModelMismatch));
    }

    #[test]
    fn small_ranks() {
        for (n, rank) in [(1, 1), (2, 1), (3, 2), (4, 6)] {
            let labels: Vec<u32> = (1..=n).collect();
            let ctx = TreeContext::lie(&labels).unwrap();
            assert_eq!((ctx.free_rank(), ctx.torsion().len()), (rank, 0));
        }
        let ctx = DecoratedContext::decorated(&[1, 2], &GroupModel::cyclic(2).unwrap(), None).unwrap();
        assert_eq!(ctx.free_rank(), 4);
    }
}
