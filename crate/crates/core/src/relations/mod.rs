//! Relation families and the quotient groups they define.
//!
//! `Lie(S)` is the free abelian group on `Tree(S)` modulo AS and IHX, its
//! decorated version uses the same relations on every decoration tuple, and
//! the Jacobi-tree group `A^T_n` further divides `Lie(n)` by the STU²
//! relations coming from one-loop diagrams.

mod context;
mod diagram;

pub use context::{DecoratedContext, QuotientContext, TreeContext};
pub use diagram::{
    generalized_stu2_relations, one_loop_diagrams, planar_branches, stu2_diagrams, stu2_relations, stu_resolve, Branch,
    OneLoopDiagram,
};

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupModel};
use crate::sum::{FormalSum, TreeSum};
use crate::tree::{enumerate_trees, DecoratedTree, LeafLabel, Tree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    As,
    Ihx,
    Stu2,
    AsIhx,
    AsIhxStu2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::As => "AS",
            Family::Ihx => "IHX",
            Family::Stu2 => "STU2",
            Family::AsIhx => "AS+IHX",
            Family::AsIhxStu2 => "AS+IHX+STU2",
        })
    }
}

/// Relation vectors over a label set, deduplicated up to sign.
#[derive(Clone, Debug)]
pub struct RelationSet<K: Ord> {
    pub labels: Vec<u32>,
    pub family: Family,
    pub vectors: Vec<FormalSum<K>>,
}

impl<K: Ord + Clone + Hash> RelationSet<K> {
    pub fn new(labels: &[u32], family: Family) -> Self {
        RelationSet { labels: labels.to_vec(), family, vectors: Vec::new() }
    }

    fn from_vectors(labels: &[u32], family: Family, vectors: impl IntoIterator<Item = FormalSum<K>>) -> Self {
        let mut out = Self::new(labels, family);
        let mut seen = HashSet::new();
        for v in vectors {
            if v.is_zero() {
                continue;
            }
            if seen.insert(v.sign_normalized()) {
                out.vectors.push(v);
            }
        }
        out
    }

    /// Union of two families over the same labels.
    pub fn merged(self, other: RelationSet<K>, family: Family) -> Self {
        let labels = self.labels.clone();
        Self::from_vectors(&labels, family, self.vectors.into_iter().chain(other.vectors))
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

impl<K: Ord + Clone + fmt::Display> RelationSet<K> {
    /// One relation per line after a comment line naming the family.
    pub fn export(&self) -> String {
        let labels: Vec<String> = self.labels.iter().map(u32::to_string).collect();
        let mut out = format!("# {} labels={{{}}} count={}\n", self.family, labels.join(","), self.vectors.len());
        for v in &self.vectors {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }
}

fn sorted_labels(labels: &[u32]) -> Result<Vec<u32>> {
    let mut v = labels.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.is_empty() {
        return Err(Error::EmptyLabelSet);
    }
    if v[0] == 0 {
        return Err(Error::ZeroLabel);
    }
    Ok(v)
}

/// The AS vectors `T + T'` where `T'` swaps the children at one node of `T`.
pub fn as_vectors(t: &Tree) -> Vec<TreeSum> {
    t.internal_paths()
        .into_iter()
        .map(|p| {
            let swapped = t.swap_at(&p).expect("path addresses a node");
            &TreeSum::single(t.clone()) + &TreeSum::single(swapped)
        })
        .collect()
}

/// The IHX vectors `[a,[b,c]] - [[a,b],c] + [b,[c,a]]`, one for every node
/// of `t` of the form `[a,[b,c]]`, with the rest of `t` unchanged.
pub fn ihx_vectors(t: &Tree) -> Vec<TreeSum> {
    let mut out = Vec::new();
    for p in t.internal_paths() {
        let Some(Tree::Graft(a, bc)) = t.subtree(&p) else { continue };
        let Tree::Graft(b, c) = &**bc else { continue };
        let (a, b, c) = ((**a).clone(), (**b).clone(), (**c).clone());
        let g = Tree::graft_unchecked;
        let i = t.replace_at(&p, g(a.clone(), g(b.clone(), c.clone())));
        let h = t.replace_at(&p, g(g(a.clone(), b.clone()), c.clone()));
        let x = t.replace_at(&p, g(b, g(c, a)));
        let mut v = TreeSum::single(i);
        v.add_term(h, BigInt::from(-1));
        v.add_term(x, BigInt::from(1));
        out.push(v);
    }
    out
}

pub fn as_relations(labels: &[u32]) -> Result<RelationSet<Tree>> {
    let labels = sorted_labels(labels)?;
    let trees = enumerate_trees(&labels)?;
    Ok(RelationSet::from_vectors(&labels, Family::As, trees.iter().flat_map(as_vectors)))
}

pub fn ihx_relations(labels: &[u32]) -> Result<RelationSet<Tree>> {
    let labels = sorted_labels(labels)?;
    let trees = enumerate_trees(&labels)?;
    Ok(RelationSet::from_vectors(&labels, Family::Ihx, trees.iter().flat_map(ihx_vectors)))
}

pub fn lie_relations(labels: &[u32]) -> Result<RelationSet<Tree>> {
    let labels = sorted_labels(labels)?;
    let trees = enumerate_trees(&labels)?;
    let vectors = trees.iter().flat_map(|t| as_vectors(t).into_iter().chain(ihx_vectors(t)));
    Ok(RelationSet::from_vectors(&labels, Family::AsIhx, vectors))
}

/// Every decoration of `labels` by elements of `model`, in lexicographic
/// order of the element tuples.
pub fn decoration_tuples(
    labels: &[u32],
    model: &GroupModel,
    max_word_len: Option<usize>,
) -> Result<Vec<BTreeMap<LeafLabel, GroupElement>>> {
    let labels = sorted_labels(labels)?;
    let elements = model.elements(max_word_len)?;
    let mut out = vec![BTreeMap::new()];
    for &l in &labels {
        let label = LeafLabel::new(l)?;
        let mut next = Vec::with_capacity(out.len() * elements.len());
        for partial in &out {
            for g in &elements {
                let mut d: BTreeMap<LeafLabel, GroupElement> = partial.clone();
                d.insert(label, g.clone());
                next.push(d);
            }
        }
        out = next;
    }
    Ok(out)
}

/// AS and IHX over every decoration tuple: the relations act on the tree and
/// leave each leaf's group element in place.
pub fn decorated_relations(
    labels: &[u32],
    model: &GroupModel,
    max_word_len: Option<usize>,
) -> Result<RelationSet<DecoratedTree>> {
    let labels = sorted_labels(labels)?;
    let tuples = decoration_tuples(&labels, model, max_word_len)?;
    let base = lie_relations(&labels)?;
    let mut vectors = Vec::with_capacity(base.len() * tuples.len());
    for d in &tuples {
        for v in &base.vectors {
            vectors
                .push(v.map_keys(|t| DecoratedTree::new(t.clone(), d.clone()).expect("decoration covers the leaves")));
        }
    }
    Ok(RelationSet::from_vectors(&labels, Family::AsIhx, vectors))
}
