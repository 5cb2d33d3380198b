//! Rooted, vertex-oriented uni-trivalent trees with labelled leaves.
//!
//! A [`Tree`] is stored as a binary bracketing. The two children of a
//! [`Tree::Graft`] node are kept in planar order: reading counterclockwise
//! around the trivalent vertex starting from the edge towards the root, the
//! first child comes first. Swapping the children gives a different value;
//! the antisymmetry relation between the two lives in [`crate::relations`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::GroupElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeafLabel(u32);

impl LeafLabel {
    pub fn new(value: u32) -> Result<Self> {
        if value == 0 {
            Err(Error::ZeroLabel)
        } else {
            Ok(LeafLabel(value))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for LeafLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Unchecked bracketing as produced by a parser, before label validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawTree {
    Leaf(u32),
    Graft(Box<RawTree>, Box<RawTree>),
}

/// Which child of a graft node a path step descends into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    First,
    Second,
}

/// Ordering is structural (leaves before grafts, then first child, then
/// second child). For labels below 10 this is the lexicographic order of the
/// bracket strings printed by `Display`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf(LeafLabel),
    Graft(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn leaf(label: u32) -> Result<Tree> {
        Ok(Tree::Leaf(LeafLabel::new(label)?))
    }

    /// Glue the roots of `first` and `second` and sprout a new root.
    pub fn graft(first: Tree, second: Tree) -> Result<Tree> {
        let left: BTreeSet<u32> = first.leaves().into_iter().collect();
        if let Some(clash) = second.leaves().into_iter().find(|l| left.contains(l)) {
            return Err(Error::LabelClash(clash));
        }
        Ok(Tree::Graft(Box::new(first), Box::new(second)))
    }

    /// Graft without checking label disjointness. Callers guarantee it.
    pub(crate) fn graft_unchecked(first: Tree, second: Tree) -> Tree {
        Tree::Graft(Box::new(first), Box::new(second))
    }

    /// Leaf labels in planar (left-to-right) order.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            Tree::Leaf(l) => out.push(l.get()),
            Tree::Graft(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn label_set(&self) -> BTreeSet<u32> {
        self.leaves().into_iter().collect()
    }

    pub fn degree(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Graft(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn internal_nodes(&self) -> usize {
        self.degree() - 1
    }

    pub fn min_label(&self) -> u32 {
        match self {
            Tree::Leaf(l) => l.get(),
            Tree::Graft(a, b) => a.min_label().min(b.min_label()),
        }
    }

    /// Paths to every internal node, in pre-order.
    pub fn internal_paths(&self) -> Vec<Vec<Side>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.walk_internal(&mut path, &mut out);
        out
    }

    fn walk_internal(&self, path: &mut Vec<Side>, out: &mut Vec<Vec<Side>>) {
        if let Tree::Graft(a, b) = self {
            out.push(path.clone());
            path.push(Side::First);
            a.walk_internal(path, out);
            path.pop();
            path.push(Side::Second);
            b.walk_internal(path, out);
            path.pop();
        }
    }

    pub fn subtree(&self, path: &[Side]) -> Option<&Tree> {
        match path.split_first() {
            None => Some(self),
            Some((side, rest)) => match self {
                Tree::Leaf(_) => None,
                Tree::Graft(a, b) => match side {
                    Side::First => a.subtree(rest),
                    Side::Second => b.subtree(rest),
                },
            },
        }
    }

    /// Copy of `self` with the subtree at `path` replaced by `new`.
    ///
    /// Panics if `path` does not address a node.
    pub fn replace_at(&self, path: &[Side], new: Tree) -> Tree {
        match path.split_first() {
            None => new,
            Some((side, rest)) => match self {
                Tree::Leaf(_) => panic!("path runs past a leaf"),
                Tree::Graft(a, b) => match side {
                    Side::First => Tree::graft_unchecked(a.replace_at(rest, new), (**b).clone()),
                    Side::Second => Tree::graft_unchecked((**a).clone(), b.replace_at(rest, new)),
                },
            },
        }
    }

    /// Swap the two children of the node at `path`.
    pub fn swap_at(&self, path: &[Side]) -> Option<Tree> {
        match self.subtree(path)? {
            Tree::Leaf(_) => None,
            Tree::Graft(a, b) => Some(self.replace_at(path, Tree::graft_unchecked((**b).clone(), (**a).clone()))),
        }
    }

    /// Apply a label map to every leaf.
    pub fn relabel(&self, map: &impl Fn(u32) -> u32) -> Result<Tree> {
        match self {
            Tree::Leaf(l) => Tree::leaf(map(l.get())),
            Tree::Graft(a, b) => Ok(Tree::graft_unchecked(a.relabel(map)?, b.relabel(map)?)),
        }
    }

    /// The left-normed tree `[s1,[s2,[...[s_{k-1}, s_k]...]]]` on the given
    /// label sequence.
    pub fn left_normed(labels: &[u32]) -> Result<Tree> {
        let (last, init) = labels.split_last().ok_or(Error::EmptyLabelSet)?;
        let mut t = Tree::leaf(*last)?;
        for &l in init.iter().rev() {
            t = Tree::graft(Tree::leaf(l)?, t)?;
        }
        Ok(t)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(l) => write!(f, "{l}"),
            Tree::Graft(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// Validate a raw bracketing and return its stored form.
///
/// Canonicalisation never reorders children: planar order is data.
pub fn canonicalize_tree(raw: &RawTree) -> Result<Tree> {
    fn build(raw: &RawTree, seen: &mut BTreeSet<u32>) -> Result<Tree> {
        match raw {
            RawTree::Leaf(v) => {
                let label = LeafLabel::new(*v)?;
                if !seen.insert(*v) {
                    return Err(Error::DuplicateLeaf(*v));
                }
                Ok(Tree::Leaf(label))
            }
            RawTree::Graft(a, b) => Ok(Tree::graft_unchecked(build(a, seen)?, build(b, seen)?)),
        }
    }
    build(raw, &mut BTreeSet::new())
}

/// Every tree over the label set `labels`, each exactly once, sorted.
///
/// There are `n! * Catalan(n-1)` of them for `n = |labels|`.
pub fn enumerate_trees(labels: &[u32]) -> Result<Vec<Tree>> {
    let set: BTreeSet<u32> = labels.iter().copied().collect();
    if set.is_empty() {
        return Err(Error::EmptyLabelSet);
    }
    if labels.contains(&0) {
        return Err(Error::ZeroLabel);
    }
    if set.len() != labels.len() {
        let mut seen = BTreeSet::new();
        let dup = labels.iter().find(|l| !seen.insert(**l)).copied().unwrap_or_default();
        return Err(Error::DuplicateLeaf(dup));
    }
    let sorted: Vec<u32> = set.into_iter().collect();
    let full = (1u64 << sorted.len()) - 1;
    let mut memo: HashMap<u64, Vec<Tree>> = HashMap::new();
    let mut out = trees_on_mask(full, &sorted, &mut memo);
    out.sort();
    Ok(out)
}

fn trees_on_mask(mask: u64, labels: &[u32], memo: &mut HashMap<u64, Vec<Tree>>) -> Vec<Tree> {
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let result = if mask.count_ones() == 1 {
        let i = mask.trailing_zeros() as usize;
        vec![Tree::Leaf(LeafLabel(labels[i]))]
    } else {
        let mut out = Vec::new();
        // all nonempty proper submasks
        let mut sub = (mask - 1) & mask;
        while sub != 0 {
            let rest = mask & !sub;
            let firsts = trees_on_mask(sub, labels, memo);
            let seconds = trees_on_mask(rest, labels, memo);
            for a in &firsts {
                for b in &seconds {
                    out.push(Tree::graft_unchecked(a.clone(), b.clone()));
                }
            }
            sub = (sub - 1) & mask;
        }
        out
    };
    memo.insert(mask, result.clone());
    result
}

/// A tree whose leaf edges carry group elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedTree {
    tree: Tree,
    decoration: BTreeMap<LeafLabel, GroupElement>,
}

impl DecoratedTree {
    /// The decoration must be defined on exactly the leaves of `tree`.
    pub fn new(tree: Tree, decoration: BTreeMap<LeafLabel, GroupElement>) -> Result<Self> {
        let leaves = tree.label_set();
        let keys: BTreeSet<u32> = decoration.keys().map(|l| l.get()).collect();
        if leaves != keys {
            return Err(Error::Input(format!("decoration covers labels {keys:?} but the tree has leaves {leaves:?}")));
        }
        Ok(DecoratedTree { tree, decoration })
    }

    /// Decorate every leaf with `identity`.
    pub fn constant(tree: Tree, element: GroupElement) -> Self {
        let decoration = tree.leaves().into_iter().map(|l| (LeafLabel(l), element.clone())).collect();
        DecoratedTree { tree, decoration }
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn decoration(&self) -> &BTreeMap<LeafLabel, GroupElement> {
        &self.decoration
    }

    pub fn element(&self, label: u32) -> Option<&GroupElement> {
        LeafLabel::new(label).ok().and_then(|l| self.decoration.get(&l))
    }

    /// Same decoration, different underlying tree on the same leaves.
    pub fn with_tree(&self, tree: Tree) -> Result<Self> {
        DecoratedTree::new(tree, self.decoration.clone())
    }
}

impl fmt::Display for DecoratedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &Tree, dec: &BTreeMap<LeafLabel, GroupElement>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                Tree::Leaf(l) => match dec.get(l) {
                    Some(g) if !g.is_identity() => write!(f, "{l}{{{g}}}"),
                    _ => write!(f, "{l}"),
                },
                Tree::Graft(a, b) => {
                    write!(f, "[")?;
                    go(a, dec, f)?;
                    write!(f, ",")?;
                    go(b, dec, f)?;
                    write!(f, "]")
                }
            }
        }
        go(&self.tree, &self.decoration, f)
    }
}

/// A decorated tree with an overall sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedDecoratedTree {
    pub sign: Sign,
    pub tree: DecoratedTree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(exponent: u64) -> Sign {
        if exponent.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn from_int(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}
