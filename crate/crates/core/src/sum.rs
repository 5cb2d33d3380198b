//! Finite integer linear combinations with canonical storage.

use std::collections::btree_map::{self, BTreeMap};
use std::collections::BTreeSet;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::tree::{DecoratedTree, Tree};

/// A linear combination of keys with nonzero integer coefficients.
///
/// Keys are kept sorted and zero coefficients are never stored, so two sums
/// are equal exactly when they have the same term map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalSum<K: Ord> {
    terms: BTreeMap<K, BigInt>,
}

pub type TreeSum = FormalSum<Tree>;
pub type DecoratedTreeSum = FormalSum<DecoratedTree>;

impl<K: Ord> Default for FormalSum<K> {
    fn default() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> FormalSum<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(key: K) -> Self {
        Self::term(key, BigInt::one())
    }

    pub fn term(key: K, coeff: BigInt) -> Self {
        let mut s = Self::zero();
        s.add_term(key, coeff);
        s
    }

    pub fn add_term(&mut self, key: K, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &K) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigInt)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        FormalSum { terms: self.terms.iter().map(|(t, c)| (t.clone(), c * k)).collect() }
    }

    pub fn map_keys<L: Ord + Clone>(&self, f: impl Fn(&K) -> L) -> FormalSum<L> {
        let mut out = FormalSum::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Multiply every key by a sign-carrying map, `f(k) = (s, k')` gives `s*k'`.
    pub fn try_map_signed<L: Ord + Clone, E>(
        &self,
        f: impl Fn(&K) -> std::result::Result<(i32, L), E>,
    ) -> std::result::Result<FormalSum<L>, E> {
        let mut out = FormalSum::zero();
        for (k, c) in &self.terms {
            let (s, l) = f(k)?;
            out.add_term(l, c * BigInt::from(s));
        }
        Ok(out)
    }

    /// Representative with a positive leading coefficient, for deduplicating
    /// vectors up to sign.
    pub fn sign_normalized(&self) -> Self {
        match self.terms.values().next() {
            Some(c) if c < &BigInt::zero() => -self,
            _ => self.clone(),
        }
    }
}

impl<K: Ord + Clone> FromIterator<(K, BigInt)> for FormalSum<K> {
    fn from_iter<I: IntoIterator<Item = (K, BigInt)>>(iter: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in iter {
            s.add_term(k, c);
        }
        s
    }
}

impl<K: Ord + Clone> Add<&FormalSum<K>> for &FormalSum<K> {
    type Output = FormalSum<K>;
    fn add(self, rhs: &FormalSum<K>) -> FormalSum<K> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl<K: Ord + Clone> Add for FormalSum<K> {
    type Output = FormalSum<K>;
    fn add(self, rhs: FormalSum<K>) -> FormalSum<K> {
        &self + &rhs
    }
}

impl<K: Ord + Clone> Neg for &FormalSum<K> {
    type Output = FormalSum<K>;
    fn neg(self) -> FormalSum<K> {
        FormalSum { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }
}

impl<K: Ord + Clone> Neg for FormalSum<K> {
    type Output = FormalSum<K>;
    fn neg(self) -> FormalSum<K> {
        -&self
    }
}

impl<K: Ord + Clone> Sub<&FormalSum<K>> for &FormalSum<K> {
    type Output = FormalSum<K>;
    fn sub(self, rhs: &FormalSum<K>) -> FormalSum<K> {
        self + &(-rhs)
    }
}

impl<K: Ord + Clone> Sub for FormalSum<K> {
    type Output = FormalSum<K>;
    fn sub(self, rhs: FormalSum<K>) -> FormalSum<K> {
        &self - &rhs
    }
}

/// Keys that live over a label set, possibly with decorations.
pub trait Labelled {
    fn labels(&self) -> BTreeSet<u32>;

    /// Coarse tag of the coefficient model: `None` for undecorated keys.
    fn model_tag(&self) -> Option<bool> {
        None
    }
}

impl Labelled for Tree {
    fn labels(&self) -> BTreeSet<u32> {
        self.label_set()
    }
}

impl Labelled for DecoratedTree {
    fn labels(&self) -> BTreeSet<u32> {
        self.tree().label_set()
    }

    /// `Some(true)` for free-group decorations.
    fn model_tag(&self) -> Option<bool> {
        self.decoration().values().next().map(|g| matches!(g, GroupElement::Free(_)))
    }
}

impl<K: Ord + Clone + Labelled> FormalSum<K> {
    /// Label set shared by all terms, `None` for the empty sum.
    pub fn label_set(&self) -> Result<Option<BTreeSet<u32>>> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Ok(None) };
        let labels = first.labels();
        let tag = first.model_tag();
        for k in it {
            if k.labels() != labels || k.model_tag() != tag {
                return Err(Error::ModelMismatch);
            }
        }
        Ok(Some(labels))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        let (a, b) = (self.terms.keys().next(), other.terms.keys().next());
        if let (Some(a), Some(b)) = (a, b) {
            if a.labels() != b.labels() || a.model_tag() != b.model_tag() {
                return Err(Error::ModelMismatch);
            }
        }
        Ok(())
    }

    /// Coefficientwise sum, requiring both operands over the same label set
    /// and coefficient model.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self - other)
    }
}
