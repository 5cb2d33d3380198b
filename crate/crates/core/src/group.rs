//! Group models used as decoration coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of a [`GroupModel`].
///
/// Trivial and finite groups use `Finite(id)` with id 0 the identity. Free
/// groups use reduced words: `k > 0` is generator `k`, `-k` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Finite(u32),
    Free(Vec<i32>),
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Finite(id) => *id == 0,
            GroupElement::Free(w) => w.is_empty(),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Finite(id) => write!(f, "{id}"),
            GroupElement::Free(word) => {
                for &g in word {
                    let letter = if g > 0 { (b'a' + (g - 1) as u8) as char } else { (b'A' + (-g - 1) as u8) as char };
                    write!(f, "{letter}")?;
                }
                Ok(())
            }
        }
    }
}

/// Finite group given by a Cayley table over ids `0..m`, identity 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<u32>>,
    inverse: Vec<u32>,
}

impl FiniteGroup {
    /// Checks closure, identity, inverses and associativity on all triples.
    pub fn new(table: Vec<Vec<u32>>, inverse: Vec<u32>) -> Result<Self> {
        let m = table.len();
        let bad = |msg: String| Err(Error::InvalidGroup(msg));
        if m == 0 {
            return bad("empty multiplication table".into());
        }
        if inverse.len() != m {
            return bad(format!("inverse table has {} entries, expected {m}", inverse.len()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != m {
                return bad(format!("row {i} has {} entries, expected {m}", row.len()));
            }
            if let Some(&x) = row.iter().find(|&&x| x as usize >= m) {
                return bad(format!("entry {x} in row {i} is out of range"));
            }
        }
        for x in 0..m {
            if table[0][x] as usize != x || table[x][0] as usize != x {
                return bad(format!("0 is not a two-sided identity at {x}"));
            }
            let inv = inverse[x] as usize;
            if inv >= m || table[x][inv] != 0 || table[inv][x] != 0 {
                return bad(format!("inverse of {x} is wrong"));
            }
        }
        for a in 0..m {
            for b in 0..m {
                let ab = table[a][b] as usize;
                for c in 0..m {
                    let bc = table[b][c] as usize;
                    if table[ab][c] != table[a][bc] {
                        return bad(format!("associativity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, inverse })
    }

    pub fn cyclic(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let table = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        let inverse = (0..m).map(|a| (m - a) % m).collect();
        FiniteGroup::new(table, inverse)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize][b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupModelFile", into = "GroupModelFile")]
pub enum GroupModel {
    Trivial,
    Finite(FiniteGroup),
    /// Free group on `generators` letters (at most 26).
    Free {
        generators: u32,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum GroupModelFile {
    Trivial,
    Finite { table: Vec<Vec<u32>>, inverse: Vec<u32> },
    Free { generators: u32 },
}

impl TryFrom<GroupModelFile> for GroupModel {
    type Error = Error;
    fn try_from(file: GroupModelFile) -> Result<Self> {
        match file {
            GroupModelFile::Trivial => Ok(GroupModel::Trivial),
            GroupModelFile::Finite { table, inverse } => Ok(GroupModel::Finite(FiniteGroup::new(table, inverse)?)),
            GroupModelFile::Free { generators } => GroupModel::free(generators),
        }
    }
}

impl From<GroupModel> for GroupModelFile {
    fn from(model: GroupModel) -> Self {
        match model {
            GroupModel::Trivial => GroupModelFile::Trivial,
            GroupModel::Finite(g) => GroupModelFile::Finite { table: g.table, inverse: g.inverse },
            GroupModel::Free { generators } => GroupModelFile::Free { generators },
        }
    }
}

impl GroupModel {
    pub fn cyclic(m: u32) -> Result<Self> {
        Ok(GroupModel::Finite(FiniteGroup::cyclic(m)?))
    }

    pub fn free(generators: u32) -> Result<Self> {
        if generators == 0 || generators > 26 {
            return Err(Error::InvalidGroup(format!("free group needs 1..=26 generators, got {generators}")));
        }
        Ok(GroupModel::Free { generators })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidGroup(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("group models always serialize")
    }

    /// Number of elements, `None` for free groups.
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupModel::Trivial => Some(1),
            GroupModel::Finite(g) => Some(g.order()),
            GroupModel::Free { .. } => None,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupModel::Free { .. } => GroupElement::Free(Vec::new()),
            _ => GroupElement::Finite(0),
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (GroupModel::Trivial, GroupElement::Finite(id)) => *id == 0,
            (GroupModel::Finite(fg), GroupElement::Finite(id)) => (*id as usize) < fg.order(),
            (GroupModel::Free { generators }, GroupElement::Free(w)) => {
                w.iter().all(|&x| x != 0 && x.unsigned_abs() <= *generators) && w.windows(2).all(|p| p[0] != -p[1])
            }
            _ => false,
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::ModelMismatch);
        }
        Ok(match (self, a, b) {
            (GroupModel::Finite(g), GroupElement::Finite(x), GroupElement::Finite(y)) => {
                GroupElement::Finite(g.mul(*x, *y))
            }
            (GroupModel::Free { .. }, GroupElement::Free(x), GroupElement::Free(y)) => {
                let mut word = x.clone();
                for &letter in y {
                    if word.last() == Some(&-letter) {
                        word.pop();
                    } else {
                        word.push(letter);
                    }
                }
                GroupElement::Free(word)
            }
            _ => GroupElement::Finite(0),
        })
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        if !self.contains(a) {
            return Err(Error::ModelMismatch);
        }
        Ok(match (self, a) {
            (GroupModel::Finite(g), GroupElement::Finite(x)) => GroupElement::Finite(g.inv(*x)),
            (GroupModel::Free { .. }, GroupElement::Free(w)) => {
                GroupElement::Free(w.iter().rev().map(|x| -x).collect())
            }
            _ => GroupElement::Finite(0),
        })
    }

    /// Parse a decoration word.
    ///
    /// Free models take letters `a..z` for generators and `A..Z` for their
    /// inverses; the word is reduced. Finite models take decimal ids, and a
    /// product may be written with `.` between ids. The empty string is the
    /// identity in every model.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let unknown = || Error::UnknownGroupElement(text.to_string());
        let text = text.trim();
        if text.is_empty() {
            return Ok(self.identity());
        }
        match self {
            GroupModel::Free { generators } => {
                let mut acc = self.identity();
                for c in text.chars() {
                    let letter = match c {
                        'a'..='z' => (c as u8 - b'a') as i32 + 1,
                        'A'..='Z' => -((c as u8 - b'A') as i32 + 1),
                        _ => return Err(unknown()),
                    };
                    if letter.unsigned_abs() > *generators {
                        return Err(unknown());
                    }
                    acc = self.mul(&acc, &GroupElement::Free(vec![letter]))?;
                }
                Ok(acc)
            }
            _ => {
                let mut acc = self.identity();
                for part in text.split('.') {
                    let id: u32 = part.trim().parse().map_err(|_| unknown())?;
                    let g = GroupElement::Finite(id);
                    if !self.contains(&g) {
                        return Err(unknown());
                    }
                    acc = self.mul(&acc, &g)?;
                }
                Ok(acc)
            }
        }
    }

    /// All elements, in id order or shortlex order for free groups.
    ///
    /// Free groups are infinite, so `max_word_len` is required there.
    pub fn elements(&self, max_word_len: Option<usize>) -> Result<Vec<GroupElement>> {
        match self {
            GroupModel::Trivial => Ok(vec![GroupElement::Finite(0)]),
            GroupModel::Finite(g) => Ok((0..g.order() as u32).map(GroupElement::Finite).collect()),
            GroupModel::Free { generators } => {
                let cap = max_word_len.ok_or(Error::InfiniteEnumeration)?;
                let g = *generators as i32;
                let letters: Vec<i32> = (1..=g).chain((1..=g).map(|x| -x)).collect();
                let mut out = vec![Vec::new()];
                let mut layer: Vec<Vec<i32>> = vec![Vec::new()];
                for _ in 0..cap {
                    let mut next = Vec::new();
                    for w in &layer {
                        for &x in &letters {
                            if w.last() != Some(&-x) {
                                let mut v = w.clone();
                                v.push(x);
                                next.push(v);
                            }
                        }
                    }
                    out.extend(next.iter().cloned());
                    layer = next;
                }
                Ok(out.into_iter().map(GroupElement::Free).collect())
            }
        }
    }
}
