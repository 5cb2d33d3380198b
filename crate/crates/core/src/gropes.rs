//! Combinatorial grope encodings and their underlying decorated trees.
//!
//! A grope is recorded by its tree, a sign `ε_i` and a group element `g_i`
//! for every leaf. Its underlying decorated tree is `ε Γ^{g}` with
//! `ε = ∏ ε_i`; a forest maps to the sum over its gropes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::parse_sum;
use crate::group::{GroupElement, GroupModel};
use crate::relations::{DecoratedContext, TreeContext};
use crate::sum::{DecoratedTreeSum, TreeSum};
use crate::tree::{DecoratedTree, LeafLabel, Sign, SignedDecoratedTree, Tree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GropeEncoding {
    tree: Tree,
    signs: BTreeMap<u32, Sign>,
    decorations: BTreeMap<u32, GroupElement>,
}

impl GropeEncoding {
    /// `signs` and `decorations` list the data of the leaves in increasing
    /// label order.
    pub fn new(tree: Tree, signs: Vec<Sign>, decorations: Vec<GroupElement>) -> Result<Self> {
        let labels: Vec<u32> = tree.label_set().into_iter().collect();
        for len in [signs.len(), decorations.len()] {
            if len != labels.len() {
                return Err(Error::DimensionMismatch { expected: labels.len(), found: len });
            }
        }
        Ok(GropeEncoding {
            signs: labels.iter().copied().zip(signs).collect(),
            decorations: labels.iter().copied().zip(decorations).collect(),
            tree,
        })
    }

    /// All signs positive, all decorations `identity`.
    pub fn plain(tree: Tree, identity: GroupElement) -> Self {
        let n = tree.degree();
        GropeEncoding::new(tree, vec![Sign::Plus; n], vec![identity; n]).expect("lengths match")
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn sign(&self, label: u32) -> Option<Sign> {
        self.signs.get(&label).copied()
    }

    pub fn decoration(&self, label: u32) -> Option<&GroupElement> {
        self.decorations.get(&label)
    }

    pub fn with_sign(&self, label: u32, sign: Sign) -> Self {
        let mut out = self.clone();
        if let Some(s) = out.signs.get_mut(&label) {
            *s = sign;
        }
        out
    }

    pub fn with_tree(&self, tree: Tree) -> Result<Self> {
        if tree.label_set() != self.tree.label_set() {
            return Err(Error::ModelMismatch);
        }
        Ok(GropeEncoding { tree, ..self.clone() })
    }

    /// The underlying decorated tree `ε Γ^{g}`.
    pub fn ut(&self) -> SignedDecoratedTree {
        let sign = self.signs.values().fold(Sign::Plus, |acc, s| acc * *s);
        let decoration = self
            .decorations
            .iter()
            .map(|(l, g)| (LeafLabel::new(*l).expect("tree labels are positive"), g.clone()))
            .collect();
        let tree = DecoratedTree::new(self.tree.clone(), decoration).expect("decorations are total");
        SignedDecoratedTree { sign, tree }
    }
}

/// An ordered collection of gropes over a common label set and group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestEncoding {
    n: u32,
    model: GroupModel,
    gropes: Vec<GropeEncoding>,
}

#[derive(Serialize, Deserialize)]
struct ForestFile {
    n: u32,
    #[serde(default = "trivial")]
    group: GroupModel,
    gropes: Vec<GropeFile>,
}

#[derive(Serialize, Deserialize)]
struct GropeFile {
    tree: String,
    signs: Vec<i64>,
    #[serde(default)]
    decorations: Vec<String>,
}

fn trivial() -> GroupModel {
    GroupModel::Trivial
}

impl ForestEncoding {
    pub fn new(n: u32, model: GroupModel, gropes: Vec<GropeEncoding>) -> Result<Self> {
        if gropes.is_empty() {
            return Err(Error::Input("a forest needs at least one grope".into()));
        }
        let labels: Vec<u32> = (1..=n).collect();
        for g in &gropes {
            if g.tree.label_set().into_iter().ne(labels.iter().copied()) {
                return Err(Error::ModelMismatch);
            }
            if !g.decorations.values().all(|x| model.contains(x)) {
                return Err(Error::ModelMismatch);
            }
        }
        Ok(ForestEncoding { n, model, gropes })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    pub fn gropes(&self) -> &[GropeEncoding] {
        &self.gropes
    }

    /// The forest `self ⧺ other`.
    pub fn concat(&self, other: &ForestEncoding) -> Result<Self> {
        if self.n != other.n || self.model != other.model {
            return Err(Error::ModelMismatch);
        }
        let mut gropes = self.gropes.clone();
        gropes.extend(other.gropes.iter().cloned());
        ForestEncoding::new(self.n, self.model.clone(), gropes)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ForestFile = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        let mut gropes = Vec::new();
        for g in file.gropes {
            let sum = parse_sum(&g.tree)?;
            let tree = match sum.iter().next() {
                Some((t, c)) if sum.len() == 1 && c == &BigInt::from(1) => t.clone(),
                _ => return Err(Error::Input(format!("`{}` is not a single tree", g.tree))),
            };
            let signs = g
                .signs
                .iter()
                .map(|&s| Sign::from_int(s).ok_or_else(|| Error::Input(format!("sign {s} is not ±1"))))
                .collect::<Result<Vec<_>>>()?;
            let decorations = if g.decorations.is_empty() {
                vec![file.group.identity(); tree.degree()]
            } else {
                g.decorations.iter().map(|w| file.group.parse_element(w)).collect::<Result<_>>()?
            };
            gropes.push(GropeEncoding::new(tree, signs, decorations)?);
        }
        ForestEncoding::new(file.n, file.group, gropes)
    }

    pub fn to_json(&self) -> String {
        let gropes = self
            .gropes
            .iter()
            .map(|g| GropeFile {
                tree: g.tree.to_string(),
                signs: g.signs.values().map(|s| s.to_int()).collect(),
                decorations: g
                    .decorations
                    .values()
                    .map(|x| if x.is_identity() { String::new() } else { x.to_string() })
                    .collect(),
            })
            .collect();
        let file = ForestFile { n: self.n, group: self.model.clone(), gropes };
        serde_json::to_string(&file).expect("forests always serialize")
    }

    /// `Σ ε(G_l) Γ_l^{g(G_l)}`.
    pub fn ut(&self) -> DecoratedTreeSum {
        forest_ut(&self.gropes)
    }
}

pub fn forest_ut(gropes: &[GropeEncoding]) -> DecoratedTreeSum {
    let mut out = DecoratedTreeSum::zero();
    for g in gropes {
        let s = g.ut();
        out.add_term(s.tree, BigInt::from(s.sign.to_int()));
    }
    out
}

/// Coordinates of a decorated sum in `Lie_π(n)`.
pub fn class_in_lie(ctx: &DecoratedContext, s: &DecoratedTreeSum) -> Result<Vec<BigInt>> {
    ctx.reduce(s)
}

/// Coordinates of an undecorated sum over `{1..n}` in `A^T_n`.
pub fn project_at(ctx: &TreeContext, s: &TreeSum) -> Result<Vec<BigInt>> {
    ctx.reduce(s)
}

/// A forest whose underlying sum is `target`: `|c|` copies of a grope on
/// each term, with the sign of `c` put on the first leaf.
pub fn surjectivity_witness(target: &DecoratedTreeSum, model: &GroupModel) -> Result<ForestEncoding> {
    let n = match target.label_set()? {
        Some(labels) => labels.len() as u32,
        None => return Err(Error::Input("the zero sum has no grope forest".into())),
    };
    let mut gropes = Vec::new();
    for (t, c) in target.iter() {
        let mut signs = vec![Sign::Plus; t.tree().degree()];
        if c.is_negative() {
            signs[0] = Sign::Minus;
        }
        let decorations: Vec<GroupElement> = t.decoration().values().cloned().collect();
        let g = GropeEncoding::new(t.tree().clone(), signs, decorations)?;
        let copies = c.abs();
        let mut k = BigInt::from(0);
        while k < copies {
            gropes.push(g.clone());
            k += 1;
        }
    }
    ForestEncoding::new(n, model.clone(), gropes)
}
