//! Symbolic data of the embedding-calculus tower layers.
//!
//! The layer `F_{n+1}(M)` splits, after `n+1` loops, as a weak product of
//! factors `ΩΣ^{1+l_w(d-2)}(ΩM^{×l_w})_+` indexed by normalized Hall words
//! `w` over `n` letters. Nothing here evaluates a homotopy group: entries
//! above the first slope are reported as lists of such factors, truncated
//! at an explicit word length.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::freelie::{lyndon_words, normalized_words, HallWord};
use crate::group::GroupModel;
use crate::relations::DecoratedContext;

/// One factor `Σ^{suspension_degree}(ΩM^{×l})_+` indexed by a Hall word,
/// looped `loop_count` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorDescriptor {
    pub word: HallWord,
    pub suspension_degree: i64,
    pub loop_count: usize,
}

impl FactorDescriptor {
    fn new(word: HallWord, d: u32, loop_count: usize) -> Self {
        let suspension_degree = 1 + word.len() as i64 * (d as i64 - 2);
        FactorDescriptor { word, suspension_degree, loop_count }
    }

    /// Number of copies of `M` in the base space.
    pub fn base_power(&self) -> usize {
        self.word.len()
    }

    /// The unlooped space, e.g. `Σ^3(ΩM^×2)_+`.
    pub fn base_space(&self) -> String {
        format!("(ΩM^×{})_+", self.word.len())
    }
}

impl fmt::Display for FactorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:Σ^{}{}", self.word, self.suspension_degree, self.base_space())
    }
}

/// Free rank and torsion coefficients of an abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupShape {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let torsion: Vec<String> = self.torsion.iter().map(BigInt::to_string).collect();
        write!(f, "rank={} torsion=[{}]", self.free_rank, torsion.join(","))
    }
}

fn check(n: u32, d: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Input("n must be at least 1".into()));
    }
    if d < 3 {
        return Err(Error::Input("the dimension d must be at least 3".into()));
    }
    Ok(())
}

/// Factors of the layer `F_{n+1}(M)` for normalized words of length at
/// most `max_word_len`.
pub fn layer_factors(n: u32, d: u32, max_word_len: usize) -> Result<Vec<FactorDescriptor>> {
    check(n, d)?;
    let labels: Vec<u32> = (1..=n).collect();
    Ok(normalized_words(&labels, max_word_len)?
        .into_iter()
        .map(|w| FactorDescriptor::new(w, d, n as usize + 1))
        .collect())
}

/// The layer `F_{n+1}(M)` is `(n(d-3)-1)`-connected.
pub fn layer_connectivity(n: u32, d: u32) -> Result<i64> {
    check(n, d)?;
    Ok(n as i64 * (d as i64 - 3) - 1)
}

/// The first nontrivial homotopy group of the layer, `Lie_π(n)`, sitting in
/// degree `n(d-3)`.
pub fn first_layer_group(n: u32, d: u32, model: &GroupModel, max_word_len: Option<usize>) -> Result<(i64, GroupShape)> {
    check(n, d)?;
    let labels: Vec<u32> = (1..=n).collect();
    let ctx = DecoratedContext::decorated(&labels, model, max_word_len)?;
    let shape = GroupShape { free_rank: ctx.free_rank(), torsion: ctx.torsion().to_vec() };
    Ok((n as i64 * (d as i64 - 3), shape))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum E1Status {
    Zero,
    FirstSlope,
    Symbolic,
}

impl fmt::Display for E1Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            E1Status::Zero => "zero",
            E1Status::FirstSlope => "firstSlope",
            E1Status::Symbolic => "symbolic",
        })
    }
}

/// The entry `E¹_{-(n+1),t}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Entry {
    pub n: u32,
    pub t: i64,
    pub status: E1Status,
    pub summands: Vec<FactorDescriptor>,
    pub exact_group: Option<GroupShape>,
    /// Longest word length considered for `summands`.
    pub word_len_bound: usize,
}

/// Classify the cells `1 <= n <= n_max`, `1 <= t <= t_max`.
///
/// Cells with `t <= n(d-2)` vanish. The cell `t = 1 + n(d-2)` is
/// `Lie_π(n)`, computed exactly. Higher cells list the factors with
/// `1 + l(d-2) <= t`, further capped by `max_word_len` when given.
pub fn e1_page(
    n_max: u32,
    t_max: i64,
    d: u32,
    model: &GroupModel,
    max_word_len: Option<usize>,
) -> Result<Vec<E1Entry>> {
    check(n_max, d)?;
    let mut groups: HashMap<u32, GroupShape> = HashMap::new();
    let mut out = Vec::new();
    for n in 1..=n_max {
        let slope = 1 + n as i64 * (d as i64 - 2);
        for t in 1..=t_max {
            let status = if t < slope {
                E1Status::Zero
            } else if t == slope {
                E1Status::FirstSlope
            } else {
                E1Status::Symbolic
            };
            let mut bound = 0;
            let mut summands = Vec::new();
            if status != E1Status::Zero {
                let strip = ((t - 1) / (d as i64 - 2)) as usize;
                bound = max_word_len.map_or(strip, |cap| cap.min(strip));
                summands = layer_factors(n, d, bound)?;
            }
            let exact_group = if status == E1Status::FirstSlope {
                let shape = match groups.get(&n) {
                    Some(s) => s.clone(),
                    None => {
                        let s = first_layer_group(n, d, model, max_word_len)?.1;
                        groups.insert(n, s.clone());
                        s
                    }
                };
                Some(shape)
            } else {
                None
            };
            out.push(E1Entry { n, t, status, summands, exact_group, word_len_bound: bound });
        }
    }
    Ok(out)
}

/// Summands of `π_*Conf_n(M)`: `n` copies of `π_*M`, and for every
/// `i = 0..n-1` the factors of all Hall words over `i` letters, each
/// contributing with a homotopy shift of one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfDecomposition {
    pub n: u32,
    pub base_copies: u32,
    pub homotopy_shift: u32,
    pub word_factors: Vec<(u32, Vec<FactorDescriptor>)>,
    pub max_word_len: usize,
}

pub fn conf_factors(n: u32, d: u32, max_word_len: usize) -> Result<ConfDecomposition> {
    check(n, d)?;
    let word_factors = (0..n)
        .map(|i| {
            let factors = lyndon_words(i, max_word_len).into_iter().map(|w| FactorDescriptor::new(w, d, 0)).collect();
            (i, factors)
        })
        .collect();
    Ok(ConfDecomposition { n, base_copies: n, homotopy_shift: 1, word_factors, max_word_len })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(f: &[FactorDescriptor]) -> Vec<i64> {
        f.iter().map(|x| x.suspension_degree).collect()
    }

    #[test]
    fn layer_examples() {
        let f = layer_factors(1, 3, 1).unwrap();
        assert_eq!((f[0].word.text(), f[0].suspension_degree), ("1".to_string(), 2));
        let f = layer_factors(2, 3, 2).unwrap();
        assert_eq!(degrees(&f), vec![3]);
        assert_eq!(f[0].loop_count, 3);
        assert_eq!(degrees(&layer_factors(2, 4, 3).unwrap()), vec![5, 7, 7]);
        assert_eq!(layer_factors(3, 3, 2), Err(Error::LTooSmall { max: 2, alphabet: 3 }));
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(layer_connectivity(1, 3).unwrap(), -1);
        assert_eq!(layer_connectivity(2, 4).unwrap(), 1);
        assert_eq!(layer_connectivity(3, 5).unwrap(), 5);
    }

    #[test]
    fn first_group_examples() {
        let z2 = GroupModel::cyclic(2).unwrap();
        assert_eq!(first_layer_group(1, 3, &z2, None).unwrap().1.free_rank, 2);
        assert_eq!(
            first_layer_group(2, 3, &GroupModel::Trivial, None).unwrap(),
            (0, GroupShape { free_rank: 1, torsion: vec![] })
        );
        assert_eq!(first_layer_group(3, 4, &GroupModel::Trivial, None).unwrap().1.free_rank, 2);
        let free = GroupModel::free(1).unwrap();
        assert_eq!(first_layer_group(1, 3, &free, None), Err(Error::InfiniteEnumeration));
    }

    #[test]
    fn e1_examples() {
        let page = e1_page(2, 4, 3, &GroupModel::Trivial, None).unwrap();
        let cell = |n: u32, t: i64| page.iter().find(|e| e.n == n && e.t == t).unwrap();
        assert_eq!(cell(1, 1).status, E1Status::Zero);
        assert_eq!(cell(1, 2).status, E1Status::FirstSlope);
        assert_eq!(cell(1, 2).exact_group.as_ref().unwrap().free_rank, 1);
        let c = cell(2, 4);
        assert_eq!(c.status, E1Status::Symbolic);
        assert_eq!(c.summands.iter().map(|f| f.word.len()).collect::<Vec<_>>(), vec![2, 3, 3]);
    }

    #[test]
    fn conf_examples() {
        let c = conf_factors(1, 3, 3).unwrap();
        assert_eq!(c.base_copies, 1);
        assert!(c.word_factors.iter().all(|(_, f)| f.is_empty()));
        let c = conf_factors(2, 3, 2).unwrap();
        assert_eq!(c.word_factors[1].1.len(), 1);
        assert_eq!(c.word_factors[1].1[0].suspension_degree, 2);
        let c = conf_factors(3, 3, 2).unwrap();
        let texts: Vec<Vec<String>> =
            c.word_factors.iter().map(|(_, f)| f.iter().map(|x| x.word.text()).collect()).collect();
        assert_eq!(texts, vec![vec![], vec!["1".to_string()], vec!["1".into(), "2".into(), "1.2".into()]]);
    }
}
