//! Free Lie algebra machinery.
//!
//! Lie words are expanded into the tensor (associative) algebra with
//! `[a,b] = ab - ba`. Multilinear elements are read off in the left-normed
//! basis `[x_{s1},[x_{s2},[...,[x_{s(n-1)}, x_max]...]]]` through the
//! coefficients of monomials ending in `x_max`: each basis element has
//! exactly one such monomial, with coefficient 1.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::sum::{FormalSum, TreeSum};
use crate::tree::{Sign, Tree};

/// A bracketed word in letters `x^i`. Letters may repeat.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieWord {
    Letter(u32),
    Bracket(Box<LieWord>, Box<LieWord>),
}

impl LieWord {
    pub fn bracket(a: LieWord, b: LieWord) -> LieWord {
        LieWord::Bracket(Box::new(a), Box::new(b))
    }

    pub fn letters(&self) -> Vec<u32> {
        match self {
            LieWord::Letter(i) => vec![*i],
            LieWord::Bracket(a, b) => {
                let mut v = a.letters();
                v.extend(b.letters());
                v
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            LieWord::Letter(_) => 1,
            LieWord::Bracket(a, b) => a.len() + b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_multilinear(&self) -> bool {
        let letters = self.letters();
        let set: BTreeSet<u32> = letters.iter().copied().collect();
        set.len() == letters.len()
    }
}

impl From<&Tree> for LieWord {
    fn from(t: &Tree) -> Self {
        match t {
            Tree::Leaf(l) => LieWord::Letter(l.get()),
            Tree::Graft(a, b) => LieWord::bracket(LieWord::from(&**a), LieWord::from(&**b)),
        }
    }
}

impl fmt::Display for LieWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieWord::Letter(i) => write!(f, "{i}"),
            LieWord::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// Element of the free associative algebra: monomial (letter sequence) to
/// coefficient.
pub type AssocPoly = FormalSum<Vec<u32>>;

fn poly_mul(a: &AssocPoly, b: &AssocPoly) -> AssocPoly {
    let mut out = AssocPoly::zero();
    for (ma, ca) in a.iter() {
        for (mb, cb) in b.iter() {
            let mut m = ma.clone();
            m.extend_from_slice(mb);
            out.add_term(m, ca * cb);
        }
    }
    out
}

/// Expand a Lie word in the tensor algebra.
pub fn expand_assoc(w: &LieWord) -> AssocPoly {
    match w {
        LieWord::Letter(i) => AssocPoly::single(vec![*i]),
        LieWord::Bracket(a, b) => {
            let (pa, pb) = (expand_assoc(a), expand_assoc(b));
            &poly_mul(&pa, &pb) - &poly_mul(&pb, &pa)
        }
    }
}

/// Linear extension of [`expand_assoc`] to tree sums, reading each tree as
/// its ungraded Lie word.
pub fn expand_tree_sum(s: &TreeSum) -> AssocPoly {
    let mut out = AssocPoly::zero();
    for (t, c) in s.iter() {
        for (m, k) in expand_assoc(&LieWord::from(t)).iter() {
            out.add_term(m.clone(), c * k);
        }
    }
    out
}

/// The left-normed basis of the multilinear part of the free Lie algebra on
/// a label set, indexed by permutations of the labels other than the largest.
#[derive(Clone, Debug)]
pub struct LeftNormedBasis {
    labels: Vec<u32>,
    perms: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl LeftNormedBasis {
    pub fn new(labels: &[u32]) -> Result<Self> {
        let set: BTreeSet<u32> = labels.iter().copied().collect();
        let sorted: Vec<u32> = set.into_iter().collect();
        let (_, rest) = sorted.split_last().ok_or(Error::EmptyLabelSet)?;
        let perms = permutations(rest);
        let index = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Ok(LeftNormedBasis { labels: sorted, perms, index })
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    fn max_label(&self) -> u32 {
        *self.labels.last().expect("nonempty label set")
    }

    /// The label sequence `s1, ..., s(n-1), max` of basis element `i`.
    pub fn sequence(&self, i: usize) -> Vec<u32> {
        let mut v = self.perms[i].clone();
        v.push(self.max_label());
        v
    }

    pub fn tree(&self, i: usize) -> Tree {
        Tree::left_normed(&self.sequence(i)).expect("labels are valid")
    }

    pub fn trees(&self) -> Vec<Tree> {
        (0..self.len()).map(|i| self.tree(i)).collect()
    }

    /// Coordinates of a multilinear tree sum in this basis.
    pub fn coordinates(&self, s: &TreeSum) -> Result<Vec<BigInt>> {
        let labels: BTreeSet<u32> = self.labels.iter().copied().collect();
        if s.keys().any(|t| t.label_set() != labels) {
            return Err(Error::NotMultilinear);
        }
        Ok(self.read_coordinates(&expand_tree_sum(s)))
    }

    /// Coordinates of a linear combination of multilinear Lie words.
    pub fn word_coordinates(&self, words: &[(BigInt, LieWord)]) -> Result<Vec<BigInt>> {
        let mut poly = AssocPoly::zero();
        for (c, w) in words {
            let mut letters = w.letters();
            letters.sort_unstable();
            if letters != self.labels {
                return Err(Error::NotMultilinear);
            }
            for (m, k) in expand_assoc(w).iter() {
                poly.add_term(m.clone(), c * k);
            }
        }
        Ok(self.read_coordinates(&poly))
    }

    fn read_coordinates(&self, poly: &AssocPoly) -> Vec<BigInt> {
        let max = self.max_label();
        let mut out = vec![BigInt::zero(); self.len()];
        for (m, c) in poly.iter() {
            if let Some((&last, init)) = m.split_last() {
                if last == max {
                    if let Some(&i) = self.index.get(init) {
                        out[i] = c.clone();
                    }
                }
            }
        }
        out
    }
}

/// Multilinear normal form of `s` on the label set `labels`.
pub fn multilinear_normal_form(labels: &[u32], s: &TreeSum) -> Result<Vec<BigInt>> {
    LeftNormedBasis::new(labels)?.coordinates(s)
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Sign-twisted tree/word correspondence

/// `|{(i1, i2) in first x second : i1 > i2}|`.
pub fn inversions(first: &[u32], second: &[u32]) -> u64 {
    first.iter().map(|a| second.iter().filter(|b| a > b).count() as u64).sum()
}

/// The exponent `(1|2)_d = (d-2) * inversions(first, second)`.
pub fn graft_sign_exponent(first: &[u32], second: &[u32], d: u32) -> u64 {
    (d as u64).saturating_sub(2) * inversions(first, second)
}

/// Graded Lie word with an overall sign, for ambient dimension `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedWord {
    pub sign: Sign,
    pub word: LieWord,
    pub dimension: u32,
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Plus { '+' } else { '-' };
        write!(f, "{s}{}", self.word)
    }
}

/// The image of a tree with its local sign exponents kept at every bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnnotatedWord {
    Letter(u32),
    Bracket { exponent: u64, first: Box<AnnotatedWord>, second: Box<AnnotatedWord> },
}

impl AnnotatedWord {
    pub fn total_exponent(&self) -> u64 {
        match self {
            AnnotatedWord::Letter(_) => 0,
            AnnotatedWord::Bracket { exponent, first, second } => {
                exponent + first.total_exponent() + second.total_exponent()
            }
        }
    }

    pub fn word(&self) -> LieWord {
        match self {
            AnnotatedWord::Letter(i) => LieWord::Letter(*i),
            AnnotatedWord::Bracket { first, second, .. } => LieWord::bracket(first.word(), second.word()),
        }
    }
}

/// Prints e.g. `(-1)^1[x2,(-1)^1[x3,x1]]`; zero exponents are omitted.
impl fmt::Display for AnnotatedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnnotatedWord::Letter(i) => write!(f, "x{i}"),
            AnnotatedWord::Bracket { exponent, first, second } => {
                if *exponent != 0 {
                    write!(f, "(-1)^{exponent}")?;
                }
                write!(f, "[{first},{second}]")
            }
        }
    }
}

/// `omega_d` keeping the sign exponent of every grafting.
pub fn omega_d_annotated(t: &Tree, d: u32) -> AnnotatedWord {
    match t {
        Tree::Leaf(l) => AnnotatedWord::Letter(l.get()),
        Tree::Graft(a, b) => AnnotatedWord::Bracket {
            exponent: graft_sign_exponent(&a.leaves(), &b.leaves(), d),
            first: Box::new(omega_d_annotated(a, d)),
            second: Box::new(omega_d_annotated(b, d)),
        },
    }
}

/// The isomorphism from trees to graded Lie words: a leaf `i` goes to `x^i`
/// and a grafting to `(-1)^{(1|2)_d}` times the bracket of the images.
pub fn omega_d(t: &Tree, d: u32) -> SignedWord {
    let annotated = omega_d_annotated(t, d);
    SignedWord { sign: Sign::from_parity(annotated.total_exponent()), word: annotated.word(), dimension: d }
}

/// Inverse of [`omega_d`] on a multilinear word: the tree with the same
/// bracketing and the sign that makes the round trip the identity.
pub fn omega_d_inverse(w: &LieWord, d: u32) -> Result<(Sign, Tree)> {
    if !w.is_multilinear() || w.letters().contains(&0) {
        return Err(Error::NotMultilinear);
    }
    fn build(w: &LieWord) -> Tree {
        match w {
            LieWord::Letter(i) => Tree::leaf(*i).expect("nonzero label"),
            LieWord::Bracket(a, b) => Tree::graft_unchecked(build(a), build(b)),
        }
    }
    let tree = build(w);
    let sign = omega_d(&tree, d).sign;
    Ok((sign, tree))
}

// ---------------------------------------------------------------------------
// Lyndon words and Hall basis

/// A Lyndon word with its standard-factorization bracketing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HallWord {
    letters: Vec<u32>,
    bracketing: LieWord,
}

impl HallWord {
    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn bracketing(&self) -> &LieWord {
        &self.bracketing
    }

    /// Number of letters `l_w`.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Dot-separated text form, e.g. `1.2.2`.
    pub fn text(&self) -> String {
        self.letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(".")
    }
}

impl fmt::Display for HallWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

/// Strictly smaller than every proper rotation.
pub fn is_lyndon(w: &[u32]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|i| {
        let rotated = w[i..].iter().chain(w[..i].iter());
        w.iter().lt(rotated)
    })
}

/// Bracketing `[std(u), std(v)]` where `v` is the longest proper Lyndon suffix.
pub fn standard_bracketing(w: &[u32]) -> LieWord {
    if w.len() == 1 {
        return LieWord::Letter(w[0]);
    }
    let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("single letters are Lyndon");
    LieWord::bracket(standard_bracketing(&w[..split]), standard_bracketing(&w[split..]))
}

/// Lyndon words of length at most `max_len` over the ordered alphabet,
/// sorted by length and then lexicographically.
pub fn lyndon_words_over(alphabet: &[u32], max_len: usize) -> Vec<HallWord> {
    let letters: Vec<u32> = alphabet.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let k = letters.len();
    if k == 0 || max_len == 0 {
        return Vec::new();
    }
    // Duval's generation over indices 0..k
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut w = vec![0usize];
    loop {
        found.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
        .into_iter()
        .map(|idx| {
            let letters: Vec<u32> = idx.iter().map(|&i| letters[i]).collect();
            HallWord { bracketing: standard_bracketing(&letters), letters }
        })
        .collect()
}

/// Lyndon words over `{1..k}` of length at most `max_len`.
pub fn lyndon_words(k: u32, max_len: usize) -> Vec<HallWord> {
    let alphabet: Vec<u32> = (1..=k).collect();
    lyndon_words_over(&alphabet, max_len)
}

/// Lyndon words over `labels` using every label at least once.
pub fn normalized_words(labels: &[u32], max_len: usize) -> Result<Vec<HallWord>> {
    let set: BTreeSet<u32> = labels.iter().copied().collect();
    if set.is_empty() {
        return Err(Error::EmptyLabelSet);
    }
    if max_len < set.len() {
        return Err(Error::LTooSmall { max: max_len, alphabet: set.len() });
    }
    let alphabet: Vec<u32> = set.iter().copied().collect();
    Ok(lyndon_words_over(&alphabet, max_len)
        .into_iter()
        .filter(|w| {
            let used: BTreeSet<u32> = w.letters.iter().copied().collect();
            used == set
        })
        .collect())
}

/// Sum of `c * x` over a list of coefficient/word pairs equals zero after
/// expansion, i.e. the combination vanishes in the free Lie algebra.
pub fn vanishes_in_free_lie(words: &[(BigInt, LieWord)]) -> bool {
    let mut poly = AssocPoly::zero();
    for (c, w) in words {
        for (m, k) in expand_assoc(w).iter() {
            poly.add_term(m.clone(), c * k);
        }
    }
    poly.is_zero()
}

/// `sum_{d | n} mu(d) k^{n/d} / n`, the number of Lyndon words of length `n`
/// over `k` letters.
pub fn witt_count(k: u64, n: u64) -> u64 {
    fn mobius(mut n: u64) -> i64 {
        let mut result = 1;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if n > 1 {
            result = -result;
        }
        result
    }
    let mut total: i128 = 0;
    for d in 1..=n {
        if n.is_multiple_of(d) {
            total += mobius(d) as i128 * (k as i128).pow((n / d) as u32);
        }
    }
    (total / n as i128) as u64
}
