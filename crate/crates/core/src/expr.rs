//! Text form of tree sums.
//!
//! ```text
//! sum  := term (('+'|'-') term)*      (a leading sign is allowed, "0" is the empty sum)
//! term := [integer '*'] tree
//! tree := leaf | '[' tree ',' tree ']'
//! leaf := integer ['{' word '}']
//! ```
//!
//! Whitespace between tokens is ignored. Printing always produces the
//! canonical form, so `parse(print(s)) == s`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::sum::FormalSum;
use crate::tree::{canonicalize_tree, DecoratedTree, LeafLabel, RawTree};

#[derive(Clone, Debug)]
enum RawNode {
    Leaf { label: u32, word: Option<String>, pos: usize },
    Graft(Box<RawNode>, Box<RawNode>),
}

impl RawNode {
    fn to_raw(&self) -> RawTree {
        match self {
            RawNode::Leaf { label, .. } => RawTree::Leaf(*label),
            RawNode::Graft(a, b) => RawTree::Graft(Box::new(a.to_raw()), Box::new(b.to_raw())),
        }
    }

    fn words(&self, out: &mut Vec<(u32, Option<String>, usize)>) {
        match self {
            RawNode::Leaf { label, word, pos } => out.push((*label, word.clone(), *pos)),
            RawNode::Graft(a, b) => {
                a.words(out);
                b.words(out);
            }
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(format!("expected `{c}`, found `{x}`")),
            None => self.err(format!("expected `{c}`, found end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        Ok(self.text[start..self.pos].parse().expect("digits parse"))
    }

    fn leaf_label(&mut self) -> Result<(u32, usize)> {
        self.skip_ws();
        let start = self.pos;
        let value = self.integer()?;
        let label =
            u32::try_from(value).map_err(|_| Error::Syntax { pos: start, msg: "leaf label too large".into() })?;
        Ok((label, start))
    }

    fn tree(&mut self) -> Result<RawNode> {
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let a = self.tree()?;
                self.expect(',')?;
                let b = self.tree()?;
                self.expect(']')?;
                Ok(RawNode::Graft(Box::new(a), Box::new(b)))
            }
            Some(c) if c.is_ascii_digit() => {
                let (label, pos) = self.leaf_label()?;
                let word = self.decoration()?;
                Ok(RawNode::Leaf { label, word, pos })
            }
            Some(c) => self.err(format!("expected a tree, found `{c}`")),
            None => self.err("expected a tree, found end of input"),
        }
    }

    fn decoration(&mut self) -> Result<Option<String>> {
        if self.peek() != Some('{') {
            return Ok(None);
        }
        self.pos += 1;
        let start = self.pos;
        match self.text[start..].find('}') {
            Some(off) => {
                self.pos = start + off + 1;
                Ok(Some(self.text[start..start + off].trim().to_string()))
            }
            None => self.err("unterminated decoration"),
        }
    }

    /// A term after its sign: `[integer '*'] tree`.
    fn term(&mut self) -> Result<(BigInt, RawNode)> {
        self.skip_ws();
        let save = self.pos;
        if matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            let k = self.integer()?;
            if self.peek() == Some('*') {
                self.pos += 1;
                return Ok((k, self.tree()?));
            }
            self.pos = save;
        }
        Ok((BigInt::one(), self.tree()?))
    }

    fn sum(&mut self) -> Result<Vec<(BigInt, RawNode)>> {
        let trimmed = self.text.trim();
        if trimmed == "0" {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut sign = BigInt::one();
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (k, t) = self.term()?;
            out.push((sign * k, t));
            match self.peek() {
                None => break,
                Some('+') => {
                    self.pos += 1;
                    sign = BigInt::one();
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -BigInt::one();
                }
                Some(c) => return self.err(format!("expected `+`, `-` or end of input, found `{c}`")),
            }
        }
        Ok(out)
    }
}

/// Parse a single bracketing without label validation.
pub fn parse_raw_tree(text: &str) -> Result<RawTree> {
    let mut p = Parser::new(text);
    let t = p.tree()?;
    if let Some(c) = p.peek() {
        return p.err(format!("trailing input starting at `{c}`"));
    }
    Ok(t.to_raw())
}

/// Parse an undecorated sum. Decorations are rejected.
pub fn parse_sum(text: &str) -> Result<FormalSum<crate::tree::Tree>> {
    let terms = Parser::new(text).sum()?;
    let mut out = FormalSum::zero();
    for (k, node) in terms {
        let mut words = Vec::new();
        node.words(&mut words);
        if let Some((_, Some(w), _)) = words.iter().find(|(_, w, _)| w.is_some()) {
            return Err(Error::UnknownGroupElement(w.clone()));
        }
        out.add_term(canonicalize_tree(&node.to_raw())?, k);
    }
    Ok(out)
}

/// Parse a decorated sum; undecorated leaves carry the identity.
pub fn parse_decorated_sum(text: &str, model: &GroupModel) -> Result<FormalSum<DecoratedTree>> {
    let terms = Parser::new(text).sum()?;
    let mut out = FormalSum::zero();
    for (k, node) in terms {
        let tree = canonicalize_tree(&node.to_raw())?;
        let mut words = Vec::new();
        node.words(&mut words);
        let mut decoration = BTreeMap::new();
        for (label, word, _) in words {
            let g = model.parse_element(word.as_deref().unwrap_or(""))?;
            decoration.insert(LeafLabel::new(label)?, g);
        }
        out.add_term(DecoratedTree::new(tree, decoration)?, k);
    }
    Ok(out)
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for FormalSum<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (key, c)) in self.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            let abs = c.abs();
            if abs.is_one() {
                write!(f, "{key}")?;
            } else {
                write!(f, "{abs}*{key}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;
    use crate::tree::Tree;

    #[test]
    fn parses_examples() {
        let s = parse_sum("[1,[2,3]]").unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.keys().next().unwrap().to_string(), "[1,[2,3]]");

        let s = parse_sum("3*[1,2] - [2,1]").unwrap();
        let t12 = Tree::graft(Tree::leaf(1).unwrap(), Tree::leaf(2).unwrap()).unwrap();
        let t21 = Tree::graft(Tree::leaf(2).unwrap(), Tree::leaf(1).unwrap()).unwrap();
        assert_eq!(s.coefficient(&t12), BigInt::from(3));
        assert_eq!(s.coefficient(&t21), BigInt::from(-1));
        assert_eq!(s.to_string(), "3*[1,2] - [2,1]");
    }

    #[test]
    fn decorated_free_words() {
        let model = GroupModel::free(2).unwrap();
        let s = parse_decorated_sum("[1{a},2{ab}]", &model).unwrap();
        let d = s.keys().next().unwrap();
        assert_eq!(d.element(1), Some(&GroupElement::Free(vec![1])));
        assert_eq!(d.element(2), Some(&GroupElement::Free(vec![1, 2])));
        assert_eq!(s.to_string(), "[1{a},2{ab}]");
        assert_eq!(parse_decorated_sum("[1{c},2]", &model), Err(Error::UnknownGroupElement("c".into())));
    }

    #[test]
    fn whitespace_and_signs() {
        let a = parse_sum("  - 2 * [ 1 , 2 ]+[2,1] ").unwrap();
        assert_eq!(a.to_string(), "-2*[1,2] + [2,1]");
        assert!(parse_sum("0").unwrap().is_zero());
        assert!(parse_sum("[1,2] - [1,2]").unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_sum("[1,2") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse_sum("[1;2]") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse_sum("[1,1]"), Err(Error::DuplicateLeaf(1)));
        assert_eq!(parse_sum("[1{a},2]"), Err(Error::UnknownGroupElement("a".into())));
        assert!(parse_sum("[1,2] [2,1]").is_err());
        assert!(parse_sum("").is_err());
    }
}
