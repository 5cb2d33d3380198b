//! One-loop uni-trivalent diagrams and their STU resolutions.
//!
//! A diagram is stored as the cyclic sequence of branches hanging off its
//! loop. Going around the loop in sequence order, the cyclic order at every
//! loop vertex is (stem, forward edge, backward edge). Inside a branch,
//! `Node(a, b)` has cyclic order (edge towards the loop, a, b). Legs carry
//! the labels `0..u`, which are also their positions on the line.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use super::{Family, RelationSet};
use crate::error::{Error, Result};
use crate::expr::parse_raw_tree;
use crate::sum::TreeSum;
use crate::tree::{RawTree, Tree};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Leg(u32),
    Node(Box<Branch>, Box<Branch>),
}

impl Branch {
    pub fn node(a: Branch, b: Branch) -> Branch {
        Branch::Node(Box::new(a), Box::new(b))
    }

    pub fn legs(&self) -> Vec<u32> {
        match self {
            Branch::Leg(l) => vec![*l],
            Branch::Node(a, b) => {
                let mut v = a.legs();
                v.extend(b.legs());
                v
            }
        }
    }

    fn from_raw(raw: &RawTree) -> Branch {
        match raw {
            RawTree::Leaf(l) => Branch::Leg(*l),
            RawTree::Graft(a, b) => Branch::node(Branch::from_raw(a), Branch::from_raw(b)),
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Leg(l) => write!(f, "{l}"),
            Branch::Node(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// A uni-trivalent graph with exactly one loop and labelled legs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneLoopDiagram {
    branches: Vec<Branch>,
}

impl OneLoopDiagram {
    /// The loop must have at least two vertices and the legs must be labelled
    /// `0..u` bijectively.
    pub fn new(branches: Vec<Branch>) -> Result<Self> {
        if branches.len() < 2 {
            return Err(Error::InvalidDiagram("the loop needs at least two vertices".into()));
        }
        let legs: Vec<u32> = branches.iter().flat_map(Branch::legs).collect();
        let set: BTreeSet<u32> = legs.iter().copied().collect();
        if set.len() != legs.len() || set.iter().copied().ne(0..legs.len() as u32) {
            return Err(Error::InvalidDiagram(format!("legs must be labelled 0..{} exactly once", legs.len())));
        }
        Ok(OneLoopDiagram { branches })
    }

    /// Parse the printed form, e.g. `(0 [1,4] 3 5 2)`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidDiagram("expected `(branch branch ...)`".into()))?;
        let mut items = Vec::new();
        let mut depth = 0i32;
        let mut current = String::new();
        for c in inner.chars() {
            match c {
                '[' => depth += 1,
                ']' => depth -= 1,
                _ => {}
            }
            if c.is_whitespace() && depth == 0 {
                if !current.is_empty() {
                    items.push(std::mem::take(&mut current));
                }
            } else {
                current.push(c);
            }
        }
        if !current.is_empty() {
            items.push(current);
        }
        let branches = items.iter().map(|s| parse_raw_tree(s).map(|r| Branch::from_raw(&r))).collect::<Result<_>>()?;
        OneLoopDiagram::new(branches)
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn leg_count(&self) -> usize {
        self.branches.iter().map(|b| b.legs().len()).sum()
    }

    /// Number of trivalent vertices, equal to the number of legs.
    pub fn trivalent_count(&self) -> usize {
        self.branches.iter().map(|b| b.legs().len() - 1).sum::<usize>() + self.branches.len()
    }

    /// Legs that sit directly on a loop vertex.
    pub fn loop_legs(&self) -> Vec<u32> {
        self.branches
            .iter()
            .filter_map(|b| match b {
                Branch::Leg(l) => Some(*l),
                Branch::Node(..) => None,
            })
            .collect()
    }
}

impl fmt::Display for OneLoopDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.branches.iter().map(Branch::to_string).collect();
        write!(f, "({})", parts.join(" "))
    }
}

#[derive(Clone, Debug)]
enum Vertex {
    Leg(u32),
    Tri([usize; 3]),
    Removed,
}

/// Edge list plus vertices with cyclically ordered incident edges.
#[derive(Clone, Debug)]
struct Graph {
    ends: Vec<[usize; 2]>,
    vertices: Vec<Vertex>,
}

impl Graph {
    fn add_vertex(&mut self, v: Vertex) -> usize {
        self.vertices.push(v);
        self.vertices.len() - 1
    }

    fn add_edge(&mut self, a: usize, b: usize) -> usize {
        self.ends.push([a, b]);
        self.ends.len() - 1
    }

    fn other_end(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Hang a branch below vertex `parent`; returns the connecting edge.
    fn hang(&mut self, branch: &Branch, parent: usize) -> usize {
        match branch {
            Branch::Leg(l) => {
                let v = self.add_vertex(Vertex::Leg(*l));
                self.add_edge(parent, v)
            }
            Branch::Node(a, b) => {
                let v = self.add_vertex(Vertex::Removed);
                let up = self.add_edge(parent, v);
                let ea = self.hang(a, v);
                let eb = self.hang(b, v);
                self.vertices[v] = Vertex::Tri([up, ea, eb]);
                up
            }
        }
    }

    /// Tree seen when entering vertex `v` through edge `e`.
    fn subtree(&self, e: usize, v: usize) -> Tree {
        match &self.vertices[v] {
            Vertex::Leg(l) => Tree::leaf(*l).expect("the root leg is never reached again"),
            Vertex::Tri(es) => {
                let k = es.iter().position(|&x| x == e).expect("edge is incident");
                let (x, y) = (es[(k + 1) % 3], es[(k + 2) % 3]);
                Tree::graft_unchecked(self.subtree(x, self.other_end(x, v)), self.subtree(y, self.other_end(y, v)))
            }
            Vertex::Removed => unreachable!("removed vertices are detached"),
        }
    }
}

struct Built {
    graph: Graph,
    loop_vertices: Vec<usize>,
    forward: Vec<usize>,
    backward: Vec<usize>,
}

fn build(d: &OneLoopDiagram) -> Built {
    let m = d.branches.len();
    let mut g = Graph { ends: Vec::new(), vertices: Vec::new() };
    let loop_vertices: Vec<usize> = (0..m).map(|_| g.add_vertex(Vertex::Removed)).collect();
    let forward: Vec<usize> = (0..m).map(|i| g.add_edge(loop_vertices[i], loop_vertices[(i + 1) % m])).collect();
    let backward: Vec<usize> = (0..m).map(|i| forward[(i + m - 1) % m]).collect();
    for i in 0..m {
        let stem = g.hang(&d.branches[i], loop_vertices[i]);
        g.vertices[loop_vertices[i]] = Vertex::Tri([stem, forward[i], backward[i]]);
    }
    Built { graph: g, loop_vertices, forward, backward }
}

/// Resolve the loop vertex carrying leg `leg`: `T_parallel - T_crossed`.
///
/// The vertex is deleted and the loop opens into a path. The loose end of
/// the backward edge becomes leg `leg` and that of the forward edge leg
/// `leg + 1` in `T_parallel`; `T_crossed` swaps the two. Labels above `leg`
/// shift up by one, and both trees are rooted at leg 0.
pub fn stu_resolve(d: &OneLoopDiagram, leg: u32) -> Result<TreeSum> {
    let i = d.branches.iter().position(|b| *b == Branch::Leg(leg)).ok_or(Error::NotResolvable(leg))?;
    let built = build(d);
    let mut trees = Vec::new();
    for crossed in [false, true] {
        let mut g = built.graph.clone();
        for v in g.vertices.iter_mut() {
            if let Vertex::Leg(l) = v {
                if *l > leg {
                    *l += 1;
                }
            }
        }
        let v = built.loop_vertices[i];
        if let Vertex::Tri([stem, _, _]) = g.vertices[v] {
            let old_leg = g.other_end(stem, v);
            g.vertices[old_leg] = Vertex::Removed;
        }
        g.vertices[v] = Vertex::Removed;
        let (lb, lf) = if crossed { (leg + 1, leg) } else { (leg, leg + 1) };
        for (e, label) in [(built.backward[i], lb), (built.forward[i], lf)] {
            let new = g.add_vertex(Vertex::Leg(label));
            for end in g.ends[e].iter_mut() {
                if *end == v {
                    *end = new;
                }
            }
        }
        let root =
            g.vertices.iter().position(|x| matches!(x, Vertex::Leg(0))).expect("leg 0 survives every resolution");
        let e = (0..g.ends.len()).find(|&e| g.ends[e].contains(&root)).expect("legs have an edge");
        trees.push(g.subtree(e, g.other_end(e, root)));
    }
    let mut out = TreeSum::single(trees[0].clone());
    out.add_term(trees[1].clone(), BigInt::from(-1));
    Ok(out)
}

/// Planar binary trees on `labels`. With `canonical`, only the
/// representative whose first child holds the smallest label at every node
/// is kept, one per class up to swapping children.
pub fn planar_branches(labels: &[u32], canonical: bool) -> Vec<Branch> {
    match labels {
        [] => Vec::new(),
        [l] => vec![Branch::Leg(*l)],
        _ => {
            let n = labels.len();
            let mut out = Vec::new();
            for mask in 1..(1u32 << n) - 1 {
                if canonical && mask & 1 == 0 {
                    continue;
                }
                let (a, b): (Vec<u32>, Vec<u32>) = {
                    let mut a = Vec::new();
                    let mut b = Vec::new();
                    for (k, &l) in labels.iter().enumerate() {
                        if mask >> k & 1 == 1 {
                            a.push(l);
                        } else {
                            b.push(l);
                        }
                    }
                    (a, b)
                };
                for ta in planar_branches(&a, canonical) {
                    for tb in planar_branches(&b, canonical) {
                        out.push(Branch::node(ta.clone(), tb));
                    }
                }
            }
            out
        }
    }
}

/// Ordered partitions of `items` into nonempty blocks.
fn ordered_partitions(items: &[u32]) -> Vec<Vec<Vec<u32>>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let n = items.len();
    let mut out = Vec::new();
    for mask in 1..(1u32 << n) {
        let first: Vec<u32> = (0..n).filter(|k| mask >> k & 1 == 1).map(|k| items[k]).collect();
        let rest: Vec<u32> = (0..n).filter(|k| mask >> k & 1 == 0).map(|k| items[k]).collect();
        for mut tail in ordered_partitions(&rest) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

fn branch_choices(blocks: &[Vec<u32>]) -> Vec<Vec<Branch>> {
    let mut out = vec![Vec::new()];
    for block in blocks {
        let options = planar_branches(block, true);
        let mut next = Vec::new();
        for partial in &out {
            for b in &options {
                let mut v = partial.clone();
                v.push(b.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Diagrams with `n` legs whose root leg 0 sits alone on the loop.
pub fn stu2_diagrams(n: u32) -> Vec<OneLoopDiagram> {
    let rest: Vec<u32> = (1..n).collect();
    let mut out = Vec::new();
    for blocks in ordered_partitions(&rest) {
        if blocks.is_empty() {
            continue;
        }
        for choice in branch_choices(&blocks) {
            let mut branches = vec![Branch::Leg(0)];
            branches.extend(choice);
            out.push(OneLoopDiagram::new(branches).expect("valid by construction"));
        }
    }
    out
}

/// All diagrams with `n` legs, the branch holding leg 0 listed first.
pub fn one_loop_diagrams(n: u32) -> Vec<OneLoopDiagram> {
    let rest: Vec<u32> = (1..n).collect();
    let mut out = Vec::new();
    for mask in 0..(1u32 << rest.len()) {
        let mut first = vec![0];
        first.extend((0..rest.len()).filter(|k| mask >> k & 1 == 1).map(|k| rest[k]));
        let others: Vec<u32> = (0..rest.len()).filter(|k| mask >> k & 1 == 0).map(|k| rest[k]).collect();
        for blocks in ordered_partitions(&others) {
            if blocks.is_empty() {
                continue;
            }
            let mut all = vec![first.clone()];
            all.extend(blocks);
            for choice in branch_choices(&all) {
                out.push(OneLoopDiagram::new(choice).expect("valid by construction"));
            }
        }
    }
    out
}

fn chord_relation() -> RelationSet<Tree> {
    RelationSet::from_vectors(&[1], Family::Stu2, [TreeSum::single(Tree::leaf(1).expect("positive"))])
}

/// `STU(D, v_k) - STU(D, v_0)` for every diagram of [`stu2_diagrams`] and
/// every other leg `k` on its loop. In degree 1 the single relation kills
/// the one-leaf tree.
pub fn stu2_relations(n: u32) -> Result<RelationSet<Tree>> {
    if n == 0 {
        return Err(Error::EmptyLabelSet);
    }
    if n == 1 {
        return Ok(chord_relation());
    }
    let labels: Vec<u32> = (1..=n).collect();
    let mut vectors = Vec::new();
    for d in stu2_diagrams(n) {
        let at_root = stu_resolve(&d, 0)?;
        for k in d.loop_legs().into_iter().filter(|&k| k != 0) {
            vectors.push(&stu_resolve(&d, k)? - &at_root);
        }
    }
    Ok(RelationSet::from_vectors(&labels, Family::Stu2, vectors))
}

/// `STU(D, v_j) - STU(D, v_k)` for every one-loop diagram with `n` legs and
/// every pair of legs on its loop, without restricting the root.
pub fn generalized_stu2_relations(n: u32) -> Result<RelationSet<Tree>> {
    if n == 0 {
        return Err(Error::EmptyLabelSet);
    }
    if n == 1 {
        return Ok(chord_relation());
    }
    let labels: Vec<u32> = (1..=n).collect();
    let mut vectors = Vec::new();
    for d in one_loop_diagrams(n) {
        let legs = d.loop_legs();
        for (a, &j) in legs.iter().enumerate() {
            for &k in &legs[a + 1..] {
                vectors.push(&stu_resolve(&d, j)? - &stu_resolve(&d, k)?);
            }
        }
    }
    Ok(RelationSet::from_vectors(&labels, Family::Stu2, vectors))
}
