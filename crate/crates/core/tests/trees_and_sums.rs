use std::collections::HashSet;

use jacobi_trees::expr::{parse_decorated_sum, parse_sum};
use jacobi_trees::group::FiniteGroup;
use jacobi_trees::tree::enumerate_trees;
use jacobi_trees::{GroupModel, Tree, TreeSum};
use num_bigint::BigInt;
use proptest::prelude::*;

// Count planar binary trees with n labelled leaves by splitting off the
// first child's leaf count, independently of the enumeration code.
fn count_trees(n: u64) -> u64 {
    fn shapes(n: u64) -> u64 {
        if n == 1 {
            return 1;
        }
        (1..n).map(|k| shapes(k) * shapes(n - k)).sum()
    }
    (1..=n).product::<u64>() * shapes(n)
}

#[test]
fn tree_counts() {
    for n in 1..=6u32 {
        let labels: Vec<u32> = (1..=n).collect();
        let trees = enumerate_trees(&labels).unwrap();
        assert_eq!(trees.len() as u64, count_trees(n as u64), "n = {n}");
        let distinct: HashSet<&Tree> = trees.iter().collect();
        assert_eq!(distinct.len(), trees.len());
        assert_eq!(trees, enumerate_trees(&labels).unwrap());
        assert!(trees.iter().all(|t| t.internal_nodes() == n as usize - 1));
    }
    assert_eq!(enumerate_trees(&[1, 2]).unwrap().len(), 2);
    assert_eq!(enumerate_trees(&[1, 2, 3]).unwrap().len(), 12);
}

#[test]
fn planar_order_is_data() {
    let a = parse_sum("[1,2]").unwrap();
    let b = parse_sum("[2,1]").unwrap();
    assert_ne!(a, b);
    assert_eq!(a.to_string(), "[1,2]");
}

fn check_group_laws(model: &GroupModel) {
    let elements = model.elements(None).unwrap();
    let e = model.identity();
    for a in &elements {
        assert_eq!(&model.mul(&e, a).unwrap(), a);
        assert_eq!(&model.mul(a, &e).unwrap(), a);
        assert_eq!(model.mul(a, &model.inverse(a).unwrap()).unwrap(), e);
        for b in &elements {
            for c in &elements {
                let left = model.mul(&model.mul(a, b).unwrap(), c).unwrap();
                let right = model.mul(a, &model.mul(b, c).unwrap()).unwrap();
                assert_eq!(left, right);
            }
        }
    }
}

#[test]
fn finite_group_laws() {
    for m in 1..=6 {
        check_group_laws(&GroupModel::cyclic(m).unwrap());
    }
    // S3 with 1,2 the rotations and 3,4,5 the reflections
    let table = vec![
        vec![0, 1, 2, 3, 4, 5],
        vec![1, 2, 0, 4, 5, 3],
        vec![2, 0, 1, 5, 3, 4],
        vec![3, 5, 4, 0, 2, 1],
        vec![4, 3, 5, 1, 0, 2],
        vec![5, 4, 3, 2, 1, 0],
    ];
    let s3 = GroupModel::Finite(FiniteGroup::new(table, vec![0, 2, 1, 3, 4, 5]).unwrap());
    check_group_laws(&s3);
    let json = s3.to_json();
    assert_eq!(GroupModel::from_json(&json).unwrap(), s3);
    assert_eq!(GroupModel::from_json(r#"{"kind":"free","generators":2}"#).unwrap(), GroupModel::free(2).unwrap());
    assert_eq!(GroupModel::from_json(r#"{"kind":"trivial"}"#).unwrap(), GroupModel::Trivial);
}

#[test]
fn free_words_reduce() {
    let f = GroupModel::free(2).unwrap();
    let w = f.parse_element("abBA").unwrap();
    assert!(w.is_identity());
    let ab = f.parse_element("ab").unwrap();
    assert_eq!(f.mul(&ab, &f.inverse(&ab).unwrap()).unwrap(), f.identity());
    assert_eq!(f.elements(Some(1)).unwrap().len(), 5);
    assert_eq!(f.elements(Some(2)).unwrap().len(), 17);
}

fn arb_tree(labels: Vec<u32>) -> impl Strategy<Value = Tree> {
    let trees = enumerate_trees(&labels).unwrap();
    (0..trees.len()).prop_map(move |i| trees[i].clone())
}

fn arb_sum() -> impl Strategy<Value = TreeSum> {
    (1u32..=4).prop_flat_map(|n| {
        let labels: Vec<u32> = (1..=n).collect();
        prop::collection::vec((arb_tree(labels), -5i64..=5), 0..6)
            .prop_map(|terms| terms.into_iter().map(|(t, c)| (t, BigInt::from(c))).collect())
    })
}

proptest! {
    #[test]
    fn print_parse_round_trip(s in arb_sum()) {
        let text = s.to_string();
        prop_assert_eq!(parse_sum(&text).unwrap(), s);
    }

    #[test]
    fn sum_arithmetic(a in arb_sum(), b in arb_sum()) {
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(a.scale(&BigInt::from(2)), &a + &a);
    }
}

#[test]
fn decorated_round_trip() {
    let z3 = GroupModel::cyclic(3).unwrap();
    let s = parse_decorated_sum("2*[1{1},[2,3{2}]] - [[1,2{1.1}],3]", &z3).unwrap();
    assert_eq!(s.to_string(), "2*[1{1},[2,3{2}]] - [[1,2{2}],3]");
    assert_eq!(parse_decorated_sum(&s.to_string(), &z3).unwrap(), s);
    let a = parse_decorated_sum("[1{1},2]", &z3).unwrap();
    let b = parse_sum("[1,2]").unwrap();
    assert_eq!(a.label_set().unwrap(), b.label_set().unwrap());
}
