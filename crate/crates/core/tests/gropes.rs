use jacobi_trees::expr::{parse_decorated_sum, parse_sum};
use jacobi_trees::gropes::{class_in_lie, forest_ut, project_at, surjectivity_witness, ForestEncoding, GropeEncoding};
use jacobi_trees::relations::{ihx_vectors, DecoratedContext, TreeContext};
use jacobi_trees::tree::{enumerate_trees, Sign};
use jacobi_trees::{DecoratedTree, DecoratedTreeSum, GroupModel, Tree, TreeSum};
use num_bigint::BigInt;
use num_traits::Zero;

fn tree(text: &str) -> Tree {
    parse_sum(text).unwrap().keys().next().unwrap().clone()
}

fn plain_sum(s: &TreeSum, model: &GroupModel) -> DecoratedTreeSum {
    s.map_keys(|t| DecoratedTree::constant(t.clone(), model.identity()))
}

#[test]
fn degree_two_grope_has_negative_sign() {
    let trivial = GroupModel::Trivial;
    let id = trivial.identity();
    let g = GropeEncoding::new(tree("[1,2]"), vec![Sign::Plus, Sign::Minus], vec![id.clone(), id]).unwrap();
    assert_eq!(g.ut().sign, Sign::Minus);
    let ctx = DecoratedContext::decorated(&[1, 2], &trivial, None).unwrap();
    assert_eq!(class_in_lie(&ctx, &forest_ut(&[g])).unwrap(), vec![BigInt::from(-1)]);
}

#[test]
fn decorated_degree_two_grope() {
    let z2 = GroupModel::cyclic(2).unwrap();
    let (e, x) = (z2.identity(), z2.parse_element("1").unwrap());
    let g = GropeEncoding::new(tree("[1,2]"), vec![Sign::Plus; 2], vec![e, x]).unwrap();
    let u = g.ut();
    assert_eq!(u.sign, Sign::Plus);
    let target = parse_decorated_sum("[1,2{1}]", &z2).unwrap();
    assert_eq!(forest_ut(&[g]), target);
    let ctx = DecoratedContext::decorated(&[1, 2], &z2, None).unwrap();
    let c = class_in_lie(&ctx, &target).unwrap();
    assert_eq!(c.len(), 4);
    assert_eq!(c.iter().filter(|v| !v.is_zero()).collect::<Vec<_>>(), vec![&BigInt::from(1)]);
}

#[test]
fn forests_are_additive() {
    let z2 = GroupModel::cyclic(2).unwrap();
    let a = surjectivity_witness(&parse_decorated_sum("[1,[2{1},3]] - [3,[1,2]]", &z2).unwrap(), &z2).unwrap();
    let b = surjectivity_witness(&parse_decorated_sum("2*[3,[1,2]] + [[1{1},2],3{1}]", &z2).unwrap(), &z2).unwrap();
    assert_eq!(a.concat(&b).unwrap().ut(), &a.ut() + &b.ut());
    let c = ForestEncoding::new(2, z2.clone(), vec![GropeEncoding::plain(tree("[1,2]"), z2.identity())]).unwrap();
    assert!(a.concat(&c).is_err());
}

#[test]
fn flipping_one_sign_negates_the_class() {
    let z2 = GroupModel::cyclic(2).unwrap();
    let ctx = DecoratedContext::decorated(&[1, 2, 3], &z2, None).unwrap();
    let x = z2.parse_element("1").unwrap();
    for t in enumerate_trees(&[1, 2, 3]).unwrap() {
        let g = GropeEncoding::new(t, vec![Sign::Plus; 3], vec![x.clone(), z2.identity(), x.clone()]).unwrap();
        let base = class_in_lie(&ctx, &forest_ut(std::slice::from_ref(&g))).unwrap();
        for label in 1..=3 {
            let flipped = class_in_lie(&ctx, &forest_ut(&[g.with_sign(label, Sign::Minus)])).unwrap();
            assert_eq!(flipped, base.iter().map(|v| -v).collect::<Vec<_>>());
        }
    }
}

#[test]
fn classes_survive_as_and_ihx_moves() {
    let trivial = GroupModel::Trivial;
    for n in 2..=4u32 {
        let labels: Vec<u32> = (1..=n).collect();
        let ctx = DecoratedContext::decorated(&labels, &trivial, None).unwrap();
        for t in enumerate_trees(&labels).unwrap() {
            let g = GropeEncoding::plain(t.clone(), trivial.identity());
            let class = class_in_lie(&ctx, &forest_ut(std::slice::from_ref(&g))).unwrap();
            // AS: swap children and flip one sign
            for path in t.internal_paths() {
                let moved = g.with_tree(t.swap_at(&path).unwrap()).unwrap().with_sign(1, Sign::Minus);
                assert_eq!(class_in_lie(&ctx, &forest_ut(&[moved])).unwrap(), class);
            }
            // IHX: replace the grope by a forest on the other two trees
            for v in ihx_vectors(&t) {
                let rest: TreeSum = &TreeSum::single(t.clone()) - &v;
                let forest = surjectivity_witness(&plain_sum(&rest, &trivial), &trivial).unwrap();
                assert_eq!(class_in_lie(&ctx, &forest.ut()).unwrap(), class);
            }
        }
    }
}

#[test]
fn witnesses_hit_every_basis_element() {
    let z2 = GroupModel::cyclic(2).unwrap();
    let ctx = DecoratedContext::decorated(&[1, 2], &z2, None).unwrap();
    let basis = ctx.basis_elements().unwrap();
    assert_eq!(basis.len(), 4);
    for (i, b) in basis.iter().enumerate() {
        for sign in [1, -1] {
            let target = DecoratedTreeSum::term(b.clone(), BigInt::from(sign));
            let forest = surjectivity_witness(&target, &z2).unwrap();
            assert_eq!(forest.ut(), target);
            let mut expected = vec![BigInt::zero(); 4];
            expected[i] = BigInt::from(sign);
            assert_eq!(class_in_lie(&ctx, &forest.ut()).unwrap(), expected);
            assert_eq!(ForestEncoding::from_json(&forest.to_json()).unwrap(), forest);
        }
    }
}

#[test]
fn projection_to_jacobi_trees() {
    let one = TreeContext::jacobi(1).unwrap();
    assert!(project_at(&one, &parse_sum("1").unwrap()).unwrap().iter().all(Zero::is_zero));
    let two = TreeContext::jacobi(2).unwrap();
    for text in ["[1,2]", "[2,1]"] {
        let c = project_at(&two, &parse_sum(text).unwrap()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].magnitude(), &1u32.into());
    }
}
