//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed.
//! Every criterion is exact; there are no numeric tolerances.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use jacobi_trees::exactla::{hermite_form, SparseIntMatrix};
use jacobi_trees::expr::parse_sum;
use jacobi_trees::freelie::{
    graft_sign_exponent, lyndon_words, normalized_words, omega_d, omega_d_annotated, witt_count,
};
use jacobi_trees::gropes::{class_in_lie, forest_ut, surjectivity_witness, GropeEncoding};
use jacobi_trees::relations::{
    as_relations, ihx_relations, lie_relations, stu2_relations, DecoratedContext, TreeContext,
};
use jacobi_trees::towers::{e1_page, layer_connectivity, E1Status};
use jacobi_trees::tree::{enumerate_trees, Sign};
use jacobi_trees::{DecoratedTreeSum, GroupModel, Tree, TreeSum};
use jacobi_trees_cli::dispatch;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn labels(n: u32) -> Vec<u32> {
    (1..=n).collect()
}

fn tree(text: &str) -> Tree {
    parse_sum(text).unwrap().keys().next().unwrap().clone()
}

fn lie_ranks() -> Check {
    for k in 1..=6u32 {
        let out = dispatch(["lie-rank", "--n", &k.to_string()]);
        let want = format!("rank={} torsion=[]\n", factorial(k as usize - 1));
        ensure(out.exit_code == 0 && out.stdout == want, || format!("k={k}: got {:?}", out.stdout))?;
    }
    Ok("ranks 1,1,2,6,24,120 for k=1..6, no torsion".into())
}

fn decorated_ranks() -> Check {
    for m in [2u32, 3] {
        let model = GroupModel::cyclic(m).unwrap();
        for n in 1..=3u32 {
            let ctx = DecoratedContext::decorated(&labels(n), &model, None).map_err(|e| e.to_string())?;
            let want = (m as usize).pow(n) * factorial(n as usize - 1);
            ensure(ctx.free_rank() == want && ctx.torsion().is_empty(), || {
                format!("Z/{m}, n={n}: rank {} torsion {:?}, want {want}", ctx.free_rank(), ctx.torsion())
            })?;
        }
    }
    Ok("Z/2: 2,4,16; Z/3: 3,9,54".into())
}

fn jacobi_trees() -> Check {
    let frozen = [0usize, 1, 1, 2, 3, 5];
    for (i, &want) in frozen.iter().enumerate() {
        let n = i as u32 + 1;
        let ctx = TreeContext::jacobi(n).map_err(|e| e.to_string())?;
        ensure(ctx.free_rank() == want && ctx.torsion().is_empty(), || {
            format!("n={n}: rank {} torsion {:?}, want {want}", ctx.free_rank(), ctx.torsion())
        })?;
    }
    Ok("ranks 0,1,1,2,3,5 for n=1..6, torsion-free".into())
}

fn omega_examples() -> Check {
    for d in 2..=4u32 {
        let leaf = omega_d(&tree("1"), d);
        ensure(leaf.to_string() == "+1", || format!("d={d}: leaf gives {leaf}"))?;
        let pair = omega_d(&tree("[1,2]"), d);
        ensure(pair.to_string() == "+[1,2]", || format!("d={d}: [1,2] gives {pair}"))?;
        let t = tree("[2,[3,1]]");
        let annotated = omega_d_annotated(&t, d).to_string();
        let e = d - 2;
        let want = if e == 0 { "[x2,[x3,x1]]".to_string() } else { format!("(-1)^{e}[x2,(-1)^{e}[x3,x1]]") };
        ensure(annotated == want, || format!("d={d}: got {annotated}, want {want}"))?;
        ensure(omega_d(&t, d).sign == Sign::Plus, || format!("d={d}: total sign is not +"))?;
    }
    Ok("three mappings for d=2,3,4".into())
}

fn sign_identity() -> Check {
    let mut splits = 0;
    for size in 2..=8u32 {
        let all = labels(size);
        for mask in 1..(1u32 << size) - 1 {
            let first: Vec<u32> = all.iter().copied().filter(|l| mask & (1 << (l - 1)) != 0).collect();
            let second: Vec<u32> = all.iter().copied().filter(|l| mask & (1 << (l - 1)) == 0).collect();
            for d in 2..=6u32 {
                let lhs = graft_sign_exponent(&first, &second, d) + graft_sign_exponent(&second, &first, d);
                let rhs = (first.len() * second.len()) as u64 * (d as u64 - 2);
                ensure(lhs % 2 == rhs % 2, || format!("{first:?}|{second:?} d={d}"))?;
            }
            splits += 1;
        }
    }
    Ok(format!("{splits} ordered splits, d=2..6"))
}

fn brute_lyndon(k: u32, len: usize) -> usize {
    let mut count = 0;
    let total = (k as usize).pow(len as u32);
    for mut code in 0..total {
        let mut w = Vec::with_capacity(len);
        for _ in 0..len {
            w.push(code % k as usize);
            code /= k as usize;
        }
        let smallest = (1..len).all(|r| {
            let rotated: Vec<usize> = w[r..].iter().chain(&w[..r]).copied().collect();
            w < rotated
        });
        if smallest {
            count += 1;
        }
    }
    count
}

fn hall_counts() -> Check {
    for k in 1..=3u32 {
        let words = lyndon_words(k, 8);
        for len in 1..=8usize {
            let found = words.iter().filter(|w| w.len() == len).count();
            let brute = brute_lyndon(k, len);
            let witt = witt_count(k as u64, len as u64) as usize;
            ensure(found == brute && brute == witt, || format!("k={k} l={len}: {found} vs {brute} vs {witt}"))?;
        }
    }
    for n in 1..=7u32 {
        let count = normalized_words(&labels(n), n as usize)
            .map_err(|e| e.to_string())?
            .iter()
            .filter(|w| w.len() == n as usize)
            .count();
        ensure(count == factorial(n as usize - 1), || format!("n={n}: {count} multilinear words"))?;
    }
    Ok("Lyndon counts k<=3, l<=8; multilinear (n-1)! for n<=7".into())
}

/// Commutator expansion of a tree into the free associative algebra.
fn expand(t: &Tree) -> HashMap<Vec<u32>, i64> {
    match t {
        Tree::Leaf(l) => HashMap::from([(vec![l.get()], 1)]),
        Tree::Graft(a, b) => {
            let (pa, pb) = (expand(a), expand(b));
            let mut out: HashMap<Vec<u32>, i64> = HashMap::new();
            for (ma, ca) in &pa {
                for (mb, cb) in &pb {
                    let ab: Vec<u32> = ma.iter().chain(mb).copied().collect();
                    let ba: Vec<u32> = mb.iter().chain(ma).copied().collect();
                    *out.entry(ab).or_default() += ca * cb;
                    *out.entry(ba).or_default() -= ca * cb;
                }
            }
            out
        }
    }
}

fn expansion_is_zero(s: &TreeSum) -> bool {
    let mut total: HashMap<Vec<u32>, i64> = HashMap::new();
    for (t, c) in s.iter() {
        let c = i64::try_from(c).expect("small coefficients");
        for (m, k) in expand(t) {
            *total.entry(m).or_default() += c * k;
        }
    }
    total.values().all(|v| *v == 0)
}

fn random_sum(rng: &mut ChaCha8Rng, trees: &[Tree]) -> TreeSum {
    let mut s = TreeSum::zero();
    for _ in 0..rng.random_range(1..=5) {
        s.add_term(trees.choose(rng).unwrap().clone(), BigInt::from(rng.random_range(-3i64..=3)));
    }
    s
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut equal_pairs = 0;
    for n in 1..=5u32 {
        let trees = enumerate_trees(&labels(n)).unwrap();
        let ctx = TreeContext::lie(&labels(n)).map_err(|e| e.to_string())?;
        let rels = ctx.relations().vectors.clone();
        for i in 0..1000 {
            let a = random_sum(&mut rng, &trees);
            let b = if i % 2 == 0 && !rels.is_empty() {
                let mut b = a.clone();
                for _ in 0..rng.random_range(1..=4) {
                    let r = rels.choose(&mut rng).unwrap();
                    b = &b + &r.scale(&BigInt::from(rng.random_range(-2i64..=2)));
                }
                b
            } else {
                random_sum(&mut rng, &trees)
            };
            let quotient = ctx.equal(&a, &b).map_err(|e| e.to_string())?;
            let oracle = expansion_is_zero(&(&a - &b));
            ensure(quotient == oracle, || format!("n={n}: {a} vs {b}: quotient {quotient}, oracle {oracle}"))?;
            equal_pairs += usize::from(oracle);
        }
    }
    Ok(format!("5000 pairs agree ({equal_pairs} equal)"))
}

fn towers() -> Check {
    let models = [GroupModel::Trivial, GroupModel::cyclic(2).unwrap()];
    let mut cells = 0;
    for model in &models {
        for d in [3u32, 4, 5] {
            let slope_max = 1 + 4 * (d as i64 - 2);
            let page = e1_page(4, slope_max + 1, d, model, None).map_err(|e| e.to_string())?;
            for n in 1..=4u32 {
                let conn = layer_connectivity(n, d).map_err(|e| e.to_string())?;
                ensure(conn == n as i64 * (d as i64 - 3) - 1, || format!("connectivity n={n} d={d}"))?;
                let ctx = DecoratedContext::decorated(&labels(n), model, None).map_err(|e| e.to_string())?;
                let order = model.order().unwrap();
                ensure(ctx.free_rank() == order.pow(n) * factorial(n as usize - 1), || format!("Lie_π({n})"))?;
                for e in page.iter().filter(|e| e.n == n) {
                    let vanishing = n as i64 * (d as i64 - 2);
                    let want = if e.t <= vanishing {
                        E1Status::Zero
                    } else if e.t == vanishing + 1 {
                        E1Status::FirstSlope
                    } else {
                        E1Status::Symbolic
                    };
                    ensure(e.status == want, || format!("n={n} t={} d={d}: {}", e.t, e.status))?;
                    if want == E1Status::FirstSlope {
                        let g = e.exact_group.as_ref().ok_or("first slope without a group")?;
                        ensure(g.free_rank == ctx.free_rank() && g.torsion == ctx.torsion(), || {
                            format!("n={n} d={d}: group {g}")
                        })?;
                    } else {
                        ensure(e.exact_group.is_none(), || format!("n={n} t={}: unexpected group", e.t))?;
                    }
                    cells += 1;
                }
            }
        }
    }
    Ok(format!("{cells} cells, n<=4, d=3,4,5, trivial and Z/2"))
}

fn gropes() -> Check {
    let trivial = GroupModel::Trivial;
    let id = trivial.identity();
    let grope = GropeEncoding::new(tree("[1,2]"), vec![Sign::Plus, Sign::Minus], vec![id.clone(), id]).unwrap();
    ensure(grope.ut().sign == Sign::Minus, || "degree-two grope sign".into())?;
    let lie2 = DecoratedContext::decorated(&[1, 2], &trivial, None).unwrap();
    let class = class_in_lie(&lie2, &forest_ut(&[grope])).map_err(|e| e.to_string())?;
    ensure(class == vec![BigInt::from(-1)], || format!("degree-two class {class:?}"))?;

    let z2 = GroupModel::cyclic(2).unwrap();
    let ctx = DecoratedContext::decorated(&[1, 2], &z2, None).unwrap();
    let basis = ctx.basis_elements().unwrap().to_vec();
    let mut forests = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        for sign in [1i64, -1] {
            let target = DecoratedTreeSum::term(b.clone(), BigInt::from(sign));
            let forest = surjectivity_witness(&target, &z2).map_err(|e| e.to_string())?;
            ensure(forest.ut() == target, || format!("witness for {b}"))?;
            let mut want = vec![BigInt::zero(); basis.len()];
            want[i] = BigInt::from(sign);
            ensure(class_in_lie(&ctx, &forest.ut()).map_err(|e| e.to_string())? == want, || format!("class of {b}"))?;
            forests.push(forest);
        }
    }
    for a in &forests {
        for b in &forests {
            let joined = a.concat(b).map_err(|e| e.to_string())?;
            ensure(joined.ut() == &a.ut() + &b.ut(), || "forest additivity".into())?;
        }
    }
    Ok(format!("degree-two sign -1; {} witnesses for Lie_Z/2(2); additivity", forests.len()))
}

fn hermite(trees: &[Tree], rows: &[TreeSum]) -> SparseIntMatrix {
    let index: HashMap<&Tree, usize> = trees.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let rows = rows.iter().map(|v| v.iter().map(|(t, c)| (index[t], c.clone())).collect()).collect();
    hermite_form(&SparseIntMatrix::from_rows(trees.len(), rows).unwrap())
}

fn well_defined() -> Check {
    let mut checked = 0;
    for n in 1..=5u32 {
        let l = labels(n);
        let lie = TreeContext::lie(&l).map_err(|e| e.to_string())?;
        let families = [as_relations(&l).unwrap(), ihx_relations(&l).unwrap()];
        for v in families.iter().flat_map(|f| &f.vectors) {
            ensure(lie.reduce(v).unwrap().iter().all(Zero::is_zero), || format!("{v} survives in Lie({n})"))?;
            checked += 1;
        }
        let at = TreeContext::jacobi(n).map_err(|e| e.to_string())?;
        let stu = stu2_relations(n).unwrap();
        for v in at.relations().vectors.iter().chain(&stu.vectors) {
            ensure(at.reduce(v).unwrap().iter().all(Zero::is_zero), || format!("{v} survives in A^T_{n}"))?;
            checked += 1;
        }
    }
    let z2 = GroupModel::cyclic(2).unwrap();
    for n in 1..=3u32 {
        let ctx = DecoratedContext::decorated(&labels(n), &z2, None).map_err(|e| e.to_string())?;
        for v in &ctx.relations().vectors {
            ensure(ctx.reduce(v).unwrap().iter().all(Zero::is_zero), || format!("{v} survives in Lie_Z/2({n})"))?;
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in 1..=4u32 {
        let trees = enumerate_trees(&labels(n)).unwrap();
        let stu = stu2_relations(n).unwrap().vectors;
        let mut full = lie_relations(&labels(n)).unwrap().vectors;
        full.extend(stu.iter().cloned());
        let (h_stu, h_full) = (hermite(&trees, &stu), hermite(&trees, &full));
        for _ in 0..5 {
            let (mut a, mut b) = (stu.clone(), full.clone());
            a.shuffle(&mut rng);
            b.shuffle(&mut rng);
            ensure(hermite(&trees, &a) == h_stu && hermite(&trees, &b) == h_full, || {
                format!("n={n}: order changes the Hermite form")
            })?;
        }
    }
    Ok(format!("{checked} relation vectors vanish; Hermite forms stable under 5 shuffles for n<=4"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Lie ranks", lie_ranks),
        ("decorated ranks", decorated_ranks),
        ("Jacobi trees", jacobi_trees),
        ("omega_d examples", omega_examples),
        ("sign identity", sign_identity),
        ("Hall counts", hall_counts),
        ("oracle equivalence", oracle_equivalence),
        ("tower tabulation", towers),
        ("grope map", gropes),
        ("relation well-definedness", well_defined),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
