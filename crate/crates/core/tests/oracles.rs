mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::{bar_cohomology, chains, dense, dense_mul, dense_rank};
use gpdcoh::coefficients::{cochains, Representation};
use gpdcoh::groupoid::{
    cyclic_delooping, pair, pullback_groupoid, s3_permutations, swap_action, symmetric_group_s3, FiniteGroupoid,
};
use gpdcoh::linalg::{rank, RationalMatrix};
use gpdcoh::simplicial::{nerve, DEFAULT_LEVEL_BUDGET};
use gpdcoh::Rational;

fn groupoids() -> Vec<Arc<FiniteGroupoid>> {
    let bz2 = Arc::new(cyclic_delooping(2));
    let (fbz2, _) = pullback_groupoid("fbz2", &bz2, &["a".into(), "b".into()], &[0, 0]).unwrap();
    vec![
        Arc::new(pair(2)),
        Arc::new(pair(3)),
        bz2,
        Arc::new(cyclic_delooping(3)),
        Arc::new(symmetric_group_s3()),
        Arc::new(swap_action()),
        fbz2,
    ]
}

fn sign_like(g: &Arc<FiniteGroupoid>, odd: impl Fn(&str) -> bool) -> Representation {
    let v: Vec<i64> = (0..g.num_arrows())
        .map(|a| if odd(g.arrow_name(a)) { -1 } else { 1 })
        .collect();
    Representation::character(g, &v).unwrap()
}

#[test]
fn nerve_levels_are_the_composable_chains() {
    for g in groupoids() {
        let top = if g.num_arrows() > 5 { 3 } else { 4 };
        let n = nerve(&g, top, DEFAULT_LEVEL_BUDGET).unwrap();
        for l in 1..=top {
            let brute: BTreeSet<Vec<usize>> = chains(&g, l).into_iter().collect();
            let ours: BTreeSet<Vec<usize>> = (0..n.size(l)).map(|x| n.tuple(l, x)).collect();
            assert_eq!(ours.len(), n.size(l), "{} level {l}: repeated tuples", g.name());
            assert_eq!(ours, brute, "{} level {l}", g.name());
        }
    }
}

#[test]
fn trivial_cohomology_matches_the_bar_complex() {
    for g in groupoids() {
        let top = if g.num_arrows() > 5 { 4 } else { 5 };
        let n = nerve(&g, top, DEFAULT_LEVEL_BUDGET).unwrap();
        let rep = Representation::trivial(&g);
        let ours = cochains(n.simplicial(), &rep).complex().cohomology(None, top - 2).dims;
        assert_eq!(ours, bar_cohomology(&rep, top - 2), "{}", g.name());
    }
}

#[test]
fn twisted_cohomology_matches_the_bar_complex() {
    let bz2 = Arc::new(cyclic_delooping(2));
    let bs3 = Arc::new(symmetric_group_s3());
    let swap = Arc::new(swap_action());
    let perms = s3_permutations();
    let standard = Representation::new(
        bs3.clone(),
        vec![3],
        (0..6)
            .map(|a| {
                let t: Vec<_> = (0..3).map(|i| (perms[a][i], i, Rational::one())).collect();
                RationalMatrix::from_triplets(3, 3, t).unwrap()
            })
            .collect(),
    )
    .unwrap();
    // a two-dimensional fiber twisted by a non-permutation matrix
    let shear = {
        let g = bz2.clone();
        let m = RationalMatrix::from_dense(
            2,
            2,
            &[
                vec![Rational::from_int(1), Rational::from_int(0)],
                vec![Rational::new(1, 2).unwrap(), Rational::from_int(-1)],
            ],
        )
        .unwrap();
        Representation::new(g, vec![2], vec![RationalMatrix::identity(2), m]).unwrap()
    };
    let cases = vec![
        (sign_like(&bz2, |a| a == "g1"), 5),
        (sign_like(&bs3, |a| a.starts_with('t')), 4),
        (standard, 4),
        (sign_like(&swap, |a| a.starts_with("s@")), 5),
        (shear, 5),
    ];
    for (rep, top) in cases {
        let n = nerve(rep.groupoid(), top, DEFAULT_LEVEL_BUDGET).unwrap();
        let ours = cochains(n.simplicial(), &rep).complex().cohomology(None, top - 2).dims;
        assert_eq!(ours, bar_cohomology(&rep, top - 2), "{}", rep.groupoid().name());
    }
}

#[test]
fn ranks_and_products_match_dense_elimination() {
    let g = Arc::new(pair(3));
    let n = nerve(&g, 4, DEFAULT_LEVEL_BUDGET).unwrap();
    let v = cochains(n.simplicial(), &Representation::trivial(&g));
    for k in 0..4 {
        let d = v.differential(k);
        assert_eq!(rank(&d), dense_rank(dense(&d)), "degree {k}");
        if k + 1 < 4 {
            let d2 = v.differential(k + 1);
            let p = d2.mul(&d).unwrap();
            let q = dense_mul(&dense(&d2), &dense(&d), d.rows(), d.cols());
            assert_eq!(dense(&p), q);
        }
    }
}
