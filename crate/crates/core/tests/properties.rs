mod common;

use std::sync::Arc;

use common::{bar_cohomology, dense, dense_mul, dense_rank};
use gpdcoh::coefficients::{cochains, GradedRepresentation, Representation};
use gpdcoh::groupoid::{cyclic_delooping, pair, pullback_groupoid, FiniteGroupoid, GroupoidHom};
use gpdcoh::io::{groupoid_doc, parse_document, to_json, Document, Library};
use gpdcoh::linalg::{rank, RationalMatrix};
use gpdcoh::morita::{morita_check, CoefficientMode, MoritaOptions};
use gpdcoh::simplicial::{nerve, DEFAULT_LEVEL_BUDGET};
use gpdcoh::Rational;
use num_rational::BigRational;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = (i64, i64)> {
    (-50i64..50, 1i64..20)
}

fn big(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RationalMatrix> {
    proptest::collection::vec(prop_oneof![3 => Just(0i64), 1 => -3i64..4], rows * cols).prop_map(move |v| {
        let t: Vec<_> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| **x != 0)
            .map(|(k, x)| (k / cols, k % cols, Rational::from_int(*x)))
            .collect();
        RationalMatrix::from_triplets(rows, cols, t).unwrap()
    })
}

/// The pullback of `pair(k)` or `BZ/n` along a random object map, with
/// the canonical functor down.
fn pulled_back() -> impl Strategy<Value = (Arc<FiniteGroupoid>, GroupoidHom)> {
    (0usize..2, 1usize..4, proptest::collection::vec(0usize..3, 1..3)).prop_map(|(kind, n, f)| {
        let base = Arc::new(if kind == 0 { pair(n) } else { cyclic_delooping(n) });
        let f: Vec<usize> = f.into_iter().map(|x| x % base.num_objects()).collect();
        let names: Vec<String> = (0..f.len()).map(|i| format!("x{i}")).collect();
        let (_, hom) = pullback_groupoid("pulled", &base, &names, &f).unwrap();
        (base, hom)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_ops_agree_with_bigrational(a in rational(), b in rational()) {
        let (x, y) = (Rational::new(a.0, a.1).unwrap(), Rational::new(b.0, b.1).unwrap());
        let (bx, by) = (big(a.0, a.1), big(b.0, b.1));
        prop_assert_eq!(BigRational::from(&(x.clone() + y.clone())), &bx + &by);
        prop_assert_eq!(BigRational::from(&(x.clone() * y.clone())), &bx * &by);
        prop_assert_eq!(BigRational::from(&(x.clone() - y.clone())), &bx - &by);
        let back: Rational = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn rank_matches_dense_elimination(m in (1usize..7, 1usize..7).prop_flat_map(|(r, c)| matrix(r, c))) {
        prop_assert_eq!(rank(&m), dense_rank(dense(&m)));
    }

    #[test]
    fn products_match_dense(a in matrix(3, 4), b in matrix(4, 2)) {
        let p = a.mul(&b).unwrap();
        prop_assert_eq!(dense(&p), dense_mul(&dense(&a), &dense(&b), 4, 2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn differentials_square_to_zero((_, hom) in pulled_back()) {
        let h = hom.source().clone();
        let n = nerve(&h, 4, DEFAULT_LEVEL_BUDGET).unwrap();
        let c = cochains(n.simplicial(), &Representation::trivial(&h)).complex();
        prop_assert!(c.square_zero_violation(None).is_none());
        let report = n.simplicial().check_identities(&|l, x| n.describe(l, x));
        prop_assert!(report.pass());
    }

    #[test]
    fn pullback_cohomology_matches_oracle_and_base((base, hom) in pulled_back()) {
        let h = hom.source().clone();
        // the sign character of the base pulled back, where one exists
        let rep = if base.num_objects() == 1 && base.num_arrows() == 2 {
            Representation::character(&base, &[1, -1]).unwrap()
        } else {
            Representation::trivial(&base)
        };
        let pulled = rep.pullback(&hom).unwrap();
        let n = nerve(&h, 4, DEFAULT_LEVEL_BUDGET).unwrap();
        let ours = cochains(n.simplicial(), &pulled).complex().cohomology(None, 2).dims;
        prop_assert_eq!(&ours, &bar_cohomology(&pulled, 2));
        prop_assert_eq!(ours, bar_cohomology(&rep, 2));
    }

    #[test]
    fn weak_equivalences_pass_the_verdict((base, hom) in pulled_back()) {
        let opts = MoritaOptions { max_degree: 3, budget: DEFAULT_LEVEL_BUDGET };
        let coeffs = GradedRepresentation::single(Representation::trivial(&base));
        let v = morita_check(&hom, &coeffs, CoefficientMode::Functions, opts).unwrap();
        prop_assert!(v.pass, "{:?}", v.first_failure);
    }

    #[test]
    fn groupoid_documents_round_trip((_, hom) in pulled_back()) {
        let doc = Document::Groupoid(groupoid_doc(hom.source()));
        let parsed = parse_document(&to_json(&doc), "generated").unwrap();
        prop_assert_eq!(&parsed, &doc);
        let lib = Library::from_documents(vec![parsed]).unwrap();
        let g = &lib.groupoids["pulled"];
        prop_assert_eq!(g.num_arrows(), hom.source().num_arrows());
    }
}
