//! Representation coefficients and their twisted cochains.

mod axioms;
mod goodness;
mod rep;
mod twisted;

pub use axioms::{axiom_report, AxiomCheck, AxiomReport};
pub use goodness::{check_goodness, goodness_lift, search_goodness, target_families, GoodnessReport};
pub use rep::{GradedRepresentation, Representation};
pub use twisted::{
    cochains, double_cochains, double_layouts, graded_cochains, graded_double_cochains, internal_differential,
    masked_pullback_matrix, pullback_matrix, retract_cochains, Layout,
};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groupoid::{cyclic_delooping, pair, pullback_groupoid, symmetric_group_s3};
    use crate::linalg::RationalMatrix;
    use crate::rational::Rational;
    use crate::simplicial::{nerve, TargetFamily, DEFAULT_LEVEL_BUDGET};

    fn sign(g: &Arc<crate::groupoid::FiniteGroupoid>) -> Representation {
        let vals: Vec<i64> = (0..g.num_arrows())
            .map(|a| if a == g.unit(0) { 1 } else { -1 })
            .collect();
        Representation::character(g, &vals).unwrap()
    }

    #[test]
    fn sign_rep_has_no_cohomology() {
        let g = Arc::new(cyclic_delooping(2));
        let n = nerve(&g, 5, DEFAULT_LEVEL_BUDGET).unwrap();
        let c = cochains(n.simplicial(), &sign(&g)).complex();
        assert!(c.square_zero_violation(None).is_none());
        assert_eq!(c.cohomology(None, 3).dims, vec![0, 0, 0, 0]);
        let t = cochains(n.simplicial(), &Representation::trivial(&g)).complex();
        assert_eq!(t.cohomology(None, 3).dims, vec![1, 0, 0, 0]);
    }

    #[test]
    fn bad_character_is_rejected() {
        let g = Arc::new(cyclic_delooping(2));
        assert!(Representation::character(&g, &[1, 2]).is_err());
    }

    #[test]
    fn standard_rep_of_s3() {
        let g = Arc::new(symmetric_group_s3());
        let perms = crate::groupoid::s3_permutations();
        let action = (0..6)
            .map(|a| {
                let p = perms[a];
                let trip: Vec<_> = (0..3).map(|i| (p[i], i, Rational::one())).collect();
                RationalMatrix::from_triplets(3, 3, trip).unwrap()
            })
            .collect();
        let rep = Representation::new(g.clone(), vec![3], action).unwrap();
        let n = nerve(&g, 4, DEFAULT_LEVEL_BUDGET).unwrap();
        let v = cochains(n.simplicial(), &rep);
        assert!(v.check_identities().pass());
        // invariants of the permutation representation are one-dimensional
        assert_eq!(v.complex().cohomology(None, 2).dims, vec![1, 0, 0]);
    }

    #[test]
    fn graded_contractible_and_split() {
        let g = Arc::new(cyclic_delooping(2));
        let n = nerve(&g, 4, DEFAULT_LEVEL_BUDGET).unwrap();
        let t = Representation::trivial(&g);
        let id =
            GradedRepresentation::new(vec![t.clone(), t.clone()], vec![vec![RationalMatrix::identity(1)]]).unwrap();
        let zero = GradedRepresentation::new(vec![t.clone(), t], vec![vec![RationalMatrix::zeros(1, 1)]]).unwrap();
        let a = graded_cochains(n.simplicial(), &id).unwrap();
        a.check().unwrap();
        assert_eq!(a.total().unwrap().cohomology(None, 2).dims, vec![0, 0, 0]);
        let b = graded_cochains(n.simplicial(), &zero).unwrap();
        assert_eq!(b.total().unwrap().cohomology(None, 2).dims, vec![1, 1, 0]);
    }

    #[test]
    fn goodness_for_pair_and_pullback() {
        let g = Arc::new(pair(3));
        let n = nerve(&g, 3, DEFAULT_LEVEL_BUDGET).unwrap();
        let rep = Representation::trivial(&g);
        let (count, failures) = search_goodness(&n, &rep, 3).unwrap();
        assert!(count > 0);
        assert!(failures.is_empty());

        let base = Arc::new(cyclic_delooping(2));
        let (h, _) = pullback_groupoid("fbz2", &base, &["a".into(), "b".into()], &[0, 0]).unwrap();
        let n = nerve(&h, 3, DEFAULT_LEVEL_BUDGET).unwrap();
        let vals: Vec<i64> = (0..h.num_arrows()).map(|_| 1).collect();
        let rep = Representation::character(&h, &vals).unwrap();
        assert!(search_goodness(&n, &rep, 2).unwrap().1.is_empty());
    }

    #[test]
    fn twisted_lift_breaks_goodness() {
        let g = Arc::new(cyclic_delooping(2));
        let n = nerve(&g, 3, DEFAULT_LEVEL_BUDGET).unwrap();
        let rep = sign(&g);
        let t = TargetFamily::new(&g, vec![Some(g.unit(0))]).unwrap();
        let (v, mut lifted) = goodness_lift(&n, &t, &rep).unwrap();
        let flip = lifted.theta[1].scale(&Rational::from_int(-1));
        lifted.theta[1] = flip;
        let r = crate::cochain::verify_retract(&v, &lifted).unwrap();
        assert!(!r.pass());
        assert!(r.axioms.iter().any(|(name, ok)| name == "theta1 phi1_0 = Id" && !ok));
    }
}
