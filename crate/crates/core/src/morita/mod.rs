//! Morita invariance along weak equivalences, checked through the double
//! complex of a homomorphism.

mod decalage;
mod fdouble;
mod verdict;

pub use decalage::{decalage_report, DecalageReport, ShiftRecord};
pub use fdouble::{nerve_map, FDouble, SectionPair};
pub use verdict::{
    certify_doubles, morita_check, Certificate, Certificates, CoefficientMode, DoublesReport, MoritaOptions,
    MoritaVerdict, QuasiIsoRecord,
};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coefficients::{GradedRepresentation, Representation};
    use crate::groupoid::{cyclic_delooping, pair, point, pullback_groupoid, GroupoidHom};
    use crate::linalg::RationalMatrix;
    use crate::simplicial::DEFAULT_LEVEL_BUDGET;

    fn opts(n: usize) -> MoritaOptions {
        MoritaOptions {
            max_degree: n,
            budget: DEFAULT_LEVEL_BUDGET,
        }
    }

    fn fshriek_bz2() -> GroupoidHom {
        let base = Arc::new(cyclic_delooping(2));
        pullback_groupoid("fbz2", &base, &["a".into(), "b".into()], &[0, 0])
            .unwrap()
            .1
    }

    fn sign(g: &Arc<crate::groupoid::FiniteGroupoid>) -> Representation {
        let vals: Vec<i64> = (0..g.num_arrows())
            .map(|a| if a == g.unit(0) { 1 } else { -1 })
            .collect();
        Representation::character(g, &vals).unwrap()
    }

    #[test]
    fn fshriek_functions_and_sign() {
        let f = fshriek_bz2();
        let triv = GradedRepresentation::single(Representation::trivial(f.target()));
        let v = morita_check(&f, &triv, CoefficientMode::Functions, opts(4)).unwrap();
        assert!(v.pass, "{:?}", v.first_failure);
        assert_eq!(v.target_cohomology, vec![1, 0]);
        assert_eq!(v.source_cohomology, vec![1, 0]);
        let s = GradedRepresentation::single(sign(f.target()));
        let v = morita_check(&f, &s, CoefficientMode::Representation, opts(4)).unwrap();
        assert!(v.pass, "{:?}", v.first_failure);
        assert_eq!(v.target_cohomology, vec![0, 0]);
    }

    #[test]
    fn doubles_level_sizes() {
        let g = Arc::new(cyclic_delooping(2));
        let id = GroupoidHom::new("id", g.clone(), g.clone(), vec![0], vec![0, 1]).unwrap();
        let fd = FDouble::build(&id, 3, DEFAULT_LEVEL_BUDGET).unwrap();
        for n in 0..=3 {
            for m in 0..=3 - n {
                assert_eq!(fd.size(n, m), 1 << (n + m + 1));
            }
        }
        let f = fshriek_bz2();
        let fd = FDouble::build(&f, 2, DEFAULT_LEVEL_BUDGET).unwrap();
        assert_eq!(fd.size(0, 0), 4);
    }

    #[test]
    fn point_into_pair_and_graded() {
        let g = Arc::new(pair(2));
        let (_, f) = pullback_groupoid("pt", &g, &["x".into()], &[0]).unwrap();
        let t = Representation::trivial(&g);
        for d in [RationalMatrix::identity(1), RationalMatrix::zeros(1, 1)] {
            let e = GradedRepresentation::new(vec![t.clone(), t.clone()], vec![vec![d.clone(), d.clone()]]).unwrap();
            let v = morita_check(&f, &e, CoefficientMode::Graded, opts(4)).unwrap();
            assert!(v.pass, "{:?}", v.first_failure);
        }
    }

    #[test]
    fn non_weak_equivalence_has_witness() {
        let g = Arc::new(cyclic_delooping(2));
        let p = Arc::new(point());
        let f = GroupoidHom::new("collapse", g.clone(), p.clone(), vec![0], vec![0, 0]).unwrap();
        let v = morita_check(
            &f,
            &GradedRepresentation::single(Representation::trivial(&p)),
            CoefficientMode::Functions,
            opts(4),
        )
        .unwrap();
        assert!(!v.pass && !v.hypothesis_met);
        let rho = v.certificates.0.iter().find(|c| c.name == "rho retraction").unwrap();
        assert!(rho.witness.as_ref().unwrap().contains("arrows over"));
    }
}
