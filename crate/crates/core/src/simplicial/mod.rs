//! Truncated simplicial sets over a groupoid: nerves, décalage shifts,
//! shift doubles and retractions.

mod double;
mod nerve;
mod retract;
mod set;

pub use double::DoubleSimplicial;
pub use nerve::{nerve, TruncatedNerve, DEFAULT_LEVEL_BUDGET};
pub use retract::{principal_retract, verify_simplicial_retract, SimplicialRetract, TargetFamily};
pub use set::{IdentityReport, IdentityViolation, Side, SimplicialSet, TwistedMap};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groupoid::{cyclic_delooping, pair, symmetric_group_s3};

    #[test]
    fn nerve_sizes_and_identities() {
        let g = Arc::new(symmetric_group_s3());
        let n = nerve(&g, 4, DEFAULT_LEVEL_BUDGET).unwrap();
        assert_eq!(n.simplicial().sizes(), &[1, 6, 36, 216, 1296]);
        let rep = n.simplicial().check_identities(&|l, x| n.describe(l, x));
        assert!(rep.pass(), "{:?}", rep.violations.first());
        assert!(rep.checked > 0);
    }

    #[test]
    fn tuple_roundtrip() {
        let g = Arc::new(pair(3));
        let n = nerve(&g, 3, DEFAULT_LEVEL_BUDGET).unwrap();
        for l in 1..=3 {
            for x in 0..n.size(l) {
                assert_eq!(n.index_of(&n.tuple(l, x)), Some(x));
            }
        }
    }

    #[test]
    fn budget_overflow() {
        let g = Arc::new(symmetric_group_s3());
        match nerve(&g, 5, 1000) {
            Err(crate::Error::Overflow { level, .. }) => assert_eq!(level, 4),
            _ => panic!("expected overflow"),
        }
    }

    #[test]
    fn shifts_and_double_satisfy_identities() {
        let g = Arc::new(pair(2));
        let n = nerve(&g, 4, DEFAULT_LEVEL_BUDGET).unwrap();
        for k in 1..=2 {
            for side in [Side::Left, Side::Right] {
                let s = n.simplicial().shift(side, k).unwrap();
                assert!(s.check_identities(&|_, x| x.to_string()).pass());
            }
        }
        let d = DoubleSimplicial::shift_double(n.simplicial()).unwrap();
        let rep = d.check_identities(&|a, b, x| format!("{a},{b},{x}"));
        assert!(rep.pass(), "{:?}", rep.violations.first());
    }

    #[test]
    fn principal_and_target_retracts() {
        let g = Arc::new(pair(3));
        let n = nerve(&g, 4, DEFAULT_LEVEL_BUDGET).unwrap();
        let r = principal_retract(&n).unwrap();
        assert!(verify_simplicial_retract(n.simplicial(), &r, &|l, x| n.describe(l, x)).pass());
        let bz = Arc::new(cyclic_delooping(2));
        assert!(principal_retract(&nerve(&bz, 2, 100).unwrap()).is_err());

        let section = vec![
            Some(g.arrow_id("p0_1").unwrap()),
            None,
            Some(g.arrow_id("p2_2").unwrap()),
        ];
        let tf = TargetFamily::new(&g, section).unwrap();
        let (sub, _, r) = tf.retract(&n).unwrap();
        assert!(verify_simplicial_retract(&sub, &r, &|l, x| format!("{l}:{x}")).pass());
    }
}
