use serde::Serialize;

use super::verdict::{Certificates, QuasiIsoRecord};
use crate::cochain::{quasi_iso_report, total_chain_map, verify_retract, Augmented, Multicomplex};
use crate::coefficients::{cochains, Representation};
use crate::error::{Error, Result};
use crate::simplicial::{Side, TruncatedNerve};

#[derive(Clone, Debug, Serialize)]
pub struct ShiftRecord {
    pub side: String,
    pub k: usize,
    pub trusted_through: i64,
    /// Degrees `0..=trusted_through`.
    pub cohomology: Vec<usize>,
    /// Degrees `-1..=trusted_through`, augmented by the standard coface.
    pub augmented: Vec<usize>,
    pub expected_h0: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecalageReport {
    pub groupoid: String,
    pub max_degree: usize,
    pub shifts: Vec<ShiftRecord>,
    pub certificates: Certificates,
    pub quasi_isomorphisms: Vec<QuasiIsoRecord>,
}

impl DecalageReport {
    pub fn pass(&self) -> bool {
        self.shifts.iter().all(|s| s.pass) && self.certificates.pass()
    }
}

/// Concentration of left and right shifts by each `k`, the standard
/// retracts of right shifts, and the standard augmentations into the shift
/// double as quasi-isomorphisms.
pub fn decalage_report(nerve: &TruncatedNerve, rep: &Representation, ks: &[usize]) -> Result<DecalageReport> {
    let v = cochains(nerve.simplicial(), rep);
    let top = v.top();
    let mut shifts = Vec::new();
    let mut certs = Certificates::default();
    let mut retract_fail = None;
    for &k in ks {
        if k == 0 || k + 2 > top {
            return Err(Error::IndexOutOfRange {
                what: "shift with a trusted degree".into(),
                index: k,
                bound: top.saturating_sub(2),
            });
        }
        let trusted = (top - k) as i64 - 2;
        for side in [Side::Left, Side::Right] {
            let s = v.shift(side, k)?;
            let c = s.complex();
            let aug = Augmented {
                base_dim: v.dim(k - 1),
                map: v.shift_augmentation(side, k),
            };
            let plain = c.cohomology(None, trusted as usize).dims;
            let augmented = c.cohomology(Some(&aug), trusted as usize).dims;
            let expected_h0 = v.dim(k - 1);
            let pass = plain.first() == Some(&expected_h0)
                && plain.iter().skip(1).all(|&d| d == 0)
                && augmented.iter().all(|&d| d == 0)
                && c.square_zero_violation(Some(&aug)).is_none();
            shifts.push(ShiftRecord {
                side: if side == Side::Left { "left" } else { "right" }.into(),
                k,
                trusted_through: trusted,
                cohomology: plain,
                augmented,
                expected_h0,
                pass,
            });
            if side == Side::Right {
                let r = verify_retract(&s, &v.right_shift_retract(k)?)?;
                if let (None, Some(w)) = (&retract_fail, r.first_failure) {
                    retract_fail = Some(format!("k = {k}: {w}"));
                }
            }
        }
    }
    certs.push("right shift standard retracts", retract_fail);
    certs.push("cosimplicial identities", {
        let r = v.check_identities();
        r.violations
            .first()
            .map(|x| format!("{} at level {} {:?}: {}", x.identity, x.level, x.indices, x.witness))
    });

    let mut records = Vec::new();
    if top >= 3 {
        let through = top - 3;
        let src = Multicomplex::from_complex(&v.complex());
        let dst = v.shift_double()?;
        let (src_t, dst_t) = (src.total()?, dst.total()?);
        for (name, blocks) in [
            ("L quasi-isomorphism", v.left_augmentation()),
            ("B quasi-isomorphism", v.bottom_augmentation()),
        ] {
            let r = total_chain_map(&src, &dst, &blocks).and_then(|f| quasi_iso_report(&f, &src_t, &dst_t, through));
            match r {
                Ok(degrees) => {
                    certs.push(
                        name,
                        degrees
                            .iter()
                            .find(|d| !d.is_iso())
                            .map(|d| format!("degree {} not invertible", d.degree)),
                    );
                    records.push(QuasiIsoRecord {
                        name: name.into(),
                        degrees,
                    });
                }
                Err(e) => certs.push(name, Some(e.to_string())),
            }
        }
    }
    Ok(DecalageReport {
        groupoid: nerve.groupoid().name().to_string(),
        max_degree: top,
        shifts,
        certificates: certs,
        quasi_isomorphisms: records,
    })
}
