use serde::Serialize;

use super::cosimplicial::CosimplicialVectorSpace;
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::rational::Rational;
use crate::simplicial::{IdentityReport, IdentityViolation};

/// Dual of a simplicial left retract: `theta[0]: V^0 -> W` and
/// `theta[n]: V^n -> V^{n-1}`, with augmentation `L: W -> V^0`.
#[derive(Clone, Debug)]
pub struct CosimplicialRetract {
    pub augmentation: RationalMatrix,
    pub theta: Vec<RationalMatrix>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RetractReport {
    pub axioms: Vec<(String, bool)>,
    pub homotopy: Vec<(String, bool)>,
    /// Whether `θ^1 δ^0 - L θ^0 = Id` also holds; it does only when
    /// `L θ^0` vanishes.
    pub level0_minus_form: bool,
    pub first_failure: Option<String>,
    /// Augmented cohomology is certified zero in degrees `-1..=through`.
    pub certified_through: Option<i64>,
}

impl RetractReport {
    pub fn pass(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn diff_witness(lhs: &RationalMatrix, rhs: &RationalMatrix) -> Option<String> {
    lhs.first_difference(rhs)
        .map(|(r, c, a, b)| format!("entry ({r}, {c}): {a} vs {b}"))
}

/// Checks the retract axioms and the contracting-homotopy identities
/// `θ^0 L = Id`, `θ^1 δ^0 + L θ^0 = Id` and
/// `θ^{n+1} δ^n + δ^{n-1} θ^n = Id` through the truncation.
pub fn verify_retract(v: &CosimplicialVectorSpace, r: &CosimplicialRetract) -> Result<RetractReport> {
    let top = v.top().min(r.theta.len().saturating_sub(1));
    let l = &r.augmentation;
    let w = l.cols();
    let mul = |a: &RationalMatrix, b: &RationalMatrix| a.mul(b);
    let mut first_failure: Option<String> = None;
    let mut axioms = Vec::new();
    let mut homotopy = Vec::new();
    let mut push = |list: &mut Vec<(String, bool)>, name: String, lhs: RationalMatrix, rhs: RationalMatrix| {
        let w = diff_witness(&lhs, &rhs);
        if let (Some(w), None) = (&w, &first_failure) {
            first_failure = Some(format!("{name}: {w}"));
        }
        list.push((name, w.is_none()));
    };
    if l.rows() != v.dim(0) || r.theta[0].shape() != (w, v.dim(0)) {
        return Err(Error::DimensionMismatch {
            context: "retract level 0".into(),
            expected: (w, v.dim(0)),
            found: r.theta[0].shape(),
        });
    }
    push(
        &mut axioms,
        "theta0 L = Id".into(),
        mul(&r.theta[0], l)?,
        RationalMatrix::identity(w),
    );
    if top >= 1 {
        push(
            &mut axioms,
            "augmentation".into(),
            mul(v.coface(1, 0), l)?,
            mul(v.coface(1, 1), l)?,
        );
        push(
            &mut axioms,
            "theta1 phi1_1 = L theta0".into(),
            mul(&r.theta[1], v.coface(1, 1))?,
            mul(l, &r.theta[0])?,
        );
    }
    for n in 1..=top {
        push(
            &mut axioms,
            format!("theta{n} phi{n}_0 = Id"),
            mul(&r.theta[n], v.coface(n, 0))?,
            RationalMatrix::identity(v.dim(n - 1)),
        );
    }
    for n in 1..top {
        for i in 1..=n + 1 {
            push(
                &mut axioms,
                format!("theta{} phi{}_{i} = phi{n}_{} theta{n}", n + 1, n + 1, i - 1),
                mul(&r.theta[n + 1], v.coface(n + 1, i))?,
                mul(v.coface(n, i - 1), &r.theta[n])?,
            );
        }
    }

    let mut level0_minus_form = false;
    if top >= 1 {
        let d0 = v.differential(0);
        let a = mul(&r.theta[1], &d0)?;
        let b = mul(l, &r.theta[0])?;
        let id = RationalMatrix::identity(v.dim(0));
        level0_minus_form = a.sub(&b)? == id;
        push(&mut homotopy, "theta1 delta0 + L theta0 = Id".into(), a.add(&b)?, id);
    }
    for n in 1..top {
        let a = mul(&r.theta[n + 1], &v.differential(n))?;
        let b = mul(&v.differential(n - 1), &r.theta[n])?;
        push(
            &mut homotopy,
            format!("theta{} delta{n} + delta{} theta{n} = Id", n + 1, n - 1),
            a.add(&b)?,
            RationalMatrix::identity(v.dim(n)),
        );
    }
    let certified_through = first_failure.is_none().then(|| top as i64 - 1);
    Ok(RetractReport {
        axioms,
        homotopy,
        level0_minus_form,
        first_failure,
        certified_through,
    })
}

/// Partition-of-unity gluing of local retracts.
///
/// Each piece carries output weights per level: `weights[0]` on the basis
/// of `W` and `weights[n]` on the basis of `V^{n-1}`. The glued map is
/// `θ^n = Σ_a diag(w_a) θ^n_a`.
pub fn glue_retracts(pieces: &[(Vec<Vec<Rational>>, CosimplicialRetract)]) -> Result<CosimplicialRetract> {
    let (_, first) = pieces.first().ok_or_else(|| Error::Hypothesis("empty cover".into()))?;
    let levels = first.theta.len();
    let mut theta: Vec<RationalMatrix> = first
        .theta
        .iter()
        .map(|t| RationalMatrix::zeros(t.rows(), t.cols()))
        .collect();
    for (weights, piece) in pieces {
        if piece.theta.len() != levels || piece.augmentation != first.augmentation {
            return Err(Error::Hypothesis("cover pieces disagree on the augmentation".into()));
        }
        for n in 0..levels {
            theta[n] = theta[n].add(&piece.theta[n].scale_rows(&weights[n]))?;
        }
    }
    Ok(CosimplicialRetract {
        augmentation: first.augmentation.clone(),
        theta,
    })
}

/// Identity violations rendered for reports.
pub fn retract_violations(r: &RetractReport) -> IdentityReport {
    let mut out = IdentityReport::default();
    for (name, ok) in r.axioms.iter().chain(&r.homotopy) {
        out.checked += 1;
        if !ok {
            out.violations.push(IdentityViolation {
                identity: name.clone(),
                level: 0,
                indices: (0, 0),
                witness: r.first_failure.clone().unwrap_or_default(),
            });
        }
    }
    out
}
