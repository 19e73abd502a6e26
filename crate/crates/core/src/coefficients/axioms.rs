use serde::Serialize;

use super::rep::GradedRepresentation;
use super::twisted::{cochains, graded_cochains, graded_double_cochains};
use crate::cochain::Multicomplex;
use crate::error::Result;
use crate::simplicial::{DoubleSimplicial, IdentityReport, TruncatedNerve};

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub checked: usize,
    pub violations: usize,
    pub witness: Option<String>,
}

impl AxiomCheck {
    pub fn pass(&self) -> bool {
        self.violations == 0
    }

    fn from_identities(name: String, r: IdentityReport) -> Self {
        AxiomCheck {
            name,
            checked: r.checked,
            violations: r.violations.len(),
            witness: r
                .violations
                .first()
                .map(|v| format!("{} at level {} {:?}: {}", v.identity, v.level, v.indices, v.witness)),
        }
    }

    fn square_zero(name: &str, m: &Multicomplex) -> Result<Self> {
        let mut witness = m.check().err().map(|e| e.to_string());
        if witness.is_none() {
            let t = m.total()?;
            witness = t
                .square_zero_violation(None)
                .map(|(n, r, c)| format!("d{} d{n} has a nonzero entry at ({r}, {c})", n + 1));
        }
        Ok(AxiomCheck {
            name: name.to_string(),
            checked: m.total_top(),
            violations: usize::from(witness.is_some()),
            witness,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub groupoid: String,
    pub max_degree: usize,
    pub checks: Vec<AxiomCheck>,
    pub pass: bool,
}

/// Simplicial identities of the nerve and its shift double, cosimplicial
/// identities of the cochains in every internal degree, and square-zero
/// differentials on both total complexes.
pub fn axiom_report(nerve: &TruncatedNerve, coeffs: &GradedRepresentation) -> Result<AxiomReport> {
    let set = nerve.simplicial();
    let mut checks = vec![AxiomCheck::from_identities(
        "nerve simplicial identities".into(),
        set.check_identities(&|l, x| nerve.describe(l, x)),
    )];
    let ds = DoubleSimplicial::shift_double(set)?;
    checks.push(AxiomCheck::from_identities(
        "shift double simplicial identities".into(),
        ds.check_identities(&|n, m, x| format!("({n}, {m}) {}", nerve.describe(n + m + 1, x))),
    ));
    for k in 0..=coeffs.top() {
        let v = cochains(set, coeffs.degree(k));
        checks.push(AxiomCheck::from_identities(
            format!("cosimplicial identities, internal degree {k}"),
            v.check_identities(),
        ));
    }
    checks.push(AxiomCheck::square_zero(
        "cochain differential squares to zero",
        &graded_cochains(set, coeffs)?,
    )?);
    checks.push(AxiomCheck::square_zero(
        "shift double total differential squares to zero",
        &graded_double_cochains(&ds, coeffs)?,
    )?);
    let pass = checks.iter().all(AxiomCheck::pass);
    Ok(AxiomReport {
        groupoid: nerve.groupoid().name().to_string(),
        max_degree: nerve.top(),
        checks,
        pass,
    })
}
