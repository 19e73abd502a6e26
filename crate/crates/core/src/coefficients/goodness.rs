use serde::Serialize;

use super::rep::Representation;
use super::twisted::{cochains, retract_cochains};
use crate::cochain::{verify_retract, CosimplicialRetract, RetractReport};
use crate::error::Result;
use crate::simplicial::{TargetFamily, TruncatedNerve};

/// Outcome of lifting one target family to sections of a representation.
#[derive(Clone, Debug, Serialize)]
pub struct GoodnessReport {
    pub subset: Vec<String>,
    pub section: Vec<String>,
    pub retract: RetractReport,
}

impl GoodnessReport {
    pub fn pass(&self) -> bool {
        self.retract.pass()
    }
}

/// The lifted maps `(r^n)^#` of a target family, as a cosimplicial retract
/// of the sections over the left shift restricted to `U`.
pub fn goodness_lift(
    nerve: &TruncatedNerve,
    family: &TargetFamily,
    rep: &Representation,
) -> Result<(crate::cochain::CosimplicialVectorSpace, CosimplicialRetract)> {
    let (sub, _, r) = family.retract(nerve)?;
    let v = cochains(&sub, rep);
    let lifted = retract_cochains(&sub, &r, rep);
    Ok((v, lifted))
}

pub fn check_goodness(nerve: &TruncatedNerve, family: &TargetFamily, rep: &Representation) -> Result<GoodnessReport> {
    let g = &**nerve.groupoid();
    let (v, lifted) = goodness_lift(nerve, family, rep)?;
    let retract = verify_retract(&v, &lifted)?;
    let mut subset = Vec::new();
    let mut section = Vec::new();
    for x in 0..g.num_objects() {
        if let Some(a) = family.section(x) {
            subset.push(g.object_name(x).to_string());
            section.push(g.arrow_name(a).to_string());
        }
    }
    Ok(GoodnessReport {
        subset,
        section,
        retract,
    })
}

/// Every section of the target map over every subset of at most
/// `max_size` objects meeting each orbit.
pub fn target_families(nerve: &TruncatedNerve, max_size: usize) -> Result<Vec<TargetFamily>> {
    let g = &**nerve.groupoid();
    let n = g.num_objects();
    let orbit = g.orbits();
    let mut out = Vec::new();
    let mut subset: Vec<usize> = Vec::new();
    fn subsets(n: usize, start: usize, max: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if !cur.is_empty() {
            f(cur);
        }
        if cur.len() == max {
            return;
        }
        for x in start..n {
            cur.push(x);
            subsets(n, x + 1, max, cur, f);
            cur.pop();
        }
    }
    let mut err = None;
    subsets(n, 0, max_size, &mut subset, &mut |u: &[usize]| {
        let mut seen = vec![false; g.num_orbits()];
        for &x in u {
            seen[orbit[x]] = true;
        }
        if seen.iter().any(|s| !s) {
            return;
        }
        let choices: Vec<&[usize]> = u.iter().map(|&x| g.arrows_into(x)).collect();
        let mut pick = vec![0usize; u.len()];
        loop {
            let mut section = vec![None; n];
            for (k, &x) in u.iter().enumerate() {
                section[x] = Some(choices[k][pick[k]]);
            }
            match TargetFamily::new(g, section) {
                Ok(t) => out.push(t),
                Err(e) => {
                    err.get_or_insert(e);
                }
            }
            let mut k = 0;
            while k < u.len() {
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
            if k == u.len() {
                break;
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Runs [`check_goodness`] over all [`target_families`]; returns the number
/// checked and the failures.
pub fn search_goodness(
    nerve: &TruncatedNerve,
    rep: &Representation,
    max_size: usize,
) -> Result<(usize, Vec<GoodnessReport>)> {
    let families = target_families(nerve, max_size)?;
    let mut failures = Vec::new();
    for t in &families {
        let r = check_goodness(nerve, t, rep)?;
        if !r.pass() {
            failures.push(r);
        }
    }
    Ok((families.len(), failures))
}
