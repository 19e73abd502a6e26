//! Finite groupoids given by explicit composition tables.

mod examples;
mod hom;

pub use examples::{
    action_groupoid, cyclic_delooping, delooping, pair, point, s3_permutations, swap_action, symmetric_group_s3,
};
pub use hom::{is_weak_equivalence, pullback_groupoid, GroupoidHom, LiftTable, WeakEquivalenceReport};

use std::collections::HashMap;

use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A validated finite groupoid. Objects and arrows are indexed densely in
/// input order; composition `compose(g, h)` means `g` after `h`.
#[derive(Clone, Debug)]
pub struct FiniteGroupoid {
    name: String,
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    unit: Vec<usize>,
    inverse: Vec<usize>,
    table: Vec<u32>,
    into: Vec<Vec<usize>>,
    out_of: Vec<Vec<usize>>,
    object_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

/// Raw description before validation; every id is a string.
#[derive(Clone, Debug, Default)]
pub struct GroupoidSpec {
    pub name: String,
    pub objects: Vec<String>,
    /// (id, src, tgt)
    pub arrows: Vec<(String, String, String)>,
    pub units: Vec<(String, String)>,
    /// ((g, h), g·h)
    pub compose: Vec<((String, String), String)>,
    pub inverse: Option<Vec<(String, String)>>,
}

fn violation(law: &str, witness: String) -> Error {
    Error::InvalidGroupoid {
        law: law.to_string(),
        witness,
    }
}

impl FiniteGroupoid {
    /// Validates `spec` against the groupoid axioms.
    pub fn new(spec: GroupoidSpec) -> Result<Self> {
        let mut object_index = HashMap::new();
        for (i, o) in spec.objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(Error::DuplicateId(o.clone()));
            }
        }
        let obj = |s: &str| {
            object_index
                .get(s)
                .copied()
                .ok_or_else(|| Error::DanglingReference(s.to_string()))
        };
        let mut arrow_index = HashMap::new();
        let mut arrows = Vec::with_capacity(spec.arrows.len());
        for (i, (id, s, t)) in spec.arrows.iter().enumerate() {
            if id.contains('|') {
                return Err(Error::Parse(format!("arrow id `{id}` contains `|`")));
            }
            if arrow_index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateId(id.clone()));
            }
            arrows.push(Arrow {
                id: id.clone(),
                src: obj(s)?,
                tgt: obj(t)?,
            });
        }
        let arr = |s: &str| {
            arrow_index
                .get(s)
                .copied()
                .ok_or_else(|| Error::DanglingReference(s.to_string()))
        };
        let n_obj = spec.objects.len();
        let n_arr = arrows.len();

        let mut unit = vec![usize::MAX; n_obj];
        for (o, a) in &spec.units {
            let (x, u) = (obj(o)?, arr(a)?);
            if arrows[u].src != x || arrows[u].tgt != x {
                return Err(violation("unit endpoints", format!("unit {a} of {o}")));
            }
            unit[x] = u;
        }
        if let Some(x) = unit.iter().position(|&u| u == usize::MAX) {
            return Err(violation("unit existence", format!("object {}", spec.objects[x])));
        }

        let mut table = vec![NONE; n_arr * n_arr];
        for ((g, h), k) in &spec.compose {
            let (g, h, k) = (arr(g)?, arr(h)?, arr(k)?);
            let w = || format!("({}, {})", arrows[g].id, arrows[h].id);
            if arrows[g].src != arrows[h].tgt {
                return Err(violation("composition domain", w()));
            }
            if arrows[k].src != arrows[h].src || arrows[k].tgt != arrows[g].tgt {
                return Err(violation("composition endpoints", w()));
            }
            let slot = &mut table[g * n_arr + h];
            if *slot != NONE && *slot as usize != k {
                return Err(violation("composition uniqueness", w()));
            }
            *slot = k as u32;
        }
        for g in 0..n_arr {
            for h in 0..n_arr {
                if arrows[g].src == arrows[h].tgt && table[g * n_arr + h] == NONE {
                    return Err(violation(
                        "composition closure",
                        format!("({}, {})", arrows[g].id, arrows[h].id),
                    ));
                }
            }
        }

        let mut into = vec![Vec::new(); n_obj];
        let mut out_of = vec![Vec::new(); n_obj];
        for (i, a) in arrows.iter().enumerate() {
            into[a.tgt].push(i);
            out_of[a.src].push(i);
        }
        let mut g = FiniteGroupoid {
            name: spec.name,
            objects: spec.objects,
            arrows,
            unit,
            inverse: vec![usize::MAX; n_arr],
            table,
            into,
            out_of,
            object_index,
            arrow_index,
        };
        g.check_units()?;
        g.check_associativity()?;
        match spec.inverse {
            Some(list) => {
                for (a, b) in &list {
                    let (a, b) = (g.arrow_id(a)?, g.arrow_id(b)?);
                    g.inverse[a] = b;
                }
                for a in 0..n_arr {
                    if g.inverse[a] == usize::MAX {
                        g.inverse[a] = g.search_inverse(a)?;
                    }
                    g.check_inverse(a, g.inverse[a])?;
                }
            }
            None => {
                for a in 0..n_arr {
                    g.inverse[a] = g.search_inverse(a)?;
                }
            }
        }
        Ok(g)
    }

    fn check_units(&self) -> Result<()> {
        for (g, a) in self.arrows.iter().enumerate() {
            if self.compose(g, self.unit[a.src]) != Some(g) || self.compose(self.unit[a.tgt], g) != Some(g) {
                return Err(violation("unit law", a.id.clone()));
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<()> {
        for h in 0..self.arrows.len() {
            for &g in &self.out_of[self.arrows[h].tgt] {
                let gh = self.compose(g, h).expect("closed");
                for &k in &self.into[self.arrows[h].src] {
                    let hk = self.compose(h, k).expect("closed");
                    if self.compose(gh, k) != self.compose(g, hk) {
                        return Err(violation(
                            "associativity",
                            format!("({}, {}, {})", self.arrows[g].id, self.arrows[h].id, self.arrows[k].id),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn search_inverse(&self, a: usize) -> Result<usize> {
        let Arrow { src, tgt, .. } = self.arrows[a];
        self.out_of[tgt]
            .iter()
            .copied()
            .find(|&b| self.arrows[b].tgt == src && self.compose(b, a) == Some(self.unit[src]))
            .filter(|&b| self.compose(a, b) == Some(self.unit[tgt]))
            .ok_or_else(|| violation("inverse existence", self.arrows[a].id.clone()))
    }

    fn check_inverse(&self, a: usize, b: usize) -> Result<()> {
        let Arrow { src, tgt, .. } = self.arrows[a];
        if self.compose(b, a) != Some(self.unit[src]) || self.compose(a, b) != Some(self.unit[tgt]) {
            return Err(violation(
                "inverse law",
                format!("({}, {})", self.arrows[a].id, self.arrows[b].id),
            ));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn arrow(&self, g: usize) -> &Arrow {
        &self.arrows[g]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_name(&self, g: usize) -> &str {
        &self.arrows[g].id
    }

    pub fn object_id(&self, name: &str) -> Result<usize> {
        self.object_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::DanglingReference(name.to_string()))
    }

    pub fn arrow_id(&self, name: &str) -> Result<usize> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::DanglingReference(name.to_string()))
    }

    pub fn src(&self, g: usize) -> usize {
        self.arrows[g].src
    }

    pub fn tgt(&self, g: usize) -> usize {
        self.arrows[g].tgt
    }

    pub fn unit(&self, x: usize) -> usize {
        self.unit[x]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    /// `g·h`, defined iff `src(g) = tgt(h)`.
    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        let k = self.table[g * self.arrows.len() + h];
        (k != NONE).then_some(k as usize)
    }

    /// Composition for pairs already known to be composable.
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.compose(g, h).expect("composable pair")
    }

    pub fn arrows_into(&self, x: usize) -> &[usize] {
        &self.into[x]
    }

    pub fn arrows_out_of(&self, x: usize) -> &[usize] {
        &self.out_of[x]
    }

    /// Arrows `x -> y`.
    pub fn hom(&self, x: usize, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_of[x].iter().copied().filter(move |&g| self.arrows[g].tgt == y)
    }

    /// Orbit index of each object; orbits numbered by first appearance.
    pub fn orbits(&self) -> Vec<usize> {
        let n = self.objects.len();
        let mut orbit = vec![usize::MAX; n];
        let mut next = 0;
        for x in 0..n {
            if orbit[x] != usize::MAX {
                continue;
            }
            for &g in &self.out_of[x] {
                orbit[self.arrows[g].tgt] = next;
            }
            next += 1;
        }
        orbit
    }

    pub fn num_orbits(&self) -> usize {
        self.orbits().iter().max().map_or(0, |m| m + 1)
    }

    pub fn isotropy_order(&self, x: usize) -> usize {
        self.hom(x, x).count()
    }

    /// Every isotropy group is trivial.
    pub fn is_principal(&self) -> bool {
        (0..self.objects.len()).all(|x| self.isotropy_order(x) == 1)
    }

    /// Description with the composition table spelled out, for round trips.
    pub fn to_spec(&self) -> GroupoidSpec {
        let n = self.arrows.len();
        let mut compose = Vec::new();
        for g in 0..n {
            for h in 0..n {
                if let Some(k) = self.compose(g, h) {
                    compose.push((
                        (self.arrows[g].id.clone(), self.arrows[h].id.clone()),
                        self.arrows[k].id.clone(),
                    ));
                }
            }
        }
        GroupoidSpec {
            name: self.name.clone(),
            objects: self.objects.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| (a.id.clone(), self.objects[a.src].clone(), self.objects[a.tgt].clone()))
                .collect(),
            units: (0..self.objects.len())
                .map(|x| (self.objects[x].clone(), self.arrows[self.unit[x]].id.clone()))
                .collect(),
            compose,
            inverse: Some(
                (0..n)
                    .map(|g| (self.arrows[g].id.clone(), self.arrows[self.inverse[g]].id.clone()))
                    .collect(),
            ),
        }
    }
}

/// Checks a raw description, returning the validated groupoid or the first
/// violated law with a witness.
pub fn validate_groupoid(spec: GroupoidSpec) -> Result<FiniteGroupoid> {
    FiniteGroupoid::new(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_structure() {
        let g = pair(3);
        assert_eq!(g.num_objects(), 3);
        assert_eq!(g.num_arrows(), 9);
        assert!(g.is_principal());
        assert_eq!(g.num_orbits(), 1);
        for a in 0..9 {
            assert_eq!(g.mul(a, g.inverse(a)), g.unit(g.tgt(a)));
        }
    }

    #[test]
    fn broken_associativity_is_reported() {
        let mut s = cyclic_delooping(3).to_spec();
        // swap two products so the table stays closed but not associative
        for e in s.compose.iter_mut() {
            if e.0 == ("g1".to_string(), "g1".to_string()) {
                e.1 = "g0".into();
            }
        }
        s.inverse = None;
        let err = FiniteGroupoid::new(s).unwrap_err();
        assert!(matches!(err, Error::InvalidGroupoid { .. }), "{err}");
    }

    #[test]
    fn missing_product_is_reported() {
        let mut s = pair(2).to_spec();
        s.compose.pop();
        match FiniteGroupoid::new(s).unwrap_err() {
            Error::InvalidGroupoid { law, .. } => assert_eq!(law, "composition closure"),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn wrong_inverse_is_reported() {
        let mut s = cyclic_delooping(3).to_spec();
        s.inverse = Some(vec![("g1".into(), "g1".into())]);
        match FiniteGroupoid::new(s).unwrap_err() {
            Error::InvalidGroupoid { law, .. } => assert_eq!(law, "inverse law"),
            e => panic!("{e}"),
        }
    }
}
