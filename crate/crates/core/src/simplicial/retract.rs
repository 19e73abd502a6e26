use super::nerve::TruncatedNerve;
use super::set::{IdentityReport, IdentityViolation, Side, SimplicialSet, TwistedMap};
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;

/// A left retract of an augmented simplicial set `p: X_0 -> Y`.
///
/// `maps[0]` is `r^0: Y -> X_0` and `maps[n]` is `r^n: X_{n-1} -> X_n`.
#[derive(Clone, Debug)]
pub struct SimplicialRetract {
    pub base_targets: Vec<u32>,
    pub augmentation: TwistedMap,
    pub maps: Vec<TwistedMap>,
}

/// Checks `p r^0 = id`, `d_1 r^1 = r^0 p`, `d_0 r^n = id` and
/// `d_i r^{n+1} = r^n d_{i-1}` for `1 <= i <= n+1`, on images.
pub fn verify_simplicial_retract(
    x: &SimplicialSet,
    r: &SimplicialRetract,
    describe: &dyn Fn(usize, usize) -> String,
) -> IdentityReport {
    let mut report = IdentityReport::default();
    let mut record = |name: &str, level: usize, idx: (usize, usize), lhs: &[u32], rhs: &[u32], wlevel: usize| {
        report.checked += 1;
        let bad = lhs.len() != rhs.len();
        if let Some(k) = lhs.iter().zip(rhs).position(|(a, b)| a != b).or(bad.then_some(0)) {
            report.violations.push(IdentityViolation {
                identity: name.to_string(),
                level,
                indices: idx,
                witness: if wlevel == usize::MAX {
                    format!("base element {k}")
                } else {
                    describe(wlevel, k)
                },
            });
        }
    };
    let comp = |outer: &[u32], inner: &[u32]| -> Vec<u32> { inner.iter().map(|&y| outer[y as usize]).collect() };
    let p = &r.augmentation.image;
    let top = x.top().min(r.maps.len().saturating_sub(1));
    if x.top() >= 1 {
        record(
            "augmentation",
            1,
            (0, 1),
            &comp(p, &x.face(1, 0).image),
            &comp(p, &x.face(1, 1).image),
            1,
        );
    }
    let id_base: Vec<u32> = (0..r.base_targets.len() as u32).collect();
    record("p r0 = id", 0, (0, 0), &comp(p, &r.maps[0].image), &id_base, usize::MAX);
    if top >= 1 {
        record(
            "d1 r1 = r0 p",
            1,
            (1, 1),
            &comp(&x.face(1, 1).image, &r.maps[1].image),
            &comp(&r.maps[0].image, p),
            0,
        );
    }
    for n in 1..=top {
        let id: Vec<u32> = (0..x.size(n - 1) as u32).collect();
        record(
            "d0 rn = id",
            n,
            (0, n),
            &comp(&x.face(n, 0).image, &r.maps[n].image),
            &id,
            n - 1,
        );
    }
    for n in 1..top {
        for i in 1..=n + 1 {
            record(
                "di rn+1 = rn di-1",
                n + 1,
                (i, n + 1),
                &comp(&x.face(n + 1, i).image, &r.maps[n + 1].image),
                &comp(&r.maps[n].image, &x.face(n, i - 1).image),
                n,
            );
        }
    }
    report
}

/// A section of the target map over a set `U` of objects, which extends
/// to the tuples ending in `U` by appending a correcting arrow at the
/// source end.
#[derive(Clone, Debug)]
pub struct TargetFamily {
    subset: Vec<bool>,
    section: Vec<Option<usize>>,
}

impl TargetFamily {
    pub fn new(g: &FiniteGroupoid, section: Vec<Option<usize>>) -> Result<Self> {
        if section.len() != g.num_objects() {
            return Err(Error::DimensionMismatch {
                context: "target family".into(),
                expected: (g.num_objects(), 0),
                found: (section.len(), 0),
            });
        }
        for (x, s) in section.iter().enumerate() {
            if let Some(a) = *s {
                if a >= g.num_arrows() || g.tgt(a) != x {
                    return Err(Error::MissingSection(g.object_name(x).to_string()));
                }
            }
        }
        Ok(TargetFamily {
            subset: section.iter().map(Option::is_some).collect(),
            section,
        })
    }

    pub fn subset(&self) -> &[bool] {
        &self.subset
    }

    pub fn section(&self, x: usize) -> Option<usize> {
        self.section[x]
    }

    /// `r^n` of a level-`n` element whose target lies in `U`, as an index at
    /// level `n + 1`.
    pub fn lift(&self, nerve: &TruncatedNerve, n: usize, x: usize) -> usize {
        let g = &**nerve.groupoid();
        let t = nerve.target(n, x);
        let r0 = self.section[t].expect("target in U");
        if n == 0 {
            return r0;
        }
        let bar = g.mul(g.inverse(nerve.product(n, x)), r0);
        nerve.snoc(n, x, bar)
    }

    /// The left shift by one restricted to `U`, and the retract of it along
    /// the target map given by the lifts.
    pub fn retract(&self, nerve: &TruncatedNerve) -> Result<(SimplicialSet, Vec<Vec<u32>>, SimplicialRetract)> {
        let shifted = nerve.simplicial().shift(Side::Left, 1)?;
        let (sub, embed) = shifted.restrict_to_targets(&self.subset)?;
        let base: Vec<u32> = (0..self.subset.len() as u32)
            .filter(|&x| self.subset[x as usize])
            .collect();
        let mut base_pos = vec![u32::MAX; self.subset.len()];
        for (i, &x) in base.iter().enumerate() {
            base_pos[x as usize] = i as u32;
        }
        let position = |level: usize| {
            let mut pos = vec![u32::MAX; nerve.size(level)];
            for (i, &x) in embed[level - 1].iter().enumerate() {
                pos[x as usize] = i as u32;
            }
            pos
        };
        // sub level m is nerve level m + 1
        let augmentation = TwistedMap::plain(
            embed[0]
                .iter()
                .map(|&a| base_pos[nerve.target(1, a as usize)])
                .collect(),
        );
        let mut maps = Vec::with_capacity(sub.top() + 1);
        let pos1 = position(1);
        maps.push(TwistedMap::plain(
            base.iter().map(|&x| pos1[self.lift(nerve, 0, x as usize)]).collect(),
        ));
        for m in 1..=sub.top() {
            let pos = position(m + 1);
            maps.push(TwistedMap::plain(
                embed[m - 1]
                    .iter()
                    .map(|&x| pos[self.lift(nerve, m, x as usize)])
                    .collect(),
            ));
        }
        let retract = SimplicialRetract {
            base_targets: base,
            augmentation,
            maps,
        };
        Ok((sub, embed, retract))
    }
}

/// The retraction of the nerve of a principal groupoid onto its orbit
/// set: `r^0` picks the first object of each orbit, `r^1(x)` is the unique
/// arrow into `x` from that object, and higher `r^n` append the arrow
/// closing the loop back to it.
pub fn principal_retract(nerve: &TruncatedNerve) -> Result<SimplicialRetract> {
    let g = &**nerve.groupoid();
    if let Some(x) = (0..g.num_objects()).find(|&x| g.isotropy_order(x) != 1) {
        return Err(Error::Hypothesis(format!(
            "isotropy at {} has order {}",
            g.object_name(x),
            g.isotropy_order(x)
        )));
    }
    let orbit = g.orbits();
    let n_orb = g.num_orbits();
    let mut rep = vec![usize::MAX; n_orb];
    for x in (0..g.num_objects()).rev() {
        rep[orbit[x]] = x;
    }
    let r1: Vec<usize> = (0..g.num_objects())
        .map(|x| g.hom(rep[orbit[x]], x).next().expect("same orbit"))
        .collect();
    let augmentation = TwistedMap {
        image: orbit.iter().map(|&o| o as u32).collect(),
        transport: Some(r1.iter().map(|&a| a as u32).collect()),
    };
    let mut maps = vec![TwistedMap::plain(rep.iter().map(|&x| x as u32).collect())];
    if nerve.top() >= 1 {
        maps.push(TwistedMap::plain(r1.iter().map(|&a| a as u32).collect()));
    }
    for n in 2..=nerve.top() {
        let image = (0..nerve.size(n - 1))
            .map(|x| {
                let prod = nerve.product(n - 1, x);
                let bar = g.mul(g.inverse(prod), r1[g.tgt(prod)]);
                nerve.snoc(n - 1, x, bar) as u32
            })
            .collect();
        maps.push(TwistedMap::plain(image));
    }
    Ok(SimplicialRetract {
        base_targets: rep.iter().map(|&x| x as u32).collect(),
        augmentation,
        maps,
    })
}
