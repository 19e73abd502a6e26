use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{FiniteGroupoid, GroupoidSpec};
use crate::error::{Error, Result};

/// A validated functor between finite groupoids.
#[derive(Clone, Debug)]
pub struct GroupoidHom {
    name: String,
    source: Arc<FiniteGroupoid>,
    target: Arc<FiniteGroupoid>,
    on_objects: Vec<usize>,
    on_arrows: Vec<usize>,
}

fn bad(law: &str, witness: String) -> Error {
    Error::InvalidHomomorphism {
        law: law.to_string(),
        witness,
    }
}

impl GroupoidHom {
    pub fn new(
        name: &str,
        source: Arc<FiniteGroupoid>,
        target: Arc<FiniteGroupoid>,
        on_objects: Vec<usize>,
        on_arrows: Vec<usize>,
    ) -> Result<Self> {
        let (h, g) = (&*source, &*target);
        if on_objects.len() != h.num_objects() {
            return Err(bad(
                "object map totality",
                format!("{} of {} objects", on_objects.len(), h.num_objects()),
            ));
        }
        if on_arrows.len() != h.num_arrows() {
            return Err(bad(
                "arrow map totality",
                format!("{} of {} arrows", on_arrows.len(), h.num_arrows()),
            ));
        }
        if let Some(&x) = on_objects.iter().find(|&&x| x >= g.num_objects()) {
            return Err(bad("object map range", x.to_string()));
        }
        if let Some(&a) = on_arrows.iter().find(|&&a| a >= g.num_arrows()) {
            return Err(bad("arrow map range", a.to_string()));
        }
        for a in 0..h.num_arrows() {
            let fa = on_arrows[a];
            if g.src(fa) != on_objects[h.src(a)] || g.tgt(fa) != on_objects[h.tgt(a)] {
                return Err(bad("source/target preservation", h.arrow_name(a).to_string()));
            }
        }
        for x in 0..h.num_objects() {
            if on_arrows[h.unit(x)] != g.unit(on_objects[x]) {
                return Err(bad("unit preservation", h.object_name(x).to_string()));
            }
        }
        for a in 0..h.num_arrows() {
            for &b in h.arrows_into(h.src(a)) {
                let ab = h.mul(a, b);
                if on_arrows[ab] != g.mul(on_arrows[a], on_arrows[b]) {
                    return Err(bad(
                        "composition preservation",
                        format!("({}, {})", h.arrow_name(a), h.arrow_name(b)),
                    ));
                }
            }
        }
        Ok(GroupoidHom {
            name: name.to_string(),
            source,
            target,
            on_objects,
            on_arrows,
        })
    }

    /// Builds from name pairs (source id, target id).
    pub fn from_names(
        name: &str,
        source: Arc<FiniteGroupoid>,
        target: Arc<FiniteGroupoid>,
        objects: &[(String, String)],
        arrows: &[(String, String)],
    ) -> Result<Self> {
        let mut f0 = vec![usize::MAX; source.num_objects()];
        for (a, b) in objects {
            f0[source.object_id(a)?] = target.object_id(b)?;
        }
        let mut f1 = vec![usize::MAX; source.num_arrows()];
        for (a, b) in arrows {
            f1[source.arrow_id(a)?] = target.arrow_id(b)?;
        }
        if let Some(x) = f0.iter().position(|&v| v == usize::MAX) {
            return Err(bad("object map totality", source.object_name(x).to_string()));
        }
        if let Some(a) = f1.iter().position(|&v| v == usize::MAX) {
            return Err(bad("arrow map totality", source.arrow_name(a).to_string()));
        }
        Self::new(name, source, target, f0, f1)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<FiniteGroupoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroupoid> {
        &self.target
    }

    pub fn f0(&self, x: usize) -> usize {
        self.on_objects[x]
    }

    pub fn f1(&self, h: usize) -> usize {
        self.on_arrows[h]
    }

    pub fn on_objects(&self) -> &[usize] {
        &self.on_objects
    }

    pub fn on_arrows(&self) -> &[usize] {
        &self.on_arrows
    }

    pub fn lift_table(&self) -> LiftTable {
        let h = &*self.source;
        let mut map: HashMap<(usize, usize, usize), Vec<usize>> = HashMap::new();
        for a in 0..h.num_arrows() {
            map.entry((h.tgt(a), self.on_arrows[a], h.src(a))).or_default().push(a);
        }
        LiftTable { map }
    }
}

/// Inverse of `h -> (t h, F h, s h)` where it is single valued.
pub struct LiftTable {
    map: HashMap<(usize, usize, usize), Vec<usize>>,
}

impl LiftTable {
    /// The unique `h: y -> x` with `F h = g`.
    pub fn lift(&self, x: usize, g: usize, y: usize) -> Result<usize> {
        match self.map.get(&(x, g, y)).map(Vec::as_slice) {
            Some([h]) => Ok(*h),
            Some(hs) => Err(Error::NoUniqueLift(format!("{} arrows over ({x}, {g}, {y})", hs.len()))),
            None => Err(Error::NoUniqueLift(format!("no arrow over ({x}, {g}, {y})"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakEquivalenceReport {
    /// Object of the target not reached up to isomorphism.
    pub unreached: Option<String>,
    /// Failure of `F_!` to be bijective.
    pub not_fully_faithful: Option<String>,
}

impl WeakEquivalenceReport {
    pub fn pass(&self) -> bool {
        self.unreached.is_none() && self.not_fully_faithful.is_none()
    }
}

pub fn is_weak_equivalence(f: &GroupoidHom) -> WeakEquivalenceReport {
    let (h, g) = (&**f.source(), &**f.target());
    let image: HashSet<usize> = f.on_objects.iter().copied().collect();
    let unreached = (0..g.num_objects())
        .find(|&x| !g.arrows_into(x).iter().any(|&a| image.contains(&g.src(a))))
        .map(|x| g.object_name(x).to_string());

    let mut seen: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut not_fully_faithful = None;
    for a in 0..h.num_arrows() {
        let key = (h.tgt(a), f.on_arrows[a], h.src(a));
        if let Some(b) = seen.insert(key, a) {
            not_fully_faithful = Some(format!(
                "arrows {} and {} have the same image {} between the same objects",
                h.arrow_name(b),
                h.arrow_name(a),
                g.arrow_name(key.1)
            ));
            break;
        }
    }
    if not_fully_faithful.is_none() {
        'outer: for x in 0..h.num_objects() {
            for y in 0..h.num_objects() {
                for a in g.hom(f.f0(y), f.f0(x)) {
                    if !seen.contains_key(&(x, a, y)) {
                        not_fully_faithful = Some(format!(
                            "{} from {} to {} has no lift",
                            g.arrow_name(a),
                            h.object_name(y),
                            h.object_name(x)
                        ));
                        break 'outer;
                    }
                }
            }
        }
    }
    WeakEquivalenceReport {
        unreached,
        not_fully_faithful,
    }
}

/// The pullback `f^!G` along an object map `f: N -> G_0`, with the
/// canonical functor to `G`. Arrows are triples `(x, g, y)`, going from
/// `y` to `x`, with `f(x) = t(g)` and `s(g) = f(y)`.
pub fn pullback_groupoid(
    name: &str,
    g: &Arc<FiniteGroupoid>,
    objects: &[String],
    f: &[usize],
) -> Result<(Arc<FiniteGroupoid>, GroupoidHom)> {
    if objects.len() != f.len() {
        return Err(Error::DimensionMismatch {
            context: "pullback object map".into(),
            expected: (objects.len(), 0),
            found: (f.len(), 0),
        });
    }
    let mut triples = Vec::new();
    let mut index = HashMap::new();
    for x in 0..f.len() {
        for y in 0..f.len() {
            for a in g.hom(f[y], f[x]) {
                index.insert((x, a, y), triples.len());
                triples.push((x, a, y));
            }
        }
    }
    let id = |t: &(usize, usize, usize)| format!("{}:{}:{}", objects[t.0], g.arrow_name(t.1), objects[t.2]);
    let mut compose = Vec::new();
    for p in &triples {
        for q in &triples {
            if p.2 == q.0 {
                let r = (p.0, g.mul(p.1, q.1), q.2);
                compose.push(((id(p), id(q)), id(&triples[index[&r]])));
            }
        }
    }
    let spec = GroupoidSpec {
        name: name.to_string(),
        objects: objects.to_vec(),
        arrows: triples
            .iter()
            .map(|t| (id(t), objects[t.2].clone(), objects[t.0].clone()))
            .collect(),
        units: (0..f.len())
            .map(|x| (objects[x].clone(), id(&(x, g.unit(f[x]), x))))
            .collect(),
        compose,
        inverse: None,
    };
    let h = Arc::new(FiniteGroupoid::new(spec)?);
    let hom = GroupoidHom::new(
        &format!("{name}->{}", g.name()),
        h.clone(),
        g.clone(),
        f.to_vec(),
        triples.iter().map(|t| t.1).collect(),
    )?;
    Ok((h, hom))
}
