//! Sections of a representation over targeted simplicial sets.
//!
//! A cochain at an element `x` takes values in the fiber over the target
//! of `x`. Pulling back along a map with transport `τ` multiplies by
//! `ρ(τ(x))`; along the nerve only the top face carries a transport.

use super::rep::{GradedRepresentation, Representation};
use crate::cochain::{CosimplicialRetract, CosimplicialVectorSpace, Multicomplex};
use crate::error::Result;
use crate::linalg::{BlockBuilder, RationalMatrix};
use crate::rational::Rational;
use crate::simplicial::{DoubleSimplicial, SimplicialRetract, SimplicialSet, TwistedMap};

/// Offsets of each element's fiber inside the space of sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    offsets: Vec<usize>,
}

impl Layout {
    pub fn new(targets: &[u32], rep: &Representation) -> Self {
        let mut offsets = Vec::with_capacity(targets.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &t in targets {
            acc += rep.fiber_dim(t as usize);
            offsets.push(acc);
        }
        Layout { offsets }
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().expect("nonempty")
    }

    pub fn offset(&self, x: usize) -> usize {
        self.offsets[x]
    }

    pub fn fiber(&self, x: usize) -> usize {
        self.offsets[x + 1] - self.offsets[x]
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Per-basis-vector weights from per-element weights.
    pub fn spread(&self, per_element: &[Rational]) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.dim());
        for (x, w) in per_element.iter().enumerate() {
            for _ in 0..self.fiber(x) {
                out.push(w.clone());
            }
        }
        out
    }
}

/// Matrix of the pullback `Γ(Y) -> Γ(X)` along `map: X -> Y`, with
/// transports acting through `rep`.
pub fn pullback_matrix(map: &TwistedMap, dom: &Layout, cod: &Layout, rep: &Representation) -> RationalMatrix {
    masked_pullback_matrix(map, None, dom, cod, rep)
}

/// As [`pullback_matrix`], with zero rows for elements outside `mask`.
pub fn masked_pullback_matrix(
    map: &TwistedMap,
    mask: Option<&[bool]>,
    dom: &Layout,
    cod: &Layout,
    rep: &Representation,
) -> RationalMatrix {
    let mut b = BlockBuilder::new(dom.dim(), cod.dim());
    let one = Rational::one();
    for (x, &y) in map.image.iter().enumerate() {
        if mask.is_some_and(|m| !m[x]) {
            continue;
        }
        let y = y as usize;
        let (r, c) = (dom.offset(x), cod.offset(y));
        match &map.transport {
            Some(t) => b.place(r, c, rep.action(t[x] as usize), &one),
            None => {
                debug_assert_eq!(dom.fiber(x), cod.fiber(y));
                b.place(r, c, &RationalMatrix::identity(dom.fiber(x)), &one)
            }
        }
    }
    b.build()
}

fn layouts(set: &SimplicialSet, rep: &Representation) -> Vec<Layout> {
    (0..=set.top()).map(|n| Layout::new(set.targets(n), rep)).collect()
}

/// The cosimplicial space of sections of `rep` over `set`.
pub fn cochains(set: &SimplicialSet, rep: &Representation) -> CosimplicialVectorSpace {
    let lay = layouts(set, rep);
    let top = set.top();
    let cofaces = (0..=top)
        .map(|n| {
            if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| pullback_matrix(set.face(n, i), &lay[n], &lay[n - 1], rep))
                    .collect()
            }
        })
        .collect();
    let codegens = (0..=top)
        .map(|n| {
            if n == top {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let s = TwistedMap::plain(set.degeneracy(n, i).to_vec());
                        pullback_matrix(&s, &lay[n], &lay[n + 1], rep)
                    })
                    .collect()
            }
        })
        .collect();
    CosimplicialVectorSpace::new(lay.iter().map(Layout::dim).collect(), cofaces, codegens).expect("shapes")
}

fn alternating(terms: Vec<RationalMatrix>, rows: usize, cols: usize) -> RationalMatrix {
    let mut acc = RationalMatrix::zeros(rows, cols);
    for (i, m) in terms.iter().enumerate() {
        let s = if i % 2 == 0 {
            Rational::one()
        } else {
            Rational::from_int(-1)
        };
        acc = acc.add_scaled(&s, m).expect("shapes");
    }
    acc
}

/// Layouts of a double simplicial set, indexed `[n][m]`.
pub fn double_layouts(ds: &DoubleSimplicial, rep: &Representation) -> Vec<Vec<Layout>> {
    (0..=ds.top())
        .map(|n| (0..=ds.top() - n).map(|m| Layout::new(ds.targets(n, m), rep)).collect())
        .collect()
}

/// The double complex of sections over a double simplicial set, indexed
/// `(n, m)` with `d_V` (direction 0) along columns and `d_H` along rows.
pub fn double_cochains(ds: &DoubleSimplicial, rep: &Representation) -> Result<Multicomplex> {
    let lay = double_layouts(ds, rep);
    let top = ds.top();
    let mut d = Multicomplex::new(2, top);
    for n in 0..=top {
        for m in 0..=top - n {
            d.set_dim(vec![n, m], lay[n][m].dim());
        }
    }
    for n in 0..=top {
        for m in 0..=top - n {
            if n + m == top {
                continue;
            }
            let dv = alternating(
                (0..=n + 1)
                    .map(|j| pullback_matrix(ds.col_face(n + 1, m, j), &lay[n + 1][m], &lay[n][m], rep))
                    .collect(),
                lay[n + 1][m].dim(),
                lay[n][m].dim(),
            );
            let dh = alternating(
                (0..=m + 1)
                    .map(|i| pullback_matrix(ds.row_face(n, m + 1, i), &lay[n][m + 1], &lay[n][m], rep))
                    .collect(),
                lay[n][m + 1].dim(),
                lay[n][m].dim(),
            );
            d.set_diff(0, vec![n, m], dv)?;
            d.set_diff(1, vec![n, m], dh)?;
        }
    }
    Ok(d)
}

/// Block-diagonal internal differential `E^k -> E^{k+1}` over elements.
pub fn internal_differential(targets: &[u32], grep: &GradedRepresentation, k: usize) -> RationalMatrix {
    let lo = Layout::new(targets, grep.degree(k));
    let hi = Layout::new(targets, grep.degree(k + 1));
    let mut b = BlockBuilder::new(hi.dim(), lo.dim());
    for (x, &t) in targets.iter().enumerate() {
        b.place(hi.offset(x), lo.offset(x), grep.d_n(k, t as usize), &Rational::one());
    }
    b.build()
}

/// Sections of a graded representation over a simplicial set, as a double
/// complex indexed `(n, k)`: nerve direction first, internal second.
pub fn graded_cochains(set: &SimplicialSet, grep: &GradedRepresentation) -> Result<Multicomplex> {
    let top = set.top();
    let kt = grep.top();
    let per_degree: Vec<CosimplicialVectorSpace> = (0..=kt).map(|k| cochains(set, grep.degree(k))).collect();
    let mut d = Multicomplex::new(2, top);
    for n in 0..=top {
        for (k, v) in per_degree.iter().enumerate() {
            d.set_dim(vec![n, k], v.dim(n));
        }
    }
    for n in 0..=top {
        for k in 0..=kt {
            if n < top {
                d.set_diff(0, vec![n, k], per_degree[k].differential(n))?;
            }
            if k < kt {
                d.set_diff(1, vec![n, k], internal_differential(set.targets(n), grep, k))?;
            }
        }
    }
    Ok(d)
}

/// Sections of a graded representation over a double simplicial set, as
/// a triple complex indexed `(n, m, k)`.
pub fn graded_double_cochains(ds: &DoubleSimplicial, grep: &GradedRepresentation) -> Result<Multicomplex> {
    let top = ds.top();
    let kt = grep.top();
    let per_degree: Vec<Multicomplex> = (0..=kt)
        .map(|k| double_cochains(ds, grep.degree(k)))
        .collect::<Result<_>>()?;
    let mut t = Multicomplex::new(3, top);
    for n in 0..=top {
        for m in 0..=top - n {
            for (k, dk) in per_degree.iter().enumerate() {
                t.set_dim(vec![n, m, k], dk.dim(&[n, m]).expect("block"));
            }
        }
    }
    for n in 0..=top {
        for m in 0..=top - n {
            for (k, dk) in per_degree.iter().enumerate() {
                for dir in 0..2 {
                    if let Some(mat) = dk.diff(dir, &[n, m]) {
                        t.set_diff(dir, vec![n, m, k], mat.clone())?;
                    }
                }
                if k < kt {
                    t.set_diff(2, vec![n, m, k], internal_differential(ds.targets(n, m), grep, k))?;
                }
            }
        }
    }
    Ok(t)
}

/// Dual of a simplicial retract: `θ^n` pulls back along `r^n` and `L`
/// along the augmentation.
pub fn retract_cochains(set: &SimplicialSet, r: &SimplicialRetract, rep: &Representation) -> CosimplicialRetract {
    let lay = layouts(set, rep);
    let base = Layout::new(&r.base_targets, rep);
    let augmentation = pullback_matrix(&r.augmentation, &lay[0], &base, rep);
    let mut theta = vec![pullback_matrix(&r.maps[0], &base, &lay[0], rep)];
    for n in 1..r.maps.len().min(set.top() + 1) {
        theta.push(pullback_matrix(&r.maps[n], &lay[n - 1], &lay[n], rep));
    }
    CosimplicialRetract { augmentation, theta }
}
