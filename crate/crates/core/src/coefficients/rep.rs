use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, GroupoidHom};
use crate::linalg::RationalMatrix;
use crate::rational::Rational;

/// A finite-dimensional representation: a vector space per object and an
/// invertible matrix `ρ(g): E_{s g} -> E_{t g}` per arrow.
#[derive(Clone, Debug)]
pub struct Representation {
    groupoid: Arc<FiniteGroupoid>,
    dims: Vec<usize>,
    action: Vec<RationalMatrix>,
}

fn bad(law: &str, witness: String) -> Error {
    Error::InvalidRepresentation {
        law: law.to_string(),
        witness,
    }
}

impl Representation {
    pub fn new(groupoid: Arc<FiniteGroupoid>, dims: Vec<usize>, action: Vec<RationalMatrix>) -> Result<Self> {
        let g = &*groupoid;
        if dims.len() != g.num_objects() {
            return Err(bad(
                "fiber totality",
                format!("{} of {} objects", dims.len(), g.num_objects()),
            ));
        }
        if action.len() != g.num_arrows() {
            return Err(bad(
                "action totality",
                format!("{} of {} arrows", action.len(), g.num_arrows()),
            ));
        }
        for a in 0..g.num_arrows() {
            let want = (dims[g.tgt(a)], dims[g.src(a)]);
            if action[a].shape() != want {
                return Err(Error::DimensionMismatch {
                    context: format!("matrix of arrow {}", g.arrow_name(a)),
                    expected: want,
                    found: action[a].shape(),
                });
            }
        }
        for x in 0..g.num_objects() {
            if !action[g.unit(x)].is_identity() {
                return Err(bad("unit acts by identity", g.object_name(x).to_string()));
            }
        }
        for a in 0..g.num_arrows() {
            for &b in g.arrows_into(g.src(a)) {
                let lhs = &action[g.mul(a, b)];
                if *lhs != action[a].mul(&action[b])? {
                    return Err(bad(
                        "multiplicativity",
                        format!("({}, {})", g.arrow_name(a), g.arrow_name(b)),
                    ));
                }
            }
        }
        Ok(Representation { groupoid, dims, action })
    }

    /// The one-dimensional trivial representation; its cochains are the
    /// plain function cochains.
    pub fn trivial(groupoid: &Arc<FiniteGroupoid>) -> Self {
        let one = RationalMatrix::identity(1);
        Representation {
            groupoid: groupoid.clone(),
            dims: vec![1; groupoid.num_objects()],
            action: vec![one; groupoid.num_arrows()],
        }
    }

    /// One-dimensional representation with the given scalars per arrow.
    pub fn character(groupoid: &Arc<FiniteGroupoid>, values: &[i64]) -> Result<Self> {
        let action = values
            .iter()
            .map(|&v| RationalMatrix::from_dense(1, 1, &[vec![Rational::from_int(v)]]))
            .collect::<Result<_>>()?;
        Self::new(groupoid.clone(), vec![1; groupoid.num_objects()], action)
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn fiber_dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn action(&self, g: usize) -> &RationalMatrix {
        &self.action[g]
    }

    /// `F^*E`: fiber `E_{F x}` and action `ρ(F h)`.
    pub fn pullback(&self, f: &GroupoidHom) -> Result<Representation> {
        if !Arc::ptr_eq(f.target(), &self.groupoid) && f.target().name() != self.groupoid.name() {
            return Err(Error::DanglingReference(f.target().name().to_string()));
        }
        let h = f.source();
        Ok(Representation {
            groupoid: h.clone(),
            dims: (0..h.num_objects()).map(|x| self.dims[f.f0(x)]).collect(),
            action: (0..h.num_arrows()).map(|a| self.action[f.f1(a)].clone()).collect(),
        })
    }
}

/// A bounded complex of representations `E^0 -> ... -> E^K` with
/// differentials `d_N` commuting with the action.
#[derive(Clone, Debug)]
pub struct GradedRepresentation {
    degrees: Vec<Representation>,
    d_n: Vec<Vec<RationalMatrix>>,
}

impl GradedRepresentation {
    /// `d_n[k][x]: E^k_x -> E^{k+1}_x`.
    pub fn new(degrees: Vec<Representation>, d_n: Vec<Vec<RationalMatrix>>) -> Result<Self> {
        if degrees.is_empty() || d_n.len() + 1 != degrees.len() {
            return Err(bad(
                "degree count",
                format!("{} degrees, {} differentials", degrees.len(), d_n.len()),
            ));
        }
        let g = degrees[0].groupoid().clone();
        if let Some(k) = degrees.iter().position(|r| r.groupoid().name() != g.name()) {
            return Err(bad("one groupoid for every degree", format!("degree {k}")));
        }
        for (k, dk) in d_n.iter().enumerate() {
            let (lo, hi) = (&degrees[k], &degrees[k + 1]);
            if dk.len() != g.num_objects() {
                return Err(bad("internal differential totality", format!("degree {k}")));
            }
            for x in 0..g.num_objects() {
                if dk[x].shape() != (hi.fiber_dim(x), lo.fiber_dim(x)) {
                    return Err(Error::DimensionMismatch {
                        context: format!("internal differential at degree {k}, object {}", g.object_name(x)),
                        expected: (hi.fiber_dim(x), lo.fiber_dim(x)),
                        found: dk[x].shape(),
                    });
                }
            }
            for a in 0..g.num_arrows() {
                let lhs = dk[g.tgt(a)].mul(lo.action(a))?;
                let rhs = hi.action(a).mul(&dk[g.src(a)])?;
                if lhs != rhs {
                    return Err(bad(
                        "internal differential is equivariant",
                        format!("degree {k}, arrow {}", g.arrow_name(a)),
                    ));
                }
            }
            if k + 1 < d_n.len() {
                for x in 0..g.num_objects() {
                    if !d_n[k + 1][x].mul(&dk[x])?.is_zero() {
                        return Err(bad(
                            "internal differential squares to zero",
                            format!("degree {k}, object {}", g.object_name(x)),
                        ));
                    }
                }
            }
        }
        Ok(GradedRepresentation { degrees, d_n })
    }

    /// Concentrated in degree 0.
    pub fn single(rep: Representation) -> Self {
        GradedRepresentation {
            degrees: vec![rep],
            d_n: Vec::new(),
        }
    }

    pub fn top(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degree(&self, k: usize) -> &Representation {
        &self.degrees[k]
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        self.degrees[0].groupoid()
    }

    pub fn d_n(&self, k: usize, x: usize) -> &RationalMatrix {
        &self.d_n[k][x]
    }

    pub fn pullback(&self, f: &GroupoidHom) -> Result<GradedRepresentation> {
        let degrees = self.degrees.iter().map(|r| r.pullback(f)).collect::<Result<Vec<_>>>()?;
        let h = f.source();
        let d_n = self
            .d_n
            .iter()
            .map(|dk| (0..h.num_objects()).map(|x| dk[f.f0(x)].clone()).collect())
            .collect();
        Ok(GradedRepresentation { degrees, d_n })
    }
}
