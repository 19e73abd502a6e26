use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{induced_quotient_map, rank, RationalMatrix, SubquotientBasis};

/// A bounded cochain complex `C^0 -> ... -> C^top`.
///
/// Degrees `top - 1` and `top` feel the truncation, so cohomology is
/// trusted only through `top - 2`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    dims: Vec<usize>,
    diffs: Vec<RationalMatrix>,
}

/// A complex together with a map `aug: W -> C^0` killed by `d^0`.
#[derive(Clone, Debug)]
pub struct Augmented {
    pub base_dim: usize,
    pub map: RationalMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    /// First reported degree: -1 for augmented complexes, else 0.
    pub first_degree: i64,
    pub dims: Vec<usize>,
    /// Last degree not affected by truncation.
    pub trusted_through: i64,
}

impl CohomologyTable {
    pub fn get(&self, degree: i64) -> Option<usize> {
        let k = degree - self.first_degree;
        (k >= 0).then(|| self.dims.get(k as usize).copied()).flatten()
    }

    /// Dimensions in trusted degrees only.
    pub fn trusted(&self) -> Vec<usize> {
        let n = (self.trusted_through - self.first_degree + 1).max(0) as usize;
        self.dims.iter().take(n).copied().collect()
    }

    /// First trusted degree with nonzero cohomology.
    pub fn first_nonzero_trusted(&self) -> Option<i64> {
        self.trusted()
            .iter()
            .position(|&d| d != 0)
            .map(|k| k as i64 + self.first_degree)
    }
}

impl CochainComplex {
    pub fn new(dims: Vec<usize>, diffs: Vec<RationalMatrix>) -> Result<Self> {
        if dims.is_empty() || diffs.len() + 1 != dims.len() {
            return Err(Error::DimensionMismatch {
                context: "cochain complex".into(),
                expected: (dims.len(), dims.len().saturating_sub(1)),
                found: (dims.len(), diffs.len()),
            });
        }
        for (n, d) in diffs.iter().enumerate() {
            if d.shape() != (dims[n + 1], dims[n]) {
                return Err(Error::DimensionMismatch {
                    context: format!("differential in degree {n}"),
                    expected: (dims[n + 1], dims[n]),
                    found: d.shape(),
                });
            }
        }
        Ok(CochainComplex { dims, diffs })
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d^n: C^n -> C^{n+1}`
    pub fn d(&self, n: usize) -> &RationalMatrix {
        &self.diffs[n]
    }

    pub fn trusted_through(&self) -> i64 {
        self.top() as i64 - 2
    }

    /// First degree where `d^{n+1} d^n` is nonzero, with an entry.
    pub fn square_zero_violation(&self, aug: Option<&Augmented>) -> Option<(i64, usize, usize)> {
        if let (Some(a), Some(d0)) = (aug, self.diffs.first()) {
            let p = d0.mul(&a.map).expect("shapes");
            if let Some((i, j, ..)) = p.first_difference(&RationalMatrix::zeros(p.rows(), p.cols())) {
                return Some((-1, i, j));
            }
        }
        for n in 0..self.diffs.len().saturating_sub(1) {
            let p = self.diffs[n + 1].mul(&self.diffs[n]).expect("shapes");
            if let Some((i, j, ..)) = p.first_difference(&RationalMatrix::zeros(p.rows(), p.cols())) {
                return Some((n as i64, i, j));
            }
        }
        None
    }

    /// Cohomology dimensions in degrees `first..=min(through, top)`.
    pub fn cohomology(&self, aug: Option<&Augmented>, through: usize) -> CohomologyTable {
        let last = through.min(self.top());
        let ranks: Vec<usize> = (0..=last.min(self.top().saturating_sub(1)))
            .map(|n| if n < self.diffs.len() { rank(&self.diffs[n]) } else { 0 })
            .collect();
        let r = |n: usize| {
            if n < self.diffs.len() && n < ranks.len() {
                ranks[n]
            } else {
                0
            }
        };
        let aug_rank = aug.map(|a| rank(&a.map)).unwrap_or(0);
        let mut dims = Vec::new();
        if let Some(a) = aug {
            dims.push(a.base_dim - aug_rank);
        }
        for n in 0..=last {
            let incoming = if n == 0 { aug_rank } else { r(n - 1) };
            dims.push(self.dims[n] - r(n) - incoming);
        }
        CohomologyTable {
            first_degree: if aug.is_some() { -1 } else { 0 },
            dims,
            trusted_through: self.trusted_through(),
        }
    }

    /// Cycles modulo boundaries in degree `n` (`-1` for the augmentation base).
    pub fn subquotient(&self, n: i64, aug: Option<&Augmented>) -> Result<SubquotientBasis> {
        if n == -1 {
            let a = aug.ok_or_else(|| Error::IndexOutOfRange {
                what: "degree".into(),
                index: 0,
                bound: 0,
            })?;
            return SubquotientBasis::from_maps(a.base_dim, None, Some(&a.map));
        }
        let n = n as usize;
        let d_in = if n == 0 {
            aug.map(|a| &a.map)
        } else {
            Some(&self.diffs[n - 1])
        };
        SubquotientBasis::from_maps(self.dims[n], d_in, self.diffs.get(n))
    }
}

/// Degreewise maps `f^n: C^n -> D^n`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub maps: Vec<RationalMatrix>,
}

impl ChainMap {
    /// `d_D f^n = f^{n+1} d_C` wherever both sides exist.
    pub fn validate(&self, dom: &CochainComplex, cod: &CochainComplex) -> Result<()> {
        let top = dom.top().min(cod.top()).min(self.maps.len() - 1);
        for n in 0..=top {
            if self.maps[n].shape() != (cod.dim(n), dom.dim(n)) {
                return Err(Error::DimensionMismatch {
                    context: format!("chain map in degree {n}"),
                    expected: (cod.dim(n), dom.dim(n)),
                    found: self.maps[n].shape(),
                });
            }
        }
        for n in 0..top {
            let lhs = cod.d(n).mul(&self.maps[n])?;
            let rhs = self.maps[n + 1].mul(dom.d(n))?;
            if let Some((i, j, a, b)) = lhs.first_difference(&rhs) {
                return Err(Error::NotChainMap {
                    degree: n as i64,
                    witness: format!("entry ({i}, {j}): {a} vs {b}"),
                });
            }
        }
        Ok(())
    }

    pub fn compose(&self, inner: &ChainMap) -> Result<ChainMap> {
        let n = self.maps.len().min(inner.maps.len());
        Ok(ChainMap {
            maps: (0..n)
                .map(|k| self.maps[k].mul(&inner.maps[k]))
                .collect::<Result<_>>()?,
        })
    }
}

/// Matrix of `H^n(f)` in the representative bases.
pub fn induced_cohomology_map(
    f: &ChainMap,
    dom: &CochainComplex,
    cod: &CochainComplex,
    n: usize,
) -> Result<RationalMatrix> {
    let d = dom.subquotient(n as i64, None)?;
    let mut c = cod.subquotient(n as i64, None)?;
    induced_quotient_map(&f.maps[n], &d, &mut c).map_err(|e| match e {
        Error::NotChainMap { witness, .. } => Error::NotChainMap {
            degree: n as i64,
            witness,
        },
        e => e,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeIso {
    pub degree: usize,
    pub dom_dim: usize,
    pub cod_dim: usize,
    pub rank: usize,
}

impl DegreeIso {
    pub fn is_iso(&self) -> bool {
        self.dom_dim == self.cod_dim && self.rank == self.dom_dim
    }
}

/// Per-degree invertibility of `H(f)` through degree `through`.
pub fn quasi_iso_report(
    f: &ChainMap,
    dom: &CochainComplex,
    cod: &CochainComplex,
    through: usize,
) -> Result<Vec<DegreeIso>> {
    f.validate(dom, cod)?;
    let last = through.min(dom.top()).min(cod.top());
    (0..=last)
        .map(|n| {
            let m = induced_cohomology_map(f, dom, cod, n)?;
            Ok(DegreeIso {
                degree: n,
                dom_dim: m.cols(),
                cod_dim: m.rows(),
                rank: rank(&m),
            })
        })
        .collect()
}
