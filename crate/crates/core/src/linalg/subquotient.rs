use super::echelon::{image, kernel, Echelon, Insert};
use super::sparse::{RationalMatrix, SparseVec};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Cycles modulo boundaries in one degree, with chosen representatives.
///
/// Boundaries are inserted first, then cycles; the cycles that stay
/// independent become the representatives of the quotient basis.
pub struct SubquotientBasis {
    ambient: usize,
    cycles: RationalMatrix,
    boundaries: RationalMatrix,
    representatives: RationalMatrix,
    echelon: Echelon,
    rep_of_label: Vec<Option<usize>>,
}

impl SubquotientBasis {
    /// `cycles` and `boundaries` are spanning sets of subspaces of the
    /// ambient space with boundaries contained in cycles.
    pub fn new(cycles: RationalMatrix, boundaries: RationalMatrix) -> Result<Self> {
        let ambient = cycles.rows();
        if boundaries.rows() != ambient {
            return Err(Error::DimensionMismatch {
                context: "subquotient".into(),
                expected: (ambient, 0),
                found: (boundaries.rows(), 0),
            });
        }
        let (boundaries, _) = image(&boundaries);
        let mut echelon = Echelon::new(ambient, cycles.cols());
        for c in boundaries.columns() {
            echelon.insert(c, None);
        }
        let mut rep_of_label = vec![None; cycles.cols()];
        let mut reps = Vec::new();
        for (j, c) in cycles.columns().iter().enumerate() {
            if let Insert::Independent { .. } = echelon.insert(c, Some(j)) {
                rep_of_label[j] = Some(reps.len());
                reps.push(j);
            }
        }
        let representatives = cycles.select_columns(&reps);
        let out = SubquotientBasis {
            ambient,
            cycles,
            boundaries,
            representatives,
            echelon,
            rep_of_label,
        };
        // Every boundary must be a cycle.
        let check: Vec<SparseVec> = out.boundaries.columns().to_vec();
        let mut cyc = Echelon::new(ambient, 0);
        for c in out.cycles.columns() {
            cyc.insert(c, None);
        }
        for (j, b) in check.iter().enumerate() {
            if !cyc.contains(b) {
                return Err(Error::NotChainMap {
                    degree: -1,
                    witness: format!("boundary basis vector {j} is not a cycle"),
                });
            }
        }
        Ok(out)
    }

    /// Subquotient `ker d_out / im d_in` of the space between two maps.
    pub fn from_maps(ambient: usize, d_in: Option<&RationalMatrix>, d_out: Option<&RationalMatrix>) -> Result<Self> {
        let cycles = match d_out {
            Some(d) => kernel(d),
            None => RationalMatrix::identity(ambient),
        };
        let boundaries = match d_in {
            Some(d) => d.clone(),
            None => RationalMatrix::zeros(ambient, 0),
        };
        Self::new(cycles, boundaries)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.representatives.cols()
    }

    pub fn cycles(&self) -> &RationalMatrix {
        &self.cycles
    }

    pub fn boundaries(&self) -> &RationalMatrix {
        &self.boundaries
    }

    pub fn representatives(&self) -> &RationalMatrix {
        &self.representatives
    }

    /// Quotient coordinates of a cycle, or `None` if `v` is not a cycle.
    pub fn coordinates(&mut self, v: &SparseVec) -> Option<Vec<Rational>> {
        let red = self.echelon.reduce(v);
        if !red.remainder.is_zero() {
            return None;
        }
        let mut out = vec![Rational::zero(); self.dim()];
        for (label, c) in red.coords.entries() {
            if let Some(r) = self.rep_of_label[*label] {
                out[r] = c.clone();
            }
        }
        Some(out)
    }
}

/// Matrix of the map induced by `f` from `dom` to `cod`, checking that
/// cycles land in cycles and boundaries in boundaries.
pub fn induced_quotient_map(
    f: &RationalMatrix,
    dom: &SubquotientBasis,
    cod: &mut SubquotientBasis,
) -> Result<RationalMatrix> {
    if f.cols() != dom.ambient || f.rows() != cod.ambient {
        return Err(Error::DimensionMismatch {
            context: "induced map".into(),
            expected: (cod.ambient, dom.ambient),
            found: f.shape(),
        });
    }
    for (j, b) in dom.boundaries.columns().iter().enumerate() {
        let img = f.apply(b);
        match cod.coordinates(&img) {
            Some(c) if c.iter().all(Rational::is_zero) => {}
            _ => {
                return Err(Error::NotChainMap {
                    degree: -1,
                    witness: format!("image of boundary basis vector {j} is not a boundary"),
                })
            }
        }
    }
    let mut columns = Vec::with_capacity(dom.dim());
    for (j, z) in dom.representatives.columns().iter().enumerate() {
        let img = f.apply(z);
        let c = cod.coordinates(&img).ok_or_else(|| Error::NotChainMap {
            degree: -1,
            witness: format!("image of cycle representative {j} is not a cycle"),
        })?;
        columns.push(SparseVec::from_dense(&c));
    }
    Ok(RationalMatrix::from_columns(cod.dim(), columns))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, d: &[i64]) -> RationalMatrix {
        let data: Vec<Vec<Rational>> = d.chunks(cols).map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        RationalMatrix::from_dense(rows, cols, &data).unwrap()
    }

    #[test]
    fn circle_homology() {
        // 0 -> Q^3 --d--> Q^3 -> 0 with d the coboundary of a triangle.
        let d = m(3, 3, &[-1, 1, 0, 0, -1, 1, 1, 0, -1]);
        let mut h0 = SubquotientBasis::from_maps(3, None, Some(&d)).unwrap();
        let h1 = SubquotientBasis::from_maps(3, Some(&d), None).unwrap();
        assert_eq!(h0.dim(), 1);
        assert_eq!(h1.dim(), 1);
        let id = RationalMatrix::identity(3);
        let h0c = SubquotientBasis::from_maps(3, None, Some(&d)).unwrap();
        let ind = induced_quotient_map(&id, &h0c, &mut h0).unwrap();
        assert!(ind.is_identity());
    }

    #[test]
    fn non_chain_map_detected() {
        let d = m(2, 2, &[0, 0, 1, 0]);
        let dom = SubquotientBasis::from_maps(2, None, Some(&d)).unwrap();
        let mut cod = SubquotientBasis::from_maps(2, None, Some(&d)).unwrap();
        let swap = m(2, 2, &[0, 1, 1, 0]);
        assert!(induced_quotient_map(&swap, &dom, &mut cod).is_err());
    }
}
