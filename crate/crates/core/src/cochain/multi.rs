//! Bounded multicomplexes with pairwise commuting differentials.
//!
//! Direction `k` raises the `k`-th index. The total differential is
//! `sum_k (-1)^(a_0 + ... + a_{k-1}) d_k`, which is `d_V + (-1)^p d_H` for
//! a double complex indexed `(p, q)` and
//! `d_V + (-1)^a d_H + (-1)^(a+b) d_N` for a triple complex.

use std::collections::BTreeMap;

use super::complex::{Augmented, ChainMap, CochainComplex};
use crate::error::{Error, Result};
use crate::linalg::{BlockBuilder, RationalMatrix};
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct Multicomplex {
    arity: usize,
    total_top: usize,
    dims: BTreeMap<Vec<usize>, usize>,
    diffs: Vec<BTreeMap<Vec<usize>, RationalMatrix>>,
}

fn bump(idx: &[usize], k: usize) -> Vec<usize> {
    let mut v = idx.to_vec();
    v[k] += 1;
    v
}

fn sign(idx: &[usize], k: usize) -> Rational {
    if idx[..k].iter().sum::<usize>() % 2 == 0 {
        Rational::one()
    } else {
        Rational::from_int(-1)
    }
}

impl Multicomplex {
    /// `total_top` is the last total degree in which every block exists.
    pub fn new(arity: usize, total_top: usize) -> Self {
        Multicomplex {
            arity,
            total_top,
            dims: BTreeMap::new(),
            diffs: vec![BTreeMap::new(); arity],
        }
    }

    pub fn from_complex(c: &CochainComplex) -> Self {
        let mut m = Multicomplex::new(1, c.top());
        for n in 0..=c.top() {
            m.set_dim(vec![n], c.dim(n));
        }
        for n in 0..c.top() {
            m.set_diff(0, vec![n], c.d(n).clone()).expect("shapes");
        }
        m
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn total_top(&self) -> usize {
        self.total_top
    }

    pub fn set_dim(&mut self, idx: Vec<usize>, dim: usize) {
        debug_assert_eq!(idx.len(), self.arity);
        self.dims.insert(idx, dim);
    }

    pub fn set_diff(&mut self, dir: usize, idx: Vec<usize>, d: RationalMatrix) -> Result<()> {
        let to = bump(&idx, dir);
        let (Some(&src), Some(&dst)) = (self.dims.get(&idx), self.dims.get(&to)) else {
            return Err(Error::IndexOutOfRange {
                what: format!("block {idx:?} in direction {dir}"),
                index: dir,
                bound: self.arity,
            });
        };
        if d.shape() != (dst, src) {
            return Err(Error::DimensionMismatch {
                context: format!("differential {dir} at {idx:?}"),
                expected: (dst, src),
                found: d.shape(),
            });
        }
        self.diffs[dir].insert(idx, d);
        Ok(())
    }

    pub fn dim(&self, idx: &[usize]) -> Option<usize> {
        self.dims.get(idx).copied()
    }

    pub fn diff(&self, dir: usize, idx: &[usize]) -> Option<&RationalMatrix> {
        self.diffs[dir].get(idx)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&Vec<usize>, &usize)> {
        self.dims.iter()
    }

    /// Blocks of total degree `d` in lexicographic order, with offsets.
    pub fn layout(&self, d: usize) -> (Vec<(Vec<usize>, usize)>, usize) {
        let mut off = 0;
        let mut out = Vec::new();
        for (idx, &dim) in &self.dims {
            if idx.iter().sum::<usize>() == d {
                out.push((idx.clone(), off));
                off += dim;
            }
        }
        (out, off)
    }

    /// Each differential squares to zero and any two commute; returns the
    /// first failure.
    pub fn check(&self) -> Result<()> {
        let fail = |what: String| Error::NotChainMap {
            degree: -1,
            witness: what,
        };
        for k in 0..self.arity {
            for (idx, d) in &self.diffs[k] {
                if let Some(d2) = self.diffs[k].get(&bump(idx, k)) {
                    if !d2.mul(d)?.is_zero() {
                        return Err(fail(format!("direction {k} squares to nonzero at {idx:?}")));
                    }
                }
                for l in k + 1..self.arity {
                    let (Some(a), Some(b)) = (self.diffs[l].get(&bump(idx, k)), self.diffs[l].get(idx)) else {
                        continue;
                    };
                    let Some(c) = self.diffs[k].get(&bump(idx, l)) else {
                        continue;
                    };
                    if a.mul(d)? != c.mul(b)? {
                        return Err(fail(format!("directions {k} and {l} do not commute at {idx:?}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The total complex through `total_top`.
    pub fn total(&self) -> Result<CochainComplex> {
        let layouts: Vec<_> = (0..=self.total_top).map(|d| self.layout(d)).collect();
        let mut diffs = Vec::with_capacity(self.total_top);
        for d in 0..self.total_top {
            let (src, cols) = &layouts[d];
            let (dst, rows) = &layouts[d + 1];
            let pos: BTreeMap<&Vec<usize>, usize> = dst.iter().map(|(i, o)| (i, *o)).collect();
            let mut b = BlockBuilder::new(*rows, *cols);
            for (idx, off) in src {
                for k in 0..self.arity {
                    let to = bump(idx, k);
                    let Some(&row_off) = pos.get(&to) else { continue };
                    let m = self.diffs[k].get(idx).ok_or_else(|| Error::IndexOutOfRange {
                        what: format!("missing differential {k} at {idx:?}"),
                        index: k,
                        bound: self.arity,
                    })?;
                    b.place(row_off, *off, m, &sign(idx, k));
                }
            }
            diffs.push(b.build());
        }
        CochainComplex::new(layouts.iter().map(|l| l.1).collect(), diffs)
    }

    /// The complex along direction `dir` starting at `base` (whose `dir`
    /// entry must be zero), running while blocks exist.
    pub fn line(&self, dir: usize, base: &[usize]) -> Result<CochainComplex> {
        let mut idx = base.to_vec();
        let mut dims = Vec::new();
        let mut diffs = Vec::new();
        while let Some(&d) = self.dims.get(&idx) {
            if !dims.is_empty() {
                let prev = {
                    let mut p = idx.clone();
                    p[dir] -= 1;
                    p
                };
                diffs.push(
                    self.diffs[dir]
                        .get(&prev)
                        .cloned()
                        .ok_or_else(|| Error::IndexOutOfRange {
                            what: format!("missing differential {dir} at {prev:?}"),
                            index: dir,
                            bound: self.arity,
                        })?,
                );
            }
            dims.push(d);
            idx[dir] += 1;
        }
        CochainComplex::new(dims, diffs)
    }
}

/// A block map between multicomplexes: `(source index, target index, matrix)`.
pub type BlockMap = Vec<(Vec<usize>, Vec<usize>, RationalMatrix)>;

/// The map of total complexes induced by a block map that preserves total
/// degree, through the smaller of the two total tops.
pub fn total_chain_map(src: &Multicomplex, dst: &Multicomplex, blocks: &BlockMap) -> Result<ChainMap> {
    let top = src.total_top().min(dst.total_top());
    let mut maps = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let (sl, cols) = src.layout(d);
        let (dl, rows) = dst.layout(d);
        let spos: BTreeMap<&Vec<usize>, usize> = sl.iter().map(|(i, o)| (i, *o)).collect();
        let dpos: BTreeMap<&Vec<usize>, usize> = dl.iter().map(|(i, o)| (i, *o)).collect();
        let mut b = BlockBuilder::new(rows, cols);
        for (si, di, m) in blocks {
            if si.iter().sum::<usize>() != d {
                continue;
            }
            if di.iter().sum::<usize>() != d {
                return Err(Error::NotChainMap {
                    degree: d as i64,
                    witness: format!("block {si:?} -> {di:?} changes total degree"),
                });
            }
            let (Some(&c), Some(&r)) = (spos.get(si), dpos.get(di)) else {
                continue;
            };
            b.place(r, c, m, &Rational::one());
        }
        maps.push(b.build());
    }
    Ok(ChainMap { maps })
}

/// Acyclicity of augmented lines in one direction: for each base block of
/// `aug`, the line `W -> D^{base} -> D^{base + e} -> ...` must have zero
/// cohomology in degrees `-1..=min(through, line_top - 1)`.
pub fn augmented_line_report(
    target: &Multicomplex,
    dir: usize,
    aug: &[(Vec<usize>, RationalMatrix)],
    through: i64,
) -> Result<Vec<LineReport>> {
    let mut out = Vec::new();
    for (base, map) in aug {
        let line = target.line(dir, base)?;
        let a = Augmented {
            base_dim: map.cols(),
            map: map.clone(),
        };
        if line.square_zero_violation(Some(&a)).is_some() {
            return Err(Error::NotChainMap {
                degree: -1,
                witness: format!("augmentation at {base:?} is not killed by the differential"),
            });
        }
        let last = (line.top() as i64 - 1).min(through);
        let table = if last >= 0 {
            line.cohomology(Some(&a), last as usize)
        } else {
            line.cohomology(Some(&a), 0)
        };
        let checked: Vec<usize> = table.dims.iter().take((last + 2).max(1) as usize).copied().collect();
        out.push(LineReport {
            base: base.clone(),
            through: last.max(-1),
            dims: checked,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LineReport {
    pub base: Vec<usize>,
    /// Last degree checked; the first entry of `dims` is degree -1.
    pub through: i64,
    pub dims: Vec<usize>,
}

impl LineReport {
    pub fn exact(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn first_nonzero(&self) -> Option<i64> {
        self.dims.iter().position(|&d| d != 0).map(|k| k as i64 - 1)
    }
}
