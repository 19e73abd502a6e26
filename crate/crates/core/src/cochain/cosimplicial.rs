use super::complex::CochainComplex;
use super::multi::{BlockMap, Multicomplex};
use super::retract::CosimplicialRetract;
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::rational::Rational;
use crate::simplicial::{IdentityReport, IdentityViolation, Side};

/// A truncated cosimplicial vector space.
///
/// `coface(n, i)` is `φ^n_i: V^{n-1} -> V^n` for `1 <= n <= top`;
/// `codegeneracy(n, i)` is `σ^n_i: V^{n+1} -> V^n` for `n < top`.
#[derive(Clone, Debug)]
pub struct CosimplicialVectorSpace {
    dims: Vec<usize>,
    cofaces: Vec<Vec<RationalMatrix>>,
    codegens: Vec<Vec<RationalMatrix>>,
}

fn alt_sum(terms: impl Iterator<Item = (usize, RationalMatrix)>, shape: (usize, usize)) -> RationalMatrix {
    let mut acc = RationalMatrix::zeros(shape.0, shape.1);
    for (i, m) in terms {
        let s = if i % 2 == 0 {
            Rational::one()
        } else {
            Rational::from_int(-1)
        };
        acc = acc.add_scaled(&s, &m).expect("shapes");
    }
    acc
}

impl CosimplicialVectorSpace {
    pub fn new(
        dims: Vec<usize>,
        cofaces: Vec<Vec<RationalMatrix>>,
        codegens: Vec<Vec<RationalMatrix>>,
    ) -> Result<Self> {
        let top = dims.len() - 1;
        let err = |what: String| Error::DimensionMismatch {
            context: what,
            expected: (top, 0),
            found: (cofaces.len(), codegens.len()),
        };
        if cofaces.len() != top + 1 || codegens.len() != top + 1 {
            return Err(err("cosimplicial levels".into()));
        }
        for n in 0..=top {
            let nf = if n == 0 { 0 } else { n + 1 };
            let nd = if n == top { 0 } else { n + 1 };
            if cofaces[n].len() != nf || codegens[n].len() != nd {
                return Err(err(format!("operator count at level {n}")));
            }
            if cofaces[n].iter().any(|m| m.shape() != (dims[n], dims[n - 1])) {
                return Err(err(format!("coface shape at level {n}")));
            }
            if codegens[n].iter().any(|m| m.shape() != (dims[n], dims[n + 1])) {
                return Err(err(format!("codegeneracy shape at level {n}")));
            }
        }
        Ok(CosimplicialVectorSpace {
            dims,
            cofaces,
            codegens,
        })
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

    pub fn coface(&self, n: usize, i: usize) -> &RationalMatrix {
        &self.cofaces[n][i]
    }

    pub fn codegeneracy(&self, n: usize, i: usize) -> &RationalMatrix {
        &self.codegens[n][i]
    }

    /// `δ^n = Σ_{i=0}^{n+1} (-1)^i φ^{n+1}_i : V^n -> V^{n+1}`
    pub fn differential(&self, n: usize) -> RationalMatrix {
        alt_sum(
            (0..=n + 1).map(|i| (i, self.cofaces[n + 1][i].clone())),
            (self.dims[n + 1], self.dims[n]),
        )
    }

    pub fn complex(&self) -> CochainComplex {
        CochainComplex::new(
            self.dims.clone(),
            (0..self.top()).map(|n| self.differential(n)).collect(),
        )
        .expect("shapes")
    }

    /// Cosimplicial décalage by `k`.
    pub fn shift(&self, side: Side, k: usize) -> Result<Self> {
        if k > self.top() {
            return Err(Error::IndexOutOfRange {
                what: "shift".into(),
                index: k,
                bound: self.top(),
            });
        }
        let top = self.top() - k;
        let off = |i: usize| if side == Side::Left { i } else { k + i };
        let cofaces = (0..=top)
            .map(|n| {
                if n == 0 {
                    Vec::new()
                } else {
                    (0..=n).map(|i| self.cofaces[k + n][off(i)].clone()).collect()
                }
            })
            .collect();
        let codegens = (0..=top)
            .map(|n| {
                if n == top {
                    Vec::new()
                } else {
                    (0..=n).map(|i| self.codegens[k + n][off(i)].clone()).collect()
                }
            })
            .collect();
        Self::new(self.dims[k..].to_vec(), cofaces, codegens)
    }

    /// Standard augmentation of a shift: `φ^k_0` for the left shift and
    /// `φ^k_k` for the right, both `V^{k-1} -> V^k`.
    pub fn shift_augmentation(&self, side: Side, k: usize) -> RationalMatrix {
        match side {
            Side::Left => self.cofaces[k][0].clone(),
            Side::Right => self.cofaces[k][k].clone(),
        }
    }

    /// Standard retract of the right shift by `k >= 1` along `φ^k_k`:
    /// `θ^n = σ^{k+n-1}_{k-1}`.
    pub fn right_shift_retract(&self, k: usize) -> Result<CosimplicialRetract> {
        if k == 0 || k >= self.top() {
            return Err(Error::IndexOutOfRange {
                what: "right shift retract".into(),
                index: k,
                bound: self.top().saturating_sub(1),
            });
        }
        Ok(CosimplicialRetract {
            augmentation: self.shift_augmentation(Side::Right, k),
            theta: (0..=self.top() - k)
                .map(|n| self.codegens[k + n - 1][k - 1].clone())
                .collect(),
        })
    }

    /// The shift double complex: block `(n, m)` is `V^{n+m+1}`, with
    /// `d_V = Σ_j (-1)^j φ_{m+1+j}` raising `n` and `d_H = Σ_i (-1)^i φ_i`
    /// raising `m`.
    pub fn shift_double(&self) -> Result<Multicomplex> {
        let top = self.top().checked_sub(1).ok_or_else(|| Error::IndexOutOfRange {
            what: "shift double truncation".into(),
            index: 0,
            bound: 1,
        })?;
        let mut d = Multicomplex::new(2, top);
        for n in 0..=top {
            for m in 0..=top - n {
                d.set_dim(vec![n, m], self.dims[n + m + 1]);
            }
        }
        for n in 0..=top {
            for m in 0..=top - n {
                if n + m == top {
                    continue;
                }
                let l = n + m + 2;
                let shape = (self.dims[l], self.dims[l - 1]);
                let dv = alt_sum((0..=n + 1).map(|j| (j, self.cofaces[l][m + 1 + j].clone())), shape);
                let dh = alt_sum((0..=m + 1).map(|i| (i, self.cofaces[l][i].clone())), shape);
                d.set_diff(0, vec![n, m], dv)?;
                d.set_diff(1, vec![n, m], dh)?;
            }
        }
        Ok(d)
    }

    /// Left augmentation `φ^{n+1}_0: V^n -> D^{n,0}` as a block map.
    pub fn left_augmentation(&self) -> BlockMap {
        (0..self.top())
            .map(|n| (vec![n], vec![n, 0], self.cofaces[n + 1][0].clone()))
            .collect()
    }

    /// Bottom augmentation `φ^{n+1}_{n+1}: V^n -> D^{0,n}` as a block map.
    pub fn bottom_augmentation(&self) -> BlockMap {
        (0..self.top())
            .map(|n| (vec![n], vec![0, n], self.cofaces[n + 1][n + 1].clone()))
            .collect()
    }

    /// Cosimplicial identities at every level inside the truncation.
    pub fn check_identities(&self) -> IdentityReport {
        let top = self.top();
        let f = |n: usize, i: usize| &self.cofaces[n][i];
        let s = |n: usize, i: usize| &self.codegens[n][i];
        let mut report = IdentityReport::default();
        let mut record = |name: &str, level: usize, idx: (usize, usize), lhs: RationalMatrix, rhs: RationalMatrix| {
            report.checked += 1;
            if let Some((r, c, a, b)) = lhs.first_difference(&rhs) {
                report.violations.push(IdentityViolation {
                    identity: name.to_string(),
                    level,
                    indices: idx,
                    witness: format!("entry ({r}, {c}): {a} vs {b}"),
                });
            }
        };
        let mul = |a: &RationalMatrix, b: &RationalMatrix| a.mul(b).expect("shapes");
        for n in 1..top {
            for j in 1..=n + 1 {
                for i in 0..j {
                    record(
                        "coface-coface",
                        n + 1,
                        (i, j),
                        mul(f(n + 1, j), f(n, i)),
                        mul(f(n + 1, i), f(n, j - 1)),
                    );
                }
            }
        }
        for n in 0..top {
            let id = RationalMatrix::identity(self.dims[n]);
            for j in 0..=n {
                record(
                    "codegeneracy-coface identity",
                    n,
                    (j, j),
                    mul(s(n, j), f(n + 1, j)),
                    id.clone(),
                );
                record(
                    "codegeneracy-coface identity",
                    n,
                    (j + 1, j),
                    mul(s(n, j), f(n + 1, j + 1)),
                    id.clone(),
                );
                if n == 0 {
                    continue;
                }
                for i in 0..j {
                    record(
                        "codegeneracy-coface below",
                        n,
                        (i, j),
                        mul(s(n, j), f(n + 1, i)),
                        mul(f(n, i), s(n - 1, j - 1)),
                    );
                }
                for i in j + 2..=n + 1 {
                    record(
                        "codegeneracy-coface above",
                        n,
                        (i, j),
                        mul(s(n, j), f(n + 1, i)),
                        mul(f(n, i - 1), s(n - 1, j)),
                    );
                }
            }
        }
        for n in 0..top.saturating_sub(1) {
            for j in 1..=n + 1 {
                for i in 0..j {
                    record(
                        "codegeneracy-codegeneracy",
                        n,
                        (i, j),
                        mul(s(n, i), s(n + 1, j)),
                        mul(s(n, j - 1), s(n + 1, i)),
                    );
                }
            }
        }
        report
    }
}
