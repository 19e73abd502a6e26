use super::set::{IdentityReport, IdentityViolation, SimplicialSet, TwistedMap};
use crate::error::{Error, Result};

/// A truncated double simplicial set with levels `(n, m)`, `n + m <= top`.
///
/// Row operators move along `m` (row `n` is a simplicial set in `m`);
/// column operators move along `n`.
#[derive(Clone, Debug)]
pub struct DoubleSimplicial {
    pub(crate) top: usize,
    pub(crate) targets: Vec<Vec<Vec<u32>>>,
    pub(crate) row_faces: Vec<Vec<Vec<TwistedMap>>>,
    pub(crate) col_faces: Vec<Vec<Vec<TwistedMap>>>,
    pub(crate) row_degens: Vec<Vec<Vec<Vec<u32>>>>,
    pub(crate) col_degens: Vec<Vec<Vec<Vec<u32>>>>,
}

impl DoubleSimplicial {
    /// The shift double: level `(n, m)` is level `n + m + 1` of `x`, with
    /// row faces `d_i` (`i <= m`) and column faces `d_{m+1+j}`.
    pub fn shift_double(x: &SimplicialSet) -> Result<Self> {
        let top = x.top().checked_sub(1).ok_or_else(|| Error::IndexOutOfRange {
            what: "shift double truncation".into(),
            index: 0,
            bound: 1,
        })?;
        fn grid<T>(top: usize, f: impl Fn(usize, usize) -> T) -> Vec<Vec<T>> {
            (0..=top).map(|n| (0..=top - n).map(|m| f(n, m)).collect()).collect()
        }
        let targets = grid(top, |n, m| x.targets(n + m + 1).to_vec());
        let row_faces = grid(top, |n, m| {
            if m == 0 {
                Vec::new()
            } else {
                (0..=m).map(|i| x.face(n + m + 1, i).clone()).collect()
            }
        });
        let col_faces = grid(top, |n, m| {
            if n == 0 {
                Vec::new()
            } else {
                (0..=n).map(|j| x.face(n + m + 1, m + 1 + j).clone()).collect()
            }
        });
        let row_degens = grid(top, |n, m| {
            if n + m == top {
                Vec::new()
            } else {
                (0..=m).map(|i| x.degeneracy(n + m + 1, i).to_vec()).collect()
            }
        });
        let col_degens = grid(top, |n, m| {
            if n + m == top {
                Vec::new()
            } else {
                (0..=n).map(|j| x.degeneracy(n + m + 1, m + 1 + j).to_vec()).collect()
            }
        });
        Ok(DoubleSimplicial {
            top,
            targets,
            row_faces,
            col_faces,
            row_degens,
            col_degens,
        })
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn size(&self, n: usize, m: usize) -> usize {
        self.targets[n][m].len()
    }

    pub fn targets(&self, n: usize, m: usize) -> &[u32] {
        &self.targets[n][m]
    }

    pub fn row_face(&self, n: usize, m: usize, i: usize) -> &TwistedMap {
        &self.row_faces[n][m][i]
    }

    pub fn col_face(&self, n: usize, m: usize, j: usize) -> &TwistedMap {
        &self.col_faces[n][m][j]
    }

    /// Row `n` as a simplicial set in `m`.
    pub fn row(&self, n: usize) -> SimplicialSet {
        let t = self.top - n;
        SimplicialSet {
            sizes: (0..=t).map(|m| self.size(n, m)).collect(),
            targets: (0..=t).map(|m| self.targets[n][m].clone()).collect(),
            faces: (0..=t).map(|m| self.row_faces[n][m].clone()).collect(),
            degeneracies: (0..=t).map(|m| self.row_degens[n][m].clone()).collect(),
        }
    }

    /// Column `m` as a simplicial set in `n`.
    pub fn column(&self, m: usize) -> SimplicialSet {
        let t = self.top - m;
        SimplicialSet {
            sizes: (0..=t).map(|n| self.size(n, m)).collect(),
            targets: (0..=t).map(|n| self.targets[n][m].clone()).collect(),
            faces: (0..=t).map(|n| self.col_faces[n][m].clone()).collect(),
            degeneracies: (0..=t).map(|n| self.col_degens[n][m].clone()).collect(),
        }
    }

    /// Simplicial identities in every row and column, plus commutation of
    /// row operators with column operators.
    pub fn check_identities(&self, describe: &dyn Fn(usize, usize, usize) -> String) -> IdentityReport {
        let mut report = IdentityReport::default();
        for n in 0..=self.top {
            let r = self.row(n).check_identities(&|m, x| describe(n, m, x));
            report.merge(tag(r, &format!("row {n}")));
        }
        for m in 0..=self.top {
            let c = self.column(m).check_identities(&|n, x| describe(n, m, x));
            report.merge(tag(c, &format!("column {m}")));
        }
        let comp = |outer: &[u32], inner: &[u32]| -> Vec<u32> { inner.iter().map(|&y| outer[y as usize]).collect() };
        let mut record = |name: &str, n: usize, m: usize, idx: (usize, usize), lhs: Vec<u32>, rhs: Vec<u32>| {
            report.checked += 1;
            if let Some(x) = lhs.iter().zip(&rhs).position(|(a, b)| a != b) {
                report.violations.push(IdentityViolation {
                    identity: name.to_string(),
                    level: n + m,
                    indices: idx,
                    witness: describe(n, m, x),
                });
            }
        };
        let rd = |n: usize, m: usize, i: usize| &self.row_faces[n][m][i].image;
        let cd = |n: usize, m: usize, j: usize| &self.col_faces[n][m][j].image;
        let rs = |n: usize, m: usize, i: usize| &self.row_degens[n][m][i];
        let cs = |n: usize, m: usize, j: usize| &self.col_degens[n][m][j];
        for n in 0..=self.top {
            for m in 0..=self.top - n {
                for i in 0..=m {
                    for j in 0..=n {
                        if n >= 1 && m >= 1 {
                            record(
                                "face/face",
                                n,
                                m,
                                (i, j),
                                comp(cd(n, m - 1, j), rd(n, m, i)),
                                comp(rd(n - 1, m, i), cd(n, m, j)),
                            );
                        }
                        if m >= 1 && n + m < self.top {
                            record(
                                "row face/column degeneracy",
                                n,
                                m,
                                (i, j),
                                comp(rd(n + 1, m, i), cs(n, m, j)),
                                comp(cs(n, m - 1, j), rd(n, m, i)),
                            );
                        }
                        if n >= 1 && n + m < self.top {
                            record(
                                "column face/row degeneracy",
                                n,
                                m,
                                (i, j),
                                comp(cd(n, m + 1, j), rs(n, m, i)),
                                comp(rs(n - 1, m, i), cd(n, m, j)),
                            );
                        }
                        if n + m + 2 <= self.top {
                            record(
                                "degeneracy/degeneracy",
                                n,
                                m,
                                (i, j),
                                comp(cs(n, m + 1, j), rs(n, m, i)),
                                comp(rs(n + 1, m, i), cs(n, m, j)),
                            );
                        }
                    }
                }
            }
        }
        report
    }
}

fn tag(mut r: IdentityReport, prefix: &str) -> IdentityReport {
    for v in &mut r.violations {
        v.identity = format!("{prefix} {}", v.identity);
    }
    r
}
