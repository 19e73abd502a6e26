use crate::error::{Error, Result};

/// A map between finite levels. `transport[x]` is an arrow of the base
/// groupoid from the target of `image[x]` to the target of `x`; `None`
/// means every element keeps its target and no transport is needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedMap {
    pub image: Vec<u32>,
    pub transport: Option<Vec<u32>>,
}

impl TwistedMap {
    pub fn plain(image: Vec<u32>) -> Self {
        TwistedMap { image, transport: None }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// `self ∘ inner` on images only.
    pub fn after(&self, inner: &TwistedMap) -> Vec<u32> {
        inner.image.iter().map(|&y| self.image[y as usize]).collect()
    }
}

/// A truncated simplicial set whose elements carry a target object in a
/// base groupoid. Levels run `0..=top`; `faces[n][i]` maps level `n` to
/// level `n-1` and `degeneracies[n][i]` maps level `n` to level `n+1`.
#[derive(Clone, Debug)]
pub struct SimplicialSet {
    pub(crate) sizes: Vec<usize>,
    pub(crate) targets: Vec<Vec<u32>>,
    pub(crate) faces: Vec<Vec<TwistedMap>>,
    pub(crate) degeneracies: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One failed simplicial or cosimplicial identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityViolation {
    pub identity: String,
    pub level: usize,
    pub indices: (usize, usize),
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub checked: usize,
    pub violations: Vec<IdentityViolation>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: IdentityReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}

impl SimplicialSet {
    pub fn new(targets: Vec<Vec<u32>>, faces: Vec<Vec<TwistedMap>>, degeneracies: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        let sizes: Vec<usize> = targets.iter().map(Vec::len).collect();
        let top = sizes
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Parse("empty simplicial set".into()))?;
        let shape_err = |what: &str| Error::DimensionMismatch {
            context: format!("simplicial {what}"),
            expected: (top, 0),
            found: (faces.len(), degeneracies.len()),
        };
        if faces.len() != top + 1 || degeneracies.len() != top + 1 {
            return Err(shape_err("levels"));
        }
        for n in 0..=top {
            let nf = if n == 0 { 0 } else { n + 1 };
            let nd = if n == top { 0 } else { n + 1 };
            if faces[n].len() != nf || degeneracies[n].len() != nd {
                return Err(shape_err("operator count"));
            }
            for f in &faces[n] {
                if f.image.len() != sizes[n] || f.image.iter().any(|&y| y as usize >= sizes[n - 1]) {
                    return Err(shape_err("face"));
                }
            }
            for s in &degeneracies[n] {
                if s.len() != sizes[n] || s.iter().any(|&y| y as usize >= sizes[n + 1]) {
                    return Err(shape_err("degeneracy"));
                }
            }
        }
        Ok(SimplicialSet {
            sizes,
            targets,
            faces,
            degeneracies,
        })
    }

    pub fn top(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn size(&self, n: usize) -> usize {
        self.sizes[n]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn targets(&self, n: usize) -> &[u32] {
        &self.targets[n]
    }

    /// `d^n_i`
    pub fn face(&self, n: usize, i: usize) -> &TwistedMap {
        &self.faces[n][i]
    }

    /// `s^n_i`
    pub fn degeneracy(&self, n: usize, i: usize) -> &[u32] {
        &self.degeneracies[n][i]
    }

    /// Left or right décalage by `k`, truncated at `top - k`.
    pub fn shift(&self, side: Side, k: usize) -> Result<SimplicialSet> {
        if k > self.top() {
            return Err(Error::IndexOutOfRange {
                what: "shift".into(),
                index: k,
                bound: self.top(),
            });
        }
        let top = self.top() - k;
        let off = |i: usize| match side {
            Side::Left => i,
            Side::Right => k + i,
        };
        let targets = (0..=top).map(|n| self.targets[k + n].clone()).collect();
        let faces = (0..=top)
            .map(|n| {
                if n == 0 {
                    Vec::new()
                } else {
                    (0..=n).map(|i| self.faces[k + n][off(i)].clone()).collect()
                }
            })
            .collect();
        let degeneracies = (0..=top)
            .map(|n| {
                if n == top {
                    Vec::new()
                } else {
                    (0..=n).map(|i| self.degeneracies[k + n][off(i)].clone()).collect()
                }
            })
            .collect();
        Ok(SimplicialSet {
            sizes: self.sizes[k..].to_vec(),
            targets,
            faces,
            degeneracies,
        })
    }

    /// Checks the simplicial identities at every level inside the
    /// truncation; `describe(level, index)` renders witnesses.
    pub fn check_identities(&self, describe: &dyn Fn(usize, usize) -> String) -> IdentityReport {
        let top = self.top();
        let d = |n: usize, i: usize| &self.faces[n][i].image;
        let s = |n: usize, i: usize| &self.degeneracies[n][i];
        let mut report = IdentityReport::default();
        let mut record = |name: &str, level: usize, idx: (usize, usize), lhs: &[u32], rhs: &[u32]| {
            report.checked += 1;
            if let Some(x) = lhs.iter().zip(rhs).position(|(a, b)| a != b) {
                report.violations.push(IdentityViolation {
                    identity: name.to_string(),
                    level,
                    indices: idx,
                    witness: describe(level, x),
                });
            }
        };
        let comp = |outer: &[u32], inner: &[u32]| -> Vec<u32> { inner.iter().map(|&y| outer[y as usize]).collect() };
        // d_i d_j = d_{j-1} d_i on level n+1, i < j
        for n in 1..top {
            for j in 1..=n + 1 {
                for i in 0..j {
                    record(
                        "face-face",
                        n + 1,
                        (i, j),
                        &comp(d(n, i), d(n + 1, j)),
                        &comp(d(n, j - 1), d(n + 1, i)),
                    );
                }
            }
        }
        for n in 0..top {
            let id: Vec<u32> = (0..self.sizes[n] as u32).collect();
            for j in 0..=n {
                // d_j s_j = d_{j+1} s_j = id
                record("face-degeneracy identity", n, (j, j), &comp(d(n + 1, j), s(n, j)), &id);
                record(
                    "face-degeneracy identity",
                    n,
                    (j + 1, j),
                    &comp(d(n + 1, j + 1), s(n, j)),
                    &id,
                );
                if n == 0 {
                    continue;
                }
                // d_i s_j = s_{j-1} d_i, i < j
                for i in 0..j {
                    record(
                        "face-degeneracy below",
                        n,
                        (i, j),
                        &comp(d(n + 1, i), s(n, j)),
                        &comp(s(n - 1, j - 1), d(n, i)),
                    );
                }
                // d_i s_j = s_j d_{i-1}, i > j + 1
                for i in j + 2..=n + 1 {
                    record(
                        "face-degeneracy above",
                        n,
                        (i, j),
                        &comp(d(n + 1, i), s(n, j)),
                        &comp(s(n - 1, j), d(n, i - 1)),
                    );
                }
            }
        }
        // s_j s_i = s_i s_{j-1}, i < j
        for n in 0..top.saturating_sub(1) {
            for j in 1..=n + 1 {
                for i in 0..j {
                    record(
                        "degeneracy-degeneracy",
                        n,
                        (i, j),
                        &comp(s(n + 1, j), s(n, i)),
                        &comp(s(n + 1, i), s(n, j - 1)),
                    );
                }
            }
        }
        report
    }

    /// Elements whose target lies in `keep`, with faces and degeneracies
    /// restricted; fails if some operator leaves the subset.
    pub fn restrict_to_targets(&self, keep: &[bool]) -> Result<(SimplicialSet, Vec<Vec<u32>>)> {
        let top = self.top();
        let mut embed = Vec::with_capacity(top + 1);
        let mut position = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut pos = vec![u32::MAX; self.sizes[n]];
            let mut emb = Vec::new();
            for (x, &t) in self.targets[n].iter().enumerate() {
                if keep[t as usize] {
                    pos[x] = emb.len() as u32;
                    emb.push(x as u32);
                }
            }
            embed.push(emb);
            position.push(pos);
        }
        let leave = |n: usize| Error::IndexOutOfRange {
            what: format!("restriction at level {n}"),
            index: n,
            bound: top,
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=top {
            let mut level = Vec::new();
            for f in &self.faces[n] {
                let mut image = Vec::with_capacity(embed[n].len());
                for &x in &embed[n] {
                    let y = position[n - 1][f.image[x as usize] as usize];
                    if y == u32::MAX {
                        return Err(leave(n));
                    }
                    image.push(y);
                }
                let transport = f
                    .transport
                    .as_ref()
                    .map(|t| embed[n].iter().map(|&x| t[x as usize]).collect());
                level.push(TwistedMap { image, transport });
            }
            faces.push(level);
        }
        let mut degeneracies = Vec::new();
        for n in 0..=top {
            let mut level = Vec::new();
            for s in &self.degeneracies[n] {
                let mut image = Vec::with_capacity(embed[n].len());
                for &x in &embed[n] {
                    let y = position[n + 1][s[x as usize] as usize];
                    if y == u32::MAX {
                        return Err(leave(n));
                    }
                    image.push(y);
                }
                level.push(image);
            }
            degeneracies.push(level);
        }
        let targets = (0..=top)
            .map(|n| embed[n].iter().map(|&x| self.targets[n][x as usize]).collect())
            .collect();
        let sub = SimplicialSet::new(targets, faces, degeneracies)?;
        Ok((sub, embed))
    }
}
