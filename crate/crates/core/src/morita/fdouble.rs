//! The double simplicial set of a homomorphism `F: H -> G`.
//!
//! Level `(n, m)` holds pairs `(g, h)` with `g = (g_{n+1}, ..., g_1)` in
//! `G^(n+1)`, `h = (h_m, ..., h_1)` in `H^(m)` (an object when `m = 0`) and
//! `s(g_1) = F t(h_m)`. The target of a pair is `t(g_{n+1})`.

use crate::error::{Error, Result};
use crate::groupoid::{GroupoidHom, LiftTable};
use crate::simplicial::{nerve, DoubleSimplicial, SimplicialRetract, TargetFamily, TruncatedNerve, TwistedMap};

pub struct FDouble {
    hom: GroupoidHom,
    g_nerve: TruncatedNerve,
    h_nerve: TruncatedNerve,
    /// `[k][x]`: source object of a level-`k` tuple of `G`
    g_source: Vec<Vec<u32>>,
    /// `[k][x]`: rank of `x` among level-`k` tuples with the same source
    g_src_pos: Vec<Vec<u32>>,
    /// `[n][m]`: the pairs at level `(n, m)`
    elems: Vec<Vec<Vec<(u32, u32)>>>,
    /// `[n][m][h]`: index of the first pair over `h`
    offset: Vec<Vec<Vec<u32>>>,
    set: DoubleSimplicial,
}

fn grid<T>(top: usize, mut f: impl FnMut(usize, usize) -> T) -> Vec<Vec<T>> {
    (0..=top).map(|n| (0..=top - n).map(|m| f(n, m)).collect()).collect()
}

impl FDouble {
    /// Levels with `n + m <= top`; needs the nerve of `G` through `top + 1`.
    pub fn build(hom: &GroupoidHom, top: usize, budget: usize) -> Result<Self> {
        let g_nerve = nerve(hom.target(), top + 1, budget)?;
        let h_nerve = nerve(hom.source(), top, budget)?;
        let g = &**hom.target();
        let mut g_source = Vec::with_capacity(top + 2);
        let mut g_src_pos = Vec::with_capacity(top + 2);
        let mut g_src_count = Vec::with_capacity(top + 2);
        for k in 0..=top + 1 {
            let mut count = vec![0u32; g.num_objects()];
            let mut src = Vec::with_capacity(g_nerve.size(k));
            let mut pos = Vec::with_capacity(g_nerve.size(k));
            for x in 0..g_nerve.size(k) {
                let s = g_nerve.source(k, x);
                src.push(s as u32);
                pos.push(count[s]);
                count[s] += 1;
            }
            g_source.push(src);
            g_src_pos.push(pos);
            g_src_count.push(count);
        }
        let mut by_source: Vec<Vec<Vec<u32>>> = Vec::with_capacity(top + 2);
        for k in 0..=top + 1 {
            let mut b = vec![Vec::new(); g.num_objects()];
            for (x, &s) in g_source[k].iter().enumerate() {
                b[s as usize].push(x as u32);
            }
            by_source.push(b);
        }
        let mut elems = Vec::with_capacity(top + 1);
        let mut offset = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut row_e = Vec::new();
            let mut row_o = Vec::new();
            for m in 0..=top - n {
                let mut e = Vec::new();
                let mut o = Vec::with_capacity(h_nerve.size(m));
                let size: usize = (0..h_nerve.size(m))
                    .map(|h| g_src_count[n + 1][hom.f0(h_nerve.target(m, h))] as usize)
                    .sum();
                if size > budget {
                    return Err(Error::Overflow {
                        level: n + m + 1,
                        size,
                        budget,
                    });
                }
                e.reserve(size);
                for h in 0..h_nerve.size(m) {
                    o.push(e.len() as u32);
                    let y = hom.f0(h_nerve.target(m, h));
                    for &gx in &by_source[n + 1][y] {
                        e.push((gx, h as u32));
                    }
                }
                row_e.push(e);
                row_o.push(o);
            }
            elems.push(row_e);
            offset.push(row_o);
        }
        let mut fd = FDouble {
            hom: hom.clone(),
            g_nerve,
            h_nerve,
            g_source,
            g_src_pos,
            elems,
            offset,
            set: DoubleSimplicial {
                top,
                targets: Vec::new(),
                row_faces: Vec::new(),
                col_faces: Vec::new(),
                row_degens: Vec::new(),
                col_degens: Vec::new(),
            },
        };
        fd.set = fd.assemble();
        Ok(fd)
    }

    fn assemble(&self) -> DoubleSimplicial {
        let top = self.top();
        let gs = self.g_nerve.simplicial();
        let hs = self.h_nerve.simplicial();
        let targets = grid(top, |n, m| {
            self.elems[n][m]
                .iter()
                .map(|&(gx, _)| gs.targets(n + 1)[gx as usize])
                .collect()
        });
        let row_faces = grid(top, |n, m| {
            if m == 0 {
                return Vec::new();
            }
            (0..=m)
                .map(|i| {
                    let hf = &hs.face(m, i).image;
                    let image = self.elems[n][m]
                        .iter()
                        .map(|&(gx, h)| {
                            let h2 = hf[h as usize] as usize;
                            let g2 = if i < m {
                                gx as usize
                            } else {
                                let hm = self.h_nerve.tuple(m, h as usize)[0];
                                self.times_on_source(n + 1, gx as usize, self.hom.f1(hm))
                            };
                            self.index(n, m - 1, g2, h2) as u32
                        })
                        .collect();
                    TwistedMap::plain(image)
                })
                .collect()
        });
        let col_faces = grid(top, |n, m| {
            if n == 0 {
                return Vec::new();
            }
            (0..=n)
                .map(|j| {
                    let f = gs.face(n + 1, j + 1);
                    let image = self.elems[n][m]
                        .iter()
                        .map(|&(gx, h)| self.index(n - 1, m, f.image[gx as usize] as usize, h as usize) as u32)
                        .collect();
                    let transport = f
                        .transport
                        .as_ref()
                        .map(|t| self.elems[n][m].iter().map(|&(gx, _)| t[gx as usize]).collect());
                    TwistedMap { image, transport }
                })
                .collect()
        });
        let row_degens = grid(top, |n, m| {
            if n + m == top {
                return Vec::new();
            }
            (0..=m)
                .map(|i| {
                    let s = hs.degeneracy(m, i);
                    self.elems[n][m]
                        .iter()
                        .map(|&(gx, h)| self.index(n, m + 1, gx as usize, s[h as usize] as usize) as u32)
                        .collect()
                })
                .collect()
        });
        let col_degens = grid(top, |n, m| {
            if n + m == top {
                return Vec::new();
            }
            (0..=n)
                .map(|j| {
                    let s = gs.degeneracy(n + 1, j + 1);
                    self.elems[n][m]
                        .iter()
                        .map(|&(gx, h)| self.index(n + 1, m, s[gx as usize] as usize, h as usize) as u32)
                        .collect()
                })
                .collect()
        });
        DoubleSimplicial {
            top,
            targets,
            row_faces,
            col_faces,
            row_degens,
            col_degens,
        }
    }

    /// `(g_k, ..., g_1 a)` at level `k >= 1`.
    fn times_on_source(&self, k: usize, x: usize, a: usize) -> usize {
        let g = &**self.hom.target();
        let t = self.g_nerve.tuple(k, x);
        let g1 = g.mul(t[k - 1], a);
        if k == 1 {
            return g1;
        }
        let rest = self.g_nerve.simplicial().face(k, 0).image[x] as usize;
        self.g_nerve.snoc(k - 1, rest, g1)
    }

    pub fn top(&self) -> usize {
        self.set.top()
    }

    pub fn hom(&self) -> &GroupoidHom {
        &self.hom
    }

    pub fn simplicial(&self) -> &DoubleSimplicial {
        &self.set
    }

    pub fn g_nerve(&self) -> &TruncatedNerve {
        &self.g_nerve
    }

    pub fn h_nerve(&self) -> &TruncatedNerve {
        &self.h_nerve
    }

    pub fn size(&self, n: usize, m: usize) -> usize {
        self.elems[n][m].len()
    }

    /// `(g, h)` of an element at level `(n, m)`.
    pub fn element(&self, n: usize, m: usize, x: usize) -> (usize, usize) {
        let (g, h) = self.elems[n][m][x];
        (g as usize, h as usize)
    }

    pub fn index(&self, n: usize, m: usize, g: usize, h: usize) -> usize {
        debug_assert_eq!(self.g_source[n + 1][g] as usize, self.hom.f0(self.h_nerve.target(m, h)));
        (self.offset[n][m][h] + self.g_src_pos[n + 1][g]) as usize
    }

    pub fn describe(&self, n: usize, m: usize, x: usize) -> String {
        let (g, h) = self.element(n, m, x);
        format!(
            "[{} | {}]",
            self.g_nerve.describe(n + 1, g),
            self.h_nerve.describe(m, h)
        )
    }

    /// `F_shift(g, h) = (g, F h_m, ..., F h_1)` into level `n + m + 1` of
    /// the nerve of `G`, i.e. level `(n, m)` of its shift double.
    pub fn f_shift(&self, n: usize, m: usize) -> TwistedMap {
        let image = self.elems[n][m]
            .iter()
            .map(|&(gx, h)| {
                let mut x = gx as usize;
                for (k, a) in self.h_nerve.tuple(m, h as usize).into_iter().enumerate() {
                    x = self.g_nerve.snoc(n + 1 + k, x, self.hom.f1(a));
                }
                x as u32
            })
            .collect();
        TwistedMap::plain(image)
    }

    /// `p(g_{n+1}, ..., g_1, x) = (g_{n+1}, ..., g_2)` from level `(n, 0)`.
    pub fn p(&self, n: usize) -> TwistedMap {
        let d0 = &self.g_nerve.simplicial().face(n + 1, 0).image;
        TwistedMap::plain(self.elems[n][0].iter().map(|&(gx, _)| d0[gx as usize]).collect())
    }

    /// `P_F(g_1, h) = h` from level `(0, m)`, transporting along `g_1`.
    pub fn p_f(&self, m: usize) -> TwistedMap {
        TwistedMap {
            image: self.elems[0][m].iter().map(|&(_, h)| h).collect(),
            transport: Some(self.elems[0][m].iter().map(|&(g, _)| g).collect()),
        }
    }

    /// `F` on nerves, from level `m` of `H` to level `m` of `G`.
    pub fn f_nerve(&self, m: usize) -> TwistedMap {
        nerve_map(&self.hom, &self.h_nerve, &self.g_nerve, m)
    }

    /// Retraction of column `m` along `P_F`: `r^0(h) = (u(F t h_m), h)`
    /// and `r^n(g_n, ..., g_1, h) = (g_n, ..., g_1, u(s g_1), h)`.
    pub fn column_retract(&self, m: usize) -> SimplicialRetract {
        let g = &**self.hom.target();
        let base_targets: Vec<u32> = (0..self.h_nerve.size(m))
            .map(|h| self.hom.f0(self.h_nerve.target(m, h)) as u32)
            .collect();
        let mut maps = vec![TwistedMap::plain(
            base_targets
                .iter()
                .enumerate()
                .map(|(h, &y)| self.index(0, m, g.unit(y as usize), h) as u32)
                .collect(),
        )];
        for n in 1..=self.top() - m {
            maps.push(TwistedMap::plain(
                self.elems[n - 1][m]
                    .iter()
                    .map(|&(gx, h)| {
                        let s = self.g_source[n][gx as usize] as usize;
                        let g2 = self.g_nerve.snoc(n, gx as usize, g.unit(s));
                        self.index(n, m, g2, h as usize) as u32
                    })
                    .collect(),
            ));
        }
        SimplicialRetract {
            base_targets,
            augmentation: self.p_f(m),
            maps,
        }
    }

    /// The ρ-retraction of row `n` along `p` for a section pair over `U`:
    /// `sigma[y]` is an arrow into `y` whose source is `F fbar[y]`. Elements
    /// whose target lies outside `U` map to 0 and are masked out.
    pub fn row_retract(
        &self,
        n: usize,
        pair: &SectionPair,
        lifts: &LiftTable,
    ) -> Result<(SimplicialRetract, Vec<Vec<bool>>)> {
        let g = &**self.hom.target();
        let family = pair.family(g)?;
        let gs = self.g_nerve.simplicial();
        let base_targets = gs.targets(n).to_vec();
        let mut masks = vec![base_targets
            .iter()
            .map(|&y| pair.sigma[y as usize].is_some())
            .collect::<Vec<_>>()];
        let mut maps = Vec::with_capacity(self.top() - n + 1);
        let first = (0..self.g_nerve.size(n))
            .map(|y| {
                let t = base_targets[y] as usize;
                match pair.fbar[t] {
                    Some(x) => self.index(n, 0, family.lift(&self.g_nerve, n, y), x) as u32,
                    None => 0,
                }
            })
            .collect();
        maps.push(TwistedMap::plain(first));
        for m in 0..self.top() - n {
            let mut image = Vec::with_capacity(self.size(n, m));
            let mut mask = Vec::with_capacity(self.size(n, m));
            for &(gx, h) in &self.elems[n][m] {
                let (gx, h) = (gx as usize, h as usize);
                let t = gs.targets(n + 1)[gx] as usize;
                let (Some(sig), Some(fb)) = (pair.sigma[t], pair.fbar[t]) else {
                    image.push(0);
                    mask.push(false);
                    continue;
                };
                let mut prod = self.g_nerve.product(n + 1, gx);
                let h_src = if m == 0 {
                    h
                } else {
                    prod = g.mul(prod, self.hom.f1(self.h_nerve.product(m, h)));
                    self.h_nerve.source(m, h)
                };
                let want = g.mul(g.inverse(prod), sig);
                let bar = lifts.lift(h_src, want, fb).map_err(|e| match e {
                    Error::NoUniqueLift(w) => Error::NoUniqueLift(format!(
                        "lifting {} for {}: {w}",
                        g.arrow_name(want),
                        self.describe(n, m, self.index(n, m, gx, h))
                    )),
                    e => e,
                })?;
                let h2 = self.h_nerve.snoc(m, h, bar);
                image.push(self.index(n, m + 1, gx, h2) as u32);
                mask.push(true);
            }
            maps.push(TwistedMap::plain(image));
            masks.push(mask);
        }
        Ok((
            SimplicialRetract {
                base_targets,
                augmentation: self.p(n),
                maps,
            },
            masks,
        ))
    }

    /// `F_shift ρ^k = r^{n+k} F_shift` against the target family of `σ`,
    /// on every element where both sides are defined; the first failure.
    pub fn rho_compatibility(
        &self,
        n: usize,
        r: &SimplicialRetract,
        masks: &[Vec<bool>],
        pair: &SectionPair,
    ) -> Result<Option<String>> {
        let g = &**self.hom.target();
        let family = pair.family(g)?;
        for y in 0..self.g_nerve.size(n) {
            if !masks[0][y] {
                continue;
            }
            let lhs = self.f_shift(n, 0).image[r.maps[0].image[y] as usize] as usize;
            if lhs != family.lift(&self.g_nerve, n, y) {
                return Ok(Some(format!("row {n}, level 0 at {}", self.g_nerve.describe(n, y))));
            }
        }
        for k in 1..r.maps.len() {
            let here = self.f_shift(n, k - 1);
            let there = self.f_shift(n, k);
            for x in 0..self.size(n, k - 1) {
                if !masks[k][x] {
                    continue;
                }
                let lhs = there.image[r.maps[k].image[x] as usize] as usize;
                let rhs = family.lift(&self.g_nerve, n + k, here.image[x] as usize);
                if lhs != rhs {
                    return Ok(Some(format!("row {n}, level {k} at {}", self.describe(n, k - 1, x))));
                }
            }
        }
        Ok(None)
    }
}

/// A homomorphism on nerves: level `m` of `H` to level `m` of `G`.
pub fn nerve_map(hom: &GroupoidHom, h: &TruncatedNerve, g: &TruncatedNerve, m: usize) -> TwistedMap {
    let image = (0..h.size(m))
        .map(|x| {
            if m == 0 {
                return hom.f0(x) as u32;
            }
            let t: Vec<usize> = h.tuple(m, x).into_iter().map(|a| hom.f1(a)).collect();
            g.index_of(&t).expect("functor preserves composability") as u32
        })
        .collect();
    TwistedMap::plain(image)
}

/// `σ` with `t σ(y) = y` and `s σ(y) = F fbar(y)`, over the objects `y`
/// where both are given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionPair {
    pub sigma: Vec<Option<usize>>,
    pub fbar: Vec<Option<usize>>,
}

impl SectionPair {
    /// First valid choice in index order over the objects in `subset`.
    pub fn search(hom: &GroupoidHom, subset: &[bool]) -> Result<SectionPair> {
        let g = &**hom.target();
        let mut sigma = vec![None; g.num_objects()];
        let mut fbar = vec![None; g.num_objects()];
        for y in (0..g.num_objects()).filter(|&y| subset[y]) {
            let found = g.arrows_into(y).iter().find_map(|&a| {
                (0..hom.source().num_objects())
                    .find(|&x| hom.f0(x) == g.src(a))
                    .map(|x| (a, x))
            });
            let (a, x) = found.ok_or_else(|| Error::MissingSection(g.object_name(y).to_string()))?;
            sigma[y] = Some(a);
            fbar[y] = Some(x);
        }
        Ok(SectionPair { sigma, fbar })
    }

    pub fn validate(&self, hom: &GroupoidHom) -> Result<()> {
        let g = &**hom.target();
        for y in 0..g.num_objects() {
            match (self.sigma[y], self.fbar[y]) {
                (None, None) => {}
                (Some(a), Some(x)) if g.tgt(a) == y && g.src(a) == hom.f0(x) => {}
                _ => return Err(Error::MissingSection(g.object_name(y).to_string())),
            }
        }
        Ok(())
    }

    pub fn subset(&self) -> Vec<bool> {
        self.sigma.iter().map(Option::is_some).collect()
    }

    fn family(&self, g: &crate::groupoid::FiniteGroupoid) -> Result<TargetFamily> {
        TargetFamily::new(g, self.sigma.clone())
    }
}
