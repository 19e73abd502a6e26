use std::sync::Arc;

use super::set::{SimplicialSet, TwistedMap};
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;

/// Default cap on the number of tuples in a single nerve level.
pub const DEFAULT_LEVEL_BUDGET: usize = 200_000;

/// Levels `0..=top` of the nerve of a finite groupoid.
///
/// A level-`n` tuple `(g_n, ..., g_1)` has `s(g_{i+1}) = t(g_i)`. Tuples
/// are ordered lexicographically by arrow index starting from `g_n`, and
/// each is stored as its first arrow `g_n` plus the index of its tail in
/// level `n - 1` (an object when `n = 1`).
pub struct TruncatedNerve {
    groupoid: Arc<FiniteGroupoid>,
    first: Vec<Vec<u32>>,
    tail: Vec<Vec<u32>>,
    start: Vec<Vec<u32>>,
    group_pos: Vec<Vec<u32>>,
    set: SimplicialSet,
}

impl TruncatedNerve {
    pub fn build(groupoid: Arc<FiniteGroupoid>, top: usize, budget: usize) -> Result<Self> {
        let g = &*groupoid;
        let n_obj = g.num_objects();
        let n_arr = g.num_arrows();
        let mut first: Vec<Vec<u32>> = vec![Vec::new()];
        let mut tail: Vec<Vec<u32>> = vec![Vec::new()];
        let mut targets: Vec<Vec<u32>> = vec![(0..n_obj as u32).collect()];
        // group_pos[n][x]: rank of x among level-n elements with its target
        let mut group_pos: Vec<Vec<u32>> = vec![vec![0; n_obj]];
        // start[n][g]: index of the first level-n tuple beginning with g
        let mut start: Vec<Vec<u32>> = vec![Vec::new()];
        if n_obj > budget {
            return Err(Error::Overflow {
                level: 0,
                size: n_obj,
                budget,
            });
        }

        for n in 1..=top {
            let prev_by_target = {
                let mut by: Vec<Vec<u32>> = vec![Vec::new(); n_obj];
                for (x, &t) in targets[n - 1].iter().enumerate() {
                    by[t as usize].push(x as u32);
                }
                by
            };
            let size: usize = (0..n_arr).map(|a| prev_by_target[g.src(a)].len()).sum();
            if size > budget {
                return Err(Error::Overflow { level: n, size, budget });
            }
            let mut f = Vec::with_capacity(size);
            let mut tl = Vec::with_capacity(size);
            let mut tg = Vec::with_capacity(size);
            let mut st = Vec::with_capacity(n_arr);
            for a in 0..n_arr {
                st.push(f.len() as u32);
                for &r in &prev_by_target[g.src(a)] {
                    f.push(a as u32);
                    tl.push(r);
                    tg.push(g.tgt(a) as u32);
                }
            }
            let mut pos = vec![0u32; size];
            let mut len = vec![0u32; n_obj];
            for (x, &t) in tg.iter().enumerate() {
                pos[x] = len[t as usize];
                len[t as usize] += 1;
            }
            first.push(f);
            tail.push(tl);
            targets.push(tg);
            start.push(st);
            group_pos.push(pos);
        }

        let index = |n: usize, a: u32, rest: u32| start[n][a as usize] + group_pos[n - 1][rest as usize];

        let mut faces: Vec<Vec<TwistedMap>> = vec![Vec::new()];
        for n in 1..=top {
            let size = first[n].len();
            let mut level: Vec<TwistedMap> = Vec::with_capacity(n + 1);
            if n == 1 {
                level.push(TwistedMap::plain(
                    first[1].iter().map(|&a| g.tgt(a as usize) as u32).collect(),
                ));
                level.push(TwistedMap {
                    image: tail[1].clone(),
                    transport: Some(first[1].clone()),
                });
            } else {
                for i in 0..=n - 2 {
                    let inner = &faces[n - 1][i].image;
                    let image = (0..size)
                        .map(|x| index(n - 1, first[n][x], inner[tail[n][x] as usize]))
                        .collect();
                    level.push(TwistedMap::plain(image));
                }
                let image = (0..size)
                    .map(|x| {
                        let r = tail[n][x] as usize;
                        let prod = g.mul(first[n][x] as usize, first[n - 1][r] as usize) as u32;
                        if n == 2 {
                            // (g_2 g_1) as a level-1 element
                            prod
                        } else {
                            index(n - 1, prod, tail[n - 1][r])
                        }
                    })
                    .collect();
                level.push(TwistedMap::plain(image));
                level.push(TwistedMap {
                    image: tail[n].clone(),
                    transport: Some(first[n].clone()),
                });
            }
            faces.push(level);
        }

        let mut degeneracies: Vec<Vec<Vec<u32>>> = Vec::with_capacity(top + 1);
        for n in 0..=top {
            if n == top {
                degeneracies.push(Vec::new());
                break;
            }
            let size = targets[n].len();
            let mut level: Vec<Vec<u32>> = Vec::with_capacity(n + 1);
            for i in 0..n {
                let inner: &Vec<u32> = &degeneracies[n - 1][i];
                level.push(
                    (0..size)
                        .map(|x| index(n + 1, first[n][x], inner[tail[n][x] as usize]))
                        .collect(),
                );
            }
            level.push(
                (0..size)
                    .map(|x| index(n + 1, g.unit(targets[n][x] as usize) as u32, x as u32))
                    .collect(),
            );
            degeneracies.push(level);
        }
        let set = SimplicialSet::new(targets, faces, degeneracies)?;
        Ok(TruncatedNerve {
            groupoid,
            first,
            tail,
            start,
            group_pos,
            set,
        })
    }

    /// Index at level `n` of `(a, rest)` with `rest` at level `n - 1`.
    pub fn cons(&self, n: usize, a: usize, rest: usize) -> usize {
        (self.start[n][a] + self.group_pos[n - 1][rest]) as usize
    }

    /// Index at level `n + 1` of `(g_n, ..., g_1, a)`; needs `t(a) = s(g_1)`.
    pub fn snoc(&self, n: usize, x: usize, a: usize) -> usize {
        if n == 0 {
            debug_assert_eq!(self.groupoid.tgt(a), x);
            return a;
        }
        let rest = self.snoc(n - 1, self.tail[n][x] as usize, a);
        self.cons(n + 1, self.first[n][x] as usize, rest)
    }

    /// Product `g_n ⋯ g_1` of a tuple at level `n >= 1`.
    pub fn product(&self, n: usize, x: usize) -> usize {
        let g = &*self.groupoid;
        let t = self.tuple(n, x);
        t[1..].iter().fold(t[0], |acc, &a| g.mul(acc, a))
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn top(&self) -> usize {
        self.set.top()
    }

    pub fn size(&self, n: usize) -> usize {
        self.set.size(n)
    }

    pub fn simplicial(&self) -> &SimplicialSet {
        &self.set
    }

    /// The tuple `(g_n, ..., g_1)` of a level-`n` element; empty for objects.
    pub fn tuple(&self, n: usize, x: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(n);
        let mut x = x;
        for m in (1..=n).rev() {
            out.push(self.first[m][x] as usize);
            x = self.tail[m][x] as usize;
        }
        out
    }

    /// Object at the source end of a tuple (the element itself at level 0).
    pub fn source(&self, n: usize, x: usize) -> usize {
        let mut x = x;
        for m in (1..=n).rev() {
            x = self.tail[m][x] as usize;
        }
        x
    }

    pub fn target(&self, n: usize, x: usize) -> usize {
        self.set.targets(n)[x] as usize
    }

    /// Index of a tuple given as `(g_n, ..., g_1)`.
    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        let n = tuple.len();
        if n > self.top() {
            return None;
        }
        let g = &*self.groupoid;
        if n == 0 {
            return None;
        }
        for w in tuple.windows(2) {
            if g.src(w[0]) != g.tgt(w[1]) {
                return None;
            }
        }
        // walk from the source end upward
        let mut x = g.src(tuple[n - 1]);
        for m in 1..=n {
            let a = tuple[n - m] as u32;
            let lo = self.first[m].partition_point(|&b| b < a);
            let hi = self.first[m].partition_point(|&b| b <= a);
            x = (lo..hi).find(|&y| self.tail[m][y] as usize == x)?;
        }
        Some(x)
    }

    pub fn describe(&self, n: usize, x: usize) -> String {
        let g = &*self.groupoid;
        if n == 0 {
            return g.object_name(x).to_string();
        }
        let names: Vec<&str> = self.tuple(n, x).iter().map(|&a| g.arrow_name(a)).collect();
        format!("({})", names.join(", "))
    }
}

/// The nerve of `groupoid` truncated at level `top`.
pub fn nerve(groupoid: &Arc<FiniteGroupoid>, top: usize, budget: usize) -> Result<TruncatedNerve> {
    TruncatedNerve::build(groupoid.clone(), top, budget)
}
