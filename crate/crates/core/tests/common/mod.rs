//! Independent oracles: dense big-rational elimination, brute-force chain
//! enumeration and the inhomogeneous bar complex.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::HashMap;

use gpdcoh::coefficients::Representation;
use gpdcoh::groupoid::FiniteGroupoid;
use gpdcoh::linalg::RationalMatrix;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Dense = Vec<Vec<BigRational>>;

pub fn dense(m: &RationalMatrix) -> Dense {
    m.to_dense()
        .iter()
        .map(|r| r.iter().map(BigRational::from).collect())
        .collect()
}

/// Rank by plain Gaussian elimination on a copy.
pub fn dense_rank(mut a: Dense) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &pivot;
                for k in c..cols {
                    let sub = &f * &a[rank][k];
                    a[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn dense_mul(a: &Dense, b: &Dense, inner: usize, cols: usize) -> Dense {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigRational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// All chains `(g_1, .., g_n)` with `s(g_i) = t(g_{i+1})`, by nested
/// extension; level 0 lists objects as one-element chains.
pub fn chains(g: &FiniteGroupoid, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return (0..g.num_objects()).map(|x| vec![x]).collect();
    }
    let mut out: Vec<Vec<usize>> = (0..g.num_arrows()).map(|a| vec![a]).collect();
    for _ in 1..n {
        let mut next = Vec::new();
        for c in &out {
            let last = *c.last().unwrap();
            for a in 0..g.num_arrows() {
                if g.tgt(a) == g.src(last) {
                    let mut d = c.clone();
                    d.push(a);
                    next.push(d);
                }
            }
        }
        out = next;
    }
    out
}

fn chain_target(g: &FiniteGroupoid, n: usize, c: &[usize]) -> usize {
    if n == 0 {
        c[0]
    } else {
        g.tgt(c[0])
    }
}

fn add_block(m: &mut Dense, r0: usize, c0: usize, block: Option<&Dense>, rows: usize, cols: usize, sign: i64) {
    let s = BigRational::from_integer(sign.into());
    for i in 0..rows {
        for j in 0..cols {
            let v = match block {
                Some(b) => b[i][j].clone(),
                None if i == j => BigRational::one(),
                None => continue,
            };
            m[r0 + i][c0 + j] += &s * v;
        }
    }
}

/// Dimensions of `H^0..=H^through` of the bar complex with coefficients in
/// `rep`, where cochains on `(g_1, .., g_n)` take values in `E_{t(g_1)}`.
pub fn bar_cohomology(rep: &Representation, through: usize) -> Vec<usize> {
    let g = &**rep.groupoid();
    let levels: Vec<Vec<Vec<usize>>> = (0..=through + 1).map(|n| chains(g, n)).collect();
    let act: Vec<Dense> = (0..g.num_arrows()).map(|a| dense(rep.action(a))).collect();
    let mut offsets = Vec::new();
    let mut dims = Vec::new();
    for (n, level) in levels.iter().enumerate() {
        let mut off = Vec::with_capacity(level.len());
        let mut total = 0;
        for c in level {
            off.push(total);
            total += rep.fiber_dim(chain_target(g, n, c));
        }
        offsets.push(off);
        dims.push(total);
    }
    let lookup: Vec<HashMap<&[usize], usize>> = levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect())
        .collect();
    let index = |n: usize, c: &[usize]| lookup[n][c];
    let mut ranks = Vec::new();
    for n in 0..=through {
        let mut m: Dense = vec![vec![BigRational::zero(); dims[n]]; dims[n + 1]];
        for (row, c) in levels[n + 1].iter().enumerate() {
            let r0 = offsets[n + 1][row];
            let fiber = rep.fiber_dim(chain_target(g, n + 1, c));
            let a = c[0];
            let (first, tail) = if n == 0 {
                (g.src(a), g.tgt(a))
            } else {
                (index(n, &c[1..]), index(n, &c[..n]))
            };
            add_block(
                &mut m,
                r0,
                offsets[n][first],
                Some(&act[a]),
                fiber,
                rep.fiber_dim(g.src(a)),
                1,
            );
            for i in 1..=n {
                let mut d = c[..i - 1].to_vec();
                d.push(g.compose(c[i - 1], c[i]).expect("composable"));
                d.extend_from_slice(&c[i + 1..]);
                add_block(
                    &mut m,
                    r0,
                    offsets[n][index(n, &d)],
                    None,
                    fiber,
                    fiber,
                    if i % 2 == 0 { 1 } else { -1 },
                );
            }
            add_block(
                &mut m,
                r0,
                offsets[n][tail],
                None,
                fiber,
                fiber,
                if (n + 1) % 2 == 0 { 1 } else { -1 },
            );
        }
        ranks.push(dense_rank(m));
    }
    (0..=through)
        .map(|n| dims[n] - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 })
        .collect()
}
