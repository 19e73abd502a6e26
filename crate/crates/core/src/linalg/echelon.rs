//! Incremental column echelon form.
//!
//! Vectors are reduced by their leading (lowest-index) entry against the
//! stored basis. Each stored vector is normalised so its pivot entry is 1
//! and may carry a combination over caller-supplied labels, which is how
//! kernels and quotient coordinates are read off.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::sparse::{Accumulator, RationalMatrix, SparseVec};
use crate::rational::Rational;

const NONE: u32 = u32::MAX;

pub struct Echelon {
    pivot_of_row: Vec<u32>,
    basis: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    work: Accumulator,
    label_work: Accumulator,
}

/// Outcome of reducing a vector against the current basis.
pub struct Reduction {
    /// What is left after subtracting basis multiples; zero iff in the span.
    pub remainder: SparseVec,
    /// `v - remainder` written over labels of the stored vectors.
    pub coords: SparseVec,
}

pub enum Insert {
    Independent { pivot: usize },
    Dependent { coords: SparseVec },
}

impl Echelon {
    /// `dim` is the ambient length; `labels` bounds label indices.
    pub fn new(dim: usize, labels: usize) -> Self {
        Echelon {
            pivot_of_row: vec![NONE; dim],
            basis: Vec::new(),
            combos: Vec::new(),
            work: Accumulator::new(dim),
            label_work: Accumulator::new(labels),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.pivot_of_row.len()
    }

    pub fn reduce(&mut self, v: &SparseVec) -> Reduction {
        let mut heap: BinaryHeap<Reverse<usize>> = v.entries().iter().map(|e| Reverse(e.0)).collect();
        for (i, x) in v.entries() {
            self.work.add(*i, x);
        }
        let mut last = usize::MAX;
        while let Some(Reverse(i)) = heap.pop() {
            if i == last {
                continue;
            }
            last = i;
            if self.work.value(i).is_zero() {
                continue;
            }
            let k = self.pivot_of_row[i];
            if k == NONE {
                break;
            }
            let a = self.work.value(i).clone();
            let neg = -&a;
            let b = &self.basis[k as usize];
            for (j, x) in b.entries() {
                if *j != i {
                    heap.push(Reverse(*j));
                }
                self.work.add(*j, &(x * &neg));
            }
            self.label_work.add_scaled(&a, &self.combos[k as usize]);
        }
        Reduction {
            remainder: self.work.take(),
            coords: self.label_work.take(),
        }
    }

    /// Reduces `v` and stores the remainder if nonzero.
    pub fn insert(&mut self, v: &SparseVec, label: Option<usize>) -> Insert {
        let red = self.reduce(v);
        let Some((pivot, lead)) = red.remainder.leading().cloned() else {
            return Insert::Dependent { coords: red.coords };
        };
        let inv = lead.recip().expect("nonzero pivot");
        let stored = red.remainder.scale(&inv);
        let mut combo = red.coords.scale(&-&inv);
        if let Some(l) = label {
            combo = combo.axpy(&inv, &SparseVec::unit(l));
        }
        self.pivot_of_row[pivot] = self.basis.len() as u32;
        self.basis.push(stored);
        self.combos.push(combo);
        Insert::Independent { pivot }
    }

    pub fn contains(&mut self, v: &SparseVec) -> bool {
        self.reduce(v).remainder.is_zero()
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    // Fewer, longer vectors reduce faster than many short ones here.
    let m = if m.cols() > m.rows() { m.transpose() } else { m.clone() };
    let mut e = Echelon::new(m.rows(), 0);
    for c in m.columns() {
        e.insert(c, None);
        if e.rank() == m.rows() {
            break;
        }
    }
    e.rank()
}

/// Basis of the null space, one column per free column of `m`.
pub fn kernel(m: &RationalMatrix) -> RationalMatrix {
    let mut e = Echelon::new(m.rows(), m.cols());
    let mut out = Vec::new();
    for (j, c) in m.columns().iter().enumerate() {
        if let Insert::Dependent { coords } = e.insert(c, Some(j)) {
            out.push(SparseVec::unit(j).axpy(&Rational::from_int(-1), &coords));
        }
    }
    RationalMatrix::from_columns(m.cols(), out)
}

/// Independent columns of `m` spanning its image, with their indices.
pub fn image(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut e = Echelon::new(m.rows(), 0);
    let mut idx = Vec::new();
    for (j, c) in m.columns().iter().enumerate() {
        if let Insert::Independent { .. } = e.insert(c, None) {
            idx.push(j);
        }
    }
    (m.select_columns(&idx), idx)
}

/// Solves `m x = b` when solvable.
pub fn solve(m: &RationalMatrix, b: &SparseVec) -> Option<SparseVec> {
    let mut e = Echelon::new(m.rows(), m.cols());
    for (j, c) in m.columns().iter().enumerate() {
        e.insert(c, Some(j));
    }
    let red = e.reduce(b);
    red.remainder.is_zero().then_some(red.coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, d: &[i64]) -> RationalMatrix {
        let data: Vec<Vec<Rational>> = d.chunks(cols).map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        RationalMatrix::from_dense(rows, cols, &data).unwrap()
    }

    #[test]
    fn rank_kernel_image() {
        let a = m(3, 4, &[1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 1, 0]);
        assert_eq!(rank(&a), 2);
        let k = kernel(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).unwrap().is_zero());
        let (im, idx) = image(&a);
        assert_eq!(idx, vec![0, 1]);
        assert_eq!(im.cols(), 2);
    }

    #[test]
    fn solve_roundtrip() {
        let a = m(3, 2, &[1, 0, 1, 1, 0, 2]);
        let x = SparseVec::from_dense(&[Rational::from_int(3), Rational::new(1, 2).unwrap()]);
        let b = a.apply(&x);
        assert_eq!(solve(&a, &b).unwrap(), x);
        assert!(solve(&a, &SparseVec::unit(0)).is_none());
    }
}
