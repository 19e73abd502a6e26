use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Rational::one())],
        }
    }

    /// Builds from unsorted, possibly repeated entries, summing duplicates.
    pub fn from_entries(mut raw: Vec<(usize, Rational)>) -> Self {
        raw.sort_by_key(|e| e.0);
        let mut entries: Vec<(usize, Rational)> = Vec::with_capacity(raw.len());
        for (i, v) in raw {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += &v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|e| !e.1.is_zero());
        SparseVec { entries }
    }

    /// Caller guarantees sorted, distinct, nonzero entries.
    pub(crate) fn from_sorted(entries: Vec<(usize, Rational)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| !e.1.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|e| !e.1.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(usize, Rational)> {
        self.entries.first()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn scale(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`
    pub fn axpy(&self, c: &Rational, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut p, mut q) = (0, 0);
        while p < a.len() || q < b.len() {
            if q == b.len() || (p < a.len() && a[p].0 < b[q].0) {
                out.push(a[p].clone());
                p += 1;
            } else if p == a.len() || b[q].0 < a[p].0 {
                out.push((b[q].0, &b[q].1 * c));
                q += 1;
            } else {
                let v = &a[p].1 + &(&b[q].1 * c);
                if !v.is_zero() {
                    out.push((a[p].0, v));
                }
                p += 1;
                q += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); len];
        for (i, x) in &self.entries {
            v[*i] = x.clone();
        }
        v
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, v)| (i, v))).finish()
    }
}

/// Dense scratch buffer with a touched list, reused across sparse sums.
pub(crate) struct Accumulator {
    vals: Vec<Rational>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl Accumulator {
    pub fn new(len: usize) -> Self {
        Accumulator {
            vals: vec![Rational::zero(); len],
            touched: Vec::new(),
            mark: vec![false; len],
        }
    }

    pub fn add(&mut self, i: usize, v: &Rational) {
        if !self.mark[i] {
            self.mark[i] = true;
            self.touched.push(i);
        }
        self.vals[i] += v;
    }

    pub fn add_scaled(&mut self, c: &Rational, v: &SparseVec) {
        if c.is_one() {
            for (i, x) in v.entries() {
                self.add(*i, x);
            }
        } else {
            for (i, x) in v.entries() {
                self.add(*i, &(x * c));
            }
        }
    }

    pub fn value(&self, i: usize) -> &Rational {
        &self.vals[i]
    }

    /// Drains into a sparse vector and resets.
    pub fn take(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.mark[i] = false;
            let v = std::mem::take(&mut self.vals[i]);
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        self.touched.clear();
        SparseVec::from_sorted(out)
    }
}

/// Column-major sparse matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        RationalMatrix {
            rows: n,
            cols: n,
            columns: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.max_index().is_none_or(|m| m < rows)));
        RationalMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut per_col: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); cols];
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::IndexOutOfRange {
                    what: "matrix entry".into(),
                    index: if i >= rows { i } else { j },
                    bound: if i >= rows { rows } else { cols },
                });
            }
            per_col[j].push((i, v));
        }
        Ok(RationalMatrix {
            rows,
            cols,
            columns: per_col.into_iter().map(SparseVec::from_entries).collect(),
        })
    }

    /// Row-major dense input.
    pub fn from_dense(rows: usize, cols: usize, data: &[Vec<Rational>]) -> Result<Self> {
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                context: "dense matrix".into(),
                expected: (rows, cols),
                found: (data.len(), data.first().map_or(0, |r| r.len())),
            });
        }
        let trip = data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (i, j, v.clone())));
        Self::from_triplets(rows, cols, trip)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVec::nnz).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.columns[j].get(i)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.entries().iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.rows);
        for (k, x) in v.entries() {
            acc.add_scaled(x, &self.columns[*k]);
        }
        acc.take()
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product".into(),
                expected: (self.cols, self.cols),
                found: (rhs.rows, rhs.cols),
            });
        }
        let mut acc = Accumulator::new(self.rows);
        let columns = rhs
            .columns
            .iter()
            .map(|col| {
                for (k, x) in col.entries() {
                    acc.add_scaled(x, &self.columns[*k]);
                }
                acc.take()
            })
            .collect();
        Ok(RationalMatrix {
            rows: self.rows,
            cols: rhs.cols,
            columns,
        })
    }

    /// `self + c * rhs`
    pub fn add_scaled(&self, c: &Rational, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                context: "matrix sum".into(),
                expected: self.shape(),
                found: rhs.shape(),
            });
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .zip(&rhs.columns)
                .map(|(a, b)| a.axpy(c, b))
                .collect(),
        })
    }

    pub fn add(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        self.add_scaled(&Rational::one(), rhs)
    }

    pub fn sub(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        self.add_scaled(&Rational::from_int(-1), rhs)
    }

    pub fn scale(&self, c: &Rational) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|v| v.scale(c)).collect(),
        }
    }

    /// Multiplies row `i` by `w[i]`.
    pub fn scale_rows(&self, w: &[Rational]) -> RationalMatrix {
        let columns = self
            .columns
            .iter()
            .map(|c| {
                SparseVec::from_sorted(
                    c.entries()
                        .iter()
                        .map(|(i, v)| (*i, v * &w[*i]))
                        .filter(|e| !e.1.is_zero())
                        .collect(),
                )
            })
            .collect();
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            columns,
        }
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut per_row: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c.entries() {
                per_row[*i].push((j, v.clone()));
            }
        }
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            columns: per_row.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    /// First entry where `self` and `rhs` differ, as (row, col, lhs, rhs).
    pub fn first_difference(&self, rhs: &RationalMatrix) -> Option<(usize, usize, Rational, Rational)> {
        if self.shape() != rhs.shape() {
            return Some((self.rows, self.cols, Rational::zero(), Rational::zero()));
        }
        for j in 0..self.cols {
            if self.columns[j] != rhs.columns[j] {
                let d = self.columns[j].axpy(&Rational::from_int(-1), &rhs.columns[j]);
                let i = d.leading().map_or(0, |e| e.0);
                return Some((i, j, self.get(i, j), rhs.get(i, j)));
            }
        }
        None
    }

    pub fn select_columns(&self, idx: &[usize]) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: idx.len(),
            columns: idx.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }

    pub fn hstack(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch {
                context: "hstack".into(),
                expected: (self.rows, 0),
                found: (rhs.rows, 0),
            });
        }
        let mut columns = self.columns.clone();
        columns.extend(rhs.columns.iter().cloned());
        Ok(RationalMatrix::from_columns(self.rows, columns))
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(f, "  {}", cells.join(" "))?;
            }
        } else {
            writeln!(f, "  {} nonzeros", self.nnz())?;
        }
        write!(f, "]")
    }
}

/// Assembles a matrix from blocks placed at row/column offsets.
pub struct BlockBuilder {
    rows: usize,
    cols: usize,
    per_col: Vec<Vec<(usize, Rational)>>,
}

impl BlockBuilder {
    pub fn new(rows: usize, cols: usize) -> Self {
        BlockBuilder {
            rows,
            cols,
            per_col: vec![Vec::new(); cols],
        }
    }

    pub fn place(&mut self, row_off: usize, col_off: usize, block: &RationalMatrix, sign: &Rational) {
        debug_assert!(row_off + block.rows() <= self.rows && col_off + block.cols() <= self.cols);
        for (j, c) in block.columns().iter().enumerate() {
            let dst = &mut self.per_col[col_off + j];
            for (i, v) in c.entries() {
                dst.push((row_off + i, if sign.is_one() { v.clone() } else { v * sign }));
            }
        }
    }

    pub fn build(self) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.per_col.into_iter().map(SparseVec::from_entries).collect(),
        }
    }
}
