//! Sparse vectors and row-major sparse matrices over the rationals.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        Self { entries: vec![(i, Rational::ONE)] }
    }

    /// Builds a vector from unsorted `(index, value)` pairs, summing duplicates
    /// and dropping zeros.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Rational)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, v) in pairs {
            if v.is_zero() {
                continue;
            }
            let slot = acc.entry(i).or_insert(Rational::ZERO);
            *slot += &v;
        }
        Self { entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    /// Trusted constructor: caller guarantees sorted, deduplicated, nonzero.
    pub(crate) fn from_sorted(entries: Vec<(usize, Rational)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        Self { entries }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Rational)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rational::ZERO,
        }
    }

    pub fn leading(&self) -> Option<&(usize, Rational)> {
        self.entries.first()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    /// `self * a + other * b`, merged in index order.
    pub fn lin_comb(&self, a: &Rational, other: &SparseVec, b: &Rational) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut p, mut q) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while p < x.len() || q < y.len() {
            let take_x = q >= y.len() || (p < x.len() && x[p].0 < y[q].0);
            let take_y = p >= x.len() || (q < y.len() && y[q].0 < x[p].0);
            if take_x {
                let v = &x[p].1 * a;
                if !v.is_zero() {
                    out.push((x[p].0, v));
                }
                p += 1;
            } else if take_y {
                let v = &y[q].1 * b;
                if !v.is_zero() {
                    out.push((y[q].0, v));
                }
                q += 1;
            } else {
                let v = &(&x[p].1 * a) + &(&y[q].1 * b);
                if !v.is_zero() {
                    out.push((x[p].0, v));
                }
                p += 1;
                q += 1;
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> Self {
        self.lin_comb(&Rational::ONE, other, &Rational::ONE)
    }

    pub fn sub(&self, other: &SparseVec) -> Self {
        self.lin_comb(&Rational::ONE, other, &-Rational::ONE)
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let (mut p, mut q) = (0, 0);
        let mut acc = Rational::ZERO;
        while p < self.entries.len() && q < other.entries.len() {
            match self.entries[p].0.cmp(&other.entries[q].0) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => q += 1,
                std::cmp::Ordering::Equal => {
                    acc += &(&self.entries[p].1 * &other.entries[q].1);
                    p += 1;
                    q += 1;
                }
            }
        }
        acc
    }

    /// Divides by the gcd of the entries when all entries are integers, and
    /// makes the leading entry positive.
    pub fn make_primitive(&mut self) {
        let Some((_, lead)) = self.entries.first() else { return };
        let negate = lead.is_negative();
        if self.entries.iter().all(|(_, v)| v.is_integer()) {
            let mut g = Rational::ZERO;
            for (_, v) in &self.entries {
                g = g.int_gcd(v);
                if g.is_one() {
                    break;
                }
            }
            let g = if negate { -g } else { g };
            if !g.is_one() {
                for (_, v) in &mut self.entries {
                    *v = v.int_div_exact(&g);
                }
            }
        } else if negate {
            for (_, v) in &mut self.entries {
                *v = -v.clone();
            }
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::ZERO; len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }
}

/// Row-major sparse matrix. Each row is a [`SparseVec`] over column indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: n, data: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVec>) -> Result<Self> {
        for r in &data {
            if let Some(m) = r.max_index() {
                if m >= cols {
                    return Err(Error::DimensionMismatch(format!(
                        "row entry at column {m} outside {cols} columns"
                    )));
                }
            }
        }
        Ok(Self { rows: data.len(), cols, data })
    }

    /// Builds a matrix from columns given as sparse vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Result<Self> {
        let t = Self::from_rows(rows, columns.to_vec())?;
        Ok(t.transpose())
    }

    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({r}, {c}) outside {rows}x{cols}"
                )));
            }
            buckets[r].push((c, v));
        }
        Ok(Self { rows, cols, data: buckets.into_iter().map(SparseVec::from_pairs).collect() })
    }

    pub fn from_dense(values: &[Vec<Rational>]) -> Self {
        let cols = values.first().map_or(0, |r| r.len());
        Self { rows: values.len(), cols, data: values.iter().map(|r| SparseVec::from_dense(r)).collect() }
    }

    pub fn from_int_rows(values: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> =
            values.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r].get(c)
    }

    /// Entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.entries().iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.iter() {
            buckets[c].push((r, v.clone()));
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data: buckets.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    /// Columns as sparse vectors of length `rows`.
    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_sorted(
            self.data
                .iter()
                .enumerate()
                .filter_map(|(r, row)| {
                    let x = row.dot(v);
                    (!x.is_zero()).then_some((r, x))
                })
                .collect(),
        )
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, a) in row.entries() {
                    for (c, b) in rhs.data[*k].entries() {
                        let e = acc.entry(*c).or_insert(Rational::ZERO);
                        *e += &(a * b);
                    }
                }
                SparseVec::from_sorted(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            })
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols: rhs.cols, data })
    }

    pub fn add(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        self.lin_comb(&Rational::ONE, rhs, &Rational::ONE)
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        self.lin_comb(&Rational::ONE, rhs, &-Rational::ONE)
    }

    pub fn lin_comb(&self, a: &Rational, rhs: &SparseMatrix, b: &Rational) -> Result<SparseMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot combine {}x{} with {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(x, y)| x.lin_comb(a, y, b)).collect();
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Rational) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.scale(c)).collect() }
    }

    /// Keeps the listed rows (in the given order).
    pub fn select_rows(&self, rows: &[usize]) -> SparseMatrix {
        SparseMatrix { rows: rows.len(), cols: self.cols, data: rows.iter().map(|&r| self.data[r].clone()).collect() }
    }

    /// Keeps the listed columns (in the given order); columns not listed are dropped.
    pub fn select_cols(&self, cols: &[usize]) -> SparseMatrix {
        let mut map = vec![usize::MAX; self.cols];
        for (new, &old) in cols.iter().enumerate() {
            map[old] = new;
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                SparseVec::from_pairs(
                    row.entries()
                        .iter()
                        .filter(|(c, _)| map[*c] != usize::MAX)
                        .map(|(c, v)| (map[*c], v.clone())),
                )
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: cols.len(), data }
    }

    /// Block matrix `[self | rhs]`.
    pub fn hstack(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch("hstack row mismatch".into()));
        }
        let off = self.cols;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(x, y)| {
                let mut e = x.entries().to_vec();
                e.extend(y.entries().iter().map(|(c, v)| (c + off, v.clone())));
                SparseVec::from_sorted(e)
            })
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols: self.cols + rhs.cols, data })
    }

    /// Block matrix `[self ; rhs]`.
    pub fn vstack(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Ok(SparseMatrix { rows: self.rows + rhs.rows, cols: self.cols, data })
    }

    /// Block-diagonal placement of `blocks` inside a `rows x cols` matrix at the
    /// given offsets.
    pub fn assemble(rows: usize, cols: usize, blocks: &[(usize, usize, &SparseMatrix)]) -> Result<SparseMatrix> {
        let mut trip = Vec::new();
        for (r0, c0, m) in blocks {
            for (r, c, v) in m.iter() {
                trip.push((r0 + r, c0 + c, v.clone()));
            }
        }
        SparseMatrix::from_triplets(rows, cols, trip)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn lin_comb_cancels() {
        let a = SparseVec::from_pairs([(0, q(1)), (3, q(2))]);
        let b = SparseVec::from_pairs([(3, q(1)), (5, q(-1))]);
        let c = a.lin_comb(&q(1), &b, &q(-2));
        assert_eq!(c.entries(), &[(0, q(1)), (5, q(2))]);
    }

    #[test]
    fn from_pairs_sums_and_drops_zero() {
        let v = SparseVec::from_pairs([(2, q(1)), (2, q(-1)), (1, q(3))]);
        assert_eq!(v.entries(), &[(1, q(3))]);
    }

    #[test]
    fn matmul_and_transpose() {
        let a = SparseMatrix::from_int_rows(&[&[1, 2], &[0, 1]]);
        let b = SparseMatrix::from_int_rows(&[&[1, 0], &[3, 1]]);
        let ab = a.matmul(&b).unwrap();
        assert_eq!(ab, SparseMatrix::from_int_rows(&[&[7, 2], &[3, 1]]));
        assert_eq!(ab.transpose().transpose(), ab);
        assert!(a.matmul(&SparseMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn primitive_normalization() {
        let mut v = SparseVec::from_pairs([(1, q(-4)), (2, q(6))]);
        v.make_primitive();
        assert_eq!(v.entries(), &[(1, q(2)), (2, q(-3))]);
    }

    #[test]
    fn out_of_bounds_rejected() {
        assert!(SparseMatrix::from_triplets(2, 2, [(2, 0, q(1))]).is_err());
    }
}
