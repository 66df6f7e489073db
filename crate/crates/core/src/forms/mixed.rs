use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::{QuotientPresentation, SparseMatrix, SparseVec};

/// A truncated mixed complex: spaces `C_0, …, C_N` with `b: C_n → C_{n-1}`
/// and `B: C_n → C_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedComplex {
    dims: Vec<usize>,
    b: Vec<SparseMatrix>,
    big_b: Vec<SparseMatrix>,
}

impl MixedComplex {
    /// `b[n]` for `1 ≤ n ≤ N` (index 0 is ignored and replaced by the zero
    /// map to the zero space) and `big_b[n]` for `0 ≤ n < N`.
    pub fn new(dims: Vec<usize>, mut b: Vec<SparseMatrix>, big_b: Vec<SparseMatrix>) -> Result<Self> {
        let top = dims.len().checked_sub(1).ok_or_else(|| Error::DimensionMismatch("empty complex".into()))?;
        if b.len() != top + 1 || big_b.len() != top {
            return Err(Error::DimensionMismatch("operator count does not match the truncation".into()));
        }
        b[0] = SparseMatrix::zeros(0, dims[0]);
        for n in 1..=top {
            if b[n].rows() != dims[n - 1] || b[n].cols() != dims[n] {
                return Err(Error::DimensionMismatch(format!("b in degree {n} has the wrong shape")));
            }
        }
        for n in 0..top {
            if big_b[n].rows() != dims[n + 1] || big_b[n].cols() != dims[n] {
                return Err(Error::DimensionMismatch(format!("B in degree {n} has the wrong shape")));
            }
        }
        Ok(Self { dims, b, big_b })
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    /// `b: C_n → C_{n-1}`; for `n = 0` the zero map to the zero space.
    pub fn b(&self, n: usize) -> &SparseMatrix {
        &self.b[n]
    }

    /// `B: C_n → C_{n+1}`, `n < N`.
    pub fn big_b(&self, n: usize) -> &SparseMatrix {
        &self.big_b[n]
    }

    /// `b² = 0`, `B² = 0` and `bB + Bb = 0` in every composable degree.
    pub fn check_identities(&self) -> Result<()> {
        let top = self.top();
        for n in 2..=top {
            if !self.b[n - 1].matmul(&self.b[n])?.is_zero() {
                return Err(Error::IdentityFailure(format!("b² ≠ 0 in degree {n}")));
            }
        }
        for n in 0..top.saturating_sub(1) {
            if !self.big_b[n + 1].matmul(&self.big_b[n])?.is_zero() {
                return Err(Error::IdentityFailure(format!("B² ≠ 0 in degree {n}")));
            }
        }
        for n in 0..top {
            // bB + Bb: C_n → C_n.
            let bb = self.b[n + 1].matmul(&self.big_b[n])?;
            let sum = if n >= 1 { bb.add(&self.big_b[n - 1].matmul(&self.b[n])?)? } else { bb };
            if !sum.is_zero() {
                return Err(Error::IdentityFailure(format!("bB + Bb ≠ 0 in degree {n}")));
            }
        }
        Ok(())
    }

    /// The same complex truncated at degree `top`.
    pub fn truncate(&self, top: usize) -> Self {
        assert!(top <= self.top());
        Self {
            dims: self.dims[..=top].to_vec(),
            b: self.b[..=top].to_vec(),
            big_b: self.big_b[..top].to_vec(),
        }
    }

    /// Whether `b` and `B` map the span of `blocks[n]` into the span of
    /// `blocks[n∓1]` with equal labels. `labels[n][i]` is the label of basis
    /// vector `i` in degree `n`.
    pub fn is_block_diagonal<L: PartialEq + Sync>(&self, labels: &[Vec<L>]) -> bool {
        let top = self.top();
        let check = |m: &SparseMatrix, from: &[L], to: &[L]| m.iter().all(|(r, c, _)| to[r] == from[c]);
        (1..=top).all(|n| check(&self.b[n], &labels[n], &labels[n - 1]))
            && (0..top).all(|n| check(&self.big_b[n], &labels[n], &labels[n + 1]))
    }

    /// Subcomplex spanned by the listed basis vectors in each degree (assumed
    /// to be a direct summand; see [`MixedComplex::is_block_diagonal`]).
    pub fn restrict(&self, keep: &[Vec<usize>]) -> Result<Self> {
        let top = self.top();
        let dims: Vec<usize> = keep.iter().map(Vec::len).collect();
        let mut b = vec![SparseMatrix::zeros(0, dims[0])];
        for n in 1..=top {
            b.push(self.b[n].select_rows(&keep[n - 1]).select_cols(&keep[n]));
        }
        let big_b = (0..top).map(|n| self.big_b[n].select_rows(&keep[n + 1]).select_cols(&keep[n])).collect();
        Self::new(dims, b, big_b)
    }

    /// The complex induced on the quotients `C_n / W_n`. Fails with
    /// `WellDefinednessFailure` if an operator does not map `W_n` into
    /// `W_{n∓1}`.
    pub fn induced_on_quotients(&self, quots: &[QuotientPresentation]) -> Result<Self> {
        let top = self.top();
        if quots.len() != top + 1 || quots.iter().zip(&self.dims).any(|(q, &d)| q.ambient_dim() != d) {
            return Err(Error::DimensionMismatch("quotient list does not match the complex".into()));
        }
        let induce = |m: &SparseMatrix, from: &QuotientPresentation, to: &QuotientPresentation, what: &str| {
            let cols: Vec<SparseVec> = m.columns();
            for r in from.relation_subspace().basis() {
                let img: SparseVec = mul_columns(&cols, r);
                if !to.project(&img).is_zero() {
                    return Err(Error::WellDefinednessFailure(format!("{what} does not preserve relations")));
                }
            }
            let out: Vec<SparseVec> =
                from.canonical_complement().par_iter().map(|&i| to.project(&cols[i])).collect();
            SparseMatrix::from_columns(to.dim(), &out)
        };
        let dims: Vec<usize> = quots.iter().map(QuotientPresentation::dim).collect();
        let mut b = vec![SparseMatrix::zeros(0, dims[0])];
        for n in 1..=top {
            b.push(induce(&self.b[n], &quots[n], &quots[n - 1], &format!("b in degree {n}"))?);
        }
        let mut big_b = Vec::with_capacity(top);
        for n in 0..top {
            big_b.push(induce(&self.big_b[n], &quots[n], &quots[n + 1], &format!("B in degree {n}"))?);
        }
        Self::new(dims, b, big_b)
    }

    /// Whether the degreewise maps `f[n]: self_n → other_n` commute with `b`
    /// and `B`.
    pub fn is_chain_map_to(&self, other: &MixedComplex, f: &[SparseMatrix]) -> Result<bool> {
        let top = self.top().min(other.top());
        for n in 1..=top {
            if f[n - 1].matmul(&self.b[n])? != other.b[n].matmul(&f[n])? {
                return Ok(false);
            }
        }
        for n in 0..top {
            if f[n + 1].matmul(&self.big_b[n])? != other.big_b[n].matmul(&f[n])? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Direct sum of complexes with the same truncation.
    pub fn direct_sum(parts: &[&MixedComplex]) -> Result<Self> {
        let top = parts.first().map(|p| p.top()).ok_or_else(|| Error::DimensionMismatch("no summands".into()))?;
        if parts.iter().any(|p| p.top() != top) {
            return Err(Error::DimensionMismatch("summands with different truncations".into()));
        }
        let dims: Vec<usize> = (0..=top).map(|n| parts.iter().map(|p| p.dim(n)).sum()).collect();
        let diag = |pick: &dyn Fn(&MixedComplex) -> &SparseMatrix, rows: usize, cols: usize| {
            let mut blocks = Vec::new();
            let (mut r0, mut c0) = (0, 0);
            for p in parts {
                let m = pick(p);
                blocks.push((r0, c0, m));
                r0 += m.rows();
                c0 += m.cols();
            }
            SparseMatrix::assemble(rows, cols, &blocks)
        };
        let mut b = vec![SparseMatrix::zeros(0, dims[0])];
        for n in 1..=top {
            b.push(diag(&|p| p.b(n), dims[n - 1], dims[n])?);
        }
        let big_b = (0..top).map(|n| diag(&|p| p.big_b(n), dims[n + 1], dims[n])).collect::<Result<Vec<_>>>()?;
        Self::new(dims, b, big_b)
    }
}

fn mul_columns(cols: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut acc = Vec::new();
    for (i, c) in v.entries() {
        for (r, x) in cols[*i].entries() {
            acc.push((*r, c * x));
        }
    }
    SparseVec::from_pairs(acc)
}
