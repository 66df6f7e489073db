use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, rank, rank_pair, Rational, SparseMatrix, SparseVec};
use crate::forms::MixedComplex;

use super::{HomologyProfile, PeriodicProfile, Theory};

/// A chain complex `T_0 ← T_1 ← …` with a degree-lowering-by-two chain map
/// `S: T_m → T_{m-2}`, the shape shared by the cyclic total complex and its
/// equivariant version.
pub(crate) trait PeriodicTotal: Sync {
    fn top(&self) -> usize;
    fn dim(&self, n: usize) -> usize;
    /// `D: T_n → T_{n-1}` for `1 ≤ n ≤ top`.
    fn boundary(&self, n: usize) -> Result<SparseMatrix>;
    /// `S^k: T_m → T_{m-2k}`.
    fn s_power(&self, m: usize, k: usize) -> Result<SparseMatrix>;
}

/// Caches boundary ranks; ranks dominate the cost.
pub(crate) struct RankCache<'a, T: PeriodicTotal> {
    total: &'a T,
    boundaries: Mutex<HashMap<usize, SparseMatrix>>,
    ranks: Mutex<HashMap<usize, usize>>,
}

impl<'a, T: PeriodicTotal> RankCache<'a, T> {
    pub(crate) fn new(total: &'a T) -> Self {
        Self { total, boundaries: Mutex::new(HashMap::new()), ranks: Mutex::new(HashMap::new()) }
    }

    pub(crate) fn boundary(&self, n: usize) -> Result<SparseMatrix> {
        if n == 0 {
            return Ok(SparseMatrix::zeros(0, self.total.dim(0)));
        }
        if let Some(m) = self.boundaries.lock().unwrap().get(&n) {
            return Ok(m.clone());
        }
        let m = self.total.boundary(n)?;
        self.boundaries.lock().unwrap().insert(n, m.clone());
        Ok(m)
    }

    pub(crate) fn rank(&self, n: usize) -> Result<usize> {
        if let Some(&r) = self.ranks.lock().unwrap().get(&n) {
            return Ok(r);
        }
        let r = rank(&self.boundary(n)?);
        self.ranks.lock().unwrap().insert(n, r);
        Ok(r)
    }

    /// `dim H_n`, needs `n + 1 ≤ top`.
    pub(crate) fn homology(&self, n: usize) -> Result<usize> {
        if n + 1 > self.total.top() {
            return Err(Error::Truncation(format!("degree {n} needs truncation at least {}", n + 1)));
        }
        let (r_in, r_out) = (self.rank(n + 1)?, self.rank(n)?);
        Ok(self.total.dim(n) - r_in - r_out)
    }

    /// Rank of `S^k: H_m → H_{m-2k}`. With `n = m - 2k` and `Φ` a basis of
    /// the functionals on `T_n` vanishing on boundaries, this is
    /// `rank [D_m; Φ S^k] - rank D_m`: a functional kills the image of the
    /// cycles exactly when `φ S^k` lies in the row space of `D_m`.
    pub(crate) fn s_image_rank(&self, m: usize, k: usize) -> Result<usize> {
        let n = m - 2 * k;
        let d_m = self.boundary(m)?;
        let s_t = self.total.s_power(m, k)?.transpose();
        let ann = kernel_basis(&self.boundary(n + 1)?.transpose());
        let extra: Vec<SparseVec> = ann.basis().iter().map(|phi| s_t.mul_vec(phi)).collect();
        let (base, all) = rank_pair(d_m.cols(), d_m.row_vectors(), &extra);
        self.ranks.lock().unwrap().insert(m, base);
        Ok(all - base)
    }
}

/// Periodic dims from the images of `S, S², …, S^w` into the two lowest
/// degrees of each parity, `w = windows[parity]`. Stabilized when both
/// windows are at least 2 and all image ranks of a parity agree.
pub(crate) fn periodic_from_total<T: PeriodicTotal>(total: &T, windows: [usize; 2]) -> Result<PeriodicProfile> {
    if windows.contains(&0) {
        return Err(Error::Truncation("stabilization window must be positive".into()));
    }
    let top = total.top();
    let cache = RankCache::new(total);
    let mut ranks = [Vec::new(), Vec::new()];
    for (parity, out) in ranks.iter_mut().enumerate() {
        let window = windows[parity];
        if parity + 2 * window > top {
            return Err(Error::Truncation(format!(
                "window {window} in parity {parity} needs truncation at least {}",
                parity + 2 * window
            )));
        }
        *out = (1..=window).map(|k| cache.s_image_rank(parity + 2 * k, k)).collect::<Result<Vec<_>>>()?;
    }
    let hc = (0..top).map(|n| cache.homology(n)).collect::<Result<Vec<_>>>()?;
    let settled = |r: &Vec<usize>| r.len() >= 2 && r.windows(2).all(|w| w[0] == w[1]);
    let stabilized = settled(&ranks[0]) && settled(&ranks[1]);
    let [even_ranks, odd_ranks] = ranks;
    Ok(PeriodicProfile {
        even: *even_ranks.last().unwrap(),
        odd: *odd_ranks.last().unwrap(),
        stabilized,
        even_s_ranks: even_ranks,
        odd_s_ranks: odd_ranks,
        hc,
        truncation: top,
        windows,
    })
}

/// The `(B, b)` total complex `Tot_n = C_n ⊕ C_{n-2} ⊕ …` of a mixed complex.
pub(crate) struct CyclicTotal<'a> {
    pub(crate) c: &'a MixedComplex,
}

impl<'a> CyclicTotal<'a> {
    /// Form degrees of the summands of `Tot_n`, top first, with offsets.
    pub(crate) fn layout(c: &MixedComplex, n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        let mut q = n as isize;
        while q >= 0 {
            out.push((q as usize, off));
            off += c.dim(q as usize);
            q -= 2;
        }
        out
    }

    pub(crate) fn tot_dim(c: &MixedComplex, n: usize) -> usize {
        Self::layout(c, n).iter().map(|&(q, _)| c.dim(q)).sum()
    }

    pub(crate) fn tot_boundary(c: &MixedComplex, n: usize) -> Result<SparseMatrix> {
        let src = Self::layout(c, n);
        let dst = Self::layout(c, n - 1);
        let pos = |q: usize| dst.iter().find(|&&(d, _)| d == q).map(|&(_, o)| o);
        let mut blocks = Vec::new();
        for &(q, off) in &src {
            if q >= 1 {
                blocks.push((pos(q - 1).expect("layout"), off, c.b(q)));
            }
            if let Some(o) = pos(q + 1) {
                blocks.push((o, off, c.big_b(q)));
            }
        }
        SparseMatrix::assemble(Self::tot_dim(c, n - 1), Self::tot_dim(c, n), &blocks)
    }

    /// `S^k: Tot_m → Tot_{m-2k}` drops the top `k` summands.
    pub(crate) fn tot_s(c: &MixedComplex, m: usize, k: usize) -> Result<SparseMatrix> {
        let src = Self::layout(c, m);
        let (_, start) = src[k];
        let rows = Self::tot_dim(c, m - 2 * k);
        SparseMatrix::from_triplets(rows, Self::tot_dim(c, m), (0..rows).map(|i| (i, start + i, Rational::ONE)))
    }
}

impl PeriodicTotal for CyclicTotal<'_> {
    fn top(&self) -> usize {
        self.c.top()
    }

    fn dim(&self, n: usize) -> usize {
        Self::tot_dim(self.c, n)
    }

    fn boundary(&self, n: usize) -> Result<SparseMatrix> {
        Self::tot_boundary(self.c, n)
    }

    fn s_power(&self, m: usize, k: usize) -> Result<SparseMatrix> {
        Self::tot_s(self.c, m, k)
    }
}

/// `HH_n = dim ker b_n / im b_{n+1}` for `n ≤ up_to`.
pub fn hochschild_dims(c: &MixedComplex, up_to: usize) -> Result<HomologyProfile> {
    if up_to >= c.top() {
        return Err(Error::Truncation(format!("HH_{up_to} needs truncation at least {}", up_to + 1)));
    }
    let ranks: Vec<usize> = (0..=up_to + 1).into_par_iter().map(|n| rank(c.b(n))).collect();
    let dims = (0..=up_to).map(|n| c.dim(n) - ranks[n] - ranks[n + 1]).collect();
    Ok(HomologyProfile { theory: Theory::Hochschild, dims, stabilized: None, truncation: c.top() })
}

/// `HC_n` for `n ≤ up_to`: homology of forms of degree `≤ n` under `b + B`
/// with the top slot taken modulo `b` of degree `n + 1`.
pub fn cyclic_dims(c: &MixedComplex, up_to: usize) -> Result<HomologyProfile> {
    let total = CyclicTotal { c };
    let cache = RankCache::new(&total);
    let dims = (0..=up_to).map(|n| cache.homology(n)).collect::<Result<Vec<_>>>()?;
    Ok(HomologyProfile { theory: Theory::Cyclic, dims, stabilized: None, truncation: c.top() })
}

/// Periodic dims by `S`-image stabilization over `window` steps in both
/// parities.
pub fn periodic_dims(c: &MixedComplex, window: usize) -> Result<PeriodicProfile> {
    periodic_from_total(&CyclicTotal { c }, [window, window])
}

/// As [`periodic_dims`] with separate even and odd windows.
pub fn periodic_dims_windows(c: &MixedComplex, windows: [usize; 2]) -> Result<PeriodicProfile> {
    periodic_from_total(&CyclicTotal { c }, windows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::StructureAlgebra;
    use crate::forms::build_forms;

    #[test]
    fn ground_field_profiles() {
        let fc = build_forms(&StructureAlgebra::field(), 5).unwrap();
        assert_eq!(hochschild_dims(fc.complex(), 3).unwrap().dims, vec![1, 0, 0, 0]);
        assert_eq!(cyclic_dims(fc.complex(), 4).unwrap().dims, vec![1, 0, 1, 0, 1]);
        let hp = periodic_dims(fc.complex(), 2).unwrap();
        assert!(hp.stabilized);
        assert_eq!((hp.even, hp.odd), (1, 0));
    }

    #[test]
    fn truncation_errors() {
        let fc = build_forms(&StructureAlgebra::field(), 2).unwrap();
        assert!(matches!(cyclic_dims(fc.complex(), 2), Err(Error::Truncation(_))));
        assert!(matches!(periodic_dims(fc.complex(), 2), Err(Error::Truncation(_))));
    }
}
