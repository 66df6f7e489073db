use crate::conventions::{checked_pow, sign, tuple_digits, tuple_index};
use crate::error::{Error, Result};
use crate::exactlin::{homology_dim, Rational, SparseMatrix, SparseVec};

use super::{FiniteGroup, GroupModule};

/// Default bar truncation.
pub const DEFAULT_BAR_DEGREE: usize = 4;
/// Default cap on the number of basis vectors of a single bar term.
pub const DEFAULT_BAR_CAP: usize = 500_000;

/// The homogeneous bar resolution `P_n = k[G^{n+1}]`, `0 ≤ n ≤ top`.
#[derive(Clone, Debug)]
pub struct BarResolution {
    group: FiniteGroup,
    top: usize,
}

impl BarResolution {
    pub fn new(group: &FiniteGroup, top: usize) -> Result<Self> {
        Self::with_cap(group, top, DEFAULT_BAR_CAP)
    }

    pub fn with_cap(group: &FiniteGroup, top: usize, cap: usize) -> Result<Self> {
        let needed = checked_pow(group.order(), top).unwrap_or(usize::MAX);
        if needed > cap {
            return Err(Error::ResourceCap {
                what: format!("bar resolution of {} to degree {top}", group.name()),
                needed: needed as u128,
                cap: cap as u128,
            });
        }
        Ok(Self { group: group.clone(), top })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Rank of `P_n` as a free `kG`-module.
    pub fn free_rank(&self, n: usize) -> usize {
        self.group.order().pow(n as u32)
    }

    /// Dimension of `P_n` over the ground field.
    pub fn dim(&self, n: usize) -> usize {
        self.group.order().pow(n as u32 + 1)
    }

    /// `∂_n: P_n → P_{n-1}` on the full homogeneous basis, `1 ≤ n ≤ top`.
    pub fn boundary(&self, n: usize) -> Result<SparseMatrix> {
        self.check_degree(n)?;
        let q = self.group.order();
        let mut trip = Vec::new();
        for src in 0..self.dim(n) {
            let t = tuple_digits(src, q, n + 1);
            for i in 0..=n {
                let mut f = t.clone();
                f.remove(i);
                trip.push((tuple_index(&f, q), src, Rational::from_int(sign(i))));
            }
        }
        SparseMatrix::from_triplets(self.dim(n - 1), self.dim(n), trip)
    }

    /// `ε: P_0 → k`.
    pub fn augmentation(&self) -> SparseMatrix {
        let q = self.group.order();
        SparseMatrix::from_triplets(1, q, (0..q).map(|g| (0, g, Rational::ONE))).expect("in range")
    }

    /// Left diagonal action of `h` on `P_n`.
    pub fn action(&self, n: usize, h: usize) -> SparseMatrix {
        let q = self.group.order();
        let trip = (0..self.dim(n)).map(|src| {
            let t: Vec<usize> = tuple_digits(src, q, n + 1).into_iter().map(|g| self.group.mul(h, g)).collect();
            (tuple_index(&t, q), src, Rational::ONE)
        });
        SparseMatrix::from_triplets(self.dim(n), self.dim(n), trip).expect("in range")
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.top {
            return Err(Error::Truncation(format!("bar boundary in degree {n} with top {}", self.top)));
        }
        Ok(())
    }

    /// Boundary of the coinvariant complex `(P ⊗ M)_G ≅ k[G^n] ⊗ M`, degree
    /// `n → n-1`. Basis index of `(g_1, …, g_n) ⊗ m_j` is `tuple * dim + j`.
    pub fn coinvariant_boundary(&self, n: usize, module: &GroupModule) -> Result<SparseMatrix> {
        self.check_degree(n)?;
        let cols = checked_pow(self.group.order(), n).unwrap_or(usize::MAX).saturating_mul(module.dim());
        let rows = self.group.order().pow(n as u32 - 1) * module.dim();
        let entries = coinvariant_boundary_entries(&self.group, n, module.dim(), |g| module.action(g));
        SparseMatrix::from_triplets(rows, cols, entries)
    }
}

/// Entries of the coinvariant bar boundary `k[G^n] ⊗ M → k[G^{n-1}] ⊗ M`,
/// with the module given by its action matrices.
pub(crate) fn coinvariant_boundary_entries<'a>(
    group: &FiniteGroup,
    n: usize,
    dim: usize,
    act: impl Fn(usize) -> &'a SparseMatrix,
) -> Vec<(usize, usize, Rational)> {
    let q = group.order();
    let mut trip = Vec::new();
    // Transposed views so that a column of g⁻¹ is a cheap lookup.
    let inv_cols: Vec<Vec<SparseVec>> = group.elements().map(|g| act(group.inv(g)).columns()).collect();
    for t_idx in 0..q.pow(n as u32) {
        let t = tuple_digits(t_idx, q, n);
        // Face 0 drops the leading e and renormalises by g_1⁻¹.
        let g1 = t[0];
        let g1i = group.inv(g1);
        let f0: Vec<usize> = t[1..].iter().map(|&g| group.mul(g1i, g)).collect();
        let f0_idx = tuple_index(&f0, q);
        for j in 0..dim {
            let src = t_idx * dim + j;
            for (r, v) in inv_cols[g1][j].entries() {
                trip.push((f0_idx * dim + r, src, v.clone()));
            }
            for i in 1..=n {
                let mut f = t.clone();
                f.remove(i - 1);
                trip.push((tuple_index(&f, q) * dim + j, src, Rational::from_int(sign(i))));
            }
        }
    }
    trip
}

/// `dim H_n(G, M)` from the coinvariant bar complex truncated at `bar_top`.
pub fn group_homology(group: &FiniteGroup, module: &GroupModule, n: usize, bar_top: usize) -> Result<usize> {
    if n + 1 > bar_top {
        return Err(Error::Truncation(format!("H_{n} needs bar degree {} but the truncation is {bar_top}", n + 1)));
    }
    let bar = BarResolution::new(group, bar_top)?;
    let d_in = bar.coinvariant_boundary(n + 1, module)?;
    let d_out = if n == 0 {
        SparseMatrix::zeros(0, module.dim())
    } else {
        bar.coinvariant_boundary(n, module)?
    };
    homology_dim(&d_in, &d_out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rank;

    #[test]
    fn trivial_group_pattern() {
        let bar = BarResolution::new(&FiniteGroup::trivial(), 3).unwrap();
        for n in 0..=3 {
            assert_eq!(bar.free_rank(n), 1);
        }
        assert!(bar.boundary(1).unwrap().is_zero());
        assert_eq!(bar.boundary(2).unwrap(), SparseMatrix::identity(1));
        assert!(bar.boundary(3).unwrap().is_zero());
    }

    #[test]
    fn z2_ranks_and_squares() {
        let bar = BarResolution::new(&FiniteGroup::cyclic(2), 3).unwrap();
        assert_eq!((0..3).map(|n| bar.free_rank(n)).collect::<Vec<_>>(), vec![1, 2, 4]);
        for n in 2..=3 {
            assert!(bar.boundary(n - 1).unwrap().matmul(&bar.boundary(n).unwrap()).unwrap().is_zero());
        }
        assert!(bar.augmentation().matmul(&bar.boundary(1).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn augmented_z3_is_acyclic() {
        let bar = BarResolution::new(&FiniteGroup::cyclic(3), 3).unwrap();
        let eps = bar.augmentation();
        // H_0 of the augmented complex: ker ε / im ∂_1.
        assert_eq!(bar.dim(0) - rank(&eps) - rank(&bar.boundary(1).unwrap()), 0);
        for n in 1..=2 {
            assert_eq!(homology_dim(&bar.boundary(n + 1).unwrap(), &bar.boundary(n).unwrap()).unwrap(), 0);
        }
    }

    #[test]
    fn coinvariant_boundary_squares_to_zero() {
        let g = FiniteGroup::symmetric(3);
        let m = GroupModule::sign(&g).unwrap();
        let bar = BarResolution::new(&g, 3).unwrap();
        let d2 = bar.coinvariant_boundary(2, &m).unwrap();
        let d3 = bar.coinvariant_boundary(3, &m).unwrap();
        assert!(bar.coinvariant_boundary(1, &m).unwrap().matmul(&d2).unwrap().is_zero());
        assert!(d2.matmul(&d3).unwrap().is_zero());
    }

    #[test]
    fn homology_examples() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(group_homology(&s3, &GroupModule::trivial(&s3, 1), 0, 4).unwrap(), 1);
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(group_homology(&z2, &GroupModule::trivial(&z2, 1), 1, 4).unwrap(), 0);
        assert_eq!(group_homology(&z2, &GroupModule::sign(&z2).unwrap(), 0, 4).unwrap(), 0);
        assert!(matches!(group_homology(&z2, &GroupModule::trivial(&z2, 1), 4, 4), Err(Error::Truncation(_))));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            BarResolution::with_cap(&FiniteGroup::symmetric(3), 8, 1000),
            Err(Error::ResourceCap { .. })
        ));
    }
}
