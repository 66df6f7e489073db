use crate::error::{Error, Result};
use crate::exactlin::{Rational, SparseMatrix, SparseVec};
use crate::groups::{sign_character, FiniteGroup, Subgroup};

use super::StructureAlgebra;

const EXHAUSTIVE_HOM_LIMIT: usize = 24;

/// A group acting on an algebra by automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraAction {
    group: FiniteGroup,
    dim: usize,
    matrices: Vec<SparseMatrix>,
}

impl AlgebraAction {
    /// Validates one matrix per group element.
    pub fn new(algebra: &StructureAlgebra, group: &FiniteGroup, matrices: Vec<SparseMatrix>) -> Result<Self> {
        let d = algebra.dim();
        if matrices.len() != group.order() || matrices.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::InvalidAction("need one dim×dim matrix per group element".into()));
        }
        if matrices[group.identity()] != SparseMatrix::identity(d) {
            return Err(Error::InvalidAction("identity must act trivially".into()));
        }
        for (g, m) in matrices.iter().enumerate() {
            for i in 0..d {
                let mi = m.mul_vec(&SparseVec::unit(i));
                for j in 0..d {
                    let lhs = m.mul_vec(algebra.mul_basis(i, j));
                    let rhs = algebra.mul(&mi, &m.mul_vec(&SparseVec::unit(j)));
                    if lhs != rhs {
                        return Err(Error::NotAutomorphism(format!(
                            "element {g} is not multiplicative on ({}, {})",
                            algebra.labels()[i],
                            algebra.labels()[j]
                        )));
                    }
                }
            }
            if let Some(u) = algebra.unit() {
                if &m.mul_vec(u) != u {
                    return Err(Error::NotAutomorphism(format!("element {g} moves the unit")));
                }
            }
        }
        let n = group.order();
        let pairs: Vec<(usize, usize)> = if n <= EXHAUSTIVE_HOM_LIMIT {
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
        } else {
            (0..8 * n).map(|k| ((k * 7919) % n, (k * 104729 + 1) % n)).collect()
        };
        for (a, b) in pairs {
            if matrices[group.mul(a, b)] != matrices[a].matmul(&matrices[b])? {
                return Err(Error::InvalidAction(format!("not a homomorphism at ({a}, {b})")));
            }
        }
        Ok(Self { group: group.clone(), dim: d, matrices })
    }

    pub fn trivial(algebra: &StructureAlgebra, group: &FiniteGroup) -> Self {
        Self { group: group.clone(), dim: algebra.dim(), matrices: vec![SparseMatrix::identity(algebra.dim()); group.order()] }
    }

    /// `e_i ↦ χ(g)^{degrees[i]} e_i` for a rational character `χ`.
    pub fn scaling(
        algebra: &StructureAlgebra,
        group: &FiniteGroup,
        character: &[Rational],
        degrees: &[usize],
    ) -> Result<Self> {
        if degrees.len() != algebra.dim() || character.len() != group.order() {
            return Err(Error::InvalidAction("degree or character length mismatch".into()));
        }
        let d = algebra.dim();
        let matrices = group
            .elements()
            .map(|g| {
                SparseMatrix::from_triplets(d, d, (0..d).map(|i| (i, i, character[g].pow(degrees[i] as u32))))
                    .expect("diagonal")
            })
            .collect();
        Self::new(algebra, group, matrices)
    }

    /// The sign character acting with weight `degrees[i]` on basis vector `i`
    /// (e.g. `x ↦ -x` on the dual numbers with degrees `[0, 1]`).
    pub fn sign(algebra: &StructureAlgebra, group: &FiniteGroup, degrees: &[usize]) -> Result<Self> {
        Self::scaling(algebra, group, &sign_character(group)?, degrees)
    }

    /// Action permuting basis vectors: `g · e_i = e_{perm(g, i)}`.
    pub fn permutation(
        algebra: &StructureAlgebra,
        group: &FiniteGroup,
        perm: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let d = algebra.dim();
        let matrices = group
            .elements()
            .map(|g| SparseMatrix::from_triplets(d, d, (0..d).map(|i| (perm(g, i), i, Rational::ONE))))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::InvalidAction("permutation image out of range".into()))?;
        Self::new(algebra, group, matrices)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &SparseMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[SparseMatrix] {
        &self.matrices
    }

    pub fn apply(&self, g: usize, v: &SparseVec) -> SparseVec {
        self.matrices[g].mul_vec(v)
    }

    pub fn is_trivial(&self) -> bool {
        self.matrices.iter().all(|m| *m == SparseMatrix::identity(self.dim))
    }

    /// The action restricted to a subgroup, over its induced group.
    pub fn restrict(&self, sub: &Subgroup) -> Self {
        let matrices = sub.members().iter().map(|&g| self.matrices[g].clone()).collect();
        Self { group: sub.group().clone(), dim: self.dim, matrices }
    }

    /// `g(a⟨x⟩) = g(a)⟨g x⟩` on `A⟨X⟩` (basis index `i * |X| + x`), where
    /// `perm(g, x)` is the action on `X`.
    pub fn diagonal_on_extension(
        &self,
        extension: &StructureAlgebra,
        points: usize,
        perm: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        if extension.dim() != self.dim * points {
            return Err(Error::DimensionMismatch("extension has the wrong dimension".into()));
        }
        let n = extension.dim();
        let perm = &perm;
        let matrices = self
            .group
            .elements()
            .map(|g| {
                let trip = self.matrices[g]
                    .iter()
                    .flat_map(|(k, i, c)| {
                        let c = c.clone();
                        (0..points).map(move |x| (k * points + perm(g, x), i * points + x, c.clone()))
                    })
                    .collect::<Vec<_>>();
                SparseMatrix::from_triplets(n, n, trip)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(extension, &self.group, matrices)
    }

    /// Whether every basis vector has a free orbit, for actions by signed
    /// permutation matrices.
    pub fn is_free_on_basis(&self) -> bool {
        let n = self.group.order();
        (0..self.dim).all(|i| {
            let mut images: Vec<usize> = self
                .matrices
                .iter()
                .filter_map(|m| {
                    let v = m.mul_vec(&SparseVec::unit(i));
                    (v.nnz() == 1).then(|| v.entries()[0].0)
                })
                .collect();
            images.sort_unstable();
            images.dedup();
            images.len() == n
        })
    }
}

/// `diagonal_action_on_extension(act, X)` with `X = G` under left
/// translation, the case used throughout.
pub fn diagonal_action_on_extension(act: &AlgebraAction, extension: &StructureAlgebra) -> Result<AlgebraAction> {
    let g = act.group().clone();
    act.diagonal_on_extension(extension, g.order(), |h, x| g.mul(h, x))
}

/// Conjugation by the group units on `A ⋊ G`:
/// `u_h (u_g a) u_h⁻¹ = u_{hgh⁻¹} h(a)`.
pub fn inner_action_on_crossed(a: &StructureAlgebra, act: &AlgebraAction) -> Result<AlgebraAction> {
    let g = act.group();
    let d = a.dim();
    let c = StructureAlgebra::crossed_product(a, act)?;
    let n = g.order() * d;
    let matrices = g
        .elements()
        .map(|h| {
            let hinv = g.inv(h);
            let mut trip = Vec::new();
            for x in g.elements() {
                let y = g.mul(g.mul(h, x), hinv);
                for (r, col, v) in act.matrix(h).iter() {
                    trip.push((y * d + r, x * d + col, v.clone()));
                }
            }
            SparseMatrix::from_triplets(n, n, trip)
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraAction::new(&c, g, matrices)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_on_dual_numbers() {
        let d = StructureAlgebra::dual_numbers();
        let z2 = FiniteGroup::cyclic(2);
        let act = AlgebraAction::sign(&d, &z2, &[0, 1]).unwrap();
        assert_eq!(act.apply(1, &SparseVec::unit(1)), SparseVec::unit(1).scale(&-Rational::ONE));
        // x ↦ -x is not an automorphism when x² ≠ 0.
        let t3 = StructureAlgebra::truncated_poly(3);
        let wrong = AlgebraAction::scaling(&t3, &z2, &[Rational::ONE, -Rational::ONE], &[0, 1, 1]);
        assert!(matches!(wrong, Err(Error::NotAutomorphism(_))));
    }

    #[test]
    fn regular_action_on_set_algebra_is_free() {
        let g = FiniteGroup::symmetric(3);
        let k = StructureAlgebra::field();
        let kg = StructureAlgebra::tensor_with_set(&k, 6).unwrap();
        let act = diagonal_action_on_extension(&AlgebraAction::trivial(&k, &g), &kg).unwrap();
        assert!(act.is_free_on_basis());
        let triv = FiniteGroup::trivial();
        let kt = StructureAlgebra::tensor_with_set(&k, 1).unwrap();
        assert!(diagonal_action_on_extension(&AlgebraAction::trivial(&k, &triv), &kt).unwrap().is_trivial());
    }
}
