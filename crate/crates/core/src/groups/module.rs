use crate::error::{Error, Result};
use crate::exactlin::{Rational, SparseMatrix};

use super::FiniteGroup;

/// Exhaustive homomorphism checks run up to this group order.
const EXHAUSTIVE_HOM_LIMIT: usize = 24;

/// A finite-dimensional rational representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupModule {
    dim: usize,
    action: Vec<SparseMatrix>,
}

impl GroupModule {
    /// Validates `action[g]` (one `dim × dim` matrix per group element).
    pub fn new(group: &FiniteGroup, dim: usize, action: Vec<SparseMatrix>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "{} matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidAction("matrix of the wrong size".into()));
        }
        let module = Self { dim, action };
        module.check_homomorphism(group)?;
        Ok(module)
    }

    fn check_homomorphism(&self, group: &FiniteGroup) -> Result<()> {
        if self.action[group.identity()] != SparseMatrix::identity(self.dim) {
            return Err(Error::InvalidAction("identity does not act trivially".into()));
        }
        let pairs: Vec<(usize, usize)> = if group.order() <= EXHAUSTIVE_HOM_LIMIT {
            group.elements().flat_map(|a| group.elements().map(move |b| (a, b))).collect()
        } else {
            // Generators of the multiplication are enough to pin a
            // homomorphism only together with closure; sample a stride.
            let n = group.order();
            (0..n * 8).map(|k| ((k * 7919) % n, (k * 104729 + 1) % n)).collect()
        };
        for (a, b) in pairs {
            let lhs = &self.action[group.mul(a, b)];
            let rhs = self.action[a].matmul(&self.action[b])?;
            if *lhs != rhs {
                return Err(Error::InvalidAction(format!("action({a}*{b}) != action({a})action({b})")));
            }
        }
        Ok(())
    }

    /// `dim` copies of the trivial representation.
    pub fn trivial(group: &FiniteGroup, dim: usize) -> Self {
        Self { dim, action: vec![SparseMatrix::identity(dim); group.order()] }
    }

    /// One-dimensional module from a character with values ±1 (or any
    /// rational homomorphism to the units).
    pub fn from_character(group: &FiniteGroup, values: &[Rational]) -> Result<Self> {
        let action = values
            .iter()
            .map(|v| SparseMatrix::from_dense(&[vec![v.clone()]]))
            .collect();
        Self::new(group, 1, action)
    }

    /// The sign character: the permutation sign for permutation groups,
    /// otherwise the character of the first index-2 subgroup. Errors when the
    /// group has no subgroup of index 2.
    pub fn sign(group: &FiniteGroup) -> Result<Self> {
        Self::from_character(group, &sign_character(group)?)
    }

    /// Permutation module of a `G`-set: `perm[g][x]` is the image of `x`.
    pub fn permutation(group: &FiniteGroup, points: usize, perm: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let action = group
            .elements()
            .map(|g| {
                SparseMatrix::from_triplets(points, points, (0..points).map(|x| (perm(g, x), x, Rational::ONE)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, points, action)
    }

    /// `Vect(Ad S)`: the span of a conjugation-stable subset `S` (listed in
    /// order) with `g · s = g s g⁻¹`.
    pub fn adjoint(group: &FiniteGroup, subset: &[usize]) -> Result<Self> {
        let pos: std::collections::HashMap<usize, usize> =
            subset.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        for &s in subset {
            for h in group.elements() {
                if !pos.contains_key(&group.conjugate(h, s)) {
                    return Err(Error::InvalidAction("subset is not conjugation stable".into()));
                }
            }
        }
        Self::permutation(group, subset.len(), |g, x| pos[&group.conjugate(g, subset[x])])
    }

    /// Left regular representation on `k[G]`.
    pub fn regular(group: &FiniteGroup) -> Self {
        Self::permutation(group, group.order(), |g, x| group.mul(g, x)).expect("regular representation")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, g: usize) -> &SparseMatrix {
        &self.action[g]
    }

    pub fn matrices(&self) -> &[SparseMatrix] {
        &self.action
    }
}

/// Values of the sign character described in [`GroupModule::sign`].
pub fn sign_character(group: &FiniteGroup) -> Result<Vec<Rational>> {
    if group.permutation(group.identity()).is_some() {
        let s: Vec<Rational> = group.elements().map(|g| Rational::from_int(group.sign(g).unwrap())).collect();
        if s.iter().any(|x| x.is_negative()) {
            return Ok(s);
        }
    }
    let h = group
        .subgroups()
        .into_iter()
        .find(|h| 2 * h.order() == group.order())
        .ok_or_else(|| Error::InvalidAction(format!("{} has no sign character", group.name())))?;
    Ok(group
        .elements()
        .map(|g| if h.contains(g) { Rational::ONE } else { -Rational::ONE })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_homomorphisms() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)] {
            GroupModule::sign(&g).unwrap();
            let reg = GroupModule::regular(&g);
            assert_eq!(reg.dim(), g.order());
            let all: Vec<usize> = g.elements().collect();
            GroupModule::adjoint(&g, &all).unwrap();
        }
        assert!(GroupModule::sign(&FiniteGroup::cyclic(3)).is_err());
    }

    #[test]
    fn rejects_non_homomorphism() {
        let z3 = FiniteGroup::cyclic(3);
        let bad = vec![Rational::ONE, -Rational::ONE, -Rational::ONE];
        assert!(GroupModule::from_character(&z3, &bad).is_err());
    }
}
