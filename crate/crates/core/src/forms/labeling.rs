use rayon::prelude::*;

use crate::algebras::{AlgebraAction, StructureAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{SparseMatrix, SparseVec};
use crate::groups::{ConjugacyData, FiniteGroup, GroupModule};

use super::build::{apply_letterwise, build_forms_block, FormComplex};
use super::mixed::MixedComplex;
use super::words::Word;

/// Product of the group letters of a word of a `G`-graded algebra.
pub fn word_group_element(grading: &[usize], group: &FiniteGroup, w: &Word) -> usize {
    w.letters.iter().fold(group.identity(), |acc, &l| group.mul(acc, grading[l]))
}

/// Conjugacy-class label of every basis vector of a form complex of a
/// `G`-graded algebra (a crossed product).
#[derive(Clone, Debug)]
pub struct HomogeneousLabeling {
    classes: ConjugacyData,
    labels: Vec<Vec<usize>>,
}

impl HomogeneousLabeling {
    pub fn classes(&self) -> &ConjugacyData {
        &self.classes
    }

    pub fn labels(&self, n: usize) -> &[usize] {
        &self.labels[n]
    }

    /// Basis indices with label `class` in degree `n`.
    pub fn block_indices(&self, n: usize, class: usize) -> Vec<usize> {
        self.labels[n].iter().enumerate().filter(|(_, &c)| c == class).map(|(k, _)| k).collect()
    }

    /// `dims[class]` in degree `n`.
    pub fn block_dims(&self, n: usize) -> Vec<usize> {
        let mut dims = vec![0; self.classes.num_classes()];
        for &c in &self.labels[n] {
            dims[c] += 1;
        }
        dims
    }

    pub fn block(&self, complex: &MixedComplex, class: usize) -> Result<MixedComplex> {
        let keep: Vec<Vec<usize>> = (0..=complex.top()).map(|n| self.block_indices(n, class)).collect();
        complex.restrict(&keep)
    }
}

fn grading_of(alg: &StructureAlgebra) -> Result<&[usize]> {
    alg.grading().ok_or_else(|| Error::InvalidAlgebra("algebra carries no group grading".into()))
}

/// Labels every basis word by the class of `g_0⋯g_n` (`g_1⋯g_n` for
/// d-words) and checks that `b` and `B` are block diagonal.
pub fn homogeneous_labeling(fc: &FormComplex, alg: &StructureAlgebra, group: &FiniteGroup) -> Result<HomogeneousLabeling> {
    let grading = grading_of(alg)?;
    let classes = group.conjugacy_classes();
    let labels: Vec<Vec<usize>> = (0..=fc.top())
        .map(|n| {
            (0..fc.complex().dim(n))
                .into_par_iter()
                .map(|k| classes.class_of(word_group_element(grading, group, &fc.rep_word(n, k))))
                .collect()
        })
        .collect();
    if !fc.complex().is_block_diagonal(&labels) {
        return Err(Error::IdentityFailure("b or B mixes conjugacy classes".into()));
    }
    Ok(HomogeneousLabeling { classes, labels })
}

/// The `[v]`-block of Ω(A⋊G) built directly from the words in the class.
pub fn class_block(alg: &StructureAlgebra, group: &FiniteGroup, class: &[usize], top: usize, cap: usize) -> Result<FormComplex> {
    let grading = grading_of(alg)?.to_vec();
    let mut member = vec![false; group.order()];
    for &g in class {
        member[g] = true;
    }
    build_forms_block(alg, top, cap, move |w| member[word_group_element(&grading, group, w)])
}

/// Degreewise representation of `G` on Ω(A) induced by an action on `A`,
/// checked to commute with `b` and `B`. The complex must be a full absolute
/// form complex of `A`.
pub fn group_action_on_forms(fc: &FormComplex, act: &AlgebraAction) -> Result<Vec<GroupModule>> {
    let group = act.group();
    let ix = fc.word_index();
    let top = fc.top();
    let mut per_degree: Vec<Vec<SparseMatrix>> = vec![Vec::with_capacity(group.order()); top + 1];
    for g in group.elements() {
        let m = act.matrix(g);
        for (n, slot) in per_degree.iter_mut().enumerate() {
            let cols = (0..fc.complex().dim(n))
                .into_par_iter()
                .map(|k| {
                    let w = fc.rep_word(n, k);
                    SparseVec::from_pairs(apply_letterwise(m, &w).into_iter().map(|(w, c)| (ix.index(&w), c)))
                })
                .collect::<Vec<_>>();
            slot.push(SparseMatrix::from_columns(fc.complex().dim(n), &cols)?);
        }
        let maps: Vec<SparseMatrix> = per_degree.iter().map(|v| v[g].clone()).collect();
        if !fc.complex().is_chain_map_to(fc.complex(), &maps)? {
            return Err(Error::IdentityFailure(format!("group element {g} does not commute with b and B")));
        }
    }
    per_degree
        .into_iter()
        .enumerate()
        .map(|(n, mats)| GroupModule::new(group, fc.complex().dim(n), mats))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::build_forms;

    #[test]
    fn z2_splits_evenly_in_degree_one() {
        let g = FiniteGroup::cyclic(2);
        let kg = StructureAlgebra::group_algebra(&g);
        let fc = build_forms(&kg, 3).unwrap();
        let lab = homogeneous_labeling(&fc, &kg, &g).unwrap();
        let d = lab.block_dims(1);
        assert_eq!(d[0], d[1]);
        let blk = class_block(&kg, &g, &[1], 3, 1000).unwrap();
        assert_eq!(blk.complex(), &lab.block(fc.complex(), 1).unwrap());
    }

    #[test]
    fn s3_block_diagonal() {
        let g = FiniteGroup::symmetric(3);
        let kg = StructureAlgebra::group_algebra(&g);
        let fc = build_forms(&kg, 3).unwrap();
        let lab = homogeneous_labeling(&fc, &kg, &g).unwrap();
        for n in 0..=3 {
            assert_eq!(lab.block_dims(n).iter().sum::<usize>(), fc.complex().dim(n));
        }
    }

    #[test]
    fn trivial_action_gives_identities() {
        let a = StructureAlgebra::dual_numbers();
        let g = FiniteGroup::cyclic(2);
        let fc = build_forms(&a, 3).unwrap();
        let mods = group_action_on_forms(&fc, &AlgebraAction::trivial(&a, &g)).unwrap();
        for (n, m) in mods.iter().enumerate() {
            assert_eq!(m.action(1), &SparseMatrix::identity(fc.complex().dim(n)));
        }
        let sign = AlgebraAction::sign(&a, &g, &[0, 1]).unwrap();
        group_action_on_forms(&fc, &sign).unwrap();
    }
}
