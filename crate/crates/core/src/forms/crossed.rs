//! Normal-form model of Ω(C⋊U : kU)_♮ for a `U`-algebra `C`.
//!
//! Moving every `u_g` of a word of `C⋊U` into the first slot gives
//! `(u_{g_0}c_0) ⊗ … ⊗ (u_{g_n}c_n) ≡ u_{g_0⋯g_n} s_0⁻¹(c_0) ⊗ … ⊗ s_n⁻¹(c_n)`
//! with `s_j = g_{j+1}⋯g_n`, so the relative forms are the `U`-coinvariants of
//! `Vect(U) ⊗ Ω(C)` under `h·(u_g ⊗ ω) = u_{hgh⁻¹} ⊗ h(ω)`.

use rayon::prelude::*;

use crate::algebras::{AlgebraAction, StructureAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{QuotientPresentation, Rational, SparseMatrix, SparseVec};
use crate::groups::FiniteGroup;

use super::build::apply_letterwise;
use super::mixed::MixedComplex;
use super::words::{b_word, big_b_word, Word, WordIndex};

#[derive(Clone, Debug)]
pub struct CrossedForms {
    complex: MixedComplex,
    cross: StructureAlgebra,
    group: FiniteGroup,
    /// `mono[h][c] = (c', x)` with `h(e_c) = x e_{c'}`.
    mono: Vec<Vec<(usize, Rational)>>,
    c_index: WordIndex,
    kept: Vec<usize>,
    position: Vec<usize>,
    quotients: Vec<QuotientPresentation>,
}

fn monomial_table(act: &AlgebraAction) -> Result<Vec<Vec<(usize, Rational)>>> {
    act.matrices()
        .iter()
        .map(|m| {
            m.columns()
                .into_iter()
                .map(|c| match c.entries() {
                    [(k, x)] => Ok((*k, x.clone())),
                    _ => Err(Error::InvalidAction("the normal-form model needs a monomial action".into())),
                })
                .collect()
        })
        .collect()
}

impl CrossedForms {
    /// Builds the model up to degree `top`, keeping only the summands
    /// `u_g ⊗ Ω(C)` with `g` in `keep` (local elements of `U`, closed under
    /// conjugation); `None` keeps everything.
    pub fn build(
        c: &StructureAlgebra,
        act: &AlgebraAction,
        top: usize,
        keep: Option<&[usize]>,
        cap: usize,
    ) -> Result<Self> {
        let group = act.group().clone();
        let mono = monomial_table(act)?;
        let mut kept: Vec<usize> = keep.map(<[usize]>::to_vec).unwrap_or_else(|| group.elements().collect());
        kept.sort_unstable();
        kept.dedup();
        let mut position = vec![usize::MAX; group.order()];
        for (k, &g) in kept.iter().enumerate() {
            position[g] = k;
        }
        for &g in &kept {
            if group.elements().any(|h| position[group.conjugate(h, g)] == usize::MAX) {
                return Err(Error::InvalidAction("kept summands are not closed under conjugation".into()));
            }
        }
        let cross = StructureAlgebra::crossed_product(c, act)?;
        let c_index = WordIndex { d: c.dim() };
        let mut model = Self {
            complex: MixedComplex::new(vec![0], vec![SparseMatrix::zeros(0, 0)], vec![])?,
            cross,
            group,
            mono,
            c_index,
            kept,
            position,
            quotients: Vec::new(),
        };
        let mut quotients = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let dim = model.v_dim(n).filter(|&x| x <= cap).ok_or_else(|| Error::ResourceCap {
                what: format!("normal-form model in degree {n}"),
                needed: model.v_dim(n).map_or(u128::MAX, |x| x as u128),
                cap: cap as u128,
            })?;
            let rels: Vec<(usize, Rational, Option<(usize, Rational)>)> = (0..dim)
                .into_par_iter()
                .flat_map_iter(|x| {
                    let (g, w) = model.v_word(n, x);
                    let this = &model;
                    let e = this.group.identity();
                    this.group.elements().filter(move |&h| h != e).map(move |h| {
                        let (y, coef) = this.translate(h, g, &w);
                        (x, Rational::ONE, Some((y, coef)))
                    })
                })
                .collect();
            quotients.push(QuotientPresentation::from_monomial_relations(dim, rels));
        }
        model.quotients = quotients;
        model.complex = model.assemble(top)?;
        Ok(model)
    }

    pub fn complex(&self) -> &MixedComplex {
        &self.complex
    }

    pub fn top(&self) -> usize {
        self.complex.top()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// `C ⋊ U`.
    pub fn cross_algebra(&self) -> &StructureAlgebra {
        &self.cross
    }

    pub fn quotient(&self, n: usize) -> &QuotientPresentation {
        &self.quotients[n]
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    /// Dimension of `Vect(kept) ⊗ Ω^n(C)`.
    pub fn v_dim(&self, n: usize) -> Option<usize> {
        self.c_index.dim(n)?.checked_mul(self.kept.len())
    }

    fn w_dim(&self, n: usize) -> usize {
        self.c_index.dim(n).expect("checked at build time")
    }

    /// Index of `u_g ⊗ w` in `Vect(kept) ⊗ Ω^n(C)`, if `g` is kept.
    pub fn v_index(&self, g: usize, w: &Word) -> Option<usize> {
        let p = self.position[g];
        (p != usize::MAX).then(|| p * self.w_dim(w.degree()) + self.c_index.index(w))
    }

    /// `(g, w)` for a basis index of `Vect(kept) ⊗ Ω^n(C)`.
    pub fn v_word(&self, n: usize, x: usize) -> (usize, Word) {
        let wd = self.w_dim(n);
        (self.kept[x / wd], self.c_index.word(n, x % wd))
    }

    /// `h·(u_g ⊗ w) = x · (u_{hgh⁻¹} ⊗ h(w))` as `(index, x)`.
    fn translate(&self, h: usize, g: usize, w: &Word) -> (usize, Rational) {
        let mut coef = Rational::ONE;
        let letters = w
            .letters
            .iter()
            .map(|&c| {
                let (k, x) = &self.mono[h][c];
                coef *= x;
                *k
            })
            .collect();
        let img = Word { a0: w.a0, letters };
        (self.v_index(self.group.conjugate(h, g), &img).expect("closed under conjugation"), coef)
    }

    /// The element `u_g ⊗ w` written as a word of `C⋊U`: the group letter
    /// sits on the first letter.
    pub fn cross_word(&self, g: usize, w: &Word) -> Word {
        let d = self.c_index.d;
        let e = self.group.identity();
        let letters = w
            .letters
            .iter()
            .enumerate()
            .map(|(j, &c)| if j == 0 { g * d + c } else { e * d + c })
            .collect();
        Word { a0: w.a0, letters }
    }

    /// Normal form of a word of `C⋊U`: `(index in Vect(kept) ⊗ Ω(C), coefficient)`,
    /// or `None` if its group part is not kept.
    pub fn normalize(&self, w: &Word) -> Option<(usize, Rational)> {
        let d = self.c_index.d;
        let g = &self.group;
        let m = w.letters.len();
        let mut letters = vec![0; m];
        let mut coef = Rational::ONE;
        let mut suffix = g.identity();
        for j in (0..m).rev() {
            let (gj, cj) = (w.letters[j] / d, w.letters[j] % d);
            let (k, x) = &self.mono[g.inv(suffix)][cj];
            letters[j] = *k;
            coef *= x;
            suffix = g.mul(gj, suffix);
        }
        self.v_index(suffix, &Word { a0: w.a0, letters }).map(|i| (i, coef))
    }

    /// Class in the relative forms of a combination of words of `C⋊U`.
    pub fn project_cross_terms(&self, n: usize, terms: impl IntoIterator<Item = (Word, Rational)>) -> Result<SparseVec> {
        let mut pairs = Vec::new();
        for (w, c) in terms {
            if c.is_zero() {
                continue;
            }
            let (i, x) = self
                .normalize(&w)
                .ok_or_else(|| Error::WellDefinednessFailure("word leaves the selected summands".into()))?;
            pairs.push((i, &c * &x));
        }
        Ok(self.quotients[n].project(&SparseVec::from_pairs(pairs)))
    }

    /// `(g, w)` represented by relative basis vector `k` in degree `n`.
    pub fn rep(&self, n: usize, k: usize) -> (usize, Word) {
        self.v_word(n, self.quotients[n].lift_basis(k))
    }

    /// Group label `g` (local in `U`) of each basis vector in degree `n`.
    pub fn labels(&self, n: usize) -> Vec<usize> {
        (0..self.complex.dim(n)).map(|k| self.rep(n, k).0).collect()
    }

    fn operator_on_v(&self, n: usize, x: &SparseVec, up: bool) -> Result<SparseVec> {
        let target = if up { n + 1 } else { n - 1 };
        let mut terms = Vec::new();
        for (i, c) in x.entries() {
            let (g, w) = self.v_word(n, *i);
            let cw = self.cross_word(g, &w);
            let img = if up { big_b_word(&cw) } else { b_word(&self.cross, &cw) };
            terms.extend(img.into_iter().map(|(w, y)| (w, &y * c)));
        }
        self.project_cross_terms(target, terms)
    }

    fn assemble(&self, top: usize) -> Result<MixedComplex> {
        let induce = |n: usize, up: bool| -> Result<SparseMatrix> {
            let from = &self.quotients[n];
            let to = &self.quotients[if up { n + 1 } else { n - 1 }];
            let rels = from.relation_subspace();
            for r in rels.basis() {
                if !self.operator_on_v(n, r, up)?.is_zero() {
                    return Err(Error::WellDefinednessFailure(format!(
                        "{} does not descend to coinvariants in degree {n}",
                        if up { "B" } else { "b" }
                    )));
                }
            }
            let cols = from
                .canonical_complement()
                .par_iter()
                .map(|&i| self.operator_on_v(n, &SparseVec::unit(i), up))
                .collect::<Result<Vec<_>>>()?;
            SparseMatrix::from_columns(to.dim(), &cols)
        };
        let dims: Vec<usize> = (0..=top).map(|n| self.quotients[n].dim()).collect();
        let mut b = vec![SparseMatrix::zeros(0, dims[0])];
        for n in 1..=top {
            b.push(induce(n, false)?);
        }
        let big_b = (0..top).map(|n| induce(n, true)).collect::<Result<Vec<_>>>()?;
        MixedComplex::new(dims, b, big_b)
    }

    /// The action `u_g ⊗ ω ↦ u_g ⊗ h(ω)` of an automorphism `h` of `C` that
    /// commutes with the `U`-action, as a matrix on the relative forms in
    /// degree `n`. Checked to be well defined on coinvariants.
    pub fn centralizer_action(&self, n: usize, h: &SparseMatrix) -> Result<SparseMatrix> {
        let q = &self.quotients[n];
        let apply = |x: &SparseVec| -> SparseVec {
            let mut pairs = Vec::new();
            for (i, c) in x.entries() {
                let (g, w) = self.v_word(n, *i);
                for (w2, y) in apply_letterwise(h, &w) {
                    pairs.push((self.v_index(g, &w2).expect("same summand"), &y * c));
                }
            }
            q.project(&SparseVec::from_pairs(pairs))
        };
        if q.relation_subspace().basis().par_iter().any(|r| !apply(r).is_zero()) {
            return Err(Error::WellDefinednessFailure("action does not descend to coinvariants".into()));
        }
        let cols: Vec<SparseVec> = q.canonical_complement().par_iter().map(|&i| apply(&SparseVec::unit(i))).collect();
        SparseMatrix::from_columns(q.dim(), &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{crossed_bimodule_structure, tensor_with_set, diagonal_action_on_extension};
    use crate::forms::build_relative_forms;

    #[test]
    fn trivial_group_is_absolute() {
        let a = StructureAlgebra::dual_numbers();
        let t = FiniteGroup::trivial();
        let m = CrossedForms::build(&a, &AlgebraAction::trivial(&a, &t), 3, None, 10_000).unwrap();
        let abs = crate::forms::build_forms(&a, 3).unwrap();
        assert_eq!(m.complex(), abs.complex());
    }

    #[test]
    fn matches_generic_quotient_dims() {
        let g = FiniteGroup::cyclic(2);
        let k = StructureAlgebra::field();
        let kg = tensor_with_set(&k, 2).unwrap();
        let act = diagonal_action_on_extension(&AlgebraAction::trivial(&k, &g), &kg).unwrap();
        let m = CrossedForms::build(&kg, &act, 3, None, 10_000).unwrap();
        m.complex().check_identities().unwrap();
        let cross = StructureAlgebra::crossed_product(&kg, &act).unwrap();
        let rel = build_relative_forms(&cross, &crossed_bimodule_structure(&kg, &act), 3, 10_000).unwrap();
        assert_eq!(m.complex().dims(), rel.complex().dims());
    }
}
