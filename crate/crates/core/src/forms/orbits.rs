//! Coinvariants of a block of Ω(A) under a finite group of monomial
//! automorphisms, built from orbit representatives without materializing
//! the full block.

use rayon::prelude::*;

use crate::algebras::{AlgebraAction, StructureAlgebra};
use crate::groups::FiniteGroup;
use crate::error::{Error, Result};
use crate::exactlin::{Rational, SparseMatrix, SparseVec};

use super::build::{ambient_dims, FormComplex};
use super::labeling::word_group_element;
use super::mixed::MixedComplex;
use super::words::{b_word, big_b_word, Word, WordIndex};

struct Orbits {
    ix: WordIndex,
    /// `mono[h][l] = (l', c)` with `h(e_l) = c e_{l'}`.
    mono: Vec<Vec<(usize, Rational)>>,
}

impl Orbits {
    /// `[e_w] = c [e_r]` in the coinvariants, as `Some((r, c))` with `r` the
    /// smallest index in the orbit, or `None` if the class of `w` vanishes.
    fn canon(&self, w: &Word) -> Option<(usize, Rational)> {
        let me = self.ix.index(w);
        let mut best: Option<(usize, Rational)> = None;
        for table in &self.mono {
            let mut coef = Rational::ONE;
            let letters: Vec<usize> = w
                .letters
                .iter()
                .map(|&l| {
                    let (k, x) = &table[l];
                    coef *= x;
                    *k
                })
                .collect();
            let idx = self.ix.index(&Word { a0: w.a0, letters });
            if idx == me && !coef.is_one() {
                return None;
            }
            if best.as_ref().is_none_or(|(b, _)| idx < *b) {
                best = Some((idx, coef));
            }
        }
        best
    }
}

/// The coinvariants of the block of Ω(A) selected by `keep` under the
/// automorphisms of `act` (which must act by signed permutations of the
/// basis and preserve the block). `b` and `B` commute with algebra
/// automorphisms, so they descend; the result's basis vectors are the orbit
/// minima that survive.
pub fn build_orbit_block(
    alg: &StructureAlgebra,
    act: &AlgebraAction,
    top: usize,
    cap: usize,
    keep: impl Fn(&Word) -> bool + Sync,
) -> Result<FormComplex> {
    let d = alg.dim();
    if act.dim() != d {
        return Err(Error::InvalidAction("action and algebra dimensions differ".into()));
    }
    let mono = act
        .matrices()
        .iter()
        .map(|m| {
            m.columns()
                .into_iter()
                .map(|c| match c.entries() {
                    [(k, x)] => Ok((*k, x.clone())),
                    _ => Err(Error::InvalidAction("orbit reduction needs a monomial action".into())),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let dims = ambient_dims(d, top, cap)?;
    let orb = Orbits { ix: WordIndex { d }, mono };
    let ix = orb.ix;
    let reps: Vec<Vec<usize>> = dims
        .iter()
        .enumerate()
        .map(|(n, &dim)| {
            (0..dim)
                .into_par_iter()
                .filter(|&i| {
                    let w = ix.word(n, i);
                    keep(&w) && matches!(orb.canon(&w), Some((r, c)) if r == i && c.is_one())
                })
                .collect()
        })
        .collect();
    let project = |terms: Vec<(Word, Rational)>, reps: &[usize]| -> Result<SparseVec> {
        let mut pairs = Vec::with_capacity(terms.len());
        for (w, c) in terms {
            if c.is_zero() {
                continue;
            }
            if !keep(&w) {
                return Err(Error::WellDefinednessFailure("operator leaves the selected block".into()));
            }
            if let Some((r, x)) = orb.canon(&w) {
                let k = reps.binary_search(&r).map_err(|_| Error::WellDefinednessFailure("orbit minimum is not a representative".into()))?;
                pairs.push((k, &c * &x));
            }
        }
        Ok(SparseVec::from_pairs(pairs))
    };
    let kept: Vec<usize> = reps.iter().map(Vec::len).collect();
    let mut b = vec![SparseMatrix::zeros(0, kept[0])];
    for n in 1..=top {
        let cols = reps[n]
            .par_iter()
            .map(|&i| project(b_word(alg, &ix.word(n, i)), &reps[n - 1]))
            .collect::<Result<Vec<_>>>()?;
        b.push(SparseMatrix::from_columns(kept[n - 1], &cols)?);
    }
    let mut big_b = Vec::with_capacity(top);
    for n in 0..top {
        let cols = reps[n]
            .par_iter()
            .map(|&i| project(big_b_word(&ix.word(n, i)), &reps[n + 1]))
            .collect::<Result<Vec<_>>>()?;
        big_b.push(SparseMatrix::from_columns(kept[n + 1], &cols)?);
    }
    let complex = MixedComplex::new(kept, b, big_b)?;
    Ok(FormComplex::from_parts(complex, ix, reps, None))
}

/// The `[v]`-block of Ω(A⋊G) modulo conjugation by `G`, which acts
/// trivially on cyclic homology; over ℚ the coinvariants carry the same
/// homology as the block. `inner` is the conjugation action on `A⋊G`.
pub fn class_orbit_block(
    alg: &StructureAlgebra,
    group: &FiniteGroup,
    inner: &AlgebraAction,
    class: &[usize],
    top: usize,
    cap: usize,
) -> Result<FormComplex> {
    let grading = alg
        .grading()
        .ok_or_else(|| Error::InvalidAlgebra("algebra carries no group grading".into()))?
        .to_vec();
    let mut member = vec![false; group.order()];
    for &g in class {
        member[g] = true;
    }
    build_orbit_block(alg, inner, top, cap, move |w| member[word_group_element(&grading, group, w)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::inner_action_on_crossed;
    use crate::forms::class_block;
    use crate::homology::periodic_dims_windows;

    #[test]
    fn trivial_group_gives_the_block() {
        let a = StructureAlgebra::dual_numbers();
        let act = AlgebraAction::trivial(&a, &FiniteGroup::trivial());
        let orb = build_orbit_block(&a, &act, 3, 10_000, |_| true).unwrap();
        let plain = crate::forms::build_forms(&a, 3).unwrap();
        assert_eq!(orb.complex(), plain.complex());
    }

    #[test]
    fn sign_action_kills_odd_orbits() {
        let a = StructureAlgebra::dual_numbers();
        let g = FiniteGroup::cyclic(2);
        let act = AlgebraAction::sign(&a, &g, &[0, 1]).unwrap();
        let orb = build_orbit_block(&a, &act, 2, 10_000, |_| true).unwrap();
        orb.complex().check_identities().unwrap();
        // Ω^0 = A: 1 survives, x ≡ -x dies.
        assert_eq!(orb.complex().dim(0), 1);
    }

    #[test]
    fn orbit_blocks_match_full_blocks() {
        let a = StructureAlgebra::dual_numbers();
        let g = FiniteGroup::symmetric(3);
        let act = AlgebraAction::sign(&a, &g, &[0, 1]).unwrap();
        let c = StructureAlgebra::crossed_product(&a, &act).unwrap();
        let inner = inner_action_on_crossed(&a, &act).unwrap();
        for class in g.conjugacy_classes().classes() {
            let full = class_block(&c, &g, class, 3, 100_000).unwrap();
            let orb = class_orbit_block(&c, &g, &inner, class, 3, 100_000).unwrap();
            orb.complex().check_identities().unwrap();
            let x = periodic_dims_windows(full.complex(), [1, 1]).unwrap();
            let y = periodic_dims_windows(orb.complex(), [1, 1]).unwrap();
            assert_eq!(x.hc, y.hc);
            assert_eq!((x.even_s_ranks, x.odd_s_ranks), (y.even_s_ranks, y.odd_s_ranks));
            assert!(orb.complex().dim(3) < full.complex().dim(3));
        }
    }
}
