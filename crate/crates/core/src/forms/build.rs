use rayon::prelude::*;

use crate::algebras::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{QuotientPresentation, SparseMatrix, SparseVec};

use super::mixed::MixedComplex;
use super::words::{b_word, big_b_word, Word, WordIndex};

/// Default limit on the number of ambient basis words in one degree.
pub const DEFAULT_AMBIENT_CAP: usize = 500_000;

/// A mixed complex of forms together with the ambient word represented by
/// each basis vector.
#[derive(Clone, Debug)]
pub struct FormComplex {
    complex: MixedComplex,
    index: WordIndex,
    reps: Vec<Vec<usize>>,
    quotients: Option<Vec<QuotientPresentation>>,
}

impl FormComplex {
    pub(crate) fn from_parts(
        complex: MixedComplex,
        index: WordIndex,
        reps: Vec<Vec<usize>>,
        quotients: Option<Vec<QuotientPresentation>>,
    ) -> Self {
        Self { complex, index, reps, quotients }
    }

    pub fn complex(&self) -> &MixedComplex {
        &self.complex
    }

    pub fn into_complex(self) -> MixedComplex {
        self.complex
    }

    pub fn top(&self) -> usize {
        self.complex.top()
    }

    pub fn word_index(&self) -> WordIndex {
        self.index
    }

    /// Ambient word indices of the basis vectors in degree `n`.
    pub fn reps(&self, n: usize) -> &[usize] {
        &self.reps[n]
    }

    pub fn rep_word(&self, n: usize, k: usize) -> Word {
        self.index.word(n, self.reps[n][k])
    }

    /// Quotient presentations of the ambient spaces (relative forms only).
    pub fn quotients(&self) -> Option<&[QuotientPresentation]> {
        self.quotients.as_deref()
    }
}

pub(crate) fn ambient_dims(d: usize, top: usize, cap: usize) -> Result<Vec<usize>> {
    let ix = WordIndex { d };
    (0..=top)
        .map(|n| {
            let dim = ix.dim(n).filter(|&x| x <= cap);
            dim.ok_or_else(|| Error::ResourceCap {
                what: format!("ambient forms in degree {n} over a {d}-dimensional algebra"),
                needed: (d as u128).saturating_pow(n as u32 + 1).saturating_add((d as u128).saturating_pow(n as u32)),
                cap: cap as u128,
            })
        })
        .collect()
}

/// Ω^n(A) for `n ≤ top` with `b` and `B`.
pub fn build_forms(alg: &StructureAlgebra, top: usize) -> Result<FormComplex> {
    build_forms_with_cap(alg, top, DEFAULT_AMBIENT_CAP)
}

pub fn build_forms_with_cap(alg: &StructureAlgebra, top: usize, cap: usize) -> Result<FormComplex> {
    build_forms_block(alg, top, cap, |_| true)
}

/// The subcomplex of Ω(A) spanned by the words selected by `keep`. Fails if
/// `b` or `B` leaves the selection.
pub fn build_forms_block(
    alg: &StructureAlgebra,
    top: usize,
    cap: usize,
    keep: impl Fn(&Word) -> bool + Sync,
) -> Result<FormComplex> {
    let dims = ambient_dims(alg.dim(), top, cap)?;
    let ix = WordIndex { d: alg.dim() };
    let reps: Vec<Vec<usize>> = dims
        .iter()
        .enumerate()
        .map(|(n, &dim)| (0..dim).into_par_iter().filter(|&i| keep(&ix.word(n, i))).collect())
        .collect();
    let positions: Vec<Vec<usize>> = dims
        .iter()
        .zip(&reps)
        .map(|(&dim, r)| {
            let mut p = vec![usize::MAX; dim];
            for (k, &i) in r.iter().enumerate() {
                p[i] = k;
            }
            p
        })
        .collect();
    let column = |terms: Vec<(Word, crate::exactlin::Rational)>, pos: &[usize]| -> Result<SparseVec> {
        let mut pairs = Vec::with_capacity(terms.len());
        for (w, c) in terms {
            let k = pos[ix.index(&w)];
            if k == usize::MAX {
                if c.is_zero() {
                    continue;
                }
                return Err(Error::WellDefinednessFailure("operator leaves the selected block".into()));
            }
            pairs.push((k, c));
        }
        Ok(SparseVec::from_pairs(pairs))
    };
    let kept: Vec<usize> = reps.iter().map(Vec::len).collect();
    let mut b = vec![SparseMatrix::zeros(0, kept[0])];
    for n in 1..=top {
        let cols = reps[n]
            .par_iter()
            .map(|&i| column(b_word(alg, &ix.word(n, i)), &positions[n - 1]))
            .collect::<Result<Vec<_>>>()?;
        b.push(SparseMatrix::from_columns(kept[n - 1], &cols)?);
    }
    let mut big_b = Vec::with_capacity(top);
    for n in 0..top {
        let cols = reps[n]
            .par_iter()
            .map(|&i| column(big_b_word(&ix.word(n, i)), &positions[n + 1]))
            .collect::<Result<Vec<_>>>()?;
        big_b.push(SparseMatrix::from_columns(kept[n + 1], &cols)?);
    }
    let complex = MixedComplex::new(kept, b, big_b)?;
    Ok(FormComplex { complex, index: ix, reps, quotients: None })
}

/// Applies a linear map letterwise to a word: `w ↦ f(a_0) ⊗ … ⊗ f(a_n)`,
/// expanded into basis words.
pub(crate) fn apply_letterwise(m: &SparseMatrix, word: &Word) -> Vec<(Word, crate::exactlin::Rational)> {
    let cols: Vec<SparseVec> = word.letters.iter().map(|&l| m.mul_vec(&SparseVec::unit(l))).collect();
    let mut acc: Vec<(Vec<usize>, crate::exactlin::Rational)> = vec![(Vec::with_capacity(cols.len()), crate::exactlin::Rational::ONE)];
    for col in &cols {
        let mut next = Vec::with_capacity(acc.len() * col.nnz());
        for (prefix, c) in &acc {
            for (k, x) in col.entries() {
                let mut p = prefix.clone();
                p.push(*k);
                next.push((p, c * x));
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(letters, c)| (Word { a0: word.a0, letters }, c)).collect()
}

/// The map `Ω(A) → Ω(A')` induced degreewise by a linear map `A → A'` (an
/// algebra map gives a map of mixed complexes). Both complexes must be full
/// absolute form complexes.
pub fn induced_form_map(m: &SparseMatrix, source: &FormComplex, target: &FormComplex) -> Result<Vec<SparseMatrix>> {
    let ti = target.word_index();
    (0..=source.top().min(target.top()))
        .map(|n| {
            let cols: Vec<SparseVec> = (0..source.complex().dim(n))
                .into_par_iter()
                .map(|k| {
                    let w = source.rep_word(n, k);
                    SparseVec::from_pairs(apply_letterwise(m, &w).into_iter().map(|(w, c)| (ti.index(&w), c)))
                })
                .collect();
            SparseMatrix::from_columns(target.complex().dim(n), &cols)
        })
        .collect()
}
