//! Tensor words and the operators `b`, `B` on them.

use crate::conventions::{checked_pow, sign, tuple_digits, tuple_index};
use crate::exactlin::{Rational, SparseVec};
use crate::algebras::StructureAlgebra;

/// A basis form: `a_0 da_1 … da_n` when `a0` is set (letters `a_0, …, a_n`),
/// otherwise `da_1 … da_n` (letters `a_1, …, a_n`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub a0: bool,
    pub letters: Vec<usize>,
}

impl Word {
    pub fn degree(&self) -> usize {
        if self.a0 {
            self.letters.len() - 1
        } else {
            self.letters.len()
        }
    }
}

/// Indexing of form words over a basis of size `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordIndex {
    pub d: usize,
}

impl WordIndex {
    /// `dim Ω^n = d^{n+1} + d^n` for `n ≥ 1`, and `d` for `n = 0`.
    pub fn dim(&self, n: usize) -> Option<usize> {
        let a = checked_pow(self.d, n + 1)?;
        if n == 0 {
            Some(a)
        } else {
            a.checked_add(checked_pow(self.d, n)?)
        }
    }

    pub fn index(&self, w: &Word) -> usize {
        let n = w.degree();
        if w.a0 {
            tuple_index(&w.letters, self.d)
        } else {
            self.d.pow(n as u32 + 1) + tuple_index(&w.letters, self.d)
        }
    }

    pub fn word(&self, n: usize, index: usize) -> Word {
        let a0_count = self.d.pow(n as u32 + 1);
        if index < a0_count {
            Word { a0: true, letters: tuple_digits(index, self.d, n + 1) }
        } else {
            Word { a0: false, letters: tuple_digits(index - a0_count, self.d, n) }
        }
    }
}

/// Expands a word in which one slot holds a product vector instead of a
/// letter.
fn push_product(
    out: &mut Vec<(Word, Rational)>,
    a0: bool,
    prefix: &[usize],
    prod: &SparseVec,
    suffix: &[usize],
    coeff: i64,
) {
    for (k, c) in prod.entries() {
        let mut letters = Vec::with_capacity(prefix.len() + 1 + suffix.len());
        letters.extend_from_slice(prefix);
        letters.push(*k);
        letters.extend_from_slice(suffix);
        out.push((Word { a0, letters }, c * &Rational::from_int(coeff)));
    }
}

/// `b` of a basis word (see [`crate::conventions`]).
pub fn b_word(alg: &StructureAlgebra, w: &Word) -> Vec<(Word, Rational)> {
    let l = &w.letters;
    let mut out = Vec::new();
    if w.a0 {
        let n = l.len() - 1;
        if n == 0 {
            return out;
        }
        for i in 0..n {
            push_product(&mut out, true, &l[..i], alg.mul_basis(l[i], l[i + 1]), &l[i + 2..], sign(i));
        }
        push_product(&mut out, true, &[], alg.mul_basis(l[n], l[0]), &l[1..n], sign(n));
    } else {
        let n = l.len();
        // a_1 da_2 … da_n
        out.push((Word { a0: true, letters: l.clone() }, Rational::ONE));
        for k in 1..n {
            push_product(&mut out, false, &l[..k - 1], alg.mul_basis(l[k - 1], l[k]), &l[k + 1..], sign(k));
        }
        // (-1)^n a_n da_1 … da_{n-1}
        let mut rot = Vec::with_capacity(n);
        rot.push(l[n - 1]);
        rot.extend_from_slice(&l[..n - 1]);
        out.push((Word { a0: true, letters: rot }, Rational::from_int(sign(n))));
    }
    out
}

/// `B` of a basis word.
pub fn big_b_word(w: &Word) -> Vec<(Word, Rational)> {
    if !w.a0 {
        return Vec::new();
    }
    let l = &w.letters;
    let n = l.len() - 1;
    (0..=n)
        .map(|i| {
            let mut letters = Vec::with_capacity(n + 1);
            letters.extend_from_slice(&l[i..]);
            letters.extend_from_slice(&l[..i]);
            (Word { a0: false, letters }, Rational::from_int(sign(n * i)))
        })
        .collect()
}

/// Collects word terms into a vector using `index`.
#[cfg(test)]
fn to_vector(terms: Vec<(Word, Rational)>, index: impl Fn(&Word) -> usize) -> SparseVec {
    SparseVec::from_pairs(terms.into_iter().map(|(w, c)| (index(&w), c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_index_roundtrip() {
        let ix = WordIndex { d: 3 };
        for n in 0..3 {
            for i in 0..ix.dim(n).unwrap() {
                let w = ix.word(n, i);
                assert_eq!(w.degree(), n);
                assert_eq!(ix.index(&w), i);
            }
        }
        assert_eq!(ix.dim(0), Some(3));
        assert_eq!(ix.dim(2), Some(27 + 9));
    }

    #[test]
    fn ground_field_hand_values() {
        let k = StructureAlgebra::field();
        let ix = WordIndex { d: 1 };
        let v = |w: Word| to_vector(b_word(&k, &w), |x| ix.index(x));
        // b(e de) = 0, b(e de de) = e de, b(de de) = 2 e de - de
        assert!(v(Word { a0: true, letters: vec![0, 0] }).is_zero());
        assert_eq!(v(Word { a0: true, letters: vec![0, 0, 0] }), SparseVec::unit(0));
        assert_eq!(
            v(Word { a0: false, letters: vec![0, 0] }),
            SparseVec::from_pairs([(0, Rational::from_int(2)), (1, Rational::from_int(-1))])
        );
        let bb = to_vector(big_b_word(&Word { a0: true, letters: vec![0] }), |x| ix.index(x));
        assert_eq!(bb, SparseVec::unit(1));
        assert!(big_b_word(&Word { a0: true, letters: vec![0, 0] }).iter().map(|(_, c)| c.clone()).sum::<Rational>().is_zero());
    }
}
