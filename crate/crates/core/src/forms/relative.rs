use rayon::prelude::*;

use crate::algebras::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{QuotientPresentation, Rational, SparseMatrix, SparseVec};

use super::build::{ambient_dims, FormComplex};
use super::mixed::MixedComplex;
use super::words::{b_word, big_b_word, Word, WordIndex};

/// Left and right action matrices of one element of `R` on the algebra.
pub type BimoduleAction = (SparseMatrix, SparseMatrix);

fn is_monomial(m: &SparseMatrix) -> bool {
    m.columns().iter().all(|c| c.nnz() <= 1)
}

/// Replaces letter `slot` of `w` by the column `m e_{w[slot]}`.
fn act_on_slot(m: &SparseMatrix, w: &Word, slot: usize, ix: &WordIndex) -> SparseVec {
    let col = m.mul_vec(&SparseVec::unit(w.letters[slot]));
    let mut v = w.clone();
    SparseVec::from_pairs(col.into_entries().into_iter().map(|(k, c)| {
        v.letters[slot] = k;
        (ix.index(&v), c)
    }))
}

/// Spanning relations of Ω^n(A:R)_♮ inside Ω^n(A): moving `r` across each
/// tensor slot boundary, and commutators `r ω - ω r` acting on the first and
/// last letters.
fn relations_of_word(w: &Word, bimodule: &[BimoduleAction], ix: &WordIndex) -> Vec<(SparseVec, SparseVec)> {
    let len = w.letters.len();
    let mut out = Vec::with_capacity(bimodule.len() * (len + 1));
    for (l, r) in bimodule {
        for i in 0..len.saturating_sub(1) {
            out.push((act_on_slot(r, w, i, ix), act_on_slot(l, w, i + 1, ix)));
        }
        out.push((act_on_slot(l, w, 0, ix), act_on_slot(r, w, len - 1, ix)));
    }
    out
}

fn quotient_for_degree(
    n: usize,
    dim: usize,
    bimodule: &[BimoduleAction],
    ix: &WordIndex,
    monomial: bool,
) -> Result<QuotientPresentation> {
    let pairs: Vec<(SparseVec, SparseVec)> =
        (0..dim).into_par_iter().flat_map_iter(|i| relations_of_word(&ix.word(n, i), bimodule, ix)).collect();
    if monomial {
        let rels = pairs.into_iter().filter_map(|(x, y)| {
            let one = |v: &SparseVec| v.entries().first().cloned();
            match (one(&x), one(&y)) {
                (None, None) => None,
                (Some((i, a)), None) | (None, Some((i, a))) => Some((i, a, None)),
                (Some((i, a)), Some((j, b))) => Some((i, a, Some((j, b)))),
            }
        });
        Ok(QuotientPresentation::from_monomial_relations(dim, rels))
    } else {
        Ok(QuotientPresentation::new(dim, pairs.into_iter().map(|(x, y)| x.sub(&y))))
    }
}

/// Ω(A:R)_♮ for an `R`-algebra `A` whose `R`-bimodule structure is given by
/// the action matrices of a basis of `R`. `b` and `B` are the operators of
/// Ω(A) induced on the quotient; each is checked to kill the relations.
pub fn build_relative_forms(
    alg: &StructureAlgebra,
    bimodule: &[BimoduleAction],
    top: usize,
    cap: usize,
) -> Result<FormComplex> {
    let d = alg.dim();
    if bimodule.iter().any(|(l, r)| l.rows() != d || l.cols() != d || r.rows() != d || r.cols() != d) {
        return Err(Error::DimensionMismatch("bimodule matrices do not match the algebra".into()));
    }
    let dims = ambient_dims(d, top, cap)?;
    let ix = WordIndex { d };
    let monomial = bimodule.iter().all(|(l, r)| is_monomial(l) && is_monomial(r));
    let quots = dims
        .iter()
        .enumerate()
        .map(|(n, &dim)| quotient_for_degree(n, dim, bimodule, &ix, monomial))
        .collect::<Result<Vec<_>>>()?;

    let image = |terms: Vec<(Word, Rational)>, q: &QuotientPresentation| {
        q.project(&SparseVec::from_pairs(terms.into_iter().map(|(w, c)| (ix.index(&w), c))))
    };
    let op_on = |v: &SparseVec, n: usize, up: bool| -> Vec<(Word, Rational)> {
        let mut acc = Vec::new();
        for (i, c) in v.entries() {
            let w = ix.word(n, *i);
            let terms = if up { big_b_word(&w) } else { b_word(alg, &w) };
            acc.extend(terms.into_iter().map(|(w, x)| (w, &x * c)));
        }
        acc
    };
    let induce = |n: usize, up: bool| -> Result<SparseMatrix> {
        let (from, to) = (&quots[n], if up { &quots[n + 1] } else { &quots[n - 1] });
        let rels = from.relation_subspace();
        let bad = rels.basis().par_iter().any(|r| !image(op_on(r, n, up), to).is_zero());
        if bad {
            let what = if up { "B" } else { "b" };
            return Err(Error::WellDefinednessFailure(format!("{what} does not preserve relations in degree {n}")));
        }
        let cols: Vec<SparseVec> = from
            .canonical_complement()
            .par_iter()
            .map(|&i| image(op_on(&SparseVec::unit(i), n, up), to))
            .collect();
        SparseMatrix::from_columns(to.dim(), &cols)
    };
    let qdims: Vec<usize> = quots.iter().map(QuotientPresentation::dim).collect();
    let mut b = vec![SparseMatrix::zeros(0, qdims[0])];
    for n in 1..=top {
        b.push(induce(n, false)?);
    }
    let big_b = (0..top).map(|n| induce(n, true)).collect::<Result<Vec<_>>>()?;
    let complex = MixedComplex::new(qdims, b, big_b)?;
    let reps = quots.iter().map(|q| q.canonical_complement().to_vec()).collect();
    Ok(FormComplex::from_parts(complex, ix, reps, Some(quots)))
}

/// The projections `Ω^n(A) → Ω^n(A:R)_♮`, checked to commute with `b` and
/// `B`.
pub fn base_change_projection(abs: &FormComplex, rel: &FormComplex) -> Result<Vec<SparseMatrix>> {
    let quots = rel.quotients().ok_or_else(|| Error::DimensionMismatch("target is not a relative complex".into()))?;
    let top = abs.top().min(rel.top());
    let mut maps = Vec::with_capacity(top + 1);
    for (n, q) in quots.iter().enumerate().take(top + 1) {
        if q.ambient_dim() != abs.complex().dim(n) || abs.reps(n).iter().enumerate().any(|(k, &i)| k != i) {
            return Err(Error::DimensionMismatch("source is not the full absolute complex".into()));
        }
        maps.push(q.projection_matrix());
    }
    if !abs.complex().truncate(top).is_chain_map_to(&rel.complex().truncate(top), &maps)? {
        return Err(Error::IdentityFailure("base change does not commute with b and B".into()));
    }
    Ok(maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{group_ring_basis, subalgebra_bimodule_structure};
    use crate::forms::build_forms;
    use crate::groups::FiniteGroup;

    fn whole(g: &FiniteGroup) -> (StructureAlgebra, Vec<BimoduleAction>) {
        let k = StructureAlgebra::field();
        let kg = StructureAlgebra::group_algebra(g);
        let all = g.generated_subgroup(&g.elements().collect::<Vec<_>>());
        let bm = subalgebra_bimodule_structure(&kg, &group_ring_basis(&k, g, &all));
        (kg, bm)
    }

    #[test]
    fn ground_field_relative_is_absolute() {
        let a = StructureAlgebra::dual_numbers();
        let one = a.unit().unwrap().clone();
        let bm = subalgebra_bimodule_structure(&a, &[one]);
        let rel = build_relative_forms(&a, &bm, 3, 10_000).unwrap();
        let abs = build_forms(&a, 3).unwrap();
        assert_eq!(rel.complex(), abs.complex());
    }

    #[test]
    fn commutator_quotients_in_degree_zero() {
        let (kz2, bm) = whole(&FiniteGroup::cyclic(2));
        assert_eq!(build_relative_forms(&kz2, &bm, 1, 10_000).unwrap().complex().dim(0), 2);
        let (ks3, bm) = whole(&FiniteGroup::symmetric(3));
        assert_eq!(build_relative_forms(&ks3, &bm, 0, 10_000).unwrap().complex().dim(0), 3);
    }

    #[test]
    fn base_change_commutes() {
        let (kz2, bm) = whole(&FiniteGroup::cyclic(2));
        let rel = build_relative_forms(&kz2, &bm, 3, 10_000).unwrap();
        rel.complex().check_identities().unwrap();
        let abs = build_forms(&kz2, 3).unwrap();
        let maps = base_change_projection(&abs, &rel).unwrap();
        assert_eq!(maps.len(), 4);
    }
}
