//! Structural maps between form complexes of crossed products.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::{rank, Rational, SparseMatrix, SparseVec};

use super::build::FormComplex;
use super::crossed::CrossedForms;
use super::words::Word;

/// Degreewise matrices of the map `Ω(S) → Ω(C⋊U : kU)_♮` induced by an
/// algebra map `S → C⋊U` sending basis letters to basis letters (as `ι_σ`
/// does). `letter_map[s]` is the image letter of source letter `s`.
pub fn letter_map_to_relative(source: &FormComplex, letter_map: &[usize], target: &CrossedForms) -> Result<Vec<SparseMatrix>> {
    let top = source.top().min(target.top());
    (0..=top)
        .map(|n| {
            let cols = (0..source.complex().dim(n))
                .into_par_iter()
                .map(|k| {
                    let w = source.rep_word(n, k);
                    let img = Word { a0: w.a0, letters: w.letters.iter().map(|&l| letter_map[l]).collect() };
                    target.project_cross_terms(n, [(img, Rational::ONE)])
                })
                .collect::<Result<Vec<_>>>()?;
            SparseMatrix::from_columns(target.complex().dim(n), &cols)
        })
        .collect()
}

/// Reads off the letter map of an algebra homomorphism whose matrix sends
/// basis vectors to basis vectors.
pub fn letter_map_of(matrix: &SparseMatrix) -> Result<Vec<usize>> {
    matrix
        .columns()
        .into_iter()
        .map(|c| match c.entries() {
            [(k, x)] if x.is_one() => Ok(*k),
            _ => Err(Error::DimensionMismatch("map does not send basis letters to basis letters".into())),
        })
        .collect()
}

/// Whether every matrix is square of full rank.
pub fn degreewise_bijective(maps: &[SparseMatrix]) -> bool {
    maps.iter().all(|m| m.rows() == m.cols() && rank(m) == m.rows())
}

/// The data of the free-module description of relative forms:
/// `Φ: Vect(Ad U) ⊗ Ω(C) → Ω(C⋊U : kU)_♮`, `u_g ⊗ ω ↦ u_g·ω`, its map on
/// `U`-coinvariants and a section `σ′` picking one word per orbit.
#[derive(Clone, Debug)]
pub struct FreeModuleData {
    /// `Φ` on `Vect(U) ⊗ Ω^n(C)`, per degree.
    pub phi: Vec<SparseMatrix>,
    /// `Φ` on coinvariants, per degree (square).
    pub phi_coinvariants: Vec<SparseMatrix>,
    /// `σ′` from relative forms into `Vect(U) ⊗ Ω^n(C)`, per degree.
    pub section: Vec<SparseMatrix>,
}

/// Builds and checks the data of [`FreeModuleData`] against an independently
/// built relative form complex `rel` of `C⋊U` (generic quotient
/// construction). Checks: `Φ` is constant on `U`-orbits, its map on
/// coinvariants is invertible and commutes with `b` and `B`, and
/// `Φ∘σ′ = id`.
pub fn free_module_basis(model: &CrossedForms, rel: &FormComplex) -> Result<FreeModuleData> {
    let quots = rel.quotients().ok_or_else(|| Error::DimensionMismatch("expected a relative complex".into()))?;
    let rix = rel.word_index();
    if rix.d != model.cross_algebra().dim() || model.kept().len() != model.group().order() {
        return Err(Error::DimensionMismatch("model and relative complex do not match".into()));
    }
    let top = model.top().min(rel.top());
    let mut phi = Vec::new();
    let mut phi_coinvariants = Vec::new();
    let mut section = Vec::new();
    for n in 0..=top {
        let vdim = model.v_dim(n).expect("built");
        let q = &quots[n];
        let cols: Vec<SparseVec> = (0..vdim)
            .into_par_iter()
            .map(|x| {
                let (gx, w) = model.v_word(n, x);
                q.project_basis(rix.index(&model.cross_word(gx, &w)))
            })
            .collect();
        // The word u_g·ω is already in normal form.
        let normal = (0..vdim).into_par_iter().all(|x| {
            let (gx, w) = model.v_word(n, x);
            matches!(model.normalize(&model.cross_word(gx, &w)), Some((y, c)) if y == x && c.is_one())
        });
        if !normal {
            return Err(Error::InvertibilityFailure("u_g ⊗ ω is not its own normal form".into()));
        }
        // Φ kills the coinvariant relations: Φ(x) = c Φ(rep) when x ≡ c rep.
        let orbit_ok = (0..vdim).into_par_iter().all(|x| {
            let rel_x = model.quotient(n).project_basis(x);
            let lifted = model.quotient(n).lift(&rel_x);
            let back: SparseVec = SparseVec::from_pairs(
                lifted.entries().iter().flat_map(|(i, c)| cols[*i].entries().iter().map(move |(r, v)| (*r, c * v))),
            );
            back == cols[x]
        });
        if !orbit_ok {
            return Err(Error::InvertibilityFailure("Φ is not constant on U-orbits".into()));
        }
        let phi_n = SparseMatrix::from_columns(q.dim(), &cols)?;
        let comp: Vec<SparseVec> = model.quotient(n).canonical_complement().iter().map(|&i| cols[i].clone()).collect();
        let phi_u = SparseMatrix::from_columns(q.dim(), &comp)?;
        if phi_u.rows() != phi_u.cols() || rank(&phi_u) != phi_u.rows() {
            return Err(Error::InvertibilityFailure(format!("Φ on coinvariants is not invertible in degree {n}")));
        }
        // σ′: relative basis vector ↦ normal form of its representative word.
        let sec_cols = (0..q.dim())
            .map(|k| {
                let w = rix.word(n, q.lift_basis(k));
                let (i, c) = model
                    .normalize(&w)
                    .ok_or_else(|| Error::InvertibilityFailure("representative outside the model".into()))?;
                Ok(SparseVec::from_pairs([(i, c)]))
            })
            .collect::<Result<Vec<_>>>()?;
        let sec = SparseMatrix::from_columns(vdim, &sec_cols)?;
        if phi_n.matmul(&sec)? != SparseMatrix::identity(q.dim()) {
            return Err(Error::InvertibilityFailure(format!("Φ∘σ′ ≠ id in degree {n}")));
        }
        phi.push(phi_n);
        phi_coinvariants.push(phi_u);
        section.push(sec);
    }
    if !model.complex().truncate(top).is_chain_map_to(&rel.complex().truncate(top), &phi_coinvariants)? {
        return Err(Error::IdentityFailure("Φ on coinvariants does not commute with b and B".into()));
    }
    Ok(FreeModuleData { phi, phi_coinvariants, section })
}
