use crate::error::{Error, Result};
use crate::exactlin::{rank, Rational, SparseMatrix, SparseVec};
use crate::groups::{CosetSection, FiniteGroup, Subgroup};

use super::{diagonal_action_on_extension, AlgebraAction, StructureAlgebra};

/// A homomorphism of algebras given by its matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraHom {
    source: StructureAlgebra,
    target: StructureAlgebra,
    matrix: SparseMatrix,
}

impl AlgebraHom {
    pub fn new(source: &StructureAlgebra, target: &StructureAlgebra, matrix: SparseMatrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch("homomorphism matrix has the wrong shape".into()));
        }
        let images: Vec<SparseVec> = (0..source.dim()).map(|i| matrix.mul_vec(&SparseVec::unit(i))).collect();
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                if matrix.mul_vec(source.mul_basis(i, j)) != target.mul(&images[i], &images[j]) {
                    return Err(Error::IdentityFailure(format!(
                        "not multiplicative on ({}, {})",
                        source.labels()[i],
                        source.labels()[j]
                    )));
                }
            }
        }
        if let (Some(u), Some(v)) = (source.unit(), target.unit()) {
            if &matrix.mul_vec(u) != v {
                return Err(Error::IdentityFailure("unit is not preserved".into()));
            }
        }
        Ok(Self { source: source.clone(), target: target.clone(), matrix })
    }

    pub fn source(&self) -> &StructureAlgebra {
        &self.source
    }

    pub fn target(&self) -> &StructureAlgebra {
        &self.target
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.matrix.mul_vec(v)
    }

    pub fn is_injective(&self) -> bool {
        rank(&self.matrix) == self.source.dim()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }
}

/// `ε: k⟨X⟩ → k`, every basis vector to 1.
pub fn augmentation(kx: &StructureAlgebra) -> Result<AlgebraHom> {
    let n = kx.dim();
    let m = SparseMatrix::from_triplets(1, n, (0..n).map(|x| (0, x, Rational::ONE)))?;
    AlgebraHom::new(kx, &StructureAlgebra::field(), m)
}

/// Data of the embedding `ι_σ: (A⋊U)⟨U\G⟩ → A⟨G⟩⋊U`, `(u_g a)⟨x⟩ ↦ u_g(a⟨σ(x)⟩)`.
#[derive(Clone, Debug)]
pub struct IotaSigma {
    pub hom: AlgebraHom,
    /// The `U`-action on `A⟨G⟩` (diagonal, left translation on `G`).
    pub extension_action: AlgebraAction,
}

/// Builds `ι_σ` and checks that it is multiplicative and injective, and
/// that the bimodule map `u_g ⊗ a⟨x⟩ ⊗ u_h ↦ u_g a⟨σ(x)⟩ u_h` from
/// `kU ⊗ A⟨U\G⟩ ⊗ kU` to `A⟨G⟩⋊U` is bijective.
///
/// Source basis: `((u * dim A + i) * |U\G| + x)`; target basis:
/// `u * (dim A * |G|) + i * |G| + g`.
pub fn iota_sigma(
    a: &StructureAlgebra,
    act: &AlgebraAction,
    u: &Subgroup,
    section: &CosetSection,
) -> Result<IotaSigma> {
    let g: &FiniteGroup = act.group();
    let d = a.dim();
    let q = g.order();
    let m = section.num_cosets();
    for c in 0..m {
        let r = section.representative(c);
        if r >= q || section.coset_of(r) != c || !section.cosets()[c].iter().all(|&y| u.contains(g.mul(y, g.inv(r)))) {
            return Err(Error::InvalidSection(format!("representative {r} does not lie in coset {c}")));
        }
    }
    let act_u = act.restrict(u);
    let au = StructureAlgebra::crossed_product(a, &act_u)?;
    let source = StructureAlgebra::tensor_with_set(&au, m)?;
    let ag = StructureAlgebra::tensor_with_set(a, q)?;
    let full = diagonal_action_on_extension(act, &ag)?;
    let ext_act = full.restrict(u);
    let target = StructureAlgebra::crossed_product(&ag, &ext_act)?;
    let ul = u.order();
    let mut trip = Vec::new();
    for lu in 0..ul {
        for i in 0..d {
            for x in 0..m {
                let src = (lu * d + i) * m + x;
                let dst = lu * (d * q) + i * q + section.representative(x);
                trip.push((dst, src, Rational::ONE));
            }
        }
    }
    let matrix = SparseMatrix::from_triplets(target.dim(), source.dim(), trip)?;
    let hom = AlgebraHom::new(&source, &target, matrix)?;
    if !hom.is_injective() {
        return Err(Error::InvertibilityFailure("ι_σ is not injective".into()));
    }
    // u_g a⟨σ(x)⟩ u_h = u_{gh} h⁻¹(a⟨σ(x)⟩), indexed by (g, i, x, h).
    let ug = u.group();
    let block = d * q;
    let mut cols = Vec::with_capacity(ul * d * m * ul);
    for lg in 0..ul {
        for i in 0..d {
            for x in 0..m {
                let c = SparseVec::unit(i * q + section.representative(x));
                for lh in 0..ul {
                    let moved = ext_act.apply(ug.inv(lh), &c);
                    let shift = ug.mul(lg, lh) * block;
                    cols.push(SparseVec::from_pairs(moved.into_entries().into_iter().map(|(k, v)| (shift + k, v))));
                }
            }
        }
    }
    if cols.len() != target.dim() || crate::exactlin::rank_of_vectors(target.dim(), &cols) != target.dim() {
        return Err(Error::InvertibilityFailure("kU ⊗ A<U\\G> ⊗ kU → A<G>⋊U is not bijective".into()));
    }
    Ok(IotaSigma { hom, extension_action: ext_act })
}
