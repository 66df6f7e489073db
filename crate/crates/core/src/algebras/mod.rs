//! Finite-dimensional algebras by structure constants, the auxiliary
//! algebras `k⟨X⟩` and `A⟨X⟩`, group actions and crossed products.

mod action;
mod hom;
mod structure;
mod twisted;

pub use action::{diagonal_action_on_extension, inner_action_on_crossed, AlgebraAction};
pub use hom::{augmentation, iota_sigma, AlgebraHom, IotaSigma};
pub use structure::StructureAlgebra;
pub use twisted::TwistedBimodule;

use crate::error::Result;
use crate::exactlin::{Rational, SparseMatrix, SparseVec};
use crate::groups::{FiniteGroup, Subgroup};

/// `k⟨X⟩` on `n` points.
pub fn set_algebra(n: usize) -> Result<StructureAlgebra> {
    StructureAlgebra::set_algebra(n)
}

/// `A⟨X⟩` on `n` points.
pub fn tensor_with_set(a: &StructureAlgebra, n: usize) -> Result<StructureAlgebra> {
    StructureAlgebra::tensor_with_set(a, n)
}

/// `A ⋊ G`.
pub fn crossed_product(a: &StructureAlgebra, act: &AlgebraAction) -> Result<StructureAlgebra> {
    StructureAlgebra::crossed_product(a, act)
}

/// `A^{(v)}`.
pub fn twisted_bimodule(a: &StructureAlgebra, v: SparseMatrix) -> Result<TwistedBimodule> {
    TwistedBimodule::new(a, v)
}

/// The `kU`-bimodule structure on `C ⋊ U` for a `U`-algebra `C` (not
/// necessarily unital): `u_h · (u_g c) = u_{hg} c` and
/// `(u_g c) · u_h = u_{gh} h⁻¹(c)`. Returns `(left, right)` matrices indexed
/// by local elements of `U`.
pub fn crossed_bimodule_structure(c: &StructureAlgebra, act: &AlgebraAction) -> Vec<(SparseMatrix, SparseMatrix)> {
    let g = act.group();
    let d = c.dim();
    let n = g.order() * d;
    g.elements()
        .map(|h| {
            let left = SparseMatrix::from_triplets(
                n,
                n,
                (0..n).map(|k| (g.mul(h, k / d) * d + k % d, k, Rational::ONE)),
            )
            .expect("in range");
            let hinv = act.matrix(g.inv(h));
            let mut trip = Vec::new();
            for x in g.elements() {
                let shift = g.mul(x, h) * d;
                for (r, col, v) in hinv.iter() {
                    trip.push((shift + r, x * d + col, v.clone()));
                }
            }
            let right = SparseMatrix::from_triplets(n, n, trip).expect("in range");
            (left, right)
        })
        .collect()
}

/// `R`-bimodule matrices on a unital algebra `B` for a subalgebra `R` given
/// by a basis of vectors in `B`.
pub fn subalgebra_bimodule_structure(b: &StructureAlgebra, r_basis: &[SparseVec]) -> Vec<(SparseMatrix, SparseMatrix)> {
    r_basis.iter().map(|r| (b.left_mult_matrix(r), b.right_mult_matrix(r))).collect()
}

/// Basis of `k ⋊ U` inside `A ⋊ G`: `u_h 1_A` for `h ∈ U`.
pub fn group_ring_basis(a: &StructureAlgebra, g: &FiniteGroup, u: &Subgroup) -> Vec<SparseVec> {
    let d = a.dim();
    let one = a.unit().expect("unital");
    let _ = g;
    u.members()
        .iter()
        .map(|&h| SparseVec::from_pairs(one.entries().iter().map(|(i, c)| (h * d + i, c.clone()))))
        .collect()
}

/// Hand-picked algebras of dimension at most 3, unital and not.
pub fn small_algebras() -> Vec<StructureAlgebra> {
    let mut out = vec![
        StructureAlgebra::field(),
        StructureAlgebra::dual_numbers(),
        StructureAlgebra::truncated_poly(3),
        StructureAlgebra::group_algebra(&FiniteGroup::cyclic(2)),
        StructureAlgebra::group_algebra(&FiniteGroup::cyclic(3)),
        StructureAlgebra::upper_triangular(),
    ];
    out.extend((2..=3).map(|n| StructureAlgebra::set_algebra(n).expect("nonempty")));
    out
}

/// `small_algebras()[choice]` in a basis twisted by `L·U`, with `L` and `U`
/// unitriangular and their off-diagonal entries taken from `entries`
/// (cycled). Always invertible, so the result is isomorphic to the preset.
pub fn twisted_small_algebra(choice: usize, entries: &[i64]) -> Result<StructureAlgebra> {
    let presets = small_algebras();
    let a = &presets[choice % presets.len()];
    let d = a.dim();
    let mut next = entries.iter().cycle();
    let mut tri = |upper: bool| {
        let mut t = Vec::new();
        for i in 0..d {
            t.push((i, i, Rational::ONE));
            for j in 0..d {
                if (upper && j > i) || (!upper && j < i) {
                    t.push((i, j, Rational::from_int(next.next().copied().unwrap_or(0))));
                }
            }
        }
        SparseMatrix::from_triplets(d, d, t)
    };
    let (l, u) = (tri(false)?, tri(true)?);
    a.change_basis(&l.matmul(&u)?)
}
