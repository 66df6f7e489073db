use rayon::prelude::*;

use crate::algebras::TwistedBimodule;
use crate::conventions::{checked_pow, sign, tuple_digits, tuple_index};
use crate::error::{Error, Result};
use crate::exactlin::{rank, Rational, SparseMatrix, SparseVec};

use super::{HomologyProfile, Theory};

pub const DEFAULT_TWISTED_CAP: usize = 500_000;

/// `b: M ⊗ A^{⊗n} → M ⊗ A^{⊗n-1}`. Basis index of `m_j ⊗ a_t` is
/// `j * d^n + t`.
fn twisted_boundary(m: &TwistedBimodule, n: usize) -> Result<SparseMatrix> {
    let a = m.base();
    let d = a.dim();
    let (src_dim, dst_dim) = (d.pow(n as u32 + 1), d.pow(n as u32));
    let dn1 = d.pow(n as u32 - 1);
    let cols: Vec<SparseVec> = (0..src_dim)
        .into_par_iter()
        .map(|src| {
            let (mj, t) = (src / d.pow(n as u32), tuple_digits(src % d.pow(n as u32), d, n));
            let mut acc: Vec<(usize, Rational)> = Vec::new();
            // m a_1 ⊗ a_2 ⊗ … ⊗ a_n
            for (k, c) in m.right(&SparseVec::unit(mj), &SparseVec::unit(t[0])).entries() {
                acc.push((k * dn1 + tuple_index(&t[1..], d), c.clone()));
            }
            for i in 1..n {
                let prod = a.mul_basis(t[i - 1], t[i]);
                let s = Rational::from_int(sign(i));
                for (k, c) in prod.entries() {
                    let mut f = t[..i - 1].to_vec();
                    f.push(*k);
                    f.extend_from_slice(&t[i + 1..]);
                    acc.push((mj * dn1 + tuple_index(&f, d), c * &s));
                }
            }
            // (-1)^n a_n·m ⊗ a_1 ⊗ … ⊗ a_{n-1}, twisted left action
            let s = Rational::from_int(sign(n));
            for (k, c) in m.left(&SparseVec::unit(t[n - 1]), &SparseVec::unit(mj)).entries() {
                acc.push((k * dn1 + tuple_index(&t[..n - 1], d), c * &s));
            }
            SparseVec::from_pairs(acc)
        })
        .collect();
    SparseMatrix::from_columns(dst_dim, &cols)
}

/// Hochschild homology of `A` with coefficients in a twisted bimodule
/// `A^{(v)}`, degrees `0..=up_to`.
pub fn twisted_hochschild_dims(m: &TwistedBimodule, up_to: usize, cap: usize) -> Result<HomologyProfile> {
    let d = m.base().dim();
    let needed = checked_pow(d, up_to + 2).unwrap_or(usize::MAX);
    if needed > cap {
        return Err(Error::ResourceCap {
            what: format!("twisted Hochschild complex to degree {}", up_to + 1),
            needed: needed as u128,
            cap: cap as u128,
        });
    }
    let bs = (1..=up_to + 1).map(|n| twisted_boundary(m, n)).collect::<Result<Vec<_>>>()?;
    for w in bs.windows(2) {
        if !w[0].matmul(&w[1])?.is_zero() {
            return Err(Error::CompositionNonzero);
        }
    }
    let ranks: Vec<usize> = std::iter::once(0).chain(bs.par_iter().map(rank).collect::<Vec<_>>()).collect();
    let dims = (0..=up_to).map(|n| d.pow(n as u32 + 1) - ranks[n] - ranks[n + 1]).collect();
    Ok(HomologyProfile { theory: Theory::TwistedHochschild, dims, stabilized: None, truncation: up_to + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::StructureAlgebra;
    use crate::forms::build_forms;
    use crate::groups::FiniteGroup;
    use crate::homology::hochschild_dims;

    #[test]
    fn identity_twist_is_hochschild() {
        let a = StructureAlgebra::dual_numbers();
        let m = TwistedBimodule::new(&a, SparseMatrix::identity(2)).unwrap();
        let tw = twisted_hochschild_dims(&m, 3, 10_000).unwrap();
        let hh = hochschild_dims(build_forms(&a, 4).unwrap().complex(), 3).unwrap();
        assert_eq!(tw.dims, hh.dims);
    }

    #[test]
    fn swap_twist_on_group_algebra() {
        // u ↦ -u swaps the two idempotents of kℤ/2 ≅ k × k, so every twisted
        // commutator quotient vanishes.
        let g = FiniteGroup::cyclic(2);
        let a = StructureAlgebra::group_algebra(&g);
        let v = SparseMatrix::from_int_rows(&[&[1, 0], &[0, -1]]);
        let m = TwistedBimodule::new(&a, v).unwrap();
        assert_eq!(twisted_hochschild_dims(&m, 2, 10_000).unwrap().dims, vec![0, 0, 0]);
    }

    #[test]
    fn ground_field_any_twist() {
        let k = StructureAlgebra::field();
        let m = TwistedBimodule::new(&k, SparseMatrix::identity(1)).unwrap();
        assert_eq!(twisted_hochschild_dims(&m, 2, 100).unwrap().dims[0], 1);
    }
}
