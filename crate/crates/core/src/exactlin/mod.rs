//! Exact sparse linear algebra over the rational field.

mod echelon;
mod quotient;
mod rational;
mod sparse;

pub use echelon::{echelon, rank, rank_of_vectors, rank_pair, EchelonBasis, Rref};
pub use quotient::{QuotientPresentation, SubspacePresentation};
pub use rational::{ParseRationalError, Rational};
pub use sparse::{SparseMatrix, SparseVec};

use crate::error::{Error, Result};

/// Basis of the null space `{x : M x = 0}`, one vector per free column of the
/// reduced row-echelon form of `M`.
pub fn kernel_basis(m: &SparseMatrix) -> SubspacePresentation {
    let rref = echelon(m.row_vectors().iter().cloned()).into_rref();
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in rref.pivots() {
        is_pivot[p] = true;
    }
    // Column-wise view of the non-pivot part of each RREF row.
    let mut free_hits: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
    for (row, &p) in rref.rows().iter().zip(rref.pivots()) {
        for (c, v) in row.entries().iter().skip(1) {
            free_hits[*c].push((p, -v.clone()));
        }
    }
    let basis = (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|f| {
            let mut e = std::mem::take(&mut free_hits[f]);
            e.push((f, Rational::ONE));
            SparseVec::from_pairs(e)
        })
        .collect();
    SubspacePresentation::from_independent(n, basis)
}

/// `dim ker(d_out) - rank(d_in)` for a composable pair `X --d_in--> Y --d_out--> Z`.
pub fn homology_dim(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<usize> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch(format!(
            "d_in has {} rows but d_out has {} columns",
            d_in.rows(),
            d_out.cols()
        )));
    }
    if !d_out.matmul(d_in)?.is_zero() {
        return Err(Error::CompositionNonzero);
    }
    let ker = d_out.cols() - rank(d_out);
    Ok(ker - rank(d_in))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&SparseMatrix::identity(4)), 4);
        assert_eq!(rank(&SparseMatrix::from_int_rows(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::identity(3)).basis().is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::zeros(2, 5)).dim(), 5);
        let k = kernel_basis(&SparseMatrix::from_int_rows(&[&[1, 1]]));
        assert_eq!(k.dim(), 1);
        // span{(1, -1)}
        let v = &k.basis()[0];
        assert_eq!(v.get(0), -v.get(1));
        assert!(!v.get(0).is_zero());
    }

    #[test]
    fn homology_examples() {
        let z = SparseMatrix::zeros(2, 2);
        assert_eq!(homology_dim(&z, &z).unwrap(), 2);
        assert_eq!(homology_dim(&SparseMatrix::identity(2), &z).unwrap(), 0);
        let d_in = SparseMatrix::from_int_rows(&[&[1], &[0]]);
        let d_out = SparseMatrix::from_int_rows(&[&[0, 1]]);
        assert_eq!(homology_dim(&d_in, &d_out).unwrap(), 0);
    }

    #[test]
    fn homology_errors() {
        let id = SparseMatrix::identity(2);
        assert!(matches!(homology_dim(&id, &id), Err(Error::CompositionNonzero)));
        assert!(matches!(
            homology_dim(&SparseMatrix::zeros(3, 2), &SparseMatrix::zeros(2, 2)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    fn small_matrix() -> impl Strategy<Value = SparseMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-2i64..3, c), r).prop_map(|rows| {
                let dense: Vec<Vec<Rational>> =
                    rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
                SparseMatrix::from_dense(&dense)
            })
        })
    }

    fn stacked_pair() -> impl Strategy<Value = (SparseMatrix, SparseMatrix)> {
        (1usize..8, 1usize..5, 1usize..8).prop_flat_map(|(r, e, c)| {
            proptest::collection::vec(proptest::collection::vec(-2i64..3, c), r + e).prop_map(move |rows| {
                let dense: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
                (SparseMatrix::from_dense(&dense[..r]), SparseMatrix::from_dense(&dense[r..]))
            })
        })
    }

    proptest! {
        #[test]
        fn rank_of_transpose(m in small_matrix()) {
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(k.dim() + rank(&m), m.cols());
            for v in k.basis() {
                prop_assert!(m.mul_vec(v).is_zero());
            }
        }

        #[test]
        fn rank_pair_matches_separate_ranks((m, x) in stacked_pair()) {
            let all: Vec<SparseVec> = m.row_vectors().iter().chain(x.row_vectors()).cloned().collect();
            let (b, a) = rank_pair(m.cols(), m.row_vectors(), x.row_vectors());
            prop_assert_eq!(b, echelon(m.row_vectors().iter().cloned()).rank());
            prop_assert_eq!(a, echelon(all).rank());
        }

        #[test]
        fn eliminator_agrees_with_echelon(m in small_matrix()) {
            prop_assert_eq!(rank(&m), echelon(m.row_vectors().iter().cloned()).rank());
        }

        #[test]
        fn exact_two_step_sequence(m in small_matrix()) {
            // d = m, followed by the projection onto a complement of im(m):
            // the sequence is exact at the middle term.
            let quot = QuotientPresentation::new(m.rows(), m.columns());
            let proj = quot.projection_matrix();
            prop_assert_eq!(homology_dim(&m, &proj).unwrap(), 0);
        }
    }
}
