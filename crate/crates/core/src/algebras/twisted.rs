use crate::error::{Error, Result};
use crate::exactlin::{rank, SparseMatrix, SparseVec};

use super::StructureAlgebra;

/// The bimodule `A^{(v)}`: underlying space `A`, left action
/// `a'·m = v⁻¹(a') m`, right action `m·a'' = m a''`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedBimodule {
    base: StructureAlgebra,
    twist: SparseMatrix,
    twist_inv: SparseMatrix,
}

/// Inverse of an invertible square matrix by solving against the identity.
pub(crate) fn invert(m: &SparseMatrix) -> Result<SparseMatrix> {
    let n = m.rows();
    if m.cols() != n || rank(m) != n {
        return Err(Error::InvertibilityFailure("matrix is singular".into()));
    }
    // Row-reduce [M | I] using the column view of M^T.
    let aug = m.hstack(&SparseMatrix::identity(n))?;
    let rref = crate::exactlin::echelon(aug.row_vectors().iter().cloned()).into_rref();
    let rows: Vec<SparseVec> = rref
        .rows()
        .iter()
        .map(|r| SparseVec::from_pairs(r.entries().iter().filter(|(i, _)| *i >= n).map(|(i, c)| (i - n, c.clone()))))
        .collect();
    SparseMatrix::from_rows(n, rows)
}

impl TwistedBimodule {
    pub fn new(base: &StructureAlgebra, twist: SparseMatrix) -> Result<Self> {
        let d = base.dim();
        if twist.rows() != d || twist.cols() != d {
            return Err(Error::DimensionMismatch("twist has the wrong size".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = twist.mul_vec(base.mul_basis(i, j));
                let rhs = base.mul(&twist.mul_vec(&SparseVec::unit(i)), &twist.mul_vec(&SparseVec::unit(j)));
                if lhs != rhs {
                    return Err(Error::NotAutomorphism(format!("twist not multiplicative on ({i}, {j})")));
                }
            }
        }
        let twist_inv = invert(&twist).map_err(|_| Error::NotAutomorphism("twist is not invertible".into()))?;
        let m = Self { base: base.clone(), twist, twist_inv };
        m.check_laws()?;
        Ok(m)
    }

    pub fn base(&self) -> &StructureAlgebra {
        &self.base
    }

    pub fn twist(&self) -> &SparseMatrix {
        &self.twist
    }

    pub fn left(&self, a: &SparseVec, m: &SparseVec) -> SparseVec {
        self.base.mul(&self.twist_inv.mul_vec(a), m)
    }

    pub fn right(&self, m: &SparseVec, a: &SparseVec) -> SparseVec {
        self.base.mul(m, a)
    }

    /// Twisting `A^{(v)}` once more by `w` gives `A^{(wv)}`.
    pub fn retwist(&self, w: &SparseMatrix) -> Result<Self> {
        Self::new(&self.base, w.matmul(&self.twist)?)
    }

    fn check_laws(&self) -> Result<()> {
        let d = self.base.dim();
        let e = |i| SparseVec::unit(i);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let ok_left = self.left(&self.base.mul(&e(i), &e(j)), &e(k)) == self.left(&e(i), &self.left(&e(j), &e(k)));
                    let ok_right =
                        self.right(&e(k), &self.base.mul(&e(i), &e(j))) == self.right(&self.right(&e(k), &e(i)), &e(j));
                    let ok_mixed = self.right(&self.left(&e(i), &e(k)), &e(j)) == self.left(&e(i), &self.right(&e(k), &e(j)));
                    if !(ok_left && ok_right && ok_mixed) {
                        return Err(Error::IdentityFailure(format!("bimodule law fails on ({i}, {j}, {k})")));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rational;

    fn swap_dual() -> (StructureAlgebra, SparseMatrix) {
        let d = StructureAlgebra::dual_numbers();
        let v = SparseMatrix::from_int_rows(&[&[1, 0], &[0, -1]]);
        (d, v)
    }

    #[test]
    fn identity_twist_is_regular() {
        let (d, _) = swap_dual();
        let m = TwistedBimodule::new(&d, SparseMatrix::identity(2)).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(&m.left(&SparseVec::unit(i), &SparseVec::unit(j)), d.mul_basis(i, j));
            }
        }
    }

    #[test]
    fn sign_twist_on_dual_numbers() {
        let (d, v) = swap_dual();
        let m = TwistedBimodule::new(&d, v).unwrap();
        let x = SparseVec::unit(1);
        let one = SparseVec::unit(0);
        assert_eq!(m.left(&x, &one), x.scale(&-Rational::ONE));
        assert_eq!(m.right(&one, &x), x);
    }

    #[test]
    fn retwist_composes() {
        let (d, v) = swap_dual();
        let m = TwistedBimodule::new(&d, v.clone()).unwrap();
        let twice = m.retwist(&v).unwrap();
        assert_eq!(twice.twist(), &SparseMatrix::identity(2));
        let direct = TwistedBimodule::new(&d, v.matmul(&v).unwrap()).unwrap();
        assert_eq!(twice, direct);
    }

    #[test]
    fn rejects_non_automorphism() {
        let t3 = StructureAlgebra::truncated_poly(3);
        let v = SparseMatrix::from_int_rows(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        assert!(matches!(TwistedBimodule::new(&t3, v), Err(Error::NotAutomorphism(_))));
    }
}
