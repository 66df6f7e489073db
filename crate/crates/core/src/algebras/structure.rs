use crate::error::{Error, Result};
use crate::exactlin::{Rational, SparseMatrix, SparseVec};
use crate::groups::FiniteGroup;

use super::AlgebraAction;

/// A finite-dimensional associative algebra over ℚ given by structure
/// constants. `table[i * dim + j]` is the product of basis vectors `i` and
/// `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    dim: usize,
    labels: Vec<String>,
    table: Vec<SparseVec>,
    unit: Option<SparseVec>,
    /// Group letter of each basis vector, for crossed products.
    grading: Option<Vec<usize>>,
}

impl StructureAlgebra {
    /// Builds and validates an algebra from quadruples `(i, j, k, c)` meaning
    /// `e_i e_j` has `e_k`-coefficient `c` (repeated quadruples add up).
    pub fn new(
        labels: Vec<String>,
        constants: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
        unit: Option<SparseVec>,
    ) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("zero-dimensional algebra".into()));
        }
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in constants {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidAlgebra(format!("structure constant ({i}, {j}, {k}) out of range")));
            }
            buckets[i * dim + j].push((k, c));
        }
        let table = buckets.into_iter().map(SparseVec::from_pairs).collect();
        Self::from_table(labels, table, unit)
    }

    pub(crate) fn from_table(labels: Vec<String>, table: Vec<SparseVec>, unit: Option<SparseVec>) -> Result<Self> {
        let a = Self { dim: labels.len(), labels, table, unit, grading: None };
        a.check_associative()?;
        if let Some(u) = &a.unit {
            a.check_unit(u)?;
        }
        Ok(a)
    }

    fn check_associative(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.mul_basis(i, j);
                for k in 0..self.dim {
                    let lhs = self.mul_right_basis(ij, k);
                    let rhs = self.mul_left_basis(i, self.mul_basis(j, k));
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!(
                            "not associative on basis ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self, u: &SparseVec) -> Result<()> {
        for i in 0..self.dim {
            let e = SparseVec::unit(i);
            if self.mul(u, &e) != e || self.mul(&e, u) != e {
                return Err(Error::NotUnital(format!("{u:?} is not a two-sided unit on {}", self.labels[i])));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> Option<&SparseVec> {
        self.unit.as_ref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn require_unit(&self) -> Result<&SparseVec> {
        self.unit.as_ref().ok_or_else(|| Error::NotUnital("operation requires a unital algebra".into()))
    }

    pub fn grading(&self) -> Option<&[usize]> {
        self.grading.as_deref()
    }

    pub(crate) fn with_grading(mut self, grading: Vec<usize>) -> Self {
        assert_eq!(grading.len(), self.dim);
        self.grading = Some(grading);
        self
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    fn mul_right_basis(&self, a: &SparseVec, k: usize) -> SparseVec {
        let mut acc = Vec::new();
        for (i, c) in a.entries() {
            for (r, v) in self.mul_basis(*i, k).entries() {
                acc.push((*r, c * v));
            }
        }
        SparseVec::from_pairs(acc)
    }

    fn mul_left_basis(&self, i: usize, b: &SparseVec) -> SparseVec {
        let mut acc = Vec::new();
        for (j, c) in b.entries() {
            for (r, v) in self.mul_basis(i, *j).entries() {
                acc.push((*r, c * v));
            }
        }
        SparseVec::from_pairs(acc)
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc = Vec::new();
        for (i, x) in a.entries() {
            for (j, y) in b.entries() {
                let xy = x * y;
                for (r, v) in self.mul_basis(*i, *j).entries() {
                    acc.push((*r, &xy * v));
                }
            }
        }
        SparseVec::from_pairs(acc)
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_mult_matrix(&self, a: &SparseVec) -> SparseMatrix {
        let cols: Vec<SparseVec> = (0..self.dim).map(|j| self.mul(a, &SparseVec::unit(j))).collect();
        SparseMatrix::from_columns(self.dim, &cols).expect("square")
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_mult_matrix(&self, a: &SparseVec) -> SparseMatrix {
        let cols: Vec<SparseVec> = (0..self.dim).map(|j| self.mul(&SparseVec::unit(j), a)).collect();
        SparseMatrix::from_columns(self.dim, &cols).expect("square")
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.mul_basis(i, j) == self.mul_basis(j, i)))
    }

    /// Quadruples `(i, j, k, c)` of nonzero structure constants in row-major
    /// order.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.mul_basis(i, j).entries() {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    // ---- presets -------------------------------------------------------

    /// The ground field ℚ.
    pub fn field() -> Self {
        Self::truncated_poly(1)
    }

    /// `k[x]/(x²)`.
    pub fn dual_numbers() -> Self {
        Self::truncated_poly(2)
    }

    /// `k[x]/(x^n)` with basis `1, x, …, x^{n-1}`.
    pub fn truncated_poly(n: usize) -> Self {
        assert!(n >= 1);
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        let consts = (0..n).flat_map(|i| (0..n - i).map(move |j| (i, j, i + j, Rational::ONE)));
        Self::new(labels, consts, Some(SparseVec::unit(0))).expect("truncated polynomial algebra")
    }

    /// The group algebra `kG` with basis the group elements.
    pub fn group_algebra(group: &FiniteGroup) -> Self {
        let labels = group.elements().map(|g| format!("g{g}")).collect();
        let consts = group
            .elements()
            .flat_map(|a| group.elements().map(move |b| (a, b, group.mul(a, b), Rational::ONE)));
        Self::new(labels, consts, Some(SparseVec::unit(group.identity())))
            .expect("group algebra")
            .with_grading(group.elements().collect())
    }

    /// `k⟨X⟩` for `X = {0, …, n-1}`: `⟨x⟩⟨y⟩ = ⟨y⟩`. Unital only when `n = 1`.
    pub fn set_algebra(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySet);
        }
        let labels = (0..n).map(|x| format!("<{x}>")).collect();
        let consts = (0..n).flat_map(|x| (0..n).map(move |y| (x, y, y, Rational::ONE)));
        let unit = (n == 1).then(|| SparseVec::unit(0));
        Self::new(labels, consts, unit)
    }

    /// Upper triangular `2×2` matrices with basis `e11, e12, e22`.
    pub fn upper_triangular() -> Self {
        let one = Rational::ONE;
        let consts = [(0, 0, 0), (0, 1, 1), (1, 2, 1), (2, 2, 2)].map(|(i, j, k)| (i, j, k, one.clone()));
        let unit = SparseVec::from_pairs([(0, Rational::ONE), (2, Rational::ONE)]);
        Self::new(vec!["e11".into(), "e12".into(), "e22".into()], consts, Some(unit)).expect("triangular matrices")
    }

    /// The same algebra in the basis `f_j = Σ_i p_ij e_i`. Drops any grading.
    pub fn change_basis(&self, p: &SparseMatrix) -> Result<Self> {
        let d = self.dim;
        if p.rows() != d || p.cols() != d {
            return Err(Error::DimensionMismatch("change of basis has the wrong shape".into()));
        }
        let p_inv = super::twisted::invert(p).map_err(|_| Error::InvalidAlgebra("change of basis is singular".into()))?;
        let cols = p.columns();
        let table = (0..d)
            .flat_map(|a| (0..d).map(move |b| (a, b)))
            .map(|(a, b)| p_inv.mul_vec(&self.mul(&cols[a], &cols[b])))
            .collect();
        let unit = self.unit.as_ref().map(|u| p_inv.mul_vec(u));
        Self::from_table(self.labels.clone(), table, unit)
    }

    /// `A⟨X⟩ = A ⊗ k⟨X⟩` with basis `a_i⟨x⟩` at index `i * |X| + x` and
    /// `(a⟨x⟩)(b⟨y⟩) = (ab)⟨y⟩`. Checks that the kernel of `id ⊗ ε`
    /// annihilates the whole algebra from the left.
    pub fn tensor_with_set(a: &StructureAlgebra, n: usize) -> Result<Self> {
        let u = a.require_unit()?;
        if n == 0 {
            return Err(Error::EmptySet);
        }
        let d = a.dim;
        let labels = (0..d)
            .flat_map(|i| (0..n).map(move |x| (i, x)))
            .map(|(i, x)| format!("{}<{x}>", a.labels[i]))
            .collect();
        let mut consts = Vec::new();
        for i in 0..d {
            for x in 0..n {
                for j in 0..d {
                    for y in 0..n {
                        for (k, c) in a.mul_basis(i, j).entries() {
                            consts.push((i * n + x, j * n + y, k * n + y, c.clone()));
                        }
                    }
                }
            }
        }
        let unit = (n == 1).then(|| u.clone());
        let mut ax = Self::new(labels, consts, unit)?;
        if let Some(gr) = a.grading() {
            ax = ax.with_grading((0..d * n).map(|k| gr[k / n]).collect());
        }
        // I = span{a⟨x⟩ - a⟨0⟩}; I · A⟨X⟩ = 0.
        for i in 0..d {
            for x in 1..n {
                let k = SparseVec::from_pairs([(i * n + x, Rational::ONE), (i * n, -Rational::ONE)]);
                if !ax.left_mult_matrix(&k).is_zero() {
                    return Err(Error::IdentityFailure("augmentation kernel does not annihilate".into()));
                }
            }
        }
        Ok(ax)
    }

    /// `A ⋊ G` with basis `u_g a_i` at index `g * dim(A) + i` and
    /// `(u_g a)(u_h b) = u_{gh} (h⁻¹(a) b)`. Unital with unit `u_e 1_A` when
    /// `A` is unital.
    pub fn crossed_product(a: &StructureAlgebra, act: &AlgebraAction) -> Result<Self> {
        let g = act.group();
        let d = a.dim;
        let labels = g
            .elements()
            .flat_map(|x| (0..d).map(move |i| (x, i)))
            .map(|(x, i)| format!("u:{x}|a:{i}"))
            .collect();
        let mut table = Vec::with_capacity(d * d * g.order() * g.order());
        for x in g.elements() {
            for i in 0..d {
                for y in g.elements() {
                    let hinv_a = act.apply(g.inv(y), &SparseVec::unit(i));
                    let shift = g.mul(x, y) * d;
                    for j in 0..d {
                        let p = a.mul(&hinv_a, &SparseVec::unit(j));
                        table.push(SparseVec::from_pairs(p.into_entries().into_iter().map(|(k, c)| (shift + k, c))));
                    }
                }
            }
        }
        // table is ordered by (x, i, y, j); reorder to (x, i) * dim + (y, j).
        let n = g.order() * d;
        let mut ordered = vec![SparseVec::new(); n * n];
        let mut it = table.into_iter();
        for x in g.elements() {
            for i in 0..d {
                for y in g.elements() {
                    for j in 0..d {
                        ordered[(x * d + i) * n + y * d + j] = it.next().unwrap();
                    }
                }
            }
        }
        let unit = a
            .unit
            .as_ref()
            .map(|u| SparseVec::from_pairs(u.entries().iter().map(|(k, c)| (g.identity() * d + k, c.clone()))));
        let grading = (0..n).map(|k| k / d).collect();
        Ok(Self::from_table(labels, ordered, unit)?.with_grading(grading))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn set_algebra_laws() {
        let k1 = StructureAlgebra::set_algebra(1).unwrap();
        assert!(k1.is_unital());
        assert_eq!(k1.dim(), 1);
        let kx = StructureAlgebra::set_algebra(2).unwrap();
        assert!(!kx.is_unital());
        assert_eq!(kx.mul_basis(0, 1), &SparseVec::unit(1));
        assert_eq!(kx.mul_basis(0, 0), &SparseVec::unit(0));
        let i = SparseVec::from_pairs([(0, q(1)), (1, q(-1))]);
        assert!(kx.mul(&i, &i).is_zero());
        assert!(matches!(StructureAlgebra::set_algebra(0), Err(Error::EmptySet)));
    }

    #[test]
    fn rejects_nonassociative_and_fake_unit() {
        // e0 e0 = e1, everything else zero except e1 e0 = e0: not associative.
        let bad = StructureAlgebra::new(
            vec!["a".into(), "b".into()],
            [(0, 0, 1, q(1)), (1, 0, 0, q(1))],
            None,
        );
        assert!(bad.is_err());
        let fake = StructureAlgebra::new(vec!["a".into()], [(0, 0, 0, q(1))], Some(SparseVec::unit(0).scale(&q(2))));
        assert!(matches!(fake, Err(Error::NotUnital(_))));
    }

    #[test]
    fn tensor_with_set_shapes() {
        let k = StructureAlgebra::field();
        assert_eq!(StructureAlgebra::tensor_with_set(&k, 1).unwrap().structure_constants(), k.structure_constants());
        let d = StructureAlgebra::dual_numbers();
        let dx = StructureAlgebra::tensor_with_set(&d, 3).unwrap();
        assert_eq!(dx.dim(), 6);
        // (x<0>)(1<2>) = x<2>
        assert_eq!(dx.mul_basis(3, 2), &SparseVec::unit(3 + 2));
    }

    #[test]
    fn crossed_products() {
        let z2 = FiniteGroup::cyclic(2);
        let k = StructureAlgebra::field();
        let kz2 = StructureAlgebra::crossed_product(&k, &AlgebraAction::trivial(&k, &z2)).unwrap();
        assert_eq!(kz2.dim(), 2);
        assert!(kz2.is_commutative());
        let d = StructureAlgebra::dual_numbers();
        let act = AlgebraAction::sign(&d, &z2, &[0, 1]).unwrap();
        let c = StructureAlgebra::crossed_product(&d, &act).unwrap();
        assert_eq!(c.dim(), 4);
        // (u_g x)(u_g 1) = u_e (g⁻¹(x) · 1) = -x
        assert_eq!(c.mul_basis(3, 2), &SparseVec::from_pairs([(1, q(-1))]));
        let triv = StructureAlgebra::crossed_product(&d, &AlgebraAction::trivial(&d, &FiniteGroup::trivial())).unwrap();
        assert_eq!(triv.structure_constants(), d.structure_constants());
    }

    #[test]
    fn group_algebra_matches_crossed_product() {
        let s3 = FiniteGroup::symmetric(3);
        let k = StructureAlgebra::field();
        let a = StructureAlgebra::group_algebra(&s3);
        let b = StructureAlgebra::crossed_product(&k, &AlgebraAction::trivial(&k, &s3)).unwrap();
        assert_eq!(a.structure_constants(), b.structure_constants());
    }
}
