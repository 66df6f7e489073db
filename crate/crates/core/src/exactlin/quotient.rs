//! Subspaces and quotient spaces of coordinate spaces.

use std::collections::HashMap;

use super::{echelon, Rational, Rref, SparseMatrix, SparseVec};

/// A subspace given by linearly independent sparse vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspacePresentation {
    ambient_dim: usize,
    basis: Vec<SparseVec>,
}

impl SubspacePresentation {
    /// Extracts an independent spanning set from `vectors`.
    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let e = echelon(vectors);
        Self { ambient_dim, basis: e.rows().to_vec() }
    }

    pub(crate) fn from_independent(ambient_dim: usize, basis: Vec<SparseVec>) -> Self {
        Self { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    /// Basis vectors as the columns of an `ambient_dim x dim` matrix.
    pub fn as_columns(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.ambient_dim, &self.basis).expect("basis within ambient space")
    }
}

#[derive(Clone, Debug)]
enum Reducer {
    Linear(Rref),
    /// Every ambient basis vector is a scalar multiple of one complement
    /// vector, or zero.
    Monomial(Vec<Option<(usize, Rational)>>),
}

/// `V / W` for a coordinate space `V = k^n` and a relation subspace `W`,
/// presented by the coordinates that are not pivots of the reduced echelon
/// form of `W`.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    ambient_dim: usize,
    relation_dim: usize,
    complement: Vec<usize>,
    position: HashMap<usize, usize>,
    reducer: Reducer,
}

impl QuotientPresentation {
    pub fn new(ambient_dim: usize, relations: impl IntoIterator<Item = SparseVec>) -> Self {
        let rref = echelon(relations).into_rref();
        let pivots: std::collections::HashSet<usize> = rref.pivots().iter().copied().collect();
        let complement: Vec<usize> = (0..ambient_dim).filter(|i| !pivots.contains(i)).collect();
        let position = complement.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        Self { ambient_dim, relation_dim: rref.rank(), complement, position, reducer: Reducer::Linear(rref) }
    }

    /// The identity quotient `V / 0`.
    pub fn trivial(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            relation_dim: 0,
            complement: (0..ambient_dim).collect(),
            position: (0..ambient_dim).map(|i| (i, i)).collect(),
            reducer: Reducer::Monomial((0..ambient_dim).map(|i| Some((i, Rational::ONE))).collect()),
        }
    }

    /// Quotient by relations of the form `a * e_i = b * e_j` (or `a * e_i = 0`
    /// when `j` is `None`). Produces exactly the same presentation as
    /// [`QuotientPresentation::new`] on the corresponding relation vectors,
    /// but runs in near-linear time.
    pub fn from_monomial_relations(
        ambient_dim: usize,
        relations: impl IntoIterator<Item = (usize, Rational, Option<(usize, Rational)>)>,
    ) -> Self {
        // Weighted union-find: e_x = weight[x] * e_parent[x].
        let mut parent: Vec<usize> = (0..ambient_dim).collect();
        let mut weight: Vec<Rational> = vec![Rational::ONE; ambient_dim];
        let mut dead: Vec<bool> = vec![false; ambient_dim];

        fn find(parent: &mut [usize], weight: &mut [Rational], x: usize) -> (usize, Rational) {
            let mut path = Vec::new();
            let mut y = x;
            while parent[y] != y {
                path.push(y);
                y = parent[y];
            }
            let root = y;
            // Compress from the top of the path down.
            let mut acc = Rational::ONE;
            for &z in path.iter().rev() {
                acc = &weight[z] * &acc;
                weight[z] = acc.clone();
                parent[z] = root;
            }
            (root, if path.is_empty() { Rational::ONE } else { weight[x].clone() })
        }

        for (i, a, other) in relations {
            match other {
                None => {
                    if !a.is_zero() {
                        let (r, _) = find(&mut parent, &mut weight, i);
                        dead[r] = true;
                    }
                }
                Some((j, b)) => {
                    // a e_i - b e_j = 0 with e_i = wi e_ri, e_j = wj e_rj.
                    let (ri, wi) = find(&mut parent, &mut weight, i);
                    let (rj, wj) = find(&mut parent, &mut weight, j);
                    let ci = &a * &wi;
                    let cj = &b * &wj;
                    match (ci.is_zero(), cj.is_zero()) {
                        (true, true) => continue,
                        (false, true) => {
                            dead[ri] = true;
                            continue;
                        }
                        (true, false) => {
                            dead[rj] = true;
                            continue;
                        }
                        _ => {}
                    }
                    if ri == rj {
                        if ci != cj {
                            dead[ri] = true;
                        }
                        continue;
                    }
                    // ci e_ri = cj e_rj. Keep the larger index as root so the
                    // surviving coordinate matches the lowest-pivot rule.
                    let (lo, hi, w) = if ri < rj { (ri, rj, &cj / &ci) } else { (rj, ri, &ci / &cj) };
                    parent[lo] = hi;
                    weight[lo] = w;
                    if dead[lo] {
                        dead[hi] = true;
                    }
                }
            }
        }

        let mut roots: Vec<(usize, Rational)> = Vec::with_capacity(ambient_dim);
        for x in 0..ambient_dim {
            roots.push(find(&mut parent, &mut weight, x));
        }
        let complement: Vec<usize> = (0..ambient_dim).filter(|&x| roots[x].0 == x && !dead[x]).collect();
        let position: HashMap<usize, usize> = complement.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let images = roots
            .into_iter()
            .map(|(r, w)| if dead[r] { None } else { Some((position[&r], w)) })
            .collect();
        Self {
            ambient_dim,
            relation_dim: ambient_dim - complement.len(),
            complement,
            position,
            reducer: Reducer::Monomial(images),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn relation_dim(&self) -> usize {
        self.relation_dim
    }

    /// Ambient coordinates that map bijectively onto the quotient.
    pub fn canonical_complement(&self) -> &[usize] {
        &self.complement
    }

    /// A basis of the relation subspace.
    pub fn relation_subspace(&self) -> SubspacePresentation {
        match &self.reducer {
            Reducer::Linear(r) => SubspacePresentation::from_independent(self.ambient_dim, r.rows().to_vec()),
            Reducer::Monomial(images) => {
                let basis = images
                    .iter()
                    .enumerate()
                    .filter(|(x, _)| !self.position.contains_key(x))
                    .map(|(x, img)| match img {
                        None => SparseVec::unit(x),
                        Some((q, w)) => SparseVec::from_pairs([
                            (x, Rational::ONE),
                            (self.complement[*q], -w.clone()),
                        ]),
                    })
                    .collect();
                SubspacePresentation::from_independent(self.ambient_dim, basis)
            }
        }
    }

    /// Coordinates of the class of `v` in the quotient.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        match &self.reducer {
            Reducer::Linear(r) => {
                let red = r.reduce(v);
                SparseVec::from_pairs(red.into_entries().into_iter().map(|(i, c)| (self.position[&i], c)))
            }
            Reducer::Monomial(images) => SparseVec::from_pairs(
                v.entries()
                    .iter()
                    .filter_map(|(i, c)| images[*i].as_ref().map(|(q, w)| (*q, c * w))),
            ),
        }
    }

    /// Image of the ambient basis vector `e_i`.
    pub fn project_basis(&self, i: usize) -> SparseVec {
        match &self.reducer {
            Reducer::Monomial(images) => match &images[i] {
                Some((q, w)) => SparseVec::from_sorted(vec![(*q, w.clone())]),
                None => SparseVec::new(),
            },
            Reducer::Linear(_) => self.project(&SparseVec::unit(i)),
        }
    }

    /// The canonical representative of a quotient vector.
    pub fn lift(&self, q: &SparseVec) -> SparseVec {
        SparseVec::from_sorted(q.entries().iter().map(|(k, c)| (self.complement[*k], c.clone())).collect())
    }

    /// Ambient index representing quotient basis vector `k`.
    pub fn lift_basis(&self, k: usize) -> usize {
        self.complement[k]
    }

    /// The `dim x ambient_dim` projection matrix.
    pub fn projection_matrix(&self) -> SparseMatrix {
        let cols: Vec<SparseVec> = (0..self.ambient_dim).map(|i| self.project_basis(i)).collect();
        SparseMatrix::from_columns(self.dim(), &cols).expect("projection within bounds")
    }

    /// The `ambient_dim x dim` lift matrix.
    pub fn lift_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_triplets(
            self.ambient_dim,
            self.dim(),
            self.complement.iter().enumerate().map(|(k, &i)| (i, k, Rational::ONE)),
        )
        .expect("lift within bounds")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn quotient_examples() {
        let p = QuotientPresentation::new(3, [SparseVec::from_pairs([(0, q(1)), (1, q(-1))])]);
        assert_eq!(p.dim(), 2);
        assert_eq!(QuotientPresentation::new(2, []).dim(), 2);
        let p = QuotientPresentation::new(2, [SparseVec::unit(0), SparseVec::unit(1)]);
        assert_eq!(p.dim(), 0);
    }

    #[test]
    fn lowest_pivot_keeps_highest_coordinate() {
        let p = QuotientPresentation::new(3, [SparseVec::from_pairs([(0, q(1)), (2, q(-2))])]);
        assert_eq!(p.canonical_complement(), &[1, 2]);
        // e0 = 2 e2 in the quotient.
        assert_eq!(p.project_basis(0), SparseVec::from_pairs([(1, q(2))]));
    }

    fn monomial_case() -> impl Strategy<Value = (usize, Vec<(usize, i64, Option<(usize, i64)>)>)> {
        (1usize..8).prop_flat_map(|n| {
            let rel = (0..n, prop_oneof![Just(1i64), Just(-1), Just(2)], proptest::option::weighted(0.85, (0..n, prop_oneof![Just(1i64), Just(-1), Just(3)])));
            (Just(n), proptest::collection::vec(rel, 0..8))
        })
    }

    proptest! {
        #[test]
        fn monomial_matches_generic((n, rels) in monomial_case()) {
            let vecs: Vec<SparseVec> = rels.iter().map(|(i, a, o)| match o {
                None => SparseVec::from_pairs([(*i, q(*a))]),
                Some((j, b)) => SparseVec::from_pairs([(*i, q(*a)), (*j, q(-*b))]),
            }).collect();
            let generic = QuotientPresentation::new(n, vecs);
            let fast = QuotientPresentation::from_monomial_relations(
                n,
                rels.iter().map(|(i, a, o)| (*i, q(*a), o.map(|(j, b)| (j, q(b))))),
            );
            prop_assert_eq!(generic.canonical_complement(), fast.canonical_complement());
            prop_assert_eq!(generic.projection_matrix(), fast.projection_matrix());
        }

        #[test]
        fn project_after_lift_is_identity(rows in proptest::collection::vec(proptest::collection::vec(-2i64..3, 5), 0..4)) {
            let vecs: Vec<SparseVec> = rows.iter().map(|r| SparseVec::from_dense(&r.iter().map(|&x| q(x)).collect::<Vec<_>>())).collect();
            let p = QuotientPresentation::new(5, vecs.clone());
            prop_assert_eq!(p.dim() + p.relation_dim(), 5);
            for k in 0..p.dim() {
                prop_assert_eq!(p.project(&p.lift(&SparseVec::unit(k))), SparseVec::unit(k));
            }
            for v in &vecs {
                prop_assert!(p.project(v).is_zero());
            }
        }
    }
}
