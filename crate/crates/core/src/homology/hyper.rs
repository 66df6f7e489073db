use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conventions::sign;
use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, rank, rank_pair, QuotientPresentation, Rational, SparseMatrix, SparseVec};
use crate::forms::MixedComplex;
use crate::groups::{coinvariant_boundary_entries, FiniteGroup, GroupModule};

use super::cyclic::{periodic_from_total, CyclicTotal, PeriodicTotal};
use super::PeriodicProfile;

/// A mixed complex with a degreewise group action commuting with `b` and `B`.
#[derive(Clone, Debug)]
pub struct EquivariantComplex {
    group: FiniteGroup,
    complex: MixedComplex,
    modules: Vec<GroupModule>,
}

impl EquivariantComplex {
    pub fn new(group: &FiniteGroup, complex: MixedComplex, modules: Vec<GroupModule>) -> Result<Self> {
        if modules.len() != complex.top() + 1 || modules.iter().enumerate().any(|(n, m)| m.dim() != complex.dim(n)) {
            return Err(Error::DimensionMismatch("one module per degree of matching dimension expected".into()));
        }
        for g in group.elements() {
            let maps: Vec<SparseMatrix> = modules.iter().map(|m| m.action(g).clone()).collect();
            if !complex.is_chain_map_to(&complex, &maps)? {
                return Err(Error::InvalidAction(format!("element {g} does not commute with b and B")));
            }
        }
        Ok(Self { group: group.clone(), complex, modules })
    }

    /// The trivial action on every degree.
    pub fn trivial(group: &FiniteGroup, complex: MixedComplex) -> Self {
        let modules = complex.dims().iter().map(|&d| GroupModule::trivial(group, d)).collect();
        Self { group: group.clone(), complex, modules }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn complex(&self) -> &MixedComplex {
        &self.complex
    }

    pub fn module(&self, n: usize) -> &GroupModule {
        &self.modules[n]
    }

    /// `C_n` modulo the span of `g x - x`.
    pub fn coinvariant_quotients(&self) -> Vec<QuotientPresentation> {
        self.modules.par_iter().map(|m| coinvariant_quotient(&self.group, m)).collect()
    }

    /// The mixed complex of coinvariants `(C)_G`.
    pub fn coinvariants(&self) -> Result<MixedComplex> {
        self.complex.induced_on_quotients(&self.coinvariant_quotients())
    }

    /// Basis (as columns) of the invariant functionals on `C_n`.
    fn invariant_functionals(&self, n: usize) -> SparseMatrix {
        let m = &self.modules[n];
        let d = m.dim();
        let mut rows = Vec::new();
        for g in self.group.elements().filter(|&g| g != self.group.identity()) {
            let t = m.action(g).transpose().sub(&SparseMatrix::identity(d)).expect("square");
            rows.extend(t.row_vectors().iter().cloned());
        }
        let stacked = SparseMatrix::from_rows(d, rows).expect("width");
        kernel_basis(&stacked).as_columns()
    }

    /// Block-diagonal action on `Tot_q = C_q ⊕ C_{q-2} ⊕ …`.
    fn tot_action(&self, q: usize, g: usize) -> SparseMatrix {
        let lay = CyclicTotal::layout(&self.complex, q);
        let blocks: Vec<(usize, usize, &SparseMatrix)> =
            lay.iter().map(|&(deg, off)| (off, off, self.modules[deg].action(g))).collect();
        let d = CyclicTotal::tot_dim(&self.complex, q);
        SparseMatrix::assemble(d, d, &blocks).expect("layout")
    }
}

fn is_monomial(m: &SparseMatrix) -> bool {
    m.columns().iter().all(|c| c.nnz() == 1)
}

fn coinvariant_quotient(group: &FiniteGroup, m: &GroupModule) -> QuotientPresentation {
    let d = m.dim();
    let others = || group.elements().filter(move |&g| g != group.identity());
    if others().all(|g| is_monomial(m.action(g))) {
        // e_i ≡ g e_i = c e_j
        let rels = others()
            .flat_map(|g| m.action(g).columns().into_iter().enumerate().map(|(i, c)| (i, c.entries()[0].clone())))
            .map(|(i, (j, c))| (i, Rational::ONE, Some((j, c))));
        QuotientPresentation::from_monomial_relations(d, rels.collect::<Vec<_>>())
    } else {
        let rels = others().flat_map(|g| {
            let t = m.action(g).sub(&SparseMatrix::identity(d)).expect("square");
            t.columns()
        });
        QuotientPresentation::new(d, rels.collect::<Vec<_>>())
    }
}

/// Total complex of `(P ⊗ Tot(C))_G` with the bar resolution truncated at
/// `bar_top`: `T_n = ⊕_{p+q=n} k[G^p] ⊗ Tot_q`, `D = ∂ ⊗ 1 + (-1)^p 1 ⊗ D_Tot`.
struct HyperTotal<'a> {
    ec: &'a EquivariantComplex,
    bar_top: usize,
    top: usize,
    tot_actions: Mutex<HashMap<usize, Vec<SparseMatrix>>>,
}

impl<'a> HyperTotal<'a> {
    fn new(ec: &'a EquivariantComplex, bar_top: usize) -> Self {
        Self { ec, bar_top, top: ec.complex.top().min(bar_top), tot_actions: Mutex::new(HashMap::new()) }
    }

    fn order_pow(&self, p: usize) -> usize {
        self.ec.group.order().pow(p as u32)
    }

    fn tot_dim(&self, q: usize) -> usize {
        CyclicTotal::tot_dim(&self.ec.complex, q)
    }

    /// `(p, offset)` of each summand of `T_n`.
    fn layout(&self, n: usize) -> Vec<(usize, usize)> {
        let mut off = 0;
        (0..=n.min(self.bar_top))
            .map(|p| {
                let here = off;
                off += self.order_pow(p) * self.tot_dim(n - p);
                (p, here)
            })
            .collect()
    }

    fn actions(&self, q: usize) -> Vec<SparseMatrix> {
        if let Some(a) = self.tot_actions.lock().unwrap().get(&q) {
            return a.clone();
        }
        let a: Vec<SparseMatrix> = self.ec.group.elements().map(|g| self.ec.tot_action(q, g)).collect();
        self.tot_actions.lock().unwrap().insert(q, a.clone());
        a
    }
}

/// Triplets of `I_copies ⊗ m` shifted by `(r0, c0)`.
fn kron_identity(copies: usize, m: &SparseMatrix, r0: usize, c0: usize, scale: &Rational, out: &mut Vec<(usize, usize, Rational)>) {
    for t in 0..copies {
        for (r, c, v) in m.iter() {
            out.push((r0 + t * m.rows() + r, c0 + t * m.cols() + c, v * scale));
        }
    }
}

impl PeriodicTotal for HyperTotal<'_> {
    fn top(&self) -> usize {
        self.top
    }

    fn dim(&self, n: usize) -> usize {
        (0..=n.min(self.bar_top)).map(|p| self.order_pow(p) * self.tot_dim(n - p)).sum()
    }

    fn boundary(&self, n: usize) -> Result<SparseMatrix> {
        let src = self.layout(n);
        let dst = self.layout(n - 1);
        let mut trip = Vec::new();
        for &(p, off) in &src {
            let q = n - p;
            if p >= 1 {
                let acts = self.actions(q);
                let (_, row_off) = dst[p - 1];
                for (r, c, v) in coinvariant_boundary_entries(&self.ec.group, p, self.tot_dim(q), |g| &acts[g]) {
                    trip.push((row_off + r, off + c, v));
                }
            }
            if q >= 1 {
                let d = CyclicTotal::tot_boundary(&self.ec.complex, q)?;
                let (_, row_off) = dst[p];
                kron_identity(self.order_pow(p), &d, row_off, off, &Rational::from_int(sign(p)), &mut trip);
            }
        }
        SparseMatrix::from_triplets(self.dim(n - 1), self.dim(n), trip)
    }

    fn s_power(&self, m: usize, k: usize) -> Result<SparseMatrix> {
        let src = self.layout(m);
        let dst = self.layout(m - 2 * k);
        let mut trip = Vec::new();
        for &(p, row_off) in &dst {
            let (_, col_off) = src[p];
            let s = CyclicTotal::tot_s(&self.ec.complex, m - p, k)?;
            kron_identity(self.order_pow(p), &s, row_off, col_off, &Rational::ONE, &mut trip);
        }
        SparseMatrix::from_triplets(self.dim(m - 2 * k), self.dim(m), trip)
    }
}

/// Periodic hyperhomology (or hypercohomology) data from both pipelines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperProfile {
    /// From the coinvariant (or invariant) complex; this is the reported
    /// value.
    pub shortcut: PeriodicProfile,
    /// From the truncated bar resolution; only degrees below `bar_top` are
    /// exact, so its windows may be shorter.
    pub bar: PeriodicProfile,
    pub bar_top: usize,
}

impl HyperProfile {
    pub fn dims(&self) -> Option<(usize, usize)> {
        self.shortcut.dims()
    }
}

/// Longest windows whose degrees stay at or below `limit`.
fn windows_within(limit: usize) -> Result<[usize; 2]> {
    let w = [limit / 2, limit.saturating_sub(1) / 2];
    if w.contains(&0) {
        return Err(Error::Truncation(format!("degree limit {limit} leaves no periodicity step")));
    }
    Ok(w)
}

fn compare(shortcut: &PeriodicProfile, bar: &PeriodicProfile) -> Result<()> {
    let prefix = |a: &[usize], b: &[usize]| a.iter().zip(b).all(|(x, y)| x == y);
    if !prefix(&bar.hc, &shortcut.hc)
        || !prefix(&bar.even_s_ranks, &shortcut.even_s_ranks)
        || !prefix(&bar.odd_s_ranks, &shortcut.odd_s_ranks)
    {
        return Err(Error::IdentityFailure(format!(
            "bar pipeline {:?}/{:?}/{:?} disagrees with coinvariant shortcut {:?}/{:?}/{:?}",
            bar.hc, bar.even_s_ranks, bar.odd_s_ranks, shortcut.hc, shortcut.even_s_ranks, shortcut.odd_s_ranks
        )));
    }
    Ok(())
}

/// Periodic hyperhomology of the group with coefficients in the complex.
/// Reports the coinvariant shortcut and checks it against the bar pipeline
/// wherever the truncated bar resolution is exact.
pub fn hyperhomology(ec: &EquivariantComplex, window: usize, bar_top: usize) -> Result<HyperProfile> {
    let coinv = ec.coinvariants()?;
    let shortcut = periodic_from_total(&CyclicTotal { c: &coinv }, [window, window])?;
    let total = HyperTotal::new(ec, bar_top);
    let bar = periodic_from_total(&total, windows_within(ec.complex.top().min(bar_top.saturating_sub(1)))?)?;
    compare(&shortcut, &bar)?;
    Ok(HyperProfile { shortcut, bar, bar_top })
}

/// A cochain complex `X^0 → X^1 → …` with `S: X^n → X^{n+2}`. Matrices may
/// use any injective coordinates on their targets; columns are in the
/// intrinsic coordinates of the source.
trait PeriodicCototal: Sync {
    fn top(&self) -> usize;
    fn dim(&self, n: usize) -> usize;
    /// `δ: X^n → X^{n+1}` for `n + 1 ≤ top`.
    fn coboundary(&self, n: usize) -> Result<SparseMatrix>;
    /// `S^k: X^n → X^{n+2k}`, same target coordinates as `coboundary(n+2k-1)`.
    fn s_power(&self, n: usize, k: usize) -> Result<SparseMatrix>;
}

/// The rank of `S^k` on cohomology is `dim(S^k(Z^n) + B^m) - dim B^m`;
/// both spans are computed in one elimination.
fn periodic_from_cototal<T: PeriodicCototal>(x: &T, windows: [usize; 2]) -> Result<PeriodicProfile> {
    let top = x.top();
    let mut known: Vec<Option<usize>> = vec![None; top];
    let mut s_ranks = [Vec::new(), Vec::new()];
    for (parity, out) in s_ranks.iter_mut().enumerate() {
        let w = windows[parity];
        if w == 0 || parity + 2 * w > top {
            return Err(Error::Truncation(format!("window {w} in parity {parity} exceeds truncation {top}")));
        }
        let cocycles = kernel_basis(&x.coboundary(parity)?);
        for k in 1..=w {
            let m = parity + 2 * k;
            let d_m = x.coboundary(m - 1)?;
            let s = x.s_power(parity, k)?;
            let extra: Vec<SparseVec> = cocycles.basis().iter().map(|z| s.mul_vec(z)).collect();
            let (base, all) = rank_pair(d_m.rows(), &d_m.columns(), &extra);
            known[m - 1] = Some(base);
            out.push(all - base);
        }
    }
    let ranks: Vec<usize> = (0..top)
        .into_par_iter()
        .map(|n| match known[n] {
            Some(r) => Ok(r),
            None => x.coboundary(n).map(|m| rank(&m)),
        })
        .collect::<Result<_>>()?;
    // rank of δ^{n-1} (into degree n), zero for n = 0
    let r_in = |n: usize| if n == 0 { 0 } else { ranks[n - 1] };
    let hc: Vec<usize> = (0..top).map(|n| x.dim(n) - ranks[n] - r_in(n)).collect();
    let settled = |r: &Vec<usize>| r.len() >= 2 && r.windows(2).all(|w| w[0] == w[1]);
    let stabilized = settled(&s_ranks[0]) && settled(&s_ranks[1]);
    let [even_s_ranks, odd_s_ranks] = s_ranks;
    Ok(PeriodicProfile {
        even: *even_s_ranks.last().unwrap(),
        odd: *odd_s_ranks.last().unwrap(),
        stabilized,
        even_s_ranks,
        odd_s_ranks,
        hc,
        truncation: top,
        windows,
    })
}

/// Periodic cohomology of a mixed complex: the same stabilization rule
/// applied to the dual total complex.
pub fn periodic_cohomology_dims(c: &MixedComplex, windows: [usize; 2]) -> Result<PeriodicProfile> {
    periodic_from_cototal(&Transposed(&CyclicTotal { c }), windows)
}

/// Dual of a chain total complex by transposition.
struct Transposed<'a, T: PeriodicTotal>(&'a T);

impl<T: PeriodicTotal> PeriodicCototal for Transposed<'_, T> {
    fn top(&self) -> usize {
        self.0.top()
    }

    fn dim(&self, n: usize) -> usize {
        self.0.dim(n)
    }

    fn coboundary(&self, n: usize) -> Result<SparseMatrix> {
        Ok(self.0.boundary(n + 1)?.transpose())
    }

    fn s_power(&self, n: usize, k: usize) -> Result<SparseMatrix> {
        Ok(self.0.s_power(n + 2 * k, k)?.transpose())
    }
}

/// Invariant cochains `Hom(Tot(C), k)^G` in the coordinates of a basis of
/// invariant functionals per form degree.
struct InvariantCototal<'a> {
    ec: &'a EquivariantComplex,
    functionals: Vec<SparseMatrix>,
}

impl InvariantCototal<'_> {
    /// Block-diagonal basis of invariants of `Tot_n^*`.
    fn basis(&self, n: usize) -> Result<SparseMatrix> {
        let c = &self.ec.complex;
        let lay = CyclicTotal::layout(c, n);
        let mut blocks = Vec::new();
        let mut col = 0;
        for &(q, off) in &lay {
            blocks.push((off, col, &self.functionals[q]));
            col += self.functionals[q].cols();
        }
        SparseMatrix::assemble(CyclicTotal::tot_dim(c, n), col, &blocks)
    }
}

impl PeriodicCototal for InvariantCototal<'_> {
    fn top(&self) -> usize {
        self.ec.complex.top()
    }

    fn dim(&self, n: usize) -> usize {
        CyclicTotal::layout(&self.ec.complex, n).iter().map(|&(q, _)| self.functionals[q].cols()).sum()
    }

    fn coboundary(&self, n: usize) -> Result<SparseMatrix> {
        CyclicTotal::tot_boundary(&self.ec.complex, n + 1)?.transpose().matmul(&self.basis(n)?)
    }

    fn s_power(&self, n: usize, k: usize) -> Result<SparseMatrix> {
        CyclicTotal::tot_s(&self.ec.complex, n + 2 * k, k)?.transpose().matmul(&self.basis(n)?)
    }
}

/// Periodic hypercohomology: invariant cochains checked against the
/// transposed bar pipeline.
pub fn hypercohomology(ec: &EquivariantComplex, window: usize, bar_top: usize) -> Result<HyperProfile> {
    let functionals = (0..=ec.complex.top()).into_par_iter().map(|q| ec.invariant_functionals(q)).collect();
    let shortcut = periodic_from_cototal(&InvariantCototal { ec, functionals }, [window, window])?;
    let total = HyperTotal::new(ec, bar_top);
    let bar = periodic_from_cototal(&Transposed(&total), windows_within(ec.complex.top().min(bar_top.saturating_sub(1)))?)?;
    compare(&shortcut, &bar)?;
    Ok(HyperProfile { shortcut, bar, bar_top })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{AlgebraAction, StructureAlgebra};
    use crate::forms::{build_forms, group_action_on_forms};
    use crate::homology::periodic_dims;

    #[test]
    fn cohomology_of_forms_matches_homology() {
        for a in [StructureAlgebra::field(), StructureAlgebra::dual_numbers()] {
            let fc = build_forms(&a, 5).unwrap();
            let h = periodic_dims(fc.complex(), 2).unwrap();
            let c = periodic_cohomology_dims(fc.complex(), [2, 2]).unwrap();
            assert_eq!(h.hc, c.hc);
            assert_eq!(c.dims(), Some((1, 0)));
            assert_eq!((h.even_s_ranks, h.odd_s_ranks), (c.even_s_ranks, c.odd_s_ranks));
        }
    }

    #[test]
    fn trivial_group_is_plain_homology() {
        let fc = build_forms(&StructureAlgebra::dual_numbers(), 5).unwrap();
        let ec = EquivariantComplex::trivial(&FiniteGroup::trivial(), fc.complex().clone());
        let plain = periodic_dims(fc.complex(), 2).unwrap();
        let h = hyperhomology(&ec, 2, 4).unwrap();
        assert_eq!(h.shortcut, plain);
        let c = hypercohomology(&ec, 2, 4).unwrap();
        assert_eq!(c.shortcut.hc, plain.hc);
        assert_eq!(c.dims(), plain.dims());
    }

    #[test]
    fn trivial_action_on_ground_field() {
        let fc = build_forms(&StructureAlgebra::field(), 5).unwrap();
        let ec = EquivariantComplex::trivial(&FiniteGroup::cyclic(2), fc.complex().clone());
        assert_eq!(hyperhomology(&ec, 2, 4).unwrap().dims(), Some((1, 0)));
        assert_eq!(hypercohomology(&ec, 2, 4).unwrap().dims(), Some((1, 0)));
    }

    #[test]
    fn free_action_both_pipelines() {
        let g = FiniteGroup::cyclic(2);
        let kx = StructureAlgebra::set_algebra(2).unwrap();
        let fc = build_forms(&kx, 4).unwrap();
        let act = AlgebraAction::permutation(&kx, &g, |h, x| g.mul(h, x)).unwrap();
        let mods = group_action_on_forms(&fc, &act).unwrap();
        let ec = EquivariantComplex::new(&g, fc.complex().clone(), mods).unwrap();
        let total = HyperTotal::new(&ec, 3);
        for n in 2..=3 {
            assert!(total.boundary(n - 1).unwrap().matmul(&total.boundary(n).unwrap()).unwrap().is_zero());
        }
        let h = hyperhomology(&ec, 1, 4).unwrap();
        let c = hypercohomology(&ec, 1, 4).unwrap();
        assert_eq!(h.shortcut.hc, c.shortcut.hc);
    }
}
