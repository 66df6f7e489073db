//! Fraction-free sparse elimination.
//!
//! Pivots are always chosen at the lowest nonzero coordinate of the vector
//! being reduced, which makes every derived object (kernel bases, quotient
//! complements) a deterministic function of the input order.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use rayon::prelude::*;

use super::{Rational, SparseMatrix, SparseVec};

/// Row-echelon basis of a subspace, built incrementally.
///
/// Every stored row has a distinct leading coordinate (its pivot). Rows are
/// kept primitive (integral with unit content) whenever the inputs are
/// integral.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<SparseVec>,
    pivot_of: HashMap<usize, usize>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.leading().unwrap().0)
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of.contains_key(&col)
    }

    /// One fraction-free elimination step: clears `v[col]` against the row
    /// whose pivot is `col`.
    fn eliminate(v: &SparseVec, vc: &Rational, row: &SparseVec) -> SparseVec {
        let pc = &row.leading().unwrap().1;
        if pc.is_integer() && vc.is_integer() {
            let g = pc.int_gcd(vc);
            let a = pc.int_div_exact(&g);
            let b = -vc.int_div_exact(&g);
            v.lin_comb(&a, row, &b)
        } else {
            v.lin_comb(&Rational::ONE, row, &-(vc / pc))
        }
    }

    /// Reduces `v` until its leading coordinate is not a pivot. Returns the
    /// reduced vector (possibly zero).
    fn reduce_leading(&self, mut v: SparseVec) -> SparseVec {
        while let Some((col, c)) = v.leading().cloned() {
            match self.pivot_of.get(&col) {
                Some(&k) => v = Self::eliminate(&v, &c, &self.rows[k]),
                None => break,
            }
        }
        v
    }

    /// Adds `v` to the span. Returns `true` if the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce_leading(v);
        if v.is_zero() {
            return false;
        }
        v.make_primitive();
        let col = v.leading().unwrap().0;
        self.pivot_of.insert(col, self.rows.len());
        self.rows.push(v);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_fully(v).is_zero()
    }

    /// Removes every pivot coordinate from `v` using rational elimination.
    /// The result is supported on non-pivot coordinates only.
    pub fn reduce_fully(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut cursor = 0usize;
        loop {
            let next = v.entries().iter().find(|(i, _)| *i >= cursor && self.pivot_of.contains_key(i)).cloned();
            let Some((col, c)) = next else { break };
            let row = &self.rows[self.pivot_of[&col]];
            let pc = &row.leading().unwrap().1;
            v = v.lin_comb(&Rational::ONE, row, &-(&c / pc));
            cursor = col + 1;
        }
        v
    }

    /// Reduced row-echelon form: rows sorted by pivot, pivots equal to one,
    /// and every pivot column cleared in all other rows.
    pub fn into_rref(self) -> Rref {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| self.rows[k].leading().unwrap().0);
        let mut rows: Vec<SparseVec> = order.into_iter().map(|k| self.rows[k].clone()).collect();
        let pivots: Vec<usize> = rows.iter().map(|r| r.leading().unwrap().0).collect();
        let pivot_pos: HashMap<usize, usize> = pivots.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        // Back substitution from the last pivot upwards.
        for k in (0..rows.len()).rev() {
            let lead = rows[k].leading().unwrap().1.clone();
            if !lead.is_one() {
                rows[k] = rows[k].scale(&lead.recip());
            }
            for j in 0..k {
                let c = rows[j].get(pivots[k]);
                if !c.is_zero() {
                    rows[j] = rows[j].lin_comb(&Rational::ONE, &rows[k], &-c);
                }
            }
        }
        Rref { rows, pivots, pivot_pos }
    }
}

/// Reduced row-echelon form of a subspace.
#[derive(Clone, Debug)]
pub struct Rref {
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_pos: HashMap<usize, usize>,
}

impl Rref {
    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_pos.contains_key(&col)
    }

    /// Subtracts the pivot rows so that `v` has no pivot coordinates left.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, Rational)> =
            v.entries().iter().filter(|(i, _)| self.is_pivot(*i)).cloned().collect();
        if hits.is_empty() {
            return v.clone();
        }
        // Rows are fully reduced, so subtracting one row never re-creates
        // another pivot coordinate.
        let mut acc: HashMap<usize, Rational> = HashMap::new();
        for (i, c) in v.entries() {
            if !self.is_pivot(*i) {
                acc.insert(*i, c.clone());
            }
        }
        for (p, c) in hits {
            for (i, x) in self.rows[self.pivot_pos[&p]].entries().iter().skip(1) {
                let e = acc.entry(*i).or_insert(Rational::ZERO);
                *e -= &(&c * x);
            }
        }
        SparseVec::from_pairs(acc)
    }
}

/// Splits a family of vectors into groups with pairwise disjoint supports
/// (connected components of the vector/coordinate incidence graph).
fn components(dim: usize, vectors: &[SparseVec]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..dim).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for v in vectors {
        let mut it = v.entries().iter();
        if let Some((first, _)) = it.next() {
            let a = find(&mut parent, *first);
            for (i, _) in it {
                let b = find(&mut parent, *i);
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo;
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for (k, v) in vectors.iter().enumerate() {
        if let Some((first, _)) = v.leading() {
            let r = find(&mut parent, *first);
            groups.entry(r).or_default().push(k);
        }
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_by_key(|g| g[0]);
    out
}

/// Removes pivots that cost no arithmetic: a coordinate carried by a single
/// vector, or a vector with a single live coordinate. Either one raises the
/// rank by one and can be deleted with its coordinate. Only the first
/// `n_base` vectors may serve as such pivots; the rest are carried along so
/// that the rank of the base and of the whole family can both be read off.
/// Returns the rank found, the surviving coordinate count, and the surviving
/// vectors (tagged as extra or not) restricted to surviving coordinates and
/// relabeled so that sparse coordinates come first.
fn peel(dim: usize, vectors: &[SparseVec], n_base: usize) -> (usize, usize, Vec<(bool, SparseVec)>) {
    let mut holders: Vec<Vec<u32>> = vec![Vec::new(); dim];
    for (k, v) in vectors.iter().enumerate() {
        for (i, _) in v.entries() {
            holders[*i].push(k as u32);
        }
    }
    let mut vcount: Vec<usize> = vectors.iter().map(SparseVec::nnz).collect();
    let mut ccount: Vec<usize> = holders.iter().map(Vec::len).collect();
    let mut vlive: Vec<bool> = vcount.iter().map(|&c| c > 0).collect();
    let mut clive: Vec<bool> = ccount.iter().map(|&c| c > 0).collect();
    let mut cols: Vec<usize> = (0..dim).filter(|&j| ccount[j] == 1).collect();
    let mut vecs: Vec<usize> = (0..n_base).filter(|&k| vcount[k] == 1).collect();
    let mut found = 0;
    loop {
        if let Some(j) = cols.pop() {
            if !clive[j] || ccount[j] != 1 {
                continue;
            }
            let k = holders[j].iter().map(|&k| k as usize).find(|&k| vlive[k]).unwrap();
            if k >= n_base {
                continue;
            }
            found += 1;
            vlive[k] = false;
            clive[j] = false;
            for (i, _) in vectors[k].entries() {
                if clive[*i] {
                    ccount[*i] -= 1;
                    match ccount[*i] {
                        0 => clive[*i] = false,
                        1 => cols.push(*i),
                        _ => {}
                    }
                }
            }
        } else if let Some(k) = vecs.pop() {
            if !vlive[k] || vcount[k] != 1 {
                continue;
            }
            let j = vectors[k].entries().iter().map(|(i, _)| *i).find(|&i| clive[i]).unwrap();
            found += 1;
            vlive[k] = false;
            clive[j] = false;
            for &k2 in &holders[j] {
                let k2 = k2 as usize;
                if vlive[k2] {
                    vcount[k2] -= 1;
                    match vcount[k2] {
                        0 => vlive[k2] = false,
                        1 if k2 < n_base => vecs.push(k2),
                        _ => {}
                    }
                }
            }
        } else {
            break;
        }
    }
    let mut order: Vec<usize> = (0..dim).filter(|&j| clive[j]).collect();
    order.sort_by_key(|&j| (ccount[j], j));
    let mut relabel = vec![usize::MAX; dim];
    for (new, &j) in order.iter().enumerate() {
        relabel[j] = new;
    }
    let mut rest: Vec<(bool, SparseVec)> = (0..vectors.len())
        .filter(|&k| vlive[k])
        .map(|k| {
            let v = SparseVec::from_pairs(
                vectors[k].entries().iter().filter(|(i, _)| clive[*i]).map(|(i, c)| (relabel[*i], c.clone())),
            );
            (k >= n_base, v)
        })
        .collect();
    rest.sort_by_key(|(extra, v)| (*extra, v.nnz()));
    (found, order.len(), rest)
}

/// Scatter/gather elimination for rank only. Pivot rows are stored with a
/// unit leading entry; each incoming vector is reduced in a dense
/// accumulator, visiting live coordinates in increasing order.
struct RankEliminator {
    acc: Vec<Rational>,
    live: Vec<bool>,
    /// `pivot_row[col]` is an index into `rows`, or `u32::MAX`.
    pivot_row: Vec<u32>,
    rows: Vec<Vec<(u32, Rational)>>,
}

impl RankEliminator {
    fn new(dim: usize) -> Self {
        Self { acc: vec![Rational::ZERO; dim], live: vec![false; dim], pivot_row: vec![u32::MAX; dim], rows: Vec::new() }
    }

    fn insert(&mut self, v: &SparseVec) {
        let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::with_capacity(v.nnz() * 2);
        for (i, c) in v.entries() {
            self.acc[*i] = c.clone();
            self.live[*i] = true;
            heap.push(Reverse(*i as u32));
        }
        while let Some(Reverse(i)) = heap.pop() {
            let i = i as usize;
            if !self.live[i] {
                continue;
            }
            self.live[i] = false;
            let c = std::mem::replace(&mut self.acc[i], Rational::ZERO);
            if c.is_zero() {
                continue;
            }
            let k = self.pivot_row[i];
            if k == u32::MAX {
                // New pivot: gather the remaining live entries.
                let inv = c.recip();
                let mut row = vec![(i as u32, Rational::ONE)];
                let mut rest: Vec<u32> = heap.drain().map(|Reverse(j)| j).collect();
                rest.sort_unstable();
                rest.dedup();
                for j in rest {
                    let j = j as usize;
                    if self.live[j] {
                        self.live[j] = false;
                        let x = std::mem::replace(&mut self.acc[j], Rational::ZERO);
                        if !x.is_zero() {
                            row.push((j as u32, &x * &inv));
                        }
                    }
                }
                self.pivot_row[i] = self.rows.len() as u32;
                self.rows.push(row);
                return;
            }
            for (j, x) in self.rows[k as usize].iter().skip(1) {
                let j = *j as usize;
                self.acc[j] -= &(&c * x);
                if !self.live[j] {
                    self.live[j] = true;
                    heap.push(Reverse(j as u32));
                }
            }
        }
    }
}

/// Exact rank of the span of `vectors` (each of length `dim`).
pub fn rank_of_vectors(dim: usize, vectors: &[SparseVec]) -> usize {
    rank_pair(dim, vectors, &[]).0
}

/// `(rank base, rank (base ∪ extra))` from a single elimination.
pub fn rank_pair(dim: usize, base: &[SparseVec], extra: &[SparseVec]) -> (usize, usize) {
    let all: Vec<SparseVec> = base.iter().chain(extra).cloned().collect();
    let (found, dim, rest) = peel(dim, &all, base.len());
    let vecs: Vec<SparseVec> = rest.iter().map(|(_, v)| v.clone()).collect();
    let groups = components(dim, &vecs);
    let (b, e) = groups
        .par_iter()
        .map(|g| {
            let support: Vec<usize> = {
                let mut s: Vec<usize> = g.iter().flat_map(|&k| vecs[k].entries().iter().map(|(i, _)| *i)).collect();
                s.sort_unstable();
                s.dedup();
                s
            };
            let local = |v: &SparseVec| {
                SparseVec::from_sorted(v.entries().iter().map(|(i, c)| (support.binary_search(i).unwrap(), c.clone())).collect())
            };
            let mut e = RankEliminator::new(support.len());
            let mut base_rank = None;
            // `components` keeps input order inside a group, so base vectors come first.
            for &k in g {
                if rest[k].0 && base_rank.is_none() {
                    base_rank = Some(e.rows.len());
                }
                if e.rows.len() < support.len() {
                    e.insert(&local(&vecs[k]));
                }
            }
            (base_rank.unwrap_or(e.rows.len()), e.rows.len())
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    (found + b, found + e)
}

/// Rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    // Eliminating along the shorter side keeps the echelon basis small.
    if m.rows() <= m.cols() {
        rank_of_vectors(m.cols(), m.row_vectors())
    } else {
        rank_of_vectors(m.rows(), &m.columns())
    }
}

/// Echelon basis of the span of `vectors`, in input order.
pub fn echelon(vectors: impl IntoIterator<Item = SparseVec>) -> EchelonBasis {
    let mut e = EchelonBasis::new();
    for v in vectors {
        e.insert(v);
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_split_disjoint_supports() {
        let vs = vec![
            SparseVec::from_pairs([(0, Rational::ONE), (2, Rational::ONE)]),
            SparseVec::from_pairs([(1, Rational::ONE)]),
            SparseVec::from_pairs([(2, Rational::ONE), (3, Rational::ONE)]),
        ];
        let g = components(4, &vs);
        assert_eq!(g, vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn peeling_keeps_the_rank() {
        let m = SparseMatrix::from_int_rows(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[1, 0, -1, 0], &[0, 0, 0, 3]]);
        assert_eq!(rank(&m), 3);
        assert_eq!(rank(&m.transpose()), 3);
    }

    #[test]
    fn rref_reduce_clears_pivots() {
        let vs = vec![
            SparseVec::from_pairs([(0, Rational::from_int(2)), (1, Rational::ONE), (2, Rational::ONE)]),
            SparseVec::from_pairs([(1, Rational::ONE), (2, Rational::from_int(-1))]),
        ];
        let r = echelon(vs).into_rref();
        assert_eq!(r.pivots(), &[0, 1]);
        let x = r.reduce(&SparseVec::from_pairs([(0, Rational::ONE), (1, Rational::ONE)]));
        assert!(x.entries().iter().all(|(i, _)| *i == 2));
    }
}
