use perm::permutations;

use crate::conventions::{checked_pow, sign, tuple_digits, tuple_index};
use crate::error::{Error, Result};
use crate::exactlin::{Rational, SparseVec};
use crate::forms::MixedComplex;

use super::FiniteGroup;

/// The extension `0 → ℤ → E → ℤ/n → 0` with `E = ℤ` and projection
/// reduction mod `n`, together with a set-theoretic section.
///
/// Elements of `E` are written as pairs `(m, q)` meaning `n m + q` with
/// `0 ≤ q < n`; the central copy of `ℤ` is `{(m, 0)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralExtensionByZ {
    quotient: FiniteGroup,
    section_lift: Vec<i64>,
}

impl CentralExtensionByZ {
    /// `section_lift[q]` is an integer mapping to `q` mod `n`.
    pub fn new(n: usize, section_lift: Vec<i64>) -> Result<Self> {
        if n == 0 || section_lift.len() != n {
            return Err(Error::InvalidSection(format!("need {n} lifts, got {}", section_lift.len())));
        }
        if section_lift[0] != 0 {
            return Err(Error::InvalidSection("the identity must lift to 0".into()));
        }
        for (q, &l) in section_lift.iter().enumerate() {
            if l.rem_euclid(n as i64) != q as i64 {
                return Err(Error::InvalidSection(format!("{l} does not lie over {q}")));
            }
        }
        let e = Self { quotient: FiniteGroup::cyclic(n), section_lift };
        e.check_associative()?;
        Ok(e)
    }

    /// The section `q ↦ q`.
    pub fn standard(n: usize) -> Self {
        Self::new(n, (0..n as i64).collect()).expect("standard section")
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    fn modulus(&self) -> i64 {
        self.quotient.order() as i64
    }

    /// Group law on pairs.
    pub fn mul(&self, a: (i64, usize), b: (i64, usize)) -> (i64, usize) {
        let n = self.modulus();
        let s = (a.1 + b.1) as i64;
        (a.0 + b.0 + s.div_euclid(n), s.rem_euclid(n) as usize)
    }

    pub fn inv(&self, a: (i64, usize)) -> (i64, usize) {
        self.from_integer(-self.to_integer(a))
    }

    pub fn to_integer(&self, a: (i64, usize)) -> i64 {
        self.modulus() * a.0 + a.1 as i64
    }

    pub fn from_integer(&self, x: i64) -> (i64, usize) {
        let n = self.modulus();
        (x.div_euclid(n), x.rem_euclid(n) as usize)
    }

    /// `σ(q)` as a pair.
    pub fn section(&self, q: usize) -> (i64, usize) {
        self.from_integer(self.section_lift[q])
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.quotient.order();
        let ms = [-2i64, -1, 0, 1, 2];
        for &m1 in &ms {
            for q1 in 0..n {
                for &m2 in &ms {
                    for q2 in 0..n {
                        for q3 in 0..n {
                            let (a, b, c) = ((m1, q1), (m2, q2), (1, q3));
                            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                                return Err(Error::InvalidGroup("pair law is not associative".into()));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A homogeneous cochain: a function on `G^{n+1}`, stored densely in
/// lexicographic tuple order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCochain {
    degree: usize,
    group_order: usize,
    values: Vec<Rational>,
    homogeneous: bool,
}

impl GroupCochain {
    pub fn from_fn(group: &FiniteGroup, degree: usize, f: impl Fn(&[usize]) -> Rational) -> Result<Self> {
        let q = group.order();
        let len = checked_pow(q, degree + 1).ok_or_else(|| Error::ResourceCap {
            what: "cochain".into(),
            needed: u128::MAX,
            cap: usize::MAX as u128,
        })?;
        let values = (0..len).map(|i| f(&tuple_digits(i, q, degree + 1))).collect();
        let mut c = Self { degree, group_order: q, values, homogeneous: false };
        c.homogeneous = c.is_invariant(group);
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, tuple: &[usize]) -> &Rational {
        &self.values[tuple_index(tuple, self.group_order)]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Whether the cochain is flagged homogeneous (invariant under left
    /// translation).
    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    fn is_invariant(&self, group: &FiniteGroup) -> bool {
        let q = self.group_order;
        (0..self.values.len()).all(|i| {
            let t = tuple_digits(i, q, self.degree + 1);
            group.elements().all(|h| {
                let ht: Vec<usize> = t.iter().map(|&g| group.mul(h, g)).collect();
                self.values[tuple_index(&ht, q)] == self.values[i]
            })
        })
    }

    /// `c(g_{π(0)}, …) = sgn(π) c(g_0, …)` for all permutations.
    pub fn is_alternating(&self) -> bool {
        let q = self.group_order;
        let perms = permutations(self.degree + 1);
        (0..self.values.len()).all(|i| {
            let t = tuple_digits(i, q, self.degree + 1);
            perms.iter().all(|(p, s)| {
                let pt: Vec<usize> = p.iter().map(|&k| t[k]).collect();
                self.values[tuple_index(&pt, q)] == &self.values[i] * &Rational::from_int(*s)
            })
        })
    }

    /// The alternation `(1/(n+1)!) Σ sgn(π) c∘π`, cohomologous to `c` when
    /// `c` is a cocycle.
    pub fn alternate(&self) -> Self {
        let q = self.group_order;
        let perms = permutations(self.degree + 1);
        let norm = Rational::new(1, perms.len() as i64);
        let values = (0..self.values.len())
            .map(|i| {
                let t = tuple_digits(i, q, self.degree + 1);
                let s: Rational = perms
                    .iter()
                    .map(|(p, s)| {
                        let pt: Vec<usize> = p.iter().map(|&k| t[k]).collect();
                        &self.values[tuple_index(&pt, q)] * &Rational::from_int(*s)
                    })
                    .sum();
                &s * &norm
            })
            .collect();
        Self { values, ..self.clone() }
    }

    /// `(δc)(g_0, …, g_{n+1}) = Σ (-1)^i c(…, ĝ_i, …)`.
    pub fn coboundary(&self) -> Self {
        let q = self.group_order;
        let n = self.degree + 1;
        let values = (0..q.pow(n as u32 + 1))
            .map(|i| {
                let t = tuple_digits(i, q, n + 1);
                (0..=n)
                    .map(|k| {
                        let mut f = t.clone();
                        f.remove(k);
                        &self.values[tuple_index(&f, q)] * &Rational::from_int(sign(k))
                    })
                    .sum()
            })
            .collect();
        Self { degree: n, group_order: q, values, homogeneous: self.homogeneous }
    }

    pub fn is_cocycle(&self) -> bool {
        self.coboundary().values.iter().all(Rational::is_zero)
    }
}

/// The homogeneous 2-cocycle `c(h_0, h_1, h_2) = σ(h_1⁻¹h_2) σ(h_0⁻¹h_2)⁻¹ σ(h_0⁻¹h_1)`,
/// evaluated in `E` and reported as the integer it represents. The value
/// always lies in the central subgroup `nℤ`.
pub fn extension_cocycle(e: &CentralExtensionByZ) -> GroupCochain {
    let g = e.quotient();
    let s = |a: usize, b: usize| e.section(g.mul(g.inv(a), b));
    GroupCochain::from_fn(g, 2, |h| {
        let x = e.mul(e.mul(s(h[1], h[2]), e.inv(s(h[0], h[2]))), s(h[0], h[1]));
        debug_assert_eq!(x.1, 0, "cocycle value must be central");
        Rational::from_int(e.to_integer(x))
    })
    .expect("small cochain")
}

/// A linear functional on one degree of a form complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCochain {
    degree: usize,
    functional: SparseVec,
}

impl CyclicCochain {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn functional(&self) -> &SparseVec {
        &self.functional
    }

    pub fn evaluate(&self, form: &SparseVec) -> Rational {
        self.functional.dot(form)
    }

    /// Checks `φ ∘ b = 0` on degree `n+1` and `φ ∘ B = 0` on degree `n-1`,
    /// within the truncation of `c`.
    pub fn is_closed(&self, c: &MixedComplex) -> bool {
        let n = self.degree;
        let kills = |m: &crate::exactlin::SparseMatrix| m.transpose().mul_vec(&self.functional).is_zero();
        (n + 1 > c.top() || kills(c.b(n + 1))) && (n == 0 || kills(c.big_b(n - 1)))
    }
}

/// The functional `⟨g_0⟩d⟨g_1⟩…d⟨g_n⟩ ↦ c(g_0, …, g_n)` on the degree-`n`
/// forms of `k⟨G⟩`, zero on d-only words. `c` must be homogeneous and
/// alternating.
pub fn group_to_cyclic_cocycle(group: &FiniteGroup, c: &GroupCochain) -> Result<CyclicCochain> {
    if !c.is_homogeneous() || !c.is_alternating() {
        return Err(Error::IdentityFailure("cochain must be homogeneous and alternating".into()));
    }
    if c.group_order != group.order() {
        return Err(Error::DimensionMismatch("cochain over a different group".into()));
    }
    // The a_0-words of Ω^n come first in the form basis (see conventions).
    let functional = SparseVec::from_pairs(c.values.iter().cloned().enumerate());
    Ok(CyclicCochain { degree: c.degree, functional })
}

mod perm {
    /// All permutations of `0..n` with their signs, in lexicographic order.
    pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        heap(n, &mut cur, &mut out);
        out.sort();
        out.into_iter()
            .map(|p| {
                let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                (p, if inv % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    }

    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, a, out);
            if k % 2 == 0 {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
        heap(k - 1, a, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn sample_values() {
        let c = extension_cocycle(&CentralExtensionByZ::standard(2));
        assert_eq!(c.get(&[0, 1, 0]), &q(2));
        let c = extension_cocycle(&CentralExtensionByZ::standard(3));
        assert_eq!(c.get(&[0, 1, 2]), &q(0));
        assert_eq!(c.get(&[0, 2, 1]), &q(3));
        for h in 0..3 {
            assert_eq!(c.get(&[h, h, h]), &q(0));
        }
        assert!(c.is_homogeneous());
        assert!(c.is_cocycle());
    }

    #[test]
    fn section_validation() {
        assert!(CentralExtensionByZ::new(3, vec![0, 4, -1]).is_ok());
        assert!(CentralExtensionByZ::new(3, vec![1, 1, 2]).is_err());
        assert!(CentralExtensionByZ::new(3, vec![0, 2, 1]).is_err());
    }

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().map(|(_, s)| s).sum::<i64>(), 0);
        assert_eq!(p[0], (vec![0, 1, 2], 1));
    }

    #[test]
    fn alternation_keeps_cocycles() {
        let g = FiniteGroup::cyclic(3);
        let c = extension_cocycle(&CentralExtensionByZ::standard(3)).alternate();
        assert!(c.is_alternating());
        assert!(c.is_cocycle());
        assert!(c.is_homogeneous());
        assert!(group_to_cyclic_cocycle(&g, &c).is_ok());
        let raw = extension_cocycle(&CentralExtensionByZ::standard(3));
        assert!(group_to_cyclic_cocycle(&g, &raw).is_err());
    }
}
