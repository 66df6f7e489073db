use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

/// Exhaustive associativity checks run up to this order; larger groups are
/// checked on a deterministic sample of triples.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;

/// A finite group given by its multiplication table. Elements are indices
/// `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    /// Permutation realisation, when the group was generated by permutations.
    perms: Option<Vec<Vec<usize>>>,
    name: String,
}

impl FiniteGroup {
    /// Validates a multiplication table (`table[a][b] = a * b`).
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup("table is not square".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        let mult: Vec<usize> = table.into_iter().flatten().collect();
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mult[e * n + a] == a && mult[a * n + e] == a))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| mult[a * n + b] == identity && mult[b * n + a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverse[a] = b;
        }
        let g = Self { order: n, mult, identity, inverse, perms: None, name: format!("table({n})") };
        g.check_associative()?;
        Ok(g)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let ok = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !ok(a, b, c) {
                            return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        } else {
            // Deterministic linear-congruential sample.
            let mut s: u64 = 0x9E37_79B9_7F4A_7C15;
            for _ in 0..(64 * 64 * 64) {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = (s >> 33) as usize % n;
                let b = (s >> 17) as usize % n;
                let c = (s >> 5) as usize % n;
                if !ok(a, b, c) {
                    return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
        Ok(())
    }

    /// The group generated by permutations of `0..degree` (each given as the
    /// image list). Element 0 is the identity; the rest are numbered in
    /// breadth-first order over the generators.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for g in generators {
            let set: BTreeSet<usize> = g.iter().copied().collect();
            if g.len() != degree || set.len() != degree || set.iter().any(|&x| x >= degree) {
                return Err(Error::InvalidGroup(format!("{g:?} is not a permutation of 0..{degree}")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for g in generators {
                // (x * g)(i) = x(g(i)): apply g first.
                let p: Vec<usize> = (0..degree).map(|i| elems[k][g[i]]).collect();
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let p: Vec<usize> = (0..degree).map(|i| elems[a][elems[b][i]]).collect();
                        index[&p]
                    })
                    .collect()
            })
            .collect();
        let mut g = Self::from_table(table)?;
        g.perms = Some(elems);
        g.name = format!("perm({degree};{n})");
        Ok(g)
    }

    pub fn trivial() -> Self {
        let mut g = Self::cyclic(1);
        g.name = "trivial".into();
        g
    }

    /// ℤ/n with element `k` the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mut g = Self::from_table(table).expect("cyclic table is a group");
        g.name = format!("cyclic({n})");
        g
    }

    /// The symmetric group on `n` letters, generated by a transposition and an
    /// `n`-cycle.
    pub fn symmetric(n: usize) -> Self {
        assert!(n > 0);
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        let mut g = Self::from_permutations(n, &gens).expect("valid generators");
        g.name = format!("symmetric({n})");
        g
    }

    /// The dihedral group of order `2n`, acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        let mut g = if n <= 2 {
            // Small cases are not faithful on n points; use a product.
            let z2 = Self::cyclic(2);
            if n == 1 {
                z2
            } else {
                Self::from_table(
                    (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect(),
                )
                .expect("Klein four group")
            }
        } else {
            Self::from_permutations(n, &[rot, refl]).expect("valid generators")
        };
        g.name = format!("dihedral({n})");
        g
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// `h a h⁻¹`.
    pub fn conjugate(&self, h: usize, a: usize) -> usize {
        self.mul(self.mul(h, a), self.inv(h))
    }

    pub fn product(&self, elems: &[usize]) -> usize {
        elems.iter().fold(self.identity, |acc, &x| self.mul(acc, x))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn permutation(&self, a: usize) -> Option<&[usize]> {
        self.perms.as_ref().map(|p| p[a].as_slice())
    }

    /// Sign character for permutation groups; `None` otherwise.
    pub fn sign(&self, a: usize) -> Option<i64> {
        let p = self.permutation(a)?;
        let mut seen = vec![false; p.len()];
        let mut sign = 1i64;
        for s in 0..p.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = p[x];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        Some(sign)
    }

    /// Multiplication table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// Subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Subgroup {
        let mut members: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut queue: VecDeque<usize> = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_members(self, members.into_iter().collect()).expect("generated set is a subgroup")
    }

    /// The cyclic subgroup `{v^k}`.
    pub fn cyclic_subgroup(&self, v: usize) -> Subgroup {
        self.generated_subgroup(&[v])
    }

    /// All subgroups generated by at most two elements, sorted by order then
    /// members. For the desk-scale groups used here (every subgroup of a
    /// group of order < 16 is 2-generated) this is the full subgroup lattice.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        for a in 0..self.order {
            for b in a..self.order {
                let s = self.generated_subgroup(&[a, b]);
                if seen.insert(s.members.clone()) {
                    out.push(s);
                }
            }
        }
        out.sort_by(|x, y| (x.order(), &x.members).cmp(&(y.order(), &y.members)));
        out
    }

    pub fn conjugacy_classes(&self) -> ConjugacyData {
        ConjugacyData::new(self)
    }

    /// `G/N` for a normal subgroup `N`. Element `k` of the quotient is coset
    /// `k` of the returned section.
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, CosetSection)> {
        if !n.is_normal_in(self) {
            return Err(Error::InvalidGroup("quotient by a subgroup that is not normal".into()));
        }
        let sec = CosetSection::canonical(self, n);
        let m = sec.num_cosets();
        let table = (0..m)
            .map(|a| (0..m).map(|b| sec.coset_of(self.mul(sec.representative(a), sec.representative(b)))).collect())
            .collect();
        let mut q = FiniteGroup::from_table(table)?;
        q.name = format!("{}/{}", self.name, n.group().name);
        Ok((q, sec))
    }

    pub fn centralizer(&self, v: usize) -> Subgroup {
        let members = (0..self.order).filter(|&h| self.mul(h, v) == self.mul(v, h)).collect();
        Subgroup::from_members(self, members).expect("centralizer is a subgroup")
    }
}

/// A subgroup together with its induced group structure. Local element `i`
/// of [`Subgroup::group`] corresponds to parent element `members[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    local: HashMap<usize, usize>,
    group: FiniteGroup,
    parent_order: usize,
}

impl Subgroup {
    /// Validates that the sorted member list is a subgroup of `parent`.
    pub fn from_members(parent: &FiniteGroup, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&m| m >= parent.order()) {
            return Err(Error::InvalidGroup("subgroup member out of range".into()));
        }
        let local: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        if !local.contains_key(&parent.identity()) {
            return Err(Error::InvalidGroup("subgroup misses the identity".into()));
        }
        let mut table = Vec::with_capacity(members.len());
        for &a in &members {
            let mut row = Vec::with_capacity(members.len());
            for &b in &members {
                let c = parent.mul(a, b);
                row.push(*local.get(&c).ok_or_else(|| Error::InvalidGroup("not closed".into()))?);
            }
            table.push(row);
            if !local.contains_key(&parent.inv(a)) {
                return Err(Error::InvalidGroup("not closed under inverse".into()));
            }
        }
        let mut group = FiniteGroup::from_table(table)?;
        group.name = format!("subgroup{:?}", members);
        Ok(Self { members, local, group, parent_order: parent.order() })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.local.contains_key(&g)
    }

    /// Local index of a parent element.
    pub fn local_index(&self, g: usize) -> Option<usize> {
        self.local.get(&g).copied()
    }

    pub fn parent_element(&self, local: usize) -> usize {
        self.members[local]
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_normal_in(&self, parent: &FiniteGroup) -> bool {
        parent.elements().all(|h| self.members.iter().all(|&u| self.contains(parent.conjugate(h, u))))
    }

    /// Whether every element of `self` commutes with every element of `other`.
    pub fn centralizes(&self, parent: &FiniteGroup, other: &Subgroup) -> bool {
        self.members.iter().all(|&a| other.members.iter().all(|&b| parent.mul(a, b) == parent.mul(b, a)))
    }
}

/// Conjugacy classes, representatives and centralizers.
#[derive(Clone, Debug)]
pub struct ConjugacyData {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    centralizers: Vec<Subgroup>,
}

impl ConjugacyData {
    fn new(g: &FiniteGroup) -> Self {
        let mut class_of = vec![usize::MAX; g.order()];
        let mut classes = Vec::new();
        for v in g.elements() {
            if class_of[v] != usize::MAX {
                continue;
            }
            let members: BTreeSet<usize> = g.elements().map(|h| g.conjugate(h, v)).collect();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members.into_iter().collect::<Vec<_>>());
        }
        let centralizers = g.elements().map(|v| g.centralizer(v)).collect();
        Self { classes, class_of, centralizers }
    }

    /// Classes ordered by their smallest element; each class is sorted.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    /// Smallest element of class `c`.
    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn centralizer(&self, v: usize) -> &Subgroup {
        &self.centralizers[v]
    }
}

/// A section of `G -> U\G`: one representative per right coset `U g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSection {
    cosets: Vec<Vec<usize>>,
    coset_of: Vec<usize>,
    reps: Vec<usize>,
}

impl CosetSection {
    /// Right cosets ordered by smallest element, each represented by its
    /// smallest element.
    pub fn canonical(g: &FiniteGroup, u: &Subgroup) -> Self {
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut cosets = Vec::new();
        for x in g.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let mut c: Vec<usize> = u.members().iter().map(|&h| g.mul(h, x)).collect();
            c.sort_unstable();
            for &y in &c {
                coset_of[y] = cosets.len();
            }
            cosets.push(c);
        }
        let reps = cosets.iter().map(|c| c[0]).collect();
        Self { cosets, coset_of, reps }
    }

    /// A section with caller-chosen representatives, listed in canonical
    /// coset order.
    pub fn with_representatives(g: &FiniteGroup, u: &Subgroup, reps: Vec<usize>) -> Result<Self> {
        let mut s = Self::canonical(g, u);
        if reps.len() != s.cosets.len() {
            return Err(Error::InvalidSection(format!(
                "expected {} representatives, got {}",
                s.cosets.len(),
                reps.len()
            )));
        }
        for (k, &r) in reps.iter().enumerate() {
            if r >= g.order() || s.coset_of[r] != k {
                return Err(Error::InvalidSection(format!("{r} does not lie in coset {k}")));
            }
        }
        s.reps = reps;
        Ok(s)
    }

    pub fn num_cosets(&self) -> usize {
        self.cosets.len()
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    pub fn representative(&self, coset: usize) -> usize {
        self.reps[coset]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(vec![]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![0, 1]]).is_err());
        // Latin square without associativity: the quasigroup with a*b = a - b mod 3
        // has no identity.
        let t = (0..3).map(|a| (0..3).map(|b| (a + 3 - b) % 3).collect()).collect();
        assert!(FiniteGroup::from_table(t).is_err());
    }

    #[test]
    fn quotients() {
        let s3 = FiniteGroup::symmetric(3);
        let a3 = s3.generated_subgroup(&s3.elements().filter(|&g| s3.sign(g) == Some(1)).collect::<Vec<_>>());
        let (q, sec) = s3.quotient(&a3).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(sec.coset_of(s3.identity()), q.identity());
        let z = s3.generated_subgroup(&[s3.elements().find(|&g| s3.element_order(g) == 2).unwrap()]);
        assert!(s3.quotient(&z).is_err());
        let z4 = FiniteGroup::cyclic(4);
        let (q, _) = z4.quotient(&z4.cyclic_subgroup(2)).unwrap();
        assert_eq!(q.order(), 2);
    }

    #[test]
    fn presets_have_expected_orders() {
        assert_eq!(FiniteGroup::cyclic(4).order(), 4);
        assert_eq!(FiniteGroup::symmetric(3).order(), 6);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        assert_eq!(FiniteGroup::dihedral(2).order(), 4);
        assert_eq!(FiniteGroup::trivial().order(), 1);
    }

    #[test]
    fn conjugacy_of_z2_and_s3() {
        let z2 = FiniteGroup::cyclic(2);
        let c = z2.conjugacy_classes();
        assert_eq!(c.num_classes(), 2);
        assert!(c.classes().iter().all(|k| k.len() == 1));

        let s3 = FiniteGroup::symmetric(3);
        let c = s3.conjugacy_classes();
        let mut sizes: Vec<usize> = c.classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        let t = (0..6).find(|&g| s3.element_order(g) == 2).unwrap();
        assert_eq!(c.centralizer(t).order(), 2);
        for v in s3.elements() {
            assert_eq!(c.classes()[c.class_of(v)].len() * c.centralizer(v).order(), 6);
        }
    }

    #[test]
    fn cyclic_subgroups() {
        let s3 = FiniteGroup::symmetric(3);
        assert!(s3.cyclic_subgroup(s3.identity()).is_trivial());
        let r = (0..6).find(|&g| s3.element_order(g) == 3).unwrap();
        assert_eq!(s3.cyclic_subgroup(r).order(), 3);
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.cyclic_subgroup(1).order(), 4);
    }

    #[test]
    fn coset_sections() {
        let s3 = FiniteGroup::symmetric(3);
        let whole = s3.generated_subgroup(&[1, 2]);
        assert_eq!(whole.order(), 6);
        let s = CosetSection::canonical(&s3, &whole);
        assert_eq!(s.num_cosets(), 1);
        assert_eq!(s.representative(0), 0);

        let triv = s3.cyclic_subgroup(0);
        let s = CosetSection::canonical(&s3, &triv);
        assert_eq!((0..6).map(|c| s.representative(c)).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4, 5]);

        let t = (0..6).find(|&g| s3.element_order(g) == 2).unwrap();
        let u = s3.cyclic_subgroup(t);
        let s = CosetSection::canonical(&s3, &u);
        assert_eq!(s.num_cosets(), 3);
        for c in 0..3 {
            let r = s.representative(c);
            assert_eq!(s.coset_of(r), c);
        }
        assert!(CosetSection::with_representatives(&s3, &u, vec![0, 0, 0]).is_err());
    }

    #[test]
    fn subgroup_lattices() {
        assert_eq!(FiniteGroup::cyclic(4).subgroups().len(), 3);
        assert_eq!(FiniteGroup::symmetric(3).subgroups().len(), 6);
        assert_eq!(FiniteGroup::cyclic(2).subgroups().len(), 2);
    }

    #[test]
    fn sign_character() {
        let s3 = FiniteGroup::symmetric(3);
        let signs: Vec<i64> = s3.elements().map(|g| s3.sign(g).unwrap()).collect();
        assert_eq!(signs.iter().filter(|&&s| s == -1).count(), 3);
        for a in s3.elements() {
            for b in s3.elements() {
                assert_eq!(signs[s3.mul(a, b)], signs[a] * signs[b]);
            }
        }
        assert!(FiniteGroup::cyclic(2).sign(1).is_none());
    }
}
