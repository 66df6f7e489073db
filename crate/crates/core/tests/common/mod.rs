//! Cyclic homology from the classical bicomplex on Hochschild chains
//! `C_n = A^{⊗n+1}`, with `B = (1 - t) s N`. Shares nothing with the forms
//! engine except exact rank.

#![allow(dead_code)]

use cyclix::algebras::StructureAlgebra;
use cyclix::exactlin::{rank, Rational, SparseMatrix};

struct Chains<'a> {
    a: &'a StructureAlgebra,
    d: usize,
}

impl Chains<'_> {
    fn dim(&self, n: usize) -> usize {
        self.d.pow(n as u32 + 1)
    }

    fn digits(&self, n: usize, mut x: usize) -> Vec<usize> {
        let mut v = vec![0; n + 1];
        for slot in v.iter_mut().rev() {
            *slot = x % self.d;
            x /= self.d;
        }
        v
    }

    fn index(&self, v: &[usize]) -> usize {
        v.iter().fold(0, |acc, &i| acc * self.d + i)
    }

    /// Expands a tensor whose slot `pos` is the product `e_i e_j`.
    fn push_product(&self, out: &mut Vec<(usize, Rational)>, v: &[usize], pos: usize, i: usize, j: usize, c: &Rational) {
        for (k, x) in self.a.mul_basis(i, j).entries() {
            let mut w = v.to_vec();
            w[pos] = *k;
            out.push((self.index(&w), c * x));
        }
    }

    fn b(&self, n: usize) -> SparseMatrix {
        let mut t = Vec::new();
        for x in 0..self.dim(n) {
            let v = self.digits(n, x);
            let mut col = Vec::new();
            for i in 0..n {
                let sign = Rational::from_int(if i % 2 == 0 { 1 } else { -1 });
                let mut rest: Vec<usize> = v[..i].to_vec();
                rest.push(0);
                rest.extend_from_slice(&v[i + 2..]);
                self.push_product(&mut col, &rest, i, v[i], v[i + 1], &sign);
            }
            let sign = Rational::from_int(if n % 2 == 0 { 1 } else { -1 });
            let rest: Vec<usize> = v[..n].to_vec();
            self.push_product(&mut col, &rest, 0, v[n], v[0], &sign);
            t.extend(col.into_iter().map(|(r, c)| (r, x, c)));
        }
        SparseMatrix::from_triplets(self.dim(n - 1), self.dim(n), t).unwrap()
    }

    /// `t(a_0 ⊗ … ⊗ a_n) = (-1)^n a_n ⊗ a_0 ⊗ … ⊗ a_{n-1}`.
    fn cyclic(&self, n: usize) -> SparseMatrix {
        let sign = Rational::from_int(if n % 2 == 0 { 1 } else { -1 });
        let t = (0..self.dim(n)).map(|x| {
            let v = self.digits(n, x);
            let mut w = vec![v[n]];
            w.extend_from_slice(&v[..n]);
            (self.index(&w), x, sign.clone())
        });
        SparseMatrix::from_triplets(self.dim(n), self.dim(n), t).unwrap()
    }

    /// `B = (1 - t) s N` from `C_n` to `C_{n+1}`.
    fn big_b(&self, n: usize) -> SparseMatrix {
        let unit = self.a.unit().expect("unital").clone();
        let t = self.cyclic(n);
        let mut norm = SparseMatrix::identity(self.dim(n));
        let mut power = SparseMatrix::identity(self.dim(n));
        for _ in 1..=n {
            power = t.matmul(&power).unwrap();
            norm = norm.add(&power).unwrap();
        }
        let mut s = Vec::new();
        for x in 0..self.dim(n) {
            let v = self.digits(n, x);
            for (u, c) in unit.entries() {
                let mut w = vec![*u];
                w.extend_from_slice(&v);
                s.push((self.index(&w), x, c.clone()));
            }
        }
        let s = SparseMatrix::from_triplets(self.dim(n + 1), self.dim(n), s).unwrap();
        let one_minus_t = SparseMatrix::identity(self.dim(n + 1)).sub(&self.cyclic(n + 1)).unwrap();
        one_minus_t.matmul(&s).unwrap().matmul(&norm).unwrap()
    }
}

/// `HC_n(A)` for `n ≤ up_to`, from the total complex of the bicomplex.
pub fn bicomplex_hc(a: &StructureAlgebra, up_to: usize) -> Vec<usize> {
    let ch = Chains { a, d: a.dim() };
    let top = up_to + 1;
    let b: Vec<Option<SparseMatrix>> = (0..=top).map(|n| (n > 0).then(|| ch.b(n))).collect();
    let bb: Vec<SparseMatrix> = (0..top).map(|n| ch.big_b(n)).collect();
    // Tot_m = C_m ⊕ C_{m-2} ⊕ …; blocks listed from C_m down.
    let parts = |m: usize| -> Vec<usize> { (0..=m / 2).map(|i| m - 2 * i).collect() };
    let offsets = |m: usize| -> (Vec<usize>, usize) {
        let mut off = Vec::new();
        let mut acc = 0;
        for p in parts(m) {
            off.push(acc);
            acc += ch.dim(p);
        }
        (off, acc)
    };
    let total_d = |m: usize| -> SparseMatrix {
        let (src_off, src_dim) = offsets(m);
        let (dst_off, dst_dim) = offsets(m - 1);
        let dst_parts = parts(m - 1);
        let mut t = Vec::new();
        for (k, p) in parts(m).into_iter().enumerate() {
            if p > 0 {
                let pos = dst_parts.iter().position(|&q| q == p - 1).unwrap();
                for (r, c, x) in b[p].as_ref().unwrap().iter() {
                    t.push((dst_off[pos] + r, src_off[k] + c, x.clone()));
                }
            }
            if let Some(pos) = dst_parts.iter().position(|&q| q == p + 1) {
                for (r, c, x) in bb[p].iter() {
                    t.push((dst_off[pos] + r, src_off[k] + c, x.clone()));
                }
            }
        }
        SparseMatrix::from_triplets(dst_dim, src_dim, t).unwrap()
    };
    let ranks: Vec<usize> = (0..=top).map(|m| if m == 0 { 0 } else { rank(&total_d(m)) }).collect();
    (0..=up_to).map(|n| offsets(n).1 - ranks[n] - ranks[n + 1]).collect()
}
