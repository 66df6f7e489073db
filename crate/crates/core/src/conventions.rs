//! Sign, face and ordering conventions. Every matrix in the crate is built
//! from the rules below; nothing else in the code base chooses a sign.
//!
//! # Tensor words
//!
//! A word `(i_0, …, i_n)` over a basis of size `d` has index
//! `i_0 d^n + i_1 d^{n-1} + … + i_n` (lexicographic, slot 0 most
//! significant). See [`tuple_index`] and [`tuple_digits`].
//!
//! # Differential forms
//!
//! `Ω^0(A) = A` and, for `n ≥ 1`, `Ω^n(A) = A^{⊗n+1} ⊕ A^{⊗n}`. The first
//! summand holds `a_0 da_1 … da_n`, the second the d-only words
//! `da_1 … da_n`. Inside `Ω^n` the `a_0`-words come first.
//!
//! Hochschild operator on `a_0 da_1 … da_n`:
//!
//! ```text
//! b = Σ_{i=0}^{n-1} (-1)^i a_0 … d(a_i a_{i+1}) …  +  (-1)^n a_n a_0 da_1 … da_{n-1}
//! ```
//!
//! (for `i = 0` the face is `a_0 a_1 da_2 … da_n`). On d-only words, using
//! `b(ω da) = (-1)^{|ω|} [ω, a]` and the Leibniz rule:
//!
//! ```text
//! b(da_1 … da_n) = a_1 da_2 … da_n
//!                + Σ_{k=1}^{n-1} (-1)^k da_1 … d(a_k a_{k+1}) … da_n
//!                + (-1)^n a_n da_1 … da_{n-1}
//! ```
//!
//! Connes operator:
//!
//! ```text
//! B(a_0 da_1 … da_n) = Σ_{i=0}^{n} (-1)^{ni} da_i … da_n da_0 … da_{i-1},   B(da_1 … da_n) = 0.
//! ```
//!
//! # Bar resolution
//!
//! `P_n = k[G^{n+1}]` with `G` acting diagonally on the left and
//!
//! ```text
//! ∂[g_0, …, g_n] = Σ_{i=0}^{n} (-1)^i [g_0, …, ĝ_i, …, g_n],   ε[g_0] = 1.
//! ```
//!
//! `P_n` is free on the tuples with `g_0 = e`. Coinvariants `(P_n ⊗ M)_G`
//! are identified with `k[G^n] ⊗ M` through
//! `[g_0, …, g_n] ⊗ m ↦ (g_0^{-1} g_1, …, g_0^{-1} g_n) ⊗ g_0^{-1} m`.
//!
//! # Total complexes
//!
//! For a bar/forms bicomplex the total differential on `P_p ⊗ Ω^q` is
//! `∂ ⊗ 1 + (-1)^p 1 ⊗ b`, and the Connes part is `(-1)^p 1 ⊗ B`.
//!
//! # Crossed products
//!
//! `(u_g a)(u_h b) = u_{gh} (h^{-1}(a) b)`, basis `u_g a_i` group-major.
//!
//! # Cochains
//!
//! Homogeneous cochains are functions on `G^{n+1}` with
//! `(δc)(g_0, …, g_{n+1}) = Σ (-1)^i c(g_0, …, ĝ_i, …, g_{n+1})`.

/// Lexicographic index of a word over a basis of size `base`.
pub fn tuple_index(digits: &[usize], base: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * base + d)
}

/// Inverse of [`tuple_index`] for words of length `len`.
pub fn tuple_digits(mut index: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in (0..len).rev() {
        out[slot] = index % base;
        index /= base;
    }
    out
}

/// `(-1)^k`.
pub fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_roundtrip() {
        for i in 0..27 {
            assert_eq!(tuple_index(&tuple_digits(i, 3, 3), 3), i);
        }
        assert_eq!(tuple_index(&[1, 0, 2], 3), 11);
        assert_eq!(tuple_digits(0, 5, 0), Vec::<usize>::new());
    }
}
