use std::cmp::Ordering;
use std::ops::Mul;

use super::MAX_RANK;

const BITS: u32 = 32;
const MASK: u128 = (1 << BITS) - 1;

/// A monomial `t_1^{a_1} ... t_n^{a_n}`.
///
/// Exponents are packed into one `u128`, 32 bits each, with `t_1` in the
/// most significant field. Multiplying monomials is then a single add and
/// integer comparison is lexicographic order with `t_1 > t_2 > ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn new(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_RANK, "at most {MAX_RANK} variables");
        let mut packed = 0u128;
        for (k, &e) in exps.iter().enumerate() {
            packed |= (e as u128) << shift(k);
        }
        Monomial(packed)
    }

    /// `t_k^e`, with `k` zero-based.
    pub fn var_pow(k: usize, e: u32) -> Self {
        Monomial((e as u128) << shift(k))
    }

    #[inline]
    pub fn exp(&self, k: usize) -> u32 {
        ((self.0 >> shift(k)) & MASK) as u32
    }

    pub fn exps(&self, n: usize) -> Vec<u32> {
        (0..n).map(|k| self.exp(k)).collect()
    }

    /// Polynomial degree, i.e. half the cohomological degree.
    pub fn degree(&self) -> u64 {
        (0..MAX_RANK).map(|k| self.exp(k) as u64).sum()
    }

    pub fn pow(self, e: u32) -> Monomial {
        let mut out = Monomial::ONE;
        for k in 0..MAX_RANK {
            let x = self.exp(k) as u64 * e as u64;
            assert!(x <= u32::MAX as u64, "exponent overflow");
            out.0 |= (x as u128) << shift(k);
        }
        out
    }

    /// Divides by `t_k^e` if possible.
    pub fn div_var(self, k: usize, e: u32) -> Option<Monomial> {
        (self.exp(k) >= e).then(|| Monomial(self.0 - ((e as u128) << shift(k))))
    }

    pub fn with_exp(self, k: usize, e: u32) -> Monomial {
        Monomial((self.0 & !(MASK << shift(k))) | ((e as u128) << shift(k)))
    }

    /// Graded lexicographic comparison, `t_1 > t_2 > ... > t_n`.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.0.cmp(&other.0))
    }
}

#[inline]
fn shift(k: usize) -> u32 {
    debug_assert!(k < MAX_RANK);
    BITS * (MAX_RANK - 1 - k) as u32
}

impl Mul for Monomial {
    type Output = Monomial;

    #[inline]
    fn mul(self, other: Monomial) -> Monomial {
        debug_assert!(
            (0..MAX_RANK).all(|k| (self.exp(k) as u64 + other.exp(k) as u64) <= u32::MAX as u64),
            "exponent overflow"
        );
        Monomial(self.0 + other.0)
    }
}
