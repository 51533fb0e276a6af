use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank supported by the packed monomial representation.
pub const MAX_RANK: usize = 4;

pub const MAX_PRIME: u32 = 97;

/// The prime `p` and the rank `n` shared by every value in a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Config {
    p: u32,
    n: usize,
}

impl Config {
    pub fn new(p: u32, n: usize) -> Result<Self> {
        if !(3..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if !(1..=MAX_RANK).contains(&n) {
            return Err(Error::InvalidRank(n));
        }
        Ok(Config { p, n })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn check(&self, other: &Config) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ConfigMismatch {
                left: *self,
                right: *other,
            })
        }
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, (self.p - 2) as u64))
        }
    }

    /// Smallest generator of the multiplicative group of F_p.
    pub fn primitive_root(&self) -> u32 {
        let order = self.p - 1;
        let factors = prime_factors(order);
        (2..self.p)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&q| self.pow(g, (order / q) as u64) != 1)
            })
            .expect("F_p^x is cyclic")
    }

    /// Binomial coefficient C(m, k) mod p by Lucas' theorem.
    pub fn binomial(&self, mut m: u64, mut k: u64) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u32;
        while k > 0 {
            let (mi, ki) = (m % p, k % p);
            if ki > mi {
                return 0;
            }
            acc = self.mul(acc, small_binomial(mi, ki, self));
            m /= p;
            k /= p;
        }
        acc
    }

    /// Residue as a signed representative in `(-p/2, p/2]`.
    pub fn balanced(&self, a: u32) -> i64 {
        if a <= self.p / 2 {
            a as i64
        } else {
            a as i64 - self.p as i64
        }
    }

    /// `p^e` as an exact integer, `None` on overflow.
    pub fn checked_power(&self, e: u32) -> Option<u64> {
        (self.p as u64).checked_pow(e)
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, n={})", self.p, self.n)
    }
}

fn small_binomial(m: u64, k: u64, cfg: &Config) -> u32 {
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..k {
        num = cfg.mul(num, ((m - i) % cfg.p as u64) as u32);
        den = cfg.mul(den, ((i + 1) % cfg.p as u64) as u32);
    }
    cfg.mul(num, cfg.inv(den).expect("k < p"))
}

pub fn is_prime(x: u32) -> bool {
    x >= 2
        && (2..)
            .take_while(|d| d * d <= x)
            .all(|d| !x.is_multiple_of(d))
}

fn prime_factors(mut x: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            out.push(d);
            while x.is_multiple_of(d) {
                x /= d;
            }
        }
        d += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

/// An element of F_p, stored as its residue in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(pub u32);

impl Scalar {
    pub fn new(cfg: &Config, x: i64) -> Self {
        Scalar(cfg.reduce(x))
    }

    pub fn residue(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_configs() {
        assert_eq!(Config::new(2, 1), Err(Error::InvalidPrime(2)));
        assert_eq!(Config::new(9, 1), Err(Error::InvalidPrime(9)));
        assert_eq!(Config::new(101, 1), Err(Error::InvalidPrime(101)));
        assert_eq!(Config::new(3, 0), Err(Error::InvalidRank(0)));
        assert_eq!(Config::new(3, 5), Err(Error::InvalidRank(5)));
        assert!(Config::new(97, 4).is_ok());
    }

    #[test]
    fn inverses_and_roots() {
        for p in [3, 5, 7, 11, 13, 97] {
            let cfg = Config::new(p, 1).unwrap();
            for a in 1..p {
                assert_eq!(cfg.mul(a, cfg.inv(a).unwrap()), 1);
            }
            assert_eq!(cfg.inv(0), None);
        }
        let roots: Vec<u32> = [3, 5, 7, 11, 13, 17]
            .iter()
            .map(|&p| Config::new(p, 1).unwrap().primitive_root())
            .collect();
        assert_eq!(roots, vec![2, 2, 3, 2, 2, 3]);
    }

    #[test]
    fn lucas_matches_pascal() {
        let cfg = Config::new(5, 1).unwrap();
        let mut row = vec![1u64];
        for m in 0..40u64 {
            for (k, &c) in row.iter().enumerate() {
                assert_eq!(cfg.binomial(m, k as u64), (c % 5) as u32, "C({m},{k})");
            }
            let mut next = vec![1u64; row.len() + 1];
            for k in 1..row.len() {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
        }
        assert_eq!(cfg.binomial(3, 7), 0);
    }

    #[test]
    fn balanced_residues() {
        let cfg = Config::new(5, 1).unwrap();
        let v: Vec<i64> = (0..5).map(|a| cfg.balanced(a)).collect();
        assert_eq!(v, vec![0, 1, 2, -2, -1]);
    }
}
