use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::{Config, Monomial, Scalar};
use crate::error::Result;

/// A polynomial in `F_p[t_1, ..., t_n]`, stored sparsely.
///
/// No zero coefficients are ever stored, so equality is term-map equality.
#[derive(Debug, Clone)]
pub struct Poly {
    cfg: Config,
    terms: FxHashMap<Monomial, u32>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.cfg == other.cfg && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(cfg: Config) -> Self {
        Poly {
            cfg,
            terms: FxHashMap::default(),
        }
    }

    pub fn constant(cfg: Config, c: i64) -> Self {
        Self::term(cfg, Monomial::ONE, c)
    }

    pub fn one(cfg: Config) -> Self {
        Self::constant(cfg, 1)
    }

    pub fn term(cfg: Config, m: Monomial, c: i64) -> Self {
        let mut out = Poly::zero(cfg);
        out.add_term(m, cfg.reduce(c));
        out
    }

    /// The generator `t_{k+1}` (zero-based `k`).
    pub fn var(cfg: Config, k: usize) -> Self {
        assert!(k < cfg.n(), "variable index {k} out of range for {cfg}");
        Self::term(cfg, Monomial::var_pow(k, 1), 1)
    }

    /// The linear form `sum_k coords[k] * t_{k+1}`.
    pub fn linear_form(cfg: Config, coords: &[u32]) -> Self {
        let mut out = Poly::zero(cfg);
        for (k, &c) in coords.iter().enumerate() {
            out.add_term(Monomial::var_pow(k, 1), c % cfg.p());
        }
        out
    }

    #[inline]
    pub fn config(&self) -> Config {
        self.cfg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        Scalar(self.terms.get(m).copied().unwrap_or(0))
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::ONE)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, u32)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    /// Terms in descending graded-lex order.
    pub fn sorted_terms(&self) -> Vec<(Monomial, u32)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| b.0.grlex_cmp(&a.0));
        v
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.cfg.p();
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let s = (*e.get() + c) % p;
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c % p);
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Poly, c: u32) {
        assert_same(&self.cfg, &other.cfg);
        if c == 0 {
            return;
        }
        for (m, a) in other.terms() {
            self.add_term(m, self.cfg.mul(a, c));
        }
    }

    pub fn scale(&self, c: u32) -> Poly {
        let c = c % self.cfg.p();
        if c == 0 {
            return Poly::zero(self.cfg);
        }
        Poly {
            cfg: self.cfg,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, self.cfg.mul(*a, c)))
                .collect(),
        }
    }

    /// Multiplies every term by the monomial `m`.
    pub fn shift(&self, m: Monomial) -> Poly {
        Poly {
            cfg: self.cfg,
            terms: self.terms.iter().map(|(k, c)| (*k * m, *c)).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.cfg.check(&other.cfg)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.is_zero() {
            return Poly::zero(self.cfg);
        }
        if small.len() == 1 {
            let (m, c) = small.terms().next().unwrap();
            return large.shift(m).scale(c);
        }
        let p = self.cfg.p() as u64;
        let mut acc: FxHashMap<Monomial, u64> = FxHashMap::default();
        acc.reserve(large.len() * 2);
        for (ma, ca) in small.terms() {
            for (mb, cb) in large.terms() {
                *acc.entry(ma * mb).or_insert(0) += (ca * cb) as u64;
            }
        }
        let terms = acc
            .into_iter()
            .filter_map(|(m, c)| {
                let r = (c % p) as u32;
                (r != 0).then_some((m, r))
            })
            .collect();
        Poly {
            cfg: self.cfg,
            terms,
        }
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(self.cfg);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Polynomial degrees of the terms, lowest and highest; `None` for zero.
    pub fn degree_range(&self) -> Option<(u64, u64)> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    /// Highest cohomological degree present (`2 * polynomial degree`).
    pub fn top_degree(&self) -> Option<u64> {
        self.degree_range().map(|(_, hi)| 2 * hi)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree_range().is_none_or(|(lo, hi)| lo == hi)
    }

    /// The terms of cohomological degree exactly `d`.
    pub fn homogeneous_part(&self, d: u64) -> Poly {
        Poly {
            cfg: self.cfg,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| 2 * m.degree() == d)
                .map(|(m, c)| (*m, *c))
                .collect(),
        }
    }

    /// Splits into coefficients of powers of `t_{k+1}`: `self = sum_e out[e] * t_{k+1}^e`.
    pub fn coefficients_in(&self, k: usize) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for (m, c) in self.terms() {
            let e = m.exp(k) as usize;
            if out.len() <= e {
                out.resize(e + 1, Poly::zero(self.cfg));
            }
            out[e].add_term(m.with_exp(k, 0), c);
        }
        out
    }

    /// Multiplies in place by `1 + v` for a linear form `v` given by coordinates.
    pub fn mul_one_plus_linear(&mut self, coords: &[u32]) {
        let p = self.cfg.p() as u64;
        let mut acc: FxHashMap<Monomial, u64> = FxHashMap::default();
        acc.reserve(self.terms.len() * (coords.len() + 1));
        for (m, c) in self.terms() {
            *acc.entry(m).or_insert(0) += c as u64;
            for (k, &a) in coords.iter().enumerate() {
                if a != 0 {
                    *acc.entry(m * Monomial::var_pow(k, 1)).or_insert(0) += (c * a) as u64;
                }
            }
        }
        self.terms = acc
            .into_iter()
            .filter_map(|(m, c)| {
                let r = (c % p) as u32;
                (r != 0).then_some((m, r))
            })
            .collect();
    }
}

pub(crate) fn assert_same(a: &Config, b: &Config) {
    if let Err(e) = a.check(b) {
        panic!("{e}");
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, 1);
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, self.cfg.p() - 1);
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(self.cfg.p() - 1)
    }
}

/// Panics when the operands were built under different configurations;
/// use [`Poly::checked_mul`] to get an error instead.
impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_same(&self.cfg, &rhs.cfg);
        self.mul_unchecked(rhs)
    }
}
