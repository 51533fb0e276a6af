use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::assert_same;
use super::{Config, Monomial, Poly, Scalar};
use crate::error::Result;

/// A set of exterior generators `dt_{i_1} ... dt_{i_r}` with `i_1 < ... < i_r`.
///
/// Bit `k` stands for `dt_{k+1}`; the canonical product order is ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u8);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_indices(indices: &[usize]) -> Self {
        Subset(indices.iter().fold(0u8, |acc, &k| acc | (1 << k)))
    }

    /// `{0, ..., n-1}`, i.e. `dt_1 ... dt_n`.
    pub fn full(n: usize) -> Self {
        Subset(((1u16 << n) - 1) as u8)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, k: usize) -> bool {
        self.0 & (1 << k) != 0
    }

    pub fn without(self, k: usize) -> Subset {
        Subset(self.0 & !(1 << k))
    }

    /// Zero-based indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..8).filter(move |k| self.0 & (1 << k) != 0)
    }

    /// Product `dt_self * dt_other` normalized to ascending order: the merged
    /// set and the sign `(-1)^{inversions}`, or `None` if the sets overlap.
    pub fn merge(self, other: Subset) -> Option<(Subset, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let inversions: u32 = other
            .indices()
            .map(|b| (self.0 >> b).count_ones() - u32::from(self.contains(b)))
            .sum();
        Some((Subset(self.0 | other.0), inversions % 2 == 1))
    }

    /// Lexicographic order of the ascending index lists.
    pub(crate) fn index_cmp(&self, other: &Subset) -> std::cmp::Ordering {
        self.indices().cmp(other.indices())
    }
}

/// An element of `F_p[t_1..t_n] (x) Lambda(dt_1..dt_n)`.
///
/// Stored as a map from exterior monomial to polynomial coefficient. A term
/// `f * dt_S` has cohomological degree `|S| + 2 deg f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtClass {
    cfg: Config,
    parts: BTreeMap<Subset, Poly>,
}

impl ExtClass {
    pub fn zero(cfg: Config) -> Self {
        ExtClass {
            cfg,
            parts: BTreeMap::new(),
        }
    }

    pub fn one(cfg: Config) -> Self {
        Poly::one(cfg).into()
    }

    /// `dt_{k+1}`.
    pub fn dt(cfg: Config, k: usize) -> Self {
        Self::dt_product(cfg, &[k])
    }

    /// `dt_S` for a set of zero-based indices, in ascending order.
    pub fn dt_product(cfg: Config, indices: &[usize]) -> Self {
        assert!(
            indices.iter().all(|&k| k < cfg.n()),
            "index out of range for {cfg}"
        );
        let s = Subset::from_indices(indices);
        assert_eq!(s.len(), indices.len(), "repeated exterior generator");
        Self::from_part(s, Poly::one(cfg))
    }

    /// `dt_1 dt_2 ... dt_n`.
    pub fn top_exterior(cfg: Config) -> Self {
        Self::from_part(Subset::full(cfg.n()), Poly::one(cfg))
    }

    /// `t_{k+1}`.
    pub fn t(cfg: Config, k: usize) -> Self {
        Poly::var(cfg, k).into()
    }

    pub fn from_part(s: Subset, f: Poly) -> Self {
        let mut out = ExtClass::zero(f.config());
        if !f.is_zero() {
            out.parts.insert(s, f);
        }
        out
    }

    #[inline]
    pub fn config(&self) -> Config {
        self.cfg
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (Subset, &Poly)> + '_ {
        self.parts.iter().map(|(s, f)| (*s, f))
    }

    pub fn part(&self, s: Subset) -> Option<&Poly> {
        self.parts.get(&s)
    }

    /// The coefficient of `dt_{empty}`.
    pub fn polynomial_part(&self) -> Poly {
        self.parts
            .get(&Subset::EMPTY)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.cfg))
    }

    pub fn is_polynomial(&self) -> bool {
        self.parts.keys().all(|s| s.is_empty())
    }

    pub fn num_terms(&self) -> usize {
        self.parts.values().map(Poly::len).sum()
    }

    pub fn coeff(&self, s: Subset, m: &Monomial) -> Scalar {
        self.parts.get(&s).map_or(Scalar(0), |f| f.coeff(m))
    }

    pub fn add_term(&mut self, s: Subset, m: Monomial, c: u32) {
        if c.is_multiple_of(self.cfg.p()) {
            return;
        }
        let f = self.parts.entry(s).or_insert_with(|| Poly::zero(self.cfg));
        f.add_term(m, c);
        if f.is_zero() {
            self.parts.remove(&s);
        }
    }

    /// `self += c * f * dt_s`.
    pub fn add_part(&mut self, s: Subset, f: &Poly, c: u32) {
        assert_same(&self.cfg, &f.config());
        let entry = self.parts.entry(s).or_insert_with(|| Poly::zero(self.cfg));
        entry.add_scaled(f, c);
        if entry.is_zero() {
            self.parts.remove(&s);
        }
    }

    pub fn add_scaled(&mut self, other: &ExtClass, c: u32) {
        assert_same(&self.cfg, &other.cfg);
        for (s, f) in other.parts() {
            self.add_part(s, f, c);
        }
    }

    pub fn scale(&self, c: u32) -> ExtClass {
        let mut out = ExtClass::zero(self.cfg);
        out.add_scaled(self, c);
        out
    }

    /// All terms `(subset, monomial, coefficient)` in canonical order:
    /// ascending degree, then descending graded-lex monomial, then subset.
    pub fn sorted_terms(&self) -> Vec<(Subset, Monomial, u32)> {
        let mut v: Vec<_> = self
            .parts
            .iter()
            .flat_map(|(s, f)| f.terms().map(move |(m, c)| (*s, m, c)))
            .collect();
        v.sort_by(|a, b| {
            term_degree(a.0, &a.1)
                .cmp(&term_degree(b.0, &b.1))
                .then(b.1.grlex_cmp(&a.1))
                .then(a.0.index_cmp(&b.0))
        });
        v
    }

    pub fn checked_mul(&self, other: &ExtClass) -> Result<ExtClass> {
        self.cfg.check(&other.cfg)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &ExtClass) -> ExtClass {
        let mut out = ExtClass::zero(self.cfg);
        for (sa, fa) in self.parts() {
            for (sb, fb) in other.parts() {
                if let Some((s, negative)) = sa.merge(sb) {
                    let prod = fa * fb;
                    out.add_part(s, &prod, if negative { self.cfg.p() - 1 } else { 1 });
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u64) -> ExtClass {
        if self.is_polynomial() {
            return self.polynomial_part().pow(e).into();
        }
        (0..e).fold(ExtClass::one(self.cfg), |acc, _| acc.mul_unchecked(self))
    }

    /// Degrees present, lowest and highest; `None` for zero.
    pub fn degree_range(&self) -> Option<(u64, u64)> {
        self.parts
            .iter()
            .filter_map(|(s, f)| {
                f.degree_range()
                    .map(|(lo, hi)| (s.len() as u64 + 2 * lo, s.len() as u64 + 2 * hi))
            })
            .reduce(|(a, b), (c, d)| (a.min(c), b.max(d)))
    }

    /// The single degree of a nonzero homogeneous class.
    pub fn degree(&self) -> Option<u64> {
        match self.degree_range() {
            Some((lo, hi)) if lo == hi => Some(lo),
            _ => None,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree_range().is_none_or(|(lo, hi)| lo == hi)
    }

    /// The sum of the terms of cohomological degree exactly `d`.
    pub fn homogeneous_part(&self, d: u64) -> ExtClass {
        let mut out = ExtClass::zero(self.cfg);
        for (s, f) in self.parts() {
            let r = s.len() as u64;
            if d >= r && (d - r).is_multiple_of(2) {
                let g = f.homogeneous_part(d - r);
                if !g.is_zero() {
                    out.parts.insert(s, g);
                }
            }
        }
        out
    }
}

pub(crate) fn term_degree(s: Subset, m: &Monomial) -> u64 {
    s.len() as u64 + 2 * m.degree()
}

impl From<Poly> for ExtClass {
    fn from(f: Poly) -> Self {
        ExtClass::from_part(Subset::EMPTY, f)
    }
}

impl Add for &ExtClass {
    type Output = ExtClass;
    fn add(self, rhs: &ExtClass) -> ExtClass {
        let mut out = self.clone();
        out.add_scaled(rhs, 1);
        out
    }
}

impl Sub for &ExtClass {
    type Output = ExtClass;
    fn sub(self, rhs: &ExtClass) -> ExtClass {
        let mut out = self.clone();
        out.add_scaled(rhs, self.cfg.p() - 1);
        out
    }
}

impl Neg for &ExtClass {
    type Output = ExtClass;
    fn neg(self) -> ExtClass {
        self.scale(self.cfg.p() - 1)
    }
}

/// Graded-commutative product. Panics on mixed configurations; see
/// [`ExtClass::checked_mul`].
impl Mul for &ExtClass {
    type Output = ExtClass;
    fn mul(self, rhs: &ExtClass) -> ExtClass {
        assert_same(&self.cfg, &rhs.cfg);
        self.mul_unchecked(rhs)
    }
}
