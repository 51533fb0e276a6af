//! Characters of torus representations and their Chern series over `Z`.
//!
//! A character of `T^k` is a Laurent polynomial in `z_1..z_k` with
//! non-negative integer coefficients. After restricting to a circle, each
//! weight `m` contributes `1 + m u` to the total Chern class in
//! `H*(BT^1; Z) = Z[u]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A character `sum mult * z^exps` of a rank-`k` torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentChar {
    rank: usize,
    terms: BTreeMap<Vec<i32>, u64>,
}

impl LaurentChar {
    pub fn zero(rank: usize) -> Self {
        LaurentChar {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// The trivial one-dimensional character.
    pub fn one(rank: usize) -> Self {
        let mut out = Self::zero(rank);
        out.add_term(vec![0; rank], 1);
        out
    }

    /// `z_{k+1}^e + z_{k+1}^{-e}`.
    pub fn symmetric_pair(rank: usize, k: usize, e: i32) -> Self {
        let mut out = Self::zero(rank);
        for s in [e, -e] {
            let mut v = vec![0; rank];
            v[k] = s;
            out.add_term(v, 1);
        }
        out
    }

    pub fn add_term(&mut self, exps: Vec<i32>, mult: u64) {
        assert_eq!(
            exps.len(),
            self.rank,
            "exponent vector length must equal rank"
        );
        if mult > 0 {
            *self.terms.entry(exps).or_insert(0) += mult;
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], u64)> + '_ {
        self.terms.iter().map(|(e, m)| (e.as_slice(), *m))
    }

    pub fn multiplicity(&self, exps: &[i32]) -> u64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    /// Number of distinct weights.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn dimension(&self) -> u64 {
        self.terms.values().sum()
    }

    fn check_rank(&self, other: &LaurentChar) -> Result<()> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank,
                found: other.rank,
            })
        }
    }

    /// Direct sum.
    pub fn sum(&self, other: &LaurentChar) -> Result<LaurentChar> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, m) in other.terms() {
            out.add_term(e.to_vec(), m);
        }
        Ok(out)
    }

    /// Tensor product.
    pub fn product(&self, other: &LaurentChar) -> Result<LaurentChar> {
        self.check_rank(other)?;
        let mut out = LaurentChar::zero(self.rank);
        for (a, ma) in self.terms() {
            for (b, mb) in other.terms() {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ma * mb);
            }
        }
        Ok(out)
    }
}

/// `e_k(items)` as a character: the sum over `k`-subsets of products.
pub fn elementary_symmetric_char(k: usize, items: &[LaurentChar]) -> Result<LaurentChar> {
    let rank = items.first().map_or(0, LaurentChar::rank);
    if k > items.len() {
        return Err(Error::Invalid(format!("e_{k} of {} items", items.len())));
    }
    // e[j] after processing a prefix of the items
    let mut e: Vec<LaurentChar> = vec![LaurentChar::one(rank)];
    e.extend((0..k).map(|_| LaurentChar::zero(rank)));
    for item in items {
        if item.rank != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: item.rank,
            });
        }
        for j in (1..=k).rev() {
            let add = e[j - 1].product(item)?;
            e[j] = e[j].sum(&add)?;
        }
    }
    Ok(e.swap_remove(k))
}

/// `sum_{eps_1 ... eps_m = 1} z_1^{eps_1} ... z_m^{eps_m}`, `eps_r = +-1`;
/// the half-spin character of `Spin(2m)`.
pub fn spin_plus_char(m: usize) -> Result<LaurentChar> {
    if m == 0 || m > 12 {
        return Err(Error::ResourceLimit(format!(
            "spin character rank {m} outside 1..=12"
        )));
    }
    let mut out = LaurentChar::zero(m);
    for mask in 0u32..1 << m {
        if mask.count_ones() % 2 == 0 {
            let e = (0..m)
                .map(|i| if mask & (1 << i) != 0 { -1 } else { 1 })
                .collect();
            out.add_term(e, 1);
        }
    }
    Ok(out)
}

/// `e_2(z_1^2 + z_1^{-2}, ..., z_m^2 + z_m^{-2})`.
pub fn lambda2_char(m: usize) -> Result<LaurentChar> {
    let items: Vec<LaurentChar> = (0..m)
        .map(|k| LaurentChar::symmetric_pair(m, k, 2))
        .collect();
    elementary_symmetric_char(2, &items)
}

/// Restriction along the inclusion of the `keep`-th circle factor.
pub fn restrict_to_circle(chi: &LaurentChar, keep: usize) -> Result<LaurentChar> {
    if keep >= chi.rank {
        return Err(Error::Invalid(format!(
            "coordinate {keep} out of range for rank {}",
            chi.rank
        )));
    }
    let mut out = LaurentChar::zero(1);
    for (e, m) in chi.terms() {
        out.add_term(vec![e[keep]], m);
    }
    Ok(out)
}

/// A power series in `u` over `Z`, truncated after `u^trunc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn one(trunc: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); trunc + 1];
        coeffs[0] = BigInt::one();
        IntSeries { coeffs }
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Multiplies in place by `(1 + m u)`.
    fn mul_linear(&mut self, m: i64) {
        let m = BigInt::from(m);
        for i in (1..self.coeffs.len()).rev() {
            let add = &self.coeffs[i - 1] * &m;
            self.coeffs[i] += add;
        }
    }

    pub fn mul(&self, other: &IntSeries) -> IntSeries {
        let trunc = self.trunc().min(other.trunc());
        let mut coeffs = vec![BigInt::zero(); trunc + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(trunc + 1) {
            for (j, b) in other.coeffs.iter().enumerate().take(trunc + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        IntSeries { coeffs }
    }

    /// Coefficients as JSON numbers, or strings when outside the `i64` range.
    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(bigint_json).collect())
    }
}

fn bigint_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// `prod (1 + m u)^{mult}` over the weights of a circle character.
pub fn chern_series(chi: &LaurentChar, trunc: usize) -> Result<IntSeries> {
    if chi.rank != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: chi.rank,
        });
    }
    if trunc < 2 {
        return Err(Error::Invalid("truncation must be at least 2".into()));
    }
    let mut out = IntSeries::one(trunc);
    for (e, mult) in chi.terms() {
        if e[0] != 0 {
            for _ in 0..mult {
                out.mul_linear(e[0] as i64);
            }
        }
    }
    Ok(out)
}

/// Exponent of `p` in a nonzero integer.
pub fn p_adic_valuation(x: &BigInt, p: u32) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    while (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    Some(v)
}

/// The second Chern class of the adjoint representation of `E_8`, computed
/// on the circle `T^1 -> T^8 -> Spin(16) -> E_8` through the splitting
/// `lambda^2 + Delta^+`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E8AdjointReport {
    pub p: u32,
    pub c2: BigInt,
    pub valuation: u32,
    /// `c2 / p`, a unit of `Z_(p)`.
    pub gamma: BigInt,
    pub gamma_mod_p: u32,
    pub series: IntSeries,
    /// Dimension of the `lambda^2` character as given by `e_2`; the eight
    /// zero weights of the Cartan part are absent.
    pub lambda2_dim: u64,
    pub spin_dim: u64,
    pub lambda2_restricted: LaurentChar,
    pub spin_restricted: LaurentChar,
}

impl E8AdjointReport {
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "c2": bigint_json(&self.c2),
            "valuation": self.valuation,
            "gamma": bigint_json(&self.gamma),
            "gamma_mod_p": self.gamma_mod_p,
            "series": self.series.to_json(),
            "lambda2_dim": self.lambda2_dim,
            "spin_dim": self.spin_dim,
        })
    }
}

pub fn e8_adjoint_check(p: u32, trunc: usize) -> Result<E8AdjointReport> {
    if p != 3 && p != 5 {
        return Err(Error::Invalid(format!("p must be 3 or 5, got {p}")));
    }
    let lambda2 = lambda2_char(8)?;
    let spin = spin_plus_char(8)?;
    let lambda2_restricted = restrict_to_circle(&lambda2, 0)?;
    let spin_restricted = restrict_to_circle(&spin, 0)?;
    let series = chern_series(&lambda2_restricted.sum(&spin_restricted)?, trunc)?;
    let c2 = series.coeff(2);
    if c2 != BigInt::from(-120) {
        return Err(Error::Consistency(format!("c_2 = {c2}, expected -120")));
    }
    let valuation = p_adic_valuation(&c2, p).expect("c2 is nonzero");
    if valuation != 1 {
        return Err(Error::Consistency(format!(
            "v_{p}(c_2) = {valuation}, expected 1"
        )));
    }
    let gamma = &c2 / BigInt::from(p);
    let gamma_mod_p = (&gamma % BigInt::from(p) + BigInt::from(p)) % BigInt::from(p);
    Ok(E8AdjointReport {
        p,
        valuation,
        gamma_mod_p: gamma_mod_p.to_u32().expect("residue"),
        gamma,
        c2,
        series,
        lambda2_dim: lambda2_restricted.dimension(),
        spin_dim: spin_restricted.dimension(),
        lambda2_restricted,
        spin_restricted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e2_of_two_pairs() {
        let a = LaurentChar::symmetric_pair(2, 0, 1);
        let b = LaurentChar::symmetric_pair(2, 1, 1);
        let e2 = elementary_symmetric_char(2, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(e2.num_terms(), 4);
        for x in [1, -1] {
            for y in [1, -1] {
                assert_eq!(e2.multiplicity(&[x, y]), 1);
            }
        }
        assert_eq!(
            elementary_symmetric_char(1, &[a.clone(), b.clone()]).unwrap(),
            a.sum(&b).unwrap()
        );
        assert!(elementary_symmetric_char(3, &[a.clone(), b]).is_err());
        assert!(elementary_symmetric_char(2, &[a, LaurentChar::one(3)]).is_err());
    }

    #[test]
    fn spin_characters() {
        let s2 = spin_plus_char(2).unwrap();
        assert_eq!(s2.num_terms(), 2);
        assert_eq!(s2.multiplicity(&[1, 1]), 1);
        assert_eq!(s2.multiplicity(&[-1, -1]), 1);
        let s8 = spin_plus_char(8).unwrap();
        assert_eq!(s8.num_terms(), 128);
        let r = restrict_to_circle(&s8, 0).unwrap();
        assert_eq!(r.multiplicity(&[1]), 64);
        assert_eq!(r.multiplicity(&[-1]), 64);
        assert!(spin_plus_char(13).is_err());
    }

    #[test]
    fn lambda2_restriction() {
        let r = restrict_to_circle(&lambda2_char(8).unwrap(), 0).unwrap();
        assert_eq!(r.multiplicity(&[0]), 84);
        assert_eq!(r.multiplicity(&[2]), 14);
        assert_eq!(r.multiplicity(&[-2]), 14);
        assert_eq!(r.dimension(), 112);
        assert_eq!(restrict_to_circle(&r, 0).unwrap(), r);
    }

    #[test]
    fn simple_series() {
        let mut chi = LaurentChar::zero(1);
        chi.add_term(vec![1], 1);
        let s = chern_series(&chi, 3).unwrap();
        assert_eq!(s.coeffs(), &[1.into(), 1.into(), 0.into(), 0.into()]);
        assert!(chern_series(&LaurentChar::one(2), 4).is_err());
        assert!(chern_series(&chi, 1).is_err());
    }

    #[test]
    fn valuations() {
        assert_eq!(p_adic_valuation(&BigInt::from(-120), 2), Some(3));
        assert_eq!(p_adic_valuation(&BigInt::from(120), 3), Some(1));
        assert_eq!(p_adic_valuation(&BigInt::from(120), 5), Some(1));
        assert_eq!(p_adic_valuation(&BigInt::from(120), 7), Some(0));
        assert_eq!(p_adic_valuation(&BigInt::zero(), 7), None);
    }

    #[test]
    fn e8_report_json() {
        let r = e8_adjoint_check(3, 4).unwrap();
        assert_eq!(
            r.to_json().to_string(),
            r#"{"p":3,"c2":-120,"valuation":1,"gamma":-40,"gamma_mod_p":2,"series":[1,0,-120,0,7056],"lambda2_dim":112,"spin_dim":128}"#
        );
        assert_eq!(e8_adjoint_check(5, 4).unwrap().gamma_mod_p, 1);
        assert!(e8_adjoint_check(7, 4).is_err());
    }
}
