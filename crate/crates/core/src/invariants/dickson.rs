use std::collections::BTreeMap;

use serde_json::json;

use super::groups::{group_generators, is_invariant_poly, GroupKind};
use crate::algebra::{class_to_json, Config, ExtClass, Monomial, Poly, WeightVector};
use crate::error::{Error, Result};
use crate::steenrod::OpWord;

/// Largest `p^n` for which products over all of `V_n` are expanded.
pub const MAX_GROUP_ORDER: u64 = 400;

pub(crate) fn check_order(cfg: &Config) -> Result<u64> {
    let order = (cfg.p() as u64).pow(cfg.n() as u32);
    if order > MAX_GROUP_ORDER {
        return Err(Error::ResourceLimit(format!(
            "p^n = {order} exceeds {MAX_GROUP_ORDER}"
        )));
    }
    Ok(order)
}

/// A polynomial in `X` with coefficients in `F_p[t_1..t_n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XPoly {
    cfg: Config,
    coeffs: BTreeMap<u64, Poly>,
}

impl XPoly {
    pub fn zero(cfg: Config) -> Self {
        XPoly {
            cfg,
            coeffs: BTreeMap::new(),
        }
    }

    /// `X`.
    pub fn x(cfg: Config) -> Self {
        let mut out = Self::zero(cfg);
        out.add(1, &Poly::one(cfg));
        out
    }

    /// `X + c`.
    pub fn x_plus(c: &Poly) -> Self {
        let mut out = Self::x(c.config());
        out.add(0, c);
        out
    }

    fn add(&mut self, e: u64, f: &Poly) {
        let slot = self.coeffs.entry(e).or_insert_with(|| Poly::zero(self.cfg));
        slot.add_scaled(f, 1);
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: u64) -> Poly {
        self.coeffs
            .get(&e)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.cfg))
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn mul(&self, other: &XPoly) -> XPoly {
        let mut out = XPoly::zero(self.cfg);
        for (a, f) in &self.coeffs {
            for (b, g) in &other.coeffs {
                out.add(a + b, &(f * g));
            }
        }
        out
    }

    /// `self(X + c)`, expanded with binomial coefficients mod p.
    pub fn shift_by(&self, c: &Poly) -> XPoly {
        let cfg = self.cfg;
        let mut powers = vec![Poly::one(cfg)];
        let mut out = XPoly::zero(cfg);
        for (&k, a) in &self.coeffs {
            while powers.len() <= k as usize {
                let next = powers.last().unwrap() * c;
                powers.push(next);
            }
            for j in 0..=k {
                let b = cfg.binomial(k, j);
                if b != 0 {
                    out.add(j, &(a * &powers[(k - j) as usize]).scale(b));
                }
            }
        }
        out
    }
}

/// `f_n(X) = prod_{v in V_n} (X + v)`.
///
/// Built one variable at a time: `f_k(X) = prod_{l in F_p} f_{k-1}(X + l t_k)`.
pub fn dickson_polynomial(cfg: Config) -> Result<XPoly> {
    check_order(&cfg)?;
    let mut f = XPoly::x(cfg);
    for k in 0..cfg.n() {
        let t = Poly::var(cfg, k);
        let mut next = f.clone();
        for l in 1..cfg.p() {
            next = next.mul(&f.shift_by(&t.scale(l)));
        }
        f = next;
    }
    Ok(f)
}

/// `e_n` and the Dickson classes `c_{n,n-1}, ..., c_{n,0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DicksonSet {
    cfg: Config,
    e: Poly,
    /// `c[0] = c_{n,n-1}`, ..., `c[n-1] = c_{n,0}`.
    c: Vec<Poly>,
}

impl DicksonSet {
    pub fn config(&self) -> Config {
        self.cfg
    }

    /// The Moore class `e_n`.
    pub fn e(&self) -> &Poly {
        &self.e
    }

    /// `c_{n,i}` for `0 <= i < n`.
    pub fn c(&self, i: usize) -> &Poly {
        &self.c[self.cfg.n() - 1 - i]
    }

    /// `[c_{n,n-1}, ..., c_{n,0}]`.
    pub fn cs(&self) -> &[Poly] {
        &self.c
    }

    /// `2(p^n - 1)/(p - 1)`.
    pub fn e_degree(&self) -> u64 {
        e_degree(&self.cfg)
    }

    /// `2(p^n - p^i)`.
    pub fn c_degree(&self, i: usize) -> u64 {
        c_degree(&self.cfg, i)
    }

    /// `1 - c_{n,n-1} + ... + (-1)^n c_{n,0}`.
    pub fn alternating_sum(&self) -> Poly {
        let mut out = Poly::one(self.cfg);
        for (k, c) in self.c.iter().enumerate() {
            let sign = if k % 2 == 0 { self.cfg.p() - 1 } else { 1 };
            out.add_scaled(c, sign);
        }
        out
    }

    /// `{"p", "n", "e", "c": [c_{n,n-1}, ..., c_{n,0}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "p": self.cfg.p(),
            "n": self.cfg.n(),
            "e": class_to_json(&self.e.clone().into()),
            "c": self.c.iter().map(|c| class_to_json(&c.clone().into())).collect::<Vec<_>>(),
        })
    }
}

pub(crate) fn e_degree(cfg: &Config) -> u64 {
    let p = cfg.p() as u64;
    2 * (p.pow(cfg.n() as u32) - 1) / (p - 1)
}

pub(crate) fn c_degree(cfg: &Config, i: usize) -> u64 {
    let p = cfg.p() as u64;
    2 * (p.pow(cfg.n() as u32) - p.pow(i as u32))
}

/// The monomial `t_1 t_2^p ... t_n^{p^{n-1}}` whose coefficient in `e_n` is +1.
fn diagonal_monomial(cfg: &Config) -> Monomial {
    let exps: Vec<u32> = (0..cfg.n()).map(|i| cfg.p().pow(i as u32)).collect();
    Monomial::new(&exps)
}

/// `e_n` as the determinant of the matrix `(t_j^{p^i})`, `0 <= i < n`.
pub fn moore_class(cfg: Config) -> Poly {
    let n = cfg.n();
    let mut out = Poly::zero(cfg);
    for (perm, odd) in permutations(n) {
        let mut exps = vec![0u32; n];
        for (i, &j) in perm.iter().enumerate() {
            exps[j] = cfg.p().pow(i as u32);
        }
        out.add_term(Monomial::new(&exps), if odd { cfg.p() - 1 } else { 1 });
    }
    out
}

/// All permutations of `0..n` with their parity (`true` = odd).
fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (rest, odd) in permutations(n - 1) {
        // insert n-1 at position k; it passes over rest.len() - k elements
        for k in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(k, n - 1);
            out.push((v, odd ^ ((rest.len() - k) % 2 == 1)));
        }
    }
    out
}

/// Computes `f_n`, reads off the `c_{n,i}` and computes `e_n` from the
/// Milnor operations, then checks every structural identity of the set.
pub fn dickson_classes(cfg: Config) -> Result<DicksonSet> {
    let f = dickson_polynomial(cfg)?;
    let n = cfg.n();
    let p = cfg.p() as u64;
    let top = p.pow(n as u32);
    let fail = |msg: String| Err(Error::Consistency(format!("{cfg}: {msg}")));

    if f.coeff(top) != Poly::one(cfg) {
        return fail("f_n is not monic of degree p^n".into());
    }
    if let Some(e) = f
        .support()
        .find(|e| !(0..=n as u32).any(|i| p.pow(i) == *e))
    {
        return fail(format!("f_n has a nonzero coefficient at X^{e}"));
    }
    // (-1)^{n-i} c_{n,i} is the coefficient of X^{p^i}
    let c: Vec<Poly> = (0..n)
        .rev()
        .map(|i| {
            let a = f.coeff(p.pow(i as u32));
            if (n - i) % 2 == 1 {
                -&a
            } else {
                a
            }
        })
        .collect();

    let word = OpWord::milnor_prefix(n as u32);
    let raw = word.apply(&ExtClass::top_exterior(cfg));
    if !raw.is_polynomial() {
        return fail("Q_0...Q_{n-1}(dt_1...dt_n) has exterior terms".into());
    }
    let mut e = raw.polynomial_part();
    match e.coeff(&diagonal_monomial(&cfg)).residue() {
        1 => {}
        c if c == cfg.p() - 1 => e = -&e,
        c => return fail(format!("diagonal coefficient of e_n is {c}")),
    }

    let set = DicksonSet { cfg, e, c };
    validate(&set).map(|_| set)
}

fn validate(set: &DicksonSet) -> Result<()> {
    let cfg = set.cfg;
    let fail = |msg: String| Err(Error::Consistency(format!("{cfg}: {msg}")));
    if set.e.pow(cfg.p() as u64 - 1) != *set.c(0) {
        return fail("e_n^(p-1) != c_{n,0}".into());
    }
    if set.e.top_degree() != Some(set.e_degree()) || !set.e.is_homogeneous() {
        return fail("deg e_n".into());
    }
    for i in 0..cfg.n() {
        let ci = set.c(i);
        if ci.top_degree() != Some(set.c_degree(i)) || !ci.is_homogeneous() {
            return fail(format!("deg c_{{n,{i}}}"));
        }
    }
    let gl = group_generators(cfg, GroupKind::GL);
    for (i, c) in set.c.iter().enumerate() {
        if !is_invariant_poly(c, &gl) {
            return fail(format!("c_{{n,{}}} is not GL-invariant", cfg.n() - 1 - i));
        }
    }
    for g in gl.generators() {
        if g.apply_poly(&set.e) != set.e.scale(g.det()) {
            return fail("e_n does not transform by the determinant".into());
        }
    }
    Ok(())
}

/// `V_n \ {0}`.
pub(crate) fn nonzero_vectors(cfg: &Config) -> impl Iterator<Item = WeightVector> {
    WeightVector::all(cfg).filter(|v| !v.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_class;

    #[test]
    fn rank_one_at_three() {
        let cfg = Config::new(3, 1).unwrap();
        let f = dickson_polynomial(cfg).unwrap();
        let t = Poly::var(cfg, 0);
        // X(X + t)(X + 2t) = X^3 - t^2 X
        assert_eq!(f.coeff(3), Poly::one(cfg));
        assert_eq!(f.coeff(1), -&t.pow(2));
        assert_eq!(f.support().collect::<Vec<_>>(), vec![1, 3]);
        let d = dickson_classes(cfg).unwrap();
        assert_eq!(d.e(), &t);
        assert_eq!(d.cs(), &[t.pow(2)]);
    }

    #[test]
    fn rank_two_at_three() {
        let cfg = Config::new(3, 2).unwrap();
        let f = dickson_polynomial(cfg).unwrap();
        assert!(f.coeff(2).is_zero());
        let d = dickson_classes(cfg).unwrap();
        let e = parse_class("t1*t2^3 - t1^3*t2", cfg)
            .unwrap()
            .polynomial_part();
        assert_eq!(d.e(), &e);
        assert_eq!(d.c(0), &e.pow(2));
        assert_eq!(f.coeff(1), e.pow(2));
        assert_eq!(f.coeff(3), -d.c(1));
    }

    #[test]
    fn degrees_at_five_three() {
        let cfg = Config::new(5, 3).unwrap();
        assert_eq!(e_degree(&cfg), 62);
        assert_eq!(c_degree(&cfg, 0), 248);
        assert_eq!(c_degree(&cfg, 1), 240);
        assert_eq!(c_degree(&cfg, 2), 200);
    }

    #[test]
    fn moore_determinants() {
        let c32 = Config::new(3, 2).unwrap();
        assert_eq!(moore_class(c32).len(), 2);
        let c33 = Config::new(3, 3).unwrap();
        assert_eq!(moore_class(c33).len(), 6);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(3).iter().filter(|(_, odd)| *odd).count(), 3);
    }

    #[test]
    fn resource_guard() {
        let cfg = Config::new(11, 3).unwrap();
        assert!(matches!(
            dickson_polynomial(cfg),
            Err(Error::ResourceLimit(_))
        ));
    }
}
