//! Chern classes of complex representations of `A_n = (Z/p)^n`.
//!
//! A representation is a direct sum of characters, and a character `v` in
//! `V_n` has total Chern class `1 + v`. Everything here therefore lives in
//! the polynomial part of the cohomology.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{Config, ExtClass, LinearSubst, Poly, WeightVector};
use crate::error::{Error, Result};
use crate::invariants::{
    check_order, group_generators, is_invariant_poly, moore_class, nonzero_vectors, GroupKind,
};
use crate::steenrod::{OpAtom, OpWord};

/// A representation of `A_n` as characters with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMultiset {
    cfg: Config,
    weights: BTreeMap<WeightVector, u64>,
}

impl WeightMultiset {
    pub fn new(cfg: Config) -> Self {
        WeightMultiset {
            cfg,
            weights: BTreeMap::new(),
        }
    }

    /// The trivial representation of dimension `dim`.
    pub fn trivial(cfg: Config, dim: u64) -> Self {
        let mut out = Self::new(cfg);
        out.add(WeightVector::zero(&cfg), dim);
        out
    }

    pub fn config(&self) -> Config {
        self.cfg
    }

    pub fn add(&mut self, v: WeightVector, mult: u64) {
        assert_eq!(v.coords().len(), self.cfg.n(), "weight length must be n");
        if mult > 0 {
            *self.weights.entry(v).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, v: &WeightVector) -> u64 {
        self.weights.get(v).copied().unwrap_or(0)
    }

    pub fn weights(&self) -> impl Iterator<Item = (&WeightVector, u64)> + '_ {
        self.weights.iter().map(|(v, m)| (v, *m))
    }

    pub fn dimension(&self) -> u64 {
        self.weights.values().sum()
    }

    pub fn direct_sum(&self, other: &WeightMultiset) -> WeightMultiset {
        let mut out = self.clone();
        for (v, m) in other.weights() {
            out.add(v.clone(), m);
        }
        out
    }

    /// `a` copies of `self`.
    pub fn repeat(&self, a: u64) -> WeightMultiset {
        let mut out = Self::new(self.cfg);
        for (v, m) in self.weights() {
            out.add(v.clone(), m * a);
        }
        out
    }

    /// The representation twisted by `g`; its weights are the images `v g`.
    pub fn act(&self, g: &LinearSubst) -> WeightMultiset {
        let mut out = Self::new(self.cfg);
        for (v, m) in self.weights() {
            out.add(g.apply_vector(v), m);
        }
        out
    }

    /// Parses the weights file format: one weight per line as `n`
    /// comma-separated residues, optionally followed by ` xM`; `#` starts a
    /// comment.
    pub fn parse(text: &str, cfg: Config) -> Result<Self> {
        let mut out = Self::new(cfg);
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::Weights { line: i + 1, msg };
            let (coords, mult) = match line.split_once(['x', 'X']) {
                Some((c, m)) => (
                    c.trim(),
                    m.trim()
                        .parse::<u64>()
                        .map_err(|_| bad(format!("bad multiplicity {:?}", m.trim())))?,
                ),
                None => (line, 1),
            };
            let coords: Vec<i64> = coords
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<i64>()
                        .map_err(|_| bad(format!("bad residue {:?}", c.trim())))
                })
                .collect::<Result<_>>()?;
            let v = WeightVector::new(&cfg, &coords).map_err(|e| bad(e.to_string()))?;
            out.add(v, mult);
        }
        Ok(out)
    }
}

impl FromStr for ImageCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pu" => Ok(ImageCase::PU),
            "rank3" => Ok(ImageCase::Rank3),
            _ => Err(Error::Invalid(format!(
                "unknown case {s:?}; expected pu or rank3"
            ))),
        }
    }
}

/// `prod_v (1 + v)^{m(v)}`. Its degree-`2i` part is `c_i`.
pub fn total_chern(rho: &WeightMultiset) -> Poly {
    let mut out = Poly::one(rho.cfg);
    for (v, m) in rho.weights() {
        if v.is_zero() {
            continue;
        }
        for _ in 0..m {
            out.mul_one_plus_linear(v.coords());
        }
    }
    out
}

/// `c_i(rho)`.
pub fn chern_class(rho: &WeightMultiset, i: u64) -> Poly {
    total_chern(rho).homogeneous_part(2 * i)
}

/// Every `v` in `V_n` with multiplicity one.
pub fn regular_representation(cfg: Config) -> Result<WeightMultiset> {
    check_order(&cfg)?;
    let mut out = WeightMultiset::new(cfg);
    for v in WeightVector::all(&cfg) {
        out.add(v, 1);
    }
    Ok(out)
}

/// A basis of `V_n` whose first member is `v`: `v` followed by the unit
/// vectors other than the first nonzero coordinate of `v`.
pub fn standard_extension(cfg: Config, v: &WeightVector) -> Result<LinearSubst> {
    let pivot = v
        .coords()
        .iter()
        .position(|&c| c != 0)
        .ok_or(Error::ZeroVector)?;
    let mut rows = vec![v.coords().iter().map(|&c| c as i64).collect::<Vec<_>>()];
    for k in (0..cfg.n()).filter(|&k| k != pivot) {
        let mut r = vec![0; cfg.n()];
        r[k] = 1;
        rows.push(r);
    }
    LinearSubst::new(cfg, &rows)
}

/// The largest `mu` with `(1 + v)^mu` dividing `f`, where `basis` is an
/// invertible matrix whose first row is `v`.
///
/// In the coordinates given by the rows of `basis`, `v` becomes `t_1` and
/// division by `1 + t_1` is univariate with coefficients in the other
/// variables.
pub fn factor_multiplicity(f: &Poly, v: &WeightVector, basis: &LinearSubst) -> Result<u64> {
    let cfg = f.config();
    cfg.check(&basis.config())?;
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    if basis.rows()[0] != v.coords() {
        return Err(Error::Invalid("first row of the basis must be v".into()));
    }
    if f.is_zero() {
        return Err(Error::ConstantTermNotOne);
    }
    let g = basis.inverse().apply_poly(f);
    let mut coeffs = g.coefficients_in(0);
    let mut mu = 0;
    loop {
        // f(-1) == 0 exactly when 1 + t divides f
        let mut rem = Poly::zero(cfg);
        for (k, a) in coeffs.iter().enumerate() {
            rem.add_scaled(a, if k % 2 == 0 { 1 } else { cfg.p() - 1 });
        }
        if !rem.is_zero() {
            return Ok(mu);
        }
        let deg = coeffs.len() - 1;
        let mut q = vec![Poly::zero(cfg); deg];
        for k in (1..=deg).rev() {
            let upper = if k == deg {
                Poly::zero(cfg)
            } else {
                q[k].clone()
            };
            q[k - 1] = &coeffs[k] - &upper;
        }
        coeffs = q;
        mu += 1;
    }
}

/// `mu(v)` for every nonzero `v`: the exponent of `1 + v` in `f`.
pub fn divisibility_profile(f: &Poly, cfg: Config) -> Result<BTreeMap<WeightVector, u64>> {
    cfg.check(&f.config())?;
    if f.constant_term().residue() != 1 {
        return Err(Error::ConstantTermNotOne);
    }
    nonzero_vectors(&cfg)
        .map(|v| {
            let basis = standard_extension(cfg, &v)?;
            Ok((v.clone(), factor_multiplicity(f, &v, &basis)?))
        })
        .collect()
}

/// `Some(a)` if `f = c(reg)^a` exactly, `None` otherwise.
pub fn power_of_regular(f: &Poly, cfg: Config) -> Result<Option<u64>> {
    cfg.check(&f.config())?;
    if f.constant_term().residue() != 1 {
        return Err(Error::ConstantTermNotOne);
    }
    let order = check_order(&cfg)?;
    let top = f.degree_range().map_or(0, |r| r.1);
    if !top.is_multiple_of(order - 1) {
        return Ok(None);
    }
    let a = top / (order - 1);
    let reg = total_chern(&regular_representation(cfg)?);
    Ok((reg.pow(a) == *f).then_some(a))
}

/// Which restriction the obstruction is computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ImageCase {
    /// Rank 2, `x = Q_0 Q_1 x_2` with `x_2 -> dt_1 dt_2`.
    PU,
    /// Rank 3, `x = Q_1 Q_2 x_4` with `x_4 -> Q_0(dt_1 dt_2 dt_3)`.
    Rank3,
}

impl ImageCase {
    pub fn rank(self) -> usize {
        match self {
            ImageCase::PU => 2,
            ImageCase::Rank3 => 3,
        }
    }

    /// The case matching a rank, if any.
    pub fn for_rank(n: usize) -> Option<Self> {
        match n {
            2 => Some(ImageCase::PU),
            3 => Some(ImageCase::Rank3),
            _ => None,
        }
    }

    fn word(self) -> OpWord {
        match self {
            ImageCase::PU => OpWord::new(vec![OpAtom::Q(0), OpAtom::Q(1)]),
            ImageCase::Rank3 => OpWord::new(vec![OpAtom::Q(1), OpAtom::Q(2), OpAtom::Q(0)]),
        }
    }
}

impl fmt::Display for ImageCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ImageCase::PU => "pu",
            ImageCase::Rank3 => "rank3",
        })
    }
}

/// The image of `x` in the invariants of `A_n`: `Q_0 Q_1(dt_1 dt_2)` or
/// `Q_1 Q_2 Q_0(dt_1 dt_2 dt_3)`. Both are `+-e_n`.
pub fn image_generator(cfg: Config, case: ImageCase) -> Result<ExtClass> {
    if cfg.n() != case.rank() {
        return Err(Error::WrongRank {
            case: match case {
                ImageCase::PU => "pu",
                ImageCase::Rank3 => "rank3",
            },
            required: case.rank(),
            found: cfg.n(),
        });
    }
    let x = case.word().apply(&ExtClass::top_exterior(cfg));
    let e = moore_class(cfg);
    let poly = x.polynomial_part();
    if !x.is_polynomial() || (poly != e && poly != -&e) {
        return Err(Error::Consistency(format!("{case} image is not +-e_n")));
    }
    Ok(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ObstructionRow {
    pub a: u64,
    #[serde(rename = "in_D")]
    pub in_d: bool,
}

/// Upper bound on monomials of `x^a` examined by [`obstruction_table`].
pub const MAX_POWER_MONOMIALS: u64 = 2_000_000;

/// For `a = 1..=a_max`, whether `x^a` is `GL_n`-invariant, i.e. lies in `D_n`.
pub fn obstruction_table(cfg: Config, case: ImageCase, a_max: u64) -> Result<Vec<ObstructionRow>> {
    if a_max == 0 {
        return Err(Error::Invalid("a_max must be at least 1".into()));
    }
    let x = image_generator(cfg, case)?.polynomial_part();
    let deg = x.degree_range().map_or(0, |r| r.1) * a_max;
    let space = monomial_count(cfg.n() as u64, deg);
    if space > MAX_POWER_MONOMIALS as u128 {
        return Err(Error::ResourceLimit(format!(
            "x^{a_max} ranges over {space} monomials (limit {MAX_POWER_MONOMIALS})"
        )));
    }
    let gl = group_generators(cfg, GroupKind::GL);
    let mut power = Poly::one(cfg);
    Ok((1..=a_max)
        .map(|a| {
            power = &power * &x;
            ObstructionRow {
                a,
                in_d: is_invariant_poly(&power, &gl),
            }
        })
        .collect())
}

fn monomial_count(n: u64, deg: u64) -> u128 {
    (0..n - 1).fold(1u128, |acc, i| {
        acc * (deg + n - 1 - i) as u128 / (i + 1) as u128
    })
}
