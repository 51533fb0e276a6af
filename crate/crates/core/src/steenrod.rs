//! Milnor operations `Q_i` and reduced powers `P^j`.
//!
//! On generators: `Q_i(dt_k) = t_k^{p^i}`, `Q_i(t_k) = 0`, `P^1(t_k) = t_k^p`,
//! `P^j(t_k) = 0` for `j >= 2` and `P^j(dt_k) = 0` for `j >= 1`. `Q_i` extends
//! as an odd derivation, `P^j` by the Cartan formula.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{Config, ExtClass, Monomial, Poly};
use crate::error::{Error, Result};

/// `Q_i(x)`, of degree `2p^i - 1`.
///
/// On `f * dt_{i_1} ... dt_{i_r}` this is
/// `sum_j (-1)^{j-1} f t_{i_j}^{p^i} dt_{i_1} ... (omit j) ... dt_{i_r}`.
/// Pure polynomial classes are killed.
///
/// # Panics
///
/// If `p^i` does not fit in a 32-bit exponent.
pub fn milnor_q(i: u32, x: &ExtClass) -> ExtClass {
    let cfg = x.config();
    let e = cfg
        .checked_power(i)
        .filter(|&e| e <= u32::MAX as u64)
        .unwrap_or_else(|| panic!("p^{i} overflows the exponent range for {cfg}"))
        as u32;
    let minus_one = cfg.p() - 1;
    let mut out = ExtClass::zero(cfg);
    for (s, f) in x.parts() {
        for (pos, k) in s.indices().enumerate() {
            let g = f.shift(Monomial::var_pow(k, e));
            out.add_part(s.without(k), &g, if pos % 2 == 0 { 1 } else { minus_one });
        }
    }
    out
}

/// Per-variable factors of the total power of `t_k^a`:
/// `(t + t^p)^a = sum_i C(a, i) t^{a + i(p-1)}`, as `(i, C(a,i) mod p)`.
fn variable_factors(cfg: &Config, a: u32, max_i: u64) -> Vec<(u32, u32)> {
    (0..=(a as u64).min(max_i))
        .filter_map(|i| {
            let c = cfg.binomial(a as u64, i);
            (c != 0).then_some((i as u32, c))
        })
        .collect()
}

fn reduced_power_monomial(cfg: &Config, j: u64, m: Monomial, out: &mut Poly) {
    let n = cfg.n();
    let step = cfg.p() - 1;
    let factors: Vec<Vec<(u32, u32)>> =
        (0..n).map(|k| variable_factors(cfg, m.exp(k), j)).collect();
    // largest amount the variables after k can still absorb
    let mut tail = vec![0u64; n + 1];
    for k in (0..n).rev() {
        tail[k] = tail[k + 1] + factors[k].last().map_or(0, |f| f.0 as u64);
    }

    /// Configuration, per-variable factors, suffix capacities, `p - 1`, the input monomial.
    type Ctx<'a> = (&'a Config, &'a [Vec<(u32, u32)>], &'a [u64], u32, Monomial);

    fn go(k: usize, left: u64, coeff: u32, mono: Monomial, ctx: Ctx<'_>, out: &mut Poly) {
        let (cfg, factors, tail, step, m) = ctx;
        if k == factors.len() {
            if left == 0 {
                out.add_term(mono, coeff);
            }
            return;
        }
        if left > tail[k] {
            return;
        }
        for &(i, c) in &factors[k] {
            if i as u64 > left {
                break;
            }
            let e = m.exp(k) + i * step;
            go(
                k + 1,
                left - i as u64,
                cfg.mul(coeff, c),
                mono * Monomial::var_pow(k, e),
                ctx,
                out,
            );
        }
    }

    go(0, j, 1, Monomial::ONE, (cfg, &factors, &tail, step, m), out);
}

/// `P^j(x)` on a polynomial.
pub fn reduced_power_poly(j: u64, f: &Poly) -> Poly {
    let cfg = f.config();
    let mut out = Poly::zero(cfg);
    for (m, c) in f.terms() {
        let mut piece = Poly::zero(cfg);
        reduced_power_monomial(&cfg, j, m, &mut piece);
        out.add_scaled(&piece, c);
    }
    out
}

/// `P^j(x)`, of degree `2j(p-1)`. `P^0` is the identity.
pub fn reduced_power(j: u64, x: &ExtClass) -> ExtClass {
    let mut out = ExtClass::zero(x.config());
    for (s, f) in x.parts() {
        out.add_part(s, &reduced_power_poly(j, f), 1);
    }
    out
}

/// `[P^0 x, P^1 x, ...]` for every `j` with `2j(p-1) <= max_degree`.
///
/// Computed from the total operation: for each monomial the product over
/// variables of `(t + t^p)^a`, graded by `j`.
pub fn total_reduced_power(x: &ExtClass, max_degree: u64) -> Vec<ExtClass> {
    let cfg = x.config();
    let step = 2 * (cfg.p() as u64 - 1);
    let jmax = max_degree / step;
    let mut out: Vec<ExtClass> = (0..=jmax).map(|_| ExtClass::zero(cfg)).collect();
    for (s, f) in x.parts() {
        let mut graded: Vec<Poly> = (0..=jmax).map(|_| Poly::zero(cfg)).collect();
        for (m, c) in f.terms() {
            // graded product of the per-variable series, truncated at jmax
            let mut acc: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); jmax as usize + 1];
            acc[0].push((Monomial::ONE, c));
            for k in 0..cfg.n() {
                let a = m.exp(k);
                let fac = variable_factors(&cfg, a, jmax);
                let mut next: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); jmax as usize + 1];
                for (j0, row) in acc.iter().enumerate() {
                    for &(mono, coeff) in row {
                        for &(i, b) in &fac {
                            let j = j0 + i as usize;
                            if j as u64 > jmax {
                                break;
                            }
                            let e = a + i * (cfg.p() - 1);
                            next[j].push((mono * Monomial::var_pow(k, e), cfg.mul(coeff, b)));
                        }
                    }
                }
                acc = next;
            }
            for (j, row) in acc.into_iter().enumerate() {
                for (mono, coeff) in row {
                    graded[j].add_term(mono, coeff);
                }
            }
        }
        for (j, g) in graded.iter().enumerate() {
            out[j].add_part(s, g, 1);
        }
    }
    out
}

/// One letter of an operation word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpAtom {
    /// Milnor primitive `Q_i`.
    Q(u32),
    /// Reduced power `P^j`.
    P(u64),
}

impl OpAtom {
    pub fn apply(&self, x: &ExtClass) -> ExtClass {
        match *self {
            OpAtom::Q(i) => milnor_q(i, x),
            OpAtom::P(j) => reduced_power(j, x),
        }
    }

    /// Degree shift of the operation at prime `p`.
    pub fn degree(&self, p: u32) -> u64 {
        match *self {
            OpAtom::Q(i) => 2 * (p as u64).pow(i) - 1,
            OpAtom::P(j) => 2 * j * (p as u64 - 1),
        }
    }
}

/// A composite operation such as `Q_0 Q_1 P^2`, written left to right and
/// applied right to left.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OpWord(pub Vec<OpAtom>);

impl OpWord {
    pub fn new(atoms: Vec<OpAtom>) -> Self {
        OpWord(atoms)
    }

    /// `Q_0 Q_1 ... Q_{n-1}`.
    pub fn milnor_prefix(n: u32) -> Self {
        OpWord((0..n).map(OpAtom::Q).collect())
    }

    pub fn apply(&self, x: &ExtClass) -> ExtClass {
        self.0
            .iter()
            .rev()
            .fold(x.clone(), |acc, op| op.apply(&acc))
    }
}

pub fn apply_word(w: &OpWord, x: &ExtClass) -> ExtClass {
    w.apply(x)
}

impl FromStr for OpWord {
    type Err = Error;

    /// Comma-separated atoms, e.g. `"Q0,Q1,P2"`. The empty string is the identity.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(OpWord::default());
        }
        let mut pos = 0;
        let mut atoms = Vec::new();
        for raw in s.split(',') {
            let atom = raw.trim();
            let bad = || Error::Syntax {
                pos,
                msg: format!("bad operation {atom:?}; expected Q<i> or P<j>"),
            };
            let (head, digits) = atom.split_at(atom.len().min(1));
            let idx: u64 = digits.parse().map_err(|_| bad())?;
            atoms.push(match head {
                "Q" | "q" => OpAtom::Q(u32::try_from(idx).map_err(|_| bad())?),
                "P" | "p" => OpAtom::P(idx),
                _ => return Err(bad()),
            });
            pos += raw.len() + 1;
        }
        Ok(OpWord(atoms))
    }
}

impl fmt::Display for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|a| match a {
                OpAtom::Q(i) => format!("Q{i}"),
                OpAtom::P(j) => format!("P{j}"),
            })
            .collect();
        f.write_str(&parts.join(","))
    }
}
