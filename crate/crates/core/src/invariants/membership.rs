use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::dickson::{dickson_classes, DicksonSet};
use crate::algebra::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::linalg::{solve_combination, SparseVec};

/// The two Dickson rings: `D_n = F_p[c_{n,n-1}, ..., c_{n,0}]` and
/// `SD_n = F_p[e_n, c_{n,n-1}, ..., c_{n,1}]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DicksonRing {
    D,
    SD,
}

impl FromStr for DicksonRing {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "d" => Ok(DicksonRing::D),
            "sd" => Ok(DicksonRing::SD),
            _ => Err(Error::Invalid(format!(
                "unknown ring {s:?}; expected d or sd"
            ))),
        }
    }
}

impl fmt::Display for DicksonRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DicksonRing::D => "D",
            DicksonRing::SD => "SD",
        })
    }
}

/// `x = sum_k coeff_k * prod_i gen_i^{exps_k[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub generators: Vec<String>,
    pub terms: Vec<DecompositionTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionTerm {
    pub coeff: u32,
    pub exps: Vec<u32>,
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut factors: Vec<String> = t
                    .exps
                    .iter()
                    .zip(&self.generators)
                    .filter(|(e, _)| **e > 0)
                    .map(|(e, g)| {
                        if *e == 1 {
                            g.clone()
                        } else {
                            format!("{g}^{e}")
                        }
                    })
                    .collect();
                if t.coeff != 1 || factors.is_empty() {
                    factors.insert(0, t.coeff.to_string());
                }
                factors.join("*")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Member(Decomposition),
    NotMember,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

impl DicksonSet {
    /// Generators of the ring with their names and cohomological degrees.
    pub fn ring_generators(&self, ring: DicksonRing) -> Vec<(String, Poly, u64)> {
        let n = self.config().n();
        let mut out = Vec::new();
        if ring == DicksonRing::SD {
            out.push((format!("e{n}"), self.e().clone(), self.e_degree()));
        }
        let lowest = if ring == DicksonRing::D { 0 } else { 1 };
        for i in (lowest..n).rev() {
            out.push((format!("c{n}_{i}"), self.c(i).clone(), self.c_degree(i)));
        }
        out
    }

    /// Writes a homogeneous polynomial in the generators of `ring`, or
    /// reports that it is not in the ring.
    pub fn membership(&self, x: &Poly, ring: DicksonRing) -> Result<Membership> {
        let cfg = self.config();
        cfg.check(&x.config())?;
        if !x.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let gens = self.ring_generators(ring);
        let names: Vec<String> = gens.iter().map(|g| g.0.clone()).collect();
        let Some(target_degree) = x.top_degree() else {
            return Ok(Membership::Member(Decomposition {
                generators: names,
                terms: Vec::new(),
            }));
        };
        let degrees: Vec<u64> = gens.iter().map(|g| g.2).collect();
        let mut exponent_vectors = Vec::new();
        compositions(
            &degrees,
            target_degree,
            &mut vec![0; degrees.len()],
            0,
            &mut exponent_vectors,
        );

        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one(cfg)]; gens.len()];
        let mut index: FxHashMap<Monomial, usize> = FxHashMap::default();
        let to_vec = |f: &Poly, index: &mut FxHashMap<Monomial, usize>| {
            let pairs: Vec<(usize, u32)> = f
                .terms()
                .map(|(m, c)| {
                    let next = index.len();
                    (*index.entry(m).or_insert(next), c)
                })
                .collect();
            SparseVec::from_pairs(&cfg, pairs)
        };
        let mut columns = Vec::with_capacity(exponent_vectors.len());
        for exps in &exponent_vectors {
            let mut prod = Poly::one(cfg);
            for (i, &e) in exps.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &gens[i].1;
                    powers[i].push(next);
                }
                prod = &prod * &powers[i][e as usize];
            }
            columns.push(to_vec(&prod, &mut index));
        }
        let target = to_vec(x, &mut index);
        Ok(match solve_combination(&cfg, &columns, &target) {
            Some(coeffs) => Membership::Member(Decomposition {
                generators: names,
                terms: coeffs
                    .into_iter()
                    .zip(exponent_vectors)
                    .filter(|(c, _)| *c != 0)
                    .map(|(coeff, exps)| DecompositionTerm { coeff, exps })
                    .collect(),
            }),
            None => Membership::NotMember,
        })
    }

    /// Evaluates a decomposition back to a polynomial.
    pub fn evaluate(&self, ring: DicksonRing, d: &Decomposition) -> Poly {
        let cfg = self.config();
        let gens = self.ring_generators(ring);
        let mut out = Poly::zero(cfg);
        for t in &d.terms {
            let mut prod = Poly::one(cfg);
            for (g, &e) in gens.iter().zip(&t.exps) {
                prod = &prod * &g.1.pow(e as u64);
            }
            out.add_scaled(&prod, t.coeff);
        }
        out
    }
}

/// All `a` with `sum_i a_i * degrees[i] == target`.
fn compositions(
    degrees: &[u64],
    target: u64,
    cur: &mut Vec<u32>,
    k: usize,
    out: &mut Vec<Vec<u32>>,
) {
    if k == degrees.len() {
        if target == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let d = degrees[k];
    for a in 0..=target / d {
        cur[k] = a as u32;
        compositions(degrees, target - a * d, cur, k + 1, out);
    }
    cur[k] = 0;
}

/// Membership of a homogeneous polynomial in `D_n` or `SD_n`.
pub fn membership_dickson(x: &Poly, ring: DicksonRing) -> Result<Membership> {
    dickson_classes(x.config())?.membership(x, ring)
}

pub(crate) fn count_compositions(degrees: &[u64], target: u64) -> u64 {
    let mut ways = vec![0u64; target as usize + 1];
    ways[0] = 1;
    for &d in degrees {
        for s in d as usize..=target as usize {
            ways[s] += ways[s - d as usize];
        }
    }
    ways[target as usize]
}
