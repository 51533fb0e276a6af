use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;

use super::dickson::{c_degree, e_degree};
use super::groups::GroupSpec;
use super::membership::count_compositions;
use crate::algebra::{Config, ExtClass, Monomial, Poly, Subset};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};

/// Column bound for the per-degree linear algebra.
pub const MAX_COLUMNS: usize = 200_000;

/// The four invariant rings with known free-module structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InvariantRing {
    /// `F_p[t]^{SL_n}`.
    SD,
    /// `F_p[t]^{GL_n}`.
    D,
    /// `H*(BA_n)^{SL_n}`.
    SM,
    /// `H*(BA_n)^{GL_n}`.
    M,
}

impl FromStr for InvariantRing {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sd" => Ok(InvariantRing::SD),
            "d" => Ok(InvariantRing::D),
            "sm" => Ok(InvariantRing::SM),
            "m" => Ok(InvariantRing::M),
            _ => Err(Error::Invalid(format!("unknown ring {s:?}"))),
        }
    }
}

impl fmt::Display for InvariantRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Dimension and echelonized basis of the invariants in one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSpace {
    pub degree: u64,
    pub basis: Vec<ExtClass>,
}

impl InvariantSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Monomials of polynomial degree `deg` in `n` variables, descending grlex.
pub fn monomials_of_degree(n: usize, deg: u32) -> Vec<Monomial> {
    fn go(n: usize, k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k + 1 == n {
            cur[k] = left;
            out.push(Monomial::new(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[k] = e;
            go(n, k + 1, left - e, cur, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    go(n, 0, deg, &mut vec![0; n], &mut out);
    out
}

fn subsets_of_size(n: usize, s: usize) -> Vec<Subset> {
    (0u16..1 << n)
        .filter(|b| b.count_ones() as usize == s)
        .map(|b| Subset::from_indices(&(0..n).filter(|k| b & (1 << k) != 0).collect::<Vec<_>>()))
        .collect()
}

/// The degree-`d` invariants of the whole algebra under `group`: the common
/// kernel of `g - 1` over the generators.
///
/// The action preserves exterior degree, so each exterior degree is solved
/// separately.
pub fn invariant_dimension(cfg: Config, d: u64, group: &GroupSpec) -> Result<InvariantSpace> {
    let n = cfg.n();
    let exterior_degrees: Vec<usize> = (0..=n.min(d as usize))
        .filter(|s| (d - *s as u64).is_multiple_of(2))
        .collect();
    let total: u128 = exterior_degrees
        .iter()
        .map(|&s| {
            binomial(n as u64, s as u64) * binomial((d - s as u64) / 2 + n as u64 - 1, n as u64 - 1)
        })
        .sum();
    if total > MAX_COLUMNS as u128 {
        return Err(Error::ResourceLimit(format!(
            "degree {d} needs {total} columns (limit {MAX_COLUMNS})"
        )));
    }
    let blocks: Vec<Vec<(Subset, Monomial)>> = exterior_degrees
        .into_iter()
        .map(|s| {
            let monos = monomials_of_degree(n, ((d - s as u64) / 2) as u32);
            subsets_of_size(n, s)
                .into_iter()
                .flat_map(|sub| monos.iter().map(move |m| (sub, *m)))
                .collect()
        })
        .collect();

    let mut basis = Vec::new();
    for cols in blocks {
        let index: FxHashMap<(Subset, Monomial), usize> =
            cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut ech = Echelon::new(cfg);
        for g in group.generators() {
            // rows of (g - 1), keyed by output coordinate
            let mut rows: FxHashMap<(Subset, Monomial), Vec<(usize, u32)>> = FxHashMap::default();
            for (j, &(sub, m)) in cols.iter().enumerate() {
                let x = ExtClass::from_part(sub, Poly::term(cfg, m, 1));
                let img = &g.apply(&x) - &x;
                for (s2, m2, c) in img.sorted_terms() {
                    rows.entry((s2, m2)).or_default().push((j, c));
                }
            }
            let mut keys: Vec<_> = rows.keys().copied().collect();
            keys.sort_by_key(|k| index[k]);
            for k in keys {
                ech.insert(SparseVec::from_pairs(&cfg, rows.remove(&k).unwrap()));
            }
        }
        for v in ech.kernel_basis(cols.len()) {
            let mut x = ExtClass::zero(cfg);
            for &(j, c) in v.entries() {
                let (sub, m) = cols[j];
                x.add_term(sub, m, c);
            }
            basis.push(normalize_leading(x));
        }
    }
    Ok(InvariantSpace { degree: d, basis })
}

fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Scales so that the first term in canonical order has coefficient 1.
pub fn normalize_leading(x: ExtClass) -> ExtClass {
    match x.sorted_terms().first() {
        Some(&(_, _, c)) => {
            let inv = x.config().inv(c).expect("nonzero");
            x.scale(inv)
        }
        None => x,
    }
}

/// Degrees of the module generators and of the polynomial generators of the
/// base ring for each of the four free-module descriptions.
pub fn free_module_data(cfg: &Config, ring: InvariantRing) -> (Vec<u64>, Vec<u64>) {
    let n = cfg.n();
    let p = cfg.p() as u64;
    let e = e_degree(cfg);
    let base = match ring {
        InvariantRing::SD | InvariantRing::SM => std::iter::once(e)
            .chain((1..n).map(|i| c_degree(cfg, i)))
            .collect(),
        InvariantRing::D | InvariantRing::M => (0..n).map(|i| c_degree(cfg, i)).collect(),
    };
    // Q_{i_1}...Q_{i_r}(dt_1...dt_n) with 0 <= i_1 < ... < i_r <= n-1, 1 <= r <= n-1
    let q_words = (1u32..(1 << n) - 1).map(|mask| {
        n as u64
            + (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| 2 * p.pow(i as u32) - 1)
                .sum::<u64>()
    });
    let module = match ring {
        InvariantRing::SD | InvariantRing::D => vec![0],
        InvariantRing::SM => std::iter::once(0)
            .chain(std::iter::once(n as u64))
            .chain(q_words)
            .collect(),
        InvariantRing::M => {
            let shift = (p - 2) * e;
            std::iter::once(0)
                .chain(std::iter::once(shift + n as u64))
                .chain(q_words.map(|d| shift + d))
                .collect()
        }
    };
    (module, base)
}

/// Coefficient of `q^d` in the Hilbert series of the stated free-module
/// structure.
pub fn predicted_dimension(cfg: &Config, d: u64, ring: InvariantRing) -> u64 {
    let (module, base) = free_module_data(cfg, ring);
    module
        .iter()
        .filter(|&&g| g <= d)
        .map(|&g| count_compositions(&base, d - g))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{group_generators, GroupKind};

    #[test]
    fn monomial_enumeration() {
        let ms = monomials_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0].exps(3), vec![2, 0, 0]);
        assert_eq!(ms[5].exps(3), vec![0, 0, 2]);
        assert_eq!(monomials_of_degree(2, 0), vec![Monomial::ONE]);
    }

    #[test]
    fn degree_zero_and_two() {
        let cfg = Config::new(3, 2).unwrap();
        let sl = group_generators(cfg, GroupKind::SL);
        let sp0 = invariant_dimension(cfg, 0, &sl).unwrap();
        assert_eq!(sp0.basis, vec![ExtClass::one(cfg)]);
        let sp2 = invariant_dimension(cfg, 2, &sl).unwrap();
        assert_eq!(sp2.basis, vec![ExtClass::top_exterior(cfg)]);
    }

    #[test]
    fn predicted_small_degrees() {
        let cfg = Config::new(3, 2).unwrap();
        assert_eq!(predicted_dimension(&cfg, 2, InvariantRing::SM), 1);
        assert_eq!(predicted_dimension(&cfg, 3, InvariantRing::SM), 1);
        assert_eq!(predicted_dimension(&cfg, 1, InvariantRing::SM), 0);
        assert_eq!(predicted_dimension(&cfg, 0, InvariantRing::M), 1);
        // D_2 in degree 16: c_{2,1}^... deg 12 and 16: only c_{2,0}
        assert_eq!(predicted_dimension(&cfg, 16, InvariantRing::D), 1);
    }

    #[test]
    fn column_guard() {
        let cfg = Config::new(97, 4).unwrap();
        let sl = group_generators(cfg, GroupKind::SL);
        assert!(matches!(
            invariant_dimension(cfg, 400, &sl),
            Err(Error::ResourceLimit(_))
        ));
    }
}
