use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::algebra::{Config, ExtClass, LinearSubst, Poly, WeightVector};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    SL,
    GL,
}

impl FromStr for GroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sl" => Ok(GroupKind::SL),
            "gl" => Ok(GroupKind::GL),
            _ => Err(Error::Invalid(format!(
                "unknown group {s:?}; expected sl or gl"
            ))),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::SL => "SL",
            GroupKind::GL => "GL",
        })
    }
}

/// A finite matrix group given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    kind: GroupKind,
    generators: Vec<LinearSubst>,
}

impl GroupSpec {
    pub fn new(kind: GroupKind, generators: Vec<LinearSubst>) -> Self {
        GroupSpec { kind, generators }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn generators(&self) -> &[LinearSubst] {
        &self.generators
    }

    /// The same group generated by the inverse transposes, i.e. the action
    /// under the opposite side convention.
    pub fn inverse_transposed(&self) -> GroupSpec {
        GroupSpec {
            kind: self.kind,
            generators: self
                .generators
                .iter()
                .map(|g| g.inverse().transpose())
                .collect(),
        }
    }
}

/// SL: all elementary transvections `E_ij(1)`, `i != j` (none for `n = 1`).
/// GL: the same plus `diag(g, 1, ..., 1)` for the least primitive root `g`.
pub fn group_generators(cfg: Config, kind: GroupKind) -> GroupSpec {
    let n = cfg.n();
    let mut generators = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                generators.push(LinearSubst::transvection(cfg, i, j, 1));
            }
        }
    }
    if kind == GroupKind::GL {
        let mut diag = vec![1; n];
        diag[0] = cfg.primitive_root();
        generators.push(LinearSubst::diagonal(cfg, &diag).expect("unit diagonal"));
    }
    GroupSpec { kind, generators }
}

/// Whether every generator fixes `x`.
pub fn is_invariant(x: &ExtClass, group: &GroupSpec) -> bool {
    group.generators.iter().all(|g| g.apply(x) == *x)
}

pub fn is_invariant_poly(x: &Poly, group: &GroupSpec) -> bool {
    group.generators.iter().all(|g| g.apply_poly(x) == *x)
}

/// Size of the orbit of a nonzero vector, by breadth-first closure.
pub fn orbit_size(cfg: Config, group: &GroupSpec, start: &WeightVector) -> Result<usize> {
    Ok(orbit(cfg, group, start)?.len())
}

pub fn orbit(
    cfg: Config,
    group: &GroupSpec,
    start: &WeightVector,
) -> Result<HashSet<WeightVector>> {
    if start.coords().len() != cfg.n() {
        return Err(Error::DimensionMismatch {
            expected: cfg.n(),
            found: start.coords().len(),
        });
    }
    if start.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(v) = queue.pop_front() {
        for g in &group.generators {
            let w = g.apply_vector(&v);
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    Ok(seen)
}
