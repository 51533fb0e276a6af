use std::fmt;

use rustc_hash::FxHashMap;

use super::poly::assert_same;
use super::{Config, ExtClass, Monomial, Poly, Subset};
use crate::error::{Error, Result};

/// An element `v` of `V_n = F_p{t_1, ..., t_n}`, also read as the linear
/// form `sum_k v_k t_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn new(cfg: &Config, coords: &[i64]) -> Result<Self> {
        if coords.len() != cfg.n() {
            return Err(Error::DimensionMismatch {
                expected: cfg.n(),
                found: coords.len(),
            });
        }
        Ok(WeightVector(
            coords.iter().map(|&c| cfg.reduce(c)).collect(),
        ))
    }

    pub fn zero(cfg: &Config) -> Self {
        WeightVector(vec![0; cfg.n()])
    }

    /// The `k`-th standard basis vector, i.e. `t_{k+1}`.
    pub fn unit(cfg: &Config, k: usize) -> Self {
        let mut v = vec![0; cfg.n()];
        v[k] = 1;
        WeightVector(v)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn linear_form(&self, cfg: Config) -> Poly {
        Poly::linear_form(cfg, &self.0)
    }

    pub fn scale(&self, cfg: &Config, c: u32) -> WeightVector {
        WeightVector(self.0.iter().map(|&x| cfg.mul(x, c)).collect())
    }

    /// All `p^n` vectors of `V_n`, in lexicographic order of coordinates.
    pub fn all(cfg: &Config) -> impl Iterator<Item = WeightVector> {
        let (p, n) = (cfg.p(), cfg.n());
        let total = (p as u64).pow(n as u32);
        (0..total).map(move |mut idx| {
            let mut v = vec![0; n];
            for k in (0..n).rev() {
                v[k] = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            WeightVector(v)
        })
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An invertible matrix `M` over `F_p` acting on classes by substitution:
/// `t_k -> sum_j M[k][j] t_j`, and the same for `dt_k`.
///
/// That is, `M` acts on the column vector `(t_1, ..., t_n)^T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearSubst {
    cfg: Config,
    entries: Vec<u32>,
}

impl LinearSubst {
    pub fn new(cfg: Config, rows: &[Vec<i64>]) -> Result<Self> {
        let n = cfg.n();
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().map(|&x| cfg.reduce(x)));
        }
        let g = LinearSubst { cfg, entries };
        if g.det() == 0 {
            return Err(Error::SingularMatrix(cfg.p()));
        }
        Ok(g)
    }

    pub fn identity(cfg: Config) -> Self {
        let n = cfg.n();
        let mut entries = vec![0; n * n];
        for k in 0..n {
            entries[k * n + k] = 1;
        }
        LinearSubst { cfg, entries }
    }

    /// The elementary transvection `E_ij(c)`: `t_i -> t_i + c t_j` (`i != j`).
    pub fn transvection(cfg: Config, i: usize, j: usize, c: u32) -> Self {
        assert!(i != j && i < cfg.n() && j < cfg.n());
        let mut g = Self::identity(cfg);
        let n = cfg.n();
        g.entries[i * n + j] = c % cfg.p();
        g
    }

    pub fn diagonal(cfg: Config, diag: &[u32]) -> Result<Self> {
        let n = cfg.n();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { diag[i] as i64 } else { 0 })
                    .collect()
            })
            .collect();
        Self::new(cfg, &rows)
    }

    #[inline]
    pub fn config(&self) -> Config {
        self.cfg
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cfg.n() + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries
            .chunks(self.cfg.n())
            .map(<[u32]>::to_vec)
            .collect()
    }

    pub fn det(&self) -> u32 {
        let cfg = self.cfg;
        let n = cfg.n();
        let mut a = self.entries.clone();
        let mut det = 1u32;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = cfg.neg(det);
            }
            let pv = a[col * n + col];
            det = cfg.mul(det, pv);
            let inv = cfg.inv(pv).unwrap();
            for r in col + 1..n {
                let f = cfg.mul(a[r * n + col], inv);
                if f != 0 {
                    for j in col..n {
                        a[r * n + j] = cfg.sub(a[r * n + j], cfg.mul(f, a[col * n + j]));
                    }
                }
            }
        }
        det
    }

    fn matmul(&self, other: &LinearSubst) -> LinearSubst {
        let cfg = self.cfg;
        let n = cfg.n();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for k in 0..n {
                    s = cfg.add(s, cfg.mul(self.entry(i, k), other.entry(k, j)));
                }
                entries[i * n + j] = s;
            }
        }
        LinearSubst { cfg, entries }
    }

    /// The substitution "apply `inner`, then `self`":
    /// `self.compose(inner).apply(x) == self.apply(&inner.apply(x))`.
    ///
    /// Substituting `t -> Ht` and then `t -> Gt` gives `t -> HGt`, so the
    /// matrix of the composite is `inner * self`.
    pub fn compose(&self, inner: &LinearSubst) -> LinearSubst {
        assert_same(&self.cfg, &inner.cfg);
        inner.matmul(self)
    }

    pub fn inverse(&self) -> LinearSubst {
        let cfg = self.cfg;
        let n = cfg.n();
        let mut a = self.entries.clone();
        let mut inv = Self::identity(cfg).entries;
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| a[r * n + col] != 0)
                .expect("LinearSubst is invertible");
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
                inv.swap(piv * n + j, col * n + j);
            }
            let s = cfg.inv(a[col * n + col]).unwrap();
            for j in 0..n {
                a[col * n + j] = cfg.mul(a[col * n + j], s);
                inv[col * n + j] = cfg.mul(inv[col * n + j], s);
            }
            for r in 0..n {
                let f = a[r * n + col];
                if r != col && f != 0 {
                    for j in 0..n {
                        a[r * n + j] = cfg.sub(a[r * n + j], cfg.mul(f, a[col * n + j]));
                        inv[r * n + j] = cfg.sub(inv[r * n + j], cfg.mul(f, inv[col * n + j]));
                    }
                }
            }
        }
        LinearSubst { cfg, entries: inv }
    }

    pub fn transpose(&self) -> LinearSubst {
        let n = self.cfg.n();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entry(i, j);
            }
        }
        LinearSubst {
            cfg: self.cfg,
            entries,
        }
    }

    /// The image of `v` read as a linear form: `v -> v M`.
    pub fn apply_vector(&self, v: &WeightVector) -> WeightVector {
        let cfg = self.cfg;
        let n = cfg.n();
        let coords = (0..n)
            .map(|j| {
                (0..n).fold(0, |s, k| {
                    cfg.add(s, cfg.mul(v.coords()[k], self.entry(k, j)))
                })
            })
            .collect();
        WeightVector(coords)
    }

    pub fn apply_poly(&self, x: &Poly) -> Poly {
        assert_same(&self.cfg, &x.config());
        let mut cache = PowerCache::new(self);
        let mut out = Poly::zero(self.cfg);
        for (m, c) in x.terms() {
            let img = cache.monomial_image(m);
            out.add_scaled(&img, c);
        }
        out
    }

    pub fn checked_apply(&self, x: &ExtClass) -> Result<ExtClass> {
        self.cfg.check(&x.config())?;
        Ok(self.apply(x))
    }

    /// Substitutes `t_k` and `dt_k` simultaneously; an algebra homomorphism.
    pub fn apply(&self, x: &ExtClass) -> ExtClass {
        assert_same(&self.cfg, &x.config());
        let mut cache = PowerCache::new(self);
        let mut out = ExtClass::zero(self.cfg);
        for (s, f) in x.parts() {
            let mut fimg = Poly::zero(self.cfg);
            for (m, c) in f.terms() {
                fimg.add_scaled(&cache.monomial_image(m), c);
            }
            for (s2, c) in self.exterior_image(s) {
                out.add_part(s2, &fimg, c);
            }
        }
        out
    }

    /// Image of `dt_S` as a combination of exterior monomials.
    fn exterior_image(&self, s: Subset) -> Vec<(Subset, u32)> {
        let cfg = self.cfg;
        let mut acc: Vec<(Subset, u32)> = vec![(Subset::EMPTY, 1)];
        for k in s.indices() {
            let mut next: FxHashMap<Subset, u32> = FxHashMap::default();
            for (t, c) in &acc {
                for j in 0..cfg.n() {
                    let a = self.entry(k, j);
                    if a == 0 {
                        continue;
                    }
                    if let Some((u, negative)) = t.merge(Subset::from_indices(&[j])) {
                        let mut v = cfg.mul(*c, a);
                        if negative {
                            v = cfg.neg(v);
                        }
                        let e = next.entry(u).or_insert(0);
                        *e = cfg.add(*e, v);
                    }
                }
            }
            acc = next.into_iter().filter(|(_, c)| *c != 0).collect();
        }
        acc
    }
}

/// Powers of the images of the generators, computed on demand.
struct PowerCache<'a> {
    g: &'a LinearSubst,
    images: Vec<Poly>,
    /// `Some(c)` when row `k` is `c * e_k`.
    scalar_rows: Vec<Option<u32>>,
    powers: Vec<Vec<Poly>>,
}

impl<'a> PowerCache<'a> {
    fn new(g: &'a LinearSubst) -> Self {
        let cfg = g.cfg;
        let n = cfg.n();
        let rows = g.rows();
        let images = rows.iter().map(|r| Poly::linear_form(cfg, r)).collect();
        let scalar_rows = (0..n)
            .map(|k| {
                (0..n)
                    .all(|j| j == k || g.entry(k, j) == 0)
                    .then(|| g.entry(k, k))
            })
            .collect();
        PowerCache {
            g,
            images,
            scalar_rows,
            powers: vec![Vec::new(); n],
        }
    }

    fn power(&mut self, k: usize, e: u32) -> &Poly {
        let cfg = self.g.cfg;
        let row = &mut self.powers[k];
        if row.is_empty() {
            row.push(Poly::one(cfg));
        }
        while row.len() <= e as usize {
            let next = row.last().unwrap() * &self.images[k];
            row.push(next);
        }
        &self.powers[k][e as usize]
    }

    fn monomial_image(&mut self, m: Monomial) -> Poly {
        let cfg = self.g.cfg;
        let mut coeff = 1u32;
        let mut mono = Monomial::ONE;
        let mut general: Vec<(usize, u32)> = Vec::new();
        for k in 0..cfg.n() {
            let e = m.exp(k);
            if e == 0 {
                continue;
            }
            match self.scalar_rows[k] {
                Some(c) => {
                    coeff = cfg.mul(coeff, cfg.pow(c, e as u64));
                    mono = mono * Monomial::var_pow(k, e);
                }
                None => general.push((k, e)),
            }
        }
        let mut out = Poly::term(cfg, mono, coeff as i64);
        for (k, e) in general {
            out = &out * self.power(k, e);
        }
        out
    }
}
