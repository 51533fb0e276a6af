//! Random generators and independent reference implementations shared by the
//! integration tests and the acceptance harness.
#![allow(dead_code)]

use std::collections::HashMap;

use modinv::algebra::{Config, ExtClass, LinearSubst, Monomial, Poly, Subset, WeightVector};
use modinv::chern::WeightMultiset;
use modinv::invariants::{dickson_classes, DicksonRing};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cfg(p: u32, n: usize) -> Config {
    Config::new(p, n).unwrap()
}

/// Small configurations cheap enough for randomized laws.
pub const SMALL: [(u32, usize); 5] = [(3, 1), (3, 2), (5, 2), (3, 3), (7, 2)];

pub fn small_cfg(index: usize) -> Config {
    let (p, n) = SMALL[index % SMALL.len()];
    cfg(p, n)
}

pub fn random_monomial<R: Rng>(rng: &mut R, n: usize, max_exp: u32) -> Monomial {
    let exps: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
    Monomial::new(&exps)
}

/// A uniformly chosen monomial of polynomial degree `deg` (stars and bars).
pub fn random_monomial_of_degree<R: Rng>(rng: &mut R, n: usize, deg: u32) -> Monomial {
    let mut exps = vec![0u32; n];
    for _ in 0..deg {
        exps[rng.gen_range(0..n)] += 1;
    }
    Monomial::new(&exps)
}

pub fn random_subset<R: Rng>(rng: &mut R, n: usize) -> Subset {
    Subset::from_indices(&(0..n).filter(|_| rng.gen_bool(0.4)).collect::<Vec<_>>())
}

pub fn random_class<R: Rng>(rng: &mut R, cfg: Config, terms: usize, max_exp: u32) -> ExtClass {
    let mut x = ExtClass::zero(cfg);
    for _ in 0..terms {
        let c = rng.gen_range(1..cfg.p());
        x.add_term(
            random_subset(rng, cfg.n()),
            random_monomial(rng, cfg.n(), max_exp),
            c,
        );
    }
    x
}

/// Random class of cohomological degree `d`; zero if no term fits.
pub fn random_homogeneous<R: Rng>(rng: &mut R, cfg: Config, d: u64, terms: usize) -> ExtClass {
    let n = cfg.n();
    let sizes: Vec<usize> = (0..=n)
        .filter(|&s| (s as u64) <= d && (d - s as u64).is_multiple_of(2))
        .collect();
    let mut x = ExtClass::zero(cfg);
    if sizes.is_empty() {
        return x;
    }
    for _ in 0..terms {
        let s = sizes[rng.gen_range(0..sizes.len())];
        let mut idx: Vec<usize> = (0..n).collect();
        for i in 0..s {
            let j = rng.gen_range(i..n);
            idx.swap(i, j);
        }
        let subset = Subset::from_indices(&idx[..s]);
        let m = random_monomial_of_degree(rng, n, ((d - s as u64) / 2) as u32);
        x.add_term(subset, m, rng.gen_range(1..cfg.p()));
    }
    x
}

pub fn random_homogeneous_poly<R: Rng>(
    rng: &mut R,
    cfg: Config,
    poly_deg: u32,
    terms: usize,
) -> Poly {
    let mut f = Poly::zero(cfg);
    for _ in 0..terms {
        f.add_term(
            random_monomial_of_degree(rng, cfg.n(), poly_deg),
            rng.gen_range(1..cfg.p()),
        );
    }
    f
}

pub fn random_invertible<R: Rng>(rng: &mut R, cfg: Config) -> LinearSubst {
    loop {
        let rows: Vec<Vec<i64>> = (0..cfg.n())
            .map(|_| {
                (0..cfg.n())
                    .map(|_| rng.gen_range(0..cfg.p()) as i64)
                    .collect()
            })
            .collect();
        if let Ok(g) = LinearSubst::new(cfg, &rows) {
            return g;
        }
    }
}

pub fn random_weight<R: Rng>(rng: &mut R, cfg: &Config) -> WeightVector {
    let coords: Vec<i64> = (0..cfg.n())
        .map(|_| rng.gen_range(0..cfg.p()) as i64)
        .collect();
    WeightVector::new(cfg, &coords).unwrap()
}

pub fn random_multiset<R: Rng>(
    rng: &mut R,
    cfg: Config,
    count: usize,
    max_mult: u64,
) -> WeightMultiset {
    let mut rho = WeightMultiset::new(cfg);
    for _ in 0..count {
        rho.add(random_weight(rng, &cfg), rng.gen_range(1..=max_mult));
    }
    rho
}

/// `sum_S f_S dt_S` rebuilt one exterior factor at a time, so products go
/// through the general multiplication rather than the subset bookkeeping.
fn factors(cfg: Config, s: Subset) -> Vec<ExtClass> {
    s.indices().map(|k| ExtClass::dt(cfg, k)).collect()
}

/// `Q_i` from the derivation law and the generator rules only.
pub fn milnor_oracle(i: u32, x: &ExtClass) -> ExtClass {
    let cfg = x.config();
    let q_dt = |k: usize| {
        let e = cfg.p().pow(i);
        ExtClass::from(Poly::term(cfg, Monomial::var_pow(k, e), 1))
    };
    let mut out = ExtClass::zero(cfg);
    for (s, f) in x.parts() {
        // Q(f * a_1 ... a_r) = sum_j (-1)^{j-1} f a_1 .. Q(a_j) .. a_r, f even
        let fs = factors(cfg, s);
        for j in 0..fs.len() {
            let mut term = ExtClass::from(f.clone());
            for (l, a) in fs.iter().enumerate() {
                let factor = if l == j {
                    q_dt(s.indices().nth(l).unwrap())
                } else {
                    a.clone()
                };
                term = &term * &factor;
            }
            if j % 2 == 1 {
                term = -&term;
            }
            out = &out + &term;
        }
    }
    out
}

/// `P^j(t^a)` by the Cartan recursion `t^a = t * t^{a-1}`.
fn power_of_variable(
    cfg: Config,
    k: usize,
    j: u64,
    a: u32,
    memo: &mut HashMap<(u64, u32), Poly>,
) -> Poly {
    if let Some(f) = memo.get(&(j, a)) {
        return f.clone();
    }
    let p = cfg.p();
    let out = if j == 0 {
        Poly::term(cfg, Monomial::var_pow(k, a), 1)
    } else if a == 0 {
        Poly::zero(cfg)
    } else {
        let t = Poly::var(cfg, k);
        let tp = Poly::term(cfg, Monomial::var_pow(k, p), 1);
        let rest0 = power_of_variable(cfg, k, j, a - 1, memo);
        let rest1 = power_of_variable(cfg, k, j - 1, a - 1, memo);
        &(&t * &rest0) + &(&tp * &rest1)
    };
    memo.insert((j, a), out.clone());
    out
}

/// `P^j` via the Cartan formula on every factor; `P^{>0}(dt) = 0`.
pub fn reduced_power_oracle(j: u64, x: &ExtClass) -> ExtClass {
    let cfg = x.config();
    let n = cfg.n();
    let mut memos: Vec<HashMap<(u64, u32), Poly>> = vec![HashMap::new(); n];
    let mut out = ExtClass::zero(cfg);
    for (s, f) in x.parts() {
        let mut pf = Poly::zero(cfg);
        for (m, c) in f.terms() {
            // Cartan across variables: sum over j_1 + ... + j_n = j
            let mut acc: Vec<Poly> = vec![Poly::zero(cfg); j as usize + 1];
            acc[0] = Poly::one(cfg);
            for (k, memo) in memos.iter_mut().enumerate() {
                let mut next = vec![Poly::zero(cfg); j as usize + 1];
                for (used, g) in acc.iter().enumerate() {
                    if g.is_zero() {
                        continue;
                    }
                    for jk in 0..=(j as usize - used) {
                        let h = power_of_variable(cfg, k, jk as u64, m.exp(k), memo);
                        next[used + jk] = &next[used + jk] + &(g * &h);
                    }
                }
                acc = next;
            }
            pf.add_scaled(&acc[j as usize], c);
        }
        out = &out + &ExtClass::from_part(s, pf);
    }
    out
}

/// `prod_{v in V_n} (X + v)` expanded naively; entry `k` is the coefficient of `X^k`.
pub fn naive_dickson(cfg: Config) -> Vec<Poly> {
    let mut coeffs = vec![Poly::one(cfg)];
    for v in WeightVector::all(&cfg) {
        let lin = v.linear_form(cfg);
        let mut next = vec![Poly::zero(cfg); coeffs.len() + 1];
        for (k, a) in coeffs.iter().enumerate() {
            next[k + 1] = &next[k + 1] + a;
            next[k] = &next[k] + &(a * &lin);
        }
        coeffs = next;
    }
    coeffs
}

/// Leibniz expansion of `det(t_j^{p^i})` written independently of the library.
pub fn determinant_oracle(cfg: Config) -> Poly {
    let n = cfg.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Poly::zero(cfg);
    permute(&mut perm, 0, &mut |sigma| {
        let mut exps = vec![0u32; n];
        for (i, &j) in sigma.iter().enumerate() {
            exps[j] = cfg.p().pow(i as u32);
        }
        let inversions = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| sigma[a] > sigma[b])
            .count();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        out = &out + &Poly::term(cfg, Monomial::new(&exps), sign);
    });
    out
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Integer binomial coefficient.
pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Random elements of a degree: half from products of generators, half noise.
pub fn sample_polys(c: Config, count: usize, seed: u64) -> Vec<Poly> {
    let d = dickson_classes(c).unwrap();
    let mut r = rng(seed);
    let max_deg = (c.p() * c.p() - 1) as u64; // polynomial degree of 2(p^2 - 1)
    let mut out = Vec::new();
    while out.len() < count {
        let deg = r.gen_range(1..=max_deg) as u32;
        if r.gen_bool(0.5) {
            let gens = d.ring_generators(if r.gen_bool(0.5) {
                DicksonRing::D
            } else {
                DicksonRing::SD
            });
            let mut f = Poly::zero(c);
            for _ in 0..3 {
                let mut prod = Poly::one(c);
                let mut left = deg as u64 * 2;
                for (_, g, gd) in &gens {
                    while left >= *gd && r.gen_bool(0.6) {
                        prod = &prod * g;
                        left -= gd;
                    }
                }
                if left == 0 {
                    f.add_scaled(&prod, r.gen_range(1..c.p()));
                }
            }
            if !f.is_zero() {
                out.push(f);
            }
        } else {
            let f = random_homogeneous_poly(&mut r, c, deg, 4);
            if !f.is_zero() {
                out.push(f);
            }
        }
    }
    out
}
