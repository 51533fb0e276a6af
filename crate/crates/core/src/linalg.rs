//! Sparse row reduction over `F_p`.

use std::collections::BTreeMap;

use crate::algebra::Config;

/// A sparse vector: `(column, nonzero value)` pairs sorted by column.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseVec(Vec<(usize, u32)>);

impl SparseVec {
    pub fn from_pairs(cfg: &Config, pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
        for (i, v) in pairs {
            let e = acc.entry(i).or_insert(0);
            *e = cfg.add(*e, v % cfg.p());
        }
        SparseVec(acc.into_iter().filter(|(_, v)| *v != 0).collect())
    }

    pub fn entries(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn leading(&self) -> Option<(usize, u32)> {
        self.0.first().copied()
    }

    pub fn get(&self, col: usize) -> u32 {
        self.0
            .binary_search_by_key(&col, |e| e.0)
            .map_or(0, |i| self.0[i].1)
    }

    pub fn scale(&self, cfg: &Config, c: u32) -> SparseVec {
        if c.is_multiple_of(cfg.p()) {
            return SparseVec::default();
        }
        SparseVec(self.0.iter().map(|&(i, v)| (i, cfg.mul(v, c))).collect())
    }

    /// `self - c * other`.
    pub fn sub_scaled(&self, cfg: &Config, other: &SparseVec, c: u32) -> SparseVec {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i]);
                i += 1;
            } else if take_b {
                let v = cfg.neg(cfg.mul(b[j].1, c));
                if v != 0 {
                    out.push((b[j].0, v));
                }
                j += 1;
            } else {
                let v = cfg.sub(a[i].1, cfg.mul(b[j].1, c));
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec(out)
    }
}

/// Row echelon form built one row at a time; every stored row has leading
/// coefficient 1 and a distinct pivot column.
#[derive(Debug, Clone)]
pub struct Echelon {
    cfg: Config,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(cfg: Config) -> Self {
        Echelon {
            cfg,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((col, c)) = v.leading() {
            match self.rows.get(&col) {
                Some(r) => v = v.sub_scaled(&self.cfg, r, c),
                None => break,
            }
        }
        v
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        match v.leading() {
            None => false,
            Some((col, c)) => {
                let inv = self.cfg.inv(c).expect("nonzero leading entry");
                self.rows.insert(col, v.scale(&self.cfg, inv));
                true
            }
        }
    }

    /// Basis of `{x : R x = 0}` for the inserted rows `R`, one vector per
    /// free column, with a 1 in that column.
    pub fn kernel_basis(&self, ncols: usize) -> Vec<SparseVec> {
        let cfg = self.cfg;
        // back-substitute to reduced row echelon form
        let mut reduced: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (&pivot, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            loop {
                let hit = r
                    .entries()
                    .iter()
                    .find(|(c, _)| *c != pivot && reduced.contains_key(c))
                    .copied();
                match hit {
                    Some((c, v)) => r = r.sub_scaled(&cfg, &reduced[&c], v),
                    None => break,
                }
            }
            reduced.insert(pivot, r);
        }
        (0..ncols)
            .filter(|c| !reduced.contains_key(c))
            .map(|free| {
                let mut pairs = vec![(free, 1)];
                for (&pivot, row) in &reduced {
                    let v = row.get(free);
                    if v != 0 {
                        pairs.push((pivot, cfg.neg(v)));
                    }
                }
                SparseVec::from_pairs(&cfg, pairs)
            })
            .collect()
    }
}

/// Finds `c` with `target = sum_i c_i vectors[i]`, or `None` if the target is
/// outside their span. When the vectors are independent the answer is unique.
pub fn solve_combination(
    cfg: &Config,
    vectors: &[SparseVec],
    target: &SparseVec,
) -> Option<Vec<u32>> {
    let k = vectors.len();
    // each stored row carries its expression in terms of the inputs
    let mut rows: BTreeMap<usize, (SparseVec, Vec<u32>)> = BTreeMap::new();
    let reduce =
        |rows: &BTreeMap<usize, (SparseVec, Vec<u32>)>, mut v: SparseVec, mut prov: Vec<u32>| {
            while let Some((col, c)) = v.leading() {
                match rows.get(&col) {
                    Some((r, rp)) => {
                        v = v.sub_scaled(cfg, r, c);
                        for (a, b) in prov.iter_mut().zip(rp) {
                            *a = cfg.sub(*a, cfg.mul(c, *b));
                        }
                    }
                    None => break,
                }
            }
            (v, prov)
        };
    for (i, vec) in vectors.iter().enumerate() {
        let mut prov = vec![0; k];
        prov[i] = 1;
        let (v, prov) = reduce(&rows, vec.clone(), prov);
        if let Some((col, c)) = v.leading() {
            let inv = cfg.inv(c).unwrap();
            let prov = prov.iter().map(|&x| cfg.mul(x, inv)).collect();
            rows.insert(col, (v.scale(cfg, inv), prov));
        }
    }
    // target - sum f_r row_r = 0  with  row_r = sum prov_r[i] v_i
    let (rest, prov) = reduce(&rows, target.clone(), vec![0; k]);
    rest.is_zero()
        .then(|| prov.iter().map(|&x| cfg.neg(x)).collect())
}
