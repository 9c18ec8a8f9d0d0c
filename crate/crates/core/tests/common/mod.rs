//! Independent oracles: dense F2 linear algebra written from scratch, random
//! complexes and chain maps, brute-force augmentation counts.

#![allow(dead_code)]

use std::collections::BTreeMap;

use cedga::homology::{ChainComplex, ChainMap};
use cedga::linalg::SparseMat;
use cedga::{Dga, Grading};
use rand::Rng;

/// Dense F2 matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Vec<bool>>,
}

impl Dense {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, a: vec![vec![false; cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.a[i][i] = true;
        }
        m
    }

    pub fn from_sparse(m: &SparseMat) -> Self {
        let mut d = Self::zero(m.rows(), m.cols());
        for (r, c) in m.entries() {
            d.a[r][c] ^= true;
        }
        d
    }

    pub fn to_sparse(&self) -> SparseMat {
        let e = (0..self.rows).flat_map(|r| (0..self.cols).filter(move |&c| self.a[r][c]).map(move |c| (r, c)));
        SparseMat::from_entries(self.rows, self.cols, e.collect::<Vec<_>>())
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        assert_eq!(self.cols, o.rows);
        let mut m = Dense::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.a[i][k] {
                    for j in 0..o.cols {
                        m.a[i][j] ^= o.a[k][j];
                    }
                }
            }
        }
        m
    }

    pub fn add(&self, o: &Dense) -> Dense {
        let mut m = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.a[i][j] ^= o.a[i][j];
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|r| r.iter().all(|&x| !x))
    }

    pub fn rank(&self) -> usize {
        rank_rows(self.a.clone(), self.cols)
    }

    /// Columns selected by `cols`.
    pub fn columns(&self, cols: &[usize]) -> Dense {
        let mut m = Dense::zero(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                m.a[i][k] = self.a[i][c];
            }
        }
        m
    }
}

pub fn rank_rows(mut rows: Vec<Vec<bool>>, width: usize) -> usize {
    let mut rank = 0;
    for c in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] {
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of the solutions of `rows · x = 0`.
pub fn kernel(rows: &[Vec<bool>], width: usize) -> Vec<Vec<bool>> {
    let mut m = rows.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..width {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c]) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] {
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![false; width];
            x[f] = true;
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = m[r][f];
            }
            x
        })
        .collect()
}

/// Betti numbers from degrees and a dense differential, by ranks per degree.
pub fn betti(degrees: &[i64], d: &Dense) -> BTreeMap<i64, usize> {
    let mut by_deg: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &k) in degrees.iter().enumerate() {
        by_deg.entry(k).or_default().push(i);
    }
    let rank_from = |k: i64| by_deg.get(&k).map_or(0, |c| d.columns(c).rank());
    let mut out = BTreeMap::new();
    for (&k, cols) in &by_deg {
        let h = cols.len() - rank_from(k) - rank_from(k + 1);
        if h > 0 {
            out.insert(k, h);
        }
    }
    out
}

pub fn complex_betti(c: &ChainComplex) -> BTreeMap<i64, usize> {
    let degrees: Vec<i64> = c.basis().iter().map(|(_, k)| *k).collect();
    betti(&degrees, &Dense::from_sparse(c.d()))
}

/// Some k with a shifted by k equal to b.
pub fn shift_between(a: &BTreeMap<i64, usize>, b: &BTreeMap<i64, usize>) -> Option<i64> {
    if a.is_empty() || b.is_empty() {
        return (a.is_empty() && b.is_empty()).then_some(0);
    }
    let k = b.keys().next().unwrap() - a.keys().next().unwrap();
    let moved: BTreeMap<i64, usize> = a.iter().map(|(&d, &n)| (d + k, n)).collect();
    (&moved == b).then_some(k)
}

/// A random complex: elementary pairs conjugated by a degree-preserving basis change.
pub fn random_complex(rng: &mut impl Rng, max_dim: usize) -> (Vec<i64>, Dense) {
    let n = rng.gen_range(1..=max_dim);
    let mut degrees: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
    degrees.sort();
    let mut d = Dense::zero(n, n);
    let mut used = vec![false; n];
    for j in 0..n {
        if used[j] || !rng.gen_bool(0.6) {
            continue;
        }
        let targets: Vec<usize> = (0..n).filter(|&i| !used[i] && i != j && degrees[i] + 1 == degrees[j]).collect();
        if let Some(&i) = targets.get(rng.gen_range(0..targets.len().max(1))) {
            d.a[i][j] = true;
            used[i] = true;
            used[j] = true;
        }
    }
    let (mut p, mut q) = (Dense::identity(n), Dense::identity(n));
    for _ in 0..3 * n {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b && degrees[a] == degrees[b] {
            // elementary row operation and its inverse, applied on the correct sides
            for c in 0..n {
                let v = p.a[b][c];
                p.a[a][c] ^= v;
            }
            for r in 0..n {
                let v = q.a[r][a];
                q.a[r][b] ^= v;
            }
        }
    }
    let conj = p.mul(&d).mul(&q);
    assert!(p.mul(&q) == Dense::identity(n));
    assert!(conj.mul(&conj).is_zero());
    (degrees, conj)
}

/// A random degree-0 chain map by sampling the solution space of d f = f d.
pub fn random_chain_map(rng: &mut impl Rng, src: &(Vec<i64>, Dense), dst: &(Vec<i64>, Dense)) -> Dense {
    let (ds, dt) = (&src.0, &dst.0);
    let vars: Vec<(usize, usize)> =
        (0..dt.len()).flat_map(|r| (0..ds.len()).map(move |c| (r, c))).filter(|&(r, c)| dt[r] == ds[c]).collect();
    let var = |r: usize, c: usize| vars.iter().position(|&v| v == (r, c));
    let mut rows = Vec::new();
    // (d_t f + f d_s)[r][c] = Σ_k dt[r][k] f[k][c] + Σ_k f[r][k] ds[k][c]
    for r in 0..dt.len() {
        for c in 0..ds.len() {
            let mut row = vec![false; vars.len()];
            for k in 0..dt.len() {
                if dst.1.a[r][k] {
                    if let Some(v) = var(k, c) {
                        row[v] ^= true;
                    }
                }
            }
            for k in 0..ds.len() {
                if src.1.a[k][c] {
                    if let Some(v) = var(r, k) {
                        row[v] ^= true;
                    }
                }
            }
            rows.push(row);
        }
    }
    let mut x = vec![false; vars.len()];
    for b in kernel(&rows, vars.len()) {
        if rng.gen_bool(0.5) {
            for (xi, bi) in x.iter_mut().zip(&b) {
                *xi ^= bi;
            }
        }
    }
    let mut f = Dense::zero(dt.len(), ds.len());
    for (v, &(r, c)) in vars.iter().enumerate() {
        f.a[r][c] = x[v];
    }
    assert!(dst.1.mul(&f).add(&f.mul(&src.1)).is_zero());
    f
}

pub fn to_complex(c: &(Vec<i64>, Dense)) -> ChainComplex {
    let basis = c.0.iter().enumerate().map(|(i, &k)| (format!("x{i}"), k)).collect();
    ChainComplex::new(Grading::Z, basis, c.1.to_sparse()).unwrap()
}

pub fn to_map(src: &(Vec<i64>, Dense), dst: &(Vec<i64>, Dense), f: &Dense) -> ChainMap {
    ChainMap::new(to_complex(src), to_complex(dst), f.to_sparse()).unwrap()
}

/// Cone(f: X → Y) on X[1] ⊕ Y with D = [[d_X, 0], [f, d_Y]].
pub fn cone(x: &(Vec<i64>, Dense), y: &(Vec<i64>, Dense), f: &Dense) -> (Vec<i64>, Dense) {
    let (nx, ny) = (x.0.len(), y.0.len());
    let mut d = Dense::zero(nx + ny, nx + ny);
    for i in 0..nx {
        for j in 0..nx {
            d.a[i][j] = x.1.a[i][j];
        }
    }
    for i in 0..ny {
        for j in 0..nx {
            d.a[nx + i][j] = f.a[i][j];
        }
        for j in 0..ny {
            d.a[nx + i][nx + j] = y.1.a[i][j];
        }
    }
    let degrees = x.0.iter().map(|k| k + 1).chain(y.0.iter().copied()).collect();
    (degrees, d)
}

pub fn shifted(c: &(Vec<i64>, Dense), k: i64) -> (Vec<i64>, Dense) {
    (c.0.iter().map(|d| d + k).collect(), c.1.clone())
}

/// Scalar augmentations by trying every assignment of the degree-0 generators.
pub fn brute_force_augmentations(d: &Dga) -> Vec<Vec<bool>> {
    let vars: Vec<u32> = (0..d.n_gens() as u32).filter(|&g| d.gen(g).degree == 0).collect();
    assert!(vars.len() <= 20);
    let mut out = Vec::new();
    for a in 0u32..1 << vars.len() {
        let mut bits = vec![false; d.n_gens()];
        for (k, &g) in vars.iter().enumerate() {
            bits[g as usize] = a >> k & 1 == 1;
        }
        let kills = (0..d.n_gens() as u32)
            .all(|g| d.d(g).words().filter(|w| w.letters.iter().all(|&l| bits[l as usize])).count() % 2 == 0);
        if kills {
            out.push(bits);
        }
    }
    out
}
