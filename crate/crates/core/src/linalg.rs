//! Sparse F2 matrices stored by column.

use std::collections::HashMap;

/// Symmetric difference of two sorted index lists.
pub fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMat {
    rows: usize,
    cols: Vec<Vec<u32>>,
}

impl SparseMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: (0..n as u32).map(|i| vec![i]).collect() }
    }

    pub fn from_columns(rows: usize, cols: Vec<Vec<u32>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                let mut out: Vec<u32> = Vec::with_capacity(c.len());
                for r in c {
                    assert!((r as usize) < rows, "row {r} out of range");
                    if out.last() == Some(&r) {
                        out.pop();
                    } else {
                        out.push(r);
                    }
                }
                out
            })
            .collect();
        Self { rows, cols }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut c = vec![Vec::new(); cols];
        for (r, k) in entries {
            c[k].push(r as u32);
        }
        Self::from_columns(rows, c)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, c: usize) -> &[u32] {
        &self.cols[c]
    }

    pub fn columns(&self) -> &[Vec<u32>] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.cols[c].binary_search(&(r as u32)).is_ok()
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        assert!(r < self.rows);
        let col = &mut self.cols[c];
        match col.binary_search(&(r as u32)) {
            Ok(i) => {
                col.remove(i);
            }
            Err(i) => col.insert(i, r as u32),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |&r| (r as usize, c)))
    }

    pub fn add(&self, other: &SparseMat) -> SparseMat {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()), "shape mismatch in add");
        let cols = self.cols.iter().zip(&other.cols).map(|(a, b)| xor_sorted(a, b)).collect();
        Self { rows: self.rows, cols }
    }

    /// Image of a sparse vector.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let mut acc = Vec::new();
        for &k in v {
            acc = xor_sorted(&acc, &self.cols[k as usize]);
        }
        acc
    }

    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols(), other.rows, "shape mismatch in mul");
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        Self { rows: self.rows, cols }
    }

    pub fn transpose(&self) -> SparseMat {
        let mut t = vec![Vec::new(); self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for &r in col {
                t[r as usize].push(c as u32);
            }
        }
        Self { rows: self.cols(), cols: t }
    }

    /// Restriction to the given rows and columns, reindexed in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SparseMat {
        let pos: HashMap<u32, u32> = rows.iter().enumerate().map(|(i, &r)| (r as u32, i as u32)).collect();
        let out = cols.iter().map(|&c| self.cols[c].iter().filter_map(|r| pos.get(r).copied()).collect()).collect();
        SparseMat::from_columns(rows.len(), out)
    }

    /// Column reduction with lowest-index pivots.
    pub fn reduce(&self) -> Reduction {
        let mut reduced = self.cols.clone();
        let mut track: Vec<Vec<u32>> = (0..self.cols() as u32).map(|c| vec![c]).collect();
        let mut pivot_of: HashMap<u32, usize> = HashMap::new();
        for c in 0..reduced.len() {
            while let Some(&p) = reduced[c].first() {
                match pivot_of.get(&p) {
                    Some(&o) => {
                        reduced[c] = xor_sorted(&reduced[c], &reduced[o]);
                        track[c] = xor_sorted(&track[c], &track[o]);
                    }
                    None => {
                        pivot_of.insert(p, c);
                        break;
                    }
                }
            }
        }
        Reduction { reduced, track, pivot_of }
    }

    pub fn rank(&self) -> usize {
        self.reduce().pivot_of.len()
    }

    /// Basis of the kernel, as coefficient vectors over the columns.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let r = self.reduce();
        r.reduced.iter().zip(r.track).filter(|(c, _)| c.is_empty()).map(|(_, t)| t).collect()
    }

    /// Coefficients `x` with `self · x = v`, if any.
    pub fn solve(&self, v: &[u32]) -> Option<Vec<u32>> {
        self.reduce().solve(v)
    }

    /// Dense rendering, one string per row.
    pub fn to_rows(&self) -> Vec<String> {
        let mut rows = vec![vec!['0'; self.cols()]; self.rows];
        for (r, c) in self.entries() {
            rows[r][c] = '1';
        }
        rows.into_iter().map(|r| r.into_iter().collect()).collect()
    }
}

pub struct Reduction {
    pub reduced: Vec<Vec<u32>>,
    pub track: Vec<Vec<u32>>,
    pub pivot_of: HashMap<u32, usize>,
}

impl Reduction {
    pub fn rank(&self) -> usize {
        self.pivot_of.len()
    }

    pub fn solve(&self, v: &[u32]) -> Option<Vec<u32>> {
        let mut rest = v.to_vec();
        let mut coeff = Vec::new();
        while let Some(&p) = rest.first() {
            let &c = self.pivot_of.get(&p)?;
            rest = xor_sorted(&rest, &self.reduced[c]);
            coeff = xor_sorted(&coeff, &self.track[c]);
        }
        Some(coeff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense_rank(mut rows: Vec<Vec<bool>>) -> usize {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else {
                continue;
            };
            rows.swap(rank, p);
            for r in 0..rows.len() {
                if r != rank && rows[r][c] {
                    let pivot = rows[rank].clone();
                    for (x, y) in rows[r].iter_mut().zip(pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn arb_mat(max: usize) -> impl Strategy<Value = (usize, usize, Vec<(usize, usize)>)> {
        (1..max, 1..max)
            .prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec((0..r, 0..c), 0..r * c + 1)))
    }

    proptest! {
        #[test]
        fn rank_matches_dense_elimination((r, c, e) in arb_mat(9)) {
            let m = SparseMat::from_entries(r, c, e);
            let mut dense = vec![vec![false; c]; r];
            for (i, j) in m.entries() {
                dense[i][j] = true;
            }
            prop_assert_eq!(m.rank(), dense_rank(dense));
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn kernel_vectors_map_to_zero((r, c, e) in arb_mat(9)) {
            let m = SparseMat::from_entries(r, c, e);
            let k = m.kernel();
            prop_assert_eq!(k.len() + m.rank(), c);
            for v in k {
                prop_assert!(m.apply(&v).is_empty());
            }
        }

        #[test]
        fn solve_reproduces_image((r, c, e) in arb_mat(9), seed in proptest::collection::vec(any::<bool>(), 9)) {
            let m = SparseMat::from_entries(r, c, e);
            let x: Vec<u32> = (0..c as u32).filter(|&i| seed[i as usize]).collect();
            let v = m.apply(&x);
            let y = m.solve(&v).expect("v is in the image");
            prop_assert_eq!(m.apply(&y), v);
        }
    }

    #[test]
    fn toggle_and_mul() {
        let mut a = SparseMat::zero(2, 2);
        a.toggle(0, 1);
        assert!(a.get(0, 1));
        assert!(a.mul(&a).is_zero());
        assert_eq!(a.add(&a), SparseMat::zero(2, 2));
        assert_eq!(SparseMat::identity(3).mul(&SparseMat::identity(3)), SparseMat::identity(3));
    }
}
