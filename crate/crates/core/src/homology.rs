//! Finite chain complexes over F2, Betti numbers, cones and the cone lemma.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::Grading;
use crate::error::{Error, Result};
use crate::linalg::SparseMat;

/// A finite complex with a degree -1 differential, stored column-wise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub grading: Grading,
    basis: Vec<(String, i64)>,
    d: SparseMat,
}

impl ChainComplex {
    pub fn new(grading: Grading, basis: Vec<(String, i64)>, d: SparseMat) -> Result<Self> {
        let n = basis.len();
        if d.rows() != n || d.cols() != n {
            return Err(Error::Shape(format!("differential is {}x{}, basis has {n}", d.rows(), d.cols())));
        }
        for (r, c) in d.entries() {
            if !grading.eq(basis[r].1, basis[c].1 - 1) {
                return Err(Error::DegreeMismatch(basis[c].0.clone()));
            }
        }
        if let Some((_, c)) = d.mul(&d).entries().next() {
            return Err(Error::DSquared(basis[c].0.clone()));
        }
        Ok(Self { grading, basis, d })
    }

    pub fn empty(grading: Grading) -> Self {
        Self { grading, basis: Vec::new(), d: SparseMat::zero(0, 0) }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(String, i64)] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].1
    }

    pub fn d(&self) -> &SparseMat {
        &self.d
    }

    /// Same complex with every degree raised by `k`.
    pub fn shifted(&self, k: i64) -> Self {
        let basis = self.basis.iter().map(|(l, d)| (l.clone(), d + k)).collect();
        Self { grading: self.grading, basis, d: self.d.clone() }
    }

    pub fn betti(&self) -> PoincarePolynomial {
        betti(self)
    }

    pub fn euler(&self) -> i64 {
        self.basis.iter().map(|(_, d)| if d.rem_euclid(2) == 0 { 1 } else { -1 }).sum()
    }
}

/// Ranks of homology per degree; zero ranks are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct PoincarePolynomial(pub BTreeMap<i64, usize>);

impl PoincarePolynomial {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, usize)>) -> Self {
        Self(pairs.into_iter().filter(|&(_, r)| r > 0).collect())
    }

    pub fn get(&self, k: i64) -> usize {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.keys().copied()
    }

    pub fn shift(&self, k: i64) -> Self {
        Self(self.0.iter().map(|(&d, &r)| (d + k, r)).collect())
    }

    pub fn euler(&self) -> i64 {
        self.0.iter().map(|(&d, &r)| if d.rem_euclid(2) == 0 { r as i64 } else { -(r as i64) }).sum()
    }

    /// The shift `k` with `other = self.shift(k)`, if one exists.
    pub fn match_shift(&self, other: &Self, grading: Grading) -> Option<i64> {
        match (self.0.keys().next(), other.0.keys().next()) {
            (None, None) => Some(0),
            (Some(_), None) | (None, Some(_)) => None,
            (Some(&a), Some(&b)) => match grading {
                Grading::Z => (self.shift(b - a) == *other).then_some(b - a),
                Grading::Zmod(n) => (0..n.max(1) as i64)
                    .find(|&k| self.reduce(grading).shift(k).reduce(grading) == other.reduce(grading)),
            },
        }
    }

    fn reduce(&self, grading: Grading) -> Self {
        let mut m = BTreeMap::new();
        for (&d, &r) in &self.0 {
            *m.entry(grading.norm(d)).or_insert(0) += r;
        }
        Self(m)
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(d, r)| format!("{r}@{d}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// rank H_k = dim C_k - rank ∂_k - rank ∂_{k+1}, per degree class.
pub fn betti(c: &ChainComplex) -> PoincarePolynomial {
    let g = c.grading;
    let red = c.d.reduce();
    let mut dims: BTreeMap<i64, i64> = BTreeMap::new();
    let mut ranks: BTreeMap<i64, i64> = BTreeMap::new();
    for (_, deg) in &c.basis {
        *dims.entry(g.norm(*deg)).or_insert(0) += 1;
    }
    for (col, reduced) in red.reduced.iter().enumerate() {
        if !reduced.is_empty() {
            *ranks.entry(g.norm(c.degree(col))).or_insert(0) += 1;
        }
    }
    let rank = |k: i64| ranks.get(&g.norm(k)).copied().unwrap_or(0);
    PoincarePolynomial::from_pairs(dims.iter().map(|(&k, &n)| (k, (n - rank(k) - rank(k + 1)) as usize)))
}

/// A degree-0 map commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    m: SparseMat,
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, m: SparseMat) -> Result<Self> {
        if m.rows() != target.dim() || m.cols() != source.dim() {
            return Err(Error::Shape(format!(
                "map is {}x{}, complexes {} -> {}",
                m.rows(),
                m.cols(),
                source.dim(),
                target.dim()
            )));
        }
        for (r, c) in m.entries() {
            if !source.grading.eq(target.degree(r), source.degree(c)) {
                return Err(Error::DegreeMismatch(source.basis[c].0.clone()));
            }
        }
        let defect = target.d.mul(&m).add(&m.mul(&source.d));
        if let Some((r, c)) = defect.entries().next() {
            return Err(Error::NotChainMap { generator: source.basis[c].0.clone(), defect: target.basis[r].0.clone() });
        }
        Ok(Self { source, target, m })
    }

    pub fn matrix(&self) -> &SparseMat {
        &self.m
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.target != other.source {
            return Err(Error::Shape("composition of maps with mismatched complexes".into()));
        }
        ChainMap::new(self.source.clone(), other.target.clone(), other.m.mul(&self.m))
    }
}

/// Block matrix with the given blocks at (row offset, col offset).
fn blocks(n: usize, parts: &[(usize, usize, &SparseMat)]) -> SparseMat {
    let mut entries = Vec::new();
    for &(r0, c0, m) in parts {
        entries.extend(m.entries().map(|(r, c)| (r + r0, c + c0)));
    }
    SparseMat::from_entries(n, n, entries)
}

/// Cone_n = A_{n-1} ⊕ B_n with d(a, b) = (da, fa + db).
pub fn mapping_cone(f: &ChainMap) -> ChainComplex {
    let (a, b) = (&f.source, &f.target);
    let mut basis: Vec<(String, i64)> = a.basis.iter().map(|(l, d)| (format!("s.{l}"), d + 1)).collect();
    basis.extend(b.basis.iter().map(|(l, d)| (format!("t.{l}"), *d)));
    let n = basis.len();
    let d = blocks(n, &[(0, 0, &a.d), (a.dim(), 0, &f.m), (a.dim(), a.dim(), &b.d)]);
    ChainComplex::new(a.grading, basis, d).expect("cone of a chain map is a complex")
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeReport {
    pub cone_eta: PoincarePolynomial,
    pub cone_composite: PoincarePolynomial,
    /// Degree shift between the two cones; η is a map into Cone(ν)[1].
    pub shift: i64,
    pub comparison_map_is_quasi_iso: bool,
    pub pass: bool,
}

/// For ν: A → C and μ: C → B, compares Cone(η) with Cone(μ∘ν), where
/// η: Cone(μ) → Cone(ν)[1] is the identity on C.
pub fn cone_composition_check(nu: &ChainMap, mu: &ChainMap) -> Result<ConeReport> {
    if nu.target != mu.source {
        return Err(Error::Shape("target of nu differs from source of mu".into()));
    }
    let (a, c, b) = (&nu.source, &nu.target, &mu.target);
    let (na, nc, nb) = (a.dim(), c.dim(), b.dim());
    let cone_mu = mapping_cone(mu);
    let cone_nu1 = mapping_cone(nu).shifted(1);
    let eta_m = SparseMat::from_entries(na + nc, nc + nb, (0..nc).map(|i| (na + i, i)));
    let eta = ChainMap::new(cone_mu, cone_nu1, eta_m)?;
    let cone_eta = mapping_cone(&eta);
    let composite = nu.then(mu)?;
    let cone_comp1 = mapping_cone(&composite).shifted(1);

    // Cone(η) = [C_μ, B | A, C_ν] → Cone(μν)[1] = [A, B]: identities on A and B, μ on C_ν.
    let mut entries: Vec<(usize, usize)> = Vec::new();
    let (off_b, off_a, off_cnu) = (nc, nc + nb, nc + nb + na);
    entries.extend((0..nb).map(|i| (na + i, off_b + i)));
    entries.extend((0..na).map(|i| (i, off_a + i)));
    entries.extend(mu.m.entries().map(|(r, k)| (na + r, off_cnu + k)));
    let f = ChainMap::new(
        cone_eta.clone(),
        cone_comp1.clone(),
        SparseMat::from_entries(na + nb, 2 * nc + na + nb, entries),
    )?;
    let quasi = betti(&mapping_cone(&f)).is_zero();

    let be = betti(&cone_eta);
    let bc = betti(&mapping_cone(&composite));
    let shift = 1;
    let pass = be == bc.shift(shift) && quasi;
    Ok(ConeReport { cone_eta: be, cone_composite: bc, shift, comparison_map_is_quasi_iso: quasi, pass })
}
