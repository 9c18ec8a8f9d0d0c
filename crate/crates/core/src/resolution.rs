//! The two-column resolution Cone(ι: A⊗C⊗A → A⊗A) of the diagonal bimodule,
//! handled symbolically on words.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{differentiate, Dga, Element, Word};
use crate::error::{Error, Result};
use crate::homology::{ChainComplex, ChainMap};
use crate::linalg::SparseMat;

/// An F2 combination of basis objects of any ordered type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lin<T: Ord>(BTreeSet<T>);

impl<T: Ord + Clone> Lin<T> {
    pub fn zero() -> Self {
        Self(BTreeSet::new())
    }

    pub fn toggle(&mut self, t: T) {
        if !self.0.remove(&t) {
            self.0.insert(t);
        }
    }

    pub fn add_assign(&mut self, other: &Lin<T>) {
        for t in &other.0 {
            self.toggle(t.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.0.iter()
    }
}

impl<T: Ord + Clone> Default for Lin<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Ord + Clone> FromIterator<T> for Lin<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut l = Lin::zero();
        for t in iter {
            l.toggle(t);
        }
        l
    }
}

/// a ⊗ b over k_S.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tensor {
    pub left: Word,
    pub right: Word,
}

/// a ĉ b: one hatted generator between two words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hatted {
    pub left: Word,
    pub hat: u32,
    pub right: Word,
}

#[derive(Clone, Debug)]
pub struct ShortResolution {
    dga: Dga,
}

/// Builds the resolution of a unital semi-projective DGA.
pub fn build_short_resolution(d: &Dga) -> Result<ShortResolution> {
    if d.slashed {
        return Err(Error::Slashed);
    }
    Ok(ShortResolution { dga: d.clone() })
}

impl ShortResolution {
    /// Resolution object without the unital check, used by exactness counts.
    pub(crate) fn any(d: &Dga) -> Self {
        Self { dga: d.clone() }
    }

    pub fn dga(&self) -> &Dga {
        &self.dga
    }

    /// Unit on the left (`left = true`) or right of generator `g`.
    fn unit_at(&self, g: u32, left: bool) -> Word {
        if self.dga.slashed {
            Word::one()
        } else {
            let gen = self.dga.gen(g);
            Word::unit(if left { gen.left } else { gen.right })
        }
    }

    /// Splits a nonempty-or-unit word pair into a normalized hatted term.
    pub fn hatted(&self, left: &[u32], hat: u32, right: &[u32]) -> Hatted {
        let l = if left.is_empty() { self.unit_at(hat, true) } else { Word::new(left.to_vec()) };
        let r = if right.is_empty() { self.unit_at(hat, false) } else { Word::new(right.to_vec()) };
        Hatted { left: l, hat, right: r }
    }

    /// Splits a word at position `p` into a normalized tensor.
    pub fn split(&self, w: &Word, p: usize) -> Tensor {
        let n = w.len();
        if n == 0 {
            return Tensor { left: w.clone(), right: w.clone() };
        }
        let left = if p == 0 { self.unit_at(w.letters[0], true) } else { Word::new(w.letters[..p].to_vec()) };
        let right = if p == n { self.unit_at(w.letters[n - 1], false) } else { Word::new(w.letters[p..].to_vec()) };
        Tensor { left, right }
    }

    /// Δ(w) = Σ_ℓ w₁…ŵ_ℓ…w_n, with Δ(unit) = 0.
    pub fn delta(&self, x: &Element) -> Lin<Hatted> {
        let mut out = Lin::zero();
        for w in x.words() {
            for l in 0..w.len() {
                out.toggle(self.hatted(&w.letters[..l], w.letters[l], &w.letters[l + 1..]));
            }
        }
        out
    }

    fn lmul(&self, u: &Word, h: &Hatted) -> Option<Hatted> {
        self.dga.mul_word(u, &h.left).map(|l| Hatted { left: l, hat: h.hat, right: h.right.clone() })
    }

    fn rmul(&self, h: &Hatted, v: &Word) -> Option<Hatted> {
        self.dga.mul_word(&h.right, v).map(|r| Hatted { left: h.left.clone(), hat: h.hat, right: r })
    }

    /// 𝔡(aĉb) = (∂a)ĉb + a Δ(∂c) b + aĉ(∂b).
    pub fn frak_d(&self, h: &Hatted) -> Lin<Hatted> {
        let d = &self.dga;
        let mut out = Lin::zero();
        let core = Hatted { left: self.unit_at(h.hat, true), hat: h.hat, right: self.unit_at(h.hat, false) };
        for a in differentiate(&Element::word(h.left.clone()), d).expect("valid word").words() {
            if let Some(t) = self.lmul(a, &Hatted { right: h.right.clone(), ..core.clone() }) {
                out.toggle(t);
            }
        }
        for t in self.delta(d.d(h.hat)).iter() {
            if let Some(t) = self.lmul(&h.left, t).and_then(|t| self.rmul(&t, &h.right)) {
                out.toggle(t);
            }
        }
        for b in differentiate(&Element::word(h.right.clone()), d).expect("valid word").words() {
            if let Some(t) = self.rmul(&Hatted { left: h.left.clone(), ..core.clone() }, b) {
                out.toggle(t);
            }
        }
        out
    }

    /// ι(aĉb) = ac ⊗ b + a ⊗ cb.
    pub fn iota(&self, h: &Hatted) -> Lin<Tensor> {
        let d = &self.dga;
        let c = Word::gen(h.hat);
        let mut out = Lin::zero();
        if let Some(ac) = d.mul_word(&h.left, &c) {
            out.toggle(Tensor { left: ac, right: h.right.clone() });
        }
        if let Some(cb) = d.mul_word(&c, &h.right) {
            out.toggle(Tensor { left: h.left.clone(), right: cb });
        }
        out
    }

    /// m(a ⊗ b) = ab.
    pub fn mult(&self, t: &Tensor) -> Element {
        self.dga.mul_word(&t.left, &t.right).map(Element::word).unwrap_or_default()
    }

    /// ∂(a ⊗ b) = ∂a ⊗ b + a ⊗ ∂b.
    pub fn d_tensor(&self, t: &Tensor) -> Lin<Tensor> {
        let d = &self.dga;
        let mut out = Lin::zero();
        for a in differentiate(&Element::word(t.left.clone()), d).expect("valid word").words() {
            out.toggle(Tensor { left: a.clone(), right: t.right.clone() });
        }
        for b in differentiate(&Element::word(t.right.clone()), d).expect("valid word").words() {
            out.toggle(Tensor { left: t.left.clone(), right: b.clone() });
        }
        out
    }

    /// Composable words of exactly `n` letters; units when `n = 0`.
    pub fn words_of_length(&self, n: usize, limit: usize) -> Result<Vec<Word>> {
        let d = &self.dga;
        if n == 0 {
            return Ok(if d.slashed { vec![Word::one()] } else { d.ring.indices().map(Word::unit).collect() });
        }
        let mut out = Vec::new();
        let mut stack: Vec<Vec<u32>> = (0..d.n_gens() as u32).map(|g| vec![g]).collect();
        while let Some(w) = stack.pop() {
            if w.len() == n {
                out.push(Word::new(w));
                if out.len() > limit {
                    return Err(Error::Shape(format!("more than {limit} words of length {n}")));
                }
                continue;
            }
            let last = d.gen(*w.last().unwrap()).right;
            for g in (0..d.n_gens() as u32).rev() {
                if d.slashed || d.gen(g).left == last {
                    let mut w2 = w.clone();
                    w2.push(g);
                    stack.push(w2);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Finite pieces of the sequence A⊗C⊗A → A⊗A → A in word length ≤ `max_len`,
    /// with internal differentials. Fails if ∂ leaves the window.
    pub fn window(&self, max_len: usize) -> Result<(ChainMap, ChainMap)> {
        let d = &self.dga;
        let mut words = Vec::new();
        for n in 0..=max_len {
            words.extend(self.words_of_length(n, 1_000_000)?);
        }
        let mut hats = Vec::new();
        let mut tensors = Vec::new();
        for w in &words {
            for l in 0..w.len() {
                hats.push(self.hatted(&w.letters[..l], w.letters[l], &w.letters[l + 1..]));
            }
            for p in 0..=w.len() {
                tensors.push(self.split(w, p));
            }
        }
        words.sort();
        hats.sort();
        tensors.sort();
        tensors.dedup();
        let label = |w: &Word| d.render_word(w);
        let a_basis: Vec<(String, i64)> = words.iter().map(|w| (label(w), d.word_degree(w))).collect();
        let t_basis: Vec<(String, i64)> = tensors
            .iter()
            .map(|t| {
                (format!("{}|{}", label(&t.left), label(&t.right)), d.word_degree(&t.left) + d.word_degree(&t.right))
            })
            .collect();
        let h_basis: Vec<(String, i64)> = hats
            .iter()
            .map(|h| {
                let deg = d.word_degree(&h.left) + d.gen(h.hat).degree + d.word_degree(&h.right);
                (format!("{}|^{}|{}", label(&h.left), d.name(h.hat), label(&h.right)), deg)
            })
            .collect();
        let find_w =
            |w: &Word| words.binary_search(w).map_err(|_| Error::Shape(format!("{} leaves the window", label(w))));
        let find_h =
            |h: &Hatted| hats.binary_search(h).map_err(|_| Error::Shape("hatted term leaves the window".into()));
        let find_t = |t: &Tensor| tensors.binary_search(t).map_err(|_| Error::Shape("tensor leaves the window".into()));

        let mut da = Vec::new();
        for (c, w) in words.iter().enumerate() {
            for z in differentiate(&Element::word(w.clone()), d)?.words() {
                da.push((find_w(z)?, c));
            }
        }
        let mut dt = Vec::new();
        for (c, t) in tensors.iter().enumerate() {
            for z in self.d_tensor(t).iter() {
                dt.push((find_t(z)?, c));
            }
        }
        let mut dh = Vec::new();
        let mut iota = Vec::new();
        for (c, h) in hats.iter().enumerate() {
            for z in self.frak_d(h).iter() {
                dh.push((find_h(z)?, c));
            }
            for z in self.iota(h).iter() {
                iota.push((find_t(z)?, c));
            }
        }
        let mut mu = Vec::new();
        for (c, t) in tensors.iter().enumerate() {
            for z in self.mult(t).words() {
                mu.push((find_w(z)?, c));
            }
        }
        let g = d.grading;
        let cx = |basis: Vec<(String, i64)>, e: Vec<(usize, usize)>| {
            let n = basis.len();
            ChainComplex::new(g, basis, SparseMat::from_entries(n, n, e))
        };
        let (nh, nt, na) = (h_basis.len(), t_basis.len(), a_basis.len());
        let aca = cx(h_basis, dh)?;
        let aa = cx(t_basis, dt)?;
        let a = cx(a_basis, da)?;
        let iota = ChainMap::new(aca, aa.clone(), SparseMat::from_entries(nt, nh, iota))?;
        let mu = ChainMap::new(aa, a, SparseMat::from_entries(na, nt, mu))?;
        Ok((iota, mu))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LengthRow {
    pub length: usize,
    /// Dimensions of (A⊗C⊗A, A⊗A, A) in this length.
    pub dims: (usize, usize, usize),
    pub rank_iota: usize,
    pub rank_mu: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub rows: Vec<LengthRow>,
    pub pass: bool,
}

/// Checks 0 → A⊗C⊗A → A⊗A → A → 0 is exact in each word length ≤ `max_len`.
///
/// Both maps preserve the flattened word, so ranks are computed per word.
pub fn length_graded_exactness(d: &Dga, max_len: usize) -> Result<ExactnessReport> {
    let res = ShortResolution::any(d);
    let mut rows = Vec::new();
    for n in 0..=max_len {
        let mut row = LengthRow { length: n, dims: (0, 0, 0), rank_iota: 0, rank_mu: 0, exact: true };
        for w in res.words_of_length(n, 5_000_000)? {
            let hats: Vec<Hatted> =
                (0..n).map(|l| res.hatted(&w.letters[..l], w.letters[l], &w.letters[l + 1..])).collect();
            let tensors: Vec<Tensor> = if n == 0 {
                vec![Tensor { left: w.clone(), right: w.clone() }]
            } else {
                (0..=n).map(|p| res.split(&w, p)).collect()
            };
            let idx = |t: &Tensor| tensors.iter().position(|x| x == t).expect("ι preserves the flattened word");
            let iota = SparseMat::from_columns(
                tensors.len(),
                hats.iter().map(|h| res.iota(h).iter().map(|t| idx(t) as u32).collect()).collect(),
            );
            let mu = SparseMat::from_columns(
                1,
                tensors.iter().map(|t| res.mult(t).words().map(|_| 0u32).collect()).collect(),
            );
            let (ri, rm) = (iota.rank(), mu.rank());
            let ok = ri == hats.len() && rm == 1 && ri + rm == tensors.len() && mu.mul(&iota).is_zero();
            row.dims.0 += hats.len();
            row.dims.1 += tensors.len();
            row.dims.2 += 1;
            row.rank_iota += ri;
            row.rank_mu += rm;
            row.exact &= ok;
        }
        rows.push(row);
    }
    let pass = rows.iter().all(|r| r.exact);
    Ok(ExactnessReport { rows, pass })
}
