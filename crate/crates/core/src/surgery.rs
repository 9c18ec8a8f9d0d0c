//! Direct builders for cap algebras, the model cap with c/m generators, the
//! Cthulhu bimodule between two caps, and the comparison of its complex with
//! RHom over the base.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{e_name, Dga, DgaBuilder, Element, GenKind, Generator, IdempotentRing, Word};
use crate::error::{Error, Result};
use crate::homology::{ChainComplex, PoincarePolynomial};
use crate::linalg::SparseMat;
use crate::modules::augment::{check_augmentation, AugValues, Augmentation};
use crate::modules::rhom::{rhom_complex, HomSpace, Slot, Term};
use crate::modules::{BasisVector, DgModule};
use crate::resolution::Lin;
use crate::transforms::{copy_name, omit_idempotents, CopyMap};

/// Parallel copies of the cores: a copy count and potentials per idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapSpec {
    pub base: Dga,
    pub copies: CopyMap,
}

impl CapSpec {
    pub fn new(base: Dga, counts: Vec<u32>, potentials: Vec<Vec<i64>>) -> Result<Self> {
        if base.slashed {
            return Err(Error::Slashed);
        }
        let copies =
            CopyMap::new(base.ring.clone(), counts, potentials).map_err(|e| Error::InvalidCap(e.to_string()))?;
        Ok(Self { base, copies })
    }

    /// `k` copies of every idempotent at potential zero.
    pub fn uniform(base: Dga, k: u32) -> Result<Self> {
        let n = base.ring.len();
        Self::new(base, vec![k; n], vec![vec![0; k as usize]; n])
    }

    fn count(&self, s: u32) -> u32 {
        self.copies.count(s)
    }

    fn p(&self, s: u32, i: u32) -> i64 {
        self.copies.potential(s, i)
    }
}

fn family(ring: &IdempotentRing, prefix: &str, s: u32) -> String {
    if ring.len() == 1 {
        prefix.to_string()
    } else {
        format!("{prefix}_{}", ring.label(s))
    }
}

/// All index sequences h_0 = i, h_1, …, h_n = j; `count(p)` bounds h_p for
/// the interior boundaries 1 ≤ p < n.
fn index_paths(n: usize, i: u32, j: u32, count: &dyn Fn(usize) -> u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut path = vec![i];
    fn go(n: usize, j: u32, count: &dyn Fn(usize) -> u32, path: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let p = path.len();
        if p == n {
            path.push(j);
            out.push(path.clone());
            path.pop();
            return;
        }
        for h in 1..=count(p) {
            path.push(h);
            go(n, j, count, path, out);
            path.pop();
        }
    }
    go(n, j, count, &mut path, &mut out);
    out
}

fn check_range(what: &str, i: u32, k: u32) -> Result<()> {
    if i == 0 || i > k {
        return Err(Error::InvalidCap(format!("{what} index {i} outside 1..={k}")));
    }
    Ok(())
}

/// w_{i,j}: the sum over all intermediate copy indices.
fn expand_with(
    spec: &CapSpec,
    w: &Word,
    i: u32,
    j: u32,
    letter: &dyn Fn(u32, u32, u32) -> u32,
    unit: &dyn Fn(u32, u32) -> u32,
) -> Result<Element> {
    let d = &spec.base;
    let mut out = Element::zero();
    if w.is_empty() {
        let s = w.tag.ok_or(Error::Slashed)?;
        check_range("start", i, spec.count(s))?;
        check_range("end", j, spec.count(s))?;
        if i == j {
            out.toggle(Word::unit(unit(s, i)));
        }
        return Ok(out);
    }
    let (first, last) = (d.gen(w.letters[0]), d.gen(*w.letters.last().unwrap()));
    check_range("start", i, spec.count(first.left))?;
    check_range("end", j, spec.count(last.right))?;
    let count = |p: usize| spec.count(d.gen(w.letters[p - 1]).right);
    for path in index_paths(w.len(), i, j, &count) {
        let letters = w.letters.iter().enumerate().map(|(p, &g)| letter(g, path[p], path[p + 1])).collect();
        out.toggle(Word::new(letters));
    }
    Ok(out)
}

/// Expands a base word into the cap algebra built from `spec`.
pub fn subscript_expand(spec: &CapSpec, cap: &Dga, w: &Word, i: u32, j: u32) -> Result<Element> {
    let letter = |g: u32, a: u32, b: u32| cap.index(&copy_name(spec.base.name(g), a, b)).expect("copy exists");
    let unit = |s: u32, a: u32| spec.copies.target(s, a);
    expand_with(spec, w, i, j, &letter, &unit)
}

fn cap_ring_and_order(spec: &CapSpec) -> DgaBuilder {
    DgaBuilder::new(spec.copies.target_ring(), spec.base.grading).ordering(Some(spec.copies.ordering()))
}

struct CapIds {
    chords: HashMap<(u32, u32, u32), u32>,
    units: HashMap<(u32, u32, u32), u32>,
}

/// Adds the copies a_{i,j} and e_{i,j} (i < j) with their differentials.
fn add_cap_generators(spec: &CapSpec, b: &mut DgaBuilder) -> Result<CapIds> {
    let d = &spec.base;
    let mut chords = HashMap::new();
    let mut units = HashMap::new();
    for (g, x) in d.generators().iter().enumerate() {
        for i in 1..=spec.count(x.left) {
            for j in 1..=spec.count(x.right) {
                let mut c = x.clone();
                c.name = copy_name(&x.name, i, j);
                c.degree = x.degree + spec.p(x.left, i) - spec.p(x.right, j);
                c.left = spec.copies.target(x.left, i);
                c.right = spec.copies.target(x.right, j);
                chords.insert((g as u32, i, j), b.add(c)?);
            }
        }
    }
    for s in d.ring.indices() {
        let name = e_name(&d.ring, s);
        if d.index(&name).is_some() {
            return Err(Error::NameClash(name));
        }
        for i in 1..=spec.count(s) {
            for j in i + 1..=spec.count(s) {
                let e = Generator::new(
                    copy_name(&name, i, j),
                    spec.p(s, i) - spec.p(s, j) - 1,
                    spec.copies.target(s, i),
                    spec.copies.target(s, j),
                )
                .with_kind(GenKind::EUnit);
                units.insert((s, i, j), b.add(e)?);
            }
        }
    }
    let ids = CapIds { chords, units };
    for s in d.ring.indices() {
        let k = spec.count(s);
        for i in 1..=k {
            for j in i + 1..=k {
                let el = (i + 1..j).map(|h| Word::new(vec![ids.units[&(s, i, h)], ids.units[&(s, h, j)]])).collect();
                b.set_d(ids.units[&(s, i, j)], el);
            }
        }
    }
    let letter = |g: u32, a: u32, c: u32| ids.chords[&(g, a, c)];
    let unit = |s: u32, a: u32| spec.copies.target(s, a);
    for (g, x) in d.generators().iter().enumerate() {
        let g = g as u32;
        for i in 1..=spec.count(x.left) {
            for j in 1..=spec.count(x.right) {
                let mut el = Element::zero();
                for w in d.d(g).words() {
                    el.add_assign(&expand_with(spec, w, i, j, &letter, &unit)?);
                }
                for h in i + 1..=spec.count(x.left) {
                    el.toggle(Word::new(vec![ids.units[&(x.left, i, h)], ids.chords[&(g, h, j)]]));
                }
                for h in 1..j {
                    el.toggle(Word::new(vec![ids.chords[&(g, i, h)], ids.units[&(x.right, h, j)]]));
                }
                b.set_d(ids.chords[&(g, i, j)], el);
            }
        }
    }
    Ok(ids)
}

/// The arrow algebra: copies a_{i,j} of every generator and e_{i,j} for i < j.
pub fn build_cap_algebra(spec: &CapSpec) -> Result<Dga> {
    let mut b = cap_ring_and_order(spec);
    add_cap_generators(spec, &mut b)?;
    b.build()
}

/// The cap algebra with the pairs c_{i,j}, m_{i,j} (i < j) adjoined;
/// `dim` is the dimension of the cores.
pub fn build_model_cap(spec: &CapSpec, dim: i64) -> Result<Dga> {
    let mut b = cap_ring_and_order(spec);
    let ids = add_cap_generators(spec, &mut b)?;
    let ring = &spec.base.ring;
    for s in ring.indices() {
        let k = spec.count(s);
        let (cn, mn) = (family(ring, "c", s), family(ring, "m", s));
        let mut c = HashMap::new();
        let mut m = HashMap::new();
        for i in 1..=k {
            for j in i + 1..=k {
                let (l, r, gap) = (spec.copies.target(s, i), spec.copies.target(s, j), spec.p(s, i) - spec.p(s, j));
                let cg = Generator::new(copy_name(&cn, i, j), gap + dim - 1, l, r).with_kind(GenKind::DoublePoint);
                let mg = Generator::new(copy_name(&mn, i, j), gap + dim - 2, l, r).with_kind(GenKind::Auxiliary);
                c.insert((i, j), b.add(cg)?);
                m.insert((i, j), b.add(mg)?);
            }
        }
        let e = |i: u32, j: u32| ids.units[&(s, i, j)];
        for i in 1..=k {
            for j in i + 1..=k {
                let mut dc = Element::gen(m[&(i, j)]);
                let mut dm = Element::zero();
                for h in i + 1..j {
                    dc.toggle(Word::new(vec![c[&(i, h)], e(h, j)]));
                    dc.toggle(Word::new(vec![e(i, h), c[&(h, j)]]));
                    dm.toggle(Word::new(vec![m[&(i, h)], e(h, j)]));
                    dm.toggle(Word::new(vec![e(i, h), m[&(h, j)]]));
                }
                b.set_d(c[&(i, j)], dc);
                b.set_d(m[&(i, j)], dm);
            }
        }
    }
    b.build()
}

/// A three-part word: a cap¹ word, one hatted generator, a cap⁰ word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiWord {
    pub left: Vec<u32>,
    pub hat: u32,
    pub right: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatGenerator {
    pub name: String,
    /// Copy idempotent in the cap¹ algebra.
    pub left: u32,
    /// Copy idempotent in the cap⁰ algebra.
    pub right: u32,
    pub degree: i64,
}

/// The free bimodule on ê^σ_{i,j} and â_{i,j} between the cap¹ algebra on the
/// left and the cap⁰ algebra on the right.
#[derive(Clone, Debug)]
pub struct CthulhuBimodule {
    pub cap0: CapSpec,
    pub cap1: CapSpec,
    pub left: Dga,
    pub right: Dga,
    gens: Vec<HatGenerator>,
    d: Vec<Lin<BiWord>>,
}

fn hat_name(name: &str, i: u32, j: u32) -> String {
    format!("^{}", copy_name(name, i, j))
}

impl CthulhuBimodule {
    pub fn generators(&self) -> &[HatGenerator] {
        &self.gens
    }

    pub fn index(&self, name: &str) -> Option<u32> {
        self.gens.binary_search_by(|g| g.name.as_str().cmp(name)).ok().map(|i| i as u32)
    }

    pub fn d(&self, g: u32) -> &Lin<BiWord> {
        &self.d[g as usize]
    }

    fn lookup(&self, name: &str) -> u32 {
        self.index(name).expect("hatted generator exists")
    }

    /// ŵ_{i,j}: one hatted letter, cap¹ copies before it and cap⁰ copies after.
    pub fn hat_subscript_expand(&self, w: &Word, i: u32, j: u32) -> Result<Lin<BiWord>> {
        let base = &self.cap0.base;
        let mut out = Lin::zero();
        if w.is_empty() {
            return Ok(out);
        }
        let first = base.gen(w.letters[0]);
        let last = base.gen(*w.letters.last().unwrap());
        check_range("start", i, self.cap1.count(first.left))?;
        check_range("end", j, self.cap0.count(last.right))?;
        for l in 0..w.len() {
            // boundaries before the hat count cap¹ copies, after it cap⁰ copies
            let count = |p: usize| {
                let s = base.gen(w.letters[p - 1]).right;
                if p <= l {
                    self.cap1.count(s)
                } else {
                    self.cap0.count(s)
                }
            };
            for path in index_paths(w.len(), i, j, &count) {
                let name = |p: usize| copy_name(base.name(w.letters[p]), path[p], path[p + 1]);
                let left = (0..l).map(|p| self.left.index(&name(p)).unwrap()).collect();
                let right = (l + 1..w.len()).map(|p| self.right.index(&name(p)).unwrap()).collect();
                out.toggle(BiWord { left, hat: self.lookup(&format!("^{}", name(l))), right });
            }
        }
        Ok(out)
    }

    /// 𝔡 on an arbitrary three-part word.
    pub fn apply(&self, w: &BiWord) -> Lin<BiWord> {
        let mut out = Lin::zero();
        for (p, &g) in w.left.iter().enumerate() {
            for u in self.left.d(g).words() {
                let left = [&w.left[..p], &u.letters[..], &w.left[p + 1..]].concat();
                out.toggle(BiWord { left, hat: w.hat, right: w.right.clone() });
            }
        }
        for t in self.d[w.hat as usize].iter() {
            let left = [&w.left[..], &t.left[..]].concat();
            let right = [&t.right[..], &w.right[..]].concat();
            out.toggle(BiWord { left, hat: t.hat, right });
        }
        for (p, &g) in w.right.iter().enumerate() {
            for u in self.right.d(g).words() {
                let right = [&w.right[..p], &u.letters[..], &w.right[p + 1..]].concat();
                out.toggle(BiWord { left: w.left.clone(), hat: w.hat, right });
            }
        }
        out
    }

    /// Generators with 𝔡² ≠ 0.
    pub fn d_squared_defects(&self) -> Vec<String> {
        use rayon::prelude::*;
        (0..self.gens.len())
            .into_par_iter()
            .filter(|&g| {
                let mut acc = Lin::zero();
                for w in self.d[g].iter() {
                    acc.add_assign(&self.apply(w));
                }
                !acc.is_zero()
            })
            .map(|g| self.gens[g].name.clone())
            .collect()
    }

    pub fn render(&self, x: &Lin<BiWord>) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let word = |w: &BiWord| {
            let mut parts: Vec<&str> = w.left.iter().map(|&g| self.left.name(g)).collect();
            parts.push(&self.gens[w.hat as usize].name);
            parts.extend(w.right.iter().map(|&g| self.right.name(g)));
            parts.join("*")
        };
        x.iter().map(word).collect::<Vec<_>>().join(" + ")
    }
}

/// Summation ranges for the ê- and â-terms of 𝔡.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ranges {
    /// Read off from Δ(∂⁺x) modulo the killed e-copies.
    #[default]
    Derived,
    /// The literal bounds 1 < h < k, i < h < k and 1 ≤ h ≤ j, clipped to
    /// existing copies.
    Printed,
}

pub fn build_cthulhu_bimodule(cap1: &CapSpec, cap0: &CapSpec) -> Result<CthulhuBimodule> {
    build_cthulhu_bimodule_with(cap1, cap0, Ranges::Derived)
}

pub fn build_cthulhu_bimodule_with(cap1: &CapSpec, cap0: &CapSpec, ranges: Ranges) -> Result<CthulhuBimodule> {
    let printed = ranges == Ranges::Printed;
    if cap0.base != cap1.base {
        return Err(Error::InvalidCap("the two caps have different bases".into()));
    }
    let base = &cap0.base;
    let left = build_cap_algebra(cap1)?;
    let right = build_cap_algebra(cap0)?;
    let mut gens = Vec::new();
    for s in base.ring.indices() {
        let name = e_name(&base.ring, s);
        for i in 1..=cap1.count(s) {
            for j in 1..=cap0.count(s) {
                gens.push(HatGenerator {
                    name: hat_name(&name, i, j),
                    left: cap1.copies.target(s, i),
                    right: cap0.copies.target(s, j),
                    degree: cap1.p(s, i) - cap0.p(s, j),
                });
            }
        }
    }
    for x in base.generators() {
        for i in 1..=cap1.count(x.left) {
            for j in 1..=cap0.count(x.right) {
                gens.push(HatGenerator {
                    name: hat_name(&x.name, i, j),
                    left: cap1.copies.target(x.left, i),
                    right: cap0.copies.target(x.right, j),
                    degree: x.degree + 1 + cap1.p(x.left, i) - cap0.p(x.right, j),
                });
            }
        }
    }
    gens.sort_by(|a, b| a.name.cmp(&b.name));
    if gens.windows(2).any(|w| w[0].name == w[1].name) {
        return Err(Error::NameClash("hatted generators".into()));
    }
    let mut bm = CthulhuBimodule { cap0: cap0.clone(), cap1: cap1.clone(), left, right, gens, d: Vec::new() };
    let mut d = vec![Lin::zero(); bm.gens.len()];
    let e1 = |s: u32, i: u32, h: u32| bm.left.index(&copy_name(&e_name(&base.ring, s), i, h)).unwrap();
    let e0 = |s: u32, h: u32, j: u32| bm.right.index(&copy_name(&e_name(&base.ring, s), h, j)).unwrap();
    for s in base.ring.indices() {
        let name = e_name(&base.ring, s);
        let (k1, k0) = (cap1.count(s), cap0.count(s));
        for i in 1..=k1 {
            for j in 1..=k0 {
                let el = &mut d[bm.lookup(&hat_name(&name, i, j)) as usize];
                let top = if printed { k1.saturating_sub(1) } else { k1 };
                for h in i + 1..=top {
                    el.toggle(BiWord {
                        left: vec![e1(s, i, h)],
                        hat: bm.lookup(&hat_name(&name, h, j)),
                        right: vec![],
                    });
                }
                for h in 1..j {
                    el.toggle(BiWord {
                        left: vec![],
                        hat: bm.lookup(&hat_name(&name, i, h)),
                        right: vec![e0(s, h, j)],
                    });
                }
            }
        }
    }
    for (g, x) in base.generators().iter().enumerate() {
        let (sl, sr) = (x.left, x.right);
        let (el_name, er_name) = (e_name(&base.ring, sl), e_name(&base.ring, sr));
        for i in 1..=cap1.count(sl) {
            for j in 1..=cap0.count(sr) {
                let mut el = Lin::zero();
                for w in base.d(g as u32).words() {
                    el.add_assign(&bm.hat_subscript_expand(w, i, j)?);
                }
                let (k1l, k0l, k0r, k1r) = (cap1.count(sl), cap0.count(sl), cap0.count(sr), cap1.count(sr));
                let eh_a = if printed { 2..=k1l.saturating_sub(1).min(k0l) } else { 1..=k0l };
                let e_ah = if printed { i + 1..=k1l.saturating_sub(1) } else { i + 1..=k1l };
                let ah_e =
                    if printed { 2..=k0r.saturating_sub(1).min(j.saturating_sub(1)) } else { 1..=j.saturating_sub(1) };
                let a_eh = if printed { 1..=j.min(k1r) } else { 1..=k1r };
                for h in eh_a {
                    let a0 = bm.right.index(&copy_name(&x.name, h, j)).unwrap();
                    el.toggle(BiWord { left: vec![], hat: bm.lookup(&hat_name(&el_name, i, h)), right: vec![a0] });
                }
                for h in e_ah {
                    el.toggle(BiWord {
                        left: vec![e1(sl, i, h)],
                        hat: bm.lookup(&hat_name(&x.name, h, j)),
                        right: vec![],
                    });
                }
                for h in ah_e {
                    el.toggle(BiWord {
                        left: vec![],
                        hat: bm.lookup(&hat_name(&x.name, i, h)),
                        right: vec![e0(sr, h, j)],
                    });
                }
                for h in a_eh {
                    let a1 = bm.left.index(&copy_name(&x.name, i, h)).unwrap();
                    el.toggle(BiWord { left: vec![a1], hat: bm.lookup(&hat_name(&er_name, h, j)), right: vec![] });
                }
                d[bm.lookup(&hat_name(&x.name, i, j)) as usize] = el;
            }
        }
    }
    bm.d = d;
    let defects = bm.d_squared_defects();
    if !defects.is_empty() {
        return Err(Error::DSquared(defects.join(", ")));
    }
    Ok(bm)
}

/// Accepts a module over the cap algebra or over its slashed form.
fn check_over(cap: &Dga, v: &DgModule) -> Result<()> {
    match v.validate(cap) {
        Ok(()) => Ok(()),
        Err(e) => v.validate(&omit_idempotents(cap)).map_err(|_| e),
    }
}

/// hom over the hatted generators, with three-part words acting through the
/// modules: V0 over the cap⁰ algebra, V1 over the cap¹ algebra.
pub fn cthulhu_complex(b: &CthulhuBimodule, v0: &DgModule, v1: &DgModule) -> Result<ChainComplex> {
    check_over(&b.right, v0)?;
    check_over(&b.left, v1)?;
    let slots: Vec<Slot> =
        b.gens.iter().map(|g| Slot { name: g.name.clone(), left: g.left, right: g.right, degree: g.degree }).collect();
    let act = |m: &DgModule, letters: &[u32]| {
        if letters.is_empty() {
            SparseMat::identity(m.dim())
        } else {
            m.act_word(&Word::new(letters.to_vec()))
        }
    };
    let (i0, i1) = (SparseMat::identity(v0.dim()), SparseMat::identity(v1.dim()));
    let mut terms = Vec::new();
    for g in 0..b.gens.len() {
        for w in b.d[g].iter() {
            terms.push(Term { target: g, source: w.hat as usize, left: act(v1, &w.left), right: act(v0, &w.right) });
        }
        terms.push(Term { target: g, source: g, left: i1.clone(), right: v0.d().clone() });
        terms.push(Term { target: g, source: g, left: v1.d().clone(), right: i0.clone() });
    }
    HomSpace::new(&slots, v0, v1).assemble(&slots, v0, v1, &terms, b.cap0.base.grading)
}

/// Checks `eps` against the cap algebra in the form it was given.
fn check_cap_augmentation(cap: &Dga, eps: &Augmentation) -> Result<()> {
    match eps.values {
        AugValues::Ke(_) => check_augmentation(cap, eps, false),
        AugValues::Scalar(_) => check_augmentation(&omit_idempotents(cap), eps, false),
    }
}

/// F_ε: the one-dimensional module over the slashed cap algebra.
pub fn augmentation_module(cap: &Dga, eps: &Augmentation) -> Result<DgModule> {
    check_cap_augmentation(cap, eps)?;
    let over = omit_idempotents(cap);
    let act = eps.bits().iter().map(|&b| SparseMat::from_entries(1, 1, b.then_some((0, 0)))).collect();
    DgModule::new(&over, vec![BasisVector::new("1", None, 0)], SparseMat::zero(1, 1), act)
}

/// The representation of A_S on the copies: d v_j = Σ ε(e_{i,j}) v_i and
/// x v_j = Σ ε(x_{i,j}) v_i.
pub fn module_from_cap_augmentation(base: &Dga, spec: &CapSpec, eps: &Augmentation) -> Result<DgModule> {
    if base != &spec.base {
        return Err(Error::InvalidCap("augmentation is over a cap of a different base".into()));
    }
    let cap = build_cap_algebra(spec)?;
    check_cap_augmentation(&cap, eps)?;
    let ring = &base.ring;
    let mut basis = Vec::new();
    for s in ring.indices() {
        for i in 1..=spec.count(s) {
            // degrees are minus the potentials, so that ε-supported copies have degree 0
            basis.push(BasisVector::new(crate::transforms::copy_label(ring.label(s), i), Some(s), -spec.p(s, i)));
        }
    }
    let n = basis.len();
    let at = |s: u32, i: u32| spec.copies.target(s, i) as usize;
    let bit = |name: String| cap.index(&name).is_some_and(|g| eps.bit(g));
    let mut dm = Vec::new();
    for s in ring.indices() {
        let name = e_name(ring, s);
        for i in 1..=spec.count(s) {
            for j in i + 1..=spec.count(s) {
                if bit(copy_name(&name, i, j)) {
                    dm.push((at(s, i), at(s, j)));
                }
            }
        }
    }
    let act = base
        .generators()
        .iter()
        .map(|x| {
            let mut entries = Vec::new();
            for i in 1..=spec.count(x.left) {
                for j in 1..=spec.count(x.right) {
                    if bit(copy_name(&x.name, i, j)) {
                        entries.push((at(x.left, i), at(x.right, j)));
                    }
                }
            }
            SparseMat::from_entries(n, n, entries)
        })
        .collect();
    DgModule::new(base, basis, SparseMat::from_entries(n, n, dm), act)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub cthulhu: PoincarePolynomial,
    pub rhom: PoincarePolynomial,
    pub cthulhu_dim: usize,
    pub rhom_dim: usize,
    /// `rhom = cthulhu.shift(shift)` when one exists.
    pub shift: Option<i64>,
    pub pass: bool,
}

/// Cthulhu homology with coefficients in F_ε0, F_ε1 against RHom over the
/// base between the induced representations.
pub fn pipeline_compare(
    base: &Dga,
    cap0: &CapSpec,
    cap1: &CapSpec,
    eps0: &Augmentation,
    eps1: &Augmentation,
) -> Result<PipelineReport> {
    if cap0.base != *base {
        return Err(Error::InvalidCap("the caps are not over this base".into()));
    }
    pipeline_compare_on(&build_cthulhu_bimodule(cap1, cap0)?, eps0, eps1)
}

/// As [`pipeline_compare`], reusing a bimodule across augmentation pairs.
pub fn pipeline_compare_on(bm: &CthulhuBimodule, eps0: &Augmentation, eps1: &Augmentation) -> Result<PipelineReport> {
    let base = &bm.cap0.base;
    let f0 = augmentation_module(&bm.right, eps0)?;
    let f1 = augmentation_module(&bm.left, eps1)?;
    let cth = cthulhu_complex(bm, &f0, &f1)?;
    let v0 = module_from_cap_augmentation(base, &bm.cap0, eps0)?;
    let v1 = module_from_cap_augmentation(base, &bm.cap1, eps1)?;
    let rh = rhom_complex(base, &v0, &v1)?;
    let (a, b) = (cth.betti(), rh.betti());
    let shift = a.match_shift(&b, base.grading);
    Ok(PipelineReport { cthulhu_dim: cth.dim(), rhom_dim: rh.dim(), pass: shift.is_some(), shift, cthulhu: a, rhom: b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_dga;
    use crate::modules::augment::find_augmentations;
    use crate::registry;
    use crate::transforms::{eliminate_cm_tower, expand_idempotents, morsify, ordered_quotient};

    fn composite(spec: &CapSpec) -> Dga {
        let (e, _) = expand_idempotents(&morsify(&spec.base).unwrap(), &spec.copies).unwrap();
        ordered_quotient(&e).unwrap()
    }

    #[test]
    fn subscript_expansion() {
        let h = registry::hopf_attaching();
        let spec = CapSpec::new(h.clone(), vec![1, 2], vec![vec![0], vec![0, 0]]).unwrap();
        let cap = build_cap_algebra(&spec).unwrap();
        let (x, y) = (h.require("x").unwrap(), h.require("y").unwrap());
        let xy = subscript_expand(&spec, &cap, &Word::new(vec![x, y]), 1, 1).unwrap();
        assert_eq!(cap.render(&xy), "x@1.1*y@1.1 + x@1.2*y@2.1");
        assert_eq!(subscript_expand(&spec, &cap, &Word::gen(x), 1, 2).unwrap().len(), 1);
        assert!(subscript_expand(&spec, &cap, &Word::unit(1), 1, 2).unwrap().is_zero());
        assert!(subscript_expand(&spec, &cap, &Word::gen(x), 2, 1).is_err());
    }

    #[test]
    fn unknot_three_copies() {
        let spec = CapSpec::uniform(registry::unknot(), 3).unwrap();
        let cap = build_cap_algebra(&spec).unwrap();
        let d = |n: &str| cap.render(cap.d(cap.require(n).unwrap()));
        assert_eq!(d("e@1.3"), "e@1.2*e@2.3");
        assert_eq!(d("a@1.3"), "a@1.1*e@1.3 + a@1.2*e@2.3 + e@1.2*a@2.3 + e@1.3*a@3.3");
        assert_eq!(cap, composite(&spec));
    }

    #[test]
    fn one_copy_is_the_base() {
        let t = registry::trefoil();
        let cap = build_cap_algebra(&CapSpec::uniform(t.clone(), 1).unwrap()).unwrap();
        assert_eq!(cap.n_gens(), t.n_gens());
        assert_eq!(cap.render(cap.d(cap.require("a1@1.1").unwrap())), "1@s#1 + b1@1.1 + b1@1.1*b2@1.1*b3@1.1 + b3@1.1");
    }

    #[test]
    fn model_cap_small_cases() {
        let two = build_model_cap(&CapSpec::uniform(registry::unknot(), 2).unwrap(), 2).unwrap();
        assert_eq!(two.render(two.d(two.require("c@1.2").unwrap())), "m@1.2");
        assert!(two.d(two.require("m@1.2").unwrap()).is_zero());
        assert_eq!(two.gen(two.require("c@1.2").unwrap()).degree, 1);
        for k in 2..=4 {
            let spec = CapSpec::uniform(registry::unknot(), k).unwrap();
            let model = build_model_cap(&spec, 2).unwrap();
            assert!(check_dga(&model).ok(), "{:?}", check_dga(&model));
            assert_eq!(eliminate_cm_tower(&model).unwrap(), build_cap_algebra(&spec).unwrap());
        }
    }

    #[test]
    fn bimodule_small_cases() {
        let u = registry::unknot();
        let one = CapSpec::uniform(u.clone(), 1).unwrap();
        let two = CapSpec::uniform(u, 2).unwrap();
        let b = build_cthulhu_bimodule(&one, &one).unwrap();
        assert_eq!(b.generators().len(), 2);
        assert_eq!(b.render(b.d(b.index("^a@1.1").unwrap())), "^e@1.1*a@1.1 + a@1.1*^e@1.1");
        assert!(b.d(b.index("^e@1.1").unwrap()).is_zero());
        let b = build_cthulhu_bimodule(&two, &one).unwrap();
        assert!(b.d(b.index("^e@2.1").unwrap()).is_zero());
        assert_eq!(b.render(b.d(b.index("^e@1.1").unwrap())), "e@1.2*^e@2.1");
    }

    #[test]
    fn bimodule_d_squared_on_trefoil() {
        let t = registry::trefoil();
        let s1 = CapSpec::new(t.clone(), vec![2], vec![vec![0, 1]]).unwrap();
        let s0 = CapSpec::new(t, vec![2], vec![vec![1, 0]]).unwrap();
        assert!(build_cthulhu_bimodule(&s1, &s0).is_ok());
    }

    #[test]
    fn printed_ranges_break_d_squared() {
        let u = registry::unknot();
        let one = CapSpec::uniform(u.clone(), 1).unwrap();
        assert!(build_cthulhu_bimodule_with(&one, &one, Ranges::Printed).is_ok());
        let two = CapSpec::uniform(u, 2).unwrap();
        let err = build_cthulhu_bimodule_with(&two, &two, Ranges::Printed).unwrap_err();
        assert!(matches!(err, Error::DSquared(ref g) if g == "^a@1.1, ^a@1.2, ^a@2.2"), "{err}");
        assert!(build_cthulhu_bimodule(&two, &two).is_ok());
    }

    #[test]
    fn pipeline_unknot() {
        let u = registry::unknot();
        for (k0, k1) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let (c0, c1) = (CapSpec::uniform(u.clone(), k0).unwrap(), CapSpec::uniform(u.clone(), k1).unwrap());
            let e0 = Augmentation::zero(&build_cap_algebra(&c0).unwrap());
            let e1 = Augmentation::zero(&build_cap_algebra(&c1).unwrap());
            let r = pipeline_compare(&u, &c0, &c1, &e0, &e1).unwrap();
            assert!(r.pass, "{r:?}");
            assert_eq!(r.shift, Some(0));
            assert_eq!(r.rhom.total(), 2 * (k0 * k1) as usize);
        }
    }

    #[test]
    fn unknot_two_copies_only_zero_augmentation() {
        let cap = build_cap_algebra(&CapSpec::uniform(registry::unknot(), 2).unwrap()).unwrap();
        let augs = find_augmentations(&cap, 24).unwrap();
        assert_eq!(augs, vec![Augmentation::zero(&cap)]);
    }

    #[test]
    fn module_with_differential() {
        // potentials (1, 0) give e@1.2 degree 0
        let u = registry::unknot();
        let spec = CapSpec::new(u.clone(), vec![2], vec![vec![1, 0]]).unwrap();
        let cap = build_cap_algebra(&spec).unwrap();
        let mut bits = vec![false; cap.n_gens()];
        bits[cap.require("e@1.2").unwrap() as usize] = true;
        let eps = Augmentation::from_bits(&cap, bits);
        let v = module_from_cap_augmentation(&u, &spec, &eps).unwrap();
        assert_eq!(v.d().nnz(), 1);
        assert!(v.d().mul(v.d()).is_zero());
        assert!(v.betti(&u).is_zero());
    }
}
