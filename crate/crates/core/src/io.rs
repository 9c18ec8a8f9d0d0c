//! JSON documents for algebras, complexes, modules, cap specs and augmentations.
//!
//! Serialization is canonical: generators sorted by name, words in the
//! algebra's order, maps keyed by name. `parse(serialize(x)) == x`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::algebra::{CopyOrigin, Dga, Element, GenKind, Generator, Grading, IdempotentRing, Word};
use crate::error::{Error, Result};
use crate::homology::ChainComplex;
use crate::linalg::SparseMat;
use crate::modules::augment::Augmentation;
use crate::modules::{BasisVector, DgModule};
use crate::surgery::CapSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDoc {
    pub idempotents: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GradingDoc {
    Z,
    Zmod(u32),
}

impl From<Grading> for GradingDoc {
    fn from(g: Grading) -> Self {
        match g {
            Grading::Z => GradingDoc::Z,
            Grading::Zmod(n) => GradingDoc::Zmod(n),
        }
    }
}

impl From<GradingDoc> for Grading {
    fn from(g: GradingDoc) -> Self {
        match g {
            GradingDoc::Z => Grading::Z,
            GradingDoc::Zmod(n) => Grading::Zmod(n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub name: String,
    pub degree: i64,
    pub left: String,
    pub right: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
}

/// A word is a list of generator names; `{"at": s}` is the unit of s.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordDoc {
    Letters(Vec<String>),
    Unit { at: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OriginDoc {
    pub source: String,
    pub copy: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DgaDoc {
    pub ring: RingDoc,
    pub grading: GradingDoc,
    #[serde(default)]
    pub slashed: bool,
    #[serde(default)]
    pub generators: Vec<GeneratorDoc>,
    #[serde(default)]
    pub differential: BTreeMap<String, Vec<WordDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<OriginDoc>>,
}

fn parse_rational(s: &str) -> Result<Rational64> {
    Rational64::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational `{s}`, expected p/q")))
}

fn idem(ring: &IdempotentRing, label: &str) -> Result<u32> {
    ring.index(label).ok_or_else(|| Error::UnknownIdempotent(label.to_string()))
}

fn show_word(w: &WordDoc) -> String {
    match w {
        WordDoc::Letters(l) if l.is_empty() => "1".into(),
        WordDoc::Letters(l) => l.join("*"),
        WordDoc::Unit { at } => format!("1@{at}"),
    }
}

impl DgaDoc {
    pub fn from_dga(d: &Dga) -> Self {
        let ring = &d.ring;
        let generators = d
            .generators()
            .iter()
            .map(|g| GeneratorDoc {
                name: g.name.clone(),
                degree: g.degree,
                left: ring.label(g.left).to_string(),
                right: ring.label(g.right).to_string(),
                action: g.action.map(|a| a.to_string()),
                kind: (g.kind != GenKind::Chord).then(|| g.kind.as_str().to_string()),
            })
            .collect();
        let mut differential = BTreeMap::new();
        for g in 0..d.n_gens() as u32 {
            if d.d(g).is_zero() {
                continue;
            }
            let words = d
                .d(g)
                .words()
                .map(|w| match (w.is_empty(), w.tag) {
                    (true, Some(s)) => WordDoc::Unit { at: ring.label(s).to_string() },
                    _ => WordDoc::Letters(w.letters.iter().map(|&l| d.name(l).to_string()).collect()),
                })
                .collect();
            differential.insert(d.name(g).to_string(), words);
        }
        Self {
            ring: RingDoc { idempotents: ring.labels().to_vec() },
            grading: d.grading.into(),
            slashed: d.slashed,
            generators,
            differential,
            ordering: d
                .ordering
                .as_ref()
                .map(|o| o.iter().map(|c| OriginDoc { source: c.source.clone(), copy: c.copy }).collect()),
        }
    }

    pub fn to_dga(&self) -> Result<Dga> {
        let ring = IdempotentRing::new(self.ring.idempotents.iter().cloned())?;
        let ordering = self
            .ordering
            .as_ref()
            .map(|o| o.iter().map(|c| CopyOrigin { source: c.source.clone(), copy: c.copy }).collect());
        let mut b = Dga::builder(ring.clone(), self.grading.into()).slashed(self.slashed).ordering(ordering);
        for g in &self.generators {
            let mut gen = Generator::new(g.name.clone(), g.degree, idem(&ring, &g.left)?, idem(&ring, &g.right)?);
            if let Some(a) = &g.action {
                gen = gen.with_action(parse_rational(a)?);
            }
            if let Some(k) = &g.kind {
                gen = gen.with_kind(GenKind::parse(k).ok_or_else(|| Error::Parse(format!("unknown kind `{k}`")))?);
            }
            b.add(gen)?;
        }
        for (name, words) in &self.differential {
            let g = b.index(name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            let mut el = Element::zero();
            for w in words {
                let word = match w {
                    WordDoc::Unit { at } => Word::unit(idem(&ring, at)?),
                    WordDoc::Letters(letters) => {
                        let mut idx = Vec::with_capacity(letters.len());
                        for l in letters {
                            idx.push(b.index(l).ok_or_else(|| Error::DanglingName {
                                generator: name.clone(),
                                word: show_word(w),
                                missing: l.clone(),
                            })?);
                        }
                        Word::new(idx)
                    }
                };
                el.toggle(word);
            }
            b.set_d(g, el);
        }
        b.build()
    }
}

pub fn parse_dga(text: &str) -> Result<Dga> {
    serde_json::from_str::<DgaDoc>(text)?.to_dga()
}

pub fn dga_to_json(d: &Dga) -> String {
    serde_json::to_string_pretty(&DgaDoc::from_dga(d)).expect("documents serialize")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellDoc {
    pub label: String,
    pub degree: i64,
}

/// `d` lists the nonzero entries as `[row, col]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub grading: GradingDoc,
    pub basis: Vec<CellDoc>,
    #[serde(default)]
    pub d: Vec<[usize; 2]>,
}

fn entries(m: &SparseMat) -> Vec<[usize; 2]> {
    let mut e: Vec<[usize; 2]> = m.entries().map(|(r, c)| [r, c]).collect();
    e.sort_unstable();
    e
}

fn matrix(n: usize, e: &[[usize; 2]], what: &str) -> Result<SparseMat> {
    if let Some([r, c]) = e.iter().find(|[r, c]| *r >= n || *c >= n) {
        return Err(Error::Parse(format!("{what}: entry [{r}, {c}] outside a {n}x{n} matrix")));
    }
    let mut m = SparseMat::zero(n, n);
    for &[r, c] in e {
        m.toggle(r, c);
    }
    Ok(m)
}

pub fn complex_to_json(c: &ChainComplex) -> String {
    let doc = ComplexDoc {
        grading: c.grading.into(),
        basis: c.basis().iter().map(|(l, k)| CellDoc { label: l.clone(), degree: *k }).collect(),
        d: entries(c.d()),
    };
    serde_json::to_string_pretty(&doc).expect("documents serialize")
}

pub fn parse_complex(text: &str) -> Result<ChainComplex> {
    let doc: ComplexDoc = serde_json::from_str(text)?;
    let n = doc.basis.len();
    let d = matrix(n, &doc.d, "d")?;
    ChainComplex::new(doc.grading.into(), doc.basis.into_iter().map(|c| (c.label, c.degree)).collect(), d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleVectorDoc {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotent: Option<String>,
    pub degree: i64,
}

/// Actions are keyed by generator name; a missing generator acts by zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub basis: Vec<ModuleVectorDoc>,
    #[serde(default)]
    pub d: Vec<[usize; 2]>,
    #[serde(default)]
    pub actions: BTreeMap<String, Vec<[usize; 2]>>,
}

pub fn module_to_json(over: &Dga, v: &DgModule) -> String {
    let doc = ModuleDoc {
        basis: v
            .basis()
            .iter()
            .map(|b| ModuleVectorDoc {
                label: b.label.clone(),
                idempotent: b.idempotent.map(|s| over.ring.label(s).to_string()),
                degree: b.degree,
            })
            .collect(),
        d: entries(v.d()),
        actions: (0..over.n_gens() as u32)
            .filter(|&g| !v.act(g).is_zero())
            .map(|g| (over.name(g).to_string(), entries(v.act(g))))
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("documents serialize")
}

pub fn parse_module(over: &Dga, text: &str) -> Result<DgModule> {
    let doc: ModuleDoc = serde_json::from_str(text)?;
    let n = doc.basis.len();
    let mut basis = Vec::with_capacity(n);
    for b in doc.basis {
        let s = b.idempotent.as_deref().map(|l| idem(&over.ring, l)).transpose()?;
        basis.push(BasisVector::new(b.label, s, b.degree));
    }
    let d = matrix(n, &doc.d, "d")?;
    let mut act = vec![SparseMat::zero(n, n); over.n_gens()];
    for (name, e) in &doc.actions {
        act[over.require(name)? as usize] = matrix(n, e, name)?;
    }
    DgModule::new(over, basis, d, act)
}

/// `base` names a registry entry or a DGA file; counts and potentials are
/// keyed by base idempotent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapSpecDoc {
    pub base: String,
    pub counts: BTreeMap<String, u32>,
    #[serde(default)]
    pub potentials: BTreeMap<String, Vec<i64>>,
}

impl CapSpecDoc {
    pub fn from_spec(base: &str, spec: &CapSpec) -> Self {
        let ring = spec.copies.source();
        Self {
            base: base.to_string(),
            counts: ring.indices().map(|s| (ring.label(s).to_string(), spec.copies.count(s))).collect(),
            potentials: ring
                .indices()
                .map(|s| (ring.label(s).to_string(), spec.copies.potentials()[s as usize].clone()))
                .collect(),
        }
    }

    /// Missing potentials default to zero.
    pub fn to_spec(&self, base: Dga) -> Result<CapSpec> {
        let ring = base.ring.clone();
        for l in self.counts.keys().chain(self.potentials.keys()) {
            idem(&ring, l)?;
        }
        let mut counts = Vec::new();
        let mut pots = Vec::new();
        for s in ring.indices() {
            let label = ring.label(s);
            let k = *self.counts.get(label).ok_or_else(|| Error::CopyMapMismatch(format!("no count for `{label}`")))?;
            counts.push(k);
            pots.push(self.potentials.get(label).cloned().unwrap_or_else(|| vec![0; k as usize]));
        }
        CapSpec::new(base, counts, pots)
    }
}

pub fn parse_cap_spec(text: &str, resolve: impl FnOnce(&str) -> Result<Dga>) -> Result<CapSpec> {
    let doc: CapSpecDoc = serde_json::from_str(text)?;
    let base = resolve(&doc.base)?;
    doc.to_spec(base)
}

/// Generator name to 0/1.
pub fn augmentation_to_map(d: &Dga, eps: &Augmentation) -> BTreeMap<String, u8> {
    (0..d.n_gens() as u32).map(|g| (d.name(g).to_string(), eps.bit(g) as u8)).collect()
}

pub fn augmentation_to_json(d: &Dga, eps: &Augmentation) -> String {
    serde_json::to_string_pretty(&augmentation_to_map(d, eps)).expect("maps serialize")
}

/// Generators absent from the map get 0.
pub fn parse_augmentation(d: &Dga, text: &str) -> Result<Augmentation> {
    let map: BTreeMap<String, u8> = serde_json::from_str(text)?;
    let mut bits = vec![false; d.n_gens()];
    for (name, &b) in &map {
        if b > 1 {
            return Err(Error::Parse(format!("`{name}` has value {b}, expected 0 or 1")));
        }
        bits[d.require(name)? as usize] = b == 1;
    }
    Ok(Augmentation::from_bits(d, bits))
}
