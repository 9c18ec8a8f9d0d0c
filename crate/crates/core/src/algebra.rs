//! Idempotent rings, words, F2 elements and semi-projective DGAs.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{show_element, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdempotentRing {
    labels: Vec<String>,
}

impl IdempotentRing {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for l in &labels {
            if l.is_empty() {
                return Err(Error::InvalidRing("empty idempotent label".into()));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate idempotent `{l}`")));
            }
        }
        Ok(Self { labels })
    }

    pub fn single(label: &str) -> Self {
        Self { labels: vec![label.to_string()] }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, s: u32) -> &str {
        &self.labels[s as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index(&self, label: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> {
        0..self.labels.len() as u32
    }
}

/// Degree group: the integers or a cyclic group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Grading {
    Z,
    Zmod(u32),
}

impl Grading {
    pub fn norm(self, d: i64) -> i64 {
        match self {
            Grading::Z => d,
            Grading::Zmod(n) => d.rem_euclid(n.max(1) as i64),
        }
    }

    pub fn eq(self, a: i64, b: i64) -> bool {
        self.norm(a) == self.norm(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GenKind {
    Chord,
    DoublePoint,
    EUnit,
    Auxiliary,
}

impl GenKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GenKind::Chord => "chord",
            GenKind::DoublePoint => "double-point",
            GenKind::EUnit => "e-unit",
            GenKind::Auxiliary => "auxiliary",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "chord" => GenKind::Chord,
            "double-point" => GenKind::DoublePoint,
            "e-unit" => GenKind::EUnit,
            "auxiliary" => GenKind::Auxiliary,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    pub left: u32,
    pub right: u32,
    pub action: Option<Rational64>,
    pub kind: GenKind,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i64, left: u32, right: u32) -> Self {
        Self { name: name.into(), degree, left, right, action: None, kind: GenKind::Chord }
    }

    pub fn with_action(mut self, a: Rational64) -> Self {
        self.action = Some(a);
        self
    }

    pub fn with_kind(mut self, k: GenKind) -> Self {
        self.kind = k;
        self
    }
}

/// A word in the generators. An empty word carries the idempotent of the
/// unit summand it lives in; an untagged empty word is the global unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub letters: Vec<u32>,
    pub tag: Option<u32>,
}

impl Word {
    pub fn new(letters: Vec<u32>) -> Self {
        Self { letters, tag: None }
    }

    pub fn gen(g: u32) -> Self {
        Self { letters: vec![g], tag: None }
    }

    pub fn unit(s: u32) -> Self {
        Self { letters: Vec::new(), tag: Some(s) }
    }

    pub fn one() -> Self {
        Self { letters: Vec::new(), tag: None }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn contains(&self, g: u32) -> bool {
        self.letters.contains(&g)
    }
}

/// An F2 combination of words. Addition is symmetric difference.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(BTreeSet<Word>);

impl Element {
    pub fn zero() -> Self {
        Self(BTreeSet::new())
    }

    pub fn word(w: Word) -> Self {
        let mut e = Self::zero();
        e.0.insert(w);
        e
    }

    pub fn gen(g: u32) -> Self {
        Self::word(Word::gen(g))
    }

    pub fn toggle(&mut self, w: Word) {
        if !self.0.remove(&w) {
            self.0.insert(w);
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for w in &other.0 {
            self.toggle(w.clone());
        }
    }

    pub fn plus(mut self, other: &Element) -> Self {
        self.add_assign(other);
        self
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

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.0.iter()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.0.contains(w)
    }

    pub fn retain(&mut self, f: impl FnMut(&Word) -> bool) {
        self.0.retain(f)
    }

    pub fn into_words(self) -> impl Iterator<Item = Word> {
        self.0.into_iter()
    }
}

impl FromIterator<Word> for Element {
    fn from_iter<I: IntoIterator<Item = Word>>(iter: I) -> Self {
        let mut e = Element::zero();
        for w in iter {
            e.toggle(w);
        }
        e
    }
}

/// Which base idempotent and copy index a ring element came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CopyOrigin {
    pub source: String,
    pub copy: u32,
}

/// A finitely generated semi-projective DGA over F2.
///
/// Generators are kept sorted by name, so derived equality is table equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dga {
    pub ring: IdempotentRing,
    pub grading: Grading,
    pub slashed: bool,
    generators: Vec<Generator>,
    differential: Vec<Element>,
    pub ordering: Option<Vec<CopyOrigin>>,
}

/// Name of the e-unit attached to idempotent `s` by morsification.
pub fn e_name(ring: &IdempotentRing, s: u32) -> String {
    if ring.len() == 1 {
        "e".to_string()
    } else {
        format!("e_{}", ring.label(s))
    }
}

/// Accumulates generators in insertion order; `build` sorts and reindexes.
#[derive(Clone, Debug)]
pub struct DgaBuilder {
    ring: IdempotentRing,
    grading: Grading,
    slashed: bool,
    gens: Vec<Generator>,
    diff: Vec<Element>,
    index: HashMap<String, u32>,
    ordering: Option<Vec<CopyOrigin>>,
}

impl DgaBuilder {
    pub fn new(ring: IdempotentRing, grading: Grading) -> Self {
        Self {
            ring,
            grading,
            slashed: false,
            gens: Vec::new(),
            diff: Vec::new(),
            index: HashMap::new(),
            ordering: None,
        }
    }

    pub fn slashed(mut self, s: bool) -> Self {
        self.slashed = s;
        self
    }

    pub fn ordering(mut self, o: Option<Vec<CopyOrigin>>) -> Self {
        self.ordering = o;
        self
    }

    pub fn ring(&self) -> &IdempotentRing {
        &self.ring
    }

    pub fn add(&mut self, g: Generator) -> Result<u32> {
        if g.name.is_empty() {
            return Err(Error::InvalidGenerator { name: g.name, reason: "empty name".into() });
        }
        if g.left as usize >= self.ring.len() || g.right as usize >= self.ring.len() {
            return Err(Error::InvalidGenerator { name: g.name, reason: "endpoint outside the ring".into() });
        }
        if self.index.contains_key(&g.name) {
            return Err(Error::NameClash(g.name));
        }
        let i = self.gens.len() as u32;
        self.index.insert(g.name.clone(), i);
        self.gens.push(g);
        self.diff.push(Element::zero());
        Ok(i)
    }

    pub fn index(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn generator(&self, i: u32) -> &Generator {
        &self.gens[i as usize]
    }

    pub fn set_d(&mut self, g: u32, d: Element) {
        self.diff[g as usize] = d;
    }

    pub fn d_mut(&mut self, g: u32) -> &mut Element {
        &mut self.diff[g as usize]
    }

    pub fn build(self) -> Result<Dga> {
        let n = self.gens.len();
        for el in &self.diff {
            for w in el.words() {
                if let Some(&g) = w.letters.iter().find(|&&g| g as usize >= n) {
                    return Err(Error::GeneratorIndex(g));
                }
                if let Some(t) = w.tag {
                    if t as usize >= self.ring.len() {
                        return Err(Error::UnknownIdempotent(t.to_string()));
                    }
                }
            }
        }
        if let Some(o) = &self.ordering {
            if o.len() != self.ring.len() {
                return Err(Error::CopyMapMismatch("ordering length differs from ring size".into()));
            }
        }
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by(|&a, &b| self.gens[a as usize].name.cmp(&self.gens[b as usize].name));
        let mut new_index = vec![0u32; n];
        for (new, &old) in order.iter().enumerate() {
            new_index[old as usize] = new as u32;
        }
        let remap = |el: &Element| -> Element {
            el.words()
                .map(|w| Word { letters: w.letters.iter().map(|&g| new_index[g as usize]).collect(), tag: w.tag })
                .collect()
        };
        let generators = order.iter().map(|&o| self.gens[o as usize].clone()).collect();
        let differential = order.iter().map(|&o| remap(&self.diff[o as usize])).collect();
        Ok(Dga {
            ring: self.ring,
            grading: self.grading,
            slashed: self.slashed,
            generators,
            differential,
            ordering: self.ordering,
        })
    }
}

impl Dga {
    pub fn builder(ring: IdempotentRing, grading: Grading) -> DgaBuilder {
        DgaBuilder::new(ring, grading)
    }

    /// Builder seeded with this algebra's generators and differentials.
    pub fn to_builder(&self) -> DgaBuilder {
        let mut b =
            DgaBuilder::new(self.ring.clone(), self.grading).slashed(self.slashed).ordering(self.ordering.clone());
        for g in &self.generators {
            b.add(g.clone()).expect("names are unique");
        }
        for (i, el) in self.differential.iter().enumerate() {
            b.set_d(i as u32, el.clone());
        }
        b
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn n_gens(&self) -> usize {
        self.generators.len()
    }

    pub fn gen(&self, g: u32) -> &Generator {
        &self.generators[g as usize]
    }

    pub fn name(&self, g: u32) -> &str {
        &self.generators[g as usize].name
    }

    pub fn index(&self, name: &str) -> Option<u32> {
        self.generators.binary_search_by(|g| g.name.as_str().cmp(name)).ok().map(|i| i as u32)
    }

    pub fn require(&self, name: &str) -> Result<u32> {
        self.index(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn d(&self, g: u32) -> &Element {
        &self.differential[g as usize]
    }

    pub fn differentials(&self) -> &[Element] {
        &self.differential
    }

    pub fn word_degree(&self, w: &Word) -> i64 {
        w.letters.iter().map(|&g| self.gen(g).degree).sum()
    }

    /// Action of a word, or `None` when some letter has no action.
    pub fn word_action(&self, w: &Word) -> Option<Rational64> {
        w.letters.iter().try_fold(Rational64::from_integer(0), |acc, &g| self.gen(g).action.map(|a| acc + a))
    }

    fn check_letters(&self, el: &Element) -> Result<()> {
        for w in el.words() {
            if let Some(&g) = w.letters.iter().find(|&&g| g as usize >= self.n_gens()) {
                return Err(Error::GeneratorIndex(g));
            }
        }
        Ok(())
    }

    /// Product of two words, `None` when it vanishes.
    pub fn mul_word(&self, u: &Word, v: &Word) -> Option<Word> {
        if self.slashed {
            let mut letters = u.letters.clone();
            letters.extend_from_slice(&v.letters);
            let tag = if letters.is_empty() {
                match (u.tag, v.tag) {
                    (Some(a), Some(b)) if a != b => return None,
                    (a, b) => a.or(b),
                }
            } else {
                None
            };
            return Some(Word { letters, tag });
        }
        match (u.is_empty(), v.is_empty()) {
            (true, true) => match (u.tag, v.tag) {
                (Some(a), Some(b)) if a != b => None,
                (a, b) => Some(Word { letters: Vec::new(), tag: a.or(b) }),
            },
            (true, false) => match u.tag {
                Some(s) if self.gen(v.letters[0]).left != s => None,
                _ => Some(v.clone()),
            },
            (false, true) => match v.tag {
                Some(s) if self.gen(*u.letters.last().unwrap()).right != s => None,
                _ => Some(u.clone()),
            },
            (false, false) => {
                if self.gen(*u.letters.last().unwrap()).right != self.gen(v.letters[0]).left {
                    return None;
                }
                let mut letters = u.letters.clone();
                letters.extend_from_slice(&v.letters);
                Some(Word::new(letters))
            }
        }
    }

    fn d_word(&self, w: &Word, out: &mut Element) {
        for i in 0..w.letters.len() {
            let prefix = Word::new(w.letters[..i].to_vec());
            let suffix = Word::new(w.letters[i + 1..].to_vec());
            for z in self.d(w.letters[i]).words() {
                if let Some(p) = self.mul_word(&prefix, z).and_then(|p| self.mul_word(&p, &suffix)) {
                    out.toggle(p);
                }
            }
        }
    }

    pub fn render(&self, el: &Element) -> String {
        show_element(el, &|g| self.name(g).to_string(), &|s| self.ring.label(s).to_string())
    }

    pub fn render_word(&self, w: &Word) -> String {
        self.render(&Element::word(w.clone()))
    }
}

pub fn multiply(a: &Element, b: &Element, d: &Dga) -> Result<Element> {
    d.check_letters(a)?;
    d.check_letters(b)?;
    let mut out = Element::zero();
    for u in a.words() {
        for v in b.words() {
            if let Some(w) = d.mul_word(u, v) {
                out.toggle(w);
            }
        }
    }
    Ok(out)
}

/// Leibniz extension of the differential, sign-free in characteristic two.
pub fn differentiate(a: &Element, d: &Dga) -> Result<Element> {
    d.check_letters(a)?;
    let mut out = Element::zero();
    for w in a.words() {
        d.d_word(w, &mut out);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Composability,
    Degree,
    Action,
    DSquared,
    Generator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub generator: String,
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub generators: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn of_kind(&self, k: ViolationKind) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.kind == k)
    }
}

pub fn check_dga(d: &Dga) -> ValidationReport {
    let mut rep = ValidationReport { generators: d.n_gens(), violations: Vec::new() };
    let mut push = |g: &Generator, kind, detail: String| {
        rep.violations.push(Violation { generator: g.name.clone(), kind, detail })
    };
    for (i, g) in d.generators().iter().enumerate() {
        if let Some(a) = g.action {
            if a < Rational64::from_integer(0) {
                push(g, ViolationKind::Generator, format!("negative action {a}"));
            }
        }
        if g.kind == GenKind::EUnit {
            match &d.ordering {
                None => {
                    if !d.grading.eq(g.degree, -1) || g.left != g.right {
                        push(g, ViolationKind::Generator, "e-unit must have degree -1 and equal endpoints".into());
                    }
                }
                Some(o) => {
                    if o[g.left as usize].source != o[g.right as usize].source {
                        push(g, ViolationKind::Generator, "e-unit copy joins different base idempotents".into());
                    }
                }
            }
        }
        for w in d.d(i as u32).words() {
            if let Some(msg) = composability(d, g, w) {
                push(g, ViolationKind::Composability, format!("{}: {msg}", d.render_word(w)));
            }
            let wd = d.word_degree(w);
            if !d.grading.eq(wd, g.degree - 1) {
                push(
                    g,
                    ViolationKind::Degree,
                    format!("{} has degree {wd}, expected {}", d.render_word(w), g.degree - 1),
                );
            }
            if let (Some(ga), Some(wa)) = (g.action, d.word_action(w)) {
                if wa >= ga {
                    push(g, ViolationKind::Action, format!("{} has action {wa}, generator has {ga}", d.render_word(w)));
                }
            }
        }
        let dd = differentiate(d.d(i as u32), d).expect("indices validated at build");
        if !dd.is_zero() {
            push(g, ViolationKind::DSquared, d.render(&dd));
        }
    }
    rep
}

fn composability(d: &Dga, g: &Generator, w: &Word) -> Option<String> {
    if d.slashed {
        return w.tag.map(|_| "tagged unit in a slashed algebra".to_string());
    }
    if w.is_empty() {
        return match w.tag {
            None => Some("untagged unit in an unslashed algebra".into()),
            Some(s) if s != g.left || s != g.right => Some("unit summand does not match the endpoints".into()),
            Some(_) => None,
        };
    }
    let first = d.gen(w.letters[0]);
    let last = d.gen(*w.letters.last().unwrap());
    if first.left != g.left {
        return Some("left endpoint mismatch".into());
    }
    if last.right != g.right {
        return Some("right endpoint mismatch".into());
    }
    for pair in w.letters.windows(2) {
        if d.gen(pair[0]).right != d.gen(pair[1]).left {
            return Some("letters not composable".into());
        }
    }
    None
}

/// An F2 element of k_S ⊗ k_S, as a set of idempotent pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KeElement(BTreeSet<(u32, u32)>);

impl KeElement {
    pub fn zero() -> Self {
        Self(BTreeSet::new())
    }

    pub fn pair(s: u32, t: u32) -> Self {
        Self([(s, t)].into_iter().collect())
    }

    /// Σ_s s⊗s, the unit for the star product.
    pub fn diagonal(ring: &IdempotentRing) -> Self {
        Self(ring.indices().map(|s| (s, s)).collect())
    }

    pub fn toggle(&mut self, p: (u32, u32)) {
        if !self.0.remove(&p) {
            self.0.insert(p);
        }
    }

    pub fn plus(mut self, other: &KeElement) -> Self {
        for &p in &other.0 {
            self.toggle(p);
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().copied()
    }

    /// `s·f`: keep pairs whose first slot is `s`.
    pub fn left_scale(&self, s: u32) -> Self {
        Self(self.0.iter().copied().filter(|p| p.0 == s).collect())
    }

    /// `f·s`: keep pairs whose second slot is `s`.
    pub fn right_scale(&self, s: u32) -> Self {
        Self(self.0.iter().copied().filter(|p| p.1 == s).collect())
    }
}

impl FromIterator<(u32, u32)> for KeElement {
    fn from_iter<I: IntoIterator<Item = (u32, u32)>>(iter: I) -> Self {
        let mut k = KeElement::zero();
        for p in iter {
            k.toggle(p);
        }
        k
    }
}

/// (s⊗s')⋆(t⊗t') = λ(s't) s⊗t'.
pub fn star(f: &KeElement, g: &KeElement) -> KeElement {
    let mut out = KeElement::zero();
    for (s, s2) in f.pairs() {
        for (t, t2) in g.pairs() {
            if s2 == t {
                out.toggle((s, t2));
            }
        }
    }
    out
}

/// Multiplicative extension of a generator assignment to k_S ⊗ k_S.
pub fn evaluate_ke_morphism(eps: &[KeElement], x: &Element, d: &Dga) -> Result<KeElement> {
    if eps.len() != d.n_gens() {
        return Err(Error::Shape(format!("{} values for {} generators", eps.len(), d.n_gens())));
    }
    d.check_letters(x)?;
    let mut out = KeElement::zero();
    for w in x.words() {
        let mut acc = match w.tag {
            Some(s) if w.is_empty() => KeElement::pair(s, s),
            _ if w.is_empty() => KeElement::diagonal(&d.ring),
            _ => eps[w.letters[0] as usize].clone(),
        };
        for &g in w.letters.iter().skip(1) {
            acc = star(&acc, &eps[g as usize]);
        }
        out = out.plus(&acc);
    }
    Ok(out)
}

impl fmt::Display for Dga {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ring {{{}}}  grading {}  {}",
            self.ring.labels().join(", "),
            match self.grading {
                Grading::Z => "Z".to_string(),
                Grading::Zmod(n) => format!("Z/{n}"),
            },
            if self.slashed { "slashed" } else { "unital" }
        )?;
        let width = self.generators.iter().map(|g| g.name.len()).max().unwrap_or(0);
        for (i, g) in self.generators.iter().enumerate() {
            let action = g.action.map(|a| a.to_string()).unwrap_or_else(|| "-".into());
            writeln!(
                f,
                "  {:<width$}  deg {:>3}  {}->{}  action {:>5}  d = {}",
                g.name,
                g.degree,
                self.ring.label(g.left),
                self.ring.label(g.right),
                action,
                self.render(self.d(i as u32)),
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_idem() -> (Dga, u32, u32) {
        let ring = IdempotentRing::new(["s", "t"]).unwrap();
        let mut b = Dga::builder(ring, Grading::Z);
        b.add(Generator::new("x", 0, 0, 1)).unwrap();
        b.add(Generator::new("y", 0, 0, 1)).unwrap();
        let d = b.build().unwrap();
        let (x, y) = (d.index("x").unwrap(), d.index("y").unwrap());
        (d, x, y)
    }

    #[test]
    fn concatenation_and_orthogonality() {
        let ring = IdempotentRing::new(["s", "t"]).unwrap();
        let mut b = Dga::builder(ring, Grading::Z);
        b.add(Generator::new("x", 0, 0, 1)).unwrap();
        b.add(Generator::new("y", 0, 1, 0)).unwrap();
        let d = b.build().unwrap();
        let (x, y) = (d.index("x").unwrap(), d.index("y").unwrap());
        let xy = multiply(&Element::gen(x), &Element::gen(y), &d).unwrap();
        assert_eq!(xy, Element::word(Word::new(vec![x, y])));
        let xx = multiply(&Element::gen(x), &Element::gen(x), &d).unwrap();
        assert!(xx.is_zero());
    }

    #[test]
    fn slashed_binomial() {
        let (d, x, y) = two_idem();
        let mut d = d;
        d.slashed = true;
        let s = Element::gen(x).plus(&Element::gen(y));
        let sq = multiply(&s, &s, &d).unwrap();
        let expect: Element = [vec![x, x], vec![x, y], vec![y, x], vec![y, y]].into_iter().map(Word::new).collect();
        assert_eq!(sq, expect);
    }

    #[test]
    fn units_project() {
        let (d, x, _) = two_idem();
        let w = Element::gen(x);
        assert_eq!(multiply(&Element::word(Word::unit(0)), &w, &d).unwrap(), w);
        assert!(multiply(&Element::word(Word::unit(1)), &w, &d).unwrap().is_zero());
        assert_eq!(multiply(&w, &Element::word(Word::unit(1)), &d).unwrap(), w);
        assert!(multiply(&Element::word(Word::unit(0)), &Element::word(Word::unit(1)), &d).unwrap().is_zero());
    }

    #[test]
    fn leibniz_one_term() {
        let ring = IdempotentRing::single("s");
        let mut b = Dga::builder(ring, Grading::Z);
        let x = b.add(Generator::new("x", 1, 0, 0)).unwrap();
        let z = b.add(Generator::new("z", 0, 0, 0)).unwrap();
        b.add(Generator::new("y", 0, 0, 0)).unwrap();
        b.set_d(x, Element::gen(z));
        let d = b.build().unwrap();
        let (x, y, z) = (d.index("x").unwrap(), d.index("y").unwrap(), d.index("z").unwrap());
        let dxy = differentiate(&Element::word(Word::new(vec![x, y])), &d).unwrap();
        assert_eq!(dxy, Element::word(Word::new(vec![z, y])));
        assert!(differentiate(&Element::word(Word::unit(0)), &d).unwrap().is_zero());
    }

    #[test]
    fn unknown_index_is_an_error() {
        let (d, _, _) = two_idem();
        assert!(matches!(differentiate(&Element::gen(7), &d), Err(Error::GeneratorIndex(7))));
    }

    #[test]
    fn degree_violation_reported() {
        let ring = IdempotentRing::single("s");
        let mut b = Dga::builder(ring, Grading::Z);
        let x = b.add(Generator::new("x", 1, 0, 0)).unwrap();
        b.set_d(x, Element::gen(x));
        let d = b.build().unwrap();
        let rep = check_dga(&d);
        assert_eq!(rep.of_kind(ViolationKind::Degree).count(), 1);
        assert_eq!(rep.violations[0].generator, "x");
    }

    #[test]
    fn d_squared_witness() {
        let ring = IdempotentRing::single("s");
        let mut b = Dga::builder(ring, Grading::Zmod(1));
        let x = b.add(Generator::new("x", 0, 0, 0)).unwrap();
        let y = b.add(Generator::new("y", 0, 0, 0)).unwrap();
        b.set_d(x, Element::gen(y));
        b.set_d(y, Element::word(Word::unit(0)));
        let d = b.build().unwrap();
        let rep = check_dga(&d);
        let w: Vec<_> = rep.of_kind(ViolationKind::DSquared).collect();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].generator, "x");
        assert_eq!(w[0].detail, "1@s");
    }

    #[test]
    fn star_examples() {
        let (s, t) = (0, 1);
        assert_eq!(star(&KeElement::pair(s, s), &KeElement::pair(s, t)), KeElement::pair(s, t));
        assert!(star(&KeElement::pair(s, t), &KeElement::pair(s, t)).is_zero());
        let f = KeElement::pair(s, t).plus(&KeElement::pair(t, t));
        let expect = KeElement::pair(s, s).plus(&KeElement::pair(t, s));
        assert_eq!(star(&f, &KeElement::pair(t, s)), expect);
    }

    #[test]
    fn ke_morphism_examples() {
        let ring = IdempotentRing::new(["s", "t", "u"]).unwrap();
        let mut b = Dga::builder(ring, Grading::Z);
        b.add(Generator::new("x", 0, 0, 1)).unwrap();
        b.add(Generator::new("y", 0, 1, 2)).unwrap();
        let d = b.build().unwrap();
        let (x, y) = (d.index("x").unwrap(), d.index("y").unwrap());
        let eps = vec![KeElement::pair(0, 1), KeElement::pair(1, 2)];
        let e1 = evaluate_ke_morphism(&eps, &Element::gen(x), &d).unwrap();
        assert_eq!(e1, KeElement::pair(0, 1));
        let xy = Element::word(Word::new(vec![x, y]));
        assert_eq!(evaluate_ke_morphism(&eps, &xy, &d).unwrap(), KeElement::pair(0, 2));
        let bad = vec![KeElement::pair(0, 1), KeElement::pair(0, 2)];
        assert!(evaluate_ke_morphism(&bad, &xy, &d).unwrap().is_zero());
        let unit = Element::word(Word::unit(2));
        assert_eq!(evaluate_ke_morphism(&eps, &unit, &d).unwrap(), KeElement::pair(2, 2));
    }
}
