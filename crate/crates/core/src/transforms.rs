//! Morsification, omission and expansion of idempotents, ordered quotients,
//! elimination of cancelling pairs and action truncation.

use std::collections::BTreeSet;

use num_rational::Rational64;

use crate::algebra::{
    differentiate, e_name, multiply, CopyOrigin, Dga, DgaBuilder, Element, GenKind, Generator, IdempotentRing, Word,
};
use crate::error::{Error, Result};

/// Copies of each base idempotent, with a Maslov potential per copy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyMap {
    source: IdempotentRing,
    counts: Vec<u32>,
    potentials: Vec<Vec<i64>>,
}

impl CopyMap {
    pub fn new(source: IdempotentRing, counts: Vec<u32>, potentials: Vec<Vec<i64>>) -> Result<Self> {
        if counts.len() != source.len() || potentials.len() != source.len() {
            return Err(Error::CopyMapMismatch("one count and one potential list per idempotent".into()));
        }
        for (s, (&k, p)) in counts.iter().zip(&potentials).enumerate() {
            if p.len() != k as usize {
                return Err(Error::CopyMapMismatch(format!(
                    "idempotent `{}` has {k} copies but {} potentials",
                    source.label(s as u32),
                    p.len()
                )));
            }
        }
        Ok(Self { source, counts, potentials })
    }

    /// `k` copies of every idempotent, all at potential zero.
    pub fn uniform(source: &IdempotentRing, k: u32) -> Self {
        let n = source.len();
        Self { source: source.clone(), counts: vec![k; n], potentials: vec![vec![0; k as usize]; n] }
    }

    pub fn with_counts(source: &IdempotentRing, counts: Vec<u32>) -> Result<Self> {
        let potentials = counts.iter().map(|&k| vec![0; k as usize]).collect();
        Self::new(source.clone(), counts, potentials)
    }

    pub fn source(&self) -> &IdempotentRing {
        &self.source
    }

    pub fn count(&self, s: u32) -> u32 {
        self.counts[s as usize]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Potential of copy `i` (1-based) over `s`.
    pub fn potential(&self, s: u32, i: u32) -> i64 {
        self.potentials[s as usize][i as usize - 1]
    }

    pub fn potentials(&self) -> &[Vec<i64>] {
        &self.potentials
    }

    /// Index of copy `i` (1-based) of `s` in the target ring.
    pub fn target(&self, s: u32, i: u32) -> u32 {
        self.counts[..s as usize].iter().sum::<u32>() + i - 1
    }

    pub fn target_ring(&self) -> IdempotentRing {
        let labels = self
            .source
            .indices()
            .flat_map(|s| (1..=self.count(s)).map(move |i| copy_label(self.source.label(s), i)))
            .collect::<Vec<_>>();
        IdempotentRing::new(labels).expect("copy labels are distinct")
    }

    pub fn ordering(&self) -> Vec<CopyOrigin> {
        self.source
            .indices()
            .flat_map(|s| {
                (1..=self.count(s)).map(move |i| CopyOrigin { source: self.source.label(s).to_string(), copy: i })
            })
            .collect()
    }
}

pub fn copy_label(base: &str, i: u32) -> String {
    format!("{base}#{i}")
}

pub fn copy_name(base: &str, i: u32, j: u32) -> String {
    format!("{base}@{i}.{j}")
}

/// Parses the `i.j` suffix of a copy name.
pub fn parse_copy_name(name: &str) -> Option<(&str, u32, u32)> {
    let (base, idx) = name.rsplit_once('@')?;
    let (i, j) = idx.split_once('.')?;
    Some((base, i.parse().ok()?, j.parse().ok()?))
}

/// Expands a word with end copies `i`, `j` over all intermediate copies.
///
/// `copy(g, i, j)` gives the id of the copy of letter `g`, or `None` when that
/// copy does not exist; `unit(s, i)` gives the ring index of copy `i` of `s`.
pub fn expand_word(
    d: &Dga,
    w: &Word,
    i: u32,
    j: u32,
    counts: &[u32],
    copy: &dyn Fn(u32, u32, u32) -> Option<u32>,
    unit: &dyn Fn(u32, u32) -> u32,
) -> Element {
    let mut out = Element::zero();
    if w.is_empty() {
        if let Some(s) = w.tag {
            if i == j {
                out.toggle(Word::unit(unit(s, i)));
            }
        }
        return out;
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        d: &Dga,
        letters: &[u32],
        h: u32,
        j: u32,
        counts: &[u32],
        copy: &dyn Fn(u32, u32, u32) -> Option<u32>,
        acc: &mut Vec<u32>,
        out: &mut Element,
    ) {
        let Some((&g, rest)) = letters.split_first() else {
            out.toggle(Word::new(acc.clone()));
            return;
        };
        let ends: Vec<u32> = if rest.is_empty() { vec![j] } else { (1..=counts[d.gen(g).right as usize]).collect() };
        for h2 in ends {
            if let Some(c) = copy(g, h, h2) {
                acc.push(c);
                go(d, rest, h2, j, counts, copy, acc, out);
                acc.pop();
            }
        }
    }
    go(d, &w.letters, i, j, counts, copy, &mut Vec::new(), &mut out);
    out
}

/// A morphism of DGAs, given on generators and on unit summands.
#[derive(Clone, Debug)]
pub struct DgaMorphism {
    pub source: Dga,
    pub target: Dga,
    pub map: Vec<Element>,
    pub units: Vec<Element>,
}

impl DgaMorphism {
    pub fn apply(&self, x: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for w in x.words() {
            let mut acc = match w.tag {
                Some(s) if w.is_empty() => self.units[s as usize].clone(),
                _ => self.units.iter().fold(Element::zero(), |a, u| a.plus(u)),
            };
            for (k, &g) in w.letters.iter().enumerate() {
                let img = self.map.get(g as usize).ok_or(Error::GeneratorIndex(g))?;
                acc = if k == 0 { img.clone() } else { multiply(&acc, img, &self.target)? };
            }
            out.add_assign(&acc);
        }
        Ok(out)
    }

    /// Checks ∂T(x) = T(∂x) on every generator.
    pub fn verify(&self) -> Result<()> {
        for (g, img) in self.map.iter().enumerate() {
            let lhs = differentiate(img, &self.target)?;
            let rhs = self.apply(self.source.d(g as u32))?;
            if lhs != rhs {
                return Err(Error::NotChainMap {
                    generator: self.source.name(g as u32).to_string(),
                    defect: self.target.render(&lhs.plus(&rhs)),
                });
            }
        }
        Ok(())
    }
}

/// Adjoins e_s of degree -1 with ∂e = e² and twists ∂x by e-conjugation.
pub fn morsify(d: &Dga) -> Result<Dga> {
    if d.slashed {
        return Err(Error::Slashed);
    }
    let mut b = d.to_builder();
    let mut es = Vec::new();
    for s in d.ring.indices() {
        let name = e_name(&d.ring, s);
        if d.index(&name).is_some() {
            return Err(Error::NameClash(name));
        }
        let e = b.add(Generator::new(name, -1, s, s).with_kind(GenKind::EUnit))?;
        b.set_d(e, Element::word(Word::new(vec![e, e])));
        es.push(e);
    }
    for (x, g) in d.generators().iter().enumerate() {
        let x = x as u32;
        let el = b.d_mut(x);
        el.toggle(Word::new(vec![es[g.left as usize], x]));
        el.toggle(Word::new(vec![x, es[g.right as usize]]));
    }
    b.build()
}

/// Forgets composability; unit summands collapse to the global unit.
pub fn omit_idempotents(d: &Dga) -> Dga {
    let mut b = d.to_builder().slashed(true);
    for g in 0..d.n_gens() as u32 {
        let el = d.d(g).words().map(|w| Word::new(w.letters.clone())).collect();
        b.set_d(g, el);
    }
    b.build().expect("same generators")
}

/// Replaces each idempotent by its ordered copies.
pub fn expand_idempotents(d: &Dga, cm: &CopyMap) -> Result<(Dga, DgaMorphism)> {
    if d.slashed {
        return Err(Error::Slashed);
    }
    if cm.source() != &d.ring {
        return Err(Error::CopyMapMismatch("copy map is over a different ring".into()));
    }
    let mut b = DgaBuilder::new(cm.target_ring(), d.grading).ordering(Some(cm.ordering()));
    let mut ids: Vec<Vec<Vec<Option<u32>>>> = Vec::with_capacity(d.n_gens());
    for g in d.generators() {
        let (kl, kr) = (cm.count(g.left), cm.count(g.right));
        let mut table = vec![vec![None; kr as usize + 1]; kl as usize + 1];
        for i in 1..=kl {
            for j in 1..=kr {
                let mut c = g.clone();
                c.name = copy_name(&g.name, i, j);
                c.degree = g.degree + cm.potential(g.left, i) - cm.potential(g.right, j);
                c.left = cm.target(g.left, i);
                c.right = cm.target(g.right, j);
                table[i as usize][j as usize] = Some(b.add(c)?);
            }
        }
        ids.push(table);
    }
    let copy = |g: u32, i: u32, j: u32| ids[g as usize][i as usize][j as usize];
    let unit = |s: u32, i: u32| cm.target(s, i);
    for (x, g) in d.generators().iter().enumerate() {
        for i in 1..=cm.count(g.left) {
            for j in 1..=cm.count(g.right) {
                let mut el = Element::zero();
                for w in d.d(x as u32).words() {
                    el.add_assign(&expand_word(d, w, i, j, cm.counts(), &copy, &unit));
                }
                b.set_d(copy(x as u32, i, j).unwrap(), el);
            }
        }
    }
    let names: Vec<Vec<String>> = d
        .generators()
        .iter()
        .map(|g| {
            (1..=cm.count(g.left))
                .flat_map(|i| (1..=cm.count(g.right)).map(move |j| copy_name(&g.name, i, j)))
                .collect()
        })
        .collect();
    let target = b.build()?;
    let map = names.iter().map(|ns| ns.iter().map(|n| Word::gen(target.index(n).unwrap())).collect()).collect();
    let units = d.ring.indices().map(|s| (1..=cm.count(s)).map(|i| Word::unit(cm.target(s, i))).collect()).collect();
    let t = DgaMorphism { source: d.clone(), target: target.clone(), map, units };
    t.verify()?;
    Ok((target, t))
}

/// Removes the given generators and every word containing one of them.
pub fn drop_generators(d: &Dga, kill: &BTreeSet<u32>) -> Result<Dga> {
    let mut b = DgaBuilder::new(d.ring.clone(), d.grading).slashed(d.slashed).ordering(d.ordering.clone());
    let mut new_id = vec![None; d.n_gens()];
    for (g, gen) in d.generators().iter().enumerate() {
        if !kill.contains(&(g as u32)) {
            new_id[g] = Some(b.add(gen.clone())?);
        }
    }
    for g in 0..d.n_gens() {
        let Some(ng) = new_id[g] else { continue };
        let el = d
            .d(g as u32)
            .words()
            .filter(|w| w.letters.iter().all(|l| new_id[*l as usize].is_some()))
            .map(|w| Word { letters: w.letters.iter().map(|l| new_id[*l as usize].unwrap()).collect(), tag: w.tag })
            .collect();
        b.set_d(ng, el);
    }
    b.build()
}

/// Kills the e-unit copies e_{i,j} with i ≥ j.
pub fn ordered_quotient(d: &Dga) -> Result<Dga> {
    let ord = d.ordering.as_ref().ok_or(Error::MissingOrdering)?;
    let kill = d
        .generators()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.kind == GenKind::EUnit && ord[g.left as usize].copy >= ord[g.right as usize].copy)
        .map(|(i, _)| i as u32)
        .collect();
    drop_generators(d, &kill)
}

/// Quotient by the ideal (a, b) when ∂a = b and ∂b = 0.
pub fn eliminate_pair(d: &Dga, a: &str, b: &str) -> Result<Dga> {
    let (ia, ib) = (d.require(a)?, d.require(b)?);
    let da = d.d(ia);
    let db = d.d(ib);
    let expected = Element::gen(ib);
    if da != &expected || !db.is_zero() {
        let mut residual = d.render(&da.clone().plus(&expected));
        if !db.is_zero() {
            residual = format!("{residual}; d{b} = {}", d.render(db));
        }
        return Err(Error::Elimination { a: a.into(), b: b.into(), residual });
    }
    drop_generators(d, &[ia, ib].into_iter().collect())
}

/// Eliminates the pairs (c_{i,j}, m_{i,j}) in order of increasing j - i.
pub fn eliminate_cm_tower(d: &Dga) -> Result<Dga> {
    let mut pairs = Vec::new();
    for g in d.generators() {
        if g.kind != GenKind::DoublePoint || !g.name.starts_with('c') {
            continue;
        }
        let Some((_, i, j)) = parse_copy_name(&g.name) else {
            continue;
        };
        let partner = format!("m{}", &g.name[1..]);
        if d.index(&partner).is_some() {
            pairs.push((j as i64 - i as i64, g.name.clone(), partner));
        }
    }
    pairs.sort();
    let mut cur = d.clone();
    for (gap, c, m) in pairs {
        cur = eliminate_pair(&cur, &c, &m).map_err(|e| match e {
            Error::Elimination { a, b, residual } => Error::TowerRound { round: gap as u32, a, b, residual },
            other => other,
        })?;
    }
    Ok(cur)
}

/// The sub-algebra generated by generators of action at most `q`.
pub fn truncate_by_action(d: &Dga, q: Rational64) -> Result<Dga> {
    let mut kill = BTreeSet::new();
    for (i, g) in d.generators().iter().enumerate() {
        let a = g.action.ok_or_else(|| Error::MissingAction(g.name.clone()))?;
        if a > q {
            kill.insert(i as u32);
        }
    }
    for g in 0..d.n_gens() as u32 {
        if kill.contains(&g) {
            continue;
        }
        for w in d.d(g).words() {
            if let Some(&x) = w.letters.iter().find(|l| kill.contains(l)) {
                return Err(Error::TruncationNotClosed { kept: d.name(g).into(), dropped: d.name(x).into() });
            }
        }
    }
    drop_generators(d, &kill)
}
