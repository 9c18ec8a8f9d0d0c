//! The RHom complex hom(C⁺ ⊗ V0, V1), assembled along two routes.
//!
//! The S-route reads the differential off the short resolution of A and the
//! module differentials. The S⁺-route morsifies A, lets e act as d on V⁺ and
//! drops the module differentials. Both produce the same basis, so their
//! differentials can be compared entry by entry.

use std::collections::HashMap;

use crate::algebra::{e_name, Dga, Word};
use crate::error::{Error, Result};
use crate::homology::ChainComplex;
use crate::linalg::SparseMat;
use crate::modules::DgModule;
use crate::transforms::morsify;

/// A hatted generator: functionals on it read the `right`-block of V0 and
/// land in the `left`-block of V1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub name: String,
    pub left: u32,
    pub right: u32,
    /// Degree of the hatted generator.
    pub degree: i64,
}

/// `(Dφ)[target] += left · φ[source] · right`.
#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub target: usize,
    pub source: usize,
    pub left: SparseMat,
    pub right: SparseMat,
}

/// The basis of hom over the slots: one functional per (slot, v, w).
pub(crate) struct HomSpace {
    pub basis: Vec<(usize, usize, usize)>,
    index: HashMap<(usize, usize, usize), usize>,
}

impl HomSpace {
    pub fn new(slots: &[Slot], v0: &DgModule, v1: &DgModule) -> Self {
        let mut basis = Vec::new();
        for (k, s) in slots.iter().enumerate() {
            for v in v0.block(s.right) {
                for w in v1.block(s.left) {
                    basis.push((k, v, w));
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        Self { basis, index }
    }

    pub fn assemble(
        &self,
        slots: &[Slot],
        v0: &DgModule,
        v1: &DgModule,
        terms: &[Term],
        grading: crate::algebra::Grading,
    ) -> Result<ChainComplex> {
        let n = self.basis.len();
        let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); slots.len()];
        for (i, t) in terms.iter().enumerate() {
            by_source[t.source].push(i);
        }
        let rights: Vec<SparseMat> = terms.iter().map(|t| t.right.transpose()).collect();
        let mut d = SparseMat::zero(n, n);
        for (col, &(x, v, w)) in self.basis.iter().enumerate() {
            for &i in &by_source[x] {
                let t = &terms[i];
                for &w2 in t.left.col(w) {
                    // φ(… ⊗ v') is read off at v' whenever right[v, v'] = 1
                    for &v2 in rights[i].col(v) {
                        let row = *self.index.get(&(t.target, v2 as usize, w2 as usize)).ok_or_else(|| {
                            Error::Shape(format!("term into `{}` leaves its blocks", slots[t.target].name))
                        })?;
                        d.toggle(row, col);
                    }
                }
            }
        }
        let labels = self
            .basis
            .iter()
            .map(|&(x, v, w)| {
                let deg = v1.basis()[w].degree - v0.basis()[v].degree - slots[x].degree;
                (format!("{}|{}|{}", slots[x].name, v0.basis()[v].label, v1.basis()[w].label), deg)
            })
            .collect();
        ChainComplex::new(grading, labels, d)
    }
}

fn word_action(m: &DgModule, letters: &[u32]) -> SparseMat {
    if letters.is_empty() {
        SparseMat::identity(m.dim())
    } else {
        m.act_word(&Word::new(letters.to_vec()))
    }
}

/// Terms of φ ↦ φ(hat(∂y) ⊗ –), one hat position at a time.
pub(crate) fn hat_terms(
    d: &Dga,
    y: usize,
    slot_of: &dyn Fn(u32) -> usize,
    v0: &DgModule,
    v1: &DgModule,
    out: &mut Vec<Term>,
) {
    for w in d.d(y as u32).words() {
        for l in 0..w.letters.len() {
            out.push(Term {
                target: y,
                source: slot_of(w.letters[l]),
                left: word_action(v1, &w.letters[..l]),
                right: word_action(v0, &w.letters[l + 1..]),
            });
        }
    }
}

fn check_modules(d: &Dga, v0: &DgModule, v1: &DgModule) -> Result<()> {
    if d.slashed {
        return Err(Error::Slashed);
    }
    v0.validate(d)?;
    v1.validate(d)
}

/// RHom through the short resolution: slots are the generators and one e_s
/// per idempotent, sorted by name.
pub fn rhom_complex(d: &Dga, v0: &DgModule, v1: &DgModule) -> Result<ChainComplex> {
    check_modules(d, v0, v1)?;
    let n = d.n_gens();
    let mut slots: Vec<(Slot, Option<u32>)> = d
        .generators()
        .iter()
        .enumerate()
        .map(|(g, x)| {
            (Slot { name: x.name.clone(), left: x.left, right: x.right, degree: x.degree + 1 }, Some(g as u32))
        })
        .collect();
    for s in d.ring.indices() {
        let name = e_name(&d.ring, s);
        if d.index(&name).is_some() {
            return Err(Error::NameClash(name));
        }
        slots.push((Slot { name, left: s, right: s, degree: 0 }, None));
    }
    slots.sort_by(|a, b| a.0.name.cmp(&b.0.name));
    let mut slot_of_gen = vec![0; n];
    let mut slot_of_e = vec![0; d.ring.len()];
    for (k, (s, g)) in slots.iter().enumerate() {
        match g {
            Some(g) => slot_of_gen[*g as usize] = k,
            None => slot_of_e[s.left as usize] = k,
        }
    }
    let slots: Vec<Slot> = slots.into_iter().map(|(s, _)| s).collect();
    let (i0, i1) = (SparseMat::identity(v0.dim()), SparseMat::identity(v1.dim()));
    let mut terms = Vec::new();
    for (g, x) in d.generators().iter().enumerate() {
        let y = slot_of_gen[g];
        let mut local = Vec::new();
        hat_terms(d, g, &|l| slot_of_gen[l as usize], v0, v1, &mut local);
        for mut t in local {
            t.target = y;
            terms.push(t);
        }
        let a0 = v0.act(g as u32).clone();
        let a1 = v1.act(g as u32).clone();
        terms.push(Term { target: y, source: slot_of_e[x.right as usize], left: a1, right: i0.clone() });
        terms.push(Term { target: y, source: slot_of_e[x.left as usize], left: i1.clone(), right: a0 });
        terms.push(Term { target: y, source: y, left: i1.clone(), right: v0.d().clone() });
        terms.push(Term { target: y, source: y, left: v1.d().clone(), right: i0.clone() });
    }
    for &k in &slot_of_e {
        terms.push(Term { target: k, source: k, left: i1.clone(), right: v0.d().clone() });
        terms.push(Term { target: k, source: k, left: v1.d().clone(), right: i0.clone() });
    }
    HomSpace::new(&slots, v0, v1).assemble(&slots, v0, v1, &terms, d.grading)
}

/// V⁺ over A⁺: e_s acts as d on the s-block, and the differential is zero.
pub fn plus_module(d: &Dga, v: &DgModule) -> Result<(Dga, DgModule)> {
    v.validate(d)?;
    let plus = morsify(d)?;
    let act = plus
        .generators()
        .iter()
        .map(|x| match d.index(&x.name) {
            Some(g) => v.act(g).clone(),
            None => v.d().mul(&v.projector(x.left)),
        })
        .collect();
    let m = DgModule::new(&plus, v.basis().to_vec(), SparseMat::zero(v.dim(), v.dim()), act)?;
    Ok((plus, m))
}

/// RHom through the morsified algebra and V⁺; no module differentials appear.
pub fn rhom_plus_complex(d: &Dga, v0: &DgModule, v1: &DgModule) -> Result<ChainComplex> {
    check_modules(d, v0, v1)?;
    let (plus, p0) = plus_module(d, v0)?;
    let (_, p1) = plus_module(d, v1)?;
    let slots: Vec<Slot> = plus
        .generators()
        .iter()
        .map(|x| Slot { name: x.name.clone(), left: x.left, right: x.right, degree: x.degree + 1 })
        .collect();
    let mut terms = Vec::new();
    for y in 0..plus.n_gens() {
        hat_terms(&plus, y, &|l| l as usize, &p0, &p1, &mut terms);
    }
    HomSpace::new(&slots, &p0, &p1).assemble(&slots, &p0, &p1, &terms, plus.grading)
}

/// Where the two routes first disagree, if anywhere.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RouteComparison {
    pub dim: usize,
    pub entries: usize,
    pub mismatches: Vec<(String, String)>,
}

impl RouteComparison {
    pub fn agree(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn compare_routes(d: &Dga, v0: &DgModule, v1: &DgModule) -> Result<RouteComparison> {
    let s = rhom_complex(d, v0, v1)?;
    let p = rhom_plus_complex(d, v0, v1)?;
    if s.basis() != p.basis() {
        return Err(Error::Shape("the two routes produced different bases".into()));
    }
    let diff = s.d().add(p.d());
    let mismatches = diff.entries().map(|(r, c)| (s.basis()[c].0.clone(), s.basis()[r].0.clone())).collect();
    Ok(RouteComparison { dim: s.dim(), entries: s.d().nnz(), mismatches })
}
