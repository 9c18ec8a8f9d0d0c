//! Finite-dimensional dg-modules, augmentations, RHom and module minimization.

pub mod augment;
pub mod rhom;
pub mod split;

use crate::algebra::{Dga, Element, Word};
use crate::error::{Error, Result};
use crate::homology::{ChainComplex, PoincarePolynomial};
use crate::linalg::SparseMat;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisVector {
    pub label: String,
    /// `None` for modules over slashed algebras.
    pub idempotent: Option<u32>,
    pub degree: i64,
}

impl BasisVector {
    pub fn new(label: impl Into<String>, idempotent: Option<u32>, degree: i64) -> Self {
        Self { label: label.into(), idempotent, degree }
    }
}

/// A finite left dg-module: x maps the s₊(x)-block to the s₋(x)-block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgModule {
    basis: Vec<BasisVector>,
    d: SparseMat,
    act: Vec<SparseMat>,
}

impl DgModule {
    /// Builds and validates a module over `over`.
    pub fn new(over: &Dga, basis: Vec<BasisVector>, d: SparseMat, act: Vec<SparseMat>) -> Result<Self> {
        let m = Self { basis, d, act };
        m.validate(over)?;
        Ok(m)
    }

    pub fn zero(over: &Dga) -> Self {
        Self { basis: Vec::new(), d: SparseMat::zero(0, 0), act: vec![SparseMat::zero(0, 0); over.n_gens()] }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn d(&self) -> &SparseMat {
        &self.d
    }

    pub fn act(&self, g: u32) -> &SparseMat {
        &self.act[g as usize]
    }

    pub fn actions(&self) -> &[SparseMat] {
        &self.act
    }

    /// Indices of basis vectors in block `s`; every vector when untagged.
    pub fn block(&self, s: u32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].idempotent.is_none_or(|t| t == s)).collect()
    }

    pub fn projector(&self, s: u32) -> SparseMat {
        SparseMat::from_entries(self.dim(), self.dim(), self.block(s).into_iter().map(|i| (i, i)))
    }

    /// Words act by composition; a unit at s projects onto the s-block.
    pub fn act_word(&self, w: &Word) -> SparseMat {
        if w.is_empty() {
            return match w.tag {
                Some(s) => self.projector(s),
                None => SparseMat::identity(self.dim()),
            };
        }
        let mut m = self.act[*w.letters.last().unwrap() as usize].clone();
        for &g in w.letters.iter().rev().skip(1) {
            m = self.act[g as usize].mul(&m);
        }
        m
    }

    pub fn act_element(&self, x: &Element) -> SparseMat {
        x.words().fold(SparseMat::zero(self.dim(), self.dim()), |acc, w| acc.add(&self.act_word(w)))
    }

    pub fn validate(&self, over: &Dga) -> Result<()> {
        let n = self.dim();
        let bad = |msg: String| Err(Error::InvalidModule(msg));
        if self.d.rows() != n || self.d.cols() != n {
            return bad("differential has the wrong shape".into());
        }
        if self.act.len() != over.n_gens() {
            return bad(format!("{} action matrices for {} generators", self.act.len(), over.n_gens()));
        }
        for v in &self.basis {
            match (over.slashed, v.idempotent) {
                (false, None) => return bad(format!("`{}` needs an idempotent", v.label)),
                (true, Some(_)) => return bad(format!("`{}` carries an idempotent over a slashed algebra", v.label)),
                (false, Some(s)) if s as usize >= over.ring.len() => {
                    return bad(format!("`{}` has an unknown idempotent", v.label))
                }
                _ => {}
            }
        }
        let g = over.grading;
        for (r, c) in self.d.entries() {
            if self.basis[r].idempotent != self.basis[c].idempotent {
                return bad(format!("d mixes blocks at `{}`", self.basis[c].label));
            }
            if !g.eq(self.basis[r].degree, self.basis[c].degree - 1) {
                return bad(format!("d does not have degree -1 at `{}`", self.basis[c].label));
            }
        }
        if !self.d.mul(&self.d).is_zero() {
            return bad("d^2 != 0".into());
        }
        for (x, a) in self.act.iter().enumerate() {
            let gen = over.gen(x as u32);
            if a.rows() != n || a.cols() != n {
                return bad(format!("action of `{}` has the wrong shape", gen.name));
            }
            for (r, c) in a.entries() {
                let (vr, vc) = (&self.basis[r], &self.basis[c]);
                if vc.idempotent.is_some_and(|s| s != gen.right) || vr.idempotent.is_some_and(|s| s != gen.left) {
                    return bad(format!("`{}` acts outside its blocks", gen.name));
                }
                if !g.eq(vr.degree, vc.degree + gen.degree) {
                    return bad(format!("`{}` does not act with degree {}", gen.name, gen.degree));
                }
            }
            let lhs = self.d.mul(a).add(&a.mul(&self.d));
            if lhs != self.act_element(over.d(x as u32)) {
                return bad(format!("Leibniz rule fails for `{}`", gen.name));
            }
        }
        Ok(())
    }

    /// The underlying complex of the module.
    pub fn complex(&self, over: &Dga) -> ChainComplex {
        let basis = self.basis.iter().map(|v| (v.label.clone(), v.degree)).collect();
        ChainComplex::new(over.grading, basis, self.d.clone()).expect("validated module")
    }

    pub fn betti(&self, over: &Dga) -> PoincarePolynomial {
        self.complex(over).betti()
    }

    /// Homology of the s-block; d preserves blocks.
    pub fn block_betti(&self, over: &Dga, s: u32) -> PoincarePolynomial {
        let idx = self.block(s);
        let basis = idx.iter().map(|&i| (self.basis[i].label.clone(), self.basis[i].degree)).collect();
        ChainComplex::new(over.grading, basis, self.d.select(&idx, &idx)).expect("block of a complex").betti()
    }

    pub fn block_dim(&self, s: u32) -> usize {
        self.block(s).len()
    }

    pub fn block_euler(&self, s: u32) -> i64 {
        self.block(s).iter().map(|&i| if self.basis[i].degree.rem_euclid(2) == 0 { 1 } else { -1 }).sum()
    }
}
