//! Minimizing a module from the bottom degree up, and the single-degree
//! criterion for modules with one-dimensional endomorphisms.

use serde::Serialize;

use crate::algebra::{Dga, Grading};
use crate::error::{Error, Result};
use crate::homology::PoincarePolynomial;
use crate::linalg::SparseMat;
use crate::modules::rhom::rhom_complex;
use crate::modules::{BasisVector, DgModule};

/// No generators of negative or zero degree.
fn positive_generators(d: &Dga) -> Result<()> {
    if d.grading != Grading::Z {
        return Err(Error::Hypothesis("a Z-graded algebra is required".into()));
    }
    match d.generators().iter().find(|g| g.degree <= 0) {
        Some(g) => Err(Error::Hypothesis(format!("`{}` has degree {}", g.name, g.degree))),
        None => Ok(()),
    }
}

fn label_of(v: &DgModule, vec: &[u32]) -> String {
    vec.iter().map(|&i| v.basis()[i as usize].label.as_str()).collect::<Vec<_>>().join("+")
}

/// Restricts `v` to the span of `cols`, which must be a submodule.
fn restrict(over: &Dga, v: &DgModule, cols: Vec<(Vec<u32>, BasisVector)>) -> Result<DgModule> {
    let n = cols.len();
    let (vecs, basis): (Vec<Vec<u32>>, Vec<BasisVector>) = cols.into_iter().unzip();
    let inc = SparseMat::from_columns(v.dim(), vecs.clone());
    let red = inc.reduce();
    let pull = |m: &SparseMat, what: &str| -> Result<SparseMat> {
        let mut out = Vec::with_capacity(n);
        for c in &vecs {
            let image = m.apply(c);
            out.push(
                red.solve(&image).ok_or_else(|| Error::Hypothesis(format!("the span is not closed under {what}")))?,
            );
        }
        Ok(SparseMat::from_columns(n, out))
    };
    let d = pull(v.d(), "d")?;
    let act = (0..over.n_gens() as u32).map(|g| pull(v.act(g), over.name(g))).collect::<Result<Vec<_>>>()?;
    DgModule::new(over, basis, d, act)
}

/// Repeatedly replaces V by H ⊕ (ker d ∩ V_{i0+1}) ⊕ V_{≥ i0+2}, where H
/// complements d(V_{i0+1}) in the bottom degree i0, until H is nonzero.
pub fn cycle_split(over: &Dga, v: &DgModule) -> Result<DgModule> {
    positive_generators(over)?;
    v.validate(over)?;
    let target = v.betti(over);
    if target.is_zero() {
        return Err(Error::AcyclicModule);
    }
    let mut cur = v.clone();
    loop {
        let i0 = cur.basis().iter().map(|b| b.degree).min().expect("nonzero homology");
        let at = |k: i64| -> Vec<usize> { (0..cur.dim()).filter(|&i| cur.basis()[i].degree == k).collect() };
        let (bottom, next) = (at(i0), at(i0 + 1));
        let mut cols: Vec<(Vec<u32>, BasisVector)> = Vec::new();
        // d preserves blocks, so a greedy choice of standard vectors is blockwise
        let mut span: Vec<Vec<u32>> = next.iter().map(|&j| cur.d().col(j).to_vec()).filter(|c| !c.is_empty()).collect();
        let mut rank = SparseMat::from_columns(cur.dim(), span.clone()).rank();
        let mut h_dim = 0;
        for &i in &bottom {
            span.push(vec![i as u32]);
            let r = SparseMat::from_columns(cur.dim(), span.clone()).rank();
            if r > rank {
                rank = r;
                h_dim += 1;
                cols.push((vec![i as u32], cur.basis()[i].clone()));
            } else {
                span.pop();
            }
        }
        let blocks: Vec<Option<u32>> = {
            let mut b: Vec<Option<u32>> = next.iter().map(|&j| cur.basis()[j].idempotent).collect();
            b.sort();
            b.dedup();
            b
        };
        let mut kernel_dim = 0;
        for s in blocks {
            let idx: Vec<usize> = next.iter().copied().filter(|&j| cur.basis()[j].idempotent == s).collect();
            let sub = SparseMat::from_columns(cur.dim(), idx.iter().map(|&j| cur.d().col(j).to_vec()).collect());
            for k in sub.kernel() {
                let vec: Vec<u32> = k.iter().map(|&t| idx[t as usize] as u32).collect();
                let label = label_of(&cur, &vec);
                cols.push((vec, BasisVector::new(label, s, i0 + 1)));
                kernel_dim += 1;
            }
        }
        for i in 0..cur.dim() {
            if cur.basis()[i].degree >= i0 + 2 {
                cols.push((vec![i as u32], cur.basis()[i].clone()));
            }
        }
        let unchanged = h_dim == bottom.len() && kernel_dim == next.len();
        if !unchanged {
            cur = restrict(over, &cur, cols)?;
        }
        if h_dim > 0 {
            break;
        }
    }
    if cur.betti(over) != target {
        return Err(Error::Hypothesis("cycle splitting changed the homology".into()));
    }
    Ok(cur)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// H⁰ of the endomorphism complex is not one-dimensional.
    NotTriggered,
    /// The algebra violates the structural hypotheses.
    NotApplicable,
    /// H(V) = 0.
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingleDegreeReport {
    pub status: CheckStatus,
    pub h0_rank: Option<usize>,
    pub homology: PoincarePolynomial,
    /// Homology rank of each idempotent block after splitting.
    pub block_ranks: Vec<(String, usize)>,
    pub detail: String,
}

fn hypotheses(d: &Dga) -> std::result::Result<(), String> {
    positive_generators(d).map_err(|e| e.to_string())?;
    for (g, x) in d.generators().iter().enumerate() {
        if x.degree == 1 && !d.d(g as u32).is_zero() {
            return Err(format!("`{}` has degree 1 and nonzero differential", x.name));
        }
    }
    Ok(())
}

/// If H⁰ RHom(V, V) has rank one, H(V) should sit in a single degree with
/// every idempotent block of rank at most one.
pub fn single_degree_check(d: &Dga, v: &DgModule) -> Result<SingleDegreeReport> {
    let mut report = SingleDegreeReport {
        status: CheckStatus::NotApplicable,
        h0_rank: None,
        homology: PoincarePolynomial::default(),
        block_ranks: Vec::new(),
        detail: String::new(),
    };
    if let Err(why) = hypotheses(d) {
        report.detail = why;
        return Ok(report);
    }
    v.validate(d)?;
    report.homology = v.betti(d);
    if report.homology.is_zero() {
        report.status = CheckStatus::Vacuous;
        report.detail = "H(V) = 0".into();
        return Ok(report);
    }
    let h0 = rhom_complex(d, v, v)?.betti().get(0);
    report.h0_rank = Some(h0);
    if h0 != 1 {
        report.status = CheckStatus::NotTriggered;
        report.detail = format!("H^0 of the endomorphism complex has rank {h0}");
        return Ok(report);
    }
    let m = cycle_split(d, v)?;
    report.block_ranks = d.ring.indices().map(|s| (d.ring.label(s).to_string(), m.block_betti(d, s).total())).collect();
    let degrees: Vec<i64> = report.homology.degrees().collect();
    let big = report.block_ranks.iter().find(|(_, r)| *r > 1);
    report.status = if degrees.len() == 1 && big.is_none() { CheckStatus::Pass } else { CheckStatus::Fail };
    report.detail = match (degrees.len(), big) {
        (1, None) => format!("H(V) is concentrated in degree {}", degrees[0]),
        (1, Some((s, r))) => format!("block `{s}` has rank {r}"),
        _ => format!("H(V) is spread over degrees {degrees:?}"),
    };
    Ok(report)
}
