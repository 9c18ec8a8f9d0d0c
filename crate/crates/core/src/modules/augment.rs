//! Augmentations to F2 and to k_S ⊗ k_S, and an exhaustive search for them.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::algebra::{evaluate_ke_morphism, Dga, Element, KeElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AugValues {
    /// One bit per generator, for slashed algebras.
    Scalar(Vec<bool>),
    /// One element of k_S ⊗ k_S per generator.
    Ke(Vec<KeElement>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Augmentation {
    pub values: AugValues,
}

impl Augmentation {
    /// Builds the natural form for `d` from one bit per generator.
    pub fn from_bits(d: &Dga, bits: Vec<bool>) -> Self {
        let values = if d.slashed {
            AugValues::Scalar(bits)
        } else {
            AugValues::Ke(
                bits.iter()
                    .enumerate()
                    .map(|(g, &b)| {
                        let gen = d.gen(g as u32);
                        if b {
                            KeElement::pair(gen.left, gen.right)
                        } else {
                            KeElement::zero()
                        }
                    })
                    .collect(),
            )
        };
        Self { values }
    }

    pub fn zero(d: &Dga) -> Self {
        Self::from_bits(d, vec![false; d.n_gens()])
    }

    pub fn len(&self) -> usize {
        match &self.values {
            AugValues::Scalar(b) => b.len(),
            AugValues::Ke(k) => k.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn bit(&self, g: u32) -> bool {
        match &self.values {
            AugValues::Scalar(b) => b[g as usize],
            AugValues::Ke(k) => !k[g as usize].is_zero(),
        }
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.len() as u32).map(|g| self.bit(g)).collect()
    }
}

/// Scalar value of an element: each word evaluates to the product of its bits.
pub fn evaluate_scalar(bits: &[bool], x: &Element) -> bool {
    x.words().filter(|w| w.letters.iter().all(|&g| bits[g as usize])).count() % 2 == 1
}

/// Checks degree support and ε∘∂ = 0.
pub fn check_augmentation(d: &Dga, eps: &Augmentation, ungraded: bool) -> Result<()> {
    if eps.len() != d.n_gens() {
        return Err(Error::InvalidAugmentation("generator count mismatch".into()));
    }
    for g in 0..d.n_gens() as u32 {
        if eps.bit(g) && !ungraded && !d.grading.eq(d.gen(g).degree, 0) {
            return Err(Error::InvalidAugmentation(format!("nonzero on `{}` of nonzero degree", d.name(g))));
        }
    }
    for g in 0..d.n_gens() as u32 {
        let vanishes = match &eps.values {
            AugValues::Scalar(b) => !evaluate_scalar(b, d.d(g)),
            AugValues::Ke(k) => evaluate_ke_morphism(k, d.d(g), d)?.is_zero(),
        };
        if !vanishes {
            return Err(Error::InvalidAugmentation(format!("ε(∂{}) != 0", d.name(g))));
        }
    }
    Ok(())
}

/// A polynomial equation over the search bits; monomials are bit masks.
#[derive(Clone, Debug)]
struct Equation {
    monomials: Vec<u64>,
    top: usize,
}

impl Equation {
    fn holds(&self, assign: u64) -> bool {
        self.monomials.iter().filter(|&&m| assign & m == m).count() % 2 == 0
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub cap_bits: usize,
    /// Allow support on generators of every degree.
    pub ungraded: bool,
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { cap_bits: 24, ungraded: false, parallel: true }
    }
}

pub fn find_augmentations(d: &Dga, cap_bits: usize) -> Result<Vec<Augmentation>> {
    find_augmentations_with(d, SearchOptions { cap_bits, ..SearchOptions::default() })
}

pub fn find_augmentations_with(d: &Dga, opts: SearchOptions) -> Result<Vec<Augmentation>> {
    let vars: Vec<u32> =
        (0..d.n_gens() as u32).filter(|&g| opts.ungraded || d.grading.eq(d.gen(g).degree, 0)).collect();
    if vars.len() > opts.cap_bits.min(63) {
        return Err(Error::Budget { needed: vars.len(), budget: opts.cap_bits.min(63) });
    }
    let var_of: BTreeMap<u32, usize> = vars.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut equations = Vec::new();
    for g in 0..d.n_gens() as u32 {
        let mut comps: BTreeMap<(u32, u32), BTreeSet<u64>> = BTreeMap::new();
        for w in d.d(g).words() {
            let Some(mask) = w.letters.iter().try_fold(0u64, |m, l| var_of.get(l).map(|&v| m | 1 << v)) else {
                continue;
            };
            let key = if d.slashed {
                (0, 0)
            } else if w.is_empty() {
                let s = w.tag.unwrap_or(0);
                (s, s)
            } else {
                (d.gen(w.letters[0]).left, d.gen(*w.letters.last().unwrap()).right)
            };
            let set = comps.entry(key).or_default();
            if !set.remove(&mask) {
                set.insert(mask);
            }
        }
        for set in comps.into_values().filter(|s| !s.is_empty()) {
            let monomials: Vec<u64> = set.into_iter().collect();
            let top = monomials.iter().map(|&m| 64 - m.leading_zeros() as usize).max().unwrap_or(0);
            equations.push(Equation { monomials, top });
        }
    }
    let n = vars.len();
    if equations.iter().any(|e| e.top == 0) {
        return Ok(Vec::new());
    }
    // equations indexed by the number of bits needed to decide them
    let mut by_top: Vec<Vec<Equation>> = vec![Vec::new(); n + 1];
    for e in equations {
        by_top[e.top].push(e);
    }
    let prefix = if opts.parallel { n.min(6) } else { 0 };
    let starts: Vec<u64> =
        (0..1u64 << prefix).filter(|&a| (1..=prefix).all(|k| by_top[k].iter().all(|e| e.holds(a)))).collect();
    let search = |start: u64| {
        let mut out = Vec::new();
        dfs(start, prefix, n, &by_top, &mut out);
        out
    };
    let mut found: Vec<u64> = if opts.parallel {
        starts.into_par_iter().flat_map_iter(search).collect()
    } else {
        starts.into_iter().flat_map(search).collect()
    };
    found.sort_unstable_by_key(|&a| (0..n).map(|k| a >> k & 1 == 1).collect::<Vec<_>>());
    Ok(found
        .into_iter()
        .map(|a| {
            let mut bits = vec![false; d.n_gens()];
            for (k, &g) in vars.iter().enumerate() {
                bits[g as usize] = a >> k & 1 == 1;
            }
            Augmentation::from_bits(d, bits)
        })
        .collect())
}

fn dfs(assign: u64, k: usize, n: usize, by_top: &[Vec<Equation>], out: &mut Vec<u64>) {
    if k == n {
        out.push(assign);
        return;
    }
    for bit in [0u64, 1] {
        let a = assign | bit << k;
        if by_top[k + 1].iter().all(|e| e.holds(a)) {
            dfs(a, k + 1, n, by_top, out);
        }
    }
}

/// ε(x) = ε̌(x)·(s₋(x)⊗s₊(x)) for the unslashed origin of a slashed algebra.
pub fn lift_to_ke(eps: &Augmentation, slashed: &Dga, unslashed: &Dga) -> Result<Augmentation> {
    let AugValues::Scalar(bits) = &eps.values else {
        return Err(Error::InvalidAugmentation("expected a scalar augmentation".into()));
    };
    let same = slashed.n_gens() == unslashed.n_gens()
        && slashed.generators().iter().zip(unslashed.generators()).all(|(a, b)| a.name == b.name)
        && bits.len() == unslashed.n_gens();
    if !same || unslashed.slashed {
        return Err(Error::Shape("generator sets differ".into()));
    }
    Ok(Augmentation::from_bits(unslashed, bits.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Generator, Grading, IdempotentRing, Word};
    use crate::registry;
    use crate::transforms::omit_idempotents;

    fn brute_force(d: &Dga) -> usize {
        let vars: Vec<u32> = (0..d.n_gens() as u32).filter(|&g| d.gen(g).degree == 0).collect();
        (0..1u32 << vars.len())
            .filter(|a| {
                let mut bits = vec![false; d.n_gens()];
                for (k, &g) in vars.iter().enumerate() {
                    bits[g as usize] = a >> k & 1 == 1;
                }
                (0..d.n_gens() as u32).all(|g| !evaluate_scalar(&bits, d.d(g)))
            })
            .count()
    }

    #[test]
    fn one_plus_x() {
        let mut b = Dga::builder(IdempotentRing::single("s"), Grading::Z);
        let x = b.add(Generator::new("x", 0, 0, 0)).unwrap();
        let y = b.add(Generator::new("y", 1, 0, 0)).unwrap();
        b.set_d(y, [Word::unit(0), Word::gen(x)].into_iter().collect());
        let d = b.build().unwrap();
        let augs = find_augmentations(&d, 24).unwrap();
        assert_eq!(augs.len(), 1);
        assert!(augs[0].bit(d.require("x").unwrap()));
        check_augmentation(&d, &augs[0], false).unwrap();
    }

    #[test]
    fn trefoil_has_five() {
        let t = registry::trefoil();
        let augs = find_augmentations(&t, 24).unwrap();
        assert_eq!(augs.len(), 5);
        assert_eq!(brute_force(&t), 5);
        let slashed = omit_idempotents(&t);
        let scalar = find_augmentations(&slashed, 24).unwrap();
        assert_eq!(scalar.len(), 5);
        for (a, s) in augs.iter().zip(&scalar) {
            assert_eq!(&lift_to_ke(s, &slashed, &t).unwrap(), a);
        }
    }

    #[test]
    fn hopf_attaching_has_one() {
        let h = registry::hopf_attaching();
        let augs = find_augmentations(&h, 24).unwrap();
        assert_eq!(augs.len(), 1);
        assert!(augs[0].bits().iter().filter(|&&b| b).count() == 2);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(find_augmentations(&registry::trefoil(), 2), Err(Error::Budget { needed: 3, budget: 2 })));
    }

    #[test]
    fn parallel_and_serial_agree() {
        for seed in 0..30 {
            let d = registry::synthetic(seed);
            let opts = SearchOptions { parallel: false, ..SearchOptions::default() };
            let a = find_augmentations_with(&d, opts).unwrap();
            let b = find_augmentations(&d, 24).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.len(), brute_force(&d));
        }
    }

    #[test]
    fn lift_examples() {
        let mut b = Dga::builder(IdempotentRing::new(["s", "t"]).unwrap(), Grading::Z);
        b.add(Generator::new("x", 0, 0, 1)).unwrap();
        let d = b.build().unwrap();
        let o = omit_idempotents(&d);
        let one = Augmentation { values: AugValues::Scalar(vec![true]) };
        let lifted = lift_to_ke(&one, &o, &d).unwrap();
        assert_eq!(lifted.values, AugValues::Ke(vec![KeElement::pair(0, 1)]));
        let zero = Augmentation { values: AugValues::Scalar(vec![false]) };
        assert_eq!(lift_to_ke(&zero, &o, &d).unwrap(), Augmentation::zero(&d));
        assert!(lift_to_ke(&one, &o, &registry::unknot()).is_err());
    }
}
