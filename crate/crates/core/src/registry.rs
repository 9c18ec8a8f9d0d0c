//! Built-in example algebras.

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{differentiate, Dga, DgaBuilder, Element, Generator, Grading, IdempotentRing, Word};

pub const NAMES: [&str; 4] = ["unknot", "trefoil", "hopf-attaching", "synthetic-N"];

fn int(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// Looks up a registry entry; `synthetic-N` takes any seed N.
pub fn get(name: &str) -> Option<Dga> {
    match name {
        "unknot" => Some(unknot()),
        "trefoil" => Some(trefoil()),
        "hopf-attaching" => Some(hopf_attaching()),
        _ => name.strip_prefix("synthetic-")?.parse().ok().map(synthetic),
    }
}

/// The max-tb unknot: one chord of degree 1 whose two discs cancel.
pub fn unknot() -> Dga {
    let mut b = Dga::builder(IdempotentRing::single("s"), Grading::Z);
    b.add(Generator::new("a", 1, 0, 0).with_action(int(1))).unwrap();
    b.build().unwrap()
}

/// Chekanov's presentation of the max-tb right-handed trefoil.
pub fn trefoil() -> Dga {
    let mut b = Dga::builder(IdempotentRing::single("s"), Grading::Z);
    let a1 = b.add(Generator::new("a1", 1, 0, 0).with_action(int(4))).unwrap();
    let a2 = b.add(Generator::new("a2", 1, 0, 0).with_action(int(4))).unwrap();
    let b1 = b.add(Generator::new("b1", 0, 0, 0).with_action(int(1))).unwrap();
    let b2 = b.add(Generator::new("b2", 0, 0, 0).with_action(int(1))).unwrap();
    let b3 = b.add(Generator::new("b3", 0, 0, 0).with_action(int(1))).unwrap();
    let one = Word::unit(0);
    b.set_d(a1, [one.clone(), Word::gen(b1), Word::gen(b3), Word::new(vec![b1, b2, b3])].into_iter().collect());
    b.set_d(a2, [one, Word::gen(b3), Word::gen(b1), Word::new(vec![b3, b2, b1])].into_iter().collect());
    b.build().unwrap()
}

/// Two idempotents joined by degree-0 chords x, y, with ∂a = 1 + xy and
/// ∂b = 1 + yx.
pub fn hopf_attaching() -> Dga {
    let mut b = Dga::builder(IdempotentRing::new(["s", "t"]).unwrap(), Grading::Z);
    let x = b.add(Generator::new("x", 0, 0, 1).with_action(int(1))).unwrap();
    let y = b.add(Generator::new("y", 0, 1, 0).with_action(int(1))).unwrap();
    let a = b.add(Generator::new("a", 1, 0, 0).with_action(int(3))).unwrap();
    let c = b.add(Generator::new("b", 1, 1, 1).with_action(int(3))).unwrap();
    b.set_d(a, [Word::unit(0), Word::new(vec![x, y])].into_iter().collect());
    b.set_d(c, [Word::unit(1), Word::new(vec![y, x])].into_iter().collect());
    b.build().unwrap()
}

/// Composable words of length `1..=max_len` from `s` to `t` with the given degree.
fn words_between(b: &DgaBuilder, n: u32, s: u32, t: u32, degree: i64, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(b: &DgaBuilder, n: u32, at: u32, t: u32, deg: i64, left: usize, acc: &mut Vec<u32>, out: &mut Vec<Word>) {
        if !acc.is_empty() && at == t && deg == 0 {
            out.push(Word::new(acc.clone()));
        }
        if left == 0 {
            return;
        }
        for g in 0..n {
            let gen = b.generator(g);
            if gen.left == at {
                acc.push(g);
                go(b, n, gen.right, t, deg - gen.degree, left - 1, acc, out);
                acc.pop();
            }
        }
    }
    go(b, n, s, t, degree, max_len, &mut Vec::new(), &mut out);
    out
}

/// A seeded random semi-projective DGA with ∂² = 0 by construction.
///
/// Each differential is a sum of boundaries of earlier words, words in
/// earlier cycles, and possibly a unit term; actions grow as powers of 4.
pub fn synthetic(seed: u64) -> Dga {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_idem = rng.gen_range(1..=2u32);
    let ring = IdempotentRing::new(["s", "t"].into_iter().take(n_idem as usize)).unwrap();
    let n_gens = rng.gen_range(3..=6u32);
    let mut b = Dga::builder(ring, Grading::Z);
    let mut cycles: Vec<u32> = Vec::new();
    for k in 0..n_gens {
        let degree = *[0i64, 0, 1, 1, 2].choose(&mut rng).unwrap();
        let left = rng.gen_range(0..n_idem);
        let right = if rng.gen_bool(0.7) { left } else { rng.gen_range(0..n_idem) };
        let gen = Generator::new(format!("g{k}"), degree, left, right).with_action(int(4i64.pow(k)));
        // names g0..g5 sort in insertion order, so builder and algebra indices agree
        let partial = b.clone().build().unwrap();
        let g = b.add(gen).unwrap();
        let mut d = Element::zero();
        for w in words_between(&b, k, left, right, degree, 2) {
            if rng.gen_bool(0.3) {
                d.add_assign(&differentiate(&Element::word(w), &partial).unwrap());
            }
        }
        let cyc = words_between(&b, k, left, right, degree - 1, 3)
            .into_iter()
            .filter(|w| w.letters.iter().all(|l| cycles.contains(l)))
            .collect::<Vec<_>>();
        for w in cyc {
            if rng.gen_bool(0.35) {
                d.toggle(w);
            }
        }
        if degree == 1 && left == right && rng.gen_bool(0.5) {
            d.toggle(Word::unit(left));
        }
        if d.is_zero() {
            cycles.push(g);
        }
        b.set_d(g, d);
    }
    b.build().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_dga;

    #[test]
    fn entries_validate() {
        for d in [unknot(), trefoil(), hopf_attaching()] {
            assert!(check_dga(&d).ok(), "{d}");
        }
        for seed in 0..50 {
            let d = synthetic(seed);
            assert!(check_dga(&d).ok(), "seed {seed}: {:?}\n{d}", check_dga(&d));
        }
    }

    #[test]
    fn synthetic_is_deterministic() {
        assert_eq!(synthetic(7), synthetic(7));
        assert_eq!(get("synthetic-7"), Some(synthetic(7)));
        assert!(get("synthetic-x").is_none());
    }
}
