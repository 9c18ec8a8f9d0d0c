mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cedga::algebra::{check_dga, differentiate, evaluate_ke_morphism, multiply, star, KeElement};
use cedga::io;
use cedga::modules::augment::{find_augmentations, AugValues};
use cedga::modules::rhom::rhom_complex;
use cedga::modules::split::cycle_split;
use cedga::modules::DgModule;
use cedga::registry;
use cedga::surgery::{build_cap_algebra, build_model_cap, module_from_cap_augmentation, CapSpec};
use cedga::transforms::{
    eliminate_pair, expand_idempotents, morsify, omit_idempotents, ordered_quotient, parse_copy_name, CopyMap,
};
use cedga::{Dga, Element, Word};

/// A composable word of length `len` starting at a random idempotent; empty words carry their idempotent.
fn random_word(d: &Dga, rng: &mut ChaCha8Rng, len: usize) -> Word {
    let mut s = rng.gen_range(0..d.ring.len() as u32);
    let mut letters = Vec::new();
    for _ in 0..len {
        let next: Vec<u32> = (0..d.n_gens() as u32).filter(|&g| d.gen(g).left == s).collect();
        if next.is_empty() {
            break;
        }
        let g = next[rng.gen_range(0..next.len())];
        letters.push(g);
        s = d.gen(g).right;
    }
    if letters.is_empty() {
        Word::unit(s)
    } else {
        Word::new(letters)
    }
}

fn random_element(d: &Dga, rng: &mut ChaCha8Rng) -> Element {
    (0..rng.gen_range(1..4))
        .map(|_| {
            let len = rng.gen_range(0..4);
            random_word(d, rng, len)
        })
        .collect()
}

fn ke(n: u32, bits: u16) -> KeElement {
    (0..n * n).filter(|k| bits >> k & 1 == 1).map(|k| (k / n, k % n)).collect()
}

fn scale_left(s: u32, f: &KeElement) -> KeElement {
    f.pairs().filter(|p| p.0 == s).collect()
}

fn scale_right(f: &KeElement, s: u32) -> KeElement {
    f.pairs().filter(|p| p.1 == s).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn differential_squares_to_zero(seed in 0u64..500, r in any::<u64>()) {
        let d = registry::synthetic(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(r);
        let a = random_element(&d, &mut rng);
        prop_assert!(differentiate(&differentiate(&a, &d).unwrap(), &d).unwrap().is_zero());
    }

    #[test]
    fn product_is_associative_with_local_units(seed in 0u64..500, r in any::<u64>()) {
        let d = registry::synthetic(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(r);
        let (a, b, c) = (random_element(&d, &mut rng), random_element(&d, &mut rng), random_element(&d, &mut rng));
        let ab_c = multiply(&multiply(&a, &b, &d).unwrap(), &c, &d).unwrap();
        let a_bc = multiply(&a, &multiply(&b, &c, &d).unwrap(), &d).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let w = random_word(&d, &mut rng, 3);
        if let Some(&g) = w.letters.first() {
            let unit = Element::word(Word::unit(d.gen(g).left));
            let w = Element::word(w);
            prop_assert_eq!(multiply(&unit, &w, &d).unwrap(), w);
        }
    }

    #[test]
    fn star_identities(f in any::<u16>(), g in any::<u16>(), h in any::<u16>(), s in 0u32..3) {
        let (f, g, h) = (ke(3, f & 0x1ff), ke(3, g & 0x1ff), ke(3, h & 0x1ff));
        prop_assert_eq!(star(&star(&f, &g), &h), star(&f, &star(&g, &h)));
        prop_assert_eq!(star(&scale_left(s, &f), &g), scale_left(s, &star(&f, &g)));
        prop_assert_eq!(star(&f, &scale_right(&g, s)), scale_right(&star(&f, &g), s));
        prop_assert_eq!(star(&scale_right(&f, s), &g), star(&f, &scale_left(s, &g)));
    }

    #[test]
    fn ke_evaluation_is_multiplicative(seed in 0u64..200, r in any::<u64>()) {
        let base = registry::synthetic(seed);
        let spec = CapSpec::uniform(base, 2).unwrap();
        let cap = build_cap_algebra(&spec).unwrap();
        let Ok(augs) = find_augmentations(&cap, 16) else { return Ok(()) };
        prop_assume!(!augs.is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(r);
        let AugValues::Ke(eps) = &augs[rng.gen_range(0..augs.len())].values else { panic!("unslashed cap") };
        let (a, b) = (random_element(&cap, &mut rng), random_element(&cap, &mut rng));
        let ab = multiply(&a, &b, &cap).unwrap();
        let lhs = evaluate_ke_morphism(eps, &ab, &cap).unwrap();
        let rhs = star(&evaluate_ke_morphism(eps, &a, &cap).unwrap(), &evaluate_ke_morphism(eps, &b, &cap).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn differential_lowers_action(seed in 0u64..1000) {
        let d = registry::synthetic(seed);
        for g in 0..d.n_gens() as u32 {
            let a = d.gen(g).action.unwrap();
            for w in d.d(g).words() {
                prop_assert!(d.word_action(w).unwrap() < a, "{} -> {}", d.name(g), d.render_word(w));
            }
        }
    }

    #[test]
    fn expansion_is_a_chain_map(seed in 0u64..500, k in 1u32..4) {
        let d = registry::synthetic(seed);
        let (e, t) = expand_idempotents(&d, &CopyMap::uniform(&d.ring, k)).unwrap();
        prop_assert!(check_dga(&e).ok());
        t.verify().unwrap();
    }

    #[test]
    fn quotient_and_omission_commute(seed in 0u64..500, k in 1u32..4) {
        let d = registry::synthetic(seed);
        let (e, _) = expand_idempotents(&morsify(&d).unwrap(), &CopyMap::uniform(&d.ring, k)).unwrap();
        prop_assert_eq!(omit_idempotents(&ordered_quotient(&e).unwrap()), ordered_quotient(&omit_idempotents(&e)).unwrap());
    }

    #[test]
    fn eliminating_one_pair_keeps_augmentations(seed in 0u64..300) {
        let base = registry::synthetic(seed);
        let n = base.ring.len();
        let spec = CapSpec::new(base, vec![2; n], vec![vec![0, 0]; n]).unwrap();
        let model = build_model_cap(&spec, 2).unwrap();
        let Some(c) = model.generators().iter().find(|g| g.name.starts_with('c') && parse_copy_name(&g.name).is_some()) else {
            return Ok(());
        };
        let m = format!("m{}", &c.name[1..]);
        let q = eliminate_pair(&model, &c.name, &m).unwrap();
        let (Ok(src), Ok(dst)) = (find_augmentations(&model, 18), find_augmentations(&q, 18)) else { return Ok(()) };
        let pulled: BTreeSet<Vec<bool>> = dst
            .iter()
            .map(|e| (0..model.n_gens() as u32).map(|g| q.index(model.name(g)).is_some_and(|h| e.bit(h))).collect())
            .collect();
        let src: BTreeSet<Vec<bool>> = src.iter().map(|e| e.bits()).collect();
        prop_assert_eq!(pulled.len(), dst.len());
        prop_assert_eq!(pulled, src);
    }

    #[test]
    fn cone_euler_characteristic(r in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(r);
        let x = common::random_complex(&mut rng, 8);
        let y = common::random_complex(&mut rng, 8);
        let f = common::random_chain_map(&mut rng, &x, &y);
        let c = cedga::homology::mapping_cone(&common::to_map(&x, &y, &f));
        let chi = |k: &cedga::homology::ChainComplex| k.betti().euler();
        prop_assert_eq!(chi(&c), chi(&common::to_complex(&y)) - chi(&common::to_complex(&x)));
        prop_assert_eq!(c.betti().0, common::complex_betti(&c));
    }

    #[test]
    fn cap_modules_and_rhom(seed in 0u64..200, r in any::<u64>()) {
        let base = registry::synthetic(seed);
        let n = base.ring.len();
        let mut rng = ChaCha8Rng::seed_from_u64(r);
        let counts: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
        let pots: Vec<Vec<i64>> = counts.iter().map(|&k| (0..k).map(|_| rng.gen_range(-1..=1)).collect()).collect();
        let spec = CapSpec::new(base.clone(), counts, pots).unwrap();
        let Ok(augs) = find_augmentations(&build_cap_algebra(&spec).unwrap(), 16) else { return Ok(()) };
        prop_assume!(!augs.is_empty());
        let v0 = module_from_cap_augmentation(&base, &spec, &augs[rng.gen_range(0..augs.len())]).unwrap();
        let v1 = module_from_cap_augmentation(&base, &spec, &augs[rng.gen_range(0..augs.len())]).unwrap();
        // ChainComplex::new rejects D² ≠ 0
        let c = rhom_complex(&base, &v0, &v1).unwrap();
        let dense = common::Dense::from_sparse(c.d());
        prop_assert!(dense.mul(&dense).is_zero());
        prop_assert_eq!(c.betti().0, common::complex_betti(&c));
    }

    #[test]
    fn cap_degrees(seed in 0u64..300, p in proptest::collection::vec(-3i64..=3, 3), dim in 2i64..5) {
        let base = registry::synthetic(seed);
        let n = base.ring.len();
        let spec = CapSpec::new(base.clone(), vec![3; n], vec![p.clone(); n]).unwrap();
        let model = build_model_cap(&spec, dim).unwrap();
        for g in model.generators() {
            let (name, i, j) = parse_copy_name(&g.name).unwrap();
            let gap = p[i as usize - 1] - p[j as usize - 1];
            let expected = match name.split('_').next().unwrap() {
                "e" => gap - 1,
                "c" => gap + dim - 1,
                "m" => gap + dim - 2,
                _ => base.gen(base.require(name).unwrap()).degree + gap,
            };
            prop_assert_eq!(g.degree, expected, "{}", g.name);
        }
    }
}

#[test]
fn cycle_split_preserves_homology() {
    let d = registry::unknot();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for _ in 0..60 {
        let k = rng.gen_range(1..=4);
        let pots: Vec<i64> = (0..k).map(|_| rng.gen_range(-2..=2)).collect();
        let spec = CapSpec::new(d.clone(), vec![k], vec![pots]).unwrap();
        for eps in find_augmentations(&build_cap_algebra(&spec).unwrap(), 16).unwrap() {
            let v: DgModule = module_from_cap_augmentation(&d, &spec, &eps).unwrap();
            if v.betti(&d).is_zero() {
                continue;
            }
            let m = cycle_split(&d, &v).unwrap();
            assert_eq!(m.betti(&d), v.betti(&d));
            assert!(m.dim() <= v.dim());
            checked += 1;
        }
    }
    assert!(checked > 20);
}

#[test]
fn documents_reparse_identically() {
    let mut algebras = vec![registry::unknot(), registry::trefoil(), registry::hopf_attaching()];
    algebras.extend((0..40).map(registry::synthetic));
    for d in &algebras {
        let spec = CapSpec::uniform(d.clone(), 2).unwrap();
        for out in [d.clone(), morsify(d).unwrap(), omit_idempotents(d), build_model_cap(&spec, 2).unwrap()] {
            let text = io::dga_to_json(&out);
            let back = io::parse_dga(&text).unwrap();
            assert_eq!(back, out);
            assert_eq!(io::dga_to_json(&back), text);
            assert_eq!(check_dga(&back), check_dga(&out));
        }
    }
}

#[test]
fn searches_are_deterministic() {
    for seed in 0..20 {
        let d = build_cap_algebra(&CapSpec::uniform(registry::synthetic(seed), 2).unwrap()).unwrap();
        if let Ok(a) = find_augmentations(&d, 16) {
            assert_eq!(a, find_augmentations(&d, 16).unwrap());
        }
    }
}
