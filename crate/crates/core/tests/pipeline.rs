use cedga::modules::augment::find_augmentations;
use cedga::modules::rhom::compare_routes;
use cedga::registry;
use cedga::surgery::{
    build_cap_algebra, build_cthulhu_bimodule, module_from_cap_augmentation, pipeline_compare, pipeline_compare_on,
    CapSpec,
};

#[test]
fn trefoil_all_augmentation_pairs() {
    let t = registry::trefoil();
    let spec = CapSpec::uniform(t.clone(), 1).unwrap();
    let cap = build_cap_algebra(&spec).unwrap();
    let augs = find_augmentations(&cap, 24).unwrap();
    assert_eq!(augs.len(), 5);
    let bm = build_cthulhu_bimodule(&spec, &spec).unwrap();
    for e0 in &augs {
        for e1 in &augs {
            let r = pipeline_compare_on(&bm, e0, e1).unwrap();
            assert!(r.pass, "{r:?}");
            assert_eq!(r.shift, Some(0));
        }
    }
}

#[test]
fn trefoil_one_copy_endomorphisms() {
    // functionals on a1, a2 sit in degree -2, on b1..b3 in degree -1, on e in degree 0
    let t = registry::trefoil();
    let spec = CapSpec::uniform(t.clone(), 1).unwrap();
    let cap = build_cap_algebra(&spec).unwrap();
    for eps in find_augmentations(&cap, 24).unwrap() {
        let v = module_from_cap_augmentation(&t, &spec, &eps).unwrap();
        assert!(compare_routes(&t, &v, &v).unwrap().agree());
        let r = pipeline_compare(&t, &spec, &spec, &eps, &eps).unwrap();
        assert_eq!(r.rhom_dim, 6);
        assert_eq!(r.rhom.euler(), 2 - 3 + 1);
    }
}

#[test]
fn synthetic_bases_two_copies() {
    let mut checked = 0;
    for seed in 0..50 {
        let base = registry::synthetic(seed);
        let n = base.ring.len();
        let potentials = |p: Vec<i64>| vec![p; n];
        for pots in [vec![0], vec![0, 0], vec![1, 0]] {
            let k = pots.len() as u32;
            let spec = CapSpec::new(base.clone(), vec![k; n], potentials(pots)).unwrap();
            let cap = build_cap_algebra(&spec).unwrap();
            let Ok(augs) = find_augmentations(&cap, 16) else {
                continue;
            };
            let bm = build_cthulhu_bimodule(&spec, &spec).unwrap();
            for e0 in augs.iter().take(3) {
                for e1 in augs.iter().take(3) {
                    let r = pipeline_compare_on(&bm, e0, e1).unwrap();
                    assert!(r.pass, "seed {seed}: {r:?}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 50, "only {checked} pairs");
}
