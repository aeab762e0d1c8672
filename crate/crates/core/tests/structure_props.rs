mod common;

use common::{group, random_sweep, z6_sweep};
use groupmatch_core::sample::for_each_instance;
use groupmatch_core::{
    construct_deficient_pair, deficiency, existence_predicate, find_witness,
    partial_matching_with_defect, verify_witness, Deltoid,
};

fn witness_instances() -> Vec<Deltoid> {
    let mut all = z6_sweep();
    let g = group("Z2xZ4");
    for size in 1..=3 {
        for_each_instance(&g, size, |d| all.push(d)).unwrap();
    }
    all.extend(random_sweep("Z12", 500, 8, 61));
    all
}

#[test]
fn witness_exists_iff_deficiency_exceeds_level() {
    for d in witness_instances() {
        let delta = deficiency(&d);
        for level in 0..=3 {
            let w = find_witness(&d, level).unwrap();
            assert_eq!(w.is_some(), delta > level);
            if let Some(w) = w {
                assert_eq!(verify_witness(&d, &w), Ok(()));
                assert_eq!(w.level, level);
            }
        }
    }
}

#[test]
fn verified_witness_rules_out_that_defect() {
    for d in random_sweep("Z12", 300, 8, 62) {
        for level in 0..d.size() {
            if let Some(w) = find_witness(&d, level).unwrap() {
                assert!(verify_witness(&d, &w).is_ok());
                assert!(partial_matching_with_defect(&d, level).unwrap().is_none());
            }
        }
    }
}

#[test]
fn deficient_instances_satisfy_the_existence_predicate() {
    let g = group("Z12");
    for d in random_sweep("Z12", 500, 11, 63) {
        let delta = deficiency(&d);
        if d.size() < 2 || delta == 0 {
            continue;
        }
        for level in 0..delta {
            assert!(
                existence_predicate(&g, d.size(), level).unwrap().is_some(),
                "n = {}, level = {level}",
                d.size()
            );
        }
    }
}

#[test]
fn constructions_carry_valid_witnesses() {
    for lit in ["Z12", "Z2xZ4", "Z2xZ2xZ2", "Z9", "Z3xZ6"] {
        let g = group(lit);
        let order = g.order().finite().unwrap() as usize;
        let n0 = groupmatch_core::structure::smallest_proper_subgroup_order(&g)
            .unwrap()
            .unwrap();
        for n in n0..order {
            for level in 0..=4 {
                let Some(h) = existence_predicate(&g, n, level).unwrap() else {
                    continue;
                };
                let pair = construct_deficient_pair(&g, n, level).unwrap();
                assert_eq!(pair.subgroup, h);
                assert_eq!((pair.a.len(), pair.b.len()), (n, n));
                assert!(!pair.b.contains(&g.identity()));
                let d = Deltoid::new(pair.a.clone(), pair.b.clone()).unwrap();
                assert_eq!(verify_witness(&d, &pair.witness), Ok(()));
                assert!(deficiency(&d) > level, "{lit} n={n} level={level}");
            }
        }
    }
}
