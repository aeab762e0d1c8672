mod common;

use std::collections::BTreeSet;

use common::{group, subset};
use groupmatch_core::{full_cosets_within, Element, GroupSet, GroupSpec, Order};
use proptest::prelude::*;

fn groups() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        Just(group("Z12")),
        Just(group("Z2xZ4")),
        Just(group("Z2xZ")),
        Just(group("Z3xZ3xZ")),
        Just(group("ZxZ")),
    ]
}

proptest! {
    #[test]
    fn canonicalization_is_idempotent(g in groups(), raw in prop::collection::vec(-50i64..50, 4)) {
        let coords: Vec<i64> = raw.into_iter().take(g.dim()).collect();
        prop_assume!(coords.len() == g.dim());
        let once = g.element(coords).unwrap();
        let twice = g.element(once.coords().to_vec()).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert!(g.check(&once).is_ok());
    }

    #[test]
    fn inverse_cancels(g in groups(), raw in prop::collection::vec(-50i64..50, 4)) {
        let coords: Vec<i64> = raw.into_iter().take(g.dim()).collect();
        prop_assume!(coords.len() == g.dim());
        let x = g.element(coords).unwrap();
        let inv = g.invert(&x).unwrap();
        prop_assert_eq!(g.compose(&x, &inv).unwrap(), g.identity());
    }
}

#[test]
fn lagrange_for_every_element() {
    for lit in ["Z12", "Z2xZ4"] {
        let g = group(lit);
        let n = g.order().finite().unwrap();
        for x in g.elements().unwrap() {
            let o = g.order_of(&x).unwrap().finite().unwrap();
            assert_eq!(n % o, 0, "{x} in {lit}");
            // o is the least positive multiple returning to the identity.
            let mut cur = x.clone();
            let mut k = 1;
            while cur != g.identity() {
                cur = g.compose(&cur, &x).unwrap();
                k += 1;
            }
            assert_eq!(k, o);
        }
    }
}

#[test]
fn order_with_free_part() {
    let g = group("Z2xZ");
    assert_eq!(
        g.order_of(&g.element([1, 0]).unwrap()).unwrap(),
        Order::Finite(2)
    );
    assert_eq!(
        g.order_of(&g.element([0, -4]).unwrap()).unwrap(),
        Order::Infinite
    );
    assert_eq!(g.order(), Order::Infinite);
}

#[test]
fn generated_subgroups_are_closed() {
    let g = group("Z12");
    let all = g.elements().unwrap();
    for mask in 0u64..1 << 12 {
        if mask.count_ones() > 3 {
            continue;
        }
        let gens = subset(&g, &all, mask);
        let h = g.generate_subgroup(gens.iter()).unwrap();
        assert!(h.is_closed(), "generators {mask:b}");
        assert!(gens.iter().all(|x| h.contains(x)));
    }
}

/// A subset is a subgroup iff it is a fixed point of the closure operator.
fn brute_subgroups(g: &GroupSpec) -> BTreeSet<Vec<Element>> {
    let all = g.elements().unwrap();
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << all.len() {
        let s = subset(g, &all, mask);
        let h = g.generate_subgroup(s.iter()).unwrap();
        if h.elements() == s.elements() {
            out.insert(s.elements().to_vec());
        }
    }
    out
}

#[test]
fn enumeration_matches_closure_fixed_points() {
    for lit in [
        "1", "Z2", "Z6", "Z12", "Z2xZ2", "Z2xZ4", "Z2xZ2xZ2", "Z16", "Z4xZ4", "Z2xZ8",
    ] {
        let g = group(lit);
        let listed = g.enumerate_subgroups().unwrap();
        let listed_sets: BTreeSet<Vec<Element>> =
            listed.iter().map(|h| h.elements().to_vec()).collect();
        assert_eq!(listed_sets.len(), listed.len(), "duplicates in {lit}");
        assert_eq!(listed_sets, brute_subgroups(&g), "{lit}");
        // Deterministic order: size, then lexicographic.
        for w in listed.windows(2) {
            assert!((w[0].len(), w[0].elements()) < (w[1].len(), w[1].elements()));
        }
    }
}

#[test]
fn known_subgroup_counts() {
    // Z/12 has one subgroup per divisor; Z2 x Z2 has five.
    assert_eq!(group("Z12").enumerate_subgroups().unwrap().len(), 6);
    assert_eq!(group("Z2xZ2").enumerate_subgroups().unwrap().len(), 5);
    assert_eq!(group("Z2xZ2xZ2").enumerate_subgroups().unwrap().len(), 16);
}

#[test]
fn full_cosets_are_stable_under_the_subgroup() {
    let g = group("Z2xZ4");
    let all = g.elements().unwrap();
    let subgroups = g.enumerate_subgroups().unwrap();
    for mask in 0u64..1 << all.len() {
        let a = subset(&g, &all, mask);
        for h in &subgroups {
            let kept = full_cosets_within(&a, h);
            assert!(kept.is_subset(&a));
            assert_eq!(kept.len() % h.len(), 0);
            for x in &kept {
                for y in h.elements() {
                    assert!(kept.contains(&g.compose(x, y).unwrap()));
                }
            }
            // Maximal: every coset inside A is kept.
            for x in &a {
                let coset = GroupSet::new(
                    g.clone(),
                    h.elements().iter().map(|y| g.compose(x, y).unwrap()),
                )
                .unwrap();
                assert_eq!(coset.is_subset(&a), coset.is_subset(&kept));
            }
        }
    }
}
