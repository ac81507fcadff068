//! Property tests over random small groups: chain invariants, class
//! equation, conjugacy search, signatures, and coset structure.

use proptest::prelude::*;
use sublat_core::oracle::{oracle_all_subgroups, ElementClosure};
use sublat_core::subgroups::is_conjugate_subgroups;
use sublat_core::zuppos::ZuppoSet;
use sublat_core::{PermGroup, Permutation};

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

fn group(degrees: std::ops::RangeInclusive<usize>, max_gens: usize) -> impl Strategy<Value = PermGroup> {
    degrees.prop_flat_map(move |d| {
        proptest::collection::vec(perm(d), 1..=max_gens)
            .prop_map(move |gens| PermGroup::new(d, gens).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chain_order_equals_closure_order(g in group(3..=6, 2)) {
        let closure = ElementClosure::build(g.degree(), g.generators(), 1 << 12).unwrap();
        prop_assert_eq!(g.order().unwrap(), closure.order());
        for gen in g.generators() {
            prop_assert!(g.contains(gen).unwrap());
        }
    }

    #[test]
    fn rank_unrank_round_trip(g in group(3..=6, 2), samples in proptest::collection::vec(0u64..1 << 30, 32)) {
        let index = g.element_index().unwrap();
        for s in samples {
            let i = s % index.len();
            let e = index.unrank(i);
            prop_assert_eq!(index.rank(&e).unwrap(), i);
        }
    }

    #[test]
    fn class_size_times_centralizer_is_group_order(g in group(3..=5, 2)) {
        let order = g.order().unwrap();
        for (rep, size) in g.conjugacy_classes().unwrap() {
            let cent = g.centralizer(&rep).unwrap().order().unwrap();
            prop_assert_eq!(size * cent, order);
        }
    }

    #[test]
    fn conjugating_element_is_sound_and_complete(g in group(3..=5, 2), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let elements = g.elements().unwrap();
        let x = &elements[a.index(elements.len())];
        let y = &elements[b.index(elements.len())];
        match g.conjugating_element(x, y).unwrap() {
            Some(c) => prop_assert_eq!(&x.conjugate(&c), y),
            None => {
                for e in &elements {
                    prop_assert_ne!(&x.conjugate(e), y);
                }
            }
        }
    }

    #[test]
    fn coset_representatives_partition_the_group(g in group(3..=5, 2), pick in any::<prop::sample::Index>()) {
        let elements = g.elements().unwrap();
        let s_gen = &elements[pick.index(elements.len())];
        let sub = PermGroup::new(g.degree(), vec![s_gen.clone()]).unwrap();
        let reps = g.coset_representatives(&sub).unwrap();
        prop_assert_eq!(reps.len() as u64 * sub.order().unwrap(), g.order().unwrap());
        prop_assert!(reps[0].is_identity());
        for (i, r) in reps.iter().enumerate() {
            for s in &reps[..i] {
                prop_assert!(!sub.contains(&r.mul(&s.inverse())).unwrap());
            }
        }
    }

    #[test]
    fn normalizer_contains_and_bounds(g in group(3..=5, 2), pick in any::<prop::sample::Index>()) {
        let elements = g.elements().unwrap();
        let s_gen = &elements[pick.index(elements.len())];
        let sub = PermGroup::new(g.degree(), vec![s_gen.clone()]).unwrap();
        let n = g.normalizer(&sub).unwrap();
        prop_assert!(n.has_subgroup(&sub).unwrap());
        prop_assert!(n.is_normal(&sub).unwrap());
        prop_assert_eq!(g.order().unwrap() % n.order().unwrap(), 0);
    }

    #[test]
    fn signatures_separate_subgroups(g in group(3..=4, 2)) {
        let zs = ZuppoSet::compute(&g).unwrap();
        let subs = oracle_all_subgroups(&g, None).unwrap();
        let sigs: Vec<_> = subs
            .iter()
            .map(|s| zs.signature(s).unwrap())
            .collect();
        for i in 0..subs.len() {
            for j in 0..i {
                // the oracle list has pairwise distinct subgroups, so
                // signatures must be pairwise distinct too
                prop_assert_ne!(&sigs[i], &sigs[j]);
            }
        }
    }

    #[test]
    fn conjugate_signature_commutes_with_conjugation(g in group(3..=4, 2), pick in any::<prop::sample::Index>()) {
        let zs = ZuppoSet::compute(&g).unwrap();
        let elements = g.elements().unwrap();
        let x = &elements[pick.index(elements.len())];
        for sub in oracle_all_subgroups(&g, None).unwrap() {
            let sig = zs.signature(&sub).unwrap();
            let moved = zs.conjugate_signature(&sig, x).unwrap();
            let conj_gens: Vec<Permutation> =
                sub.generators().iter().map(|p| p.conjugate(x)).collect();
            let conj = PermGroup::new(g.degree(), conj_gens).unwrap();
            prop_assert_eq!(moved, zs.signature(&conj).unwrap());
        }
    }

    #[test]
    fn subgroup_conjugacy_agrees_with_oracle_scan(g in group(3..=4, 2), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let subs = oracle_all_subgroups(&g, None).unwrap();
        let u = &subs[a.index(subs.len())];
        let v = &subs[b.index(subs.len())];
        let result = is_conjugate_subgroups(&g, u, v).unwrap();
        match result {
            Some(x) => {
                for gen in u.generators() {
                    prop_assert!(v.contains(&gen.conjugate(&x)).unwrap());
                }
                prop_assert_eq!(u.order().unwrap(), v.order().unwrap());
            }
            None => {
                // exhaustive: no element of g conjugates u onto v
                for e in g.elements().unwrap() {
                    let moved: Vec<Permutation> =
                        u.generators().iter().map(|p| p.conjugate(&e)).collect();
                    let image = PermGroup::new(g.degree(), moved).unwrap();
                    prop_assert!(
                        !(image.order().unwrap() == v.order().unwrap()
                            && v.has_subgroup(&image).unwrap())
                    );
                }
            }
        }
    }

    #[test]
    fn permutation_text_round_trip(p in perm(7)) {
        let text = p.to_string();
        let back = Permutation::parse(7, &text).unwrap();
        prop_assert_eq!(p, back);
    }
}

#[test]
fn rank_unrank_exhaustive_on_s7() {
    // |S_7| = 5040; the bijection holds on every element
    let s7 = PermGroup::symmetric(7);
    let index = s7.element_index().unwrap();
    assert_eq!(index.len(), 5040);
    for i in 0..index.len() {
        assert_eq!(index.rank(&index.unrank(i)).unwrap(), i);
    }
}

#[test]
fn caches_are_safe_under_concurrent_readers() {
    // concurrent readers may race to fill the chain cache but must all
    // observe one consistent value
    let g = std::sync::Arc::new(PermGroup::symmetric(6));
    let handles: Vec<_> = (0..8)
        .map(|_| {
            let g = g.clone();
            std::thread::spawn(move || {
                let order = g.order().unwrap();
                let base = g.chain().unwrap().base();
                (order, base)
            })
        })
        .collect();
    let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for r in &results {
        assert_eq!(r, &results[0]);
        assert_eq!(r.0, 720);
    }
}

#[test]
fn determinism_across_identical_runs() {
    let run = || {
        let g = PermGroup::from_cycle_strs(6, &["(1,2,3,4,5,6)", "(1,6)(2,5)(3,4)"]).unwrap();
        let chain = g.chain().unwrap();
        let classes = g.conjugacy_classes().unwrap();
        (
            chain.base(),
            chain.strong_generators(),
            classes
                .iter()
                .map(|(r, s)| (r.to_string(), *s))
                .collect::<Vec<_>>(),
        )
    };
    assert_eq!(run(), run());
}
