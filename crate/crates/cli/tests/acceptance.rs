//! The acceptance suite: one test per criterion, each printing a PASS line.
//! Expected subgroup counts were derived with the join-closure oracle and are
//! frozen here; family comparisons are recomputed against the oracle at test
//! time.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use common::{bin, data_path, load, CORPUS, SOLVABLE_CORPUS};
use sublat_core::bitset::BitSet;
use sublat_core::latticeops::SubgroupLattice;
use sublat_core::oracle::{canonical_family, oracle_all_subgroups, ElementClosure};
use sublat_core::solvable::subgroups_solvable;
use sublat_core::subgroups::{
    expand_classes, lattice_cyclic_extension, sylow_subgroup, LatticeFilter,
};
use sublat_core::{PermGroup, Permutation};

/// Element sets of a subgroup family, as comparable sorted sets.
fn element_sets(groups: &[PermGroup]) -> Vec<BTreeSet<Vec<u32>>> {
    groups
        .iter()
        .map(|g| {
            g.elements()
                .unwrap()
                .into_iter()
                .map(|p| p.images().to_vec())
                .collect()
        })
        .collect()
}

#[test]
fn criterion_01_oracle_equivalence() {
    let started = Instant::now();
    let expected_counts = [
        ("s4.grp", 11usize, 30usize),
        ("a5.grp", 9, 59),
        ("s5.grp", 19, 156),
        ("sl23.grp", 7, 15),
    ];
    for file in CORPUS {
        let output = Command::new(bin())
            .arg("lattice")
            .arg(data_path(file))
            .arg("--verify")
            .output()
            .unwrap();
        let stdout = String::from_utf8_lossy(&output.stdout).to_string();
        assert!(
            output.status.success(),
            "{file}: exit {:?}\n{stdout}\n{}",
            output.status.code(),
            String::from_utf8_lossy(&output.stderr)
        );
        assert!(
            stdout.contains("verified against oracle"),
            "{file}: {stdout}"
        );
        for (name, classes, subgroups) in expected_counts {
            if name == *file {
                let line = format!("{classes} classes / {subgroups} subgroups");
                assert!(stdout.contains(&line), "{file}: expected {line}\n{stdout}");
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "corpus verification took {elapsed:?}"
    );
    println!("criterion 1 (oracle equivalence, exact, corpus in {elapsed:?}): PASS");
}

#[test]
fn criterion_02_dual_algorithm_agreement() {
    let started = Instant::now();
    for file in SOLVABLE_CORPUS {
        let group = load(file);
        let via_lift = subgroups_solvable(&group, &LatticeFilter::none()).unwrap();
        let via_ext = lattice_cyclic_extension(&group, &LatticeFilter::none()).unwrap();
        let lift_stats: Vec<(u64, usize)> =
            via_lift.iter().map(|c| (c.order(), c.len())).collect();
        let ext_stats: Vec<(u64, usize)> =
            via_ext.iter().map(|c| (c.order(), c.len())).collect();
        assert_eq!(lift_stats, ext_stats, "{file}: class stats differ");
        let lift_family = canonical_family(&expand_classes(&via_lift)).unwrap();
        let ext_family = canonical_family(&expand_classes(&via_ext)).unwrap();
        assert_eq!(lift_family, ext_family, "{file}: families differ");
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(30),
        "dual-algorithm agreement took {elapsed:?}"
    );
    println!("criterion 2 (solvable vs cyclic extension, exact, in {elapsed:?}): PASS");
}

#[test]
fn criterion_03_goursat_correctness() {
    use sublat_core::goursat::{goursat_subgroups, DirectProduct};
    let pairs = [("c2.grp", "c2.grp"), ("s3.grp", "c3.grp"), ("s3.grp", "s3.grp")];
    for (fg, fh) in pairs {
        let g = load(fg);
        let h = load(fh);
        let subs_g = oracle_all_subgroups(&g, None).unwrap();
        let subs_h = oracle_all_subgroups(&h, None).unwrap();
        let got = goursat_subgroups(&g, &h, &subs_g, &subs_h).unwrap();
        let product = DirectProduct::new(&g, &h).unwrap();
        let oracle = oracle_all_subgroups(product.group(), None).unwrap();
        assert_eq!(
            canonical_family(&got).unwrap(),
            canonical_family(&oracle).unwrap(),
            "{fg} x {fh}"
        );
        if fg == "c2.grp" && fh == "c2.grp" {
            assert_eq!(got.len(), 5);
        }
    }
    println!("criterion 3 (goursat equals oracle on products, exact): PASS");
}

#[test]
fn criterion_04_class_equation() {
    for file in CORPUS {
        let group = load(file);
        let group_order = group.order().unwrap();
        let classes = lattice_cyclic_extension(&group, &LatticeFilter::none()).unwrap();
        let oracle_total = oracle_all_subgroups(&group, None).unwrap().len();
        let mut sum = 0u64;
        for class in &classes {
            let n_order = class.normalizer().order().unwrap();
            let index = group_order / n_order;
            assert_eq!(
                class.len() as u64,
                index,
                "{file}: class length differs from normalizer index"
            );
            sum += index;
        }
        assert_eq!(sum, oracle_total as u64, "{file}: class equation");
    }
    println!("criterion 4 (class equation vs oracle, exact): PASS");
}

/// Covering relation of a subgroup family by brute force, as index pairs
/// into the family; independent of the lattice code.
fn brute_force_covering(sets: &[BTreeSet<Vec<u32>>]) -> BTreeSet<(usize, usize)> {
    let mut covers = BTreeSet::new();
    for (vi, v) in sets.iter().enumerate() {
        for (ui, u) in sets.iter().enumerate() {
            if ui == vi || u.len() >= v.len() || !u.is_subset(v) {
                continue;
            }
            let has_intermediate = sets.iter().enumerate().any(|(wi, w)| {
                wi != ui
                    && wi != vi
                    && w.len() > u.len()
                    && w.len() < v.len()
                    && u.is_subset(w)
                    && w.is_subset(v)
            });
            if !has_intermediate {
                covers.insert((ui, vi));
            }
        }
    }
    covers
}

#[test]
fn criterion_05_lattice_incidence() {
    // covering edges match the oracle's covering relation on the corpus
    for file in CORPUS {
        let group = load(file);
        let classes = lattice_cyclic_extension(&group, &LatticeFilter::none()).unwrap();
        let lattice = SubgroupLattice::build(&group, classes).unwrap();
        let members = expand_classes(lattice.classes());
        let member_sets = element_sets(&members);
        // map (class, member) to the flattened index used by element_sets
        let mut flat = Vec::new();
        for (c, class) in lattice.classes().iter().enumerate() {
            for m in 0..class.len() {
                flat.push((c, m));
            }
        }
        let index_of = |cm: (usize, usize)| flat.iter().position(|&x| x == cm).unwrap();
        let ours: BTreeSet<(usize, usize)> = lattice
            .edges()
            .iter()
            .map(|e| (index_of(e.lower), index_of(e.upper)))
            .collect();
        let oracle_subs = oracle_all_subgroups(&group, None).unwrap();
        let oracle_sets = element_sets(&oracle_subs);
        let theirs_raw = brute_force_covering(&oracle_sets);
        // translate oracle indices to engine indices via the element sets
        let translate = |i: usize| {
            member_sets
                .iter()
                .position(|s| *s == oracle_sets[i])
                .unwrap()
        };
        let theirs: BTreeSet<(usize, usize)> = theirs_raw
            .into_iter()
            .map(|(a, b)| (translate(a), translate(b)))
            .collect();
        assert_eq!(ours, theirs, "{file}: covering relations differ");
    }

    // intermediate subgroups of C_5 inside S_5: D_10, F_20, A_5
    let s5 = load("s5.grp");
    let classes = lattice_cyclic_extension(&s5, &LatticeFilter::none()).unwrap();
    let lattice = SubgroupLattice::build(&s5, classes).unwrap();
    let c5 = PermGroup::from_cycle_strs(5, &["(1,2,3,4,5)"]).unwrap();
    let between = lattice.intermediate_subgroups(&c5).unwrap();
    let mut orders: Vec<u64> = between.iter().map(|v| v.order().unwrap()).collect();
    orders.sort_unstable();
    assert_eq!(orders, vec![10, 20, 60]);
    // exactly the oracle subgroups strictly between C_5 and S_5
    let expected: Vec<PermGroup> = oracle_all_subgroups(&s5, None)
        .unwrap()
        .into_iter()
        .filter(|v| {
            let vo = v.order().unwrap();
            vo > 5 && vo < 120 && v.has_subgroup(&c5).unwrap()
        })
        .collect();
    assert_eq!(
        canonical_family(&between).unwrap(),
        canonical_family(&expected).unwrap()
    );

    // low layer k=1 of S_4: the three maximal classes
    let s4 = load("s4.grp");
    let classes = lattice_cyclic_extension(&s4, &LatticeFilter::none()).unwrap();
    let lattice = SubgroupLattice::build(&s4, classes).unwrap();
    let layer = lattice.low_layer(1, None);
    assert_eq!(layer.len(), 3);
    assert_eq!(layer, lattice.maximal_class_indices());
    let mut orders: Vec<u64> = layer
        .iter()
        .map(|&c| lattice.classes()[c].order())
        .collect();
    orders.sort_unstable();
    assert_eq!(orders, vec![6, 8, 12]);

    println!("criterion 5 (covering edges, intermediate, low layer, exact): PASS");
}

#[test]
fn criterion_06_filters() {
    let s4 = load("s4.grp");
    let classes = lattice_cyclic_extension(&s4, &LatticeFilter::max_order(4)).unwrap();
    assert_eq!(classes.len(), 7);
    let total: usize = classes.iter().map(|c| c.len()).sum();
    assert_eq!(total, 21);
    let filtered: Vec<PermGroup> = oracle_all_subgroups(&s4, None)
        .unwrap()
        .into_iter()
        .filter(|g| g.order().unwrap() <= 4)
        .collect();
    assert_eq!(
        canonical_family(&expand_classes(&classes)).unwrap(),
        canonical_family(&filtered).unwrap()
    );
    println!("criterion 6 (max-order filter equals filtered oracle, exact): PASS");
}

#[test]
fn criterion_07_sylow_exactness() {
    for file in CORPUS {
        let group = load(file);
        let order = group.order().unwrap();
        for p in [2u64, 3, 5] {
            let mut p_part = 1u64;
            let mut m = order;
            while m.is_multiple_of(p) {
                p_part *= p;
                m /= p;
            }
            let sylow = sylow_subgroup(&group, p).unwrap();
            assert_eq!(
                sylow.order().unwrap(),
                p_part,
                "{file}: Sylow {p}-subgroup order"
            );
        }
    }
    println!("criterion 7 (Sylow p-part exactness for p in {{2,3,5}}): PASS");
}

#[test]
fn criterion_08_foundation_round_trips() {
    // deterministic pseudo-random stream, xorshift64*
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        state.wrapping_mul(0x2545f4914f6cdd1d)
    };
    for file in CORPUS {
        let group = load(file);
        let closure =
            ElementClosure::build(group.degree(), group.generators(), 1000).unwrap();
        let index = group.element_index().unwrap();
        assert_eq!(
            index.len(),
            closure.order(),
            "{file}: chain order differs from element closure"
        );
        let order = index.len();
        let degree = group.degree();
        for _ in 0..5_000 {
            let i = next() % order;
            let g = index.unrank(i);
            assert_eq!(index.rank(&g).unwrap(), i, "{file}: rank(unrank({i}))");
        }
        for _ in 0..5_000 {
            // random permutation of the right degree via Fisher-Yates
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for j in (1..degree).rev() {
                let k = (next() % (j as u64 + 1)) as usize;
                images.swap(j, k);
            }
            let p = Permutation::from_images(images).unwrap();
            let ours = group.contains(&p).unwrap();
            let theirs = closure.id_of(&p).is_some();
            assert_eq!(ours, theirs, "{file}: membership of {p}");
        }
    }
    println!("criterion 8 (10^4 membership/rank round trips per group, exact): PASS");
}

#[test]
fn criterion_09_output_determinism() {
    let tmp = tempfile::tempdir().unwrap();
    for file in ["s4.grp", "d12.grp"] {
        let mut outputs: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
        for run in 0..2 {
            let dot = tmp.path().join(format!("{file}.{run}.dot"));
            let json = tmp.path().join(format!("{file}.{run}.json"));
            let output = Command::new(bin())
                .arg("lattice")
                .arg(data_path(file))
                .arg("--dot")
                .arg(&dot)
                .arg("--json")
                .arg(&json)
                .output()
                .unwrap();
            assert!(output.status.success());
            outputs.push((std::fs::read(&dot).unwrap(), std::fs::read(&json).unwrap()));
        }
        assert_eq!(outputs[0].0, outputs[1].0, "{file}: DOT bytes differ");
        assert_eq!(outputs[0].1, outputs[1].1, "{file}: JSON bytes differ");
    }
    println!("criterion 9 (byte-identical DOT/JSON across runs): PASS");
}

#[test]
fn criterion_10_runtime_targets() {
    let a5 = load("a5.grp");
    let t = Instant::now();
    let classes = lattice_cyclic_extension(&a5, &LatticeFilter::none()).unwrap();
    let a5_time = t.elapsed();
    assert_eq!(classes.len(), 9);
    assert!(a5_time < Duration::from_secs(1), "A5 took {a5_time:?}");

    let s5 = load("s5.grp");
    let t = Instant::now();
    let classes = lattice_cyclic_extension(&s5, &LatticeFilter::none()).unwrap();
    let s5_time = t.elapsed();
    assert_eq!(classes.len(), 19);
    assert!(s5_time < Duration::from_secs(5), "S5 took {s5_time:?}");

    // S_6 with internal consistency checks in lieu of the oracle
    let s6 = load("s6.grp");
    let t = Instant::now();
    let classes = lattice_cyclic_extension(&s6, &LatticeFilter::none()).unwrap();
    let group_order = s6.order().unwrap();
    // class equation internals: every class length equals its normalizer index
    let mut total = 0u64;
    for class in &classes {
        let n_order = class.normalizer().order().unwrap();
        assert_eq!(class.len() as u64, group_order / n_order);
        total += class.len() as u64;
    }
    let lattice = SubgroupLattice::build(&s6, classes).unwrap();
    assert_eq!(lattice.member_count(), total);
    // covering soundness: each edge is a strict containment with nothing
    // strictly between, checked over all member element sets
    let index = s6.element_index().unwrap();
    let members = expand_classes(lattice.classes());
    let mut sets: Vec<BitSet> = Vec::with_capacity(members.len());
    let mut orders: Vec<u64> = Vec::with_capacity(members.len());
    for m in &members {
        let mut set = BitSet::new(group_order as u32);
        for e in m.elements().unwrap() {
            set.insert(index.rank(&e).unwrap() as u32);
        }
        orders.push(m.order().unwrap());
        sets.push(set);
    }
    let mut flat = Vec::new();
    for (c, class) in lattice.classes().iter().enumerate() {
        for m in 0..class.len() {
            flat.push((c, m));
        }
    }
    let pos: std::collections::HashMap<(usize, usize), usize> = flat
        .iter()
        .enumerate()
        .map(|(i, &cm)| (cm, i))
        .collect();
    for edge in lattice.edges() {
        let u = pos[&edge.lower];
        let v = pos[&edge.upper];
        assert!(sets[u].is_subset(&sets[v]));
        assert!(orders[u] < orders[v]);
        let intermediate = (0..sets.len()).any(|w| {
            w != u
                && w != v
                && orders[w] > orders[u]
                && orders[w] < orders[v]
                && sets[u].is_subset(&sets[w])
                && sets[w].is_subset(&sets[v])
        });
        assert!(!intermediate, "edge is not a covering pair");
    }
    let s6_time = t.elapsed();
    assert!(s6_time < Duration::from_secs(60), "S6 took {s6_time:?}");

    println!(
        "criterion 10 (runtime: A5 {a5_time:?} < 1s, S5 {s5_time:?} < 5s, S6 {s6_time:?} < 60s with internal checks): PASS"
    );
}

/// The members of each class are pairwise distinct conjugates; spot-check a
/// structural invariant of the class data across the corpus.
#[test]
fn class_members_are_distinct_conjugates() {
    for file in ["s4.grp", "d12.grp", "q8.grp"] {
        let group = load(file);
        let classes = lattice_cyclic_extension(&group, &LatticeFilter::none()).unwrap();
        for class in &classes {
            let members = class.members();
            let sets: HashSet<BTreeSet<Vec<u32>>> =
                element_sets(&members).into_iter().collect();
            assert_eq!(sets.len(), members.len(), "{file}: duplicate members");
        }
    }
}
