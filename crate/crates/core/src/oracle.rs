//! Brute-force subgroup enumeration by join closure, used as an independent
//! check of the lattice algorithms.
//!
//! This module deliberately avoids the stabilizer-chain machinery: elements
//! are enumerated by plain breadth-first closure of the generators and
//! multiplied through its own table, so agreement with the main engine is
//! meaningful evidence of both.

use std::collections::{HashMap, HashSet};

use crate::bitset::BitSet;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Default bound on the group order for the oracle.
pub const DEFAULT_ORACLE_GUARD: u64 = 1000;

/// Element enumeration with a full multiplication table, independent of the
/// stabilizer chain. Element 0 is the identity; the rest follow in
/// breadth-first discovery order.
pub struct ElementClosure {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    table: Vec<u32>,
}

impl ElementClosure {
    pub fn build(degree: usize, gens: &[Permutation], guard: u64) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut elements = vec![Permutation::identity(degree)];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0u32);
        let mut head = 0;
        while head < elements.len() {
            let e = elements[head].clone();
            head += 1;
            for g in gens {
                let t = e.mul(g);
                if !index.contains_key(&t) {
                    if elements.len() as u64 >= guard {
                        return Err(GroupError::OracleGuardExceeded {
                            order: elements.len() as u64 + 1,
                            guard,
                        });
                    }
                    index.insert(t.clone(), elements.len() as u32);
                    elements.push(t);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&elements[a].mul(&elements[b])];
            }
        }
        Ok(ElementClosure {
            elements,
            index,
            table,
        })
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn id_of(&self, g: &Permutation) -> Option<u32> {
        self.index.get(g).copied()
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.elements.len() + b as usize]
    }

    /// Subgroup generated by the given ids, as an element-id set.
    fn span(&self, gens: &[u32]) -> BitSet {
        let mut set = BitSet::new(self.elements.len() as u32);
        set.insert(0);
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            for &g in gens {
                let t = self.mul(e, g);
                if !set.contains(t) {
                    set.insert(t);
                    queue.push(t);
                }
            }
        }
        set
    }

    /// Every subgroup as an element-id set, by join closure: all cyclic
    /// subgroups first, then joins of pairs until nothing new appears.
    pub fn all_subgroup_sets(&self) -> Vec<(BitSet, Vec<u32>)> {
        let n = self.elements.len() as u32;
        let mut seen: HashSet<BitSet> = HashSet::new();
        // (element set, generating ids)
        let mut subs: Vec<(BitSet, Vec<u32>)> = Vec::new();
        let mut trivial = BitSet::new(n);
        trivial.insert(0);
        seen.insert(trivial.clone());
        subs.push((trivial, Vec::new()));
        for g in 1..n {
            let set = self.span(&[g]);
            if seen.insert(set.clone()) {
                subs.push((set, vec![g]));
            }
        }
        // join pairs to fixpoint; every subgroup is a join of cyclic ones
        let mut lo = 0;
        loop {
            let len = subs.len();
            if lo == len {
                break;
            }
            for i in lo..len {
                for j in 0..=i {
                    let (a, b) = (&subs[i], &subs[j]);
                    if a.0.is_subset(&b.0) || b.0.is_subset(&a.0) {
                        continue;
                    }
                    let mut gens = a.1.clone();
                    gens.extend_from_slice(&b.1);
                    let joined = self.span(&gens);
                    if !seen.contains(&joined) {
                        seen.insert(joined.clone());
                        subs.push((joined, gens));
                    }
                }
            }
            lo = len;
        }
        subs.sort_by(|a, b| {
            a.0.len()
                .cmp(&b.0.len())
                .then_with(|| a.0.cmp_by_first_member(&b.0))
        });
        subs
    }
}

/// Every subgroup of `group`, by join closure over cyclic subgroups.
/// Guarded by group order (default 1000) since the output is exhaustive.
pub fn oracle_all_subgroups(group: &PermGroup, guard: Option<u64>) -> Result<Vec<PermGroup>> {
    let closure = ElementClosure::build(
        group.degree(),
        group.generators(),
        guard.unwrap_or(DEFAULT_ORACLE_GUARD),
    )?;
    let subs = closure.all_subgroup_sets();
    Ok(subs
        .into_iter()
        .map(|(_, gens)| {
            let perms: Vec<Permutation> = gens
                .iter()
                .map(|&id| closure.elements[id as usize].clone())
                .collect();
            PermGroup::new(group.degree(), perms).unwrap()
        })
        .collect())
}

/// Canonical form for comparing subgroup families across engines: each
/// subgroup as its sorted element list of image vectors, the family sorted.
pub fn canonical_family(groups: &[PermGroup]) -> Result<Vec<Vec<Vec<u32>>>> {
    let mut family = Vec::with_capacity(groups.len());
    for g in groups {
        let mut elems: Vec<Vec<u32>> = g
            .elements()?
            .into_iter()
            .map(|p| p.images().to_vec())
            .collect();
        elems.sort();
        family.push(elems);
    }
    family.sort();
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_order_matches_chain_order() {
        for group in [
            PermGroup::symmetric(4),
            PermGroup::alternating(5),
            PermGroup::cyclic(6),
            PermGroup::dihedral(4),
        ] {
            let closure =
                ElementClosure::build(group.degree(), group.generators(), 1000).unwrap();
            assert_eq!(closure.order(), group.order().unwrap());
        }
    }

    #[test]
    fn subgroup_counts_of_small_groups() {
        // divisor lattice of 6
        let c6 = PermGroup::cyclic(6);
        assert_eq!(oracle_all_subgroups(&c6, None).unwrap().len(), 4);

        let s3 = PermGroup::symmetric(3);
        assert_eq!(oracle_all_subgroups(&s3, None).unwrap().len(), 6);

        // quaternion group in its regular representation: 6 subgroups, all normal
        let q8 = PermGroup::from_cycle_strs(
            8,
            &["(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)"],
        )
        .unwrap();
        assert_eq!(q8.order().unwrap(), 8);
        let subs = oracle_all_subgroups(&q8, None).unwrap();
        assert_eq!(subs.len(), 6);
        for sub in &subs {
            assert!(q8.is_normal(sub).unwrap());
        }
    }

    #[test]
    fn s4_has_30_subgroups() {
        let s4 = PermGroup::symmetric(4);
        let subs = oracle_all_subgroups(&s4, None).unwrap();
        assert_eq!(subs.len(), 30);
        // orders follow Lagrange
        for sub in &subs {
            assert_eq!(24 % sub.order().unwrap(), 0);
        }
    }

    #[test]
    fn guard_is_enforced() {
        let s5 = PermGroup::symmetric(5);
        assert!(matches!(
            oracle_all_subgroups(&s5, Some(100)),
            Err(GroupError::OracleGuardExceeded { .. })
        ));
        assert_eq!(oracle_all_subgroups(&s5, Some(120)).unwrap().len(), 156);
    }
}
