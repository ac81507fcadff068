//! Zuppos: the cyclic subgroups of prime-power order of a group, and the
//! bit-list signatures they induce on subgroups.
//!
//! Every subgroup is generated by its prime-power cyclic subgroups, so the
//! containment pattern over the global zuppo list is a faithful fingerprint:
//! two subgroups of the same group are equal exactly when their bit lists are.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::context::GroupContext;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// A cyclic subgroup of prime-power order, with its canonical generator (the
/// member of smallest element id among the generators).
#[derive(Clone, Debug)]
pub struct Zuppo {
    generator: Permutation,
    order: u64,
    prime: u64,
    element_ids: Vec<u32>,
}

impl Zuppo {
    pub fn generator(&self) -> &Permutation {
        &self.generator
    }

    /// The prime power `p^k > 1`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Sorted element ids of the cyclic subgroup in the ambient group.
    pub fn element_ids(&self) -> &[u32] {
        &self.element_ids
    }
}

/// Bit list over the ambient group's zuppo list: bit `i` is set exactly when
/// zuppo `i`'s cyclic subgroup is contained in the subgroup.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ZuppoSignature {
    pub(crate) bits: BitSet,
}

impl ZuppoSignature {
    pub fn bit(&self, i: usize) -> bool {
        self.bits.contains(i as u32)
    }

    pub fn count(&self) -> u32 {
        self.bits.len()
    }

    pub fn width(&self) -> u32 {
        self.bits.capacity()
    }
}

/// Engine-side zuppo record, all in element ids.
#[derive(Clone, Debug)]
pub(crate) struct ZuppoRec {
    pub gen_id: u32,
    pub prime: u64,
    pub order: u64,
    /// Id of `generator^prime`, the extension-step membership probe.
    pub pow_prime: u32,
    pub elems: BitSet,
    /// Ids of all generators of the cyclic subgroup.
    pub cyc_gens: Vec<u32>,
}

pub(crate) struct ZuppoData {
    pub recs: Vec<ZuppoRec>,
    by_gen: HashMap<u32, u32>,
}

fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > n {
        return Some((n, 1));
    }
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    if m == 1 {
        Some((p, k))
    } else {
        None
    }
}

impl ZuppoData {
    pub fn build(ctx: &GroupContext) -> Self {
        let mut recs: Vec<ZuppoRec> = Vec::new();
        let mut by_gen = HashMap::new();
        let mut claimed = BitSet::new(ctx.order as u32);
        for e in 1..ctx.order as u32 {
            if claimed.contains(e) {
                continue;
            }
            let ord = ctx.element_orders[e as usize] as u64;
            let Some((p, _)) = prime_power(ord) else {
                continue;
            };
            // powers of e, and the generating ones (order equal to |⟨e⟩|)
            let mut elems = ctx.empty_set();
            let mut cyc_gens = Vec::new();
            let mut x = 0u32;
            loop {
                elems.insert(x);
                if ctx.element_orders[x as usize] as u64 == ord {
                    cyc_gens.push(x);
                }
                x = ctx.mul(x, e);
                if x == 0 {
                    break;
                }
            }
            cyc_gens.sort_unstable();
            // the ascending sweep guarantees e is the canonical generator
            debug_assert_eq!(cyc_gens[0], e);
            for &g in &cyc_gens {
                claimed.insert(g);
            }
            let pow_prime = {
                let mut acc = e;
                for _ in 1..p {
                    acc = ctx.mul(acc, e);
                }
                acc
            };
            recs.push(ZuppoRec {
                gen_id: e,
                prime: p,
                order: ord,
                pow_prime,
                elems,
                cyc_gens,
            });
        }
        recs.sort_by_key(|r| (r.order, r.gen_id));
        for (i, r) in recs.iter().enumerate() {
            by_gen.insert(r.gen_id, i as u32);
        }
        ZuppoData { recs, by_gen }
    }

    /// Signature of a subgroup element set. A subgroup contains a zuppo's
    /// cyclic subgroup exactly when it contains the canonical generator.
    pub fn signature_of_set(&self, elems: &BitSet) -> BitSet {
        let mut bits = BitSet::new(self.recs.len() as u32);
        for (i, rec) in self.recs.iter().enumerate() {
            if elems.contains(rec.gen_id) {
                bits.insert(i as u32);
            }
        }
        bits
    }

    /// The permutation of zuppo indices induced by conjugation, given the
    /// element conjugation table of the conjugator.
    pub fn index_map(&self, conj_table: &[u32]) -> Vec<u32> {
        self.recs
            .iter()
            .map(|rec| {
                let new_gen = rec
                    .cyc_gens
                    .iter()
                    .map(|&g| conj_table[g as usize])
                    .min()
                    .unwrap();
                self.by_gen[&new_gen]
            })
            .collect()
    }

    pub fn apply_index_map(&self, bits: &BitSet, map: &[u32]) -> BitSet {
        let mut out = BitSet::new(self.recs.len() as u32);
        for i in bits.iter() {
            out.insert(map[i as usize]);
        }
        out
    }
}

/// The zuppo list of one ambient group, with signature operations.
pub struct ZuppoSet {
    group: PermGroup,
    zuppos: Vec<Zuppo>,
    pub(crate) data: ZuppoData,
}

impl ZuppoSet {
    /// Enumerates all prime-power-order cyclic subgroups of `group`, sorted by
    /// (order, canonical generator id) and deduplicated.
    pub fn compute(group: &PermGroup) -> Result<ZuppoSet> {
        let ctx = group.context()?;
        let data = ZuppoData::build(&ctx);
        let zuppos = data
            .recs
            .iter()
            .map(|rec| Zuppo {
                generator: ctx.elements[rec.gen_id as usize].clone(),
                order: rec.order,
                prime: rec.prime,
                element_ids: rec.elems.iter().collect(),
            })
            .collect();
        Ok(ZuppoSet {
            group: group.clone(),
            zuppos,
            data,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn zuppos(&self) -> &[Zuppo] {
        &self.zuppos
    }

    pub fn len(&self) -> usize {
        self.zuppos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zuppos.is_empty()
    }

    /// Signature of a subgroup: bit `i` set when zuppo `i` is contained in it.
    pub fn signature(&self, sub: &PermGroup) -> Result<ZuppoSignature> {
        if sub.degree() != self.group.degree() {
            return Err(GroupError::DegreeMismatch {
                expected: self.group.degree(),
                found: sub.degree(),
            });
        }
        let mut bits = BitSet::new(self.zuppos.len() as u32);
        for (i, z) in self.zuppos.iter().enumerate() {
            if sub.contains(&z.generator)? {
                bits.insert(i as u32);
            }
        }
        Ok(ZuppoSignature { bits })
    }

    /// Signature of the conjugate subgroup `U^x`, computed on the bit list via
    /// the induced permutation of zuppo indices.
    pub fn conjugate_signature(
        &self,
        sig: &ZuppoSignature,
        x: &Permutation,
    ) -> Result<ZuppoSignature> {
        let ctx = self.group.context()?;
        let x_id = ctx.id_of(x).map_err(|_| GroupError::NotAMember)?;
        let table = ctx.conj_table(x_id);
        let map = self.data.index_map(&table);
        Ok(ZuppoSignature {
            bits: self.data.apply_index_map(&sig.bits, &map),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(13), Some((13, 1)));
    }

    #[test]
    fn zuppos_of_s3() {
        // three C_2 and one C_3, enumerated over all 6 elements
        let s3 = PermGroup::symmetric(3);
        let zs = ZuppoSet::compute(&s3).unwrap();
        assert_eq!(zs.len(), 4);
        let orders: Vec<u64> = zs.zuppos().iter().map(|z| z.order()).collect();
        assert_eq!(orders, vec![2, 2, 2, 3]);
    }

    #[test]
    fn zuppos_of_c6_exclude_the_full_group() {
        // C_6 itself is not of prime-power order
        let c6 = PermGroup::cyclic(6);
        let zs = ZuppoSet::compute(&c6).unwrap();
        assert_eq!(zs.len(), 2);
        let orders: Vec<u64> = zs.zuppos().iter().map(|z| z.order()).collect();
        assert_eq!(orders, vec![2, 3]);
    }

    #[test]
    fn zuppos_of_trivial_group() {
        let triv = PermGroup::trivial(3);
        assert!(ZuppoSet::compute(&triv).unwrap().is_empty());
    }

    #[test]
    fn signature_extremes() {
        let s3 = PermGroup::symmetric(3);
        let zs = ZuppoSet::compute(&s3).unwrap();
        let trivial = zs.signature(&PermGroup::trivial(3)).unwrap();
        assert_eq!(trivial.count(), 0);
        let full = zs.signature(&s3).unwrap();
        assert_eq!(full.count(), 4);
    }

    #[test]
    fn signature_of_c3_in_s3() {
        let s3 = PermGroup::symmetric(3);
        let zs = ZuppoSet::compute(&s3).unwrap();
        let c3 = PermGroup::from_cycle_strs(3, &["(1,2,3)"]).unwrap();
        let sig = zs.signature(&c3).unwrap();
        assert_eq!(sig.count(), 1);
        // the set bit is the unique order-3 zuppo
        let set_bits: Vec<usize> = (0..zs.len()).filter(|&i| sig.bit(i)).collect();
        assert_eq!(set_bits.len(), 1);
        assert_eq!(zs.zuppos()[set_bits[0]].order(), 3);
    }

    #[test]
    fn conjugate_signature_matches_direct_computation() {
        let s3 = PermGroup::symmetric(3);
        let zs = ZuppoSet::compute(&s3).unwrap();
        let u = PermGroup::from_cycle_strs(3, &["(1,2)"]).unwrap();
        let x = Permutation::parse(3, "(1,3)").unwrap();
        let sig = zs.signature(&u).unwrap();
        let conj_sig = zs.conjugate_signature(&sig, &x).unwrap();
        let conj_u = PermGroup::from_cycle_strs(3, &["(2,3)"]).unwrap();
        assert_eq!(conj_sig, zs.signature(&conj_u).unwrap());
        // identity leaves signatures unchanged
        let id = Permutation::identity(3);
        assert_eq!(zs.conjugate_signature(&sig, &id).unwrap(), sig);
        // the full group's all-ones signature is invariant
        let full = zs.signature(&s3).unwrap();
        assert_eq!(zs.conjugate_signature(&full, &x).unwrap(), full);
    }
}
