//! Internal engine state for one ambient group: the element table, generator
//! conjugation tables, and subgroup-as-bitset machinery shared by the lattice
//! algorithms. Element ids are stabilizer-chain ranks, so id 0 is the identity.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::chain::StabilizerChain;
use crate::error::Result;
use crate::perm::Permutation;

/// Orders up to this bound get a full multiplication table.
const MUL_TABLE_LIMIT: u64 = 2048;

/// A subgroup of the ambient group, held as an element-id set plus generators.
#[derive(Clone, Debug)]
pub(crate) struct Sub {
    pub elems: BitSet,
    pub gens: Vec<u32>,
    pub order: u64,
}

/// A conjugacy class of subgroups in engine form.
#[derive(Clone, Debug)]
pub(crate) struct ClassRec {
    pub rep: Sub,
    pub normalizer: Sub,
    /// Minimal element id of each coset of the normalizer that meets the
    /// class, ascending; entry 0 is the identity and fixes the representative.
    pub transversal: Vec<u32>,
    /// Element sets of the class members, aligned with `transversal`.
    pub members: Vec<BitSet>,
}

pub(crate) struct GroupContext {
    pub order: u64,
    pub chain: std::sync::Arc<StabilizerChain>,
    /// Element table in rank order; `elements[0]` is the identity.
    pub elements: Vec<Permutation>,
    /// Ids of the inverses.
    pub inverses: Vec<u32>,
    /// Orders of the elements.
    pub element_orders: Vec<u32>,
    /// Non-identity generator ids of the ambient group, deduplicated.
    pub gen_ids: Vec<u32>,
    /// Per ambient generator, the table `e -> e^g`.
    gen_conj: Vec<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
}

impl GroupContext {
    pub fn build(chain: std::sync::Arc<StabilizerChain>, gens: &[Permutation]) -> Result<Self> {
        let order = chain.order();
        // element ids are u32 throughout the engine
        if order > u32::MAX as u64 {
            return Err(crate::error::GroupError::CapExceeded {
                order: order as u128,
                cap: u32::MAX as u64,
            });
        }
        let elements: Vec<Permutation> = (0..order).map(|i| chain.unrank(i)).collect();
        let mut inverses = vec![0u32; order as usize];
        let mut element_orders = vec![0u32; order as usize];
        for (i, e) in elements.iter().enumerate() {
            inverses[i] = chain.rank(&e.inverse())? as u32;
            element_orders[i] = e.order() as u32;
        }
        let mut gen_ids = Vec::new();
        for g in gens {
            let id = chain.rank(g)? as u32;
            if id != 0 && !gen_ids.contains(&id) {
                gen_ids.push(id);
            }
        }
        let mul_table = if order <= MUL_TABLE_LIMIT {
            let n = order as usize;
            let mut table = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    table[a * n + b] = chain.rank(&elements[a].mul(&elements[b]))? as u32;
                }
            }
            Some(table)
        } else {
            None
        };
        let mut ctx = GroupContext {
            order,
            chain,
            elements,
            inverses,
            element_orders,
            gen_ids: gen_ids.clone(),
            gen_conj: Vec::new(),
            mul_table,
        };
        ctx.gen_conj = gen_ids.iter().map(|&g| ctx.conj_table(g)).collect();
        Ok(ctx)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.mul_table {
            Some(t) => t[a as usize * self.order as usize + b as usize],
            None => self
                .chain
                .rank(&self.elements[a as usize].mul(&self.elements[b as usize]))
                .expect("product of members is a member") as u32,
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    /// `a^x = x⁻¹ a x`.
    pub fn conj(&self, a: u32, x: u32) -> u32 {
        self.mul(self.mul(self.inv(x), a), x)
    }

    pub fn id_of(&self, g: &Permutation) -> Result<u32> {
        Ok(self.chain.rank(g)? as u32)
    }

    /// The table `e -> e^x` over all element ids.
    pub fn conj_table(&self, x: u32) -> Vec<u32> {
        let xp = &self.elements[x as usize];
        let xinv = xp.inverse();
        (0..self.order)
            .map(|e| {
                let conj = xinv.mul(&self.elements[e as usize]).mul(xp);
                self.chain.rank(&conj).expect("conjugate of member") as u32
            })
            .collect()
    }

    pub fn empty_set(&self) -> BitSet {
        BitSet::new(self.order as u32)
    }

    pub fn full_sub(&self) -> Sub {
        let mut elems = self.empty_set();
        for e in 0..self.order as u32 {
            elems.insert(e);
        }
        Sub {
            elems,
            gens: self.gen_ids.clone(),
            order: self.order,
        }
    }

    pub fn trivial_sub(&self) -> Sub {
        let mut elems = self.empty_set();
        elems.insert(0);
        Sub {
            elems,
            gens: Vec::new(),
            order: 1,
        }
    }

    /// Subgroup generated by the given element ids.
    pub fn closure(&self, seeds: &[u32]) -> Sub {
        let mut gens: Vec<u32> = Vec::new();
        for &s in seeds {
            if s != 0 && !gens.contains(&s) {
                gens.push(s);
            }
        }
        let mut elems = self.empty_set();
        elems.insert(0);
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            for &g in &gens {
                let t = self.mul(e, g);
                if !elems.contains(t) {
                    elems.insert(t);
                    queue.push(t);
                }
            }
        }
        let order = elems.len() as u64;
        Sub { elems, gens, order }
    }

    /// Normal closure of `seeds` under conjugation by `under_gens`.
    pub fn normal_closure(&self, seeds: &[u32], under_gens: &[u32]) -> Sub {
        let mut ngens: Vec<u32> = seeds.iter().copied().filter(|&s| s != 0).collect();
        ngens.dedup();
        let mut sub = self.closure(&ngens);
        loop {
            let mut grew = false;
            let current: Vec<u32> = ngens.clone();
            for &n in &current {
                for &g in under_gens {
                    let c = self.conj(n, g);
                    if !sub.elems.contains(c) {
                        ngens.push(c);
                        sub = self.closure(&ngens);
                        grew = true;
                    }
                }
            }
            if !grew {
                return sub;
            }
        }
    }

    /// Greedy minimal generating ids for a subgroup element set: sweep the ids
    /// ascending, adding any element not yet generated.
    pub fn minimal_gens(&self, elems: &BitSet) -> Vec<u32> {
        let target = elems.len() as u64;
        let mut gens = Vec::new();
        let mut have = self.trivial_sub();
        if have.order == target {
            return gens;
        }
        for e in elems.iter() {
            if have.elems.contains(e) {
                continue;
            }
            gens.push(e);
            have = self.closure(&gens);
            if have.order == target {
                break;
            }
        }
        debug_assert_eq!(have.order, target, "element set is not a subgroup");
        gens
    }

    pub fn sub_from_elems(&self, elems: BitSet) -> Sub {
        let gens = self.minimal_gens(&elems);
        let order = elems.len() as u64;
        Sub { elems, gens, order }
    }

    /// Ranks the elements of another group inside this ambient group.
    pub fn member_ids(&self, sub_elements: &[Permutation]) -> Result<BitSet> {
        let mut set = self.empty_set();
        for e in sub_elements {
            set.insert(self.id_of(e)?);
        }
        Ok(set)
    }

    pub fn sub_to_perms(&self, sub: &Sub) -> Vec<Permutation> {
        sub.gens
            .iter()
            .map(|&g| self.elements[g as usize].clone())
            .collect()
    }

    /// Conjugates a subgroup element set through a precomputed table.
    pub fn conj_set(&self, elems: &BitSet, table: &[u32]) -> BitSet {
        let mut out = self.empty_set();
        for e in elems.iter() {
            out.insert(table[e as usize]);
        }
        out
    }

    /// Orbit of a subgroup under conjugation by the ambient generators.
    /// Returns the member element sets with a conjugating element id each (in
    /// BFS order, starting at the seed with conjugator 0), plus the stabilizer
    /// of the seed, i.e. its normalizer, generated by the Schreier elements.
    pub fn subgroup_orbit(&self, seed: &Sub) -> (Vec<(BitSet, u32)>, Sub) {
        let mut members: Vec<(BitSet, u32)> = vec![(seed.elems.clone(), 0)];
        let mut known: HashMap<BitSet, u32> = HashMap::new();
        known.insert(seed.elems.clone(), 0);
        let mut schreier: Vec<u32> = seed.gens.clone();
        let mut head = 0;
        while head < members.len() {
            let (set, c) = members[head].clone();
            head += 1;
            for (gi, &g) in self.gen_ids.iter().enumerate() {
                let image = self.conj_set(&set, &self.gen_conj[gi]);
                let cg = self.mul(c, g);
                match known.get(&image) {
                    Some(&existing) => {
                        let s = self.mul(cg, self.inv(existing));
                        if s != 0 && !schreier.contains(&s) {
                            schreier.push(s);
                        }
                    }
                    None => {
                        known.insert(image.clone(), cg);
                        members.push((image, cg));
                    }
                }
            }
        }
        let normalizer = self.closure(&schreier);
        (members, normalizer)
    }

    /// Normalizer of a subgroup in the ambient group.
    pub fn normalizer_sub(&self, sub: &Sub) -> Sub {
        let (_, n) = self.subgroup_orbit(sub);
        n
    }

    /// Minimal element id of each right coset of `sub`, ascending; the first
    /// entry is 0 (the identity's coset).
    pub fn coset_min_reps(&self, sub: &Sub) -> Vec<u32> {
        let mut visited = self.empty_set();
        let mut reps = Vec::with_capacity((self.order / sub.order) as usize);
        for e in 0..self.order as u32 {
            if visited.contains(e) {
                continue;
            }
            reps.push(e);
            for s in sub.elems.iter() {
                visited.insert(self.mul(s, e));
            }
        }
        reps
    }

    /// Builds the full class record for the conjugacy class of `seed`:
    /// canonical representative (member with the smallest leading element),
    /// its normalizer, and the canonical transversal with aligned members.
    pub fn classify(&self, seed: &Sub) -> ClassRec {
        let (orbit, norm0) = self.subgroup_orbit(seed);
        let min_idx = (0..orbit.len())
            .min_by(|&a, &b| orbit[a].0.cmp_by_first_member(&orbit[b].0))
            .unwrap();
        let to_rep = orbit[min_idx].1;
        let rep_elems = orbit[min_idx].0.clone();
        let (rep, normalizer) = if to_rep == 0 {
            (
                Sub {
                    elems: rep_elems,
                    gens: seed.gens.clone(),
                    order: seed.order,
                },
                norm0,
            )
        } else {
            let table = self.conj_table(to_rep);
            let rep = Sub {
                elems: rep_elems,
                gens: seed.gens.iter().map(|&g| table[g as usize]).collect(),
                order: seed.order,
            };
            let normalizer = Sub {
                elems: self.conj_set(&norm0.elems, &table),
                gens: norm0.gens.iter().map(|&g| table[g as usize]).collect(),
                order: norm0.order,
            };
            (rep, normalizer)
        };
        // Conjugator from the canonical rep to each member, then the minimal
        // element of its normalizer-coset as the canonical transversal entry.
        let to_rep_inv = self.inv(to_rep);
        let mut keyed: Vec<(u32, BitSet)> = orbit
            .into_iter()
            .map(|(set, c)| {
                let d = self.mul(to_rep_inv, c);
                let key = normalizer
                    .elems
                    .iter()
                    .map(|n| self.mul(n, d))
                    .min()
                    .unwrap();
                (key, set)
            })
            .collect();
        keyed.sort_by_key(|(key, _)| *key);
        let transversal: Vec<u32> = keyed.iter().map(|(key, _)| *key).collect();
        let members: Vec<BitSet> = keyed.into_iter().map(|(_, set)| set).collect();
        debug_assert_eq!(transversal[0], 0);
        ClassRec {
            rep,
            normalizer,
            transversal,
            members,
        }
    }

    /// Derived subgroup of a subgroup: normal closure of the generator
    /// commutators under the subgroup's own generators.
    pub fn derived_sub(&self, sub: &Sub) -> Sub {
        let mut comms = Vec::new();
        for &a in &sub.gens {
            for &b in &sub.gens {
                let c = self.mul(
                    self.mul(self.mul(self.inv(a), self.inv(b)), a),
                    b,
                );
                if c != 0 && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms, &sub.gens)
    }

    /// Last term of the derived series of a subgroup.
    pub fn perfect_core(&self, sub: &Sub) -> Sub {
        let mut current = sub.clone();
        loop {
            let next = self.derived_sub(&current);
            if next.order == current.order {
                return next;
            }
            current = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::DEFAULT_ELEMENT_CAP;
    use std::sync::Arc;

    fn ctx(degree: usize, texts: &[&str]) -> GroupContext {
        let gens: Vec<Permutation> = texts
            .iter()
            .map(|t| Permutation::parse(degree, t).unwrap())
            .collect();
        let chain =
            Arc::new(StabilizerChain::build(degree, &gens, DEFAULT_ELEMENT_CAP).unwrap());
        GroupContext::build(chain, &gens).unwrap()
    }

    #[test]
    fn mul_and_inv_tables_agree_with_permutations() {
        let c = ctx(4, &["(1,2,3,4)", "(1,2)"]);
        for a in 0..c.order as u32 {
            assert!(c.elements[a as usize]
                .mul(&c.elements[c.inv(a) as usize])
                .is_identity());
            for b in 0..c.order as u32 {
                let prod = c.elements[a as usize].mul(&c.elements[b as usize]);
                assert_eq!(c.elements[c.mul(a, b) as usize], prod);
            }
        }
    }

    #[test]
    fn closure_generates_subgroups() {
        let c = ctx(4, &["(1,2,3,4)", "(1,2)"]);
        let g = c.id_of(&Permutation::parse(4, "(1,2,3)").unwrap()).unwrap();
        let sub = c.closure(&[g]);
        assert_eq!(sub.order, 3);
        let v4a = c
            .id_of(&Permutation::parse(4, "(1,2)(3,4)").unwrap())
            .unwrap();
        let v4b = c
            .id_of(&Permutation::parse(4, "(1,3)(2,4)").unwrap())
            .unwrap();
        assert_eq!(c.closure(&[v4a, v4b]).order, 4);
    }

    #[test]
    fn normalizer_of_transposition_in_s4() {
        let c = ctx(4, &["(1,2,3,4)", "(1,2)"]);
        let t = c.id_of(&Permutation::parse(4, "(1,2)").unwrap()).unwrap();
        let sub = c.closure(&[t]);
        let n = c.normalizer_sub(&sub);
        assert_eq!(n.order, 4);
        let other = c.id_of(&Permutation::parse(4, "(3,4)").unwrap()).unwrap();
        assert!(n.elems.contains(other));
    }

    #[test]
    fn classify_transpositions_in_s4() {
        let c = ctx(4, &["(1,2,3,4)", "(1,2)"]);
        let t = c.id_of(&Permutation::parse(4, "(1,2)").unwrap()).unwrap();
        let class = c.classify(&c.closure(&[t]));
        assert_eq!(class.members.len(), 6);
        assert_eq!(class.transversal.len(), 6);
        assert_eq!(class.normalizer.order, 4);
        assert_eq!(class.transversal[0], 0);
        // members are pairwise distinct element sets of order 2
        for (i, m) in class.members.iter().enumerate() {
            assert_eq!(m.len(), 2);
            for n in &class.members[..i] {
                assert_ne!(m, n);
            }
        }
    }

    #[test]
    fn derived_of_s4_is_a4() {
        let c = ctx(4, &["(1,2,3,4)", "(1,2)"]);
        let d = c.derived_sub(&c.full_sub());
        assert_eq!(d.order, 12);
        let dd = c.derived_sub(&d);
        assert_eq!(dd.order, 4);
        assert_eq!(c.perfect_core(&c.full_sub()).order, 1);
    }

    #[test]
    fn minimal_gens_are_small_and_correct() {
        let c = ctx(6, &["(1,2,3,4,5,6)"]);
        let full = c.full_sub();
        let gens = c.minimal_gens(&full.elems);
        assert_eq!(c.closure(&gens).order, 6);
        assert_eq!(gens.len(), 1);
    }
}
