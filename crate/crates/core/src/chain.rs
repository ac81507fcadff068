//! Deterministic Schreier–Sims stabilizer chains and element ranking.
//!
//! The chain keeps one level per point of the domain, in increasing order, so
//! the effective base is the sequence of smallest moved points. Level `p`
//! holds the orbit of `p` under the strong generators fixing `0..p`, together
//! with a transversal of coset representatives. The product of orbit lengths
//! is the group order, and every element factors uniquely over the
//! transversals, which yields the rank/unrank bijection onto `0..|G|`.

use std::sync::Arc;

use crate::error::{GroupError, Result};
use crate::perm::Permutation;

/// Default bound on the group order for element-indexed computations.
pub const DEFAULT_ELEMENT_CAP: u64 = 1 << 20;

#[derive(Debug)]
struct Level {
    /// Strong generators whose first moved point equals this level's base point.
    bucket: Vec<Permutation>,
    /// Orbit of the base point, sorted ascending.
    orbit: Vec<u32>,
    /// Position of each point in the sorted orbit; `u32::MAX` when outside.
    orbit_pos: Vec<u32>,
    /// Coset representative mapping the base point to each orbit point.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(degree: usize, base: u32) -> Self {
        let mut level = Level {
            bucket: Vec::new(),
            orbit: vec![base],
            orbit_pos: vec![u32::MAX; degree],
            transversal: vec![None; degree],
        };
        level.orbit_pos[base as usize] = 0;
        level.transversal[base as usize] = Some(Permutation::identity(degree));
        level
    }
}

#[derive(Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
    order: u64,
}

impl StabilizerChain {
    /// Builds the chain for the group generated by `gens` on `0..degree`.
    ///
    /// Fails when the generators disagree on degree or the group order
    /// exceeds `cap` (the group is too large for element-indexed mode).
    pub fn build(degree: usize, gens: &[Permutation], cap: u64) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut chain = StabilizerChain {
            degree,
            levels: (0..degree as u32).map(|p| Level::new(degree, p)).collect(),
            order: 1,
        };
        for g in gens {
            if let Some(fm) = g.first_moved() {
                chain.levels[fm as usize].bucket.push(g.clone());
            }
        }
        for p in 0..degree {
            chain.recompute_orbit(p);
        }
        chain.complete();
        let order = chain.order_u128();
        if order > cap as u128 {
            return Err(GroupError::CapExceeded { order, cap });
        }
        chain.order = order as u64;
        Ok(chain)
    }

    fn order_u128(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.orbit.len() as u128)
            .product()
    }

    /// Generators visible at `level`: every strong generator fixing `0..level`.
    fn visible(&self, level: usize) -> impl Iterator<Item = &Permutation> {
        self.levels[level..].iter().flat_map(|l| l.bucket.iter())
    }

    fn recompute_orbit(&mut self, level: usize) {
        let base = level as u32;
        let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
        transversal[level] = Some(Permutation::identity(self.degree));
        let mut queue = vec![base];
        let mut head = 0;
        while head < queue.len() {
            let point = queue[head];
            head += 1;
            let rep = transversal[point as usize].clone().unwrap();
            for gen in self.visible(level) {
                let image = gen.apply(point);
                if transversal[image as usize].is_none() {
                    transversal[image as usize] = Some(rep.mul(gen));
                    queue.push(image);
                }
            }
        }
        queue.sort_unstable();
        let mut orbit_pos = vec![u32::MAX; self.degree];
        for (i, &pt) in queue.iter().enumerate() {
            orbit_pos[pt as usize] = i as u32;
        }
        let lev = &mut self.levels[level];
        lev.orbit = queue;
        lev.orbit_pos = orbit_pos;
        lev.transversal = transversal;
    }

    /// Sifts `g` through levels `start..`, returning the residue and the level
    /// at which sifting stopped (the residue's first moved point, unless the
    /// residue is the identity).
    fn sift_from(&self, start: usize, g: &Permutation) -> (Permutation, usize) {
        let mut g = g.clone();
        for p in start..self.degree {
            let image = g.apply(p as u32);
            if image == p as u32 {
                continue;
            }
            match &self.levels[p].transversal[image as usize] {
                None => return (g, p),
                Some(u) => g = g.mul(&u.inverse()),
            }
        }
        (g, self.degree)
    }

    /// Verifies each level's Schreier generators, inserting sift residues as
    /// new strong generators until the chain is complete.
    fn complete(&mut self) {
        if self.degree == 0 {
            return;
        }
        let mut level = self.degree - 1;
        loop {
            match self.verify_level(level) {
                Some(failed_at) => level = failed_at,
                None => {
                    if level == 0 {
                        break;
                    }
                    level -= 1;
                }
            }
        }
    }

    /// Checks every Schreier generator of `level`; on a sift failure inserts
    /// the residue and returns the level that must be re-verified.
    fn verify_level(&mut self, level: usize) -> Option<usize> {
        let orbit = self.levels[level].orbit.clone();
        for &point in &orbit {
            let rep = self.levels[level].transversal[point as usize]
                .clone()
                .unwrap();
            let visible: Vec<Permutation> = self.visible(level).cloned().collect();
            for gen in visible {
                let image = gen.apply(point);
                let to_rep = self.levels[level].transversal[image as usize]
                    .clone()
                    .unwrap();
                let schreier = rep.mul(&gen).mul(&to_rep.inverse());
                if schreier.is_identity() {
                    continue;
                }
                let (residue, stop) = self.sift_from(level + 1, &schreier);
                if !residue.is_identity() {
                    debug_assert_eq!(residue.first_moved(), Some(stop as u32));
                    self.levels[stop].bucket.push(residue);
                    for p in level + 1..=stop {
                        self.recompute_orbit(p);
                    }
                    return Some(stop);
                }
            }
        }
        None
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Base points with non-trivial orbits, in increasing order.
    pub fn base(&self) -> Vec<u32> {
        self.levels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.orbit.len() > 1)
            .map(|(p, _)| p as u32)
            .collect()
    }

    /// All strong generators, grouped by level.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels
            .iter()
            .flat_map(|l| l.bucket.iter().cloned())
            .collect()
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        let (residue, _) = self.sift_from(0, g);
        Ok(residue.is_identity())
    }

    /// Rank of a member in the transversal-decomposition numbering.
    /// The identity has rank 0.
    pub fn rank(&self, g: &Permutation) -> Result<u64> {
        if g.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        let mut g = g.clone();
        let mut acc: u64 = 0;
        for p in 0..self.degree {
            let level = &self.levels[p];
            if level.orbit.len() == 1 {
                if g.apply(p as u32) != p as u32 {
                    return Err(GroupError::NotAMember);
                }
                continue;
            }
            let image = g.apply(p as u32);
            let pos = level.orbit_pos[image as usize];
            if pos == u32::MAX {
                return Err(GroupError::NotAMember);
            }
            acc = acc * level.orbit.len() as u64 + pos as u64;
            if image != p as u32 {
                let u = level.transversal[image as usize].as_ref().unwrap();
                g = g.mul(&u.inverse());
            }
        }
        if g.is_identity() {
            Ok(acc)
        } else {
            Err(GroupError::NotAMember)
        }
    }

    /// Inverse of [`rank`](Self::rank); `index` must be below the group order.
    pub fn unrank(&self, index: u64) -> Permutation {
        assert!(index < self.order, "unrank index out of range");
        let mut digits = vec![0u64; self.degree];
        let mut i = index;
        for p in (0..self.degree).rev() {
            let w = self.levels[p].orbit.len() as u64;
            digits[p] = i % w;
            i /= w;
        }
        let mut acc = Permutation::identity(self.degree);
        for p in (0..self.degree).rev() {
            let level = &self.levels[p];
            if level.orbit.len() == 1 {
                continue;
            }
            let point = level.orbit[digits[p] as usize];
            let u = level.transversal[point as usize].as_ref().unwrap();
            acc = acc.mul(u);
        }
        acc
    }
}

/// The bijection between group elements and `0..|G|`, shared cheaply.
#[derive(Clone, Debug)]
pub struct ElementIndex {
    chain: Arc<StabilizerChain>,
}

impl ElementIndex {
    pub(crate) fn new(chain: Arc<StabilizerChain>) -> Self {
        ElementIndex { chain }
    }

    pub fn len(&self) -> u64 {
        self.chain.order()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rank(&self, g: &Permutation) -> Result<u64> {
        self.chain.rank(g)
    }

    pub fn unrank(&self, index: u64) -> Permutation {
        self.chain.unrank(index)
    }

    /// All elements in rank order.
    pub fn iter(&self) -> impl Iterator<Item = Permutation> + '_ {
        (0..self.len()).map(|i| self.unrank(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perms(degree: usize, texts: &[&str]) -> Vec<Permutation> {
        texts
            .iter()
            .map(|t| Permutation::parse(degree, t).unwrap())
            .collect()
    }

    /// Brute-force closure of a generating set, the independent order oracle.
    fn closure_order(degree: usize, gens: &[Permutation]) -> usize {
        let mut elements = std::collections::HashSet::new();
        elements.insert(Permutation::identity(degree));
        let mut frontier = vec![Permutation::identity(degree)];
        while let Some(e) = frontier.pop() {
            for g in gens {
                let next = e.mul(g);
                if elements.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        elements.len()
    }

    #[test]
    fn s4_order_24() {
        let gens = perms(4, &["(1,2,3,4)", "(1,2)"]);
        let chain = StabilizerChain::build(4, &gens, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(chain.order(), 24);
        assert_eq!(chain.base(), vec![0, 1, 2]);
    }

    #[test]
    fn trivial_group_on_five_points() {
        let chain = StabilizerChain::build(5, &[], DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(chain.order(), 1);
        assert!(chain.base().is_empty());
    }

    #[test]
    fn a5_order_60() {
        // order computed by brute-force closure of the generators
        let gens = perms(5, &["(1,2,3,4,5)", "(3,4,5)"]);
        assert_eq!(closure_order(5, &gens), 60);
        let chain = StabilizerChain::build(5, &gens, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(chain.order(), 60);
    }

    #[test]
    fn chain_order_matches_closure_on_varied_groups() {
        let cases: Vec<(usize, Vec<&str>)> = vec![
            (6, vec!["(1,2,3,4,5,6)"]),
            (6, vec!["(1,2,3,4,5,6)", "(1,6)(2,5)(3,4)"]),
            (4, vec!["(1,2,3)", "(2,3,4)"]),
            (7, vec!["(1,2,3)", "(2,3)(4,5,6,7)"]),
            (5, vec!["(1,2,3,4,5)", "(2,3,5,4)"]),
            (6, vec!["(1,2)", "(3,4)", "(5,6)"]),
        ];
        for (degree, texts) in cases {
            let gens = perms(degree, &texts);
            let chain = StabilizerChain::build(degree, &gens, DEFAULT_ELEMENT_CAP).unwrap();
            assert_eq!(
                chain.order() as usize,
                closure_order(degree, &gens),
                "group {:?}",
                texts
            );
        }
    }

    #[test]
    fn generators_sift_to_identity() {
        let gens = perms(5, &["(1,2,3,4,5)", "(1,2)"]);
        let chain = StabilizerChain::build(5, &gens, DEFAULT_ELEMENT_CAP).unwrap();
        for g in &gens {
            assert!(chain.contains(g).unwrap());
        }
        for g in chain.strong_generators() {
            assert!(chain.contains(&g).unwrap());
        }
    }

    #[test]
    fn membership_negative() {
        let gens = perms(3, &["(1,2,3)"]);
        let chain = StabilizerChain::build(3, &gens, DEFAULT_ELEMENT_CAP).unwrap();
        let odd = Permutation::parse(3, "(1,2)").unwrap();
        assert!(!chain.contains(&odd).unwrap());
        assert!(chain.rank(&odd).is_err());
    }

    #[test]
    fn rank_unrank_round_trip_s4() {
        let gens = perms(4, &["(1,2,3,4)", "(1,2)"]);
        let chain = StabilizerChain::build(4, &gens, DEFAULT_ELEMENT_CAP).unwrap();
        assert!(chain.unrank(0).is_identity());
        let mut seen = std::collections::HashSet::new();
        for i in 0..chain.order() {
            let g = chain.unrank(i);
            assert_eq!(chain.rank(&g).unwrap(), i);
            assert!(seen.insert(g));
        }
    }

    #[test]
    fn cap_exceeded_is_reported() {
        let gens = perms(4, &["(1,2,3,4)", "(1,2)"]);
        let err = StabilizerChain::build(4, &gens, 10).unwrap_err();
        assert_eq!(
            err,
            GroupError::CapExceeded {
                order: 24,
                cap: 10
            }
        );
    }

    #[test]
    fn degree_mismatch_is_reported() {
        let a = Permutation::parse(3, "(1,2)").unwrap();
        let b = Permutation::parse(4, "(1,2,3,4)").unwrap();
        assert!(matches!(
            StabilizerChain::build(3, &[a, b], DEFAULT_ELEMENT_CAP),
            Err(GroupError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn deterministic_for_fixed_generators() {
        let gens = perms(5, &["(1,2,3,4,5)", "(1,2)"]);
        let c1 = StabilizerChain::build(5, &gens, DEFAULT_ELEMENT_CAP).unwrap();
        let c2 = StabilizerChain::build(5, &gens, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(c1.base(), c2.base());
        assert_eq!(c1.strong_generators(), c2.strong_generators());
        for i in 0..c1.order() {
            assert_eq!(c1.unrank(i), c2.unrank(i));
        }
    }
}
