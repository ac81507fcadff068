//! Permutation groups given by generators, with cached stabilizer chains.

use std::sync::{Arc, OnceLock};

use crate::chain::{ElementIndex, StabilizerChain, DEFAULT_ELEMENT_CAP};
use crate::context::GroupContext;
use crate::error::{GroupError, Result};
use crate::perm::Permutation;

/// Environment variable overriding the default element cap.
pub const ELEMENT_CAP_ENV: &str = "SUBLAT_ELEMENT_CAP";

fn default_element_cap() -> u64 {
    static CAP: OnceLock<u64> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(ELEMENT_CAP_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_ELEMENT_CAP)
    })
}

/// A finite permutation group on the points `0..degree`.
///
/// Values are immutable after construction; the stabilizer chain and element
/// table are computed once on demand and shared. Cloning is cheap for the
/// generator list and preserves already-computed caches.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    element_cap: u64,
    chain: OnceLock<std::result::Result<Arc<StabilizerChain>, GroupError>>,
    context: OnceLock<std::result::Result<Arc<GroupContext>, GroupError>>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermGroup(degree {}, ⟨", self.degree)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "⟩)")
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            element_cap: default_element_cap(),
            chain: OnceLock::new(),
            context: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).unwrap()
    }

    /// Parses 1-based cycle expressions into a group, e.g. `&["(1,2,3)", "(1,2)"]`.
    pub fn from_cycle_strs(degree: usize, gens: &[&str]) -> Result<Self> {
        let generators = gens
            .iter()
            .map(|t| Permutation::parse(degree, t))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(degree, generators)
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[(0..n as u32).collect()]).unwrap());
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        PermGroup::new(n.max(1), gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1, 2]]).unwrap());
            if n > 3 {
                let long: Vec<u32> = if n % 2 == 1 {
                    (0..n as u32).collect()
                } else {
                    (1..n as u32).collect()
                };
                gens.push(Permutation::from_cycles(n, &[long]).unwrap());
            }
        }
        PermGroup::new(n.max(1), gens).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        if n <= 1 {
            return PermGroup::trivial(1);
        }
        let gen = Permutation::from_cycles(n, &[(0..n as u32).collect()]).unwrap();
        PermGroup::new(n, vec![gen]).unwrap()
    }

    /// Dihedral group of order `2n` acting on an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 3, "dihedral group needs n >= 3");
        let rotation = Permutation::from_cycles(n, &[(0..n as u32).collect()]).unwrap();
        let reflection = Permutation::from_images(
            (0..n as u32).map(|p| (n as u32 - p) % n as u32).collect(),
        )
        .unwrap();
        PermGroup::new(n, vec![rotation, reflection]).unwrap()
    }

    /// Replaces the element cap (the bound on `|G|` for element-indexed
    /// computations). Only affects caches not yet built.
    pub fn with_element_cap(mut self, cap: u64) -> Self {
        self.element_cap = cap;
        self.chain = OnceLock::new();
        self.context = OnceLock::new();
        self
    }

    pub fn element_cap(&self) -> u64 {
        self.element_cap
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> Result<Arc<StabilizerChain>> {
        self.chain
            .get_or_init(|| {
                StabilizerChain::build(self.degree, &self.generators, self.element_cap)
                    .map(Arc::new)
            })
            .clone()
    }

    pub(crate) fn context(&self) -> Result<Arc<GroupContext>> {
        self.context
            .get_or_init(|| {
                let chain = self.chain()?;
                GroupContext::build(chain, &self.generators).map(Arc::new)
            })
            .clone()
    }

    pub(crate) fn from_context_sub(ambient: &PermGroup, sub: &crate::context::Sub) -> PermGroup {
        let ctx = ambient.context().expect("ambient context already built");
        let gens = ctx.sub_to_perms(sub);
        let mut group = PermGroup::new(ambient.degree, gens).unwrap();
        group.element_cap = ambient.element_cap;
        group
    }

    pub fn order(&self) -> Result<u64> {
        Ok(self.chain()?.order())
    }

    pub fn is_trivial(&self) -> Result<bool> {
        Ok(self.order()? == 1)
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        self.chain()?.contains(g)
    }

    /// True when every generator of `sub` lies in this group.
    pub fn has_subgroup(&self, sub: &PermGroup) -> Result<bool> {
        if sub.degree != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: sub.degree,
            });
        }
        for g in &sub.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Element-set equality, decided by order plus mutual containment.
    pub fn equals(&self, other: &PermGroup) -> Result<bool> {
        Ok(self.degree == other.degree
            && self.order()? == other.order()?
            && self.has_subgroup(other)?)
    }

    pub fn element_index(&self) -> Result<ElementIndex> {
        Ok(ElementIndex::new(self.chain()?))
    }

    /// All elements in rank order (the identity first).
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        let index = self.element_index()?;
        Ok(index.iter().collect())
    }

    /// Minimal id of each right coset of `sub`, ascending, as permutations.
    /// The first representative is the identity.
    pub fn coset_representatives(&self, sub: &PermGroup) -> Result<Vec<Permutation>> {
        if !self.has_subgroup(sub)? {
            return Err(GroupError::NotASubgroup);
        }
        let ctx = self.context()?;
        let ids = ctx.member_ids(&sub.elements()?)?;
        let sub = crate::context::Sub {
            order: ids.len() as u64,
            gens: Vec::new(),
            elems: ids,
        };
        Ok(ctx
            .coset_min_reps(&sub)
            .into_iter()
            .map(|id| ctx.elements[id as usize].clone())
            .collect())
    }

    /// Conjugacy classes of elements as `(representative, class size)`,
    /// ordered by the representative's element id; each representative is the
    /// minimal-id member of its class.
    pub fn conjugacy_classes(&self) -> Result<Vec<(Permutation, u64)>> {
        let ctx = self.context()?;
        let mut seen = ctx.empty_set();
        let mut classes = Vec::new();
        for e in 0..ctx.order as u32 {
            if seen.contains(e) {
                continue;
            }
            let mut orbit = vec![e];
            seen.insert(e);
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for &g in &ctx.gen_ids {
                    let y = ctx.conj(x, g);
                    if !seen.contains(y) {
                        seen.insert(y);
                        orbit.push(y);
                    }
                }
            }
            classes.push((ctx.elements[e as usize].clone(), orbit.len() as u64));
        }
        Ok(classes)
    }

    /// The centralizer of `g`, via orbit-stabilizer on the conjugation orbit.
    pub fn centralizer(&self, g: &Permutation) -> Result<PermGroup> {
        let ctx = self.context()?;
        let start = ctx.id_of(g).map_err(|_| GroupError::NotAMember)?;
        let (_, stab_gens) = self.element_conjugation_orbit(&ctx, start, None);
        let sub = ctx.closure(&stab_gens);
        let minimal = ctx.minimal_gens(&sub.elems);
        let gens = minimal
            .iter()
            .map(|&id| ctx.elements[id as usize].clone())
            .collect();
        let mut group = PermGroup::new(self.degree, gens)?;
        group.element_cap = self.element_cap;
        Ok(group)
    }

    /// An `x` with `g^x = h`, or `None` when `g` and `h` are not conjugate.
    pub fn conjugating_element(
        &self,
        g: &Permutation,
        h: &Permutation,
    ) -> Result<Option<Permutation>> {
        let ctx = self.context()?;
        let start = ctx.id_of(g).map_err(|_| GroupError::NotAMember)?;
        let target = ctx.id_of(h).map_err(|_| GroupError::NotAMember)?;
        let (found, _) = self.element_conjugation_orbit(&ctx, start, Some(target));
        Ok(found.map(|id| ctx.elements[id as usize].clone()))
    }

    /// BFS over the conjugation orbit of element `start`. Returns the
    /// conjugator reaching `target` (when requested and found) and the
    /// Schreier generator ids of the stabilizer.
    fn element_conjugation_orbit(
        &self,
        ctx: &GroupContext,
        start: u32,
        target: Option<u32>,
    ) -> (Option<u32>, Vec<u32>) {
        let mut rep: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
        rep.insert(start, 0);
        let mut queue = vec![start];
        let mut head = 0;
        let mut schreier = Vec::new();
        if target == Some(start) {
            return (Some(0), Vec::new());
        }
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let u = rep[&x];
            for &g in &ctx.gen_ids {
                let y = ctx.conj(x, g);
                let ug = ctx.mul(u, g);
                match rep.get(&y) {
                    Some(&v) => {
                        let s = ctx.mul(ug, ctx.inv(v));
                        if s != 0 && !schreier.contains(&s) {
                            schreier.push(s);
                        }
                    }
                    None => {
                        if target == Some(y) {
                            return (Some(ug), schreier);
                        }
                        rep.insert(y, ug);
                        queue.push(y);
                    }
                }
            }
        }
        (None, schreier)
    }

    /// The normalizer of a subgroup, via orbit-stabilizer on the conjugation
    /// action on subgroup element sets.
    pub fn normalizer(&self, sub: &PermGroup) -> Result<PermGroup> {
        if !self.has_subgroup(sub)? {
            return Err(GroupError::NotASubgroup);
        }
        let ctx = self.context()?;
        let elems = ctx.member_ids(&sub.elements()?)?;
        let gens = sub
            .generators
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| ctx.id_of(g))
            .collect::<Result<Vec<u32>>>()?;
        let s = crate::context::Sub {
            order: elems.len() as u64,
            elems,
            gens,
        };
        let n = ctx.normalizer_sub(&s);
        let minimal = ctx.minimal_gens(&n.elems);
        let gens = minimal
            .iter()
            .map(|&id| ctx.elements[id as usize].clone())
            .collect();
        let mut group = PermGroup::new(self.degree, gens)?;
        group.element_cap = self.element_cap;
        Ok(group)
    }

    /// True when conjugation by every generator fixes `sub` setwise.
    pub fn is_normal(&self, sub: &PermGroup) -> Result<bool> {
        if !self.has_subgroup(sub)? {
            return Err(GroupError::NotASubgroup);
        }
        for g in &self.generators {
            for u in sub.generators() {
                if !sub.contains(&u.conjugate(g))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Normal closure of the commutators of the generators.
    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        let mut gens: Vec<Permutation> = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                let c = a.commutator(b);
                if !c.is_identity() && !gens.contains(&c) {
                    gens.push(c);
                }
            }
        }
        // normal closure under the parent's generators
        let mut derived = PermGroup::new(self.degree, gens.clone())?;
        derived.element_cap = self.element_cap;
        loop {
            let mut grew = false;
            for n in derived.generators.clone() {
                for g in &self.generators {
                    let c = n.conjugate(g);
                    if !derived.contains(&c)? {
                        gens.push(c);
                        derived = PermGroup::new(self.degree, gens.clone())?;
                        derived.element_cap = self.element_cap;
                        grew = true;
                    }
                }
            }
            if !grew {
                return Ok(derived);
            }
        }
    }

    /// Derived series, starting at the group and ending at its perfect core.
    pub fn derived_series(&self) -> Result<Vec<PermGroup>> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = last.derived_subgroup()?;
            if next.order()? == last.order()? {
                return Ok(series);
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> Result<bool> {
        Ok(self.derived_series()?.last().unwrap().order()? == 1)
    }

    pub fn is_perfect(&self) -> Result<bool> {
        Ok(self.derived_subgroup()?.order()? == self.order()?)
    }

    pub fn is_abelian(&self) -> Result<bool> {
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                if !a.commutator(b).is_identity() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
