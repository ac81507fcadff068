//! Conjugacy classes of subgroups by the cyclic extension algorithm.
//!
//! Seeds are the perfect subgroups (found by a two-generator search with
//! perfect cores); every other subgroup has a normal subgroup of prime index
//! and therefore arises as `⟨U, n⟩` for a known class representative `U` and
//! a zuppo generator `n` normalizing `U` with `n^p ∈ U`. New subgroups are
//! deduplicated by zuppo signature, then fused into classes together with
//! their whole conjugation orbit.

use std::collections::HashSet;

use crate::bitset::BitSet;
use crate::context::{ClassRec, GroupContext, Sub};
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::zuppos::{ZuppoData, ZuppoSet, ZuppoSignature};

/// A conjugacy class of subgroups: representative, its normalizer, and the
/// canonical transversal of normalizer cosets (minimal member per coset,
/// ascending, starting with the identity).
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    representative: PermGroup,
    normalizer: PermGroup,
    transversal: Vec<Permutation>,
    order: u64,
}

impl SubgroupClass {
    pub(crate) fn from_rec(ambient: &PermGroup, rec: &ClassRec) -> Self {
        let ctx = ambient.context().expect("ambient context built");
        let minimal = |sub: &Sub| Sub {
            elems: sub.elems.clone(),
            gens: ctx.minimal_gens(&sub.elems),
            order: sub.order,
        };
        SubgroupClass {
            representative: PermGroup::from_context_sub(ambient, &minimal(&rec.rep)),
            normalizer: PermGroup::from_context_sub(ambient, &minimal(&rec.normalizer)),
            transversal: rec
                .transversal
                .iter()
                .map(|&id| ctx.elements[id as usize].clone())
                .collect(),
            order: rec.rep.order,
        }
    }

    pub fn representative(&self) -> &PermGroup {
        &self.representative
    }

    pub fn normalizer(&self) -> &PermGroup {
        &self.normalizer
    }

    /// Coset representatives of the normalizer in the ambient group; the
    /// class members are the conjugates of the representative by these.
    pub fn transversal(&self) -> &[Permutation] {
        &self.transversal
    }

    /// Number of subgroups in the class.
    pub fn len(&self) -> usize {
        self.transversal.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Order of the subgroups in the class.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_normal(&self) -> bool {
        self.transversal.len() == 1
    }

    /// All members, conjugating the representative across the transversal.
    pub fn members(&self) -> Vec<PermGroup> {
        self.transversal
            .iter()
            .map(|t| {
                let gens: Vec<Permutation> = self
                    .representative
                    .generators()
                    .iter()
                    .map(|g| g.conjugate(t))
                    .collect();
                PermGroup::new(self.representative.degree(), gens).unwrap()
            })
            .collect()
    }
}

/// Restriction of the lattice enumeration to subgroups with a property.
///
/// Built-in filters depend only on the subgroup order and are downward
/// closed (every subgroup of a passing subgroup passes), which the cyclic
/// extension step requires for completeness.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LatticeFilter {
    max_order: Option<u64>,
    order_divides: Option<u64>,
    p_group: Option<u64>,
}

impl LatticeFilter {
    /// No restriction: the full lattice.
    pub fn none() -> Self {
        LatticeFilter::default()
    }

    pub fn max_order(n: u64) -> Self {
        LatticeFilter {
            max_order: Some(n),
            ..Default::default()
        }
    }

    pub fn order_divides(n: u64) -> Self {
        LatticeFilter {
            order_divides: Some(n),
            ..Default::default()
        }
    }

    pub fn p_group(p: u64) -> Self {
        LatticeFilter {
            p_group: Some(p),
            ..Default::default()
        }
    }

    /// Parses a named predicate such as `p-group:2`. Unknown names are
    /// rejected: an arbitrary predicate may not be downward closed, which
    /// would break completeness of the extension step.
    pub fn from_predicate_id(id: &str) -> Result<Self> {
        if let Some(p) = id.strip_prefix("p-group:") {
            let p: u64 = p
                .parse()
                .map_err(|_| GroupError::InvalidFilter(format!("bad prime in {id:?}")))?;
            if !is_prime(p) {
                return Err(GroupError::NotPrime(p));
            }
            return Ok(LatticeFilter::p_group(p));
        }
        Err(GroupError::InvalidFilter(format!(
            "unknown predicate {id:?}; only downward-closed built-ins are accepted"
        )))
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.max_order {
            if n == 0 {
                return Err(GroupError::InvalidFilter("max_order must be positive".into()));
            }
        }
        if let Some(n) = self.order_divides {
            if n == 0 {
                return Err(GroupError::InvalidFilter(
                    "order_divides must be positive".into(),
                ));
            }
        }
        if let Some(p) = self.p_group {
            if !is_prime(p) {
                return Err(GroupError::NotPrime(p));
            }
        }
        Ok(())
    }

    pub fn is_none(&self) -> bool {
        *self == LatticeFilter::default()
    }

    pub(crate) fn passes(&self, order: u64) -> bool {
        if let Some(n) = self.max_order {
            if order > n {
                return false;
            }
        }
        if let Some(n) = self.order_divides {
            if n % order != 0 {
                return false;
            }
        }
        if let Some(p) = self.p_group {
            let mut m = order;
            while m.is_multiple_of(p) {
                m /= p;
            }
            if m != 1 {
                return false;
            }
        }
        true
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Conjugacy-class representatives of elements, as ids, by ascending sweep.
fn element_class_reps(ctx: &GroupContext) -> Vec<u32> {
    let mut seen = ctx.empty_set();
    let mut reps = Vec::new();
    for e in 0..ctx.order as u32 {
        if seen.contains(e) {
            continue;
        }
        reps.push(e);
        let mut queue = vec![e];
        seen.insert(e);
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in &ctx.gen_ids {
                let y = ctx.conj(x, g);
                if !seen.contains(y) {
                    seen.insert(y);
                    queue.push(y);
                }
            }
        }
    }
    reps
}

/// Centralizer of element `a` as a Sub, by orbit-stabilizer.
fn centralizer_sub(ctx: &GroupContext, a: u32) -> Sub {
    let mut rep: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
    rep.insert(a, 0);
    let mut queue = vec![a];
    let mut head = 0;
    let mut schreier: Vec<u32> = Vec::new();
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
                    rep.insert(y, ug);
                    queue.push(y);
                }
            }
        }
    }
    let full = ctx.closure(&schreier);
    let gens = ctx.minimal_gens(&full.elems);
    Sub {
        elems: full.elems,
        order: full.order,
        gens,
    }
}

/// Perfect subgroup seeds for cyclic extension: the trivial subgroup plus the
/// perfect cores of all two-generated subgroups `⟨a, b⟩`, with `a` over
/// element-class representatives and `b` over orbit representatives of the
/// centralizer of `a` acting on the group by conjugation. Deduplicated up to
/// conjugacy. Complete on groups whose perfect subgroups are two-generated.
pub(crate) fn perfect_seeds(ctx: &GroupContext) -> Vec<Sub> {
    let mut seeds: Vec<Sub> = vec![ctx.trivial_sub()];
    let mut known: HashSet<BitSet> = HashSet::new();
    let mut trivial_set = ctx.empty_set();
    trivial_set.insert(0);
    known.insert(trivial_set);
    for &a in &element_class_reps(ctx) {
        if a == 0 {
            continue;
        }
        let cent = centralizer_sub(ctx, a);
        // orbit representatives of the centralizer acting by conjugation
        let mut seen = ctx.empty_set();
        for b in 0..ctx.order as u32 {
            if seen.contains(b) {
                continue;
            }
            let mut queue = vec![b];
            seen.insert(b);
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                for &g in &cent.gens {
                    let y = ctx.conj(x, g);
                    if !seen.contains(y) {
                        seen.insert(y);
                        queue.push(y);
                    }
                }
            }
            if b == 0 {
                continue;
            }
            let sub = ctx.closure(&[a, b]);
            let core = ctx.perfect_core(&sub);
            if core.order == 1 || known.contains(&core.elems) {
                continue;
            }
            // record the whole conjugation orbit so conjugate cores are fused
            let (orbit, _) = ctx.subgroup_orbit(&core);
            for (set, _) in orbit {
                known.insert(set);
            }
            seeds.push(core);
        }
    }
    seeds.sort_by(|x, y| {
        x.order
            .cmp(&y.order)
            .then_with(|| x.elems.cmp_by_first_member(&y.elems))
    });
    seeds
}

/// The trivial subgroup together with the non-trivial perfect subgroups found
/// by the two-generator search, up to conjugacy.
///
/// Completeness is not guaranteed in general (a perfect subgroup that is not
/// two-generated could be missed); it holds on the verification corpus and
/// can be repaired by passing extra seeds to
/// [`lattice_cyclic_extension_with_seeds`].
pub fn find_perfect_subgroups(group: &PermGroup) -> Result<Vec<PermGroup>> {
    let ctx = group.context()?;
    Ok(perfect_seeds(&ctx)
        .iter()
        .map(|sub| PermGroup::from_context_sub(group, sub))
        .collect())
}

/// Extension candidates for one class representative: every zuppo generator
/// `n` in the normalizer but outside the subgroup with `n^p` inside extends
/// it to `⟨U, n⟩ = U ∪ Un ∪ … ∪ Un^{p-1}` of order `|U|·p`.
pub(crate) fn extension_candidates(
    ctx: &GroupContext,
    zdata: &ZuppoData,
    rep: &Sub,
    normalizer: &Sub,
) -> Vec<Sub> {
    let mut out: Vec<Sub> = Vec::new();
    let mut local: HashSet<BitSet> = HashSet::new();
    for rec in &zdata.recs {
        let n = rec.gen_id;
        if !normalizer.elems.contains(n) || rep.elems.contains(n) {
            continue;
        }
        if !rep.elems.contains(rec.pow_prime) {
            continue;
        }
        let mut elems = rep.elems.clone();
        let mut shift = n;
        for _ in 1..rec.prime {
            for u in rep.elems.iter() {
                elems.insert(ctx.mul(u, shift));
            }
            shift = ctx.mul(shift, n);
        }
        debug_assert_eq!(elems.len() as u64, rep.order * rec.prime);
        if local.insert(elems.clone()) {
            let mut gens = rep.gens.clone();
            gens.push(n);
            out.push(Sub {
                order: elems.len() as u64,
                elems,
                gens,
            });
        }
    }
    out
}

/// One cyclic extension step for a known class: emits the extensions of the
/// representative whose signatures are not in `known`.
pub fn cyclic_extension_step(
    group: &PermGroup,
    class: &SubgroupClass,
    zuppos: &ZuppoSet,
    known: &HashSet<ZuppoSignature>,
) -> Result<Vec<PermGroup>> {
    let ctx = group.context()?;
    let rep_elems = ctx.member_ids(&class.representative().elements()?)?;
    let rep_gens = class
        .representative()
        .generators()
        .iter()
        .filter(|g| !g.is_identity())
        .map(|g| ctx.id_of(g))
        .collect::<Result<Vec<u32>>>()?;
    let norm_elems = ctx.member_ids(&class.normalizer().elements()?)?;
    let rep = Sub {
        order: rep_elems.len() as u64,
        elems: rep_elems,
        gens: rep_gens,
    };
    let normalizer = Sub {
        order: norm_elems.len() as u64,
        elems: norm_elems,
        gens: Vec::new(),
    };
    let candidates = extension_candidates(&ctx, &zuppos.data, &rep, &normalizer);
    Ok(candidates
        .into_iter()
        .filter(|sub| {
            let sig = ZuppoSignature {
                bits: zuppos.data.signature_of_set(&sub.elems),
            };
            !known.contains(&sig)
        })
        .map(|sub| PermGroup::from_context_sub(group, &sub))
        .collect())
}

/// Canonical class order: by subgroup order, then by the lexicographically
/// minimal zuppo signature over the class members.
pub(crate) fn sort_classes_canonically(
    zdata: &ZuppoData,
    recs: Vec<ClassRec>,
) -> Vec<ClassRec> {
    let mut keyed: Vec<(u64, BitSet, ClassRec)> = recs
        .into_iter()
        .map(|rec| {
            let min_sig = rec
                .members
                .iter()
                .map(|m| zdata.signature_of_set(m))
                .min_by(|a, b| a.cmp_by_first_member(b))
                .unwrap();
            (rec.rep.order, min_sig, rec)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp_by_first_member(&b.1)));
    keyed.into_iter().map(|(_, _, rec)| rec).collect()
}

/// Engine form of the full enumeration; returns canonical class records.
pub(crate) fn lattice_classes(
    ctx: &GroupContext,
    zdata: &ZuppoData,
    filter: &LatticeFilter,
    extra_seeds: &[Sub],
) -> Vec<ClassRec> {
    let mut classes: Vec<ClassRec> = Vec::new();
    let mut known: HashSet<BitSet> = HashSet::new();

    let admit = |sub: &Sub, classes: &mut Vec<ClassRec>, known: &mut HashSet<BitSet>| {
        if !filter.passes(sub.order) {
            return;
        }
        let sig = zdata.signature_of_set(&sub.elems);
        if known.contains(&sig) {
            return;
        }
        let rec = ctx.classify(sub);
        for member in &rec.members {
            known.insert(zdata.signature_of_set(member));
        }
        classes.push(rec);
    };

    let mut seeds = perfect_seeds(ctx);
    seeds.extend_from_slice(extra_seeds);
    for seed in &seeds {
        admit(seed, &mut classes, &mut known);
    }

    let mut idx = 0;
    while idx < classes.len() {
        let rep = classes[idx].rep.clone();
        let normalizer = classes[idx].normalizer.clone();
        for cand in extension_candidates(ctx, zdata, &rep, &normalizer) {
            admit(&cand, &mut classes, &mut known);
        }
        idx += 1;
    }

    sort_classes_canonically(zdata, classes)
}

/// All subgroups of `group` passing `filter`, up to conjugacy, by cyclic
/// extension. Classes are ordered by (order, minimal signature in the class).
pub fn lattice_cyclic_extension(
    group: &PermGroup,
    filter: &LatticeFilter,
) -> Result<Vec<SubgroupClass>> {
    lattice_cyclic_extension_with_seeds(group, filter, &[])
}

/// Same as [`lattice_cyclic_extension`], with additional perfect-subgroup
/// seeds (for groups whose perfect subgroups the built-in search could miss).
pub fn lattice_cyclic_extension_with_seeds(
    group: &PermGroup,
    filter: &LatticeFilter,
    extra_seeds: &[PermGroup],
) -> Result<Vec<SubgroupClass>> {
    filter.validate()?;
    let ctx = group.context()?;
    let mut seeds = Vec::new();
    for seed in extra_seeds {
        if !group.has_subgroup(seed)? {
            return Err(GroupError::NotASubgroup);
        }
        let elems = ctx.member_ids(&seed.elements()?)?;
        let sub = ctx.sub_from_elems(elems);
        if ctx.derived_sub(&sub).order != sub.order {
            return Err(GroupError::InvalidFilter(
                "extra seed is not a perfect subgroup".into(),
            ));
        }
        seeds.push(sub);
    }
    let zdata = ZuppoData::build(&ctx);
    let recs = lattice_classes(&ctx, &zdata, filter, &seeds);
    Ok(recs
        .iter()
        .map(|rec| SubgroupClass::from_rec(group, rec))
        .collect())
}

/// A conjugator mapping `u` onto `v` in `group`, or `None`.
///
/// Pre-filters on order and the element-order multiset, then scans the
/// conjugation orbit of `u` (one member per normalizer coset).
pub fn is_conjugate_subgroups(
    group: &PermGroup,
    u: &PermGroup,
    v: &PermGroup,
) -> Result<Option<Permutation>> {
    if !group.has_subgroup(u)? || !group.has_subgroup(v)? {
        return Err(GroupError::NotASubgroup);
    }
    let ctx = group.context()?;
    let u_elems = ctx.member_ids(&u.elements()?)?;
    let v_elems = ctx.member_ids(&v.elements()?)?;
    if u_elems.len() != v_elems.len() {
        return Ok(None);
    }
    let order_multiset = |elems: &BitSet| {
        let mut orders: Vec<u32> = elems
            .iter()
            .map(|e| ctx.element_orders[e as usize])
            .collect();
        orders.sort_unstable();
        orders
    };
    if order_multiset(&u_elems) != order_multiset(&v_elems) {
        return Ok(None);
    }
    let u_sub = Sub {
        order: u_elems.len() as u64,
        elems: u_elems,
        gens: Vec::new(),
    };
    let (orbit, _) = ctx.subgroup_orbit(&u_sub);
    for (set, conj) in orbit {
        if set == v_elems {
            return Ok(Some(ctx.elements[conj as usize].clone()));
        }
    }
    Ok(None)
}

/// A Sylow `p`-subgroup: the maximal class of the `p`-group-filtered lattice.
pub fn sylow_subgroup(group: &PermGroup, p: u64) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let ctx = group.context()?;
    let zdata = ZuppoData::build(&ctx);
    let recs = lattice_classes(&ctx, &zdata, &LatticeFilter::p_group(p), &[]);
    let best = recs
        .iter()
        .max_by_key(|rec| rec.rep.order)
        .expect("the trivial class always exists");
    Ok(PermGroup::from_context_sub(group, &best.rep))
}

/// Expands classes into the full list of subgroups.
pub fn expand_classes(classes: &[SubgroupClass]) -> Vec<PermGroup> {
    classes.iter().flat_map(|c| c.members()).collect()
}

/// Fuses an explicit list of subgroups of `group` into conjugacy classes.
pub fn fuse_into_classes(group: &PermGroup, subs: &[PermGroup]) -> Result<Vec<SubgroupClass>> {
    let ctx = group.context()?;
    let zdata = ZuppoData::build(&ctx);
    let mut engine_subs = Vec::with_capacity(subs.len());
    for sub in subs {
        if !group.has_subgroup(sub)? {
            return Err(GroupError::NotASubgroup);
        }
        let elems = ctx.member_ids(&sub.elements()?)?;
        engine_subs.push(ctx.sub_from_elems(elems));
    }
    engine_subs.sort_by(|a, b| {
        a.order
            .cmp(&b.order)
            .then_with(|| a.elems.cmp_by_first_member(&b.elems))
    });
    let mut recs: Vec<ClassRec> = Vec::new();
    let mut seen: HashSet<BitSet> = HashSet::new();
    for sub in &engine_subs {
        if seen.contains(&sub.elems) {
            continue;
        }
        let rec = ctx.classify(sub);
        for member in &rec.members {
            seen.insert(member.clone());
        }
        recs.push(rec);
    }
    let recs = sort_classes_canonically(&zdata, recs);
    Ok(recs
        .iter()
        .map(|rec| SubgroupClass::from_rec(group, rec))
        .collect())
}
