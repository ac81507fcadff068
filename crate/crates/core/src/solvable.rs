//! Subgroup enumeration for solvable groups: lift classes through an
//! elementary-abelian normal series, layer by layer.
//!
//! For each known class representative `A` (a full preimage above the current
//! layer `N/M`), the candidates for `B = S ∩ N` are the `A`-invariant
//! subspaces of `N/M`, and the subgroups `S` with `S·N = A`, `S ∩ N = B` are
//! the complements to `N/B` in `A/B`, found by bounded backtracking over
//! coset lifts of a generating set of `A/N`.

use std::collections::{HashMap, HashSet};

use crate::bitset::BitSet;
use crate::context::{ClassRec, GroupContext, Sub};
use crate::error::{GroupError, Result};
use crate::gfp::{self, Matrix, Subspace, Vector};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::quotient::quotient_small_group;
use crate::subgroups::{sort_classes_canonically, LatticeFilter, SubgroupClass};
use crate::zuppos::ZuppoData;

/// Bound on the complement backtracking space `[N:B]^{#gens of A/N}`.
pub const COMPLEMENT_SEARCH_BOUND: u64 = 1 << 20;

/// A normal series `G = R_0 > R_1 > … > R_k = 1` with every factor
/// `R_i/R_{i+1}` elementary abelian of order `primes[i]^ranks[i]`.
#[derive(Clone, Debug)]
pub struct ElementaryAbelianSeries {
    pub terms: Vec<PermGroup>,
    pub primes: Vec<u64>,
    pub ranks: Vec<u32>,
}

impl ElementaryAbelianSeries {
    pub fn layers(&self) -> usize {
        self.primes.len()
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return p;
        }
        p += 1;
    }
    n
}

/// Order of `x` modulo the subgroup `m`: the least `k > 0` with `x^k ∈ m`.
fn quotient_order(ctx: &GroupContext, x: u32, m: &BitSet) -> u64 {
    let mut y = x;
    let mut k = 1;
    while !m.contains(y) {
        y = ctx.mul(y, x);
        k += 1;
    }
    k
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Derived series refined so that every factor is elementary abelian: each
/// abelian factor `C/L` is peeled by `⟨x^p : x ∈ C⟩ · O_{p'}(C/L)` for the
/// smallest prime `p` dividing `[C:L]`. All constructions are invariant under
/// ambient conjugation, so every term is normal in the whole group.
pub(crate) fn series_subs(ctx: &GroupContext) -> Result<Vec<Sub>> {
    let mut derived = vec![ctx.full_sub()];
    while derived.last().unwrap().order > 1 {
        let next = ctx.derived_sub(derived.last().unwrap());
        if next.order == derived.last().unwrap().order {
            return Err(GroupError::NotSolvable);
        }
        derived.push(next);
    }
    let mut terms: Vec<Sub> = vec![ctx.full_sub()];
    for w in derived.windows(2) {
        let (upper, lower) = (&w[0], &w[1]);
        let mut current = upper.clone();
        while current.order > lower.order {
            let index = current.order / lower.order;
            let p = smallest_prime_factor(index);
            let mut seeds: Vec<u32> = lower.gens.clone();
            for x in current.elems.iter() {
                let qord = quotient_order(ctx, x, &lower.elems);
                if gcd(qord, p) == 1 {
                    seeds.push(x);
                } else {
                    let mut xp = x;
                    for _ in 1..p {
                        xp = ctx.mul(xp, x);
                    }
                    seeds.push(xp);
                }
            }
            let next = ctx.closure(&seeds);
            debug_assert!(next.order < current.order);
            debug_assert_eq!(current.order % next.order, 0);
            terms.push(next.clone());
            current = next;
        }
    }
    Ok(terms)
}

/// The elementary-abelian normal series of a solvable group.
pub fn elementary_abelian_series(group: &PermGroup) -> Result<ElementaryAbelianSeries> {
    let ctx = group.context()?;
    let subs = series_subs(&ctx)?;
    let mut primes = Vec::new();
    let mut ranks = Vec::new();
    for w in subs.windows(2) {
        let index = w[0].order / w[1].order;
        let p = smallest_prime_factor(index);
        let mut rank = 0;
        let mut m = index;
        while m > 1 {
            debug_assert_eq!(m % p, 0);
            m /= p;
            rank += 1;
        }
        primes.push(p);
        ranks.push(rank);
    }
    Ok(ElementaryAbelianSeries {
        terms: subs
            .iter()
            .map(|s| PermGroup::from_context_sub(group, s))
            .collect(),
        primes,
        ranks,
    })
}

/// One elementary-abelian layer `N/M` as a GF(p) module under the
/// conjugation action of a group `A`.
#[derive(Clone, Debug)]
pub struct LayerModule {
    pub prime: u64,
    pub rank: usize,
    /// Coset representatives of `M` in `N` spanning the layer.
    pub basis: Vec<Permutation>,
    /// One action matrix per generator of `A`, acting on row vectors.
    pub matrices: Vec<Matrix>,
}

pub(crate) struct LayerModuleInt {
    pub prime: u64,
    pub rank: usize,
    pub basis_ids: Vec<u32>,
    pub matrices: Vec<Matrix>,
    /// Element id of every member of each coset of `M` in `N`.
    pub coset_members: Vec<Vec<u32>>,
    /// Coordinate vector of each coset.
    pub vec_to_coset: HashMap<Vector, u16>,
    pub m_elems: BitSet,
    pub m_gens: Vec<u32>,
}

pub(crate) fn layer_module_int(
    ctx: &GroupContext,
    a: &Sub,
    n: &Sub,
    m: &Sub,
) -> Result<LayerModuleInt> {
    if !m.elems.is_subset(&n.elems) || !n.elems.is_subset(&a.elems) {
        return Err(GroupError::NotASubgroup);
    }
    for sub in [n, m] {
        for &g in &a.gens {
            for &x in &sub.gens {
                if !sub.elems.contains(ctx.conj(x, g)) {
                    return Err(GroupError::NotNormal);
                }
            }
        }
    }
    let index = n.order / m.order;
    let p = smallest_prime_factor(index);
    // elementary abelian: exponent p and abelian modulo m
    {
        let mut check = index;
        while check.is_multiple_of(p) {
            check /= p;
        }
        if check != 1 {
            return Err(GroupError::NotElementaryAbelian);
        }
    }
    for x in n.elems.iter() {
        let mut xp = x;
        for _ in 1..p {
            xp = ctx.mul(xp, x);
        }
        if !m.elems.contains(xp) {
            return Err(GroupError::NotElementaryAbelian);
        }
        for y in n.gens.iter() {
            let comm = ctx.mul(
                ctx.mul(ctx.mul(ctx.inv(x), ctx.inv(*y)), x),
                *y,
            );
            if !m.elems.contains(comm) {
                return Err(GroupError::NotElementaryAbelian);
            }
        }
    }
    // cosets of m in n, labelled by sweep order
    let mut coset_of: HashMap<u32, u16> = HashMap::new();
    let mut coset_members: Vec<Vec<u32>> = Vec::new();
    for x in n.elems.iter() {
        if coset_of.contains_key(&x) {
            continue;
        }
        let idx = coset_members.len() as u16;
        let mut members: Vec<u32> = m.elems.iter().map(|d| ctx.mul(d, x)).collect();
        members.sort_unstable();
        for &e in &members {
            coset_of.insert(e, idx);
        }
        coset_members.push(members);
    }
    // greedy basis of the layer
    let mut basis_ids: Vec<u32> = Vec::new();
    let mut span = ctx.closure(&m.gens);
    for x in n.elems.iter() {
        if span.order == n.order {
            break;
        }
        if span.elems.contains(x) {
            continue;
        }
        basis_ids.push(x);
        let mut seeds = m.gens.clone();
        seeds.extend_from_slice(&basis_ids);
        span = ctx.closure(&seeds);
    }
    let rank = basis_ids.len();
    debug_assert_eq!((p as u128).pow(rank as u32), index as u128);
    // coordinates of every coset by odometer over basis exponents
    let mut vec_to_coset: HashMap<Vector, u16> = HashMap::new();
    let mut coords_of_coset: Vec<Vector> = vec![Vec::new(); coset_members.len()];
    let mut exps = vec![0u8; rank];
    loop {
        let mut e = 0u32;
        for (i, &c) in exps.iter().enumerate() {
            for _ in 0..c {
                e = ctx.mul(e, basis_ids[i]);
            }
        }
        let coset = coset_of[&e];
        vec_to_coset.insert(exps.clone(), coset);
        coords_of_coset[coset as usize] = exps.clone();
        let mut i = 0;
        loop {
            if i == rank {
                // all p^rank coordinate vectors visited
                debug_assert_eq!(vec_to_coset.len(), coset_members.len());
                let matrices: Vec<Matrix> = a
                    .gens
                    .iter()
                    .map(|&g| {
                        basis_ids
                            .iter()
                            .map(|&b| {
                                let image = ctx.conj(b, g);
                                coords_of_coset[coset_of[&image] as usize].clone()
                            })
                            .collect()
                    })
                    .collect();
                return Ok(LayerModuleInt {
                    prime: p,
                    rank,
                    basis_ids,
                    matrices,
                    coset_members,
                    vec_to_coset,
                    m_elems: m.elems.clone(),
                    m_gens: m.gens.clone(),
                });
            }
            exps[i] += 1;
            if (exps[i] as u64) < p {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// The GF(p) module structure of the layer `N/M` under conjugation by `A`.
pub fn layer_module(a: &PermGroup, n: &PermGroup, m: &PermGroup) -> Result<LayerModule> {
    let ctx = a.context()?;
    let a_sub = ctx.full_sub();
    let n_sub = sub_of(&ctx, n)?;
    let m_sub = sub_of(&ctx, m)?;
    let module = layer_module_int(&ctx, &a_sub, &n_sub, &m_sub)?;
    Ok(LayerModule {
        prime: module.prime,
        rank: module.rank,
        basis: module
            .basis_ids
            .iter()
            .map(|&id| ctx.elements[id as usize].clone())
            .collect(),
        matrices: module.matrices,
    })
}

fn sub_of(ctx: &GroupContext, group: &PermGroup) -> Result<Sub> {
    let elems = ctx.member_ids(&group.elements()?)?;
    Ok(ctx.sub_from_elems(elems))
}

/// All `A`-invariant subspaces of the layer, including 0 and the full space.
pub fn submodules(module: &LayerModule) -> Vec<Subspace> {
    gfp::all_submodules(&module.matrices, module.rank, module.prime)
}

/// Full preimage of a subspace of the layer, as a subgroup.
pub(crate) fn subspace_preimage(
    ctx: &GroupContext,
    module: &LayerModuleInt,
    space: &Subspace,
) -> Sub {
    let mut elems = module.m_elems.clone();
    let mut gens = module.m_gens.clone();
    for v in space.vectors(module.prime) {
        let coset = module.vec_to_coset[&v];
        for &e in &module.coset_members[coset as usize] {
            elems.insert(e);
        }
        let mut rep = 0u32;
        for (i, &c) in v.iter().enumerate() {
            for _ in 0..c {
                rep = ctx.mul(rep, module.basis_ids[i]);
            }
        }
        if rep != 0 && !gens.contains(&rep) {
            gens.push(rep);
        }
    }
    let order = elems.len() as u64;
    Sub { elems, gens, order }
}

/// Complements to `N/B` in `A/B`, i.e. the subgroups `S ≤ A` with
/// `S ∩ N = B` and `S·N = A`, up to conjugation by `N`.
pub(crate) fn complements_int(
    ctx: &GroupContext,
    a: &Sub,
    n: &Sub,
    b: &Sub,
) -> Result<Vec<Sub>> {
    // B must be invariant under A (it is normal in ⟨S, N⟩ for every result)
    for &g in &a.gens {
        for &x in &b.gens {
            if !b.elems.contains(ctx.conj(x, g)) {
                return Err(GroupError::NotNormal);
            }
        }
    }
    let (qan, _) = quotient_small_group(ctx, a, n);
    let gen_seq = qan.generating_sequence();
    let lifted: Vec<u32> = gen_seq
        .iter()
        .map(|&g| qan.rep_ids[g as usize])
        .collect();
    // coset representatives of B in N
    let mut visited = ctx.empty_set();
    let mut cosreps: Vec<u32> = Vec::new();
    for x in n.elems.iter() {
        if visited.contains(x) {
            continue;
        }
        cosreps.push(x);
        for bb in b.elems.iter() {
            visited.insert(ctx.mul(bb, x));
        }
    }
    let q = cosreps.len() as u64;
    let k = lifted.len();
    let space = (q as u128).pow(k as u32);
    if space > COMPLEMENT_SEARCH_BOUND as u128 {
        return Err(GroupError::SearchSpaceExceeded {
            size: space,
            bound: COMPLEMENT_SEARCH_BOUND,
        });
    }
    let target_order = a.order / n.order * b.order;
    let mut valid: Vec<Sub> = Vec::new();
    let mut assignment = vec![0usize; k];
    loop {
        let mut seeds = b.gens.clone();
        for (i, &c) in assignment.iter().enumerate() {
            seeds.push(ctx.mul(lifted[i], cosreps[c]));
        }
        let s = ctx.closure(&seeds);
        if s.order == target_order && s.elems.intersection(&n.elems) == b.elems {
            valid.push(s);
        }
        // odometer
        let mut i = 0;
        loop {
            if i == k {
                // fuse up to N-conjugacy
                let n_gens = ctx.minimal_gens(&n.elems);
                let tables: Vec<Vec<u32>> =
                    n_gens.iter().map(|&g| ctx.conj_table(g)).collect();
                let mut seen: HashSet<BitSet> = HashSet::new();
                let mut out: Vec<Sub> = Vec::new();
                for s in valid {
                    if seen.contains(&s.elems) {
                        continue;
                    }
                    let mut orbit = vec![s.elems.clone()];
                    seen.insert(s.elems.clone());
                    let mut head = 0;
                    while head < orbit.len() {
                        let set = orbit[head].clone();
                        head += 1;
                        for table in &tables {
                            let image = ctx.conj_set(&set, table);
                            if seen.insert(image.clone()) {
                                orbit.push(image);
                            }
                        }
                    }
                    out.push(s);
                }
                return Ok(out);
            }
            assignment[i] += 1;
            if (assignment[i] as u64) < q {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// Representatives of the complements to `N/B` in `A/B` (full preimages:
/// every result `S` has `S ∩ N = B` and `S·N = A`), up to `N`-conjugacy.
pub fn complements_in_layer(
    a: &PermGroup,
    n: &PermGroup,
    b: &PermGroup,
) -> Result<Vec<PermGroup>> {
    let ctx = a.context()?;
    let a_sub = ctx.full_sub();
    let n_sub = sub_of(&ctx, n)?;
    let b_sub = sub_of(&ctx, b)?;
    if !b_sub.elems.is_subset(&n_sub.elems) {
        return Err(GroupError::NotASubgroup);
    }
    let comps = complements_int(&ctx, &a_sub, &n_sub, &b_sub)?;
    Ok(comps
        .iter()
        .map(|s| PermGroup::from_context_sub(a, s))
        .collect())
}

/// All subgroups of a solvable group passing the filter, up to conjugacy, by
/// layer-wise lifting. Agrees with the cyclic-extension enumeration.
pub fn subgroups_solvable(
    group: &PermGroup,
    filter: &LatticeFilter,
) -> Result<Vec<SubgroupClass>> {
    filter.validate()?;
    let ctx = group.context()?;
    let series = series_subs(&ctx)?;
    let mut current: Vec<Sub> = vec![ctx.full_sub()];
    for w in series.windows(2) {
        let (n, m) = (&w[0], &w[1]);
        let mut lifted: Vec<Sub> = Vec::new();
        for a in &current {
            let module = layer_module_int(&ctx, a, n, m)?;
            for space in gfp::all_submodules(&module.matrices, module.rank, module.prime) {
                let b = subspace_preimage(&ctx, &module, &space);
                lifted.extend(complements_int(&ctx, a, n, &b)?);
            }
        }
        lifted.sort_by(|x, y| {
            x.order
                .cmp(&y.order)
                .then_with(|| x.elems.cmp_by_first_member(&y.elems))
        });
        // fuse conjugates under the whole group, keeping one representative each
        let mut seen: HashSet<BitSet> = HashSet::new();
        let mut reps: Vec<Sub> = Vec::new();
        for sub in lifted {
            if seen.contains(&sub.elems) {
                continue;
            }
            let (orbit, _) = ctx.subgroup_orbit(&sub);
            for (set, _) in orbit {
                seen.insert(set);
            }
            reps.push(sub);
        }
        current = reps;
    }
    let zdata = ZuppoData::build(&ctx);
    let recs: Vec<ClassRec> = current
        .iter()
        .filter(|sub| filter.passes(sub.order))
        .map(|sub| ctx.classify(sub))
        .collect();
    let recs = sort_classes_canonically(&zdata, recs);
    Ok(recs
        .iter()
        .map(|rec| SubgroupClass::from_rec(group, rec))
        .collect())
}
