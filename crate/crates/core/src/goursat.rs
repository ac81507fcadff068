//! Subgroups of a direct product `G × H` from the subgroup lists of the
//! factors, by the subdirect-product classification: a subgroup `S` is
//! determined by its projections `A ≤ G`, `B ≤ H`, the normal subgroups
//! `D ◁ A` (image of `ker β`), `E ◁ B` (image of `ker α`), and an
//! isomorphism `χ: A/D → B/E`; then `S = {(a,b) : χ(aD) = bE}` with
//! `|S| = |A|·|E| = |D|·|B|`.

use std::collections::{HashMap, HashSet};

use crate::bitset::BitSet;
use crate::context::{GroupContext, Sub};
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::quotient::{quotient_small_group, SmallGroup};

/// `G × H` realized on the disjoint union of the factors' points, with
/// embeddings and projections.
pub struct DirectProduct {
    group: PermGroup,
    left_degree: usize,
    right_degree: usize,
}

impl DirectProduct {
    pub fn new(g: &PermGroup, h: &PermGroup) -> Result<DirectProduct> {
        let dl = g.degree();
        let dr = h.degree();
        let mut gens = Vec::new();
        for p in g.generators() {
            gens.push(embed(p, dl + dr, 0));
        }
        for p in h.generators() {
            gens.push(embed(p, dl + dr, dl));
        }
        Ok(DirectProduct {
            group: PermGroup::new(dl + dr, gens)?,
            left_degree: dl,
            right_degree: dr,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn left_degree(&self) -> usize {
        self.left_degree
    }

    pub fn right_degree(&self) -> usize {
        self.right_degree
    }

    pub fn embed_left(&self, p: &Permutation) -> Result<Permutation> {
        if p.degree() != self.left_degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.left_degree,
                found: p.degree(),
            });
        }
        Ok(embed(p, self.left_degree + self.right_degree, 0))
    }

    pub fn embed_right(&self, p: &Permutation) -> Result<Permutation> {
        if p.degree() != self.right_degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.right_degree,
                found: p.degree(),
            });
        }
        Ok(embed(
            p,
            self.left_degree + self.right_degree,
            self.left_degree,
        ))
    }

    /// The pair `(a, b)` as one permutation of the product domain.
    pub fn pair(&self, a: &Permutation, b: &Permutation) -> Result<Permutation> {
        Ok(self.embed_left(a)?.mul(&self.embed_right(b)?))
    }

    pub fn project_left(&self, p: &Permutation) -> Result<Permutation> {
        self.project(p, 0, self.left_degree)
    }

    pub fn project_right(&self, p: &Permutation) -> Result<Permutation> {
        self.project(p, self.left_degree, self.right_degree)
    }

    fn project(&self, p: &Permutation, offset: usize, degree: usize) -> Result<Permutation> {
        if p.degree() != self.left_degree + self.right_degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.left_degree + self.right_degree,
                found: p.degree(),
            });
        }
        let mut images = Vec::with_capacity(degree);
        for point in offset..offset + degree {
            let image = p.apply(point as u32) as usize;
            if image < offset || image >= offset + degree {
                return Err(GroupError::InvalidPermutation(
                    "permutation does not preserve the factor blocks".into(),
                ));
            }
            images.push((image - offset) as u32);
        }
        Permutation::from_images(images)
    }
}

fn embed(p: &Permutation, degree: usize, offset: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for point in 0..p.degree() {
        images[point + offset] = p.apply(point as u32) + offset as u32;
    }
    Permutation::from_images(images).unwrap()
}

/// All isomorphisms between two desk-scale groups, as table-group element
/// maps (empty when the groups are not isomorphic).
pub fn isomorphisms(a: &PermGroup, b: &PermGroup) -> Result<Vec<Vec<u16>>> {
    let qa = SmallGroup::from_perm_group(a)?;
    let qb = SmallGroup::from_perm_group(b)?;
    Ok(qa.isomorphisms(&qb))
}

struct FactorSide {
    subs: Vec<Sub>,
    /// For each subgroup index, the indices of its normal subgroups.
    normals: Vec<Vec<usize>>,
}

fn prepare_side(ctx: &GroupContext, subs: &[PermGroup]) -> Result<FactorSide> {
    let mut engine: Vec<Sub> = Vec::with_capacity(subs.len());
    for sub in subs {
        let elems = ctx.member_ids(&sub.elements()?)?;
        engine.push(ctx.sub_from_elems(elems));
    }
    let mut normals: Vec<Vec<usize>> = Vec::with_capacity(engine.len());
    for a in &engine {
        let mut inside = Vec::new();
        'candidate: for (j, d) in engine.iter().enumerate() {
            if a.order % d.order != 0 || !d.elems.is_subset(&a.elems) {
                continue;
            }
            for &g in &a.gens {
                for &x in &d.gens {
                    if !d.elems.contains(ctx.conj(x, g)) {
                        continue 'candidate;
                    }
                }
            }
            inside.push(j);
        }
        normals.push(inside);
    }
    Ok(FactorSide {
        subs: engine,
        normals,
    })
}

/// The complete list of subgroups of `G × H`, given the complete subgroup
/// lists of `G` and `H`, deduplicated by element set and ordered by
/// (order, leading element).
pub fn goursat_subgroups(
    g: &PermGroup,
    h: &PermGroup,
    subs_g: &[PermGroup],
    subs_h: &[PermGroup],
) -> Result<Vec<PermGroup>> {
    let product = DirectProduct::new(g, h)?;
    let pctx = product.group().context()?;
    let gctx = g.context()?;
    let hctx = h.context()?;
    let left = prepare_side(&gctx, subs_g)?;
    let right = prepare_side(&hctx, subs_h)?;

    // quotient tables per (subgroup, normal subgroup) pair, built lazily
    let mut quotients_g: HashMap<(usize, usize), (SmallGroup, Vec<u16>)> = HashMap::new();
    let mut quotients_h: HashMap<(usize, usize), (SmallGroup, Vec<u16>)> = HashMap::new();

    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut found: Vec<(BitSet, u64)> = Vec::new();

    for (ai, a) in left.subs.iter().enumerate() {
        for &di in &left.normals[ai] {
            let d = &left.subs[di];
            let q_order = a.order / d.order;
            let (qg, coset_g) = quotients_g
                .entry((ai, di))
                .or_insert_with(|| quotient_small_group(&gctx, a, d));
            let qg = qg.clone();
            let coset_g = coset_g.clone();
            for (bi, b) in right.subs.iter().enumerate() {
                for &ei in &right.normals[bi] {
                    let e = &right.subs[ei];
                    if b.order / e.order != q_order {
                        continue;
                    }
                    let (qh, coset_h) = quotients_h
                        .entry((bi, ei))
                        .or_insert_with(|| quotient_small_group(&hctx, b, e));
                    // members of b bucketed by coset of e
                    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); qh.order()];
                    for x in b.elems.iter() {
                        buckets[coset_h[x as usize] as usize].push(x);
                    }
                    for chi in qg.isomorphisms(qh) {
                        let mut elems = pctx.empty_set();
                        for x in a.elems.iter() {
                            let qa = coset_g[x as usize];
                            let qb = chi[qa as usize];
                            let xp = &gctx.elements[x as usize];
                            for &y in &buckets[qb as usize] {
                                let pair = product
                                    .pair(xp, &hctx.elements[y as usize])
                                    .expect("factor degrees match");
                                elems.insert(pctx.id_of(&pair)?);
                            }
                        }
                        debug_assert_eq!(elems.len() as u64, a.order * e.order);
                        if seen.insert(elems.clone()) {
                            let order = elems.len() as u64;
                            found.push((elems, order));
                        }
                    }
                }
            }
        }
    }
    found.sort_by(|x, y| {
        x.1.cmp(&y.1)
            .then_with(|| x.0.cmp_by_first_member(&y.0))
    });
    Ok(found
        .into_iter()
        .map(|(elems, _)| {
            let sub = pctx.sub_from_elems(elems);
            PermGroup::from_context_sub(product.group(), &sub)
        })
        .collect())
}
