//! The incidence structure over computed subgroup classes: covering edges
//! (maximal inclusions), maximal subgroup classes, k-step-maximal layers,
//! and intermediate subgroups.

use crate::bitset::BitSet;
use crate::context::GroupContext;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::subgroups::SubgroupClass;

/// Default bound on the subgroup count for member-expanded emission; above
/// it, exporters fall back to the class-level quotient graph.
pub const DEFAULT_MEMBER_LIMIT: u64 = 300;

/// One covering pair between expanded subgroups, addressed as
/// (class index, member index), both 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeEdge {
    pub lower: (usize, usize),
    pub upper: (usize, usize),
}

/// The subgroup lattice of a group: canonical classes plus the covering
/// relation over all expanded members.
pub struct SubgroupLattice {
    group: PermGroup,
    classes: Vec<SubgroupClass>,
    edges: Vec<LatticeEdge>,
    member_sets: Vec<Vec<BitSet>>,
    ctx: std::sync::Arc<GroupContext>,
    top: usize,
    member_count: u64,
    member_limit: u64,
    complete: bool,
}

impl SubgroupLattice {
    /// Builds the lattice over a complete class list, validating
    /// completeness: the whole group and the trivial subgroup must be
    /// present, and every non-extreme member must have covers both ways.
    pub fn build(group: &PermGroup, classes: Vec<SubgroupClass>) -> Result<SubgroupLattice> {
        SubgroupLattice::build_inner(group, classes, true)
    }

    /// Builds the covering structure of a filtered (possibly incomplete)
    /// family, skipping the completeness validation.
    pub fn build_partial(
        group: &PermGroup,
        classes: Vec<SubgroupClass>,
    ) -> Result<SubgroupLattice> {
        SubgroupLattice::build_inner(group, classes, false)
    }

    fn build_inner(
        group: &PermGroup,
        classes: Vec<SubgroupClass>,
        check_complete: bool,
    ) -> Result<SubgroupLattice> {
        let ctx = group.context()?;
        let mut member_sets: Vec<Vec<BitSet>> = Vec::with_capacity(classes.len());
        for class in &classes {
            let rep_set = ctx.member_ids(&class.representative().elements()?)?;
            let mut sets = Vec::with_capacity(class.len());
            for t in class.transversal() {
                let tid = ctx.id_of(t)?;
                if tid == 0 {
                    sets.push(rep_set.clone());
                } else {
                    let table = ctx.conj_table(tid);
                    sets.push(ctx.conj_set(&rep_set, &table));
                }
            }
            member_sets.push(sets);
        }
        let flat: Vec<(usize, usize)> = classes
            .iter()
            .enumerate()
            .flat_map(|(c, class)| (0..class.len()).map(move |m| (c, m)))
            .collect();
        let order_of = |i: usize| classes[flat[i].0].order();
        let set_of = |i: usize| &member_sets[flat[i].0][flat[i].1];

        // all strict containments, then the covering pairs among them
        let n = flat.len();
        let mut contained: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (vi, inside) in contained.iter_mut().enumerate() {
            for ui in 0..n {
                if ui == vi {
                    continue;
                }
                let (ou, ov) = (order_of(ui), order_of(vi));
                if ou >= ov || !ov.is_multiple_of(ou) {
                    continue;
                }
                if set_of(ui).is_subset(set_of(vi)) {
                    inside.push(ui);
                }
            }
        }
        let mut edges: Vec<LatticeEdge> = Vec::new();
        for vi in 0..n {
            for &ui in &contained[vi] {
                let ou = order_of(ui);
                let covered = !contained[vi].iter().any(|&wi| {
                    order_of(wi) > ou && set_of(ui).is_subset(set_of(wi))
                });
                if covered {
                    edges.push(LatticeEdge {
                        lower: flat[ui],
                        upper: flat[vi],
                    });
                }
            }
        }
        edges.sort_by_key(|e| (e.lower, e.upper));

        let group_order = group.order()?;
        let top = match classes.iter().position(|c| c.order() == group_order) {
            Some(i) => i,
            None if check_complete => {
                return Err(GroupError::IncompleteClasses(
                    "the whole group is missing".into(),
                ));
            }
            // partial mode: anchor the walk at the largest class present
            None => classes
                .iter()
                .enumerate()
                .max_by_key(|(_, c)| c.order())
                .map(|(i, _)| i)
                .ok_or_else(|| GroupError::IncompleteClasses("no classes given".into()))?,
        };
        if check_complete {
            if !classes.iter().any(|c| c.order() == 1) {
                return Err(GroupError::IncompleteClasses(
                    "the trivial subgroup is missing".into(),
                ));
            }
            let mut has_upper = vec![false; n];
            let mut has_lower = vec![false; n];
            let index_of = |cm: (usize, usize)| flat.iter().position(|&x| x == cm).unwrap();
            for e in &edges {
                has_upper[index_of(e.lower)] = true;
                has_lower[index_of(e.upper)] = true;
            }
            for i in 0..n {
                if flat[i].0 != top && !has_upper[i] {
                    return Err(GroupError::IncompleteClasses(format!(
                        "subgroup of order {} has no upper cover",
                        order_of(i)
                    )));
                }
                if order_of(i) != 1 && !has_lower[i] {
                    return Err(GroupError::IncompleteClasses(format!(
                        "subgroup of order {} has no lower cover",
                        order_of(i)
                    )));
                }
            }
        }
        let member_count = flat.len() as u64;
        Ok(SubgroupLattice {
            group: group.clone(),
            classes,
            edges,
            member_sets,
            ctx,
            top,
            member_count,
            member_limit: DEFAULT_MEMBER_LIMIT,
            complete: check_complete,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn edges(&self) -> &[LatticeEdge] {
        &self.edges
    }

    pub fn member_count(&self) -> u64 {
        self.member_count
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Index of the whole-group class.
    pub fn top_class(&self) -> usize {
        self.top
    }

    pub fn is_normal_class(&self, index: usize) -> bool {
        self.classes[index].is_normal()
    }

    /// Bound for member-expanded emission.
    pub fn member_limit(&self) -> u64 {
        self.member_limit
    }

    pub fn set_member_limit(&mut self, limit: u64) {
        self.member_limit = limit;
    }

    /// Whether exporters should expand members (below the limit) or fall
    /// back to the class-level quotient graph.
    pub fn expanded_mode(&self) -> bool {
        self.member_count <= self.member_limit
    }

    /// Class-level quotient of the covering relation, deduplicated.
    pub fn class_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| (e.lower.0, e.upper.0))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The member subgroup at (class, member).
    pub fn member_group(&self, class: usize, member: usize) -> PermGroup {
        let c = &self.classes[class];
        let t = &c.transversal()[member];
        let gens: Vec<crate::perm::Permutation> = c
            .representative()
            .generators()
            .iter()
            .map(|g| g.conjugate(t))
            .collect();
        PermGroup::new(self.group.degree(), gens).unwrap()
    }

    /// Classes whose members are covered only by the whole group.
    pub fn maximal_class_indices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter(|e| e.upper.0 == self.top && e.lower.0 != self.top)
            .map(|e| e.lower.0)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Representatives of the classes of maximal subgroups.
    pub fn maximal_subgroup_classes(&self) -> Vec<SubgroupClass> {
        self.maximal_class_indices()
            .into_iter()
            .map(|i| self.classes[i].clone())
            .collect()
    }

    /// Covering distance of every class below the top (top = 0), or `None`
    /// for classes unreachable downward from the top (cannot happen in a
    /// complete lattice).
    fn class_distances(&self) -> Vec<Option<u32>> {
        let class_edges = self.class_edges();
        let mut dist: Vec<Option<u32>> = vec![None; self.classes.len()];
        dist[self.top] = Some(0);
        loop {
            let mut changed = false;
            for &(lo, up) in &class_edges {
                if let Some(d) = dist[up] {
                    let candidate = d + 1;
                    if dist[lo].is_none_or(|old| candidate < old) {
                        dist[lo] = Some(candidate);
                        changed = true;
                    }
                }
            }
            if !changed {
                return dist;
            }
        }
    }

    /// Length of the longest covering chain from the top down to the trivial
    /// subgroup (the lattice height).
    pub fn height(&self) -> u32 {
        // longest chain: iterate the dual recurrence to a fixpoint
        let class_edges = self.class_edges();
        let mut depth: Vec<u32> = vec![0; self.classes.len()];
        loop {
            let mut changed = false;
            for &(lo, up) in &class_edges {
                if depth[up] + 1 > depth[lo] {
                    depth[lo] = depth[up] + 1;
                    changed = true;
                }
            }
            if !changed {
                return depth.iter().copied().max().unwrap_or(0);
            }
        }
    }

    /// Classes at covering distance 1..=k below the whole group (so `k = 1`
    /// yields exactly the maximal classes), optionally restricted to index at
    /// most `index_bound`. For `k = 0` the result is the whole-group class.
    pub fn low_layer(&self, k: u32, index_bound: Option<u64>) -> Vec<usize> {
        if k == 0 {
            return vec![self.top];
        }
        let group_order = self.classes[self.top].order();
        let dist = self.class_distances();
        (0..self.classes.len())
            .filter(|&c| match dist[c] {
                Some(d) => d >= 1 && d <= k,
                None => false,
            })
            .filter(|&c| {
                index_bound.is_none_or(|bound| {
                    group_order / self.classes[c].order() <= bound
                })
            })
            .collect()
    }

    /// Every subgroup strictly between `u` and the whole group, as concrete
    /// subgroups: descend from the top, at each found overgroup taking the
    /// covered members (conjugates of its maximal subgroups) containing `u`.
    pub fn intermediate_subgroups(&self, u: &PermGroup) -> Result<Vec<PermGroup>> {
        if !self.group.has_subgroup(u)? {
            return Err(GroupError::NotASubgroup);
        }
        let u_set = self.ctx.member_ids(&u.elements()?)?;
        if u_set.len() as u64 == self.group.order()? {
            return Ok(Vec::new());
        }
        // covered members per member
        let mut below: std::collections::HashMap<(usize, usize), Vec<(usize, usize)>> =
            std::collections::HashMap::new();
        for e in &self.edges {
            below.entry(e.upper).or_default().push(e.lower);
        }
        let start = (self.top, 0);
        let mut visited: std::collections::HashSet<(usize, usize)> =
            [start].into_iter().collect();
        let mut frontier = vec![start];
        let mut found: Vec<(usize, usize)> = Vec::new();
        while let Some(w) = frontier.pop() {
            let Some(maxes) = below.get(&w) else {
                continue;
            };
            for &m in maxes {
                if visited.contains(&m) {
                    continue;
                }
                let m_set = &self.member_sets[m.0][m.1];
                if !u_set.is_subset(m_set) {
                    continue;
                }
                visited.insert(m);
                if *m_set != u_set {
                    found.push(m);
                }
                frontier.push(m);
            }
        }
        found.sort_by(|&a, &b| {
            self.classes[a.0]
                .order()
                .cmp(&self.classes[b.0].order())
                .then_with(|| {
                    self.member_sets[a.0][a.1].cmp_by_first_member(&self.member_sets[b.0][b.1])
                })
        });
        Ok(found
            .into_iter()
            .map(|(c, m)| self.member_group(c, m))
            .collect())
    }
}
