//! Small groups as multiplication tables, used to represent quotients `A/D`
//! by coset-representative tables, plus isomorphism enumeration by
//! generator-image backtracking.

use crate::context::{GroupContext, Sub};
use crate::error::{GroupError, Result};
use crate::group::PermGroup;

/// A finite group of desk-scale order given by its multiplication table.
/// Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct SmallGroup {
    n: usize,
    mul: Vec<u16>,
    orders: Vec<u16>,
    class_sizes: Vec<u16>,
    /// Ambient element ids of the coset representatives, when the group was
    /// built as a quotient; empty otherwise.
    pub(crate) rep_ids: Vec<u32>,
}

impl SmallGroup {
    pub(crate) fn from_mul_table(n: usize, mul: Vec<u16>, rep_ids: Vec<u32>) -> Self {
        debug_assert_eq!(mul.len(), n * n);
        for j in 0..n {
            debug_assert_eq!(mul[j] as usize, j, "element 0 must be the identity");
            debug_assert_eq!(mul[j * n] as usize, j);
        }
        let mut orders = vec![0u16; n];
        for e in 0..n {
            // invariant at the check: x = e^k; exits at the first k with e^k = 1
            let mut x = e as u16;
            let mut k: u16 = 1;
            while x != 0 {
                x = mul[x as usize * n + e];
                k += 1;
            }
            orders[e] = k;
        }
        // conjugacy class sizes by orbit sweep
        let mut inv = vec![0u16; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as u16;
                }
            }
        }
        let mut class_sizes = vec![0u16; n];
        let mut seen = vec![false; n];
        for e in 0..n {
            if seen[e] {
                continue;
            }
            let mut orbit = vec![e as u16];
            seen[e] = true;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for g in 0..n as u16 {
                    let y = mul[mul[inv[g as usize] as usize * n + x as usize] as usize * n
                        + g as usize];
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        orbit.push(y);
                    }
                }
            }
            for &x in &orbit {
                class_sizes[x as usize] = orbit.len() as u16;
            }
        }
        SmallGroup {
            n,
            mul,
            orders,
            class_sizes,
            rep_ids,
        }
    }

    /// Table form of a permutation group (order at most `u16::MAX`).
    pub fn from_perm_group(group: &PermGroup) -> Result<Self> {
        let ctx = group.context()?;
        if ctx.order > u16::MAX as u64 {
            return Err(GroupError::CapExceeded {
                order: ctx.order as u128,
                cap: u16::MAX as u64,
            });
        }
        let n = ctx.order as usize;
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = ctx.mul(a as u32, b as u32) as u16;
            }
        }
        Ok(SmallGroup::from_mul_table(n, mul, Vec::new()))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.n + b as usize]
    }

    pub fn element_order(&self, e: u16) -> u16 {
        self.orders[e as usize]
    }

    /// Greedy generating sequence: repeatedly the smallest element outside
    /// the span so far.
    pub(crate) fn generating_sequence(&self) -> Vec<u16> {
        let mut gens: Vec<u16> = Vec::new();
        let mut span = self.span(&gens);
        while span.iter().filter(|&&b| b).count() < self.n {
            let next = (0..self.n as u16).find(|&e| !span[e as usize]).unwrap();
            gens.push(next);
            span = self.span(&gens);
        }
        gens
    }

    fn span(&self, gens: &[u16]) -> Vec<bool> {
        let mut in_span = vec![false; self.n];
        in_span[0] = true;
        let mut queue = vec![0u16];
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            for &g in gens {
                let t = self.mul(e, g);
                if !in_span[t as usize] {
                    in_span[t as usize] = true;
                    queue.push(t);
                }
            }
        }
        in_span
    }

    /// BFS element list of `⟨gens[..depth]⟩` with discovery recipes
    /// `(previous element, generator index)`; the first entry is the identity.
    fn prefix_elements(&self, gens: &[u16], depth: usize) -> Vec<(u16, u16, u8)> {
        let mut in_span = vec![false; self.n];
        in_span[0] = true;
        let mut out: Vec<(u16, u16, u8)> = vec![(0, 0, u8::MAX)];
        let mut head = 0;
        while head < out.len() {
            let e = out[head].0;
            head += 1;
            for (gi, &g) in gens[..depth].iter().enumerate() {
                let t = self.mul(e, g);
                if !in_span[t as usize] {
                    in_span[t as usize] = true;
                    out.push((t, e, gi as u8));
                }
            }
        }
        out
    }

    /// All isomorphisms onto `other`, as element maps. Empty when the groups
    /// are not isomorphic.
    pub fn isomorphisms(&self, other: &SmallGroup) -> Vec<Vec<u16>> {
        if self.n != other.n {
            return Vec::new();
        }
        let mut inv_a: Vec<(u16, u16)> = self
            .orders
            .iter()
            .zip(&self.class_sizes)
            .map(|(&o, &c)| (o, c))
            .collect();
        let mut inv_b: Vec<(u16, u16)> = other
            .orders
            .iter()
            .zip(&other.class_sizes)
            .map(|(&o, &c)| (o, c))
            .collect();
        inv_a.sort_unstable();
        inv_b.sort_unstable();
        if inv_a != inv_b {
            return Vec::new();
        }
        let gens = self.generating_sequence();
        let prefixes: Vec<Vec<(u16, u16, u8)>> = (0..=gens.len())
            .map(|d| self.prefix_elements(&gens, d))
            .collect();
        let mut found = Vec::new();
        let img0 = vec![u16::MAX; self.n];
        let mut img_init = img0;
        img_init[0] = 0;
        self.extend_iso(other, &gens, &prefixes, 0, &img_init, &mut found);
        found
    }

    fn extend_iso(
        &self,
        other: &SmallGroup,
        gens: &[u16],
        prefixes: &[Vec<(u16, u16, u8)>],
        depth: usize,
        img: &[u16],
        found: &mut Vec<Vec<u16>>,
    ) {
        if depth == gens.len() {
            found.push(img.to_vec());
            return;
        }
        let g = gens[depth];
        'cand: for c in 0..self.n as u16 {
            if other.orders[c as usize] != self.orders[g as usize]
                || other.class_sizes[c as usize] != self.class_sizes[g as usize]
            {
                continue;
            }
            // candidate image must be new (injectivity over the larger span)
            if img.contains(&c) {
                continue;
            }
            let mut next = img.to_vec();
            let mut used = vec![false; self.n];
            for &v in img.iter().filter(|&&v| v != u16::MAX) {
                used[v as usize] = true;
            }
            let mut gen_imgs: Vec<u16> = gens[..depth]
                .iter()
                .map(|&gp| next[gp as usize])
                .collect();
            gen_imgs.push(c);
            // assign images over the extended span via the discovery recipes
            for &(e, prev, gi) in &prefixes[depth + 1] {
                if gi == u8::MAX {
                    continue; // the identity
                }
                if next[e as usize] != u16::MAX {
                    continue; // already in the smaller span
                }
                let v = other.mul(next[prev as usize], gen_imgs[gi as usize]);
                if used[v as usize] {
                    continue 'cand;
                }
                used[v as usize] = true;
                next[e as usize] = v;
            }
            // full multiplicative consistency on the span
            for &(e, _, _) in &prefixes[depth + 1] {
                for (gi, &gp) in gens[..=depth].iter().enumerate() {
                    let t = self.mul(e, gp);
                    if next[t as usize] != other.mul(next[e as usize], gen_imgs[gi]) {
                        continue 'cand;
                    }
                }
            }
            self.extend_iso(other, gens, prefixes, depth + 1, &next, found);
        }
    }
}

/// Quotient `A/D` as a small group over coset representatives (each coset
/// labelled by its minimal element id). Also returns the coset label of every
/// ambient element of `A` (`u16::MAX` outside `A`).
pub(crate) fn quotient_small_group(
    ctx: &GroupContext,
    a: &Sub,
    d: &Sub,
) -> (SmallGroup, Vec<u16>) {
    let n = (a.order / d.order) as usize;
    let mut coset_of = vec![u16::MAX; ctx.order as usize];
    let mut reps: Vec<u32> = Vec::with_capacity(n);
    for x in a.elems.iter() {
        if coset_of[x as usize] != u16::MAX {
            continue;
        }
        let idx = reps.len() as u16;
        reps.push(x);
        for dd in d.elems.iter() {
            coset_of[ctx.mul(dd, x) as usize] = idx;
        }
    }
    debug_assert_eq!(reps.len(), n);
    let mut mul = vec![0u16; n * n];
    for i in 0..n {
        for j in 0..n {
            mul[i * n + j] = coset_of[ctx.mul(reps[i], reps[j]) as usize];
        }
    }
    (SmallGroup::from_mul_table(n, mul, reps), coset_of)
}
