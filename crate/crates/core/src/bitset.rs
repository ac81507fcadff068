//! Fixed-capacity bit sets used for element-id sets and zuppo signatures.

/// A set of `u32` ids below a fixed capacity, packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitSet {
    words: Vec<u64>,
    capacity: u32,
}

impl BitSet {
    pub fn new(capacity: u32) -> Self {
        BitSet {
            words: vec![0; (capacity as usize).div_ceil(64)],
            capacity,
        }
    }

    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    #[inline]
    pub fn insert(&mut self, id: u32) {
        debug_assert!(id < self.capacity);
        self.words[(id / 64) as usize] |= 1u64 << (id % 64);
    }

    #[inline]
    pub fn contains(&self, id: u32) -> bool {
        debug_assert!(id < self.capacity);
        self.words[(id / 64) as usize] >> (id % 64) & 1 == 1
    }

    pub fn len(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.capacity, other.capacity);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        debug_assert_eq!(self.capacity, other.capacity);
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
            capacity: self.capacity,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            let mut out = Vec::with_capacity(w.count_ones() as usize);
            while w != 0 {
                let bit = w.trailing_zeros();
                out.push(wi as u32 * 64 + bit);
                w &= w - 1;
            }
            out
        })
    }

    /// Smallest id in the set, or `None` when empty.
    pub fn min(&self) -> Option<u32> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi as u32 * 64 + w.trailing_zeros());
            }
        }
        None
    }

    /// Orders sets so that, at the first differing id, the set containing it
    /// comes first. Equal sets compare equal.
    pub fn cmp_by_first_member(&self, other: &BitSet) -> std::cmp::Ordering {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter().zip(&other.words) {
            if a != b {
                let diff = a ^ b;
                let low = diff.trailing_zeros();
                return if a >> low & 1 == 1 {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                };
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl FromIterator<u32> for BitSet {
    /// Collects ids into a set sized by the maximum id + 1; prefer
    /// `BitSet::new` + `insert` when the capacity is known.
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let ids: Vec<u32> = iter.into_iter().collect();
        let cap = ids.iter().max().map_or(0, |m| m + 1);
        let mut set = BitSet::new(cap);
        for id in ids {
            set.insert(id);
        }
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_len() {
        let mut s = BitSet::new(200);
        for id in [0, 63, 64, 65, 199] {
            s.insert(id);
        }
        assert_eq!(s.len(), 5);
        assert!(s.contains(64));
        assert!(!s.contains(100));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 65, 199]);
        assert_eq!(s.min(), Some(0));
    }

    #[test]
    fn subset_and_union() {
        let mut a = BitSet::new(70);
        let mut b = BitSet::new(70);
        a.insert(3);
        b.insert(3);
        b.insert(69);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        a.union_with(&b);
        assert!(b.is_subset(&a));
        assert_eq!(a.intersection(&b).len(), 2);
    }

    #[test]
    fn first_member_ordering() {
        use std::cmp::Ordering;
        let mut a = BitSet::new(10);
        let mut b = BitSet::new(10);
        a.insert(2);
        b.insert(5);
        // a contains the earlier id, so a comes first
        assert_eq!(a.cmp_by_first_member(&b), Ordering::Less);
        assert_eq!(b.cmp_by_first_member(&a), Ordering::Greater);
        assert_eq!(a.cmp_by_first_member(&a.clone()), Ordering::Equal);
    }
}
