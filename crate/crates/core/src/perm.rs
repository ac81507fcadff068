//! Permutations on the points `0..degree`, stored as image lists.
//!
//! Products compose left to right: `(a * b).apply(p) == b.apply(a.apply(p))`,
//! so conjugation reads `g.conjugate(x) = x⁻¹ g x` and `p^(gh) = (p^g)^h`.
//! Text form (cycles) is 1-based; the programmatic API is 0-based.

use std::fmt;

use crate::error::{GroupError, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from the image list `point -> images[point]` (0-based).
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img as usize >= n {
                return Err(GroupError::InvalidPermutation(format!(
                    "image {} out of range for degree {}",
                    img + 1,
                    n
                )));
            }
            if seen[img as usize] {
                return Err(GroupError::InvalidPermutation(format!(
                    "image {} repeated",
                    img + 1
                )));
            }
            seen[img as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `0..degree` from disjoint cycles of 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &pt) in cycle.iter().enumerate() {
                if pt as usize >= degree {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {} out of range for degree {}",
                        pt + 1,
                        degree
                    )));
                }
                if touched[pt as usize] {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {} repeated in cycle notation",
                        pt + 1
                    )));
                }
                touched[pt as usize] = true;
                let next = cycle[(i + 1) % cycle.len()];
                images[pt as usize] = next;
            }
        }
        Permutation::from_images(images)
    }

    /// Parses 1-based disjoint-cycle text like `(1,2)(3,4)`; `()` denotes the identity.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let s = text.trim();
        if s.is_empty() {
            return Err(GroupError::InvalidPermutation(
                "empty cycle expression".into(),
            ));
        }
        let mut rest = s;
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(GroupError::InvalidPermutation(format!(
                    "expected '(' in cycle expression at {rest:?}"
                )));
            }
            let close = rest.find(')').ok_or_else(|| {
                GroupError::InvalidPermutation("unbalanced parenthesis".into())
            })?;
            let body = &rest[1..close];
            rest = rest[close + 1..].trim_start();
            let body = body.trim();
            if body.is_empty() {
                continue; // "()" is the identity cycle
            }
            let mut cycle = Vec::new();
            for tok in body.split(',') {
                let tok = tok.trim();
                let pt: u32 = tok.parse().map_err(|_| {
                    GroupError::InvalidPermutation(format!("bad point {tok:?}"))
                })?;
                if pt == 0 {
                    return Err(GroupError::InvalidPermutation(
                        "points are 1-based; 0 is not a point".into(),
                    ));
                }
                cycle.push(pt - 1);
            }
            if cycle.len() == 1 {
                // a fixed point written explicitly; allowed and ignored
                continue;
            }
            cycles.push(cycle);
        }
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i as u32 == img)
    }

    /// Smallest moved point, or `None` for the identity.
    pub fn first_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &img)| *i as u32 != img)
            .map(|(i, _)| i as u32)
    }

    /// `self * other`: apply `self` first, then `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in product");
        Permutation {
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `x⁻¹ · self · x`.
    pub fn conjugate(&self, x: &Permutation) -> Permutation {
        assert_eq!(self.degree(), x.degree(), "degree mismatch in conjugation");
        let mut images = vec![0u32; self.images.len()];
        for (p, &img) in self.images.iter().enumerate() {
            images[x.images[p] as usize] = x.images[img as usize];
        }
        Permutation { images }
    }

    /// `self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Order of the permutation: lcm of its cycle lengths.
    pub fn order(&self) -> u64 {
        let mut ord: u64 = 1;
        for cycle in self.cycles() {
            ord = lcm(ord, cycle.len() as u64);
        }
        ord
    }

    /// Non-trivial cycles, each starting at its smallest point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n as u32 {
            if seen[start as usize] || self.images[start as usize] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize] = true;
            let mut p = self.images[start as usize];
            while p != start {
                seen[p as usize] = true;
                cycle.push(p);
                p = self.images[p as usize];
            }
            out.push(cycle);
        }
        out
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    /// 1-based disjoint-cycle form; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, pt) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
