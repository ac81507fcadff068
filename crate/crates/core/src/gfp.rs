//! Row-vector linear algebra over GF(p) for layer modules: reduced row
//! echelon forms, spinning under action matrices, and submodule enumeration.

/// A vector over GF(p), entries in `0..p`.
pub type Vector = Vec<u8>;
/// A matrix over GF(p) as a list of rows.
pub type Matrix = Vec<Vector>;

#[inline]
fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and a ≠ 0
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

pub fn identity_matrix(r: usize) -> Matrix {
    (0..r)
        .map(|i| (0..r).map(|j| u8::from(i == j)).collect())
        .collect()
}

/// `v · m` for a row vector and a matrix given by rows.
pub fn apply(v: &Vector, m: &Matrix, p: u64) -> Vector {
    let cols = m.first().map_or(0, |row| row.len());
    let mut out = vec![0u8; cols];
    for (i, &vi) in v.iter().enumerate() {
        if vi == 0 {
            continue;
        }
        for (j, &mij) in m[i].iter().enumerate() {
            out[j] = ((out[j] as u64 + vi as u64 * mij as u64) % p) as u8;
        }
    }
    out
}

pub fn mat_mul(a: &Matrix, b: &Matrix, p: u64) -> Matrix {
    a.iter().map(|row| apply(row, b, p)).collect()
}

/// A subspace in reduced row echelon form; the basis is canonical, so two
/// subspaces are equal exactly when their `basis` fields are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: Vec<Vector>,
    dim: usize,
    width: usize,
}

impl Subspace {
    pub fn zero(width: usize) -> Self {
        Subspace {
            basis: Vec::new(),
            dim: 0,
            width,
        }
    }

    pub fn from_rows(rows: &[Vector], width: usize, p: u64) -> Self {
        let mut s = Subspace::zero(width);
        for row in rows {
            s.insert(row.clone(), p);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Canonical reduced-echelon basis rows, sorted by pivot column.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Reduces `v` against the basis; the residue is zero iff `v` lies in
    /// the span.
    pub fn reduce(&self, mut v: Vector, p: u64) -> Vector {
        for row in &self.basis {
            let pivot = row.iter().position(|&x| x != 0).unwrap();
            if v[pivot] != 0 {
                let factor = v[pivot] as u64;
                for (vi, &ri) in v.iter_mut().zip(row) {
                    *vi = ((*vi as u64 + p * p - factor * ri as u64 % p) % p) as u8;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &Vector, p: u64) -> bool {
        self.reduce(v.clone(), p).iter().all(|&x| x == 0)
    }

    /// Inserts a vector, keeping reduced echelon form. Returns whether the
    /// dimension grew.
    pub fn insert(&mut self, v: Vector, p: u64) -> bool {
        let v = self.reduce(v, p);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        // normalize the pivot to 1
        let inv = inv_mod(v[pivot] as u64, p);
        let row: Vector = v.iter().map(|&x| (x as u64 * inv % p) as u8).collect();
        // clear this pivot column from existing rows
        for existing in &mut self.basis {
            let factor = existing[pivot] as u64;
            if factor != 0 {
                for (ei, &ri) in existing.iter_mut().zip(&row) {
                    *ei = ((*ei as u64 + p * p - factor * ri as u64 % p) % p) as u8;
                }
            }
        }
        self.basis.push(row);
        self.basis
            .sort_by_key(|r| r.iter().position(|&x| x != 0).unwrap());
        self.dim += 1;
        true
    }

    pub fn sum(&self, other: &Subspace, p: u64) -> Subspace {
        let mut out = self.clone();
        for row in &other.basis {
            out.insert(row.clone(), p);
        }
        out
    }

    /// All vectors of the subspace (`p^dim` of them), in coefficient order.
    pub fn vectors(&self, p: u64) -> Vec<Vector> {
        let mut out = Vec::with_capacity((p as usize).pow(self.dim as u32));
        let mut coeffs = vec![0u8; self.dim];
        loop {
            let mut v = vec![0u8; self.width];
            for (c, row) in coeffs.iter().zip(&self.basis) {
                if *c != 0 {
                    for (vi, &ri) in v.iter_mut().zip(row) {
                        *vi = ((*vi as u64 + *c as u64 * ri as u64) % p) as u8;
                    }
                }
            }
            out.push(v);
            // odometer over coefficients
            let mut i = 0;
            loop {
                if i == self.dim {
                    return out;
                }
                coeffs[i] += 1;
                if (coeffs[i] as u64) < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }
}

/// Smallest submodule containing `seed`: closure under the action matrices.
pub fn spin(seed: &Vector, matrices: &[Matrix], p: u64) -> Subspace {
    let width = seed.len();
    let mut space = Subspace::zero(width);
    space.insert(seed.clone(), p);
    let mut frontier: Vec<Vector> = space.basis().to_vec();
    while let Some(v) = frontier.pop() {
        for m in matrices {
            let w = apply(&v, m, p);
            if space.insert(w.clone(), p) {
                frontier.push(w);
            }
        }
    }
    space
}

/// All invariant subspaces of the module: spin every seed vector, then close
/// the set under sums. Includes the zero and full spaces.
pub fn all_submodules(matrices: &[Matrix], width: usize, p: u64) -> Vec<Subspace> {
    let mut found: Vec<Subspace> = vec![Subspace::zero(width)];
    let mut seen: std::collections::HashSet<Subspace> = found.iter().cloned().collect();
    if width > 0 {
        let full = Subspace::from_rows(&identity_matrix(width), width, p);
        for seed in full.vectors(p) {
            if seed.iter().all(|&x| x == 0) {
                continue;
            }
            let cyclic = spin(&seed, matrices, p);
            if seen.insert(cyclic.clone()) {
                found.push(cyclic);
            }
        }
    }
    let mut lo = 0;
    loop {
        let len = found.len();
        if lo == len {
            break;
        }
        for i in 0..len {
            for j in lo.max(i)..len {
                let joined = found[i].sum(&found[j], p);
                if seen.insert(joined.clone()) {
                    found.push(joined);
                }
            }
        }
        lo = len;
    }
    found.sort();
    found.sort_by_key(|s| s.dim());
    found
}
