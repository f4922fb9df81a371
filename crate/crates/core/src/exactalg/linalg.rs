//! Sparse row echelon forms over a field, with optional label tracking.
//!
//! Every stored row carries a label vector. Reducing a vector subtracts the
//! same combination from its label, which gives kernels (label = source
//! combination) and homology projections (label = homology coordinates)
//! from the same elimination loop.

use std::collections::{BTreeMap, HashMap};

use super::field::Field;

/// Sorted `(index, value)` pairs with nonzero values.
pub type SparseVec<K> = Vec<(usize, K)>;

#[derive(Clone, Debug)]
struct Row<K> {
    vec: SparseVec<K>,
    label: SparseVec<K>,
}

#[derive(Clone, Debug)]
pub struct Echelon<K: Field> {
    rows: Vec<Row<K>>,
    pivot_of: HashMap<usize, usize>,
}

impl<K: Field> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: Vec::new(), pivot_of: HashMap::new() }
    }
}

fn to_map<K: Field>(v: &[(usize, K)]) -> BTreeMap<usize, K> {
    v.iter().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (*i, c.clone())).collect()
}

fn sub_scaled<K: Field>(acc: &mut BTreeMap<usize, K>, row: &[(usize, K)], c: &K) {
    for (i, r) in row {
        let delta = r.mul(c);
        match acc.entry(*i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(delta.neg());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().sub(&delta);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }
}

impl<K: Field> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `(v, label)` against the stored rows.
    pub fn reduce(&self, v: &[(usize, K)], label: &[(usize, K)]) -> (SparseVec<K>, SparseVec<K>) {
        let mut acc = to_map(v);
        let mut lab = to_map(label);
        let mut cursor = 0usize;
        loop {
            let next = acc.range(cursor..).find(|(i, _)| self.pivot_of.contains_key(i)).map(|(i, c)| (*i, c.clone()));
            let Some((col, c)) = next else { break };
            let row = &self.rows[self.pivot_of[&col]];
            sub_scaled(&mut acc, &row.vec, &c);
            if !row.label.is_empty() {
                sub_scaled(&mut lab, &row.label, &c);
            }
            cursor = col + 1;
        }
        (acc.into_iter().collect(), lab.into_iter().collect())
    }

    /// Insert a reduced, nonzero vector. Returns false if `v` was dependent.
    pub fn insert(&mut self, v: &[(usize, K)], label: &[(usize, K)]) -> bool {
        let (r, l) = self.reduce(v, label);
        self.insert_reduced(r, l)
    }

    fn insert_reduced(&mut self, r: SparseVec<K>, l: SparseVec<K>) -> bool {
        let Some((pivot, lead)) = r.first().cloned() else { return false };
        let inv = lead.inv();
        let vec = r.into_iter().map(|(i, c)| (i, c.mul(&inv))).collect();
        let label = l.into_iter().map(|(i, c)| (i, c.mul(&inv))).collect();
        self.pivot_of.insert(pivot, self.rows.len());
        self.rows.push(Row { vec, label });
        true
    }

    pub fn contains(&self, v: &[(usize, K)]) -> bool {
        self.reduce(v, &[]).0.is_empty()
    }
}

/// Rank of the span of `vectors`.
pub fn rank<K: Field>(vectors: &[SparseVec<K>]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v, &[]);
    }
    e.rank()
}

/// Rank and a kernel basis of the map sending source basis vector `i` to
/// `images[i]`. Kernel vectors are in source coordinates.
pub fn rank_and_kernel<K: Field>(images: &[SparseVec<K>]) -> (usize, Vec<SparseVec<K>>) {
    let mut e = Echelon::new();
    let mut kernel = Vec::new();
    for (i, v) in images.iter().enumerate() {
        let (r, l) = e.reduce(v, &[(i, K::one())]);
        if r.is_empty() {
            kernel.push(l);
        } else {
            e.insert_reduced(r, l);
        }
    }
    (e.rank(), kernel)
}

/// Homology `Z / B` of a subquotient, with a projection from cycles to
/// coordinates in a chosen basis of representatives.
#[derive(Clone, Debug)]
pub struct Homology<K: Field> {
    ech: Echelon<K>,
    reps: Vec<SparseVec<K>>,
}

impl<K: Field> Homology<K> {
    /// `boundaries` must lie in the span of `cycles`.
    pub fn new(boundaries: &[SparseVec<K>], cycles: &[SparseVec<K>]) -> Self {
        let mut ech = Echelon::new();
        for b in boundaries {
            ech.insert(b, &[]);
        }
        let mut reps = Vec::new();
        for z in cycles {
            let h = reps.len();
            let (r, l) = ech.reduce(z, &[(h, K::one())]);
            if !r.is_empty() {
                ech.insert_reduced(r, l);
                reps.push(z.clone());
            }
        }
        Homology { ech, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[SparseVec<K>] {
        &self.reps
    }

    /// Homology coordinates of a cycle. Panics if `z` is not a cycle.
    pub fn project(&self, z: &[(usize, K)]) -> SparseVec<K> {
        let (r, l) = self.ech.reduce(z, &[]);
        assert!(r.is_empty(), "vector is not in the cycle space");
        l.into_iter().map(|(i, c)| (i, c.neg())).collect()
    }
}

/// Dense rank by plain Gaussian elimination; used as an independent check.
pub fn dense_rank<K: Field>(rows: &[Vec<K>]) -> usize {
    let mut m: Vec<Vec<K>> = rows.to_vec();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].inv();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].mul(&inv);
                for c in col..ncols {
                    let d = m[rank][c].mul(&f);
                    m[r][c] = m[r][c].sub(&d);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Inverse of a dense square matrix, or `None` if singular.
pub fn dense_inverse<K: Field>(m: &[Vec<K>]) -> Option<Vec<Vec<K>>> {
    let n = m.len();
    let mut a: Vec<Vec<K>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { K::one() } else { K::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].inv();
        for c in 0..2 * n {
            a[col][c] = a[col][c].mul(&inv);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let d = a[col][c].mul(&f);
                    a[r][c] = a[r][c].sub(&d);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn dense_inverse_roundtrip() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = dense_inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
        assert!(dense_inverse(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let imgs = vec![vec![(0, q(1)), (1, q(2))], vec![(0, q(2)), (1, q(4))], vec![]];
        let (r, k) = rank_and_kernel(&imgs);
        assert_eq!(r, 1);
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn homology_projection() {
        // cycles: e0, e1; boundaries: e0 + e1
        let b = vec![vec![(0, q(1)), (1, q(1))]];
        let z = vec![vec![(0, q(1))], vec![(1, q(1))]];
        let h = Homology::new(&b, &z);
        assert_eq!(h.dim(), 1);
        let p0 = h.project(&[(0, q(1))]);
        let p1 = h.project(&[(1, q(1))]);
        assert_eq!(p0, vec![(0, q(1))]);
        assert_eq!(p1, vec![(0, q(-1))]);
        assert!(h.project(&[(0, q(3)), (1, q(3))]).is_empty());
    }
}
