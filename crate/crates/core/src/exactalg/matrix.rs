//! Sparse matrices over the polynomial ring.
//!
//! Column `j` holds the image of the `j`-th source generator, so composition
//! `f ∘ g` is the product `F · G`.

use std::collections::BTreeMap;

use super::field::{Field, Rational};
use super::poly::Polynomial;
use super::ExactAlgError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix<K: Field = Rational> {
    arity: usize,
    rows: usize,
    cols: usize,
    pub row_degrees: Vec<i32>,
    pub col_degrees: Vec<i32>,
    /// Per column: `(row, entry)` sorted by row, entries nonzero.
    columns: Vec<Vec<(usize, Polynomial<K>)>>,
}

impl<K: Field> PolyMatrix<K> {
    pub fn zero(arity: usize, row_degrees: Vec<i32>, col_degrees: Vec<i32>) -> Self {
        PolyMatrix {
            arity,
            rows: row_degrees.len(),
            cols: col_degrees.len(),
            columns: vec![Vec::new(); col_degrees.len()],
            row_degrees,
            col_degrees,
        }
    }

    pub fn identity(arity: usize, degrees: Vec<i32>) -> Self {
        let mut m = Self::zero(arity, degrees.clone(), degrees);
        for j in 0..m.cols {
            m.columns[j].push((j, Polynomial::one(arity)));
        }
        m
    }

    /// `p · Id`.
    pub fn scalar(arity: usize, degrees: Vec<i32>, p: &Polynomial<K>) -> Self {
        let mut m = Self::zero(arity, degrees.clone(), degrees);
        if !p.is_zero() {
            for j in 0..m.cols {
                m.columns[j].push((j, p.clone()));
            }
        }
        m
    }

    /// Build from row-major dense entries.
    pub fn from_rows(arity: usize, row_degrees: Vec<i32>, col_degrees: Vec<i32>, entries: Vec<Vec<Polynomial<K>>>) -> Self {
        let mut m = Self::zero(arity, row_degrees, col_degrees);
        assert_eq!(entries.len(), m.rows);
        for (i, row) in entries.into_iter().enumerate() {
            assert_eq!(row.len(), m.cols);
            for (j, p) in row.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        m
    }

    pub fn from_columns(
        arity: usize,
        row_degrees: Vec<i32>,
        col_degrees: Vec<i32>,
        columns: Vec<BTreeMap<usize, Polynomial<K>>>,
    ) -> Self {
        assert_eq!(columns.len(), col_degrees.len());
        PolyMatrix {
            arity,
            rows: row_degrees.len(),
            cols: col_degrees.len(),
            columns: columns
                .into_iter()
                .map(|c| c.into_iter().filter(|(_, p)| !p.is_zero()).collect())
                .collect(),
            row_degrees,
            col_degrees,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, Polynomial<K>)] {
        &self.columns[j]
    }

    pub fn get(&self, i: usize, j: usize) -> Polynomial<K> {
        match self.columns[j].binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.columns[j][k].1.clone(),
            Err(_) => Polynomial::zero(self.arity),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial<K>) {
        assert!(i < self.rows && j < self.cols);
        let col = &mut self.columns[j];
        match col.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => {
                if p.is_zero() {
                    col.remove(k);
                } else {
                    col[k].1 = p;
                }
            }
            Err(k) => {
                if !p.is_zero() {
                    col.insert(k, (i, p));
                }
            }
        }
    }

    /// Entrywise equality, ignoring the degree bookkeeping.
    pub fn same_entries(&self, o: &PolyMatrix<K>) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.columns == o.columns
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Polynomial<K>)> {
        self.columns.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, p)| (*i, j, p)))
    }

    /// `self · o`.
    pub fn mul(&self, o: &PolyMatrix<K>) -> PolyMatrix<K> {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let columns = o
            .columns
            .iter()
            .map(|ocol| {
                let mut acc: BTreeMap<usize, Polynomial<K>> = BTreeMap::new();
                for (k, g) in ocol {
                    for (i, f) in &self.columns[*k] {
                        acc.entry(*i).or_insert_with(|| Polynomial::zero(self.arity)).add_product(f, g);
                    }
                }
                acc
            })
            .collect();
        Self::from_columns(self.arity, self.row_degrees.clone(), o.col_degrees.clone(), columns)
    }

    pub fn add(&self, o: &PolyMatrix<K>) -> PolyMatrix<K> {
        self.combine(o, &K::one())
    }

    pub fn sub(&self, o: &PolyMatrix<K>) -> PolyMatrix<K> {
        self.combine(o, &K::one().neg())
    }

    /// `self + c·o`.
    pub fn combine(&self, o: &PolyMatrix<K>, c: &K) -> PolyMatrix<K> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix shape mismatch");
        let columns = (0..self.cols)
            .map(|j| {
                let mut acc: BTreeMap<usize, Polynomial<K>> =
                    self.columns[j].iter().map(|(i, p)| (*i, p.clone())).collect();
                for (i, p) in &o.columns[j] {
                    acc.entry(*i).or_insert_with(|| Polynomial::zero(self.arity)).add_scaled(p, c);
                }
                acc
            })
            .collect();
        Self::from_columns(self.arity, self.row_degrees.clone(), self.col_degrees.clone(), columns)
    }

    pub fn scale(&self, c: &K) -> PolyMatrix<K> {
        self.map_entries(|p| p.scale(c))
    }

    pub fn neg(&self) -> PolyMatrix<K> {
        self.scale(&K::one().neg())
    }

    /// Multiply every entry by a polynomial (scalar matrix product).
    pub fn mul_poly(&self, p: &Polynomial<K>) -> PolyMatrix<K> {
        self.map_entries(|e| e.mul(p))
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial<K>) -> Polynomial<K>) -> PolyMatrix<K> {
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|(i, p)| (*i, f(p))).collect::<BTreeMap<_, _>>())
            .collect();
        Self::from_columns(self.arity, self.row_degrees.clone(), self.col_degrees.clone(), columns)
    }

    pub fn transpose(&self) -> PolyMatrix<K> {
        let mut columns: Vec<BTreeMap<usize, Polynomial<K>>> = vec![BTreeMap::new(); self.rows];
        for (i, j, p) in self.entries() {
            columns[i].insert(j, p.clone());
        }
        Self::from_columns(self.arity, self.col_degrees.clone(), self.row_degrees.clone(), columns)
    }

    pub fn with_degrees(mut self, row_degrees: Vec<i32>, col_degrees: Vec<i32>) -> Self {
        assert_eq!(row_degrees.len(), self.rows);
        assert_eq!(col_degrees.len(), self.cols);
        self.row_degrees = row_degrees;
        self.col_degrees = col_degrees;
        self
    }

    /// Substitute `x_j := images[j]` in every entry.
    pub fn substitute(&self, images: &[Polynomial<K>]) -> PolyMatrix<K> {
        let arity = images.first().map(|p| p.arity()).unwrap_or(self.arity);
        let mut m = self.map_entries(|p| p.substitute(images));
        m.arity = arity;
        m
    }

    /// Every nonzero entry `(i, j)` must be homogeneous of q-degree
    /// `col_degrees[j] - row_degrees[i]`.
    pub fn check_homogeneous(&self) -> Result<(), ExactAlgError> {
        for (i, j, p) in self.entries() {
            let expected = self.col_degrees[j] - self.row_degrees[i];
            if p.q_degree() != Some(expected) {
                return Err(ExactAlgError::Inhomogeneous { row: i, col: j, expected });
            }
        }
        Ok(())
    }

    /// Block matrix from a grid of optional blocks (all blocks in a block row
    /// share row degrees, all in a block column share column degrees).
    pub fn block(arity: usize, row_degrees: &[Vec<i32>], col_degrees: &[Vec<i32>], blocks: &[Vec<Option<&PolyMatrix<K>>>]) -> PolyMatrix<K> {
        let roff: Vec<usize> = offsets(row_degrees);
        let coff: Vec<usize> = offsets(col_degrees);
        let all_rows: Vec<i32> = row_degrees.concat();
        let all_cols: Vec<i32> = col_degrees.concat();
        let mut columns: Vec<BTreeMap<usize, Polynomial<K>>> = vec![BTreeMap::new(); all_cols.len()];
        for (bi, brow) in blocks.iter().enumerate() {
            for (bj, blk) in brow.iter().enumerate() {
                if let Some(b) = blk {
                    assert_eq!(b.rows, row_degrees[bi].len());
                    assert_eq!(b.cols, col_degrees[bj].len());
                    for (i, j, p) in b.entries() {
                        columns[coff[bj] + j].insert(roff[bi] + i, p.clone());
                    }
                }
            }
        }
        Self::from_columns(arity, all_rows, all_cols, columns)
    }

    /// Extract the sub-block with the given row and column index ranges.
    pub fn sub_block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> PolyMatrix<K> {
        let columns = cols
            .clone()
            .map(|j| {
                self.columns[j]
                    .iter()
                    .filter(|(i, _)| rows.contains(i))
                    .map(|(i, p)| (i - rows.start, p.clone()))
                    .collect::<BTreeMap<_, _>>()
            })
            .collect();
        Self::from_columns(
            self.arity,
            self.row_degrees[rows.clone()].to_vec(),
            self.col_degrees[cols].to_vec(),
            columns,
        )
    }

    /// Is every entry a constant (degree 0)?
    pub fn is_constant(&self) -> bool {
        self.entries().all(|(_, _, p)| p.homogeneous_degree() == Some(0))
    }
}

impl PolyMatrix<Rational> {
    pub fn to_field<L: Field>(&self) -> PolyMatrix<L> {
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|(i, p)| (*i, p.to_field::<L>())).collect::<BTreeMap<_, _>>())
            .collect();
        PolyMatrix::from_columns(self.arity, self.row_degrees.clone(), self.col_degrees.clone(), columns)
    }
}

fn offsets(parts: &[Vec<i32>]) -> Vec<usize> {
    let mut acc = 0;
    parts
        .iter()
        .map(|p| {
            let o = acc;
            acc += p.len();
            o
        })
        .collect()
}

/// Evaluate `p` at pairwise commuting square matrices `mats[j]` (one per
/// ring variable). Constants become multiples of the identity.
pub fn eval_at_matrices<K: Field>(p: &Polynomial<K>, mats: &[PolyMatrix<K>], degrees: &[i32]) -> PolyMatrix<K> {
    assert_eq!(mats.len(), p.arity());
    let arity = mats.first().map(|m| m.arity()).unwrap_or(p.arity());
    let mut out = PolyMatrix::zero(arity, degrees.to_vec(), degrees.to_vec());
    let mut powers: BTreeMap<(usize, u32), PolyMatrix<K>> = BTreeMap::new();
    for (mono, c) in p.terms() {
        let mut term = PolyMatrix::scalar(arity, degrees.to_vec(), &Polynomial::constant(arity, c.clone()));
        for (j, mat) in mats.iter().enumerate() {
            let e = mono.exp(j);
            if e == 0 {
                continue;
            }
            let pw = powers
                .entry((j, e))
                .or_insert_with(|| {
                    let mut acc = mat.clone();
                    for _ in 1..e {
                        acc = acc.mul(mat);
                    }
                    acc
                })
                .clone();
            term = term.mul(&pw);
        }
        out = out.add(&term);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(j: usize) -> Polynomial {
        Polynomial::var(2, j)
    }

    #[test]
    fn product_and_transpose() {
        let m = PolyMatrix::from_rows(2, vec![0, 2], vec![0, 2], vec![
            vec![Polynomial::zero(2), x(0).mul(&x(1)).neg()],
            vec![Polynomial::one(2), x(0).add(&x(1))],
        ]);
        let sq = m.mul(&m);
        // m satisfies its characteristic polynomial t^2 - e1 t + e2 = 0
        let e1 = x(0).add(&x(1));
        let e2 = x(0).mul(&x(1));
        let lhs = sq.sub(&m.mul_poly(&e1)).add(&PolyMatrix::scalar(2, vec![0, 2], &e2));
        assert!(lhs.is_zero());
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn homogeneity_check() {
        let ok = PolyMatrix::from_rows(1, vec![0], vec![2], vec![vec![Polynomial::<Rational>::var(1, 0)]]);
        assert!(ok.check_homogeneous().is_ok());
        let bad = PolyMatrix::from_rows(1, vec![0], vec![0], vec![vec![Polynomial::<Rational>::var(1, 0)]]);
        assert!(bad.check_homogeneous().is_err());
    }
}
