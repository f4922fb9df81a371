//! Finite-dimensional q-degree slices of free graded modules over the
//! polynomial ring, and matrices of module maps restricted to them.

use std::collections::HashMap;

use super::field::Field;
use super::linalg::{rank, SparseVec};
use super::matrix::PolyMatrix;
use super::poly::{Monomial, Polynomial};
use super::ExactAlgError;

/// Basis `{ m · e_g }` of the degree-`degree` part of `⊕ R·e_g`, where
/// `e_g` sits in q-degree `gen_degrees[g]` and `deg m = 2·|m|`.
#[derive(Clone, Debug)]
pub struct SliceBasis {
    pub degree: i32,
    elements: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl SliceBasis {
    pub fn new(arity: usize, gen_degrees: &[i32], degree: i32) -> Self {
        let mut elements = Vec::new();
        for (g, &d) in gen_degrees.iter().enumerate() {
            let rest = degree - d;
            if rest < 0 || rest % 2 != 0 {
                continue;
            }
            for m in Monomial::all_of_degree(arity, (rest / 2) as u32) {
                elements.push((g, m));
            }
        }
        let index = elements.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        SliceBasis { degree, elements, index }
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[(usize, Monomial)] {
        &self.elements
    }

    pub fn index_of(&self, g: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(g, *m)).copied()
    }

    /// Coordinates of `Σ polys[g]·e_g` (which must be homogeneous of this
    /// slice's degree).
    pub fn coordinates<K: Field>(&self, polys: &[(usize, Polynomial<K>)]) -> SparseVec<K> {
        let mut acc: std::collections::BTreeMap<usize, K> = std::collections::BTreeMap::new();
        for (g, p) in polys {
            for (m, c) in p.terms() {
                let i = self.index_of(*g, m).expect("element outside slice");
                let e = acc.entry(i).or_insert_with(K::zero);
                *e = e.add(c);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// Image of one slice vector under the left-linear map with matrix `m`.
pub fn apply<K: Field>(m: &PolyMatrix<K>, cod: &SliceBasis, dom: &SliceBasis, v: &[(usize, K)]) -> SparseVec<K> {
    let mut acc: std::collections::BTreeMap<usize, K> = std::collections::BTreeMap::new();
    for (idx, c) in v {
        let (g, mono) = &dom.elements[*idx];
        for (row, p) in m.column(*g) {
            for (pm, pc) in p.terms() {
                let i = cod.index_of(*row, &pm.mul(mono)).expect("map is not homogeneous on this slice");
                let e = acc.entry(i).or_insert_with(K::zero);
                e.add_mul(pc, c);
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Images of every domain slice basis vector.
pub fn slice_images<K: Field>(m: &PolyMatrix<K>, cod: &SliceBasis, dom: &SliceBasis) -> Vec<SparseVec<K>> {
    (0..dom.dim()).map(|i| apply(m, cod, dom, &[(i, K::one())])).collect()
}

/// Rank and kernel dimension of `M` on the degree-`q_deg` slice, after
/// substituting `x_j := p` for each `(j, p)` in `specialization`.
pub fn graded_slice_rank<K: Field>(
    m: &PolyMatrix<K>,
    q_deg: i32,
    specialization: &[(usize, Polynomial<K>)],
) -> Result<(usize, usize), ExactAlgError> {
    let arity = m.arity();
    let m = if specialization.is_empty() {
        m.clone()
    } else {
        let images: Vec<Polynomial<K>> = (0..arity)
            .map(|j| {
                specialization
                    .iter()
                    .find(|(v, _)| *v == j)
                    .map(|(_, p)| p.clone())
                    .unwrap_or_else(|| Polynomial::var(arity, j))
            })
            .collect();
        if let Some((_, p)) = specialization.iter().find(|(_, p)| p.arity() != arity) {
            return Err(ExactAlgError::ArityMismatch(arity, p.arity()));
        }
        m.substitute(&images)
    };
    m.check_homogeneous()?;
    let dom = SliceBasis::new(arity, &m.col_degrees, q_deg);
    let cod = SliceBasis::new(arity, &m.row_degrees, q_deg);
    let r = rank(&slice_images(&m, &cod, &dom));
    Ok((r, dom.dim() - r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::Rational;

    #[test]
    fn multiplication_by_x1() {
        let m = PolyMatrix::from_rows(1, vec![0], vec![2], vec![vec![Polynomial::<Rational>::var(1, 0)]]);
        assert_eq!(graded_slice_rank(&m, 2, &[]).unwrap(), (1, 0));
    }

    #[test]
    fn zero_map() {
        let m: PolyMatrix = PolyMatrix::zero(2, vec![0], vec![0]);
        assert_eq!(graded_slice_rank(&m, 4, &[]).unwrap(), (0, 3));
    }

    #[test]
    fn inhomogeneous_rejected() {
        let p = Polynomial::<Rational>::var(1, 0).add(&Polynomial::one(1));
        let m = PolyMatrix::from_rows(1, vec![0], vec![2], vec![vec![p]]);
        assert!(graded_slice_rank(&m, 2, &[]).is_err());
    }

    #[test]
    fn specialization_kills_rank() {
        let m = PolyMatrix::from_rows(2, vec![0], vec![2], vec![vec![Polynomial::<Rational>::var(2, 0)]]);
        assert_eq!(graded_slice_rank(&m, 2, &[]).unwrap(), (1, 0));
        let s = vec![(0usize, Polynomial::<Rational>::zero(2))];
        assert_eq!(graded_slice_rank(&m, 2, &s).unwrap(), (0, 1));
    }
}
