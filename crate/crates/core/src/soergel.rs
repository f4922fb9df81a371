//! Bott–Samelson bimodules as free left modules with explicit right actions.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::exactalg::matrix::eval_at_matrices;
use crate::exactalg::{Field, PolyMatrix, Polynomial, Rational, TriMono, TriSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SoergelError {
    #[error("generator index {i} out of range for {n} strands")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("ring mismatch")]
    RingMismatch,
}

/// Coordinates for `R_n = Q[x_1..x_n]`.
///
/// `Reduced` works over `R_n/(x_1+…+x_n)`, i.e. with generators
/// `x_1..x_{n-1}` and `x_n = -(x_1+…+x_{n-1})`. Every Bott–Samelson
/// bimodule over `R_n` is the reduced one tensored with `Q[e_1]`, which
/// factors out of Hochschild homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingMode {
    Full,
    Reduced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyRing {
    pub n: usize,
    pub mode: RingMode,
}

impl PolyRing {
    pub fn full(n: usize) -> Self {
        PolyRing { n, mode: RingMode::Full }
    }

    pub fn reduced(n: usize) -> Self {
        PolyRing { n, mode: RingMode::Reduced }
    }

    /// Number of polynomial generators.
    pub fn arity(&self) -> usize {
        match self.mode {
            RingMode::Full => self.n,
            RingMode::Reduced => self.n.saturating_sub(1),
        }
    }

    /// `x_{j+1}` written in the generators.
    pub fn var<K: Field>(&self, j: usize) -> Polynomial<K> {
        assert!(j < self.n);
        let ar = self.arity();
        if j < ar {
            Polynomial::var(ar, j)
        } else {
            let mut p = Polynomial::zero(ar);
            for k in 0..ar {
                p = p.sub(&Polynomial::var(ar, k));
            }
            p
        }
    }
}

/// Free left module with basis `⊗_k {1, x_{i_k}}` (first letter most
/// significant) and right-multiplication matrices for every `x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BSBimodule<K: Field = Rational> {
    ring: PolyRing,
    word: Vec<usize>,
    basis_degrees: Vec<i32>,
    right_action: Vec<PolyMatrix<K>>,
    global_shift: i32,
    dual: bool,
}

impl<K: Field> BSBimodule<K> {
    pub fn unit(ring: PolyRing) -> Self {
        let right_action = (0..ring.n)
            .map(|j| PolyMatrix::scalar(ring.arity(), vec![0], &ring.var(j)))
            .collect();
        BSBimodule { ring, word: Vec::new(), basis_degrees: vec![0], right_action, global_shift: 0, dual: false }
    }

    pub fn elementary(ring: PolyRing, i: usize) -> Result<Self, SoergelError> {
        Self::unit(ring).append(i)
    }

    pub fn bott_samelson(ring: PolyRing, word: &[usize]) -> Result<Self, SoergelError> {
        let mut b = Self::unit(ring);
        for &i in word {
            b = b.append(i)?;
        }
        Ok(b)
    }

    /// `self ⊗_R B_i`.
    pub fn append(&self, i: usize) -> Result<Self, SoergelError> {
        let n = self.ring.n;
        if i == 0 || i >= n {
            return Err(SoergelError::IndexOutOfRange { i, n });
        }
        assert!(!self.dual, "append on a dual bimodule");
        let ar = self.ring.arity();
        let r = self.rank();
        let mi = &self.right_action[i - 1];
        let mj = &self.right_action[i];
        let s = mi.add(mj);
        let p = mi.mul(mj);
        let ident = PolyMatrix::<K>::identity(ar, self.basis_degrees.clone());
        let degrees: Vec<i32> = self.basis_degrees.iter().flat_map(|&d| [d, d + 2]).collect();
        // blocks[b'][b] acts from letter-bit b to letter-bit b'
        let interleave = |blocks: [[Option<&PolyMatrix<K>>; 2]; 2], negate: [[bool; 2]; 2]| {
            let mut columns: Vec<BTreeMap<usize, Polynomial<K>>> = vec![BTreeMap::new(); 2 * r];
            for (bp, row) in blocks.iter().enumerate() {
                for (b, blk) in row.iter().enumerate() {
                    if let Some(m) = blk {
                        for (g, a, e) in m.entries() {
                            let e = if negate[bp][b] { e.neg() } else { e.clone() };
                            columns[2 * a + b].insert(2 * g + bp, e);
                        }
                    }
                }
            }
            PolyMatrix::from_columns(ar, degrees.clone(), degrees.clone(), columns)
        };
        let mut right_action = Vec::with_capacity(n);
        for j in 0..n {
            let m = if j == i - 1 {
                interleave([[None, Some(&p)], [Some(&ident), Some(&s)]], [[false, true], [false, false]])
            } else if j == i {
                interleave([[Some(&s), Some(&p)], [Some(&ident), None]], [[false, false], [true, false]])
            } else {
                let mj = &self.right_action[j];
                interleave([[Some(mj), None], [None, Some(mj)]], [[false; 2]; 2])
            };
            right_action.push(m);
        }
        let mut word = self.word.clone();
        word.push(i);
        Ok(BSBimodule { ring: self.ring, word, basis_degrees: degrees, right_action, global_shift: self.global_shift, dual: false })
    }

    /// `A ⊗_R B`: the right action of `x_j` is `B`'s matrix with each
    /// polynomial entry evaluated at `A`'s right-action matrices.
    pub fn tensor(&self, other: &Self) -> Result<Self, SoergelError> {
        if self.ring.n != other.ring.n {
            return Err(SoergelError::StrandMismatch(self.ring.n, other.ring.n));
        }
        if self.ring != other.ring {
            return Err(SoergelError::RingMismatch);
        }
        let ar = self.ring.arity();
        let (ra, rb) = (self.rank(), other.rank());
        let degrees: Vec<i32> = self
            .basis_degrees
            .iter()
            .flat_map(|&da| other.basis_degrees.iter().map(move |&db| da + db))
            .collect();
        let gens = self.generator_actions();
        let mut evals: HashMap<Polynomial<K>, PolyMatrix<K>> = HashMap::new();
        let mut right_action = Vec::with_capacity(self.ring.n);
        for mb in &other.right_action {
            let mut columns: Vec<BTreeMap<usize, Polynomial<K>>> = vec![BTreeMap::new(); ra * rb];
            for (g, b, p) in mb.entries() {
                let e = evals
                    .entry(p.clone())
                    .or_insert_with(|| eval_at_matrices(p, gens, &self.basis_degrees));
                for (a2, a, v) in e.entries() {
                    columns[a * rb + b].insert(a2 * rb + g, v.clone());
                }
            }
            right_action.push(PolyMatrix::from_columns(ar, degrees.clone(), degrees.clone(), columns));
        }
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Ok(BSBimodule {
            ring: self.ring,
            word,
            basis_degrees: degrees,
            right_action,
            global_shift: self.global_shift + other.global_shift,
            dual: false,
        })
    }

    /// Left dual `Hom_R(B, R)`: negated degrees, transposed right action.
    pub fn dual(&self) -> Self {
        let degrees: Vec<i32> = self.basis_degrees.iter().map(|d| -d).collect();
        BSBimodule {
            ring: self.ring,
            word: self.word.clone(),
            right_action: self
                .right_action
                .iter()
                .map(|m| m.transpose().with_degrees(degrees.clone(), degrees.clone()))
                .collect(),
            basis_degrees: degrees,
            global_shift: -self.global_shift,
            dual: !self.dual,
        }
    }

    pub fn with_shift(mut self, shift: i32) -> Self {
        self.global_shift = shift;
        self
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }
    pub fn n(&self) -> usize {
        self.ring.n
    }
    pub fn word(&self) -> &[usize] {
        &self.word
    }
    pub fn rank(&self) -> usize {
        self.basis_degrees.len()
    }
    pub fn basis_degrees(&self) -> &[i32] {
        &self.basis_degrees
    }
    pub fn global_shift(&self) -> i32 {
        self.global_shift
    }
    pub fn is_dual(&self) -> bool {
        self.dual
    }

    /// Right action of `x_{j+1}`.
    pub fn right_action(&self, j: usize) -> &PolyMatrix<K> {
        &self.right_action[j]
    }

    /// Right actions of the ring generators only.
    pub fn generator_actions(&self) -> &[PolyMatrix<K>] {
        &self.right_action[..self.ring.arity()]
    }

    /// Left-module character `Σ q^(deg + shift)`.
    pub fn character(&self) -> TriSeries {
        let mut s = TriSeries::zero(crate::exactalg::series::EXACT);
        for d in &self.basis_degrees {
            s.add_term(TriMono::q(d + self.global_shift), Rational::from_i64(1));
        }
        s
    }

    /// Check the structural invariants: commuting right actions of degree 2,
    /// central `e_1`, and scalar action away from the word.
    pub fn check_invariants(&self) -> Result<(), String> {
        let ar = self.ring.arity();
        for (j, m) in self.right_action.iter().enumerate() {
            let deg_ok = m
                .entries()
                .all(|(r, c, p)| p.q_degree() == Some(self.basis_degrees[c] + 2 - self.basis_degrees[r]));
            if !deg_ok {
                return Err(format!("right action of x{} is not of degree 2", j + 1));
            }
        }
        for j in 0..self.ring.n {
            for k in j + 1..self.ring.n {
                let (a, b) = (&self.right_action[j], &self.right_action[k]);
                if a.mul(b) != b.mul(a) {
                    return Err(format!("right actions of x{} and x{} do not commute", j + 1, k + 1));
                }
            }
        }
        let mut sum = PolyMatrix::zero(ar, self.basis_degrees.clone(), self.basis_degrees.clone());
        let mut e1 = Polynomial::zero(ar);
        for j in 0..self.ring.n {
            sum = sum.add(&self.right_action[j]);
            e1 = e1.add(&self.ring.var(j));
        }
        if sum != PolyMatrix::scalar(ar, self.basis_degrees.clone(), &e1) {
            return Err("sum of right actions is not central".into());
        }
        for j in 0..self.ring.n {
            let touched = self.word.iter().any(|&i| j + 1 == i || j == i);
            if !touched && self.right_action[j] != PolyMatrix::scalar(ar, self.basis_degrees.clone(), &self.ring.var(j)) {
                return Err(format!("x{} does not act as a scalar", j + 1));
            }
        }
        Ok(())
    }
}

/// A left-linear map in the given left bases, of q-degree 0 once the global
/// shifts are taken into account.
#[derive(Clone, Debug)]
pub struct BimoduleMap<K: Field = Rational> {
    pub source: Arc<BSBimodule<K>>,
    pub target: Arc<BSBimodule<K>>,
    pub matrix: PolyMatrix<K>,
}

impl<K: Field> BimoduleMap<K> {
    pub fn new(source: Arc<BSBimodule<K>>, target: Arc<BSBimodule<K>>, matrix: PolyMatrix<K>) -> Self {
        let matrix = matrix.with_degrees(
            target.basis_degrees.iter().map(|d| d + target.global_shift).collect(),
            source.basis_degrees.iter().map(|d| d + source.global_shift).collect(),
        );
        BimoduleMap { source, target, matrix }
    }

    /// `F · M_src(x_j) = M_tgt(x_j) · F` for every `j`.
    pub fn intertwines(&self) -> bool {
        (0..self.source.n()).all(|j| {
            self.matrix.mul(self.source.right_action(j)).same_entries(&self.target.right_action(j).mul(&self.matrix))
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        self.matrix.check_homogeneous().is_ok()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &BimoduleMap<K>) -> BimoduleMap<K> {
        BimoduleMap::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix))
    }
}

/// Matrix of `mult: B_i → R`, `1⊗1 ↦ 1`, `1⊗x_i ↦ x_i`.
pub fn mult_matrix<K: Field>(ring: PolyRing, i: usize) -> PolyMatrix<K> {
    let ar = ring.arity();
    PolyMatrix::from_rows(ar, vec![0], vec![0, 2], vec![vec![Polynomial::one(ar), ring.var(i - 1)]])
}

/// Matrix of `dot: R → B_i`, `1 ↦ 1⊗x_i − x_{i+1}(1⊗1)`; degree 2, so it
/// has degree 0 into `q^{-2} B_i`.
pub fn dot_matrix<K: Field>(ring: PolyRing, i: usize) -> PolyMatrix<K> {
    let ar = ring.arity();
    PolyMatrix::from_rows(ar, vec![-2, 0], vec![0], vec![vec![ring.var::<K>(i).neg()], vec![Polynomial::one(ar)]])
}

/// The two maps used by Rouquier complexes: `mult: B_i → R` and
/// `dot: R → q^{-2}B_i`.
pub fn standard_maps<K: Field>(ring: PolyRing, i: usize) -> Result<(BimoduleMap<K>, BimoduleMap<K>), SoergelError> {
    let unit = Arc::new(BSBimodule::<K>::unit(ring));
    let bi = Arc::new(BSBimodule::<K>::elementary(ring, i)?);
    let bi_shift = Arc::new(BSBimodule::<K>::elementary(ring, i)?.with_shift(-2));
    let mult = BimoduleMap::new(bi, unit.clone(), mult_matrix(ring, i));
    let dot = BimoduleMap::new(unit, bi_shift, dot_matrix(ring, i));
    Ok((mult, dot))
}

/// `id_X ⊗ f ⊗ id_Y` for a left-linear map `f` between Bott–Samelson
/// bimodules (given by its matrix), as a matrix on the Bott–Samelson bases
/// of `X·src·Y` and `X·tgt·Y`. Polynomial entries of `f` are moved through
/// `X` by evaluating them at `X`'s right action.
pub fn whisker<K: Field>(x: &BSBimodule<K>, f: &PolyMatrix<K>, y: &BSBimodule<K>) -> PolyMatrix<K> {
    let ar = x.ring.arity();
    let (rx, ry) = (x.rank(), y.rank());
    let (ft, fs) = (f.rows(), f.cols());
    let rdeg: Vec<i32> = x
        .basis_degrees
        .iter()
        .flat_map(|&a| f.row_degrees.iter().flat_map(move |&b| y.basis_degrees.iter().map(move |&c| a + b + c)))
        .collect();
    let cdeg: Vec<i32> = x
        .basis_degrees
        .iter()
        .flat_map(|&a| f.col_degrees.iter().flat_map(move |&b| y.basis_degrees.iter().map(move |&c| a + b + c)))
        .collect();
    let mut columns: Vec<BTreeMap<usize, Polynomial<K>>> = vec![BTreeMap::new(); rx * fs * ry];
    let mut evals: HashMap<Polynomial<K>, PolyMatrix<K>> = HashMap::new();
    for (bt, bs, p) in f.entries() {
        let e = evals
            .entry(p.clone())
            .or_insert_with(|| eval_at_matrices(p, x.generator_actions(), &x.basis_degrees));
        for (a2, a, v) in e.entries() {
            for c in 0..ry {
                columns[(a * fs + bs) * ry + c].insert((a2 * ft + bt) * ry + c, v.clone());
            }
        }
    }
    PolyMatrix::from_columns(ar, rdeg, cdeg, columns)
}

/// Shared cache of Bott–Samelson bimodules by word, built incrementally.
#[derive(Debug)]
pub struct BimoduleCache<K: Field = Rational> {
    ring: PolyRing,
    map: std::sync::RwLock<HashMap<Vec<usize>, Arc<BSBimodule<K>>>>,
}

impl<K: Field> BimoduleCache<K> {
    pub fn new(ring: PolyRing) -> Self {
        BimoduleCache { ring, map: std::sync::RwLock::new(HashMap::new()) }
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn get(&self, word: &[usize]) -> Arc<BSBimodule<K>> {
        if let Some(b) = self.map.read().expect("cache lock").get(word) {
            return b.clone();
        }
        let b = if word.is_empty() {
            Arc::new(BSBimodule::unit(self.ring))
        } else {
            let prefix = self.get(&word[..word.len() - 1]);
            Arc::new(prefix.append(word[word.len() - 1]).expect("valid word"))
        };
        self.map.write().expect("cache lock").entry(word.to_vec()).or_insert(b).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type B = BSBimodule<Rational>;

    fn x(ar: usize, j: usize) -> Polynomial {
        Polynomial::var(ar, j)
    }

    #[test]
    fn elementary_right_action() {
        let b = B::elementary(PolyRing::full(2), 1).unwrap();
        let want = PolyMatrix::from_rows(2, vec![0, 2], vec![0, 2], vec![
            vec![Polynomial::zero(2), x(2, 0).mul(&x(2, 1)).neg()],
            vec![Polynomial::one(2), x(2, 0).add(&x(2, 1))],
        ]);
        assert_eq!(b.right_action(0), &want);
        let e1 = PolyMatrix::scalar(2, vec![0, 2], &x(2, 0).add(&x(2, 1)));
        assert_eq!(b.right_action(1), &e1.sub(&want));
        b.check_invariants().unwrap();
    }

    #[test]
    fn far_variable_is_scalar() {
        let b = B::elementary(PolyRing::full(3), 1).unwrap();
        assert_eq!(b.right_action(2), &PolyMatrix::scalar(3, vec![0, 2], &x(3, 2)));
    }

    #[test]
    fn index_out_of_range() {
        assert!(B::elementary(PolyRing::full(2), 2).is_err());
        assert!(B::elementary(PolyRing::full(2), 0).is_err());
    }

    #[test]
    fn tensor_with_unit_and_shapes() {
        let ring = PolyRing::full(2);
        let b = B::elementary(ring, 1).unwrap();
        assert_eq!(b.tensor(&B::unit(ring)).unwrap(), b);
        assert_eq!(B::unit(ring).tensor(&b).unwrap(), b);
        let bb = b.tensor(&b).unwrap();
        assert_eq!(bb.rank(), 4);
        assert_eq!(bb.basis_degrees(), &[0, 2, 2, 4]);
        assert_eq!(bb, B::bott_samelson(ring, &[1, 1]).unwrap());
        let r3 = PolyRing::full(3);
        let bsb = B::bott_samelson(r3, &[1, 2, 1]).unwrap();
        assert_eq!(bsb.rank(), 8);
        let t = B::elementary(r3, 1)
            .unwrap()
            .tensor(&B::elementary(r3, 2).unwrap())
            .unwrap()
            .tensor(&B::elementary(r3, 1).unwrap())
            .unwrap();
        assert_eq!(t, bsb);
        bsb.check_invariants().unwrap();
    }

    #[test]
    fn characters() {
        let ring = PolyRing::full(2);
        let b = B::elementary(ring, 1).unwrap();
        let one_q2 = TriSeries::poly(&[(TriMono::q(0), 1), (TriMono::q(2), 1)]);
        assert_eq!(b.character(), one_q2);
        assert_eq!(B::unit(ring).character(), TriSeries::one());
        assert_eq!(B::bott_samelson(ring, &[1, 1]).unwrap().character(), one_q2.mul(&one_q2));
    }

    #[test]
    fn standard_maps_compose_to_root() {
        let ring = PolyRing::full(2);
        let (mult, dot) = standard_maps::<Rational>(ring, 1).unwrap();
        assert!(mult.intertwines() && dot.intertwines());
        assert!(mult.is_homogeneous() && dot.is_homogeneous());
        let c = mult.compose(&dot);
        assert_eq!(c.matrix.get(0, 0), x(2, 0).sub(&x(2, 1)));
    }

    #[test]
    fn reduced_ring_bimodules() {
        let ring = PolyRing::reduced(3);
        let b = B::bott_samelson(ring, &[2, 1, 2]).unwrap();
        b.check_invariants().unwrap();
        let (mult, dot) = standard_maps::<Rational>(ring, 2).unwrap();
        assert!(mult.intertwines() && dot.intertwines());
    }

    #[test]
    fn whisker_is_a_bimodule_map() {
        let ring = PolyRing::full(3);
        let x1 = B::bott_samelson(ring, &[2, 1]).unwrap();
        let y1 = B::bott_samelson(ring, &[2]).unwrap();
        let f = mult_matrix::<Rational>(ring, 1);
        let w = whisker(&x1, &f, &y1);
        let src = B::bott_samelson(ring, &[2, 1, 1, 2]).unwrap();
        let tgt = B::bott_samelson(ring, &[2, 1, 2]).unwrap();
        for j in 0..3 {
            assert!(w.mul(src.right_action(j)).same_entries(&tgt.right_action(j).mul(&w)));
        }
        let d = dot_matrix::<Rational>(ring, 2);
        let w = whisker(&x1, &d, &y1);
        let src = B::bott_samelson(ring, &[2, 1, 2]).unwrap();
        let tgt = B::bott_samelson(ring, &[2, 1, 2, 2]).unwrap();
        for j in 0..3 {
            assert!(w.mul(src.right_action(j)).same_entries(&tgt.right_action(j).mul(&w)));
        }
    }

    #[test]
    fn dual_right_actions_commute() {
        let b = B::bott_samelson(PolyRing::full(3), &[1, 2]).unwrap().dual();
        assert_eq!(b.basis_degrees(), &[0, -2, -2, -4]);
        let (m0, m1) = (b.right_action(0), b.right_action(1));
        assert_eq!(m0.mul(m1), m1.mul(m0));
    }
}
