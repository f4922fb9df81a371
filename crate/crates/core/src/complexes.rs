//! Chain complexes of shifted Bott–Samelson bimodules: Rouquier complexes,
//! tensor products and Gaussian-elimination minimization.
//!
//! Differentials raise the homological degree `t` by one. In a tensor
//! product the right factor's differential picks up the Koszul sign
//! `(-1)^t` of the left factor's degree.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::braid::BraidWord;
use crate::exactalg::linalg::{dense_inverse, rank};
use crate::exactalg::series::EXACT;
use crate::exactalg::slice::{slice_images, SliceBasis};
use crate::exactalg::{Field, PolyMatrix, Polynomial, Rational, SparseVec, TriMono, TriSeries};
use crate::soergel::{dot_matrix, mult_matrix, whisker, BSBimodule, BimoduleCache, PolyRing};

/// A Bott–Samelson bimodule `q^shift · B_word`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Summand {
    pub word: Vec<usize>,
    pub shift: i32,
}

/// Differential blocks of `d_t: C_t → C_{t+1}`, keyed `(target, source)`.
pub type Blocks<K> = BTreeMap<(usize, usize), PolyMatrix<K>>;

#[derive(Clone, Debug)]
pub struct ChainComplex<K: Field = Rational> {
    cache: Arc<BimoduleCache<K>>,
    groups: BTreeMap<i32, Vec<Summand>>,
    diffs: BTreeMap<i32, Blocks<K>>,
}

impl<K: Field> ChainComplex<K> {
    /// The unit bimodule in degree 0.
    pub fn unit(cache: Arc<BimoduleCache<K>>) -> Self {
        let mut groups = BTreeMap::new();
        groups.insert(0, vec![Summand { word: Vec::new(), shift: 0 }]);
        ChainComplex { cache, groups, diffs: BTreeMap::new() }
    }

    /// `σ_i ↦ [B_i → R]` in degrees 0, 1 (via `mult`);
    /// `σ_i⁻¹ ↦ [R → q^{-2} B_i]` in degrees −1, 0 (via `dot`).
    pub fn elementary(cache: Arc<BimoduleCache<K>>, letter: i32) -> Self {
        let ring = cache.ring();
        let i = letter.unsigned_abs() as usize;
        assert!(i >= 1 && i < ring.n, "letter out of range");
        let b = Summand { word: vec![i], shift: if letter > 0 { 0 } else { -2 } };
        let r = Summand { word: Vec::new(), shift: 0 };
        let mut groups = BTreeMap::new();
        let mut blocks = Blocks::new();
        let t0 = if letter > 0 {
            groups.insert(0, vec![b]);
            groups.insert(1, vec![r]);
            blocks.insert((0, 0), mult_matrix::<K>(ring, i));
            0
        } else {
            groups.insert(-1, vec![r]);
            groups.insert(0, vec![b]);
            blocks.insert((0, 0), dot_matrix::<K>(ring, i));
            -1
        };
        let mut diffs = BTreeMap::new();
        diffs.insert(t0, blocks);
        ChainComplex { cache, groups, diffs }
    }

    /// Tensor product of the elementary complexes of the letters.
    pub fn rouquier(cache: Arc<BimoduleCache<K>>, w: &BraidWord) -> Self {
        assert_eq!(cache.ring().n, w.strands(), "strand count mismatch");
        let mut c = Self::unit(cache.clone());
        for &l in w.letters() {
            c = c.tensor(&Self::elementary(cache.clone(), l));
        }
        c
    }

    pub fn ring(&self) -> PolyRing {
        self.cache.ring()
    }

    pub fn cache(&self) -> &Arc<BimoduleCache<K>> {
        &self.cache
    }

    pub fn groups(&self) -> &BTreeMap<i32, Vec<Summand>> {
        &self.groups
    }

    pub fn group(&self, t: i32) -> &[Summand] {
        self.groups.get(&t).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn differential(&self, t: i32) -> Option<&Blocks<K>> {
        self.diffs.get(&t)
    }

    pub fn num_summands(&self) -> usize {
        self.groups.values().map(|g| g.len()).sum()
    }

    pub fn bimodule(&self, s: &Summand) -> Arc<BSBimodule<K>> {
        self.cache.get(&s.word)
    }

    /// Generator degrees of a summand, shift included.
    pub fn degrees(&self, s: &Summand) -> Vec<i32> {
        self.bimodule(s).basis_degrees().iter().map(|d| d + s.shift).collect()
    }

    pub fn tensor(&self, other: &ChainComplex<K>) -> ChainComplex<K> {
        assert_eq!(self.ring(), other.ring(), "ring mismatch");
        let unit = self.cache.get(&[]);
        let mut groups: BTreeMap<i32, Vec<Summand>> = BTreeMap::new();
        let mut index: HashMap<(i32, usize, i32, usize), (i32, usize)> = HashMap::new();
        let mut totals: Vec<i32> = Vec::new();
        for &tc in self.groups.keys() {
            for &td in other.groups.keys() {
                totals.push(tc + td);
            }
        }
        totals.sort();
        totals.dedup();
        for &t in &totals {
            for (&tc, gc) in &self.groups {
                let Some(gd) = other.groups.get(&(t - tc)) else { continue };
                for (ic, sc) in gc.iter().enumerate() {
                    for (id, sd) in gd.iter().enumerate() {
                        let g = groups.entry(t).or_default();
                        index.insert((tc, ic, t - tc, id), (t, g.len()));
                        let mut word = sc.word.clone();
                        word.extend_from_slice(&sd.word);
                        g.push(Summand { word, shift: sc.shift + sd.shift });
                    }
                }
            }
        }
        let mut diffs: BTreeMap<i32, Blocks<K>> = BTreeMap::new();
        let mut entries: Vec<((i32, usize, i32, usize), (i32, usize))> = index.iter().map(|(k, v)| (*k, *v)).collect();
        entries.sort();
        for ((tc, ic, td, id), (t, src)) in entries {
            let sc = &self.groups[&tc][ic];
            let sd = &other.groups[&td][id];
            let src_sum = &groups[&t][src];
            let src_deg = self.degrees(src_sum);
            if let Some(blocks) = self.diffs.get(&tc) {
                let yd = self.cache.get(&sd.word);
                for (&(tgt_c, src_c), f) in blocks.range((0, ic)..) {
                    if src_c != ic {
                        continue;
                    }
                    let (_, tgt) = index[&(tc + 1, tgt_c, td, id)];
                    let m = whisker(&unit, f, &yd).with_degrees(self.degrees(&groups[&(t + 1)][tgt]), src_deg.clone());
                    add_block(diffs.entry(t).or_default(), (tgt, src), m);
                }
            }
            if let Some(blocks) = other.diffs.get(&td) {
                let xc = self.cache.get(&sc.word);
                let sign_neg = tc.rem_euclid(2) == 1;
                for (&(tgt_d, src_d), g) in blocks.iter() {
                    if src_d != id {
                        continue;
                    }
                    let (_, tgt) = index[&(tc, ic, td + 1, tgt_d)];
                    let mut m = whisker(&xc, g, &unit).with_degrees(self.degrees(&groups[&(t + 1)][tgt]), src_deg.clone());
                    if sign_neg {
                        m = m.neg();
                    }
                    add_block(diffs.entry(t).or_default(), (tgt, src), m);
                }
            }
        }
        diffs.retain(|_, b| !b.is_empty());
        ChainComplex { cache: self.cache.clone(), groups, diffs }
    }

    /// `d_{t+1} ∘ d_t = 0` for every `t`, as exact matrix identities.
    pub fn check_d_squared(&self) -> bool {
        for (&t, d0) in &self.diffs {
            let Some(d1) = self.diffs.get(&(t + 1)) else { continue };
            let mut acc: BTreeMap<(usize, usize), PolyMatrix<K>> = BTreeMap::new();
            for (&(k, j), f) in d0 {
                for (&(i, k2), g) in d1 {
                    if k2 == k {
                        let p = g.mul(f);
                        add_block(&mut acc, (i, j), p);
                    }
                }
            }
            if acc.values().any(|m| !m.is_zero()) {
                return false;
            }
        }
        true
    }

    /// Every block is homogeneous of degree 0 and intertwines the right
    /// actions of source and target.
    pub fn check_blocks(&self) -> Result<(), String> {
        for (&t, blocks) in &self.diffs {
            for (&(i, j), m) in blocks {
                m.check_homogeneous().map_err(|e| format!("d_{t} block ({i},{j}): {e}"))?;
                let src = self.bimodule(&self.groups[&t][j]);
                let tgt = self.bimodule(&self.groups[&(t + 1)][i]);
                for v in 0..self.ring().n {
                    if !m.mul(src.right_action(v)).same_entries(&tgt.right_action(v).mul(m)) {
                        return Err(format!("d_{t} block ({i},{j}) is not a bimodule map"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Graded Euler characteristic of the left-module characters.
    pub fn euler_character(&self) -> TriSeries {
        let mut s = TriSeries::zero(EXACT);
        for (&t, g) in &self.groups {
            let sign = if t.rem_euclid(2) == 0 { 1 } else { -1 };
            for sm in g {
                for d in self.degrees(sm) {
                    s.add_term(TriMono::q(d), Rational::from_i64(sign));
                }
            }
        }
        s
    }

    /// Homology of the complex of graded vector spaces in q-degree `q`
    /// (forgetting the bimodule structure), by t-degree.
    pub fn slice_homology(&self, q: i32) -> BTreeMap<i32, usize> {
        let ar = self.ring().arity();
        let bases: BTreeMap<i32, Vec<SliceBasis>> = self
            .groups
            .iter()
            .map(|(&t, g)| (t, g.iter().map(|s| SliceBasis::new(ar, &self.degrees(s), q)).collect()))
            .collect();
        let offsets = |t: i32| -> Vec<usize> {
            let mut acc = 0;
            bases.get(&t).map(|v| v.iter().map(|b| {
                let o = acc;
                acc += b.dim();
                o
            }).collect()).unwrap_or_default()
        };
        let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
        for (&t, blocks) in &self.diffs {
            let (so, to) = (offsets(t), offsets(t + 1));
            let sb = &bases[&t];
            let tb = &bases[&(t + 1)];
            let mut cols: Vec<BTreeMap<usize, K>> = vec![BTreeMap::new(); sb.iter().map(|b| b.dim()).sum()];
            for (&(i, j), m) in blocks {
                for (k, img) in slice_images(m, &tb[i], &sb[j]).into_iter().enumerate() {
                    for (r, c) in img {
                        let e = cols[so[j] + k].entry(to[i] + r).or_insert_with(K::zero);
                        *e = e.add(&c);
                    }
                }
            }
            let vecs: Vec<SparseVec<K>> =
                cols.into_iter().map(|c| c.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
            ranks.insert(t, rank(&vecs));
        }
        bases
            .iter()
            .map(|(&t, b)| {
                let dim: usize = b.iter().map(|x| x.dim()).sum();
                let r_out = ranks.get(&t).copied().unwrap_or(0);
                let r_in = ranks.get(&(t - 1)).copied().unwrap_or(0);
                (t, dim - r_out - r_in)
            })
            .filter(|(_, d)| *d > 0)
            .collect()
    }

    /// Homotopy-equivalent complex: every summand `A·i·i·C` is split as
    /// `A·i·C ⊕ q²A·i·C`, then differential blocks that are isomorphisms
    /// between equal summands are cancelled by Gaussian elimination.
    pub fn minimize(&self) -> ChainComplex<K> {
        let mut c = self.clone();
        while c.split_one() {}
        while c.cancel_one() {}
        c
    }

    fn split_one(&mut self) -> bool {
        let found = self.groups.iter().find_map(|(&t, g)| {
            g.iter().enumerate().find_map(|(idx, s)| s.word.windows(2).position(|w| w[0] == w[1]).map(|p| (t, idx, p)))
        });
        let Some((t, idx, p)) = found else { return false };
        let s = self.groups[&t][idx].clone();
        let len = s.word.len();
        let rc = 1usize << (len - p - 2);
        let rank = 1usize << len;
        let mut word = s.word.clone();
        word.remove(p);
        let s0 = Summand { word: word.clone(), shift: s.shift };
        let s1 = Summand { word, shift: s.shift + 2 };
        // old index -> (bit, new index)
        let split: Vec<(usize, usize)> = (0..rank)
            .map(|w| {
                let alpha = w / (4 * rc);
                let r = w % (4 * rc);
                (r / (2 * rc), alpha * 2 * rc + r % (2 * rc))
            })
            .collect();
        let (d0, d1) = (self.degrees(&s0), self.degrees(&s1));
        // incoming blocks: rows split
        if let Some(blocks) = self.diffs.remove(&(t - 1)) {
            let mut nb = Blocks::new();
            for ((i, j), m) in blocks {
                if i == idx {
                    for (bit, deg) in [(0usize, &d0), (1, &d1)] {
                        let sel: Vec<Option<usize>> = split.iter().map(|&(b, k)| (b == bit).then_some(k)).collect();
                        let part = select_rows(&m, &sel, deg.clone());
                        add_block(&mut nb, (idx + bit, j), part);
                    }
                } else {
                    add_block(&mut nb, (if i > idx { i + 1 } else { i }, j), m);
                }
            }
            self.diffs.insert(t - 1, nb);
        }
        if let Some(blocks) = self.diffs.remove(&t) {
            let mut nb = Blocks::new();
            for ((i, j), m) in blocks {
                if j == idx {
                    for (bit, deg) in [(0usize, &d0), (1, &d1)] {
                        let sel: Vec<Option<usize>> = split.iter().map(|&(b, k)| (b == bit).then_some(k)).collect();
                        let part = select_cols(&m, &sel, deg.clone());
                        add_block(&mut nb, (i, idx + bit), part);
                    }
                } else {
                    add_block(&mut nb, (i, if j > idx { j + 1 } else { j }), m);
                }
            }
            self.diffs.insert(t, nb);
        }
        let g = self.groups.get_mut(&t).expect("group");
        g[idx] = s0;
        g.insert(idx + 1, s1);
        true
    }

    fn cancel_one(&mut self) -> bool {
        let mut found = None;
        'outer: for (&t, blocks) in &self.diffs {
            for (&(i, j), m) in blocks {
                if self.groups[&t][j] == self.groups[&(t + 1)][i] {
                    if let Some(inv) = invert_graded(m) {
                        found = Some((t, i, j, inv));
                        break 'outer;
                    }
                }
            }
        }
        let Some((t, i, j, inv)) = found else { return false };
        let blocks = self.diffs.remove(&t).expect("blocks");
        let into_y: Vec<(usize, PolyMatrix<K>)> =
            blocks.iter().filter(|((ti, sj), _)| *ti == i && *sj != j).map(|((_, sj), m)| (*sj, m.clone())).collect();
        let from_x: Vec<(usize, PolyMatrix<K>)> =
            blocks.iter().filter(|((ti, sj), _)| *sj == j && *ti != i).map(|((ti, _), m)| (*ti, m.clone())).collect();
        let mut nb = Blocks::new();
        for ((ti, sj), m) in blocks {
            if ti != i && sj != j {
                add_block(&mut nb, (ti, sj), m);
            }
        }
        for (ti, b) in &from_x {
            let b_inv = b.mul(&inv);
            for (sj, c) in &into_y {
                let corr = b_inv.mul(c).neg();
                add_block(&mut nb, (*ti, *sj), corr);
            }
        }
        let reindexed: Blocks<K> = nb
            .into_iter()
            .map(|((ti, sj), m)| ((if ti > i { ti - 1 } else { ti }, if sj > j { sj - 1 } else { sj }), m))
            .collect();
        self.diffs.insert(t, reindexed);
        if let Some(prev) = self.diffs.remove(&(t - 1)) {
            let p: Blocks<K> = prev
                .into_iter()
                .filter(|((ti, _), _)| *ti != j)
                .map(|((ti, sj), m)| ((if ti > j { ti - 1 } else { ti }, sj), m))
                .collect();
            self.diffs.insert(t - 1, p);
        }
        if let Some(next) = self.diffs.remove(&(t + 1)) {
            let n: Blocks<K> = next
                .into_iter()
                .filter(|((_, sj), _)| *sj != i)
                .map(|((ti, sj), m)| ((ti, if sj > i { sj - 1 } else { sj }), m))
                .collect();
            self.diffs.insert(t + 1, n);
        }
        self.groups.get_mut(&t).expect("group").remove(j);
        self.groups.get_mut(&(t + 1)).expect("group").remove(i);
        self.groups.retain(|_, g| !g.is_empty());
        self.diffs.retain(|_, b| !b.is_empty());
        true
    }
}

fn add_block<K: Field>(blocks: &mut Blocks<K>, key: (usize, usize), m: PolyMatrix<K>) {
    if m.is_zero() {
        return;
    }
    match blocks.remove(&key) {
        Some(old) => {
            let s = old.add(&m);
            if !s.is_zero() {
                blocks.insert(key, s);
            }
        }
        None => {
            blocks.insert(key, m);
        }
    }
}

fn select_rows<K: Field>(m: &PolyMatrix<K>, sel: &[Option<usize>], row_degrees: Vec<i32>) -> PolyMatrix<K> {
    let mut columns: Vec<BTreeMap<usize, Polynomial<K>>> = vec![BTreeMap::new(); m.cols()];
    for (i, j, p) in m.entries() {
        if let Some(k) = sel[i] {
            columns[j].insert(k, p.clone());
        }
    }
    PolyMatrix::from_columns(m.arity(), row_degrees, m.col_degrees.clone(), columns)
}

fn select_cols<K: Field>(m: &PolyMatrix<K>, sel: &[Option<usize>], col_degrees: Vec<i32>) -> PolyMatrix<K> {
    let mut columns: Vec<BTreeMap<usize, Polynomial<K>>> = vec![BTreeMap::new(); col_degrees.len()];
    for (i, j, p) in m.entries() {
        if let Some(k) = sel[j] {
            columns[k].insert(i, p.clone());
        }
    }
    PolyMatrix::from_columns(m.arity(), m.row_degrees.clone(), col_degrees, columns)
}

/// Inverse of a degree-0 endomorphism of a free graded module, if it is
/// invertible: that happens exactly when its constant part is, and then
/// `φ⁻¹ = Σ_k (−φ₀⁻¹ N)^k φ₀⁻¹` with `N = φ − φ₀` nilpotent.
pub fn invert_graded<K: Field>(m: &PolyMatrix<K>) -> Option<PolyMatrix<K>> {
    let n = m.rows();
    if n != m.cols() || m.row_degrees != m.col_degrees {
        return None;
    }
    let ar = m.arity();
    let mut dense = vec![vec![K::zero(); n]; n];
    for (i, j, p) in m.entries() {
        if p.homogeneous_degree() == Some(0) {
            dense[i][j] = p.constant_term();
        }
    }
    let inv = dense_inverse(&dense)?;
    let mut cols: Vec<BTreeMap<usize, Polynomial<K>>> = vec![BTreeMap::new(); n];
    for (i, row) in inv.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                cols[j].insert(i, Polynomial::constant(ar, c.clone()));
            }
        }
    }
    let phi0_inv = PolyMatrix::from_columns(ar, m.row_degrees.clone(), m.col_degrees.clone(), cols);
    let nil = m.map_entries(|p| if p.homogeneous_degree() == Some(0) { Polynomial::zero(ar) } else { p.clone() });
    if nil.is_zero() {
        return Some(phi0_inv);
    }
    let step = phi0_inv.mul(&nil).neg();
    let mut term = phi0_inv.clone();
    let mut sum = phi0_inv;
    for _ in 0..=n {
        term = step.mul(&term);
        if term.is_zero() {
            return Some(sum);
        }
        sum = sum.add(&term);
    }
    unreachable!("degree-lowering part is not nilpotent")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cache(n: usize) -> Arc<BimoduleCache<Rational>> {
        Arc::new(BimoduleCache::new(PolyRing::full(n)))
    }

    fn shape(c: &ChainComplex<Rational>) -> Vec<(i32, Vec<Summand>)> {
        c.groups().iter().map(|(t, g)| (*t, g.clone())).collect()
    }

    #[test]
    fn empty_word_is_unit() {
        let c = ChainComplex::rouquier(cache(1), &BraidWord::unknot());
        assert_eq!(shape(&c), vec![(0, vec![Summand { word: vec![], shift: 0 }])]);
        assert!(c.differential(0).is_none());
    }

    #[test]
    fn single_crossing() {
        let c = ChainComplex::rouquier(cache(2), &BraidWord::new(2, vec![1]).unwrap());
        assert_eq!(c.num_summands(), 2);
        let d = c.differential(0).unwrap();
        assert_eq!(d[&(0, 0)], mult_matrix(PolyRing::full(2), 1));
        c.check_blocks().unwrap();
    }

    #[test]
    fn square_of_crossing_shape_and_d2() {
        let c = ChainComplex::rouquier(cache(2), &BraidWord::new(2, vec![1, 1]).unwrap());
        let words: Vec<Vec<Vec<usize>>> = c.groups().values().map(|g| g.iter().map(|s| s.word.clone()).collect()).collect();
        assert_eq!(words, vec![vec![vec![1, 1]], vec![vec![1], vec![1]], vec![vec![]]]);
        assert!(c.check_d_squared());
        c.check_blocks().unwrap();
    }

    #[test]
    fn tensor_with_unit() {
        let k = cache(3);
        let c = ChainComplex::rouquier(k.clone(), &BraidWord::new(3, vec![1, -2]).unwrap());
        let u = ChainComplex::unit(k);
        let cu = c.tensor(&u);
        assert_eq!(shape(&cu), shape(&c));
        assert_eq!(cu.diffs, c.diffs);
    }

    #[test]
    fn crossing_times_inverse_minimizes_to_unit() {
        let k = cache(2);
        let c = ChainComplex::rouquier(k, &BraidWord::new(2, vec![1, -1]).unwrap());
        assert!(c.check_d_squared());
        let m = c.minimize();
        assert_eq!(shape(&m), vec![(0, vec![Summand { word: vec![], shift: 0 }])]);
        for q in 0..6 {
            assert_eq!(c.slice_homology(q), m.slice_homology(q));
        }
    }

    #[test]
    fn minimal_complex_is_fixed() {
        let c = ChainComplex::rouquier(cache(2), &BraidWord::new(2, vec![1]).unwrap());
        let m = c.minimize();
        assert_eq!(shape(&m), shape(&c));
    }

    #[test]
    fn minimize_preserves_slice_homology() {
        let k = cache(3);
        let c = ChainComplex::rouquier(k, &BraidWord::new(3, vec![1, 2, -1, 1, 1]).unwrap());
        let m = c.minimize();
        assert!(m.check_d_squared());
        m.check_blocks().unwrap();
        assert!(m.num_summands() < c.num_summands());
        assert_eq!(c.euler_character(), m.euler_character());
        for q in -2..6 {
            assert_eq!(c.slice_homology(q), m.slice_homology(q), "q = {q}");
        }
    }
}
