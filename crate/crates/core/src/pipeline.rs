//! Triply graded homology of braid closures: Hochschild homology of every
//! chain group of the Rouquier complex, then homology of the induced
//! differential, one `(a, q)` slice at a time.
//!
//! Everything is computed over the reduced ring `Q[x_1..x_n]/(Σ x_j)`. The
//! full ring splits off a free `Q[e_1] ⊗ Λ[θ]` factor on the chain level,
//! so unreduced homology is the reduced-ring answer times `(1+a)/(1−q²)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::braid::{torus_braid, BraidWord, ClosureStats};
use crate::complexes::ChainComplex;
use crate::exactalg::linalg::rank;
use crate::exactalg::series::EXACT;
use crate::exactalg::slice::apply;
use crate::exactalg::{ExactAlgError, Field, FpA, FpB, Rational, SeriesCheck, SparseVec, TriMono, TriSeries};
use crate::hochschild::{free_factor, hh_slice, HHSlice, TriGradedDims};
use crate::soergel::{BimoduleCache, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("window must be positive, got {0}")]
    InvalidWindow(i32),
    #[error("symmetry asserted only for knots")]
    NotAKnot,
    #[error("reduced polynomial is not certified: support reaches the top of the window (q = {0})")]
    UncertifiedTail(i32),
    #[error(transparent)]
    Algebra(#[from] ExactAlgError),
    #[error("oracle failed: {0}")]
    Oracle(String),
}

type SliceMemo<K> = Mutex<HashMap<(Vec<usize>, i32), Arc<HHSlice<K>>>>;

fn memo_slice<K: Field>(c: &ChainComplex<K>, memo: &SliceMemo<K>, word: &[usize], base: i32) -> Arc<HHSlice<K>> {
    let key = (word.to_vec(), base);
    if let Some(s) = memo.lock().expect("memo").get(&key) {
        return s.clone();
    }
    let s = Arc::new(hh_slice(&c.cache().get(word), base));
    memo.lock().expect("memo").entry(key).or_insert(s).clone()
}

/// Image of a Koszul cochain of exterior degree `a` under a bimodule map,
/// applied to the module part of every `θ_J` component.
fn map_cochain<K: Field>(
    m: &crate::exactalg::PolyMatrix<K>,
    src: &HHSlice<K>,
    tgt: &HHSlice<K>,
    a: usize,
    v: &[(usize, K)],
) -> SparseVec<K> {
    let (sl, tl) = (&src.layers[a], &tgt.layers[a]);
    let (ds, dt) = (sl.basis.dim(), tl.basis.dim());
    let mut out: SparseVec<K> = Vec::new();
    let mut start = 0;
    while start < v.len() {
        let p = v[start].0 / ds;
        let mut end = start;
        while end < v.len() && v[end].0 / ds == p {
            end += 1;
        }
        let part: SparseVec<K> = v[start..end].iter().map(|(i, c)| (i - p * ds, c.clone())).collect();
        out.extend(apply(m, &tl.basis, &sl.basis, &part).into_iter().map(|(k, c)| (p * dt + k, c)));
        start = end;
    }
    out
}

/// `E_2` dimensions `t → dim` on the slice of exterior degree `a` and
/// total q-degree `q`.
fn e2_slice<K: Field>(c: &ChainComplex<K>, memo: &SliceMemo<K>, a: usize, q: i32) -> BTreeMap<i32, usize> {
    let mut slices: BTreeMap<i32, Vec<Arc<HHSlice<K>>>> = BTreeMap::new();
    let mut offsets: BTreeMap<i32, (Vec<usize>, usize)> = BTreeMap::new();
    for (&t, g) in c.groups() {
        let v: Vec<Arc<HHSlice<K>>> =
            g.iter().map(|s| memo_slice(c, memo, &s.word, q - s.shift - 2 * a as i32)).collect();
        let mut offs = Vec::with_capacity(v.len());
        let mut total = 0;
        for s in &v {
            offs.push(total);
            total += s.homology[a].dim();
        }
        offsets.insert(t, (offs, total));
        slices.insert(t, v);
    }
    let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
    for (&t, (offs, total)) in &offsets {
        let Some(blocks) = c.differential(t) else { continue };
        if *total == 0 {
            continue;
        }
        let (toffs, ttotal) = &offsets[&(t + 1)];
        if *ttotal == 0 {
            continue;
        }
        let mut cols: Vec<BTreeMap<usize, K>> = vec![BTreeMap::new(); *total];
        for (&(i, j), m) in blocks {
            let (src, tgt) = (&slices[&t][j], &slices[&(t + 1)][i]);
            if tgt.homology[a].dim() == 0 {
                continue;
            }
            for (r, rep) in src.homology[a].representatives().iter().enumerate() {
                let img = map_cochain(m, src, tgt, a, rep);
                for (k, x) in tgt.homology[a].project(&img) {
                    let e = cols[offs[j] + r].entry(toffs[i] + k).or_insert_with(K::zero);
                    *e = e.add(&x);
                }
            }
        }
        let vecs: Vec<SparseVec<K>> =
            cols.into_iter().map(|c| c.into_iter().filter(|(_, x)| !x.is_zero()).collect()).collect();
        ranks.insert(t, rank(&vecs));
    }
    offsets
        .iter()
        .map(|(&t, (_, total))| {
            let r = ranks.get(&t).copied().unwrap_or(0) + ranks.get(&(t - 1)).copied().unwrap_or(0);
            (t, total - r)
        })
        .filter(|(_, d)| *d > 0)
        .collect()
}

/// Raw `E_2` table of the complex over its own ring, keyed `(a, t, q)`
/// with `q` the total (module + shift) degree, for `q ≤ q_max`.
pub fn e2_table<K: Field>(c: &ChainComplex<K>, q_max: i32) -> TriGradedDims {
    let ar = c.ring().arity();
    let q_lo = c.groups().values().flatten().map(|s| s.shift).min().unwrap_or(0);
    let memo: SliceMemo<K> = Mutex::new(HashMap::new());
    let tasks: Vec<(usize, i32)> = (0..=ar).flat_map(|a| (q_lo..=q_max).map(move |q| (a, q))).collect();
    let results: Vec<((usize, i32), BTreeMap<i32, usize>)> =
        tasks.par_iter().map(|&(a, q)| ((a, q), e2_slice(c, &memo, a, q))).collect();
    let mut entries = BTreeMap::new();
    for ((a, q), dims) in results {
        for (t, d) in dims {
            entries.insert((a as i32, t, q), d as u64);
        }
    }
    TriGradedDims { entries, window: (q_lo, q_max) }
}

/// How slice ranks are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Arithmetic {
    /// Over `Q`.
    Exact,
    /// Over two large primes; falls back to `Q` when they disagree.
    Modular,
}

#[derive(Clone, Copy, Debug)]
pub struct HHHOptions {
    /// Highest raw q-degree computed (before normalization).
    pub window: i32,
    pub reduce: bool,
    pub minimize: bool,
    pub arithmetic: Arithmetic,
}

impl Default for HHHOptions {
    fn default() -> Self {
        HHHOptions { window: DEFAULT_WINDOW, reduce: true, minimize: true, arithmetic: Arithmetic::Modular }
    }
}

pub const DEFAULT_WINDOW: i32 = 24;

/// Support of a knot's table must end this far below the window top.
pub const CERTIFICATION_GAP: i32 = 8;

/// Grading conventions, fixed once and printed with every result.
///
/// Raw gradings: `a` is the Koszul (exterior) degree, `t` the homological
/// degree of the Rouquier complex, `q` the bimodule degree with
/// `deg x_j = q²`. The closure is then multiplied by
/// `(a q⁻²)^((e−n+c)/2) · t^(−(e+n−c)/2)` (writhe `e`, `n` strands,
/// `c` components), which makes both stabilizations invisible and the
/// unknot equal to `1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normalization {
    pub crossing_positive: &'static str,
    pub crossing_negative: &'static str,
    pub global_rule: &'static str,
    /// `s = s_sign · s_monomial` in the free factor `(1 − q²·a·s)/(1 − q²)`.
    pub s_sign: i32,
    pub s_monomial: TriMono,
    pub symmetry: &'static str,
    pub monomial: TriMono,
}

/// `s = −q⁻²`.
pub const S_MONOMIAL: TriMono = TriMono { a: 0, t: 0, q: -2 };

impl Normalization {
    pub fn for_closure(stats: &ClosureStats, strands: usize) -> Self {
        let (e, n, c) = (stats.writhe, strands as i32, stats.components as i32);
        let u = (e - n + c) / 2;
        let v = (e + n - c) / 2;
        Normalization {
            crossing_positive: "σ_i ↦ [B_i → R], t-degrees 0 → 1, map mult",
            crossing_negative: "σ_i⁻¹ ↦ [R → q⁻²B_i], t-degrees −1 → 0, map dot",
            global_rule: "(a q⁻²)^((e−n+c)/2) · t^(−(e+n−c)/2)",
            s_sign: -1,
            s_monomial: S_MONOMIAL,
            symmetry: "q ↦ t/q",
            monomial: TriMono::new(u, -v, -2 * u),
        }
    }
}

/// `(1 − q²·a·s)/(1 − q²)` to the given cutoff; with `s = −q⁻²` this is
/// the Hochschild homology `(1 + a)/(1 − q²)` of a polynomial ring in one
/// variable.
pub fn unknot_factor(q_cutoff: i32) -> TriSeries {
    free_factor(&TriSeries::one(), q_cutoff)
}

#[derive(Clone, Debug)]
pub struct HHHResult {
    pub braid: BraidWord,
    pub stats: ClosureStats,
    /// `E_2` over the reduced ring, raw gradings.
    pub raw: TriGradedDims,
    pub unreduced: TriSeries,
    /// Knots only.
    pub reduced: Option<TriSeries>,
    pub normalization: Normalization,
    pub window: i32,
    pub certified: bool,
    pub arithmetic: Arithmetic,
}

fn raw_table<K: Field>(w: &BraidWord, opts: &HHHOptions) -> TriGradedDims {
    let cache = Arc::new(BimoduleCache::<K>::new(PolyRing::reduced(w.strands())));
    let mut c = ChainComplex::rouquier(cache, w);
    if opts.minimize {
        c = c.minimize();
    }
    e2_table(&c, opts.window)
}

/// Raw table and the arithmetic that produced it.
pub fn compute_raw(w: &BraidWord, opts: &HHHOptions) -> (TriGradedDims, Arithmetic) {
    match opts.arithmetic {
        Arithmetic::Exact => (raw_table::<Rational>(w, opts), Arithmetic::Exact),
        Arithmetic::Modular => {
            let a = raw_table::<FpA>(w, opts);
            let b = raw_table::<FpB>(w, opts);
            if a == b {
                (a, Arithmetic::Modular)
            } else {
                (raw_table::<Rational>(w, opts), Arithmetic::Exact)
            }
        }
    }
}

pub fn compute_hhh(w: &BraidWord, opts: &HHHOptions) -> Result<HHHResult, PipelineError> {
    if opts.window <= 0 {
        return Err(PipelineError::InvalidWindow(opts.window));
    }
    let (raw, arithmetic) = compute_raw(w, opts);
    finish(w, raw, arithmetic, opts)
}

/// Normalize, add the free factor, and divide it back out for knots.
pub fn finish(w: &BraidWord, raw: TriGradedDims, arithmetic: Arithmetic, opts: &HHHOptions) -> Result<HHHResult, PipelineError> {
    let stats = w.closure_stats();
    let normalization = Normalization::for_closure(&stats, w.strands());
    let n = normalization.monomial;
    let reduced_ring = raw.to_series().shift(n);
    let unreduced = free_factor(&reduced_ring, reduced_ring.q_cutoff());
    let knot = stats.components == 1;
    let top = raw.entries.keys().map(|k| k.2).max();
    let certified = !knot || top.map_or(true, |q| q <= opts.window - CERTIFICATION_GAP);
    let reduced = if knot && opts.reduce {
        let one_minus_q2 = TriSeries::poly(&[(TriMono::ONE, 1), (TriMono::q(2), -1)]);
        let r = unreduced.mul(&one_minus_q2).divide_by_a_binomial(TriMono::ONE, 1)?;
        Some(if certified { r.with_cutoff(EXACT) } else { r })
    } else {
        None
    };
    Ok(HHHResult { braid: w.clone(), stats, raw, unreduced, reduced, normalization, window: opts.window, certified, arithmetic })
}

/// `a^i t^j q^k ↦ a^i t^(j+k) q^(−k)`, i.e. `q ↦ t/q`.
pub fn symmetry_involution(m: TriMono) -> TriMono {
    TriMono::new(m.a, m.t + m.q, -m.q)
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub symmetric: bool,
    pub violations: Vec<TriMono>,
}

pub fn verify_symmetry(res: &HHHResult) -> Result<SymmetryReport, PipelineError> {
    if res.stats.components != 1 {
        return Err(PipelineError::NotAKnot);
    }
    let top = res.raw.entries.keys().map(|k| k.2).max().unwrap_or(0);
    let reduced = match (&res.reduced, res.certified) {
        (Some(r), true) => r,
        _ => return Err(PipelineError::UncertifiedTail(top)),
    };
    let violations: Vec<TriMono> = reduced
        .terms()
        .filter(|(m, c)| reduced.coeff(symmetry_involution(**m)) != **c)
        .map(|(m, _)| *m)
        .collect();
    Ok(SymmetryReport { symmetric: violations.is_empty(), violations })
}

#[derive(Clone, Debug, Serialize)]
pub struct MarkovEntry {
    pub braid: String,
    pub strands: usize,
    pub agrees: bool,
    /// First differing coefficient `(monomial, base, variant)`.
    pub difference: Option<(TriMono, String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MarkovReport {
    pub all_agree: bool,
    pub entries: Vec<MarkovEntry>,
}

/// The series compared across Markov moves: reduced for knots, unreduced
/// otherwise.
fn invariant_series(r: &HHHResult) -> &TriSeries {
    r.reduced.as_ref().unwrap_or(&r.unreduced)
}

pub fn verify_markov(w: &BraidWord, opts: &HHHOptions) -> Result<MarkovReport, PipelineError> {
    let base = compute_hhh(w, opts)?;
    let mut entries = Vec::new();
    for v in w.markov_variants() {
        let r = compute_hhh(&v, opts)?;
        let diff = invariant_series(&base).first_difference(invariant_series(&r));
        entries.push(MarkovEntry {
            braid: v.to_text(),
            strands: v.strands(),
            agrees: diff.is_none(),
            difference: diff.map(|(m, x, y)| (m, x.to_string(), y.to_string())),
        });
    }
    Ok(MarkovReport { all_agree: entries.iter().all(|e| e.agrees), entries })
}

/// `t ↦ −1` applied to the reduced series for knots, the unreduced one
/// otherwise.
pub fn euler_characteristic(res: &HHHResult) -> TriSeries {
    invariant_series(res).euler_specialize()
}

/// Smallest raw window whose normalized output reaches q-degree `cutoff`.
pub fn window_for_cutoff(w: &BraidWord, cutoff: i32) -> i32 {
    let n = Normalization::for_closure(&w.closure_stats(), w.strands()).monomial;
    (cutoff - n.q).max(1)
}

/// Euler characteristic against the Hecke-algebra HOMFLY-PT polynomial.
pub fn verify_euler(res: &HHHResult) -> SeriesCheck {
    let chi = euler_characteristic(res);
    let c = res.stats.components;
    let h = crate::hecke::homfly(&res.braid).to_euler(c, c > 1, chi.q_cutoff());
    SeriesCheck::compare(&chi, &h)
}

/// `(1 − q²)·HHH(T(n, nk+1))` against the localization prediction, up to
/// q-degree `cutoff`. The window is raised as needed to reach `cutoff`.
pub fn verify_torus(n: usize, k: u32, cutoff: i32, opts: &HHHOptions) -> Result<SeriesCheck, PipelineError> {
    let w = torus_braid(n, n * k as usize + 1);
    let opts = HHHOptions { window: opts.window.max(window_for_cutoff(&w, cutoff) + 2), ..*opts };
    compare_torus(&compute_hhh(&w, &opts)?, n, k, cutoff)
}

/// As `verify_torus`, for an already computed `T(n, nk+1)`.
pub fn compare_torus(res: &HHHResult, n: usize, k: u32, cutoff: i32) -> Result<SeriesCheck, PipelineError> {
    assert_eq!(res.braid, torus_braid(n, n * k as usize + 1), "not the torus braid");
    let one_minus_q2 = TriSeries::poly(&[(TriMono::ONE, 1), (TriMono::q(2), -1)]);
    let lhs = res.unreduced.mul(&one_minus_q2).truncate(cutoff);
    let rhs = crate::hilb::torus_prediction(n, k, cutoff).map_err(|e| PipelineError::Oracle(e.to_string()))?;
    Ok(SeriesCheck::compare(&lhs, &rhs))
}

#[derive(Serialize)]
struct HHHDocument<'a> {
    schema: u32,
    braid: String,
    strands: usize,
    writhe: i32,
    components: usize,
    normalization: &'a Normalization,
    window: i32,
    certified: bool,
    arithmetic: Arithmetic,
    /// Rows of `unreduced` are complete up to this q-degree.
    unreduced_q_cutoff: i32,
    unreduced: Vec<[i64; 4]>,
    reduced: Option<Vec<[i64; 4]>>,
}

impl HHHResult {
    /// Drop everything above normalized q-degree `cutoff`.
    pub fn truncate(&mut self, cutoff: i32) {
        self.unreduced = self.unreduced.truncate(cutoff);
        if let Some(r) = &self.reduced {
            if !r.is_exact() {
                self.reduced = Some(r.truncate(cutoff));
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(HHHDocument {
            schema: 1,
            braid: self.braid.to_text(),
            strands: self.braid.strands(),
            writhe: self.stats.writhe,
            components: self.stats.components,
            normalization: &self.normalization,
            window: self.window,
            certified: self.certified,
            arithmetic: self.arithmetic,
            unreduced_q_cutoff: self.unreduced.q_cutoff(),
            unreduced: self.unreduced.to_rows(),
            reduced: self.reduced.as_ref().map(|r| r.to_rows()),
        })
        .expect("serializable")
    }
}

/// Pretty JSON with every array of scalars on one line, so table rows
/// `[a, t, q, dim]` diff line by line.
pub fn render_json(v: &serde_json::Value) -> String {
    fn go(v: &serde_json::Value, indent: usize, out: &mut String) {
        use serde_json::Value;
        let pad = |k: usize| "  ".repeat(k);
        match v {
            Value::Array(xs) if xs.iter().all(|x| !x.is_array() && !x.is_object()) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                out.push('[');
                out.push_str(&parts.join(", "));
                out.push(']');
            }
            Value::Array(xs) => {
                out.push_str("[\n");
                for (i, x) in xs.iter().enumerate() {
                    out.push_str(&pad(indent + 1));
                    go(x, indent + 1, out);
                    out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
                }
                out.push_str(&pad(indent));
                out.push(']');
            }
            Value::Object(m) if !m.is_empty() => {
                out.push_str("{\n");
                for (i, (k, x)) in m.iter().enumerate() {
                    out.push_str(&pad(indent + 1));
                    out.push_str(&Value::String(k.clone()).to_string());
                    out.push_str(": ");
                    go(x, indent + 1, out);
                    out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
                }
                out.push_str(&pad(indent));
                out.push('}');
            }
            _ => out.push_str(&v.to_string()),
        }
    }
    let mut out = String::new();
    go(v, 0, &mut out);
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact() -> HHHOptions {
        HHHOptions { arithmetic: Arithmetic::Exact, window: 16, ..Default::default() }
    }

    fn hhh(n: usize, w: &[i32]) -> HHHResult {
        compute_hhh(&BraidWord::new(n, w.to_vec()).unwrap(), &exact()).unwrap()
    }

    #[test]
    fn unknot() {
        let r = hhh(1, &[]);
        assert_eq!(r.reduced.as_ref().unwrap(), &TriSeries::one());
        assert!(r.unreduced.agrees_with(&unknot_factor(16)));
        assert_eq!(r.unreduced.q_cutoff(), 16);
    }

    #[test]
    fn stabilized_unknots() {
        for (n, w) in [(2, vec![1]), (2, vec![-1]), (3, vec![1, -2]), (3, vec![-1, -2])] {
            let r = hhh(n, &w);
            assert_eq!(r.reduced.as_ref().unwrap(), &TriSeries::one(), "{w:?}");
        }
    }

    #[test]
    fn trefoil_has_three_terms_and_is_symmetric() {
        let r = hhh(2, &[1, 1, 1]);
        let red = r.reduced.as_ref().unwrap();
        assert_eq!(red.len(), 3);
        assert!(red.all_nonneg_integers());
        assert!(verify_symmetry(&r).unwrap().symmetric);
    }

    #[test]
    fn unlink_is_square_of_unknot() {
        let r = hhh(2, &[]);
        assert!(r.reduced.is_none());
        let u = unknot_factor(16);
        assert!(r.unreduced.agrees_with(&u.mul(&u)));
        assert!(matches!(verify_symmetry(&r), Err(PipelineError::NotAKnot)));
    }

    #[test]
    fn minimize_does_not_change_tables() {
        let w = BraidWord::new(3, vec![1, -2, 1, -2]).unwrap();
        let on = compute_raw(&w, &exact()).0;
        let off = compute_raw(&w, &HHHOptions { minimize: false, ..exact() }).0;
        assert_eq!(on, off);
    }

    #[test]
    fn modular_agrees_with_exact() {
        let w = BraidWord::new(3, vec![1, -2, 1, -2]).unwrap();
        let e = compute_raw(&w, &exact()).0;
        let (m, how) = compute_raw(&w, &HHHOptions { arithmetic: Arithmetic::Modular, ..exact() });
        assert_eq!(how, Arithmetic::Modular);
        assert_eq!(e, m);
    }

    #[test]
    fn small_window_is_uncertified() {
        let w = BraidWord::new(2, vec![1, 1, 1]).unwrap();
        let r = compute_hhh(&w, &HHHOptions { window: 6, ..exact() }).unwrap();
        assert!(!r.certified);
        assert!(matches!(verify_symmetry(&r), Err(PipelineError::UncertifiedTail(_))));
        assert!(matches!(compute_hhh(&w, &HHHOptions { window: 0, ..exact() }), Err(PipelineError::InvalidWindow(0))));
    }

    #[test]
    fn unreduced_cutoff_follows_the_normalization() {
        // trefoil reduced-ring table reaches q^-2 after normalization
        let w = BraidWord::new(2, vec![1, 1, 1]).unwrap();
        let r = hhh(2, &[1, 1, 1]);
        assert_eq!(r.unreduced.q_cutoff(), 16 + Normalization::for_closure(&r.stats, 2).monomial.q);
        assert_eq!(window_for_cutoff(&w, r.unreduced.q_cutoff()), 16);
    }
}
