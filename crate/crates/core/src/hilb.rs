//! Torus-fixed-point localization on the Hilbert scheme of points in the
//! plane: characters of `det(B)^k ⊗ Λ•B` for torus knots `T(n, nk+1)`.
//!
//! Laurent polynomials are in `a, q₁, q₂`; the weight dictionary to
//! trigraded series is `q₁ = q²`, `q₂ = t²q⁻²`. Localization denominators
//! are `Π (1 − w)` over tangent weights `w`, which makes one point give
//! `1/((1 − q₁)(1 − q₂))`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exactalg::series::EXACT;
use crate::exactalg::{Rational, TriMono, TriSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbError {
    #[error("denominator factor (1 − q1^{0} q2^{1}) does not divide the numerator")]
    NotDivisible(i32, i32),
    #[error("denominator factor (1 − q1^{0} q2^{1}) has non-positive degree after the dictionary")]
    Divergent(i32, i32),
    #[error("zero tangent weight")]
    ZeroWeight,
}

/// Exponents `[a, i, j]` of `a^A q₁^i q₂^j`.
pub type Key = [i32; 3];

/// Weight `q₁^i q₂^j`.
pub type Weight = (i32, i32);

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<Key, BigInt>,
}

/// Term order compatible with multiplication: total q-degree, then q₁, then a.
fn order(k: &Key) -> (i32, i32, i32) {
    (k[1] + k[2], k[1], k[0])
}

fn is_positive(w: Weight) -> bool {
    w.0 + w.1 > 0 || (w.0 + w.1 == 0 && w.0 > 0)
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial([0, 0, 0], 1)
    }

    pub fn monomial(k: Key, c: i64) -> Self {
        let mut l = Self::zero();
        l.add_term(k, BigInt::from(c));
        l
    }

    pub fn weight(w: Weight) -> Self {
        Self::monomial([0, w.0, w.1], 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: Key) -> BigInt {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: Key, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                out.add_term([k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]], c1 * c2);
            }
        }
        out
    }

    pub fn shift(&self, k: Key) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(m, c)| ([m[0] + k[0], m[1] + k[1], m[2] + k[2]], c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Laurent {
        (0..e).fold(Laurent::one(), |acc, _| acc.mul(self))
    }

    /// `q₁ ↔ q₂`.
    pub fn swap_q(&self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(k, c)| ([k[0], k[2], k[1]], c.clone())).collect() }
    }

    /// Value at `a = 0, q₁ = q₂ = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.iter().filter(|(k, _)| k[0] == 0).map(|(_, c)| c.clone()).sum()
    }

    /// Exact quotient by `1 − w`, if it exists.
    pub fn div_one_minus(&self, w: Weight) -> Option<Laurent> {
        if w == (0, 0) {
            return if self.is_zero() { Some(Laurent::zero()) } else { None };
        }
        // divide by the factor written with a positive leading monomial
        let (w, flip) = if is_positive(w) { (w, false) } else { ((-w.0, -w.1), true) };
        let top = self.terms.keys().map(order).max()?;
        let mut rem = self.clone();
        let mut quot = Laurent::zero();
        while let Some(low) = rem.terms.keys().min_by_key(|k| order(k)).copied() {
            if order(&low) > top {
                return None;
            }
            let c = rem.terms[&low].clone();
            quot.add_term(low, c.clone());
            rem.add_term(low, -c.clone());
            rem.add_term([low[0], low[1] + w.0, low[2] + w.1], c);
        }
        // 1 − w⁻¹ = −w⁻¹(1 − w), so P/(1 − w⁻¹) = −w · P/(1 − w)
        Some(if flip { quot.shift([0, w.0, w.1]).neg() } else { quot })
    }

    /// `a^A q₁^i q₂^j ↦ a^A t^{2j} q^{2i−2j}`.
    pub fn to_trigraded(&self) -> TriSeries {
        let mut s = TriSeries::zero(EXACT);
        for (k, c) in &self.terms {
            s.add_term(dictionary(*k), Rational::from_integer(c.clone()));
        }
        s
    }
}

pub fn dictionary(k: Key) -> TriMono {
    TriMono::new(k[0], 2 * k[2], 2 * k[1] - 2 * k[2])
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut s = c.to_string();
                for (name, e) in [("a", k[0]), ("q1", k[1]), ("q2", k[2])] {
                    if e != 0 {
                        s.push_str(&format!("·{name}^{e}"));
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn transpose(&self) -> Partition {
        let w = self.parts.first().copied().unwrap_or(0);
        Partition { parts: (0..w).map(|c| self.parts.iter().filter(|&&p| p > c).count()).collect() }
    }

    /// Cells `(row, column)`; the column index is the co-arm, the row index
    /// the co-leg.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.parts.iter().enumerate().flat_map(|(r, &p)| (0..p).map(move |c| (r, c))).collect()
    }

    pub fn arm(&self, r: usize, c: usize) -> usize {
        self.parts[r] - c - 1
    }

    pub fn leg(&self, r: usize, c: usize) -> usize {
        self.parts.iter().filter(|&&p| p > c).count() - r - 1
    }

    /// `n(λ) = Σ_r r·λ_r`.
    pub fn n_stat(&self) -> usize {
        self.parts.iter().enumerate().map(|(r, p)| r * p).sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", p.join(","))
    }
}

/// All partitions of `n`, largest first part first.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug)]
pub struct FixedPointData {
    pub partition: Partition,
    /// `Σ_cells q₁^{a′} q₂^{l′}`.
    pub taut_character: Laurent,
    /// `q₁^{n(λ′)} q₂^{n(λ)}`.
    pub det_weight: Weight,
    pub tangent_weights: Vec<Weight>,
    pub tangent_character: Laurent,
}

pub fn fixed_point_data(lambda: &Partition) -> FixedPointData {
    let cells = lambda.cells();
    let mut taut = Laurent::zero();
    let mut tangent_weights = Vec::with_capacity(2 * cells.len());
    for &(r, c) in &cells {
        taut = taut.add(&Laurent::weight((c as i32, r as i32)));
        let (a, l) = (lambda.arm(r, c) as i32, lambda.leg(r, c) as i32);
        tangent_weights.push((1 + a, -l));
        tangent_weights.push((-a, 1 + l));
    }
    let tangent_character = tangent_weights.iter().fold(Laurent::zero(), |acc, w| acc.add(&Laurent::weight(*w)));
    FixedPointData {
        partition: lambda.clone(),
        taut_character: taut,
        det_weight: (lambda.transpose().n_stat() as i32, lambda.n_stat() as i32),
        tangent_weights,
        tangent_character,
    }
}

/// a-weight carried by each cell in `Λ•B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellWeights {
    /// `1 + a·χ_c⁻¹`: `B` is the dual of the tautological bundle.
    Dual,
    /// `1 + a·χ_c`.
    Tautological,
}

/// `numerator / Π (1 − w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalTerm {
    pub numerator: Laurent,
    pub denominator: Vec<Weight>,
}

impl RationalTerm {
    /// Rewrite every factor with a positive leading monomial.
    fn canonical(&self) -> Result<RationalTerm, HilbError> {
        let mut num = self.numerator.clone();
        let mut den = Vec::with_capacity(self.denominator.len());
        for &w in &self.denominator {
            if w == (0, 0) {
                return Err(HilbError::ZeroWeight);
            }
            if is_positive(w) {
                den.push(w);
            } else {
                // 1/(1 − w) = −w⁻¹/(1 − w⁻¹)
                num = num.shift([0, -w.0, -w.1]).neg();
                den.push((-w.0, -w.1));
            }
        }
        den.sort();
        Ok(RationalTerm { numerator: num, denominator: den })
    }
}

#[derive(Clone, Debug)]
pub struct LocalizationSum {
    pub terms: Vec<(Partition, RationalTerm)>,
}

fn exterior(data: &FixedPointData, weights: CellWeights) -> Laurent {
    data.taut_character.terms().fold(Laurent::one(), |acc, (k, _)| {
        let (i, j) = match weights {
            CellWeights::Dual => (-k[1], -k[2]),
            CellWeights::Tautological => (k[1], k[2]),
        };
        acc.mul(&Laurent::one().add(&Laurent::monomial([1, i, j], 1)))
    })
}

fn det_power(data: &FixedPointData, k: u32) -> Laurent {
    Laurent::weight(data.det_weight).pow(k)
}

/// Sum over the fixed points of the full Hilbert scheme of
/// `det^k · Π_cells (1 + a·weight) / Π_tangent (1 − w)`.
pub fn localization_sum(n: usize, k: u32, weights: CellWeights) -> LocalizationSum {
    let terms = partitions(n)
        .par_iter()
        .map(|lambda| {
            let d = fixed_point_data(lambda);
            let numerator = det_power(&d, k).mul(&exterior(&d, weights));
            (lambda.clone(), RationalTerm { numerator, denominator: d.tangent_weights.clone() })
        })
        .collect();
    LocalizationSum { terms }
}

/// The same sum restricted to the punctual Hilbert scheme (subschemes
/// supported at the origin): each term gains the factor
/// `(1 − q₁)(1 − q₂) · Π_{c ≠ (0,0)} (1 − χ_c) · Σ_c χ_c`.
pub fn punctual_sum(n: usize, k: u32, weights: CellWeights) -> LocalizationSum {
    let terms = partitions(n)
        .par_iter()
        .map(|lambda| {
            let d = fixed_point_data(lambda);
            let mut extra = Laurent::one().sub(&Laurent::weight((1, 0))).mul(&Laurent::one().sub(&Laurent::weight((0, 1))));
            for (key, _) in d.taut_character.terms() {
                if key[1] != 0 || key[2] != 0 {
                    extra = extra.mul(&Laurent::one().sub(&Laurent::weight((key[1], key[2]))));
                }
            }
            extra = extra.mul(&d.taut_character);
            let numerator = det_power(&d, k).mul(&exterior(&d, weights)).mul(&extra);
            (lambda.clone(), RationalTerm { numerator, denominator: d.tangent_weights.clone() })
        })
        .collect();
    LocalizationSum { terms }
}

impl LocalizationSum {
    /// One fraction over a common denominator, with every denominator factor
    /// that divides the numerator cancelled.
    pub fn combine(&self) -> Result<RationalTerm, HilbError> {
        let canon: Vec<RationalTerm> = self.terms.iter().map(|(_, t)| t.canonical()).collect::<Result<_, _>>()?;
        let mut common: BTreeMap<Weight, usize> = BTreeMap::new();
        for t in &canon {
            let mut m: BTreeMap<Weight, usize> = BTreeMap::new();
            for w in &t.denominator {
                *m.entry(*w).or_default() += 1;
            }
            for (w, c) in m {
                let e = common.entry(w).or_default();
                *e = (*e).max(c);
            }
        }
        let mut num = Laurent::zero();
        for t in &canon {
            let mut missing = common.clone();
            for w in &t.denominator {
                *missing.get_mut(w).expect("factor") -= 1;
            }
            let mut part = t.numerator.clone();
            for (w, c) in missing {
                for _ in 0..c {
                    part = part.mul(&Laurent::one().sub(&Laurent::weight(w)));
                }
            }
            num = num.add(&part);
        }
        let mut den = Vec::new();
        for (w, c) in common {
            for _ in 0..c {
                match num.div_one_minus(w) {
                    Some(q) => num = q,
                    None => den.push(w),
                }
            }
        }
        Ok(RationalTerm { numerator: num, denominator: den })
    }

    /// Power-series expansion in `q₁, q₂` up to total degree `cutoff`.
    pub fn expand(&self, cutoff: i32) -> Result<Laurent, HilbError> {
        let t = self.combine()?;
        let mut out = t.numerator.clone();
        for &w in &t.denominator {
            if w.0 < 0 || w.1 < 0 {
                return Err(HilbError::NotDivisible(w.0, w.1));
            }
            let mut acc = Laurent::zero();
            for (key, c) in out.terms() {
                let mut m = *key;
                while m[1] + m[2] <= cutoff {
                    acc.add_term(m, c.clone());
                    m = [m[0], m[1] + w.0, m[2] + w.1];
                }
            }
            out = acc;
        }
        out.terms.retain(|k, _| k[1] + k[2] <= cutoff);
        Ok(out)
    }

    /// The sum as a Laurent polynomial; fails unless every denominator
    /// factor cancels.
    pub fn polynomial(&self) -> Result<Laurent, HilbError> {
        let t = self.combine()?;
        match t.denominator.first() {
            None => Ok(t.numerator),
            Some(w) => Err(HilbError::NotDivisible(w.0, w.1)),
        }
    }
}

/// `(a t⁻¹)^((e−n+1)/2)` for the torus braid of `T(n, nk+1)`, writhe
/// `e = (n−1)(nk+1)`.
pub fn calibration_monomial(n: usize, k: u32) -> TriMono {
    let u = (n * (n - 1)) as i32 * k as i32 / 2;
    TriMono::new(u, -u, 0)
}

/// Character of `det(B)^k ⊗ Λ•B` on the punctual Hilbert scheme under the
/// dictionary, times the calibration monomial, truncated at `cutoff`. It
/// is compared with `(1 − q²)·HHH(T(n, nk+1))`.
pub fn torus_prediction(n: usize, k: u32, cutoff: i32) -> Result<TriSeries, HilbError> {
    let p = punctual_sum(n, k, CellWeights::Dual).polynomial()?;
    Ok(p.to_trigraded().shift(calibration_monomial(n, k)).truncate(cutoff))
}

/// `torus_prediction` as a schema-1 JSON document, with the conventions
/// that produced it.
pub fn prediction_json(n: usize, k: u32, cutoff: i32) -> Result<serde_json::Value, HilbError> {
    let s = torus_prediction(n, k, cutoff)?;
    Ok(serde_json::json!({
        "schema": 1,
        "oracle": "hilb",
        "n": n,
        "k": k,
        "knot": format!("T({},{})", n, n * k as usize + 1),
        "cutoff": cutoff,
        "dictionary": "q1 = q^2, q2 = t^2 q^-2",
        "cell_weights": "1 + a·chi^-1",
        "denominators": "prod (1 - w) over tangent weights w",
        "calibration": calibration_monomial(n, k),
        "series": s.to_rows(),
    }))
}

/// The full-Hilbert-scheme sum expanded as a trigraded series. Under the
/// dictionary the `q₂`-direction has negative q-degree, so this fails
/// whenever such a factor survives.
pub fn full_prediction(n: usize, k: u32, cutoff: i32) -> Result<TriSeries, HilbError> {
    let t = localization_sum(n, k, CellWeights::Dual).combine()?;
    let den: Vec<TriMono> = t.denominator.iter().map(|w| dictionary([0, w.0, w.1])).collect();
    if let Some(w) = t.denominator.iter().find(|w| dictionary([0, w.0, w.1]).q <= 0) {
        return Err(HilbError::Divergent(w.0, w.1));
    }
    let s = crate::exactalg::series_expand(&t.numerator.to_trigraded(), &den, cutoff).expect("positive denominators");
    Ok(s.shift(calibration_monomial(n, k)))
}

/// Signs of a polynomial's coefficients.
pub fn all_nonnegative(l: &Laurent) -> bool {
    l.terms().all(|(_, c)| !c.is_negative())
}

impl Laurent {
    pub fn constant_term(&self) -> BigInt {
        self.coeff([0, 0, 0])
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&[0, 0, 0]).is_some_and(|c| c.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(i: i32, j: i32) -> Laurent {
        Laurent::weight((i, j))
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(0), vec![Partition::new(vec![])]);
        assert_eq!(partitions(2), vec![Partition::new(vec![2]), Partition::new(vec![1, 1])]);
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(6).len(), 11);
        for p in partitions(5) {
            assert_eq!(p.size(), 5);
            assert_eq!(p.transpose().transpose(), p);
        }
    }

    #[test]
    fn fixed_point_examples() {
        let one = fixed_point_data(&Partition::new(vec![1]));
        assert!(one.taut_character.is_one());
        assert_eq!(one.det_weight, (0, 0));
        assert_eq!(one.tangent_character, w(1, 0).add(&w(0, 1)));

        let two = fixed_point_data(&Partition::new(vec![2]));
        assert_eq!(two.taut_character, Laurent::one().add(&w(1, 0)));
        assert_eq!(two.det_weight, (1, 0));
        assert_eq!(two.tangent_character, w(2, 0).add(&w(-1, 1)).add(&w(1, 0)).add(&w(0, 1)));

        let col = fixed_point_data(&Partition::new(vec![1, 1]));
        assert_eq!(col.taut_character, two.taut_character.swap_q());
        assert_eq!(col.tangent_character, two.tangent_character.swap_q());
        assert_eq!(col.det_weight, (0, 1));
    }

    #[test]
    fn characters_have_expected_size() {
        for n in 1..=5 {
            for p in partitions(n) {
                let d = fixed_point_data(&p);
                assert_eq!(d.taut_character.eval_one(), BigInt::from(n));
                assert_eq!(d.tangent_weights.len(), 2 * n);
            }
        }
    }

    #[test]
    fn division_by_binomials() {
        let p = Laurent::one().sub(&w(1, 0)).mul(&w(0, 1).add(&Laurent::monomial([1, 2, -1], 3)));
        let q = p.div_one_minus((1, 0)).unwrap();
        assert_eq!(q, w(0, 1).add(&Laurent::monomial([1, 2, -1], 3)));
        assert_eq!(p.div_one_minus((-1, 0)).unwrap().mul(&Laurent::one().sub(&w(-1, 0))), p);
        assert!(w(0, 1).div_one_minus((1, 0)).is_none());
    }

    #[test]
    fn one_point() {
        for k in 0..4 {
            let t = localization_sum(1, k, CellWeights::Dual).combine().unwrap();
            assert_eq!(t.numerator, Laurent::one().add(&Laurent::monomial([1, 0, 0], 1)));
            assert_eq!(t.denominator, vec![(0, 1), (1, 0)]);
        }
    }

    #[test]
    fn two_points_full_sum_is_nonnegative() {
        for k in 0..3 {
            let s = localization_sum(2, k, CellWeights::Dual).expand(10).unwrap();
            assert!(all_nonnegative(&s), "k = {k}: {s}");
            if k == 0 {
                assert_eq!(s.constant_term(), BigInt::from(1));
            }
        }
    }

    #[test]
    fn transpose_symmetry() {
        for n in 1..=4 {
            for k in 0..3 {
                for sum in [localization_sum(n, k, CellWeights::Dual), punctual_sum(n, k, CellWeights::Dual)] {
                    let c = sum.combine().unwrap();
                    let mut den_swapped: Vec<Weight> = c.denominator.iter().map(|&(i, j)| (j, i)).collect();
                    den_swapped.sort();
                    let swapped = RationalTerm { numerator: c.numerator.swap_q(), denominator: den_swapped }.canonical().unwrap();
                    assert_eq!(swapped, c.canonical().unwrap(), "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn punctual_sums_are_polynomials() {
        for n in 1..=4 {
            for k in 0..3 {
                let p = punctual_sum(n, k, CellWeights::Dual).polynomial().unwrap();
                assert!(all_nonnegative(&p));
                // a = 0, q₁ = q₂ = 1: the number of parking-function-like
                // objects is positive, never zero
                assert!(p.eval_one() > BigInt::from(0));
            }
        }
    }

    #[test]
    fn unknot_points() {
        // T(n, 1) is the unknot: the punctual character is (1 + a) up to a
        // monomial for every n
        for n in 1..=4 {
            let p = punctual_sum(n, 0, CellWeights::Dual).polynomial().unwrap();
            assert_eq!(p.len(), 2, "n = {n}: {p}");
        }
    }

    #[test]
    fn trefoil_prediction() {
        let p = punctual_sum(2, 1, CellWeights::Dual).polynomial().unwrap();
        let a = Laurent::monomial([1, 0, 0], 1);
        let expected = Laurent::one().add(&a).mul(&w(1, 0).add(&w(0, 1)).add(&a));
        assert_eq!(p, expected);
    }

    #[test]
    fn tautological_cell_weights_disagree() {
        let dual = punctual_sum(2, 1, CellWeights::Dual).polynomial().unwrap();
        let taut = punctual_sum(2, 1, CellWeights::Tautological).polynomial();
        assert_ne!(taut.ok(), Some(dual));
    }

    #[test]
    fn full_prediction_diverges_under_dictionary() {
        assert!(matches!(full_prediction(1, 5, 20), Err(HilbError::Divergent(0, 1))));
    }

    #[test]
    fn unknot_prediction() {
        let p = torus_prediction(1, 5, 20).unwrap();
        assert_eq!(p, TriSeries::poly(&[(TriMono::ONE, 1), (TriMono::new(1, 0, 0), 1)]).truncate(20));
    }
}
