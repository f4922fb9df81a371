//! Trigraded Laurent series in `a`, `t`, `q`, certified up to a q-cutoff.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::field::{rational_string, Field, Rational};
use super::ExactAlgError;

/// Cutoff used for series that are known exactly (finite Laurent polynomials).
pub const EXACT: i32 = i32::MAX / 4;

/// Exponent triple `a^a t^t q^q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct TriMono {
    pub a: i32,
    pub t: i32,
    pub q: i32,
}

impl TriMono {
    pub const ONE: TriMono = TriMono { a: 0, t: 0, q: 0 };

    pub fn new(a: i32, t: i32, q: i32) -> Self {
        TriMono { a, t, q }
    }

    pub fn q(q: i32) -> Self {
        TriMono { a: 0, t: 0, q }
    }

    pub fn mul(self, o: TriMono) -> TriMono {
        TriMono { a: self.a + o.a, t: self.t + o.t, q: self.q + o.q }
    }

    pub fn pow(self, k: i32) -> TriMono {
        TriMono { a: self.a * k, t: self.t * k, q: self.q * k }
    }

    pub fn inv(self) -> TriMono {
        self.pow(-1)
    }
}

impl fmt::Display for TriMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("a", self.a), ("t", self.t), ("q", self.q)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Coefficients are keyed by `(a, t, q)`; every stored coefficient is
/// nonzero and has `q <= q_cutoff`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriSeries {
    coeffs: BTreeMap<TriMono, Rational>,
    q_cutoff: i32,
}

impl TriSeries {
    pub fn zero(q_cutoff: i32) -> Self {
        TriSeries { coeffs: BTreeMap::new(), q_cutoff }
    }

    pub fn one() -> Self {
        Self::monomial(TriMono::ONE, 1)
    }

    pub fn monomial(m: TriMono, c: i64) -> Self {
        let mut s = Self::zero(EXACT);
        s.add_term(m, Rational::from_i64(c));
        s
    }

    /// Finite Laurent polynomial from `(monomial, coefficient)` pairs.
    pub fn poly(terms: &[(TriMono, i64)]) -> Self {
        let mut s = Self::zero(EXACT);
        for &(m, c) in terms {
            s.add_term(m, Rational::from_i64(c));
        }
        s
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (TriMono, Rational)>, q_cutoff: i32) -> Self {
        let mut s = Self::zero(q_cutoff);
        for (m, c) in coeffs {
            s.add_term(m, c);
        }
        s
    }

    pub fn q_cutoff(&self) -> i32 {
        self.q_cutoff
    }

    pub fn is_exact(&self) -> bool {
        self.q_cutoff >= EXACT
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, m: TriMono) -> Rational {
        self.coeffs.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TriMono, &Rational)> {
        self.coeffs.iter()
    }

    /// Adds `c * m`, silently dropping it beyond the cutoff.
    pub fn add_term(&mut self, m: TriMono, c: Rational) {
        if c.is_zero() || m.q > self.q_cutoff {
            return;
        }
        let e = self.coeffs.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn min_q(&self) -> Option<i32> {
        self.coeffs.keys().map(|m| m.q).min()
    }

    pub fn max_q(&self) -> Option<i32> {
        self.coeffs.keys().map(|m| m.q).max()
    }

    pub fn max_a(&self) -> Option<i32> {
        self.coeffs.keys().map(|m| m.a).max()
    }

    pub fn min_a(&self) -> Option<i32> {
        self.coeffs.keys().map(|m| m.a).min()
    }

    /// Drop everything above `cutoff` (never raises the cutoff).
    pub fn truncate(&self, cutoff: i32) -> Self {
        let c = cutoff.min(self.q_cutoff);
        TriSeries {
            coeffs: self.coeffs.iter().filter(|(m, _)| m.q <= c).map(|(m, v)| (*m, v.clone())).collect(),
            q_cutoff: c,
        }
    }

    pub fn with_cutoff(mut self, cutoff: i32) -> Self {
        self.coeffs.retain(|m, _| m.q <= cutoff);
        self.q_cutoff = cutoff;
        self
    }

    pub fn add(&self, o: &TriSeries) -> TriSeries {
        let mut out = TriSeries { coeffs: BTreeMap::new(), q_cutoff: self.q_cutoff.min(o.q_cutoff) };
        for (m, c) in self.coeffs.iter().chain(o.coeffs.iter()) {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> TriSeries {
        TriSeries { coeffs: self.coeffs.iter().map(|(m, c)| (*m, -c)).collect(), q_cutoff: self.q_cutoff }
    }

    pub fn sub(&self, o: &TriSeries) -> TriSeries {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rational) -> TriSeries {
        TriSeries::from_coeffs(self.coeffs.iter().map(|(m, v)| (*m, v * c)), self.q_cutoff)
    }

    /// Multiply by a monomial; the cutoff moves with the q-shift.
    pub fn shift(&self, m: TriMono) -> TriSeries {
        TriSeries {
            coeffs: self.coeffs.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
            q_cutoff: sat_add(self.q_cutoff, m.q),
        }
    }

    /// Product. A coefficient at `q = e` is certified only if every pair of
    /// factors contributing to it is certified, which gives the new cutoff
    /// `min(c1 + low2, c2 + low1)`.
    pub fn mul(&self, o: &TriSeries) -> TriSeries {
        let low1 = self.min_q().unwrap_or(0);
        let low2 = o.min_q().unwrap_or(0);
        let cutoff = sat_add(self.q_cutoff, low2).min(sat_add(o.q_cutoff, low1));
        let mut out = TriSeries::zero(cutoff);
        for (m1, c1) in &self.coeffs {
            for (m2, c2) in &o.coeffs {
                let m = m1.mul(*m2);
                if m.q <= cutoff {
                    out.add_term(m, c1 * c2);
                }
            }
        }
        out
    }

    /// Exact division by `(1 + c·a·m)` where `m` carries no `a`. Works
    /// a-degree by a-degree; fails if a remainder survives.
    pub fn divide_by_a_binomial(&self, m: TriMono, c: i64) -> Result<TriSeries, ExactAlgError> {
        assert_eq!(m.a, 0);
        let factor = TriMono { a: 1, ..m };
        let (lo, hi) = match (self.min_a(), self.max_a()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Ok(self.clone()),
        };
        // each a-level shifts q by m.q; a negative shift costs certified range
        let loss = if m.q < 0 { -m.q * (hi - lo + 1) } else { 0 };
        let cutoff = if self.is_exact() { EXACT } else { self.q_cutoff - loss };
        let cr = Rational::from_i64(c);
        let mut rem = self.clone();
        let mut out = TriSeries::zero(cutoff);
        for level in lo..=hi {
            let layer: Vec<(TriMono, Rational)> =
                rem.coeffs.iter().filter(|(k, _)| k.a == level).map(|(k, v)| (*k, v.clone())).collect();
            for (k, v) in layer {
                out.add_term(k, v.clone());
                rem.add_term(k, -v.clone());
                rem.add_term(k.mul(factor), -(v * &cr));
            }
        }
        let leftover: Vec<_> = rem.coeffs.iter().filter(|(k, _)| k.q <= cutoff).collect();
        if !leftover.is_empty() {
            return Err(ExactAlgError::NotDivisible(format!(
                "{} terms remain, first {}",
                leftover.len(),
                leftover[0].0
            )));
        }
        Ok(out)
    }

    /// Substitute a grading change `a^i t^j q^k -> image(a)^i image(t)^j image(q)^k`.
    /// The result is marked exact only if the input was.
    pub fn regrade(&self, a: TriMono, t: TriMono, q: TriMono, cutoff: i32) -> TriSeries {
        let mut out = TriSeries::zero(cutoff);
        for (m, c) in &self.coeffs {
            let k = a.pow(m.a).mul(t.pow(m.t)).mul(q.pow(m.q));
            out.add_term(k, c.clone());
        }
        out
    }

    /// Specialize `t -> -1` (sign of t-parity).
    pub fn euler_specialize(&self) -> TriSeries {
        let mut out = TriSeries::zero(self.q_cutoff);
        for (m, c) in &self.coeffs {
            let s = if m.t.rem_euclid(2) == 0 { c.clone() } else { -c };
            out.add_term(TriMono { t: 0, ..*m }, s);
        }
        out
    }

    /// Coefficientwise comparison on the common certified range.
    pub fn agrees_with(&self, o: &TriSeries) -> bool {
        self.first_difference(o).is_none()
    }

    pub fn first_difference(&self, o: &TriSeries) -> Option<(TriMono, Rational, Rational)> {
        let c = self.q_cutoff.min(o.q_cutoff);
        let keys: std::collections::BTreeSet<TriMono> =
            self.coeffs.keys().chain(o.coeffs.keys()).filter(|m| m.q <= c).copied().collect();
        let mut keys: Vec<TriMono> = keys.into_iter().collect();
        keys.sort_by_key(|m| (m.q, m.a, m.t));
        keys.into_iter()
            .map(|m| (m, self.coeff(m), o.coeff(m)))
            .find(|(_, x, y)| x != y)
    }

    pub fn all_nonneg_integers(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer() && !c.is_negative())
    }

    /// Sorted `[a, t, q, coeff]` rows; coefficients must be integers.
    pub fn to_rows(&self) -> Vec<[i64; 4]> {
        let mut rows: Vec<[i64; 4]> = self
            .coeffs
            .iter()
            .map(|(m, c)| {
                let v = super::field::rational_to_i64(c).expect("integral coefficient");
                [m.a as i64, m.t as i64, m.q as i64, v]
            })
            .collect();
        rows.sort();
        rows
    }
}

fn sat_add(c: i32, d: i32) -> i32 {
    if c >= EXACT {
        EXACT
    } else {
        c + d
    }
}

impl fmt::Display for TriSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        let mut keys: Vec<&TriMono> = self.coeffs.keys().collect();
        keys.sort_by_key(|m| (m.q, m.a, m.t));
        for (i, m) in keys.into_iter().enumerate() {
            let c = &self.coeffs[m];
            let neg = c.is_negative();
            let abs = c.abs();
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let mono = *m != TriMono::ONE;
            if !abs.is_one() || !mono {
                write!(f, "{}", rational_string(&abs))?;
                if mono {
                    write!(f, " ")?;
                }
            }
            if mono {
                write!(f, "{}", m)?;
            }
        }
        if !self.is_exact() {
            write!(f, " + O(q^{})", self.q_cutoff + 1)?;
        }
        Ok(())
    }
}

/// Coefficientwise comparison on the common range, with the first
/// differing coefficient `(monomial, lhs, rhs)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesCheck {
    pub holds: bool,
    /// Highest q-degree compared.
    pub compared_to: i32,
    pub first_difference: Option<(TriMono, String, String)>,
}

impl SeriesCheck {
    pub fn compare(lhs: &TriSeries, rhs: &TriSeries) -> Self {
        let d = lhs.first_difference(rhs);
        SeriesCheck {
            holds: d.is_none(),
            compared_to: lhs.q_cutoff().min(rhs.q_cutoff()),
            first_difference: d.map(|(m, x, y)| (m, x.to_string(), y.to_string())),
        }
    }
}

/// Expand `num / Π (1 - den_i)` up to q-exponent `cutoff`.
pub fn series_expand(num: &TriSeries, den: &[TriMono], cutoff: i32) -> Result<TriSeries, ExactAlgError> {
    if let Some(bad) = den.iter().find(|m| m.q <= 0) {
        return Err(ExactAlgError::NonPositiveDenominator(*bad));
    }
    let mut acc = num.truncate(cutoff);
    for &m in den {
        let low = acc.min_q().unwrap_or(cutoff);
        let mut geo = TriSeries::zero(EXACT);
        let mut k = 0;
        while low + k * m.q <= cutoff {
            geo.add_term(m.pow(k), Rational::one());
            k += 1;
        }
        let mut next = TriSeries::zero(acc.q_cutoff);
        for (m1, c1) in &acc.coeffs {
            for (m2, c2) in &geo.coeffs {
                next.add_term(m1.mul(*m2), c1 * c2);
            }
        }
        acc = next;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i32) -> TriMono {
        TriMono::q(e)
    }

    #[test]
    fn geometric_series() {
        let s = series_expand(&TriSeries::one(), &[q(2)], 6).unwrap();
        let want = TriSeries::poly(&[(q(0), 1), (q(2), 1), (q(4), 1), (q(6), 1)]).with_cutoff(6);
        assert_eq!(s, want);
    }

    #[test]
    fn free_exterior_factor() {
        let num = TriSeries::poly(&[(q(0), 1), (TriMono::new(1, 0, 0), 1)]);
        let s = series_expand(&num, &[q(2)], 2).unwrap();
        let want = TriSeries::poly(&[(q(0), 1), (TriMono::new(1, 0, 0), 1), (q(2), 1), (TriMono::new(1, 0, 2), 1)]);
        assert!(s.agrees_with(&want));
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn telescoping() {
        let num = TriSeries::poly(&[(q(0), 1), (q(4), -1)]);
        let s = series_expand(&num, &[q(2)], 8).unwrap();
        assert_eq!(s, TriSeries::poly(&[(q(0), 1), (q(2), 1)]).with_cutoff(8));
    }

    #[test]
    fn non_positive_denominator_rejected() {
        let err = series_expand(&TriSeries::one(), &[TriMono::new(1, 0, 0)], 4).unwrap_err();
        assert!(matches!(err, ExactAlgError::NonPositiveDenominator(_)));
    }

    #[test]
    fn product_cutoff_tracks_low_degrees() {
        let a = series_expand(&TriSeries::one(), &[q(2)], 10).unwrap();
        let b = TriSeries::poly(&[(q(-2), 1)]);
        let p = a.mul(&b);
        assert_eq!(p.q_cutoff(), 8);
        assert_eq!(p.coeff(q(-2)), Rational::one());
    }

    #[test]
    fn a_binomial_division_roundtrip() {
        let r = TriSeries::poly(&[(q(0), 1), (TriMono::new(1, 3, 2), 2)]);
        let f = TriSeries::poly(&[(q(0), 1), (TriMono::new(1, 0, -2), 1)]);
        let p = r.mul(&f);
        assert_eq!(p.divide_by_a_binomial(q(-2), 1).unwrap(), r);
        assert!(r.divide_by_a_binomial(q(-2), 1).is_err());
    }
}
