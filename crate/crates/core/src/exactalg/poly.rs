use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::field::{Field, Rational};
use super::ExactAlgError;

/// Maximum number of ring variables supported by the packed monomial.
pub const MAX_VARS: usize = 8;

/// Exponent vector, packed. Ordered graded-lexicographically (total degree
/// first, then larger exponent of the earlier variable wins).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::default();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u8::try_from(e).expect("exponent overflow");
        }
        m
    }

    pub fn var(j: usize) -> Self {
        let mut m = Monomial::default();
        m.exps[j] = 1;
        m
    }

    pub fn exp(&self, j: usize) -> u32 {
        self.exps[j] as u32
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        m
    }

    pub fn exponents(&self, arity: usize) -> Vec<u32> {
        (0..arity).map(|i| self.exps[i] as u32).collect()
    }

    /// All monomials of total degree `d` in `arity` variables, in descending
    /// graded-lex order (deterministic).
    pub fn all_of_degree(arity: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = [0u32; MAX_VARS];
        fn rec(arity: usize, pos: usize, left: u32, cur: &mut [u32; MAX_VARS], out: &mut Vec<Monomial>) {
            if pos + 1 == arity {
                cur[pos] = left;
                out.push(Monomial::from_exponents(&cur[..arity]));
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                rec(arity, pos + 1, left - e, cur, out);
            }
        }
        if arity == 0 {
            if d == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        rec(arity, 0, d, &mut cur, &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Multivariate polynomial in `arity` variables, canonical: no zero
/// coefficients are ever stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<K: Field = Rational> {
    arity: usize,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Field> Polynomial<K> {
    pub fn zero(arity: usize) -> Self {
        assert!(arity <= MAX_VARS);
        Polynomial { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: K) -> Self {
        let mut p = Self::zero(arity);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, K::one())
    }

    /// The variable `x_{j+1}` (0-based index `j`).
    pub fn var(arity: usize, j: usize) -> Self {
        assert!(j < arity, "variable index out of range");
        Self::term(arity, Monomial::var(j), K::one())
    }

    pub fn term(arity: usize, m: Monomial, c: K) -> Self {
        let mut p = Self::zero(arity);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn constant_term(&self) -> K {
        self.coeff(&Monomial::one())
    }

    fn add_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<(), ExactAlgError> {
        if self.arity != other.arity {
            return Err(ExactAlgError::ArityMismatch(self.arity, other.arity));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactAlgError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactAlgError> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.arity);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("polynomial arity mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("polynomial arity mismatch")
    }

    pub fn neg(&self) -> Self {
        self.scale(&K::one().neg())
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, k)| (*m, k.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(t, k)| (t.mul(m), k.clone())).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Self, c: &K) {
        for (m, k) in &other.terms {
            self.add_term(*m, k.mul(c));
        }
    }

    /// `self += a * b`
    pub fn add_product(&mut self, a: &Self, b: &Self) {
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                self.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.arity);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Total polynomial degree if homogeneous; `None` for zero or mixed.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        it.all(|m| m.degree() == d).then_some(d)
    }

    /// q-degree under `deg x_i = q^2`.
    pub fn q_degree(&self) -> Option<i32> {
        self.homogeneous_degree().map(|d| 2 * d as i32)
    }

    /// Substitute `x_j := images[j]`.
    pub fn substitute(&self, images: &[Polynomial<K>]) -> Polynomial<K> {
        assert_eq!(images.len(), self.arity);
        let target = images.first().map(|p| p.arity).unwrap_or(0);
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (j, img) in images.iter().enumerate() {
                for _ in 0..m.exp(j) {
                    t = t.mul(img);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Swap variables `i` and `j` (0-based).
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.arity);
        for (m, c) in &self.terms {
            let mut e = m.exponents(self.arity);
            e.swap(i, j);
            out.add_term(Monomial::from_exponents(&e), c.clone());
        }
        out
    }
}

impl Polynomial<Rational> {
    /// Reduce coefficients into another field.
    pub fn to_field<L: Field>(&self) -> Polynomial<L> {
        let mut out = Polynomial::zero(self.arity);
        for (m, c) in &self.terms {
            out.add_term(*m, L::from_rational(c));
        }
        out
    }

    pub fn from_int_terms(arity: usize, terms: &[(&[u32], i64)]) -> Self {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            p.add_term(Monomial::from_exponents(e), Rational::from_i64(*c));
        }
        p
    }
}

impl<K: Field> fmt::Debug for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*{:?}", c, m)?;
        }
        Ok(())
    }
}

impl<K: Field> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(j: usize) -> Polynomial {
        Polynomial::var(2, j)
    }

    #[test]
    fn square_of_variable() {
        let p = x(0).mul(&x(0));
        assert_eq!(p, Polynomial::from_int_terms(2, &[(&[2, 0], 1)]));
    }

    #[test]
    fn additive_identity() {
        let p = x(0).add(&x(1).scale(&Rational::from_i64(3)));
        assert_eq!(p.add(&Polynomial::zero(2)), p);
    }

    #[test]
    fn difference_of_squares() {
        let p = x(0).add(&x(1)).mul(&x(0).sub(&x(1)));
        assert_eq!(p, Polynomial::from_int_terms(2, &[(&[2, 0], 1), (&[0, 2], -1)]));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a: Polynomial = Polynomial::var(2, 0);
        let b: Polynomial = Polynomial::var(3, 0);
        assert!(matches!(a.try_add(&b), Err(ExactAlgError::ArityMismatch(2, 3))));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = x(0).sub(&x(0));
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn monomials_of_degree() {
        assert_eq!(Monomial::all_of_degree(2, 3).len(), 4);
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(0, 0).len(), 1);
        assert!(Monomial::all_of_degree(0, 1).is_empty());
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::from_exponents(&[2, 0]);
        let b = Monomial::from_exponents(&[1, 1]);
        let c = Monomial::from_exponents(&[0, 3]);
        assert!(a > b);
        assert!(c > a);
    }
}
