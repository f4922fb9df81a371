//! Coefficient fields.
//!
//! Everything downstream is generic over [`Field`]. [`Rational`] is the
//! characteristic-zero reference field; [`Fp`] is a word-sized prime field
//! used for the fast rank pass.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_assign(&mut self, other: &Self) {
        *self = Field::add(self, other);
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = Field::add(self, &Field::mul(a, b));
    }
}

impl Field for Rational {
    const NAME: &'static str = "Q";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// Integer part of a rational that is known to be integral.
pub fn rational_to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// Integers modulo a prime `P < 2^63`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

/// 2^61 - 1.
pub const PRIME_A: u64 = 2_305_843_009_213_693_951;
/// 2^62 - 57.
pub const PRIME_B: u64 = 4_611_686_018_427_387_847;

pub type FpA = Fp<PRIME_A>;
pub type FpB = Fp<PRIME_B>;

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Field::mul(&acc, &base);
            }
            base = Field::mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn from_bigint(v: &BigInt) -> Self {
        let m = BigInt::from(P);
        let r = v.mod_floor(&m);
        Fp(r.to_u64().expect("reduced residue fits in u64"))
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Fp<P> {
    const NAME: &'static str = "Fp";

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(v: i64) -> Self {
        if v >= 0 {
            Fp((v as u64) % P)
        } else {
            let m = (v.unsigned_abs()) % P;
            Fp(if m == 0 { 0 } else { P - m })
        }
    }
    fn from_rational(r: &Rational) -> Self {
        let n = Self::from_bigint(r.numer());
        let d = Self::from_bigint(r.denom());
        Field::mul(&n, &d.inv())
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        Fp(if s >= P { s - P } else { s })
    }
    fn sub(&self, other: &Self) -> Self {
        Fp(if self.0 >= other.0 {
            self.0 - other.0
        } else {
            self.0 + P - other.0
        })
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u128 * other.0 as u128) % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }
}

/// Render a rational as a plain string (`"3"`, `"-1/2"`).
pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_is_nonneg_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_roundtrip() {
        for v in [1i64, 2, 3, -7, 123_456_789] {
            let a = FpA::from_i64(v);
            assert!(Field::mul(&a, &a.inv()).is_one());
            let b = FpB::from_i64(v);
            assert!(Field::mul(&b, &b.inv()).is_one());
        }
    }

    #[test]
    fn fp_from_rational_matches_division() {
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let h = FpA::from_rational(&half);
        assert!(Field::mul(&h, &FpA::from_i64(2)).is_one());
        let neg = Rational::from_integer(BigInt::from(-5));
        assert_eq!(FpA::from_rational(&neg), FpA::from_i64(-5));
    }
}
