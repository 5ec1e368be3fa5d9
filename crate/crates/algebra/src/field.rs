//! Exact coefficient fields: the rationals and prime fields `F_p`.
//!
//! Both fields implement [`Coeff`], which is what polynomials, matrices and
//! Gröbner bases are generic over. Scalars carry their field so that mixing
//! two different prime fields is caught at the arithmetic boundary.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{AlgebraError, Result};

/// Field descriptor: `q` for the rationals, `fp:P` for the prime field of order `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    pub const DEFAULT_PRIME: u32 = 101;

    /// Prime field of order `p`; `p` must be prime and below 2^31.
    pub fn prime(p: u32) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(AlgebraError::InvalidField(format!("fp:{p}")));
        }
        Ok(Field::Prime(p))
    }

    pub fn default_prime() -> Self {
        Field::Prime(Self::DEFAULT_PRIME)
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let p = t
            .strip_prefix("fp:")
            .and_then(|p| p.parse::<u32>().ok())
            .ok_or_else(|| AlgebraError::InvalidField(s.to_string()))?;
        Field::prime(p)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Scalar type of an exact field.
pub trait Coeff:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Whether reductions should be carried out fraction-free with periodic
    /// content removal (true for the rationals).
    const FRACTION_FREE: bool;

    fn field(&self) -> Field;
    fn zero(field: Field) -> Self;
    fn one(field: Field) -> Self;
    fn from_i64(field: Field, n: i64) -> Self;
    fn from_bigint(field: Field, n: &BigInt) -> Self;
    /// `num/den` in the field; fails when `den` vanishes in it.
    fn from_ratio(field: Field, num: &BigInt, den: &BigInt) -> Result<Self>;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    /// True when the canonical printed form starts with a minus sign.
    fn is_negative(&self) -> bool {
        false
    }
    /// Approximate real value (rationals only).
    fn to_f64(&self) -> Option<f64> {
        None
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    /// Factors `(a, b)` with `a * f_lead == b * g_lead`; used to cancel a leading
    /// term `f_lead` against `g_lead` without leaving the coefficient ring.
    fn cancel_factors(f_lead: &Self, g_lead: &Self) -> (Self, Self) {
        let field = f_lead.field();
        (Self::one(field), f_lead.div(g_lead).expect("nonzero leading coefficient"))
    }

    /// Divides out the content of a coefficient vector (no-op over `F_p`).
    fn remove_content(_coeffs: &mut [Self]) {}

    fn parse_in(field: Field, s: &str) -> Result<Self> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num
            .parse()
            .map_err(|_| AlgebraError::Parse(format!("bad coefficient `{s}`")))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| AlgebraError::Parse(format!("bad coefficient `{s}`")))?;
        Self::from_ratio(field, &num, &den)
    }
}

/// Arbitrary-precision rational number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_negative() {
            -1
        } else {
            1
        }
    }

    /// Exact square root when `self` is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if self.0.is_negative() {
            return None;
        }
        let n = self.0.numer().sqrt();
        let d = self.0.denom().sqrt();
        if &(&n * &n) == self.0.numer() && &(&d * &d) == self.0.denom() {
            Some(Rational(BigRational::new(n, d)))
        } else {
            None
        }
    }

    /// Best-effort conversion to `f64`; exact for dyadic values that fit.
    pub fn approx(&self) -> f64 {
        ratio_to_f64(&self.0)
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Scale numerator and denominator down together.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = (nb.max(db) - 900).max(0) as usize;
    let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
    n / d
}

/// Serialized as a `num/den` string.
impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Rational::parse_in(Field::Rational, &s).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, o: Rational) -> Rational {
        Rational(self.0 + o.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Rational) -> Rational {
        Rational(self.0 - o.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, o: Rational) -> Rational {
        if self.0.denom().is_one() && o.0.denom().is_one() {
            return Rational(BigRational::from_integer(self.0.numer() * o.0.numer()));
        }
        Rational(self.0 * o.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Coeff for Rational {
    const FRACTION_FREE: bool = true;

    fn field(&self) -> Field {
        Field::Rational
    }

    fn zero(_: Field) -> Self {
        Rational(BigRational::zero())
    }

    fn one(_: Field) -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(_: Field, n: i64) -> Self {
        Rational::from_integer(n)
    }

    fn from_bigint(_: Field, n: &BigInt) -> Self {
        Rational(BigRational::from_integer(n.clone()))
    }

    fn from_ratio(_: Field, num: &BigInt, den: &BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(AlgebraError::NotInvertible("0".into()));
        }
        Ok(Rational(BigRational::new(num.clone(), den.clone())))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    fn to_f64(&self) -> Option<f64> {
        Some(self.approx())
    }

    fn cancel_factors(f_lead: &Self, g_lead: &Self) -> (Self, Self) {
        if f_lead.0.denom().is_one() && g_lead.0.denom().is_one() {
            let (fa, ga) = (f_lead.0.numer(), g_lead.0.numer());
            let mut d = fa.gcd(ga);
            if ga.is_negative() {
                d = -d;
            }
            let a = Rational(BigRational::from_integer(ga / &d));
            let b = Rational(BigRational::from_integer(fa / &d));
            (a, b)
        } else {
            (Rational(BigRational::one()), Rational(&f_lead.0 / &g_lead.0))
        }
    }

    fn remove_content(coeffs: &mut [Self]) {
        if coeffs.is_empty() {
            return;
        }
        let mut den_lcm = BigInt::one();
        for c in coeffs.iter() {
            den_lcm = den_lcm.lcm(c.0.denom());
        }
        let mut g = BigInt::zero();
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.0.numer() * (&den_lcm / c.0.denom()))
            .collect();
        for n in &ints {
            g = g.gcd(n);
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            return;
        }
        if ints[0].is_negative() {
            g = -g;
        }
        for (c, n) in coeffs.iter_mut().zip(ints) {
            *c = Rational(BigRational::from_integer(n / &g));
        }
    }
}

/// Residue modulo a prime, stored as the canonical representative in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, modulus: u32) -> Self {
        let m = modulus as i64;
        Fp { value: value.rem_euclid(m) as u32, modulus }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp { value: 1 % self.modulus, modulus: self.modulus };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn centered(&self) -> i64 {
        let v = self.value as i64;
        let p = self.modulus as i64;
        if v > p / 2 {
            v - p
        } else {
            v
        }
    }

    #[inline]
    fn check(&self, o: &Fp) {
        assert_eq!(
            self.modulus, o.modulus,
            "mixing scalars of F_{} and F_{}",
            self.modulus, o.modulus
        );
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, o: Fp) -> Fp {
        self.check(&o);
        let s = self.value as u64 + o.value as u64;
        let m = self.modulus as u64;
        Fp { value: (if s >= m { s - m } else { s }) as u32, modulus: self.modulus }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, o: Fp) -> Fp {
        self.check(&o);
        let v = if self.value >= o.value {
            self.value - o.value
        } else {
            self.value + (self.modulus - o.value)
        };
        Fp { value: v, modulus: self.modulus }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, o: Fp) -> Fp {
        self.check(&o);
        let v = (self.value as u64 * o.value as u64) % self.modulus as u64;
        Fp { value: v as u32, modulus: self.modulus }
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        if self.value == 0 {
            self
        } else {
            Fp { value: self.modulus - self.value, modulus: self.modulus }
        }
    }
}

fn modulus_of(field: Field) -> u32 {
    match field {
        Field::Prime(p) => p,
        Field::Rational => panic!("F_p scalar requested for the rational field"),
    }
}

impl Coeff for Fp {
    const FRACTION_FREE: bool = false;

    fn field(&self) -> Field {
        Field::Prime(self.modulus)
    }

    fn zero(field: Field) -> Self {
        Fp { value: 0, modulus: modulus_of(field) }
    }

    fn one(field: Field) -> Self {
        Fp { value: 1, modulus: modulus_of(field) }
    }

    fn from_i64(field: Field, n: i64) -> Self {
        Fp::new(n, modulus_of(field))
    }

    fn from_bigint(field: Field, n: &BigInt) -> Self {
        let p = modulus_of(field);
        let r = n.mod_floor(&BigInt::from(p));
        Fp { value: r.to_u32().unwrap(), modulus: p }
    }

    fn from_ratio(field: Field, num: &BigInt, den: &BigInt) -> Result<Self> {
        let n = Self::from_bigint(field, num);
        let d = Self::from_bigint(field, den);
        let di = d
            .inv()
            .ok_or_else(|| AlgebraError::NotInvertible(format!("{den} in {field}")))?;
        Ok(n * di)
    }

    #[inline]
    fn is_zero(&self) -> bool {
        self.value == 0
    }

    #[inline]
    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // Extended Euclid on (value, p).
        let (mut a, mut b) = (self.value as i64, self.modulus as i64);
        let (mut x0, mut x1) = (1i64, 0i64);
        while b != 0 {
            let q = a / b;
            (a, b) = (b, a - q * b);
            (x0, x1) = (x1, x0 - q * x1);
        }
        Some(Fp::new(x0, self.modulus))
    }
}

/// Conversion of exact scalars to another field (reduction mod p, or identity).
pub fn rational_to<C: Coeff>(field: Field, r: &Rational) -> Result<C> {
    C::from_ratio(field, r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_descriptor_parsing() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("fp:101".parse::<Field>().unwrap(), Field::Prime(101));
        assert!("fp:100".parse::<Field>().is_err());
        assert!("fp:x".parse::<Field>().is_err());
        assert_eq!(Field::Prime(7).to_string(), "fp:7");
    }

    #[test]
    fn fp_arithmetic_is_canonical() {
        let f = Field::Prime(5);
        let two = Fp::from_i64(f, 2);
        let three = Fp::from_i64(f, 3);
        assert!((two * three).is_one());
        assert_eq!(Fp::from_i64(f, -1).value(), 4);
        assert_eq!((two - three).value(), 4);
        assert_eq!(two.inv().unwrap(), three);
        assert!(Fp::zero(f).inv().is_none());
        let q = Fp::parse_in(f, "1/2").unwrap();
        assert_eq!(q, three);
        assert!(Fp::parse_in(f, "1/5").is_err());
    }

    #[test]
    #[should_panic(expected = "mixing scalars")]
    fn fp_rejects_mixed_fields() {
        let _ = Fp::new(1, 5) + Fp::new(1, 7);
    }

    #[test]
    fn rational_content_removal() {
        let mut v = vec![Rational::new(-2, 3), Rational::new(4, 9), Rational::from_integer(2)];
        Rational::remove_content(&mut v);
        assert_eq!(v, vec![Rational::from_integer(3), Rational::from_integer(-2), Rational::from_integer(-9)]);
        let (a, b) = Rational::cancel_factors(&Rational::from_integer(6), &Rational::from_integer(-4));
        assert_eq!(a.clone() * Rational::from_integer(6), b.clone() * Rational::from_integer(-4));
        assert_eq!(a, Rational::from_integer(2));
    }

    #[test]
    fn rational_sqrt() {
        assert_eq!(Rational::new(9, 4).sqrt_exact(), Some(Rational::new(3, 2)));
        assert_eq!(Rational::new(2, 1).sqrt_exact(), None);
        assert_eq!(Rational::new(-1, 1).sqrt_exact(), None);
    }
}
