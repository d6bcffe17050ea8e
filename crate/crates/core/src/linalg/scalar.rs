use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, FieldName, Result};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Prime-field elements reuse this type with integer values in
/// `0..p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`; panics on a zero denominator.
    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar(BigRational::from_integer(n))
    }

    pub fn from_ratio(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Scalar(BigRational::new(num, den)))
        }
    }

    pub fn sign(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Scalar::one()
        } else {
            -Scalar::one()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar(self.0.recip()))
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::parse(format!("scalar {s:?}"), "expected an integer or a fraction p/q");
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Scalar::from_ratio(n, d).ok_or_else(bad)
            }
            None => s.parse::<BigInt>().map(Scalar::from_bigint).map_err(|_| bad()),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

/// Base field descriptor. All arithmetic goes through it so that the same
/// code runs over ℚ and over 𝔽_p (p odd).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Default for Field {
    fn default() -> Self {
        Field::Rational
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rational);
        }
        let p = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("F"))
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::parse(format!("field {s:?}"), "expected Q or Fp:<p>"))?;
        Field::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl Field {
    /// 𝔽_p for an odd prime p. Characteristic 2 is rejected.
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::Characteristic(2));
        }
        if !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub(crate) fn name(&self) -> FieldName {
        FieldName(self.to_string())
    }

    pub fn ensure_same(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.name(), other.name()))
        }
    }

    /// Maps an arbitrary rational into the field, failing when a
    /// denominator is divisible by p.
    pub fn element(&self, x: &Scalar) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(x.clone()),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let n = x.numer().mod_floor(&pb).to_u64().unwrap_or(0);
                let d = x.denom().mod_floor(&pb).to_u64().unwrap_or(0);
                if d == 0 {
                    return Err(Error::NotInField {
                        value: x.to_string(),
                        p: *p,
                    });
                }
                let v = mulmod(n, invmod(d, *p), *p);
                Ok(Scalar::from_bigint(BigInt::from(v)))
            }
        }
    }

    pub fn int(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::from_int(n),
            Field::Prime(p) => Scalar::from_bigint(BigInt::from(n.rem_euclid(*p as i64))),
        }
    }

    pub fn sign(&self, k: i64) -> Scalar {
        if k.rem_euclid(2) == 0 {
            self.int(1)
        } else {
            self.int(-1)
        }
    }

    fn residue(x: &Scalar) -> u64 {
        x.numer().to_u64().expect("prime-field element out of range")
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rational => a + b,
            Field::Prime(p) => {
                let s = (Self::residue(a) as u128 + Self::residue(b) as u128) % *p as u128;
                Scalar::from_bigint(BigInt::from(s as u64))
            }
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rational => -a,
            Field::Prime(p) => {
                let r = Self::residue(a);
                let v = if r == 0 { 0 } else { *p - r };
                Scalar::from_bigint(BigInt::from(v))
            }
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rational => a * b,
            Field::Prime(p) => {
                Scalar::from_bigint(BigInt::from(mulmod(Self::residue(a), Self::residue(b), *p)))
            }
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            Field::Rational => a.recip(),
            Field::Prime(p) => Some(Scalar::from_bigint(BigInt::from(invmod(Self::residue(a), *p)))),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// `a - c*b`, the elimination step.
    pub fn axpy_neg(&self, a: &Scalar, c: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rational => a - &(c * b),
            _ => self.sub(a, &self.mul(c, b)),
        }
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invmod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a ≠ 0 mod p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(result, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars_stay_reduced() {
        let x = Scalar::from_frac(4, -6);
        assert_eq!(x.to_string(), "-2/3");
        assert_eq!(x.denom(), &BigInt::from(3));
        let y: Scalar = "10/4".parse().unwrap();
        assert_eq!(y, Scalar::from_frac(5, 2));
        assert!("1/0".parse::<Scalar>().is_err());
    }

    #[test]
    fn characteristic_two_rejected() {
        assert_eq!(Field::prime(2), Err(Error::Characteristic(2)));
        assert_eq!(Field::prime(9), Err(Error::NotOddPrime(9)));
        assert_eq!("Fp:7".parse::<Field>().unwrap(), Field::Prime(7));
        assert!("Fp:2".parse::<Field>().is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let half = f.element(&Scalar::from_frac(1, 2)).unwrap();
        assert_eq!(half, Scalar::from_int(4));
        assert_eq!(f.mul(&half, &f.int(2)), f.int(1));
        assert_eq!(f.inv(&f.int(3)).unwrap(), f.int(5));
        assert_eq!(f.neg(&f.int(0)), f.int(0));
        assert!(f.element(&Scalar::from_frac(1, 14)).is_err());
    }
}
