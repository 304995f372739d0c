//! Exact coefficients: arbitrary-precision rationals and prime-field residues.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// The prime field of order `p`; `p` must be a prime below 2^31.
    pub fn prime(p: u32) -> Result<Field> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(Box::new(BigRational::from_integer(BigInt::from(n)))),
            Field::Prime(p) => {
                let r = n.rem_euclid(*p as i64) as u32;
                Scalar::Mod { value: r, modulus: *p }
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(Box::new(BigRational::from_integer(n.clone()))),
            Field::Prime(p) => {
                let m = BigInt::from(*p);
                let r = n.mod_floor(&m).to_u32().expect("residue fits in u32");
                Scalar::Mod { value: r, modulus: *p }
            }
        }
    }

    /// Maps a rational into this field; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Rational(Box::new(q.clone()))),
            Field::Prime(_) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                let inv = den
                    .inv()
                    .ok_or_else(|| Error::InvalidField(format!("denominator of {q} vanishes")))?;
                Ok(&num * &inv)
            }
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rational, Scalar::Rational(_)) => true,
            (Field::Prime(p), Scalar::Mod { modulus, .. }) => p == modulus,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "gf {p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Rationals are kept reduced with positive denominator
/// (guaranteed by `BigRational`); residues lie in `[0, modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Box<BigRational>),
    Mod { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(Box::new(q.recip())),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: mod_inverse(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Integer value when the element is (the image of) a small integer; for
    /// residues the symmetric representative is used.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) if q.is_integer() => q.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Mod { value, modulus } => Some(symmetric(*value, *modulus)),
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative_display(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Mod { value, modulus } => symmetric(*value, *modulus) < 0,
        }
    }

    pub fn abs_display(&self) -> String {
        match self {
            Scalar::Rational(q) => q.abs().to_string(),
            Scalar::Mod { value, modulus } => symmetric(*value, *modulus).abs().to_string(),
        }
    }
}

fn symmetric(value: u32, modulus: u32) -> i64 {
    if value as u64 * 2 > modulus as u64 {
        value as i64 - modulus as i64
    } else {
        value as i64
    }
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u32
}

fn field_mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                let s = *a as u64 + *b as u64;
                let p64 = *p as u64;
                Scalar::Mod { value: (if s >= p64 { s - p64 } else { s }) as u32, modulus: *p }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(Box::new(&**a + &**b)),
            _ => field_mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                let v = if a >= b { a - b } else { (*a as u64 + *p as u64 - *b as u64) as u32 };
                Scalar::Mod { value: v, modulus: *p }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(Box::new(&**a - &**b)),
            _ => field_mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => Scalar::Mod {
                value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                modulus: *p,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(Box::new(&**a * &**b)),
            _ => field_mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            Scalar::Rational(a) => Scalar::Rational(Box::new(-&**a)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Mod { value, modulus } => write!(f, "{}", symmetric(*value, *modulus)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_field_validation() {
        assert!(Field::prime(32003).is_ok());
        assert!(Field::prime(32004).is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn residues_are_canonical() {
        let k = Field::Prime(7);
        assert_eq!(k.from_i64(-1), k.from_i64(6));
        assert_eq!(k.from_i64(3).inv().unwrap(), k.from_i64(5));
        assert!(k.zero().inv().is_none());
        assert_eq!(k.from_i64(-3).to_string(), "-3");
    }

    #[test]
    fn rationals_reduce() {
        let q = Field::Rational;
        let half = q.from_i64(1).inv().unwrap();
        assert!(half.is_one());
        let two = q.from_i64(2);
        let r = &two.inv().unwrap() + &two.inv().unwrap();
        assert!(r.is_one());
    }

    proptest! {
        // Reduction mod p is a ring homomorphism on fractions with unit denominators.
        #[test]
        fn rational_and_prime_agree(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let p = 32003u32;
            let fp = Field::Prime(p);
            let q = Field::Rational;
            let x = BigRational::new(a.into(), b.into());
            let y = BigRational::new(c.into(), d.into());
            let (xq, yq) = (q.from_rational(&x).unwrap(), q.from_rational(&y).unwrap());
            let (xp, yp) = (fp.from_rational(&x).unwrap(), fp.from_rational(&y).unwrap());
            let down = |s: &Scalar| match s {
                Scalar::Rational(r) => fp.from_rational(r).unwrap(),
                _ => unreachable!(),
            };
            prop_assert_eq!(down(&(&xq + &yq)), &xp + &yp);
            prop_assert_eq!(down(&(&xq * &yq)), &xp * &yp);
            prop_assert_eq!(down(&(&xq - &yq)), &xp - &yp);
        }
    }
}
