//! Exact rational arithmetic and residue utilities.
//!
//! Every quantity in the engine (cubes, discrepancies, intersection numbers,
//! Riemann-Roch terms) is a [`Rational`]. Integers are embedded rationals.
//! No floating point is used anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`. Decimals are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::ParseRational(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

/// Renders `num/den`, or just `num` for integers.
pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Integer value of `x` if it is integral and fits in an `i64`.
pub fn as_i64(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// `floor(x)` as a big integer.
pub fn floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// Serde adapter that writes rationals as `"num/den"` strings.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Canonical residue `value mod modulus` with `0 <= value < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(x: i64, r: i64) -> Result<Self> {
        bar(x, r)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn check(self, other: Residue) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn try_add(self, other: Residue) -> Result<Residue> {
        self.check(other)?;
        Ok(Residue {
            value: (self.value + other.value) % self.modulus,
            modulus: self.modulus,
        })
    }

    pub fn try_mul(self, other: Residue) -> Result<Residue> {
        self.check(other)?;
        let v = (self.value as u128 * other.value as u128) % self.modulus as u128;
        Ok(Residue {
            value: v as u64,
            modulus: self.modulus,
        })
    }

    /// Multiplies by a plain integer, staying in the same modulus.
    pub fn scale(self, k: i64) -> Residue {
        let m = self.modulus as i128;
        let v = (self.value as i128 * k as i128).rem_euclid(m);
        Residue {
            value: v as u64,
            modulus: self.modulus,
        }
    }
}

impl std::ops::Neg for Residue {
    type Output = Residue;

    fn neg(self) -> Residue {
        self.scale(-1)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// `x mod r` in `[0, r)`.
pub fn bar(x: i64, r: i64) -> Result<Residue> {
    if r < 1 {
        return Err(Error::ZeroModulus(r));
    }
    Ok(Residue {
        value: x.rem_euclid(r) as u64,
        modulus: r as u64,
    })
}

/// Inverse of `a` modulo `r`.
pub fn inv_mod(a: i64, r: i64) -> Result<Residue> {
    if r < 1 {
        return Err(Error::ZeroModulus(r));
    }
    let ext = a.rem_euclid(r).extended_gcd(&r);
    if ext.gcd != 1 {
        return Err(Error::NotInvertible { a, r });
    }
    bar(ext.x, r)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Least common multiple; the empty list gives 1.
pub fn lcm_all(values: &[u64]) -> u64 {
    values.iter().fold(1, |acc, &v| acc.lcm(&v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Signed};
    use proptest::prelude::*;

    #[test]
    fn bar_examples() {
        assert_eq!(bar(7, 5).unwrap().value(), 2);
        assert_eq!(bar(-1, 4).unwrap().value(), 3);
        assert_eq!(bar(0, 9).unwrap().value(), 0);
        assert_eq!(bar(3, 0), Err(Error::ZeroModulus(0)));
    }

    #[test]
    fn inv_mod_examples() {
        assert_eq!(inv_mod(5, 3).unwrap().value(), 2);
        assert_eq!(inv_mod(7, 6).unwrap().value(), 1);
        assert_eq!(inv_mod(3, 10).unwrap().value(), 7);
        assert_eq!(inv_mod(4, 10), Err(Error::NotInvertible { a: 4, r: 10 }));
        assert_eq!(inv_mod(-3, 10).unwrap().value(), 3);
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm_all(&[2, 3, 4]), 12);
        assert_eq!(lcm_all(&[2, 3, 13]), 78);
        assert_eq!(lcm_all(&[]), 1);
    }

    #[test]
    fn residue_mismatch_is_an_error() {
        let a = bar(1, 4).unwrap();
        let b = bar(1, 5).unwrap();
        assert_eq!(a.try_add(b), Err(Error::ModulusMismatch(4, 5)));
        assert_eq!(a.try_mul(bar(3, 4).unwrap()).unwrap().value(), 3);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/12").unwrap(), rat(1, 12));
        assert_eq!(parse_rational(" -4/6 ").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(fmt_rational(&rat(2, 85)), "2/85");
        assert_eq!(fmt_rational(&int(-3)), "-3");
    }

    proptest! {
        #[test]
        fn bar_is_canonical(x in -10_000i64..10_000, r in 1i64..500) {
            let v = bar(x, r).unwrap().value() as i64;
            prop_assert!((0..r).contains(&v));
            prop_assert_eq!((x - v).rem_euclid(r), 0);
        }

        #[test]
        fn inv_mod_inverts(a in -1000i64..1000, r in 1i64..300) {
            match inv_mod(a, r) {
                Ok(u) => prop_assert_eq!((a as i128 * u.value() as i128).rem_euclid(r as i128), 1 % r as i128),
                Err(_) => prop_assert_ne!(a.rem_euclid(r).gcd(&r), 1),
            }
        }

        #[test]
        fn field_axioms(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50, e in -50i64..50, f in 1i64..50) {
            let (x, y, z) = (rat(a, b), rat(c, d), rat(e, f));
            prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
            prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
            prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            if !y.is_zero() {
                prop_assert_eq!(&x / &y * &y, x.clone());
            }
            prop_assert!(x.denom().is_positive());
            prop_assert!(x.numer().gcd(x.denom()).is_one());
        }
    }
}
