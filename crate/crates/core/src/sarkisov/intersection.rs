//! Intersection calculus on the blowup of a point.
//!
//! Classes are written `a*f^*A - beta*E`. For a point blowup the mixed
//! products `f^*A^2.E` and `f^*A.E^2` vanish, so a triple product only sees
//! `A^3` and `E^3`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratmod::{fmt_rational, gcd, int, rat, serde_rational, Rational};

/// `A^3` on the base and `E^3` on the blowup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupLattice {
    #[serde(with = "serde_rational")]
    pub a3: Rational,
    #[serde(with = "serde_rational")]
    pub e3: Rational,
}

/// The class `a*f^*A - beta*E`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupClass {
    #[serde(with = "serde_rational")]
    pub a: Rational,
    #[serde(with = "serde_rational")]
    pub beta: Rational,
}

impl BlowupClass {
    pub fn new(a: Rational, beta: Rational) -> Self {
        BlowupClass { a, beta }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        BlowupClass::new(&self.a * c, &self.beta * c)
    }

    pub fn plus(&self, other: &BlowupClass) -> Self {
        BlowupClass::new(&self.a + &other.a, &self.beta + &other.beta)
    }
}

/// `E^3` for the Kawamata blowup of `1/r(1, a, r-a)`.
pub fn kawamata_e3(r: u32, a: u32) -> Result<Rational> {
    if a == 0 || a >= r || gcd(a as u64, r as u64) != 1 {
        return Err(Error::InvalidPoint {
            r,
            b: a,
            reason: "weight must satisfy 0 < a < r and gcd(a, r) = 1",
        });
    }
    let (r, a) = (r as i64, a as i64);
    Ok(rat(r * r, a * (r - a)))
}

pub fn blowup_triple(c1: &BlowupClass, c2: &BlowupClass, c3: &BlowupClass, lattice: &BlowupLattice) -> Rational {
    &c1.a * &c2.a * &c3.a * &lattice.a3 - &c1.beta * &c2.beta * &c3.beta * &lattice.e3
}

/// Solves `class^3 = 0` for `E^3`.
pub fn e3_from_null_cube(class: &BlowupClass, a3: &Rational) -> Result<Rational> {
    if class.beta.is_zero() {
        return Err(Error::Invalid("class has no E component; E^3 is unconstrained".into()));
    }
    Ok(&class.a * &class.a * &class.a * a3 / (&class.beta * &class.beta * &class.beta))
}

/// Invariants of the base surface of a conic bundle `Y -> S` read off
/// from the total space: `H` is the ample generator of the base pulled
/// back, `F` its class on `Y`, `Delta` the discriminant curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CbInvariants {
    #[serde(with = "serde_rational")]
    pub h2: Rational,
    #[serde(with = "serde_rational")]
    pub h_delta: Rational,
    pub q_s: u32,
}

impl CbInvariants {
    /// `Delta ~ -2K_S`, i.e. `H.Delta = 2 q_S H^2` when `Pic S` is cyclic.
    pub fn delta_is_twice_anticanonical(&self) -> bool {
        self.h_delta == int(2 * self.q_s as i64) * &self.h2
    }

    /// Degree of the discriminant against the generator, `H.Delta / H^2`.
    pub fn delta_degree(&self) -> Rational {
        &self.h_delta / &self.h2
    }
}

/// `H^2 = -K_Y.F^2 / 2` and `H.Delta = 4 q_S H^2 - K_Y^2.F`, where
/// `k_class` is `K_Y` itself (not its negative).
pub fn cb_invariants(lattice: &BlowupLattice, k_class: &BlowupClass, f_class: &BlowupClass, q_s: u32) -> Result<CbInvariants> {
    if q_s == 0 {
        return Err(Error::Invalid("base surface index must be positive".into()));
    }
    let h2 = -blowup_triple(k_class, f_class, f_class, lattice) / int(2);
    if !h2.is_positive() {
        return Err(Error::DegenerateFibration(fmt_rational(&h2)));
    }
    let k2f = blowup_triple(k_class, k_class, f_class, lattice);
    let h_delta = int(4 * q_s as i64) * &h2 - k2f;
    Ok(CbInvariants { h2, h_delta, q_s })
}
