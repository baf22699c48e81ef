//! Orbifold Riemann-Roch for multiples of the fundamental divisor.
//!
//! Conventions: a basket point is of type `1/r(1,-1,b)`. The local type of
//! a Weil divisor `D` at the point is the `i` with `D ~ iK_X` near it, so `A`
//! has type `iA = -q^{-1} mod r` and `mA` has type `m * iA mod r`; the unit
//! `b` enters only through the correction sum. Vanishing `h^0(mA) = chi(mA)` for `m >= 0` is
//! assumed throughout, not checked.

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::basket::{anticanonical_c2, global_index, Basket, BasketPoint};
use crate::error::{Error, Result};
use crate::ratmod::{as_i64, bar, fmt_rational, int, inv_mod, rat, serde_rational, Rational, Residue};
use crate::wps::EquivariantSeries;

/// Admissible values of `q_Q(X)`.
pub const FANO_INDICES: [u32; 13] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 13, 17, 19];

pub fn validate_fano_index(q: u32) -> Result<()> {
    if FANO_INDICES.contains(&q) {
        Ok(())
    } else {
        Err(Error::InvalidFanoIndex(q))
    }
}

/// Default Hilbert row length: `max(q + 3, 12)`.
pub fn default_truncation(q: u32) -> u32 {
    (q + 3).max(12)
}

/// Local eigen-type of `A` at a basket point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalType {
    pub point: BasketPoint,
    pub i_a: Residue,
}

impl LocalType {
    pub fn new(point: BasketPoint, q: u32) -> Result<Self> {
        let r = point.r as i64;
        let q_inv = inv_mod(q as i64, r).map_err(|_| Error::TorsionAmbiguous { q, r: point.r })?;
        let i_a = bar(-(q_inv.value() as i64), r)?;
        Ok(LocalType { point, i_a })
    }

    /// Local type of `mA`.
    pub fn of_multiple(&self, m: i64) -> u32 {
        self.i_a.scale(m).value() as u32
    }
}

/// Local correction term of a point `1/r(1,-1,b)` for a divisor locally
/// linearly equivalent to `iK_X`.
pub fn local_contribution(r: u32, b: u32, i: u32) -> Result<Rational> {
    let p = BasketPoint::new(r, b, 1)?;
    if i >= r {
        return Err(Error::InvalidPoint { r, b, reason: "local type must lie in [0, r)" });
    }
    let (r, i) = (r as i64, i as i64);
    let mut c = -rat(i * (r * r - 1), 12 * r);
    for j in 1..i {
        let x = (j * p.b as i64).rem_euclid(r);
        c += rat(x * (r - x), 2 * r);
    }
    Ok(c)
}

/// Polynomial part `1 + A^3 m(m+q)(2m+q)/12 + m (-K.c_2)/(12q)`.
fn polynomial_part(q: u32, a3: &Rational, c2: &Rational, m: i64) -> Rational {
    let q = q as i64;
    int(1) + a3 * rat(m * (m + q) * (2 * m + q), 12) + c2 * rat(m, 12 * q)
}

fn local_types(q: u32, basket: &Basket) -> Result<Vec<LocalType>> {
    basket.points().iter().map(|&p| LocalType::new(p, q)).collect()
}

/// `chi(mA)` by orbifold Riemann-Roch with `chi(O_X) = 1`.
pub fn chi_ma(q: u32, a3: &Rational, basket: &Basket, m: u32) -> Result<Rational> {
    let types = local_types(q, basket)?;
    let c2 = anticanonical_c2(&basket.indices())?;
    let mut chi = polynomial_part(q, a3, &c2, m as i64);
    for t in &types {
        let c = local_contribution(t.point.r, t.point.b, t.of_multiple(m as i64))?;
        chi += c * int(t.point.multiplicity as i64);
    }
    Ok(chi)
}

/// Fast exact evaluator of `chi(mA)` for repeated queries: everything is
/// scaled by a common denominator and kept in `i128`.
#[derive(Debug, Clone)]
pub struct ChiEvaluator {
    denom: i128,
    q: i128,
    a3_num: i128,
    a3_den: i128,
    c2_scaled: i128,
    /// Per point: index and scaled contributions for every local type.
    tables: Vec<(i64, i64, Vec<i128>)>,
}

impl ChiEvaluator {
    pub fn new(q: u32, a3: &Rational, basket: &Basket) -> Result<Self> {
        let types = local_types(q, basket)?;
        let indices = basket.indices();
        let c2 = anticanonical_c2(&indices)?;
        let big = || Error::Invalid(format!("A^3 = {} is too large for fast evaluation", fmt_rational(a3)));
        let a3_num = a3.numer().to_i128().ok_or_else(big)?;
        let a3_den = a3.denom().to_i128().ok_or_else(big)?;
        let r = global_index(&indices) as i128;
        let denom = 24 * q as i128 * r * a3_den;
        let c2_scaled = (c2.clone() * Rational::from_integer(denom.into()))
            .to_integer()
            .to_i128()
            .ok_or_else(big)?;
        let mut tables = Vec::with_capacity(types.len());
        for t in &types {
            let (pr, pb) = (t.point.r, t.point.b);
            let mut table = Vec::with_capacity(pr as usize);
            for i in 0..pr {
                let c = local_contribution(pr, pb, i)? * Rational::from_integer(denom.into());
                debug_assert!(c.is_integer());
                table.push(c.to_integer().to_i128().ok_or_else(big)? * t.point.multiplicity as i128);
            }
            tables.push((pr as i64, t.i_a.value() as i64, table));
        }
        Ok(ChiEvaluator { denom, q: q as i128, a3_num, a3_den, c2_scaled, tables })
    }

    /// `denom * chi(mA)`.
    pub fn scaled(&self, m: u64) -> i128 {
        self.scaled_for(m, self.a3_num)
    }

    /// `denom * chi(mA)` with `A^3` replaced by `a3_num / a3_den`, keeping
    /// the evaluator's denominator.
    pub fn scaled_for(&self, m: u64, a3_num: i128) -> i128 {
        self.scaled_signed(m as i64, a3_num)
    }

    /// As [`Self::scaled_for`], also defined for negative `m`.
    pub fn scaled_signed(&self, m: i64, a3_num: i128) -> i128 {
        let m = m as i128;
        let mut acc = self.denom + a3_num * self.cubic_weight(m as i64);
        acc += m * self.c2_scaled / (12 * self.q);
        for (r, i_a, table) in &self.tables {
            let r = *r as i128;
            let i = (m.rem_euclid(r) * *i_a as i128).rem_euclid(r) as usize;
            acc += table[i];
        }
        acc
    }

    /// Scaled change of `chi(mA)` per unit of the `A^3` numerator.
    pub fn cubic_weight(&self, m: i64) -> i128 {
        let (m, q) = (m as i128, self.q);
        m * (m + q) * (2 * m + q) * (self.denom / self.a3_den / 12)
    }

    pub fn a3_denominator(&self) -> i128 {
        self.a3_den
    }

    /// `denom * (-K . c_2)`.
    pub fn c2_scaled(&self) -> i128 {
        self.c2_scaled
    }

    pub fn denominator(&self) -> i128 {
        self.denom
    }

    /// `chi(mA)` if it is an integer.
    pub fn integral(&self, m: u64) -> Option<i64> {
        self.integral_for(m, self.a3_num)
    }

    pub fn integral_for(&self, m: u64, a3_num: i128) -> Option<i64> {
        let s = self.scaled_for(m, a3_num);
        (s % self.denom == 0).then(|| (s / self.denom) as i64)
    }

    pub fn chi(&self, m: u64) -> Rational {
        Rational::new(self.scaled(m).into(), self.denom.into())
    }
}

/// `h^0(mA) = chi(mA)` for `m = 0..=m_max`, rejecting non-integral or
/// negative values.
pub fn hilbert_row(q: u32, a3: &Rational, basket: &Basket, m_max: u32) -> Result<Vec<i64>> {
    (0..=m_max)
        .map(|m| {
            let chi = chi_ma(q, a3, basket, m)?;
            let v = as_i64(&chi).ok_or_else(|| Error::NonIntegral { m, value: fmt_rational(&chi) })?;
            if v < 0 {
                return Err(Error::NegativeChi { m, value: v });
            }
            Ok(v)
        })
        .collect()
}

/// `g(X) = h^0(-K_X) - 2 = chi(qA) - 2`.
pub fn genus(q: u32, a3: &Rational, basket: &Basket) -> Result<i64> {
    let chi = chi_ma(q, a3, basket, q)?;
    let v = as_i64(&chi).ok_or_else(|| Error::NonIntegral { m: q, value: fmt_rational(&chi) })?;
    Ok(v - 2)
}

/// A numerical Q-Fano type together with its Hilbert data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanoCandidate {
    pub q: u32,
    pub basket: Basket,
    #[serde(rename = "A3", with = "serde_rational")]
    pub a3: Rational,
    pub torsion_order: u32,
    pub hilbert_row: Vec<i64>,
    #[serde(rename = "g")]
    pub genus: i64,
}

impl FanoCandidate {
    /// Evaluates the Hilbert row up to `m_max` (default `max(q+3, 12)`).
    pub fn new(q: u32, basket: Basket, a3: Rational, torsion_order: u32, m_max: Option<u32>) -> Result<Self> {
        validate_fano_index(q)?;
        if !a3.is_positive() {
            return Err(Error::Invalid(format!("A^3 must be positive, got {}", fmt_rational(&a3))));
        }
        if torsion_order == 0 {
            return Err(Error::Invalid("torsion order must be at least 1".into()));
        }
        let m_max = m_max.unwrap_or_else(|| default_truncation(q)).max(q);
        let hilbert_row = hilbert_row(q, &a3, &basket, m_max)?;
        let genus = hilbert_row[q as usize] - 2;
        Ok(FanoCandidate { q, basket, a3, torsion_order, hilbert_row, genus })
    }

    /// `dim |mA| = h^0(mA) - 1`, the form used in tables.
    pub fn dims(&self) -> Vec<i64> {
        self.hilbert_row.iter().map(|h| h - 1).collect()
    }

    /// `p_n(X)`: `h^0(nA)` when the class group is torsion free, otherwise
    /// the maximum of `h^0(nA + jT)` over torsion classes, read from an
    /// equivariant series.
    pub fn p_n(&self, n: u32, series: Option<&EquivariantSeries>) -> Result<i64> {
        if self.torsion_order == 1 {
            if let Some(&h) = self.hilbert_row.get(n as usize) {
                return Ok(h);
            }
            let chi = chi_ma(self.q, &self.a3, &self.basket, n)?;
            return as_i64(&chi).ok_or_else(|| Error::NonIntegral { m: n, value: fmt_rational(&chi) });
        }
        let series = series.ok_or(Error::InsufficientData(n))?;
        series.max_at(n).ok_or(Error::InsufficientData(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basket::IndexBasket;

    fn unit(v: &[u32]) -> Basket {
        Basket::with_unit_pairing(&IndexBasket::new(v.to_vec()).unwrap())
    }

    #[test]
    fn local_contribution_examples() {
        assert_eq!(local_contribution(2, 1, 1).unwrap(), rat(-1, 8));
        assert_eq!(local_contribution(4, 1, 3).unwrap(), rat(-1, 16));
        assert_eq!(local_contribution(7, 3, 0).unwrap(), int(0));
        assert!(local_contribution(6, 2, 1).is_err());
    }

    #[test]
    fn b_reflection_is_exact() {
        for r in 2..=30u32 {
            for b in 1..r {
                if num_integer::Integer::gcd(&b, &r) != 1 {
                    continue;
                }
                for i in 0..r {
                    // BasketPoint normalizes b, so compare against the raw formula.
                    let raw = |b: u32| {
                        let (r, i, b) = (r as i64, i as i64, b as i64);
                        let mut c = -rat(i * (r * r - 1), 12 * r);
                        for j in 1..i {
                            let x = (j * b).rem_euclid(r);
                            c += rat(x * (r - x), 2 * r);
                        }
                        c
                    };
                    assert_eq!(raw(b), raw(r - b));
                    assert_eq!(local_contribution(r, b, i).unwrap(), raw(b));
                }
            }
        }
    }

    #[test]
    fn chi_fixtures() {
        assert_eq!(chi_ma(3, &rat(1, 2), &unit(&[2, 2, 2]), 1).unwrap(), int(2));
        assert_eq!(chi_ma(5, &rat(1, 12), &unit(&[2, 2, 3, 4]), 4).unwrap(), int(5));
        let b = Basket::from_pairs(&[(2, 1), (6, 1), (10, 3)]).unwrap();
        assert_eq!(chi_ma(7, &rat(1, 30), &b, 7).unwrap(), int(7));
        let b1 = unit(&[2, 6, 10]);
        assert_eq!(chi_ma(7, &rat(1, 30), &b1, 7).unwrap(), rat(38, 5));
        assert_eq!(chi_ma(7, &rat(1, 30), &b1, 0).unwrap(), int(1));
    }

    #[test]
    fn torsion_ambiguity_is_reported() {
        assert_eq!(
            chi_ma(3, &rat(1, 2), &unit(&[3]), 1),
            Err(Error::TorsionAmbiguous { q: 3, r: 3 })
        );
    }

    #[test]
    fn hilbert_rows() {
        let x10 = hilbert_row(5, &rat(1, 12), &unit(&[2, 2, 3, 4]), 5).unwrap();
        assert_eq!(x10, vec![1, 1, 2, 3, 5, 7]);
        let x14 = hilbert_row(7, &rat(1, 60), &unit(&[2, 2, 2, 3, 4, 5]), 6).unwrap();
        assert_eq!(x14, vec![1, 0, 1, 1, 2, 2, 3]);
        assert_eq!(genus(5, &rat(1, 12), &unit(&[2, 2, 3, 4])).unwrap(), 5);
        assert_eq!(genus(7, &rat(1, 60), &unit(&[2, 2, 2, 3, 4, 5])).unwrap(), 2);
    }

    #[test]
    fn smooth_sanity() {
        // h^0(-K) = -K^3/2 + 3 on smooth Fano threefolds.
        for (q, a3) in [(1u32, rat(22, 1)), (2, rat(5, 1)), (4, rat(1, 1)), (1, rat(4, 1))] {
            let k3 = &a3 * int((q * q * q) as i64);
            let expect = k3 / int(2) + int(3);
            assert_eq!(chi_ma(q, &a3, &Basket::default(), q).unwrap(), expect);
        }
    }

    #[test]
    fn evaluator_matches_reference() {
        let cases = [
            (5u32, rat(1, 12), unit(&[2, 2, 3, 4])),
            (7, rat(1, 30), Basket::from_pairs(&[(2, 1), (6, 1), (10, 3)]).unwrap()),
            (7, rat(1, 30), unit(&[2, 6, 10])),
            (6, rat(2, 85), Basket::from_pairs(&[(5, 1), (17, 4)]).unwrap()),
            (1, rat(7, 3), unit(&[3, 3])),
        ];
        for (q, a3, b) in cases {
            let ev = ChiEvaluator::new(q, &a3, &b).unwrap();
            for m in 0..80 {
                assert_eq!(ev.chi(m), chi_ma(q, &a3, &b, m as u32).unwrap(), "q={q} m={m}");
            }
        }
    }

    #[test]
    fn candidate_p_n() {
        let c = FanoCandidate::new(5, unit(&[2, 2, 3, 4]), rat(1, 12), 1, None).unwrap();
        assert_eq!(c.p_n(2, None).unwrap(), 2);
        assert_eq!(c.genus, 5);
        assert_eq!(c.hilbert_row.len(), 13);
        let t = FanoCandidate { torsion_order: 2, ..c };
        assert_eq!(t.p_n(2, None), Err(Error::InsufficientData(2)));
        assert_eq!(FanoCandidate::new(10, unit(&[]), rat(1, 1), 1, None), Err(Error::InvalidFanoIndex(10)));
    }
}
