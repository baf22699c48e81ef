//! Baskets of terminal cyclic quotient points.
//!
//! An [`IndexBasket`] is the index-only collection `B(X)` used in tables and
//! torsion tests. A [`Basket`] additionally carries the pairing unit `b` of
//! each point (type `1/r(1,-1,b)`), which Riemann-Roch needs.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratmod::{int, lcm_all, rat, Rational};

/// Sorted multiset of point indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct IndexBasket(Vec<u32>);

impl IndexBasket {
    pub fn new(mut indices: Vec<u32>) -> Result<Self> {
        if let Some(&r) = indices.iter().find(|&&r| r < 2) {
            return Err(Error::InvalidPoint {
                r,
                b: 0,
                reason: "index must be at least 2",
            });
        }
        indices.sort_unstable();
        Ok(IndexBasket(indices))
    }

    pub fn empty() -> Self {
        IndexBasket(Vec::new())
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(value, count)` pairs in ascending order.
    pub fn counts(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &r in &self.0 {
            match out.last_mut() {
                Some((v, c)) if *v == r => *c += 1,
                _ => out.push((r, 1)),
            }
        }
        out
    }
}

impl fmt::Display for IndexBasket {
    /// Table-style shorthand, e.g. `(2^3, 3, 4, 5)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts()
            .into_iter()
            .map(|(r, c)| if c == 1 { r.to_string() } else { format!("{r}^{c}") })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One token of the basket shorthand: `r`, `r^k`, `r:b` or `r:b^k`.
fn parse_token(tok: &str, whole: &str) -> Result<(u32, Option<u32>, u32)> {
    let err = || Error::ParseBasket(whole.to_string());
    let (body, mult) = match tok.split_once('^') {
        Some((b, m)) => (b, m.trim().parse::<u32>().map_err(|_| err())?),
        None => (tok, 1),
    };
    let (r, b) = match body.split_once(':') {
        Some((r, b)) => (r, Some(b.trim().parse::<u32>().map_err(|_| err())?)),
        None => (body, None),
    };
    let r = r.trim().parse::<u32>().map_err(|_| err())?;
    if mult == 0 {
        return Err(err());
    }
    Ok((r, b, mult))
}

fn tokens(s: &str) -> impl Iterator<Item = &str> {
    s.trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']'])
        .split([',', ' '])
        .map(str::trim)
        .filter(|t| !t.is_empty())
}

/// Basket shorthand as typed on the command line: indices with optional
/// multiplicity exponents and optional pairing units, e.g. `"2^3,3,4,5"` or
/// `"2,6,10:3"`. Points without `:b` are reported as `None`.
pub fn parse_basket_spec(s: &str) -> Result<Vec<(u32, Option<u32>, u32)>> {
    tokens(s).map(|t| parse_token(t, s)).collect()
}

impl FromStr for IndexBasket {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for (r, b, k) in parse_basket_spec(s)? {
            if b.is_some() {
                return Err(Error::ParseBasket(s.to_string()));
            }
            out.extend(std::iter::repeat_n(r, k as usize));
        }
        IndexBasket::new(out)
    }
}

/// A basket point of type `1/r(1,-1,b)` with multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasketPoint {
    pub r: u32,
    pub b: u32,
    pub multiplicity: u32,
}

impl BasketPoint {
    /// Normalizes `b` into `[1, r/2]`; `b` and `r - b` give identical
    /// Riemann-Roch contributions.
    pub fn new(r: u32, b: u32, multiplicity: u32) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidPoint { r, b, reason: "index must be at least 2" });
        }
        if multiplicity == 0 {
            return Err(Error::InvalidPoint { r, b, reason: "multiplicity must be positive" });
        }
        let mut b = b % r;
        if b.gcd(&r) != 1 {
            return Err(Error::InvalidPoint { r, b, reason: "gcd(b, r) must be 1" });
        }
        if b > r / 2 {
            b = r - b;
        }
        Ok(BasketPoint { r, b, multiplicity })
    }
}

/// Multiset of basket points, kept sorted by `(r, b)` with equal points merged.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Basket {
    points: Vec<BasketPoint>,
}

impl Basket {
    pub fn new(points: impl IntoIterator<Item = BasketPoint>) -> Self {
        let mut pts: Vec<BasketPoint> = points.into_iter().collect();
        pts.sort_by_key(|p| (p.r, p.b));
        let mut merged: Vec<BasketPoint> = Vec::with_capacity(pts.len());
        for p in pts {
            match merged.last_mut() {
                Some(last) if last.r == p.r && last.b == p.b => last.multiplicity += p.multiplicity,
                _ => merged.push(p),
            }
        }
        Basket { points: merged }
    }

    /// Builds from `(r, b)` pairs, one point each.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        let pts = pairs
            .iter()
            .map(|&(r, b)| BasketPoint::new(r, b, 1))
            .collect::<Result<Vec<_>>>()?;
        Ok(Basket::new(pts))
    }

    /// Every point gets `b = 1`.
    pub fn with_unit_pairing(indices: &IndexBasket) -> Self {
        Basket::new(indices.counts().into_iter().map(|(r, c)| BasketPoint { r, b: 1, multiplicity: c }))
    }

    pub fn points(&self) -> &[BasketPoint] {
        &self.points
    }

    pub fn indices(&self) -> IndexBasket {
        let mut v = Vec::new();
        for p in &self.points {
            v.extend(std::iter::repeat_n(p.r, p.multiplicity as usize));
        }
        v.sort_unstable();
        IndexBasket(v)
    }

    /// Sorted `[r, b, multiplicity]` triples, the serialized form.
    pub fn triples(&self) -> Vec<[u32; 3]> {
        self.points.iter().map(|p| [p.r, p.b, p.multiplicity]).collect()
    }

    pub fn from_triples(triples: &[[u32; 3]]) -> Result<Self> {
        let pts = triples
            .iter()
            .map(|t| BasketPoint::new(t[0], t[1], t[2]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Basket::new(pts))
    }
}

impl Serialize for Basket {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.triples().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Basket {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = Vec::<[u32; 3]>::deserialize(d)?;
        Basket::from_triples(&t).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|p| {
                if p.multiplicity == 1 {
                    format!("{}:{}", p.r, p.b)
                } else {
                    format!("{}:{}^{}", p.r, p.b, p.multiplicity)
                }
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Terminal singularity types that occur in the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointKind {
    CyclicQuotient,
    #[serde(rename = "cA")]
    CA,
    #[serde(rename = "cAx4")]
    CAx4,
    #[serde(rename = "cD2")]
    CD2,
    #[serde(rename = "cE2")]
    CE2,
    Gorenstein,
}

/// A terminal point: kind, index `r`, axial weight `aw`, and for cyclic
/// quotients the weight `a` of the type `1/r(1,a,r-a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingularPointSpec {
    pub kind: PointKind,
    pub r: u32,
    pub aw: u32,
    #[serde(default = "one")]
    pub a: u32,
}

fn one() -> u32 {
    1
}

impl SingularPointSpec {
    pub fn new(kind: PointKind, r: u32, aw: u32, a: u32) -> Result<Self> {
        let spec = SingularPointSpec { kind, r, aw, a };
        spec.validate()?;
        Ok(spec)
    }

    pub fn cyclic(r: u32, a: u32) -> Self {
        SingularPointSpec { kind: PointKind::CyclicQuotient, r, aw: 1, a }
    }

    pub fn gorenstein() -> Self {
        SingularPointSpec { kind: PointKind::Gorenstein, r: 1, aw: 1, a: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason| Err(Error::InvalidPoint { r: self.r, b: self.a, reason });
        match self.kind {
            PointKind::CAx4 if self.r != 4 => bad("cAx/4 points have index 4"),
            PointKind::CyclicQuotient if self.aw != 1 => bad("cyclic quotient points have axial weight 1"),
            PointKind::CD2 | PointKind::CE2 if self.r != 2 => bad("cD/2 and cE/2 points have index 2"),
            PointKind::Gorenstein => Ok(()),
            _ if self.r < 2 => bad("non-Gorenstein points have index at least 2"),
            _ if self.aw == 0 => bad("axial weight must be positive"),
            _ => Ok(()),
        }
    }

    pub fn is_gorenstein(&self) -> bool {
        self.kind == PointKind::Gorenstein
    }
}

/// Basket of a single terminal point: `(4, 2, ..., 2)` for cAx/4, otherwise
/// `aw` copies of `r`. Gorenstein points contribute nothing.
pub fn expand_point(spec: &SingularPointSpec) -> Result<IndexBasket> {
    spec.validate()?;
    let v = match spec.kind {
        PointKind::Gorenstein => Vec::new(),
        PointKind::CAx4 => {
            let mut v = vec![4];
            v.extend(std::iter::repeat_n(2, spec.aw as usize - 1));
            v
        }
        _ => vec![spec.r; spec.aw as usize],
    };
    IndexBasket::new(v)
}

/// `sum (r - 1/r)` over the basket.
pub fn kawamata_sum(basket: &IndexBasket) -> Rational {
    basket
        .indices()
        .iter()
        .map(|&r| int(r as i64) - rat(1, r as i64))
        .sum()
}

/// `-K_X . c_2(X) = 24 - sum (r - 1/r)`, valid for `chi(O_X) = 1`.
pub fn anticanonical_c2(basket: &IndexBasket) -> Result<Rational> {
    let s = kawamata_sum(basket);
    if s >= int(24) {
        return Err(Error::NotTerminalFano(crate::ratmod::fmt_rational(&s)));
    }
    Ok(int(24) - s)
}

/// Global Gorenstein index `lcm(r)`; 1 for the empty basket.
pub fn global_index(basket: &IndexBasket) -> u64 {
    let v: Vec<u64> = basket.indices().iter().map(|&r| r as u64).collect();
    lcm_all(&v)
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Options for [`torsion_basket_check`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TorsionCheckMode {
    /// Only points whose index is divisible by `n` may carry the torsion.
    pub strict: bool,
}

/// Tests whether an `n`-torsion Weil divisor class can exist on a Fano with
/// this basket: some sub-multiset of indices (the points where the torsion
/// class is not Cartier) must be `(7,7,7)` for `n = 7`; `(5^4)`, `(10,5,5)`
/// or `(10,10)` for `n = 5`; sum to 18 for `n = 3`; sum to 16 for `n = 2`.
/// Returns a witness sub-multiset when one exists.
pub fn torsion_basket_check(basket: &IndexBasket, n: u32, mode: TorsionCheckMode) -> Result<Option<Vec<u32>>> {
    if !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    let eligible: Vec<(u32, u32)> = basket
        .counts()
        .into_iter()
        .filter(|(r, _)| !mode.strict || r % n == 0)
        .collect();
    let count = |v: u32| eligible.iter().find(|(r, _)| *r == v).map_or(0, |(_, c)| *c);
    let witness = match n {
        7 => (count(7) >= 3).then(|| vec![7, 7, 7]),
        5 => {
            if count(5) >= 4 {
                Some(vec![5, 5, 5, 5])
            } else if count(10) >= 1 && count(5) >= 2 {
                Some(vec![5, 5, 10])
            } else if count(10) >= 2 {
                Some(vec![10, 10])
            } else {
                None
            }
        }
        3 => subset_with_sum(&eligible, 18),
        2 => subset_with_sum(&eligible, 16),
        _ => None,
    };
    Ok(witness)
}

/// Sub-multiset of `counts` with the given sum, preferring large parts.
fn subset_with_sum(counts: &[(u32, u32)], target: u32) -> Option<Vec<u32>> {
    fn go(counts: &[(u32, u32)], idx: usize, rest: u32, acc: &mut Vec<u32>) -> bool {
        if rest == 0 {
            return !acc.is_empty();
        }
        if idx == 0 {
            return false;
        }
        let (v, c) = counts[idx - 1];
        let max_k = c.min(rest / v);
        for k in (0..=max_k).rev() {
            for _ in 0..k {
                acc.push(v);
            }
            if go(counts, idx - 1, rest - k * v, acc) {
                return true;
            }
            for _ in 0..k {
                acc.pop();
            }
        }
        false
    }
    let mut acc = Vec::new();
    if go(counts, counts.len(), target, &mut acc) {
        acc.sort_unstable();
        Some(acc)
    } else {
        None
    }
}

/// `q_W = q_Q` exactly when `q` is prime to the global index.
pub fn qw_equals_qq(q: u32, basket: &IndexBasket) -> bool {
    (q as u64).gcd(&global_index(basket)) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ib(v: &[u32]) -> IndexBasket {
        IndexBasket::new(v.to_vec()).unwrap()
    }

    /// Exact-fraction oracle: sum r - 1/r over a common denominator by hand.
    fn kawamata_oracle(v: &[u32]) -> Rational {
        let den: i64 = v.iter().map(|&r| r as i64).product::<i64>().max(1);
        let num: i64 = v.iter().map(|&r| (r as i64) * den - den / r as i64).sum();
        rat(num, den)
    }

    #[test]
    fn expand_examples() {
        let cax = SingularPointSpec::new(PointKind::CAx4, 4, 3, 1).unwrap();
        assert_eq!(expand_point(&cax).unwrap(), ib(&[2, 2, 4]));
        let ca = SingularPointSpec::new(PointKind::CA, 5, 2, 1).unwrap();
        assert_eq!(expand_point(&ca).unwrap(), ib(&[5, 5]));
        assert_eq!(expand_point(&SingularPointSpec::cyclic(3, 1)).unwrap(), ib(&[3]));
        assert!(expand_point(&SingularPointSpec::gorenstein()).unwrap().is_empty());
        assert!(SingularPointSpec::new(PointKind::CAx4, 3, 2, 1).is_err());
        assert!(SingularPointSpec::new(PointKind::CyclicQuotient, 3, 2, 1).is_err());
    }

    #[test]
    fn kawamata_examples() {
        assert_eq!(kawamata_sum(&ib(&[2, 6, 10])), rat(517, 30));
        assert_eq!(kawamata_sum(&ib(&[2, 2, 3, 4])), rat(113, 12));
        assert_eq!(kawamata_sum(&ib(&[])), int(0));
        assert_eq!(kawamata_oracle(&[2, 6, 10]), rat(517, 30));
        assert_eq!(kawamata_oracle(&[2, 2, 3, 4]), rat(113, 12));
    }

    #[test]
    fn c2_examples() {
        assert_eq!(anticanonical_c2(&ib(&[2, 2, 3, 4])).unwrap(), rat(175, 12));
        assert_eq!(anticanonical_c2(&ib(&[2, 6, 10])).unwrap(), rat(203, 30));
        assert_eq!(anticanonical_c2(&ib(&[])).unwrap(), int(24));
        assert!(matches!(anticanonical_c2(&ib(&[2; 16])), Err(Error::NotTerminalFano(_))));
        assert!(matches!(anticanonical_c2(&ib(&[25])), Err(Error::NotTerminalFano(_))));
    }

    #[test]
    fn global_index_examples() {
        assert_eq!(global_index(&ib(&[2, 2, 3, 4])), 12);
        assert_eq!(global_index(&ib(&[2, 3, 13])), 78);
        assert_eq!(global_index(&ib(&[5, 17])), 85);
        assert_eq!(global_index(&ib(&[])), 1);
        for aw in 1..6 {
            let cax = SingularPointSpec::new(PointKind::CAx4, 4, aw, 1).unwrap();
            assert_eq!(global_index(&expand_point(&cax).unwrap()), 4);
        }
    }

    #[test]
    fn torsion_examples() {
        let m = TorsionCheckMode::default();
        assert_eq!(torsion_basket_check(&ib(&[2, 6, 10]), 2, m).unwrap(), Some(vec![6, 10]));
        assert_eq!(torsion_basket_check(&ib(&[2, 9, 9]), 3, m).unwrap(), Some(vec![9, 9]));
        assert_eq!(torsion_basket_check(&ib(&[2, 2, 3, 4]), 2, m).unwrap(), None);
        assert_eq!(torsion_basket_check(&ib(&[7, 7, 7, 2]), 7, m).unwrap(), Some(vec![7, 7, 7]));
        assert_eq!(torsion_basket_check(&ib(&[5, 5, 10]), 5, m).unwrap(), Some(vec![5, 5, 10]));
        assert_eq!(torsion_basket_check(&ib(&[2, 2, 3]), 11, m).unwrap(), None);
        assert_eq!(torsion_basket_check(&ib(&[2]), 4, m), Err(Error::NotPrime(4)));
        // (2,4,14): 2 + 14 = 16
        assert_eq!(torsion_basket_check(&ib(&[2, 4, 14]), 2, m).unwrap(), Some(vec![2, 14]));
        let strict = TorsionCheckMode { strict: true };
        assert_eq!(torsion_basket_check(&ib(&[3, 5, 8]), 2, m).unwrap(), Some(vec![3, 5, 8]));
        assert_eq!(torsion_basket_check(&ib(&[3, 5, 8]), 2, strict).unwrap(), None);
        assert_eq!(torsion_basket_check(&ib(&[3, 5, 8, 8]), 2, strict).unwrap(), Some(vec![8, 8]));
        assert_eq!(torsion_basket_check(&ib(&[3, 5, 7, 9]), 2, strict).unwrap(), None);
    }

    #[test]
    fn qw_examples() {
        assert!(qw_equals_qq(5, &ib(&[2, 2, 3, 4])));
        assert!(!qw_equals_qq(3, &ib(&[2, 3, 3, 12])));
        assert!(qw_equals_qq(7, &ib(&[2, 3, 13])));
    }

    #[test]
    fn parsing_and_display() {
        let b: IndexBasket = "(2^3, 3, 4, 5)".parse().unwrap();
        assert_eq!(b, ib(&[2, 2, 2, 3, 4, 5]));
        assert_eq!(b.to_string(), "(2^3,3,4,5)");
        assert_eq!("2,2,3,4".parse::<IndexBasket>().unwrap(), ib(&[2, 2, 3, 4]));
        assert!("2,x".parse::<IndexBasket>().is_err());
        assert!("1,2".parse::<IndexBasket>().is_err());
        let spec = parse_basket_spec("2,6,10:3").unwrap();
        assert_eq!(spec, vec![(2, None, 1), (6, None, 1), (10, Some(3), 1)]);
    }

    #[test]
    fn basket_normalizes_pairing() {
        let b = Basket::from_pairs(&[(10, 7), (10, 3), (2, 1)]).unwrap();
        assert_eq!(b.triples(), vec![[2, 1, 1], [10, 3, 2]]);
        assert!(BasketPoint::new(6, 2, 1).is_err());
        let json = serde_json_like(&b);
        assert_eq!(json, "[[2,1,1],[10,3,2]]");
    }

    fn serde_json_like(b: &Basket) -> String {
        let t = b.triples();
        let parts: Vec<String> = t.iter().map(|x| format!("[{},{},{}]", x[0], x[1], x[2])).collect();
        format!("[{}]", parts.join(","))
    }

    fn brute_force(v: &[u32], n: u32, strict: bool) -> bool {
        let k = v.len();
        (1u32..(1 << k)).any(|mask| {
            let sub: Vec<u32> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| v[i]).collect();
            if strict && sub.iter().any(|r| r % n != 0) {
                return false;
            }
            let mut s = sub.clone();
            s.sort_unstable();
            match n {
                7 => s == [7, 7, 7],
                5 => s == [5, 5, 5, 5] || s == [5, 5, 10] || s == [10, 10],
                3 => s.iter().sum::<u32>() == 18,
                2 => s.iter().sum::<u32>() == 16,
                _ => false,
            }
        })
    }

    proptest! {
        #[test]
        fn torsion_check_matches_brute_force(
            v in proptest::collection::vec(2u32..16, 0..=8),
            n in prop_oneof![Just(2u32), Just(3), Just(5), Just(7), Just(11)],
            strict in any::<bool>(),
        ) {
            let b = IndexBasket::new(v.clone()).unwrap();
            let got = torsion_basket_check(&b, n, TorsionCheckMode { strict }).unwrap();
            prop_assert_eq!(got.is_some(), brute_force(&v, n, strict));
            if let Some(w) = got {
                let mut rest = b.indices().to_vec();
                for x in &w {
                    let pos = rest.iter().position(|y| y == x);
                    prop_assert!(pos.is_some(), "witness is not a sub-multiset");
                    rest.remove(pos.unwrap());
                }
            }
        }

        #[test]
        fn kawamata_sum_matches_oracle(v in proptest::collection::vec(2u32..12, 0..=6)) {
            let b = IndexBasket::new(v.clone()).unwrap();
            prop_assert_eq!(kawamata_sum(&b), kawamata_oracle(&v));
        }

        #[test]
        fn expand_preserves_axial_weight(aw in 1u32..10, r in 2u32..20, kind in 0usize..4) {
            let spec = match kind {
                0 => SingularPointSpec::new(PointKind::CAx4, 4, aw, 1).unwrap(),
                1 => SingularPointSpec::new(PointKind::CA, r, aw, 1).unwrap(),
                2 => SingularPointSpec::new(PointKind::CD2, 2, aw, 1).unwrap(),
                _ => SingularPointSpec::cyclic(r, 1),
            };
            let want = if spec.kind == PointKind::CyclicQuotient { 1 } else { aw as usize };
            prop_assert_eq!(expand_point(&spec).unwrap().len(), want);
        }
    }
}
