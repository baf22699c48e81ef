//! Enumeration of numerical Q-Fano candidates of a fixed Fano index.
//!
//! For every basket with `sum(r - 1/r) < 24` and indices prime to `q`, and
//! every choice of pairing units, the cube `A^3` runs over `N / R` (`R` the
//! global index). `chi(A)` is linear in `N`, so its integrality is solved as
//! a congruence before the remaining values are checked.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basket::{global_index, kawamata_sum, torsion_basket_check, Basket, BasketPoint, IndexBasket, TorsionCheckMode};
use crate::error::{Error, Result};
use crate::orbifold_rr::{default_truncation, validate_fano_index, ChiEvaluator, FanoCandidate};
use crate::ratmod::{fmt_rational, int, rat, serde_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    pub q: u32,
    /// Upper bound on `q^3 A^3 = -K^3`.
    #[serde(with = "serde_rational")]
    pub max_anticanonical_cube: Rational,
    /// Integrality is checked for `m <= span * lcm(12, R)`.
    pub integrality_span: u32,
    /// Keep only candidates with `dim |3A| <= k`.
    pub require_dim3a_le: Option<i64>,
    /// Require a compatible `n`-torsion subgroup, `n` prime.
    pub torsion: Option<u32>,
    pub torsion_strict: bool,
    pub superadditivity: bool,
    /// Kawamata-Viehweg: `chi(-tA) = 0` for `0 < t < q`.
    pub vanishing: bool,
    /// Bogomolov-Kawamata: `(4q^2 - 3q) A^3 <= 4q A.c_2`.
    pub bogomolov_kawamata: bool,
    /// Allow `A^3` denominators up to `lcm(12, R)` instead of `R`.
    pub wide_denominators: bool,
    /// Hilbert row length stored in each candidate.
    pub truncation: Option<u32>,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Keep rejected `(basket, A^3)` pairs with their first failing filter.
    pub collect_rejections: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            q: 1,
            max_anticanonical_cube: int(72),
            integrality_span: 2,
            require_dim3a_le: None,
            torsion: None,
            torsion_strict: false,
            superadditivity: false,
            vanishing: true,
            bogomolov_kawamata: true,
            wide_denominators: false,
            truncation: None,
            jobs: None,
            collect_rejections: false,
        }
    }
}

impl SearchConfig {
    pub fn for_index(q: u32) -> Self {
        SearchConfig { q, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        validate_fano_index(self.q)?;
        if self.integrality_span == 0 {
            return Err(Error::Invalid("integrality span must be at least 1".into()));
        }
        if let Some(n) = self.torsion {
            // surfaces NotPrime early
            torsion_basket_check(&IndexBasket::empty(), n, TorsionCheckMode::default())?;
        }
        Ok(())
    }

    fn row_length(&self) -> u32 {
        self.truncation.unwrap_or_else(|| default_truncation(self.q)).max(self.q).max(3)
    }
}

/// First filter a candidate failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "filter", rename_all = "kebab-case")]
pub enum Rejection {
    NonIntegral { m: u64 },
    Negative { m: u64 },
    NoAnticanonicalSection,
    Vanishing { t: u32 },
    BogomolovKawamata,
    Superadditivity { a: u32, b: u32 },
    Dim3A { dim: i64 },
    Torsion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedCandidate {
    pub basket: Basket,
    #[serde(rename = "A3", with = "serde_rational")]
    pub a3: Rational,
    pub reason: Rejection,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildOutcome {
    Accepted(FanoCandidate),
    Rejected(Rejection),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub rows: Vec<FanoCandidate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rejected: Vec<RejectedCandidate>,
}

/// All index multisets with entries prime to `q` and `sum(r - 1/r) < cap`,
/// in lexicographic order of their sorted index lists.
pub fn enumerate_baskets(q: u32, cap: &Rational) -> Vec<IndexBasket> {
    fn go(q: u32, min_r: u32, cap: &Rational, sum: &Rational, cur: &mut Vec<u32>, out: &mut Vec<IndexBasket>) {
        out.push(IndexBasket::new(cur.clone()).expect("indices are at least 2"));
        let mut r = min_r;
        loop {
            let next = sum + int(r as i64) - rat(1, r as i64);
            if &next >= cap {
                break;
            }
            if r.gcd(&q) == 1 {
                cur.push(r);
                go(q, r, cap, &next, cur, out);
                cur.pop();
            }
            r += 1;
        }
    }
    let mut out = Vec::new();
    go(q, 2, cap, &Rational::zero(), &mut Vec::new(), &mut out);
    out
}

fn units_up_to_sign(r: u32) -> Vec<u32> {
    (1..=r / 2).filter(|b| b.gcd(&r) == 1).collect()
}

/// Multisets of size `k` drawn from `items` (non-decreasing sequences).
fn multichoose(items: &[u32], k: u32) -> Vec<Vec<u32>> {
    fn go(items: &[u32], start: usize, k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, i, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, 0, k, &mut Vec::new(), &mut out);
    out
}

/// Every choice of pairing units, counted up to permutation of points of
/// equal index.
pub fn pairing_assignments(basket: &IndexBasket) -> Vec<Basket> {
    let mut partial: Vec<Vec<BasketPoint>> = vec![Vec::new()];
    for (r, count) in basket.counts() {
        let choices = multichoose(&units_up_to_sign(r), count);
        let mut next = Vec::with_capacity(partial.len() * choices.len());
        for prefix in &partial {
            for choice in &choices {
                let mut pts = prefix.clone();
                pts.extend(choice.iter().map(|&b| BasketPoint { r, b, multiplicity: 1 }));
                next.push(pts);
            }
        }
        partial = next;
    }
    partial.into_iter().map(Basket::new).collect()
}

fn a3_denominator(basket: &IndexBasket, config: &SearchConfig) -> u64 {
    let r = global_index(basket);
    if config.wide_denominators {
        r.lcm(&12)
    } else {
        r
    }
}

/// Largest numerator `N` with `q^3 N / den <= bound`.
fn max_numerator(q: u32, den: u64, bound: &Rational) -> u64 {
    let x = bound * rat(den as i64, (q as i64).pow(3));
    x.floor().to_integer().to_u64().unwrap_or(0)
}

/// Candidate cubes `N / den` with `q^3 A^3 <= bound`.
pub fn admissible_a3(q: u32, basket: &IndexBasket, config: &SearchConfig) -> Vec<Rational> {
    let den = a3_denominator(basket, config);
    (1..=max_numerator(q, den, &config.max_anticanonical_cube))
        .map(|n| rat(n as i64, den as i64))
        .collect()
}

fn integrality_bound(basket: &IndexBasket, config: &SearchConfig) -> u64 {
    config.integrality_span as u64 * global_index(basket).lcm(&12)
}

/// Runs every filter on one `(q, basket, A^3)`; input errors (an index
/// sharing a factor with `q`, a non-terminal basket) are `Err`.
pub fn build_candidate(q: u32, basket: &Basket, a3: &Rational, config: &SearchConfig) -> Result<BuildOutcome> {
    let ev = ChiEvaluator::new(q, a3, basket)?;
    Ok(check(q, basket, a3, &ev, a3.numer().to_i128().unwrap_or(0), config))
}

fn check(q: u32, basket: &Basket, a3: &Rational, ev: &ChiEvaluator, a3_num: i128, config: &SearchConfig) -> BuildOutcome {
    let indices = basket.indices();
    let span = integrality_bound(&indices, config);
    let keep = config.row_length() as u64;
    let mut row = Vec::with_capacity(keep as usize + 1);
    for m in 0..=span.max(keep) {
        let Some(v) = ev.integral_for(m, a3_num) else {
            return BuildOutcome::Rejected(Rejection::NonIntegral { m });
        };
        if v < 0 {
            return BuildOutcome::Rejected(Rejection::Negative { m });
        }
        if m <= keep {
            row.push(v);
        }
    }
    if row[q as usize] < 1 {
        return BuildOutcome::Rejected(Rejection::NoAnticanonicalSection);
    }
    if config.vanishing {
        for t in 1..q {
            if ev.scaled_signed(-(t as i64), a3_num) != 0 {
                return BuildOutcome::Rejected(Rejection::Vanishing { t });
            }
        }
    }
    if config.bogomolov_kawamata {
        // (4q^2 - 3q) A^3 <= 4 (-K.c_2), both sides scaled by denom
        let q = q as i128;
        let lhs = (4 * q * q - 3 * q) * a3_num * (ev.denominator() / ev.a3_denominator());
        if lhs > 4 * ev.c2_scaled() {
            return BuildOutcome::Rejected(Rejection::BogomolovKawamata);
        }
    }
    if let Some(k) = config.require_dim3a_le {
        let dim = row[3] - 1;
        if dim > k {
            return BuildOutcome::Rejected(Rejection::Dim3A { dim });
        }
    }
    if config.superadditivity {
        let top = row.len() as u32 - 1;
        for a in 1..=top / 2 {
            for b in a..=top - a {
                let (ha, hb, hab) = (row[a as usize], row[b as usize], row[(a + b) as usize]);
                if ha > 0 && hb > 0 && hab < ha + hb - 1 {
                    return BuildOutcome::Rejected(Rejection::Superadditivity { a, b });
                }
            }
        }
    }
    if let Some(n) = config.torsion {
        let mode = TorsionCheckMode { strict: config.torsion_strict };
        if !matches!(torsion_basket_check(&indices, n, mode), Ok(Some(_))) {
            return BuildOutcome::Rejected(Rejection::Torsion);
        }
    }
    let genus = row[q as usize] - 2;
    BuildOutcome::Accepted(FanoCandidate {
        q,
        basket: basket.clone(),
        a3: a3.clone(),
        torsion_order: config.torsion.unwrap_or(1),
        hilbert_row: row,
        genus,
    })
}

/// Numerators `N <= n_max` for which `chi(A)` is an integer.
fn numerators_with_integral_chi1(ev: &ChiEvaluator, n_max: u64) -> Vec<u64> {
    let d = ev.denominator();
    let base = ev.scaled_for(1, 0).rem_euclid(d);
    let step = ev.cubic_weight(1).rem_euclid(d);
    // base + N * step = 0 (mod d)
    let g = step.gcd(&d);
    if base % g != 0 {
        return Vec::new();
    }
    let modulus = d / g;
    if modulus == 1 {
        return (1..=n_max).collect();
    }
    let inv = crate::ratmod::inv_mod(((step / g) % modulus) as i64, modulus as i64)
        .expect("reduced coefficient is a unit")
        .value() as i128;
    let first = ((-(base / g)).rem_euclid(modulus) * inv).rem_euclid(modulus);
    let first = if first == 0 { modulus } else { first };
    (0..)
        .map(|k| first + k * modulus)
        .take_while(|&n| n <= n_max as i128)
        .map(|n| n as u64)
        .collect()
}

fn search_basket(indices: &IndexBasket, config: &SearchConfig) -> (Vec<FanoCandidate>, Vec<RejectedCandidate>) {
    let q = config.q;
    let den = a3_denominator(indices, config);
    let n_max = max_numerator(q, den, &config.max_anticanonical_cube);
    let mut rows = Vec::new();
    let mut rejected = Vec::new();
    if n_max == 0 {
        return (rows, rejected);
    }
    for basket in pairing_assignments(indices) {
        let ev = ChiEvaluator::new(q, &rat(1, den as i64), &basket).expect("enumerated baskets are valid");
        let numerators: Vec<u64> = if config.collect_rejections {
            (1..=n_max).collect()
        } else {
            numerators_with_integral_chi1(&ev, n_max)
        };
        for n in numerators {
            let a3 = rat(n as i64, den as i64);
            // a3 may reduce; the evaluator's denominator stays `den`.
            match check(q, &basket, &a3, &ev, n as i128, config) {
                BuildOutcome::Accepted(c) => rows.push(c),
                BuildOutcome::Rejected(reason) if config.collect_rejections => {
                    rejected.push(RejectedCandidate { basket: basket.clone(), a3, reason })
                }
                BuildOutcome::Rejected(_) => {}
            }
        }
    }
    (rows, rejected)
}

/// Every candidate passing the configured filters, sorted by `A^3` and
/// then by basket. The order does not depend on scheduling.
pub fn search_q(config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    let baskets = enumerate_baskets(config.q, &int(24));
    let run = || {
        baskets
            .par_iter()
            .map(|b| search_basket(b, config))
            .collect::<Vec<_>>()
    };
    let parts = match config.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Invalid(format!("cannot start {n} worker threads: {e}")))?
            .install(run),
        None => run(),
    };
    let mut result = SearchResult::default();
    for (rows, rejected) in parts {
        result.rows.extend(rows);
        result.rejected.extend(rejected);
    }
    result.rows.sort_by(|x, y| (&x.a3, &x.basket).cmp(&(&y.a3, &y.basket)));
    result
        .rejected
        .sort_by(|x, y| (&x.a3, &x.basket).cmp(&(&y.a3, &y.basket)));
    Ok(result)
}

/// Resolves pairing units for an index-only basket: the unique assignment
/// making `chi(mA)` integral over the check span. Errors when none or
/// several assignments survive.
pub fn resolve_pairing(q: u32, a3: &Rational, indices: &IndexBasket) -> Result<Basket> {
    let config = SearchConfig::for_index(q);
    let mut ok = Vec::new();
    for basket in pairing_assignments(indices) {
        let ev = ChiEvaluator::new(q, a3, &basket)?;
        let span = integrality_bound(indices, &config);
        if (0..=span).all(|m| ev.integral(m).is_some()) {
            ok.push(basket);
        }
    }
    match ok.len() {
        1 => Ok(ok.pop().expect("one element")),
        0 => Err(Error::Invalid(format!(
            "no pairing of basket {indices} gives integral chi(mA) for A^3 = {}",
            fmt_rational(a3)
        ))),
        k => Err(Error::Invalid(format!(
            "{k} pairings of basket {indices} give integral chi(mA); specify them as r:b"
        ))),
    }
}

/// Baskets rejected outright by the terminal bound, for reporting.
pub fn exceeds_kawamata_bound(indices: &IndexBasket) -> bool {
    kawamata_sum(indices) >= int(24)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ib(v: &[u32]) -> IndexBasket {
        IndexBasket::new(v.to_vec()).unwrap()
    }

    #[test]
    fn basket_enumeration() {
        let b6 = enumerate_baskets(6, &int(24));
        assert!(b6.contains(&ib(&[5, 17])));
        let b7 = enumerate_baskets(7, &int(24));
        assert!(b7.contains(&ib(&[2, 2, 2, 3, 4, 5])));
        assert!(b7.iter().all(|b| b.indices().iter().all(|r| r % 7 != 0)));
        assert!(b7.windows(2).all(|w| w[0].indices() < w[1].indices()));
        assert!(b7.iter().all(|b| !exceeds_kawamata_bound(b)));
        assert!(b6.iter().all(|b| b.indices().iter().all(|&r| r.gcd(&6) == 1)));
    }

    #[test]
    fn pairing_counts() {
        assert_eq!(pairing_assignments(&ib(&[2, 2, 3, 4])).len(), 1);
        let p = pairing_assignments(&ib(&[2, 6, 10]));
        assert_eq!(p.len(), 2);
        assert_eq!(pairing_assignments(&ib(&[5, 17])).len(), 16);
        // two points of index 5: {1,1}, {1,2}, {2,2}
        assert_eq!(pairing_assignments(&ib(&[5, 5])).len(), 3);
    }

    #[test]
    fn a3_lattice() {
        let c = SearchConfig::for_index(7);
        assert!(admissible_a3(7, &ib(&[2, 3, 13]), &c).contains(&rat(1, 78)));
        let c6 = SearchConfig::for_index(6);
        assert!(admissible_a3(6, &ib(&[5, 17]), &c6).contains(&rat(2, 85)));
        let tight = SearchConfig { max_anticanonical_cube: rat(1, 2), ..c6 };
        assert!(admissible_a3(6, &ib(&[2]), &tight).is_empty());
    }

    #[test]
    fn build_fixtures() {
        let c = SearchConfig::for_index(7);
        let x14 = Basket::with_unit_pairing(&ib(&[2, 2, 2, 3, 4, 5]));
        match build_candidate(7, &x14, &rat(1, 60), &c).unwrap() {
            BuildOutcome::Accepted(f) => assert_eq!(&f.dims()[..6], &[0, -1, 0, 0, 1, 1]),
            r => panic!("{r:?}"),
        }
        let b1 = Basket::with_unit_pairing(&ib(&[2, 6, 10]));
        assert!(matches!(
            build_candidate(7, &b1, &rat(1, 30), &c).unwrap(),
            BuildOutcome::Rejected(Rejection::NonIntegral { .. })
        ));
        let b3 = Basket::from_pairs(&[(2, 1), (6, 1), (10, 3)]).unwrap();
        match build_candidate(7, &b3, &rat(1, 30), &c).unwrap() {
            BuildOutcome::Accepted(f) => assert_eq!(f.genus, 5),
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn congruence_matches_direct_check() {
        for (q, v) in [(7u32, vec![2u32, 6, 10]), (5, vec![2, 2, 3, 4]), (6, vec![5, 17]), (1, vec![2, 3])] {
            let indices = ib(&v);
            let den = global_index(&indices);
            for basket in pairing_assignments(&indices) {
                let ev = ChiEvaluator::new(q, &rat(1, den as i64), &basket).unwrap();
                let fast = numerators_with_integral_chi1(&ev, 500);
                let slow: Vec<u64> = (1..=500).filter(|&n| ev.integral_for(1, n as i128).is_some()).collect();
                assert_eq!(fast, slow);
            }
        }
    }

    #[test]
    fn resolve_pairing_picks_b10_3() {
        let b = resolve_pairing(7, &rat(1, 30), &ib(&[2, 6, 10])).unwrap();
        assert_eq!(b.triples(), vec![[2, 1, 1], [6, 1, 1], [10, 3, 1]]);
    }
}
