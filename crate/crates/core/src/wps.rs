//! Weighted projective hypersurfaces: invariants and Hilbert series by
//! monomial counting, optionally graded by a cyclic group character.
//!
//! Also holds the degree-10 normal form classifier for `P(1,2,3,4,5)` and
//! the table of del Pezzo bases of rank-one class group.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratmod::{fmt_rational, inv_mod, rat, serde_rational, Rational};

/// Cyclic group action `mu_n` with per-coordinate characters and the
/// character of the defining equation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupAction {
    pub order: u32,
    pub characters: Vec<u32>,
    pub equation_character: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedHypersurface {
    pub weights: Vec<u32>,
    pub degree: u32,
    pub action: Option<GroupAction>,
}

impl WeightedHypersurface {
    pub fn new(weights: Vec<u32>, degree: u32, action: Option<GroupAction>) -> Result<Self> {
        if !(4..=5).contains(&weights.len()) {
            return Err(Error::InvalidHypersurface(format!(
                "expected 4 or 5 weights, got {}",
                weights.len()
            )));
        }
        if weights.contains(&0) || degree == 0 {
            return Err(Error::InvalidHypersurface("weights and degree must be positive".into()));
        }
        if let Some(a) = &action {
            if a.order == 0 {
                return Err(Error::InvalidHypersurface("group order must be positive".into()));
            }
            if a.characters.len() != weights.len() {
                return Err(Error::InvalidHypersurface(format!(
                    "{} characters for {} coordinates",
                    a.characters.len(),
                    weights.len()
                )));
            }
        }
        Ok(WeightedHypersurface { weights, degree, action })
    }

    pub fn weight_sum(&self) -> u32 {
        self.weights.iter().sum()
    }
}

impl fmt::Display for WeightedHypersurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{} : {}", join(&self.weights), self.degree)?;
        if let Some(a) = &self.action {
            write!(f, " / mu {} : {} ; {}", a.order, join(&a.characters), a.equation_character)?;
        }
        Ok(())
    }
}

fn parse_list(s: &str, whole: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidHypersurface(format!("bad number {t:?} in {whole:?}")))
        })
        .collect()
}

impl FromStr for WeightedHypersurface {
    type Err = Error;

    /// `"w1,..,w5 : d"` optionally followed by `"/ mu n : c1,..,c5 ; cf"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidHypersurface(format!("{why} in {s:?}"));
        let (base, action) = match s.split_once('/') {
            Some((b, a)) => (b, Some(a)),
            None => (s, None),
        };
        let (w, d) = base.split_once(':').ok_or_else(|| bad("missing ':' before degree"))?;
        let weights = parse_list(w, s)?;
        let degree = d.trim().parse::<u32>().map_err(|_| bad("bad degree"))?;
        let action = match action {
            None => None,
            Some(a) => {
                let a = a.trim().strip_prefix("mu").ok_or_else(|| bad("expected 'mu n'"))?;
                let (n, rest) = a.split_once(':').ok_or_else(|| bad("missing ':' after group order"))?;
                let (chars, cf) = rest.split_once(';').ok_or_else(|| bad("missing ';' before equation character"))?;
                Some(GroupAction {
                    order: n.trim().parse().map_err(|_| bad("bad group order"))?,
                    characters: parse_list(chars, s)?,
                    equation_character: cf.trim().parse().map_err(|_| bad("bad equation character"))?,
                })
            }
        };
        WeightedHypersurface::new(weights, degree, action)
    }
}

/// `q = sum(w) - d`.
pub fn fano_index(wh: &WeightedHypersurface) -> Result<u32> {
    let sum = wh.weight_sum();
    if wh.degree >= sum {
        return Err(Error::NotFano { d: wh.degree, sum });
    }
    Ok(sum - wh.degree)
}

/// `A^3 = d / prod(w)` (for surfaces this is `A^2`).
pub fn degree_a3(wh: &WeightedHypersurface) -> Rational {
    let prod: i64 = wh.weights.iter().map(|&w| w as i64).product();
    rat(wh.degree as i64, prod)
}

/// Number of monomials of weighted degree `k` for every `k <= k_max`.
pub fn monomial_counts(weights: &[u32], k_max: u32) -> Vec<i64> {
    let mut counts = vec![0i64; k_max as usize + 1];
    counts[0] = 1;
    for &w in weights {
        for k in w as usize..=k_max as usize {
            counts[k] += counts[k - w as usize];
        }
    }
    counts
}

/// Coefficient of `t^k` in `(1 - t^d) / prod(1 - t^w)`.
pub fn hilbert_coeff(wh: &WeightedHypersurface, k: u32) -> i64 {
    hilbert_series(wh, k)[k as usize]
}

/// Coefficients of `t^0..=t^m_max`.
pub fn hilbert_series(wh: &WeightedHypersurface, m_max: u32) -> Vec<i64> {
    let n = monomial_counts(&wh.weights, m_max);
    (0..=m_max as usize)
        .map(|k| n[k] - if k >= wh.degree as usize { n[k - wh.degree as usize] } else { 0 })
        .collect()
}

/// Monomial counts by degree and character: `out[k][j]`.
fn graded_counts(weights: &[u32], chars: &[u32], n: u32, k_max: u32) -> Vec<Vec<i64>> {
    let n = n as usize;
    let mut counts = vec![vec![0i64; n]; k_max as usize + 1];
    counts[0][0] = 1;
    for (&w, &c) in weights.iter().zip(chars) {
        let (w, c) = (w as usize, c as usize % n);
        for k in w..=k_max as usize {
            for j in 0..n {
                let prev = counts[k - w][(j + n - c) % n];
                counts[k][j] += prev;
            }
        }
    }
    counts
}

/// `h[m][j]`: dimension of the degree-`m`, character-`j` part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivariantSeries {
    pub order: u32,
    pub coefficients: Vec<Vec<i64>>,
}

impl EquivariantSeries {
    /// `max_j h[m][j]`.
    pub fn max_at(&self, m: u32) -> Option<i64> {
        self.coefficients.get(m as usize).and_then(|row| row.iter().copied().max())
    }

    /// Specialization `sigma = 1`.
    pub fn row_sums(&self) -> Vec<i64> {
        self.coefficients.iter().map(|r| r.iter().sum()).collect()
    }

    /// `1 + t + t^2(1+sigma) + ...` style rendering.
    pub fn render(&self) -> String {
        let mut terms = Vec::new();
        for (m, row) in self.coefficients.iter().enumerate() {
            let parts: Vec<String> = row
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(j, &c)| {
                    let s = match j {
                        0 => String::new(),
                        1 => "s".to_string(),
                        _ => format!("s^{j}"),
                    };
                    match (c, s.is_empty()) {
                        (c, true) => c.to_string(),
                        (1, false) => s,
                        (c, false) => format!("{c}{s}"),
                    }
                })
                .collect();
            if parts.is_empty() {
                continue;
            }
            let t = match m {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{m}"),
            };
            let body = if parts.len() == 1 { parts[0].clone() } else { format!("({})", parts.join("+")) };
            terms.push(match (m, body.as_str()) {
                (0, _) => body,
                (_, "1") => t,
                _ => format!("{t}{body}"),
            });
        }
        terms.join(" + ")
    }
}

/// Character `eps` of the fundamental divisor: the unique solution of
/// `q * eps = sum(c_i) - c_f (mod n)`, so that `-K ~ qA` holds on the nose
/// and `h[m][j]` counts sections of `mA + jT`.
pub fn fundamental_character(wh: &WeightedHypersurface) -> Result<u32> {
    let a = wh
        .action
        .as_ref()
        .ok_or_else(|| Error::InvalidHypersurface("no group action given".into()))?;
    let q = fano_index(wh)?;
    let n = a.order as i64;
    let q_inv = inv_mod(q as i64, n).map_err(|_| {
        Error::InvalidHypersurface(format!("Fano index {q} is not prime to the group order {n}"))
    })?;
    let s: i64 = a.characters.iter().map(|&c| c as i64).sum::<i64>() - a.equation_character as i64;
    Ok((s * q_inv.value() as i64).rem_euclid(n) as u32)
}

/// `h[m][j] = #{deg m, char m*eps + j} - #{deg m - d, char m*eps + j - c_f}`.
pub fn equivariant_series(wh: &WeightedHypersurface, m_max: u32) -> Result<EquivariantSeries> {
    let a = wh
        .action
        .as_ref()
        .ok_or_else(|| Error::InvalidHypersurface("no group action given".into()))?;
    let n = a.order;
    let cf = a.equation_character % n;
    let counts = graded_counts(&wh.weights, &a.characters, n, m_max.max(wh.degree));
    if counts[wh.degree as usize][cf as usize] == 0 {
        return Err(Error::InconsistentAction { d: wh.degree, n, cf });
    }
    let eps = fundamental_character(wh)?;
    let n = n as usize;
    let mut coefficients = Vec::with_capacity(m_max as usize + 1);
    for m in 0..=m_max as usize {
        let shift = (m * eps as usize) % n;
        let row = (0..n)
            .map(|j| {
                let ch = (shift + j) % n;
                let lower = if m >= wh.degree as usize {
                    counts[m - wh.degree as usize][(ch + n - cf as usize) % n]
                } else {
                    0
                };
                counts[m][ch] - lower
            })
            .collect();
        coefficients.push(row);
    }
    Ok(EquivariantSeries { order: n as u32, coefficients })
}

/// Weights of `P(1,2,3,4,5)`.
pub const X10_WEIGHTS: [u32; 5] = [1, 2, 3, 4, 5];

/// Sparse polynomial in `x1..x5` with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<[u32; 5], Rational>,
}

impl Polynomial {
    /// Sums duplicate monomials and drops zero coefficients.
    pub fn new(terms: impl IntoIterator<Item = (Rational, [u32; 5])>) -> Self {
        let mut p = Polynomial::default();
        for (c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    fn add_term(&mut self, c: Rational, e: [u32; 5]) {
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: [u32; 5]) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn contains(&self, e: [u32; 5]) -> bool {
        self.terms.contains_key(&e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 5], &Rational)> {
        self.terms.iter()
    }

    fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = std::array::from_fn(|i| e1[i] + e2[i]);
                out.add_term(c1 * c2, e);
            }
        }
        out
    }

    /// Substitutes `x_i -> scale[i] * x_i`.
    pub fn scaled(&self, scale: &[Rational; 5]) -> Polynomial {
        Polynomial::new(self.terms.iter().map(|(e, c)| {
            let mut c = c.clone();
            for i in 0..5 {
                for _ in 0..e[i] {
                    c *= &scale[i];
                }
            }
            (c, *e)
        }))
    }

    /// Parses `"x5^2 + x4^2*x2 - 3/2*x1^10"`.
    pub fn parse(s: &str) -> Result<Polynomial> {
        let bad = |why: String| Error::InvalidPolynomial(format!("{why} in {s:?}"));
        let mut terms = Vec::new();
        let normalized = s.replace('-', "+-");
        for raw in normalized.split('+').map(str::trim).filter(|t| !t.is_empty()) {
            let (sign, body) = match raw.strip_prefix('-') {
                Some(b) => (-1, b.trim()),
                None => (1, raw),
            };
            let mut coef = rat(sign, 1);
            let mut exps = [0u32; 5];
            for factor in body.split('*').map(str::trim) {
                if let Some(v) = factor.strip_prefix('x') {
                    let (idx, pow) = match v.split_once('^') {
                        Some((i, p)) => (i, p.parse::<u32>().map_err(|_| bad(format!("bad exponent {p:?}")))?),
                        None => (v, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad(format!("bad variable x{idx}")))?;
                    if !(1..=5).contains(&idx) {
                        return Err(bad(format!("variable x{idx} out of range")));
                    }
                    exps[idx - 1] += pow;
                } else {
                    coef *= crate::ratmod::parse_rational(factor).map_err(|_| bad(format!("bad factor {factor:?}")))?;
                }
            }
            terms.push((coef, exps));
        }
        Ok(Polynomial::new(terms))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(i, &p)| if p == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, p) })
                    .collect();
                match (c.is_one(), mono.is_empty()) {
                    (_, true) => fmt_rational(c),
                    (true, false) => mono.join("*"),
                    (false, false) => format!("{}*{}", fmt_rational(c), mono.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalFormCase {
    /// `x5^2 + x4^2 x2 + x4 phi6(x1,x3) + phi10`; index-4 point is cyclic.
    CaseACyclic,
    /// `x5^2 + x4 x3^2 + lambda x4^2 x1^2 + ...` with `lambda != 0`; index-4
    /// point of type cAx/4.
    CaseBCax4,
    /// Case b with `lambda = 0`: projection to `P(1,2,3,5)` is birational.
    RationalByProjection,
    NonTerminal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct X10Classification {
    pub case: NormalFormCase,
    /// Case a: `phi6` contains `x3^2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi6_has_x3_squared: Option<bool>,
    /// Case a: `phi10` contains `x3^3 x1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi10_has_x3_cubed_x1: Option<bool>,
    /// Case b: coefficient of `x4^2 x1^2` relative to that of `x5^2`.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub lambda: Option<Rational>,
    /// Both case-b variants are rational.
    pub rational: bool,
}

mod opt_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match x {
            Some(v) => serde_rational::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| crate::ratmod::parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

const X5_SQ: [u32; 5] = [0, 0, 0, 0, 2];
const X4_SQ_X2: [u32; 5] = [0, 1, 0, 2, 0];
const X4_X3_SQ: [u32; 5] = [0, 0, 2, 1, 0];
const X1_X3_CUBE: [u32; 5] = [1, 0, 3, 0, 0];
const X4_SQ_X1_SQ: [u32; 5] = [2, 0, 0, 2, 0];

/// Sorts a degree-10 hypersurface in `P(1,2,3,4,5)` into its normal form
/// case after completing the square in `x5`.
pub fn classify_x10(poly: &Polynomial) -> Result<X10Classification> {
    for (e, _) in poly.terms() {
        let deg: u32 = e.iter().zip(X10_WEIGHTS).map(|(p, w)| p * w).sum();
        if deg != 10 {
            return Err(Error::InvalidPolynomial(format!(
                "monomial with exponents {e:?} has weighted degree {deg}, expected 10"
            )));
        }
    }
    let non_terminal = X10Classification {
        case: NormalFormCase::NonTerminal,
        phi6_has_x3_squared: None,
        phi10_has_x3_cubed_x1: None,
        lambda: None,
        rational: false,
    };
    let a = poly.coeff(X5_SQ);
    if a.is_zero() {
        return Ok(non_terminal);
    }
    // f = a x5^2 + x5 L + R  ->  a x5'^2 + R - L^2 / (4a)
    let mut linear = Polynomial::default();
    let mut rest = Polynomial::default();
    for (e, c) in poly.terms() {
        match e[4] {
            2 => {}
            1 => {
                let mut e = *e;
                e[4] = 0;
                linear.add_term(c.clone(), e);
            }
            _ => rest.add_term(c.clone(), *e),
        }
    }
    let four_a = &a * rat(4, 1);
    let mut g = rest;
    for (e, c) in linear.mul(&linear).terms() {
        g.add_term(-(c / &four_a), *e);
    }

    if g.contains(X4_SQ_X2) {
        let phi6 = g.contains(X4_X3_SQ);
        let phi10 = g.contains(X1_X3_CUBE);
        if !phi6 && !phi10 {
            return Ok(non_terminal);
        }
        return Ok(X10Classification {
            case: NormalFormCase::CaseACyclic,
            phi6_has_x3_squared: Some(phi6),
            phi10_has_x3_cubed_x1: Some(phi10),
            lambda: None,
            rational: false,
        });
    }
    if g.contains(X4_X3_SQ) {
        let lambda = g.coeff(X4_SQ_X1_SQ) / &a;
        let case = if lambda.is_zero() {
            NormalFormCase::RationalByProjection
        } else {
            NormalFormCase::CaseBCax4
        };
        return Ok(X10Classification {
            case,
            phi6_has_x3_squared: None,
            phi10_has_x3_cubed_x1: None,
            lambda: Some(lambda),
            rational: true,
        });
    }
    Ok(non_terminal)
}

/// Del Pezzo surfaces with type-A Du Val singularities and `Cl(S) = Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DelPezzoSurface {
    pub name: &'static str,
    pub k2: u32,
    pub q_w: u32,
    #[serde(rename = "A2", with = "serde_rational")]
    pub a2: Rational,
    pub singularities: &'static str,
    pub weights: Vec<u32>,
    /// Degree of the defining equation, if a hypersurface.
    pub degree: Option<u32>,
}

impl DelPezzoSurface {
    /// `dim |kA_S|` for `k = 1..=5` as printed in the table.
    pub fn dims(&self) -> Vec<i64> {
        (1..=5).map(|k| dp_dims_of(self, k)).collect()
    }
}

/// The four surfaces: `P^2`, `P(1,1,2)`, `P(1,2,3)` and the sextic
/// `S_DP5` in `P(1,2,3,5)`.
pub fn del_pezzo_table() -> Vec<DelPezzoSurface> {
    vec![
        DelPezzoSurface { name: "P2", k2: 9, q_w: 3, a2: rat(1, 1), singularities: "-", weights: vec![1, 1, 1], degree: None },
        DelPezzoSurface { name: "P(1,1,2)", k2: 8, q_w: 4, a2: rat(1, 2), singularities: "A1", weights: vec![1, 1, 2], degree: None },
        DelPezzoSurface { name: "P(1,2,3)", k2: 6, q_w: 6, a2: rat(1, 6), singularities: "A1A2", weights: vec![1, 2, 3], degree: None },
        DelPezzoSurface { name: "S_DP5", k2: 5, q_w: 5, a2: rat(1, 5), singularities: "A4", weights: vec![1, 2, 3, 5], degree: Some(6) },
    ]
}

pub fn find_surface(name: &str) -> Result<DelPezzoSurface> {
    let key = name.replace([' ', '^'], "").to_ascii_lowercase();
    let alias = match key.as_str() {
        "p2" | "p(1,1,1)" => "P2",
        "p(1,1,2)" | "p(1^2,2)" | "p(12,2)" => "P(1,1,2)",
        "p(1,2,3)" => "P(1,2,3)",
        "s_dp5" | "sdp5" | "dp5" => "S_DP5",
        _ => return Err(Error::UnknownSurface(name.to_string())),
    };
    Ok(del_pezzo_table().into_iter().find(|s| s.name == alias).expect("alias resolves"))
}

fn dp_dims_of(s: &DelPezzoSurface, k: u32) -> i64 {
    let counts = monomial_counts(&s.weights, k);
    let lower = match s.degree {
        Some(d) if k >= d => counts[(k - d) as usize],
        _ => 0,
    };
    counts[k as usize] - lower - 1
}

/// `dim |kA_S|` by monomial counting.
pub fn dp_dims(name: &str, k: u32) -> Result<i64> {
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    Ok(dp_dims_of(&find_surface(name)?, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn wh(s: &str) -> WeightedHypersurface {
        s.parse().unwrap()
    }

    /// Brute-force enumeration of exponent tuples, independent of the DP.
    fn brute_count(weights: &[u32], k: u32) -> i64 {
        fn go(w: &[u32], k: u32) -> i64 {
            match w.split_first() {
                None => (k == 0) as i64,
                Some((&first, rest)) => (0..=k / first).map(|e| go(rest, k - e * first)).sum(),
            }
        }
        go(weights, k)
    }

    #[test]
    fn invariants() {
        assert_eq!(fano_index(&wh("1,2,3,4,5 : 10")).unwrap(), 5);
        assert_eq!(fano_index(&wh("2,3,4,5,7 : 14")).unwrap(), 7);
        assert_eq!(fano_index(&wh("1,1,2,2,3 : 6")).unwrap(), 3);
        assert_eq!(fano_index(&wh("1,1,1,1,1 : 5")), Err(Error::NotFano { d: 5, sum: 5 }));
        assert_eq!(degree_a3(&wh("1,2,3,4,5 : 10")), rat(1, 12));
        assert_eq!(degree_a3(&wh("2,3,4,5,7 : 14")), rat(1, 60));
        assert_eq!(degree_a3(&wh("1,1,2,2,3 : 6")), rat(1, 2));
    }

    #[test]
    fn coefficients() {
        assert_eq!(hilbert_coeff(&wh("1,2,3,4,5 : 10"), 4), 5);
        assert_eq!(hilbert_coeff(&wh("2,3,4,5,7 : 14"), 6), 3);
        assert_eq!(hilbert_coeff(&wh("2,3,4,5,7 : 14"), 0), 1);
        assert_eq!(hilbert_coeff(&wh("1,2,3,5 : 6"), 5), 6);
    }

    #[test]
    fn counting_matches_brute_force() {
        for w in [vec![1, 2, 3, 4, 5], vec![2, 3, 4, 5, 7], vec![1, 1, 2, 2, 3], vec![1, 2, 3, 5]] {
            let dp = monomial_counts(&w, 40);
            for k in 0..=40 {
                assert_eq!(dp[k as usize], brute_count(&w, k));
            }
        }
    }

    #[test]
    fn fixture_series_nonnegative() {
        for s in ["1,2,3,4,5 : 10", "2,3,4,5,7 : 14", "1,1,2,2,3 : 6"] {
            assert!(hilbert_series(&wh(s), 60).iter().all(|&c| c >= 0));
        }
    }

    #[test]
    fn parse_roundtrip() {
        let h = wh("1,2,3,4,5 : 8 / mu 2 : 0,1,1,1,1 ; 0");
        assert_eq!(h.action.as_ref().unwrap().characters, vec![0, 1, 1, 1, 1]);
        assert_eq!(wh(&h.to_string()), h);
        assert!("1,2,3 : 4".parse::<WeightedHypersurface>().is_err());
        assert!("1,2,3,4,5 10".parse::<WeightedHypersurface>().is_err());
        assert!("1,2,3,4,5 : 8 / mu 2 : 0,1 ; 0".parse::<WeightedHypersurface>().is_err());
    }

    #[test]
    fn equivariant_fixtures() {
        let x8 = equivariant_series(&wh("1,2,3,4,5 : 8 / mu 2 : 0,1,1,1,1 ; 0"), 3).unwrap();
        assert_eq!(x8.coefficients, vec![vec![1, 0], vec![1, 0], vec![1, 1], vec![1, 2]]);
        let x6 = equivariant_series(&wh("1,2,2,3,3 : 6 / mu 3 : 0,1,2,1,2 ; 0"), 2).unwrap();
        assert_eq!(x6.coefficients[2], vec![1, 1, 1]);
        let trivial = wh("1,2,3,4,5 : 10 / mu 1 : 0,0,0,0,0 ; 0");
        let series = equivariant_series(&trivial, 20).unwrap();
        assert_eq!(series.row_sums(), hilbert_series(&trivial, 20));
        assert_eq!(x8.render(), "1 + t + t^2(1+s) + t^3(1+2s)");
    }

    #[test]
    fn inconsistent_action() {
        // every degree-8 monomial in these weights and characters has even character
        let h = wh("2,2,2,2,2 : 8 / mu 2 : 0,0,0,0,0 ; 1");
        assert_eq!(
            equivariant_series(&h, 3),
            Err(Error::InconsistentAction { d: 8, n: 2, cf: 1 })
        );
    }

    #[test]
    fn classify_examples() {
        let p = |s: &str| Polynomial::parse(s).unwrap();
        let a = classify_x10(&p("x5^2 + x4^2*x2 + x4*x3^2 + x1^10")).unwrap();
        assert_eq!(a.case, NormalFormCase::CaseACyclic);
        assert_eq!(a.phi6_has_x3_squared, Some(true));
        let b = classify_x10(&p("x5^2 + x4*x3^2 + x4*x2^3 + x2^5")).unwrap();
        assert_eq!(b.case, NormalFormCase::RationalByProjection);
        assert_eq!(b.lambda, Some(rat(0, 1)));
        let n = classify_x10(&p("x4^2*x2 + x3^2*x4 + x1^10")).unwrap();
        assert_eq!(n.case, NormalFormCase::NonTerminal);
        let l = classify_x10(&p("x5^2 - x4^2*x1^2 + x4*x3^2 + x2^5")).unwrap();
        assert_eq!(l.case, NormalFormCase::CaseBCax4);
        assert_eq!(l.lambda, Some(rat(-1, 1)));
        assert!(classify_x10(&p("x5^2 + x1^3")).is_err());
    }

    #[test]
    fn completing_the_square_creates_lambda() {
        // x5^2 + 2 x5 x4 x1 = (x5 + x4 x1)^2 - x4^2 x1^2
        let p = Polynomial::parse("x5^2 + 2*x5*x4*x1 + x4*x3^2 + x2^5").unwrap();
        let c = classify_x10(&p).unwrap();
        assert_eq!(c.case, NormalFormCase::CaseBCax4);
        assert_eq!(c.lambda, Some(rat(-1, 1)));
    }

    #[test]
    fn classify_is_scaling_invariant() {
        let fixtures = [
            "x5^2 + x4^2*x2 + x4*x3^2 + x1^10",
            "x5^2 + x4*x3^2 + x4*x2^3 + x2^5",
            "x4^2*x2 + x3^2*x4 + x1^10",
            "x5^2 + 3*x5*x4*x1 + x4*x3^2 + x3^3*x1 + x2^5",
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in fixtures {
            let p = Polynomial::parse(f).unwrap();
            let base = classify_x10(&p).unwrap();
            for _ in 0..25 {
                let scale: [Rational; 5] = std::array::from_fn(|_| {
                    let n: i64 = rng.gen_range(1..20) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    rat(n, rng.gen_range(1..20))
                });
                let c = classify_x10(&p.scaled(&scale)).unwrap();
                assert_eq!(c.case, base.case);
                assert_eq!(c.lambda.map(|l| l.is_zero()), base.lambda.as_ref().map(|l| l.is_zero()));
            }
        }
    }

    #[test]
    fn del_pezzo_table_dims() {
        let expect = [
            ("P2", [2, 5, 9, 14, 20]),
            ("P(1,1,2)", [1, 3, 5, 8, 11]),
            ("P(1,2,3)", [0, 1, 2, 3, 4]),
            ("S_DP5", [0, 1, 2, 3, 5]),
        ];
        for (name, dims) in expect {
            assert_eq!(find_surface(name).unwrap().dims(), dims.to_vec(), "{name}");
        }
        assert_eq!(dp_dims("P(1,2,3)", 5).unwrap(), 4);
        assert!(matches!(dp_dims("P(1,1,3)", 1), Err(Error::UnknownSurface(_))));
        for s in del_pezzo_table() {
            assert_eq!(degree_like_k2(&s), rat(s.k2 as i64, 1));
        }
    }

    /// `K^2 = q_W^2 A^2`.
    fn degree_like_k2(s: &DelPezzoSurface) -> Rational {
        &s.a2 * rat((s.q_w * s.q_w) as i64, 1)
    }
}
