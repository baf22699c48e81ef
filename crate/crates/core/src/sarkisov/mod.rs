//! Numerical side of Sarkisov links starting from a Q-Fano threefold.
//!
//! Start from `X` of index `q` with a mobile system `M ~ nA`, `0 < n < q`.
//! Blowing up a centre of the canonical threshold gives an exceptional
//! divisor `E` with discrepancy `alpha`, and `M` vanishes to order `beta`
//! along it. The link ends on `X^` (birational case) or on a base of a
//! fibration, and the images of `E` and `M` satisfy
//!
//! ```text
//! n*qhat = q*s + (q*beta - n*alpha)*e,   q*beta - n*alpha >= alpha > 0
//! ```
//!
//! with the same relation for every `|kA|` in place of `M`. Everything
//! here is a finite enumeration over those integers; the geometry only
//! enters through the scenario (local types, dimensions, lattices) and
//! through declared side constraints in the replay library.

mod intersection;
mod replay;
mod verdict;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::basket::{PointKind, SingularPointSpec};
use crate::error::{Error, Result};
use crate::orbifold_rr::FANO_INDICES;
use crate::ratmod::{fmt_rational, frac, int, inv_mod, rat, serde_rational, Rational};

pub use intersection::{blowup_triple, cb_invariants, e3_from_null_cube, kawamata_e3, BlowupClass, BlowupLattice, CbInvariants};
pub use replay::{library, replay, replay_config, ExpectedCase, HatRule, ReplayConfig, SideConstraint, Trace, TraceLine};
pub use verdict::{plurigenus_criterion, rationality_verdict, HatInvariants, Verdict};

pub const DEFAULT_ALPHA_CAP: u32 = 4;

/// `p_k` for `k = 1..=5` on the index-5 hypersurface of degree 10 in
/// `P(1,1,2,3,5)`, the only non-rational index-5 case with `p_2 >= 2`.
pub const INDEX_FIVE_PROFILE: [u32; 5] = [1, 2, 3, 5, 7];

/// Possible discrepancies of a divisorial contraction to `point`.
///
/// Over a Gorenstein point every integer is possible; the list is cut at
/// `cap`, which also bounds the `k/2` tried at cD/2 and cE/2 points.
pub fn discrepancy_candidates(point: &SingularPointSpec, cap: u32) -> Vec<Rational> {
    let r = point.r as i64;
    match point.kind {
        PointKind::Gorenstein => (1..=cap as i64).map(int).collect(),
        PointKind::CA => (1..=point.aw as i64).filter(|k| point.aw as i64 % k == 0).map(|k| rat(k, r)).collect(),
        PointKind::CD2 | PointKind::CE2 => (1..=cap as i64).map(|k| rat(k, 2)).collect(),
        PointKind::CyclicQuotient | PointKind::CAx4 => vec![rat(1, r)],
    }
}

fn yes() -> bool {
    true
}

fn default_domain() -> Vec<u32> {
    FANO_INDICES.to_vec()
}

fn default_cap() -> u32 {
    DEFAULT_ALPHA_CAP
}

/// A singular point of `X` together with the local types of `M` and `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioPoint {
    pub label: String,
    #[serde(flatten)]
    pub spec: SingularPointSpec,
    /// `M ~ -m K_X` near the point; `Some(0)` means `M` is Cartier there.
    #[serde(default)]
    pub local_m: Option<u32>,
    /// `A ~ -a K_X` near the point.
    #[serde(default)]
    pub local_a: Option<u32>,
    /// Degrees `k` for which the point is not a base point of `|kA|`.
    #[serde(default)]
    pub free_for: Vec<u32>,
}

impl ScenarioPoint {
    /// A cyclic quotient point of index `r` on `X` with `q_W = q`, so that
    /// `A ~ -a K_X` with `a*q = 1 mod r`.
    pub fn cyclic(label: &str, r: u32, q: u32, n: u32) -> Result<Self> {
        let a = inv_mod(q as i64, r as i64)?.value() as u32;
        Ok(ScenarioPoint {
            label: label.to_string(),
            spec: SingularPointSpec::cyclic(r, 1),
            local_m: Some(n * a % r),
            local_a: Some(a),
            free_for: Vec::new(),
        })
    }

    /// `|kA| ~ -j K_X` near the point, when the type of `A` is known.
    pub fn local_index(&self, k: u32) -> Option<u32> {
        self.local_a.map(|a| (k as u64 * a as u64 % self.spec.r as u64) as u32)
    }
}

/// A further mobile system of degree `k`, typically `|kA + T|` for a
/// torsion element `T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxSystem {
    pub label: String,
    pub k: u32,
    pub dim: i64,
    /// Local index `j` (system `~ -j K_X`) at the labelled points.
    #[serde(default)]
    pub local: BTreeMap<String, u32>,
    /// Points where the system is known not to be Cartier.
    #[serde(default)]
    pub non_cartier: Vec<String>,
    /// The system exists only when `Cl X` has torsion.
    #[serde(default)]
    pub requires_torsion: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkScenario {
    pub q: u32,
    pub n: u32,
    pub dim_m: i64,
    /// `M` is the complete system `|nA|`.
    #[serde(default = "yes")]
    pub complete: bool,
    pub points: Vec<ScenarioPoint>,
    /// Order of the torsion of `Cl X`; `None` if unknown.
    #[serde(default)]
    pub torsion_order: Option<u32>,
    /// `-K_X ~ qA` as Weil divisors, which makes `q*beta_k - k*alpha`
    /// an integer for every `|kA|`.
    #[serde(default)]
    pub qw_equals_q: bool,
    #[serde(default)]
    pub known_dims: Vec<(u32, i64)>,
    #[serde(default = "default_domain")]
    pub qhat_domain: Vec<u32>,
    #[serde(default = "default_cap")]
    pub alpha_cap: u32,
    /// Allow blowups of smooth points and curves (integer `alpha`).
    #[serde(default = "yes")]
    pub smooth_centers: bool,
    /// Restrict centres to these point labels (`"smooth"` for smooth ones).
    #[serde(default)]
    pub centers: Option<Vec<String>>,
    /// A fibration with non-rational total space has `qhat = 1`.
    #[serde(default = "yes")]
    pub nonrational_fibrations: bool,
    #[serde(default)]
    pub secondary: Vec<u32>,
    #[serde(default)]
    pub aux: Vec<AuxSystem>,
}

impl LinkScenario {
    pub fn new(q: u32, n: u32, dim_m: i64, points: Vec<ScenarioPoint>) -> Self {
        LinkScenario {
            q,
            n,
            dim_m,
            complete: true,
            points,
            torsion_order: None,
            qw_equals_q: false,
            known_dims: Vec::new(),
            qhat_domain: default_domain(),
            alpha_cap: DEFAULT_ALPHA_CAP,
            smooth_centers: true,
            centers: None,
            nonrational_fibrations: true,
            secondary: Vec::new(),
            aux: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ill = |msg: String| Err(Error::IllPosed(msg));
        if self.n == 0 || self.n >= self.q {
            return ill(format!("need 0 < n < q, got n={} q={}", self.n, self.q));
        }
        for p in &self.points {
            p.spec.validate()?;
            if let Some(m) = p.local_m {
                if !p.spec.is_gorenstein() && m >= p.spec.r {
                    return ill(format!("local_m={m} at {} is not below the index {}", p.label, p.spec.r));
                }
            }
        }
        if let Some(&bad) = self.qhat_domain.iter().find(|x| !FANO_INDICES.contains(x)) {
            return ill(format!("qhat domain contains {bad}, which is not a Fano index"));
        }
        if self.secondary.contains(&0) {
            return ill("secondary degree 0".into());
        }
        if self.torsion_order == Some(0) {
            return ill("torsion order 0".into());
        }
        if self.centers().is_empty() {
            return ill("no admissible centre".into());
        }
        Ok(())
    }

    pub fn torsion_free(&self) -> bool {
        self.torsion_order == Some(1)
    }

    pub fn dim(&self, k: u32) -> Option<i64> {
        self.known_dims.iter().find(|(j, _)| *j == k).map(|&(_, d)| d)
    }

    /// `|kA|` is nonempty, or not known to be empty.
    pub fn maybe_nonempty(&self, k: u32) -> bool {
        self.dim(k).is_none_or(|d| d >= 0)
    }

    /// Largest `m` with `M ~ -m K_X` near some point; the canonical
    /// threshold of `M` is at most `1/m`, so `beta >= m*alpha` for every
    /// centre.
    pub fn global_m(&self) -> u32 {
        self.points.iter().filter_map(|p| p.local_m).max().unwrap_or(0)
    }

    fn allowed(&self, label: &str) -> bool {
        self.centers.as_ref().is_none_or(|c| c.iter().any(|l| l == label))
    }

    /// Candidate centres with their discrepancies.
    pub fn centers(&self) -> Vec<(Option<usize>, Rational)> {
        let mut out = Vec::new();
        for (i, p) in self.points.iter().enumerate() {
            if p.spec.is_gorenstein() || !self.allowed(&p.label) {
                continue;
            }
            for alpha in discrepancy_candidates(&p.spec, self.alpha_cap) {
                out.push((Some(i), alpha));
            }
        }
        if self.smooth_centers && self.allowed(SMOOTH) {
            for alpha in 1..=self.alpha_cap as i64 {
                out.push((None, int(alpha)));
            }
        }
        out
    }

    fn lattice(&self, center: Option<usize>, alpha: &Rational, j: Option<u32>) -> BetaLattice {
        let Some(p) = center.map(|i| &self.points[i]) else {
            return BetaLattice::integral();
        };
        let r = p.spec.r as i64;
        let den = if j == Some(0) || p.spec.is_gorenstein() { 1 } else { r };
        let kawamata = p.spec.kind == PointKind::CyclicQuotient && *alpha == rat(1, r);
        BetaLattice {
            den,
            residue: if kawamata { j.map(|j| rat(j as i64, r)) } else { None },
            positive: false,
            zero: false,
        }
    }
}

pub const SMOOTH: &str = "smooth";

/// `beta` lies in `(1/den) Z_{>=0}`, in a fixed class mod `Z` when the
/// centre is a cyclic quotient point with its Kawamata blowup.
#[derive(Debug, Clone)]
struct BetaLattice {
    den: i64,
    residue: Option<Rational>,
    positive: bool,
    zero: bool,
}

impl BetaLattice {
    fn integral() -> Self {
        BetaLattice { den: 1, residue: None, positive: false, zero: false }
    }

    fn contains(&self, beta: &Rational) -> bool {
        if beta.is_negative() || (self.positive && beta.is_zero()) {
            return false;
        }
        if self.zero {
            return beta.is_zero();
        }
        if !(beta * int(self.den)).is_integer() {
            return false;
        }
        self.residue.as_ref().is_none_or(|res| frac(&(beta - res)).is_zero())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkKind {
    Fibration,
    Birational,
}

impl fmt::Display for LinkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinkKind::Fibration => "fibration",
            LinkKind::Birational => "birational",
        })
    }
}

/// `(s_k, beta_k)` for one further system.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SecondaryValue {
    pub s: u32,
    #[serde(with = "serde_rational")]
    pub beta: Rational,
}

/// Discrepancy data of the second contraction `Xbar -> X^`:
/// `b*e = qhat*delta - q` and `e*gamma_k = s_k*delta - k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divisorial {
    pub delta: u32,
    pub b: u32,
    pub gamma: BTreeMap<u32, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkSolution {
    pub kind: LinkKind,
    pub center: String,
    #[serde(with = "serde_rational")]
    pub alpha: Rational,
    #[serde(with = "serde_rational")]
    pub beta: Rational,
    pub e: u32,
    pub s: u32,
    pub qhat: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub secondary: BTreeMap<u32, SecondaryValue>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub aux: BTreeMap<String, SecondaryValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisorial: Option<Divisorial>,
}

impl LinkSolution {
    /// `n*qhat - q*s - (q*beta - n*alpha)*e`, zero for a genuine solution.
    pub fn residual(&self, q: u32, n: u32) -> Rational {
        relation_residual(q, n, self.qhat, self.s, &self.beta, &self.alpha, self.e)
    }

    /// `s_k`, reading the primary system for `k = n`.
    pub fn s_of(&self, k: u32, n: u32) -> Option<u32> {
        if k == n {
            Some(self.s)
        } else {
            self.secondary.get(&k).map(|v| v.s)
        }
    }

    /// Degrees whose image on `X^` is zero, i.e. whose unique member is the
    /// divisor contracted by `Xbar -> X^`.
    pub fn contracted_degrees(&self) -> Vec<u32> {
        if self.kind != LinkKind::Birational {
            return Vec::new();
        }
        self.secondary.iter().filter(|(_, v)| v.s == 0).map(|(&k, _)| k).collect()
    }
}

pub fn relation_residual(q: u32, k: u32, qhat: u32, s: u32, beta: &Rational, alpha: &Rational, e: u32) -> Rational {
    int(k as i64 * qhat as i64) - int(q as i64 * s as i64) - (int(q as i64) * beta - int(k as i64) * alpha) * int(e as i64)
}

impl fmt::Display for LinkSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "center={} alpha={} beta={} e={} s={} qhat={} kind={}",
            self.center,
            fmt_rational(&self.alpha),
            fmt_rational(&self.beta),
            self.e,
            self.s,
            self.qhat,
            self.kind
        )?;
        for (k, v) in &self.secondary {
            write!(f, " s{k}={} beta{k}={}", v.s, fmt_rational(&v.beta))?;
        }
        for (label, v) in &self.aux {
            write!(f, " s[{label}]={} beta[{label}]={}", v.s, fmt_rational(&v.beta))?;
        }
        Ok(())
    }
}

/// A candidate with the first check it failed, if any.
pub type Checked = (LinkSolution, Option<String>);

/// Every tuple allowed by the bounds, with the first generic check that
/// rejects it. Bounds: `beta >= m*alpha` for the global `m`, and
/// `q*beta - n*alpha >= alpha`.
pub fn primary_candidates(scen: &LinkScenario) -> Result<Vec<Checked>> {
    scen.validate()?;
    let (q, n) = (scen.q, scen.n);
    let qr = int(q as i64);
    let nr = int(n as i64);
    let m = scen.global_m() as i64;
    let mut domain = scen.qhat_domain.clone();
    domain.sort_unstable();
    domain.dedup();
    let mut out = Vec::new();
    for (center, alpha) in scen.centers() {
        let label = center.map_or(SMOOTH.to_string(), |i| scen.points[i].label.clone());
        let lower = std::cmp::max(alpha.clone(), int(q as i64 * m - n as i64) * &alpha);
        let lattice = scen.lattice(center, &alpha, center.and_then(|i| scen.points[i].local_m));
        let free = center.is_some_and(|i| scen.points[i].free_for.contains(&n));
        for &qhat in &domain {
            let total = n as i64 * qhat as i64;
            for s in 0..=(total / q as i64) {
                let rem = total - q as i64 * s;
                if rem == 0 {
                    continue;
                }
                let mut e = 1i64;
                while int(e) * &lower <= int(rem) {
                    let c = rat(rem, e);
                    let beta = (&c + &nr * &alpha) / &qr;
                    let mut kinds = Vec::new();
                    if s == 0 {
                        kinds.push(LinkKind::Fibration);
                    } else {
                        kinds.push(LinkKind::Birational);
                        if !scen.nonrational_fibrations && qhat <= 3 {
                            kinds.push(LinkKind::Fibration);
                        }
                    }
                    for kind in kinds {
                        let sol = LinkSolution {
                            kind,
                            center: label.clone(),
                            alpha: alpha.clone(),
                            beta: beta.clone(),
                            e: e as u32,
                            s: s as u32,
                            qhat,
                            secondary: BTreeMap::new(),
                            aux: BTreeMap::new(),
                            divisorial: None,
                        };
                        let kill = if !lattice.contains(&beta) {
                            Some("beta-lattice")
                        } else if scen.qw_equals_q && !c.is_integer() {
                            Some("weil-integrality")
                        } else if free {
                            Some("center-not-base-point")
                        } else if kind == LinkKind::Fibration && qhat > 3 {
                            Some("fiber-index")
                        } else if kind == LinkKind::Fibration && scen.nonrational_fibrations && qhat != 1 {
                            Some("nonrational-fibration")
                        } else {
                            None
                        };
                        out.push((sol, kill.map(str::to_string)));
                    }
                    e += 1;
                }
            }
        }
    }
    Ok(out)
}

/// All solutions of the main relation that pass the generic checks.
pub fn solve_main(scen: &LinkScenario) -> Result<Vec<LinkSolution>> {
    Ok(primary_candidates(scen)?.into_iter().filter(|(_, k)| k.is_none()).map(|(s, _)| s).collect())
}

fn center_index(scen: &LinkScenario, sol: &LinkSolution) -> Option<usize> {
    scen.points.iter().position(|p| p.label == sol.center)
}

/// Solutions `(s, beta)` of `k*qhat = q*s + (q*beta - k*alpha)*e` with
/// `beta` in `lattice`.
fn solve_relation(scen: &LinkScenario, sol: &LinkSolution, k: u32, lattice: &BetaLattice, integral: bool) -> Vec<SecondaryValue> {
    let q = scen.q as i64;
    let kr = int(k as i64);
    let base = &kr * &sol.alpha / int(q);
    let mut out = Vec::new();
    let mut s = 0i64;
    loop {
        let beta = rat(k as i64 * sol.qhat as i64 - q * s, q * sol.e as i64) + &base;
        if beta.is_negative() {
            break;
        }
        let c = int(q) * &beta - &kr * &sol.alpha;
        if lattice.contains(&beta) && (!integral || c.is_integer()) {
            out.push(SecondaryValue { s: s as u32, beta });
        }
        s += 1;
    }
    out
}

/// Solutions for `|kA|` at the centre of `sol`.
pub fn extend_secondary(scen: &LinkScenario, sol: &LinkSolution, k: u32) -> Vec<SecondaryValue> {
    let center = center_index(scen, sol);
    let j = center.and_then(|i| scen.points[i].local_index(k));
    let mut lattice = scen.lattice(center, &sol.alpha, j);
    if center.is_some_and(|i| scen.points[i].free_for.contains(&k)) {
        lattice.zero = true;
    }
    solve_relation(scen, sol, k, &lattice, scen.qw_equals_q)
}

/// Solutions for an auxiliary system at the centre of `sol`.
pub fn extend_aux(scen: &LinkScenario, sol: &LinkSolution, aux: &AuxSystem) -> Vec<SecondaryValue> {
    let center = center_index(scen, sol);
    let j = aux.local.get(&sol.center).copied();
    let mut lattice = scen.lattice(center, &sol.alpha, j);
    lattice.positive = aux.non_cartier.contains(&sol.center);
    solve_relation(scen, sol, aux.k, &lattice, false)
}

/// `(delta, b, gamma)` with `delta <= delta_max`, `b >= 1` and
/// `gamma_k >= 0`, except `gamma_k = -1` where `s_k = 0`.
pub fn divisorial_relations(scen: &LinkScenario, sol: &LinkSolution, ks: &[u32], delta_max: u32) -> Vec<Divisorial> {
    if sol.kind != LinkKind::Birational {
        return Vec::new();
    }
    let e = sol.e as i64;
    let mut out = Vec::new();
    'delta: for delta in 0..=delta_max as i64 {
        let b_num = sol.qhat as i64 * delta - scen.q as i64;
        if b_num <= 0 || b_num % e != 0 {
            continue;
        }
        let mut gamma = BTreeMap::new();
        for &k in ks {
            let Some(s_k) = sol.s_of(k, scen.n) else {
                continue 'delta;
            };
            let g_num = s_k as i64 * delta - k as i64;
            if g_num % e != 0 {
                continue 'delta;
            }
            let g = g_num / e;
            if (s_k > 0 && g < 0) || (s_k == 0 && g != -1) {
                continue 'delta;
            }
            gamma.insert(k, g);
        }
        out.push(Divisorial { delta: delta as u32, b: (b_num / e) as u32, gamma });
    }
    out
}

/// Torsion of `Cl X^` compatible with a birational candidate.
///
/// If `F ~ dA` is the divisor contracted by `Xbar -> X^`, then torsion-free
/// `Cl X` forces `|Cl_t X^| = d/e`, and torsion-free `Cl X^` forces
/// `|Cl_t X| = e/d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HatTorsion {
    Free,
    /// Nontrivial torsion of order at least `min_order`.
    Torsion { min_order: u32 },
}

const TORSION_SEARCH: u32 = 64;

fn d_admissible(scen: &LinkScenario, sol: &LinkSolution, d: u32) -> bool {
    if d == 0 || !scen.maybe_nonempty(d) {
        return false;
    }
    if scen.dim(d) == Some(0) {
        if let Some(v) = sol.secondary.get(&d) {
            return v.s == 0;
        }
    }
    true
}

pub fn hat_torsion_branches(scen: &LinkScenario, sol: &LinkSolution) -> Vec<HatTorsion> {
    let e = sol.e;
    let fixed = sol.contracted_degrees().first().copied();
    let ok = |d: u32| fixed.map_or(d_admissible(scen, sol, d), |f| f == d);
    let mut out = Vec::new();
    let free = match scen.torsion_order {
        Some(t) => e.is_multiple_of(t) && ok(e / t),
        None => (1..=e).any(|d| e.is_multiple_of(d) && ok(d)),
    };
    if free {
        out.push(HatTorsion::Free);
    }
    match scen.torsion_order {
        Some(1) => {
            let min = (2..=TORSION_SEARCH).find(|&t| ok(t * e));
            if let Some(min_order) = min {
                out.push(HatTorsion::Torsion { min_order });
            }
        }
        _ => out.push(HatTorsion::Torsion { min_order: 2 }),
    }
    out
}

/// `Cl X` is forced to have torsion by the candidate.
pub fn base_torsion_forced(scen: &LinkScenario, sol: &LinkSolution) -> bool {
    match scen.torsion_order {
        Some(t) => t > 1,
        None => sol.contracted_degrees().first().is_some_and(|d| d % sol.e != 0),
    }
}

/// Lower bounds for `p_k(X^)` from the images of the systems and of `E`.
pub fn hat_plurigenera(scen: &LinkScenario, sol: &LinkSolution) -> BTreeMap<u32, u32> {
    let mut p: BTreeMap<u32, u32> = BTreeMap::new();
    let mut bump = |k: u32, dim: i64| {
        if k > 0 && dim >= 0 {
            let v = p.entry(k).or_insert(0);
            *v = (*v).max(dim as u32 + 1);
        }
    };
    if sol.kind == LinkKind::Birational {
        bump(sol.s, scen.dim_m);
        for (&k, v) in &sol.secondary {
            if let Some(d) = scen.dim(k) {
                bump(v.s, d);
            }
        }
        for a in &scen.aux {
            if let Some(v) = sol.aux.get(&a.label) {
                bump(v.s, a.dim);
            }
        }
        bump(sol.e, 0);
    }
    p
}

/// Generic checks on a candidate extended by secondary systems.
fn tuple_check(scen: &LinkScenario, sol: &LinkSolution) -> Option<String> {
    if sol.kind == LinkKind::Birational {
        let mut zeros = 0;
        for (&k, v) in &sol.secondary {
            if v.s == 0 {
                zeros += 1;
                if scen.dim(k).is_some_and(|d| d != 0) {
                    return Some("unique-member".into());
                }
            }
        }
        for a in &scen.aux {
            if sol.aux.get(&a.label).is_some_and(|v| v.s == 0) {
                zeros += 1;
                if a.dim != 0 {
                    return Some("unique-member".into());
                }
            }
        }
        if zeros > 1 {
            return Some("unique-member".into());
        }
    }
    if !subadditive(scen, sol) {
        return Some("subadditivity".into());
    }
    None
}

/// `beta_{a+b} <= beta_a + beta_b` whenever `|aA| + |bA|` lies in the
/// complete system `|(a+b)A|`.
fn subadditive(scen: &LinkScenario, sol: &LinkSolution) -> bool {
    let mut parts: Vec<(u32, Rational)> = sol
        .secondary
        .iter()
        .filter(|(k, _)| scen.maybe_nonempty(**k))
        .map(|(&k, v)| (k, v.beta.clone()))
        .collect();
    parts.push((scen.n, sol.beta.clone()));
    let mut targets: Vec<(u32, Rational)> = sol.secondary.iter().map(|(&k, v)| (k, v.beta.clone())).collect();
    if scen.complete {
        targets.push((scen.n, sol.beta.clone()));
    }
    let top = targets.iter().map(|t| t.0).max().unwrap_or(0) as usize;
    let mut best: Vec<Option<Rational>> = vec![None; top + 1];
    best[0] = Some(Rational::zero());
    for x in 1..=top {
        for (k, b) in &parts {
            let k = *k as usize;
            if k <= x {
                if let Some(rest) = &best[x - k] {
                    let cand = rest + b;
                    if best[x].as_ref().is_none_or(|cur| cand < *cur) {
                        best[x] = Some(cand);
                    }
                }
            }
        }
    }
    targets.iter().all(|(t, beta)| {
        parts
            .iter()
            .filter(|(k, _)| k < t)
            .filter_map(|(k, b)| best[(t - k) as usize].as_ref().map(|rest| rest + b))
            .all(|bound| *beta <= bound)
    })
}

/// Cartesian extension of a candidate by the scenario's secondary and
/// auxiliary systems.
pub fn expand(scen: &LinkScenario, sol: &LinkSolution) -> Vec<Checked> {
    let mut partial = vec![sol.clone()];
    for &k in &scen.secondary {
        if k == scen.n {
            continue;
        }
        let values = extend_secondary(scen, sol, k);
        if values.is_empty() {
            return vec![(sol.clone(), Some(format!("secondary-{k}-empty")))];
        }
        partial = partial
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |v| {
                    let mut p = p.clone();
                    p.secondary.insert(k, v.clone());
                    p
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for p in partial {
        let mut tuples = vec![p.clone()];
        let mut killed = None;
        for a in &scen.aux {
            if a.requires_torsion && !base_torsion_forced(scen, &p) {
                continue;
            }
            let values = extend_aux(scen, &p, a);
            if values.is_empty() {
                killed = Some(format!("aux-{}-empty", a.label));
                break;
            }
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    values.iter().map(move |v| {
                        let mut t = t.clone();
                        t.aux.insert(a.label.clone(), v.clone());
                        t
                    })
                })
                .collect();
        }
        match killed {
            Some(id) => out.push((p, Some(id))),
            None => out.extend(tuples.into_iter().map(|t| {
                let kill = tuple_check(scen, &t);
                (t, kill)
            })),
        }
    }
    out
}

/// Re-substitutes every relation of a candidate.
pub fn verify(scen: &LinkScenario, sol: &LinkSolution) -> bool {
    let alpha_ok = sol.alpha.is_positive();
    let c = int(scen.q as i64) * &sol.beta - int(scen.n as i64) * &sol.alpha;
    let main = sol.residual(scen.q, scen.n).is_zero() && c >= sol.alpha;
    let sec = sol.secondary.iter().all(|(&k, v)| relation_residual(scen.q, k, sol.qhat, v.s, &v.beta, &sol.alpha, sol.e).is_zero());
    let aux = scen.aux.iter().all(|a| {
        sol.aux
            .get(&a.label)
            .is_none_or(|v| relation_residual(scen.q, a.k, sol.qhat, v.s, &v.beta, &sol.alpha, sol.e).is_zero())
    });
    let div = sol.divisorial.as_ref().is_none_or(|d| {
        let e = sol.e as i64;
        d.b as i64 * e == sol.qhat as i64 * d.delta as i64 - scen.q as i64
            && d.gamma.iter().all(|(&k, &g)| sol.s_of(k, scen.n).is_some_and(|s| g * e == s as i64 * d.delta as i64 - k as i64))
    });
    alpha_ok && main && sec && aux && div
}

/// Smallest `delta` solution, if any below `delta_max`.
pub fn minimal_divisorial(scen: &LinkScenario, sol: &LinkSolution, ks: &[u32], delta_max: u32) -> Option<Divisorial> {
    divisorial_relations(scen, sol, ks, delta_max).into_iter().next()
}
