//! Library of link eliminations that can be replayed mechanically.
//!
//! Each config fixes one or more scenarios, the rationality criteria that
//! may be applied to the far end `X^` of the link, and any extra facts a
//! case needs. Replaying enumerates every candidate, records the first
//! check that kills it, and lists the survivors.

use std::collections::BTreeMap;
use std::fmt;

use crate::basket::{PointKind, SingularPointSpec};
use crate::error::{Error, Result};
use crate::ratmod::{int, rat, Rational};

use super::{
    expand, hat_plurigenera, hat_torsion_branches, minimal_divisorial, primary_candidates, plurigenus_criterion, AuxSystem,
    HatTorsion, LinkKind, LinkScenario, LinkSolution, ScenarioPoint, INDEX_FIVE_PROFILE,
};

/// Largest `delta` searched for the second contraction.
const DELTA_MAX: u32 = 60;

/// Rationality criteria for `X^` that a config may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HatRule {
    /// The plurigenus and index bounds.
    Criterion,
    /// Index 5 with `p_2 >= 2` has the plurigenera of the degree-10
    /// hypersurface.
    IndexFiveProfile,
    /// As above, and `X^` is that hypersurface, so `Cl X^` is torsion free.
    IndexFiveHypersurface,
    /// Index 6 is rational.
    IndexSix,
    /// Index 7 with `p_1 > 0` is rational.
    IndexSevenP1,
    /// Torsion in `Cl X^` with index at least the given bound is rational.
    TorsionFromIndex(u32),
    /// Index at least 3 with torsion of order at least 3, or with torsion
    /// and `p_1 >= 2`, is rational.
    TorsionIndexThree,
    /// Index 4 with torsion has a single effective divisor `Q`-linearly
    /// equivalent to `A`.
    IndexFourTorsionDivisor,
}

impl HatRule {
    pub fn id(self) -> String {
        match self {
            HatRule::Criterion => "plurigenus-criterion".into(),
            HatRule::IndexFiveProfile => "index5-profile".into(),
            HatRule::IndexFiveHypersurface => "index5-hypersurface".into(),
            HatRule::IndexSix => "index6".into(),
            HatRule::IndexSevenP1 => "index7-p1".into(),
            HatRule::TorsionFromIndex(m) => format!("torsion-index-{m}"),
            HatRule::TorsionIndexThree => "torsion-index-3".into(),
            HatRule::IndexFourTorsionDivisor => "index4-torsion-divisor".into(),
        }
    }

    fn fires(self, scen: &LinkScenario, sol: &LinkSolution, p: &BTreeMap<u32, u32>, branch: HatTorsion) -> bool {
        let pk = |k: u32| p.get(&k).copied().unwrap_or(0);
        let qhat = sol.qhat;
        let torsion = match branch {
            HatTorsion::Free => None,
            HatTorsion::Torsion { min_order } => Some(min_order),
        };
        let profile_broken = (1..=5u32).any(|k| pk(k) > INDEX_FIVE_PROFILE[k as usize - 1]);
        match self {
            HatRule::Criterion => plurigenus_criterion(qhat, pk(1), pk(2), pk(3), None).is_some(),
            HatRule::IndexFiveProfile => qhat == 5 && pk(2) >= 2 && profile_broken,
            HatRule::IndexFiveHypersurface => qhat == 5 && pk(2) >= 2 && (profile_broken || torsion.is_some()),
            HatRule::IndexSix => qhat == 6,
            HatRule::IndexSevenP1 => qhat == 7 && pk(1) >= 1,
            HatRule::TorsionFromIndex(m) => torsion.is_some() && qhat >= m,
            HatRule::TorsionIndexThree => torsion.is_some_and(|t| qhat >= 3 && (t >= 3 || pk(1) >= 2)),
            HatRule::IndexFourTorsionDivisor => torsion.is_some() && qhat == 4 && divisors_in_a(scen, sol) >= 2,
        }
    }
}

/// Effective divisors on `X^` that are `Q`-linearly equivalent to `A`,
/// counted up to two.
fn divisors_in_a(scen: &LinkScenario, sol: &LinkSolution) -> u32 {
    let weight = |dim: i64| if dim >= 1 { 2 } else { 1 };
    let mut count = u32::from(sol.e == 1);
    if sol.s == 1 {
        count += weight(scen.dim_m);
    }
    for (&k, v) in &sol.secondary {
        if v.s == 1 {
            count += weight(scen.dim(k).unwrap_or(0));
        }
    }
    for a in &scen.aux {
        if sol.aux.get(&a.label).is_some_and(|v| v.s == 1) {
            count += weight(a.dim);
        }
    }
    count
}

/// A fact specific to one config. `check` returns `false` to kill.
#[derive(Clone, Copy)]
pub struct SideConstraint {
    pub id: &'static str,
    pub reason: &'static str,
    pub check: fn(&LinkSolution) -> bool,
}

impl fmt::Debug for SideConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SideConstraint").field("id", &self.id).field("reason", &self.reason).finish()
    }
}

/// One expected family of survivors.
#[derive(Clone, Copy)]
pub struct ExpectedCase {
    pub label: &'static str,
    pub matches: fn(&LinkSolution) -> bool,
}

impl fmt::Debug for ExpectedCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExpectedCase").field("label", &self.label).finish()
    }
}

#[derive(Debug, Clone)]
pub struct ReplayConfig {
    pub id: &'static str,
    pub summary: &'static str,
    pub scenarios: Vec<(&'static str, LinkScenario)>,
    pub rules: Vec<HatRule>,
    pub declared: Vec<SideConstraint>,
    pub divisorial_ks: Vec<u32>,
    pub expected: Vec<ExpectedCase>,
}

impl ReplayConfig {
    fn first_failure(&self, scen: &LinkScenario, sol: &LinkSolution) -> Option<String> {
        if let Some(c) = self.declared.iter().find(|c| !(c.check)(sol)) {
            return Some(c.id.to_string());
        }
        self.hat_failure(scen, sol)
    }

    /// Kills a birational candidate when every torsion branch of `X^` is
    /// rational. Branches killed by different rules are reported as
    /// `free-rule|torsion-rule`.
    fn hat_failure(&self, scen: &LinkScenario, sol: &LinkSolution) -> Option<String> {
        if sol.kind != LinkKind::Birational || self.rules.is_empty() {
            return None;
        }
        let p = hat_plurigenera(scen, sol);
        let branches = hat_torsion_branches(scen, sol);
        if branches.is_empty() {
            return Some("hat-torsion".into());
        }
        let mut ids = Vec::new();
        for b in branches {
            let id = self.rules.iter().find(|r| r.fires(scen, sol, &p, b))?.id();
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
        Some(ids.join("|"))
    }

    /// Every survivor matches exactly one expected case and every case is
    /// matched.
    pub fn check(&self, trace: &Trace) -> std::result::Result<(), String> {
        for s in &trace.survivors {
            let hits = self.expected.iter().filter(|c| (c.matches)(s)).count();
            if hits != 1 {
                return Err(format!("survivor [{s}] matches {hits} expected cases"));
            }
        }
        for c in &self.expected {
            if !trace.survivors.iter().any(|s| (c.matches)(s)) {
                return Err(format!("expected case {} has no survivor", c.label));
            }
        }
        Ok(())
    }

    /// Survivors grouped by expected case label.
    pub fn cases(&self, trace: &Trace) -> Vec<(&'static str, usize)> {
        self.expected
            .iter()
            .map(|c| (c.label, trace.survivors.iter().filter(|s| (c.matches)(s)).count()))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct TraceLine {
    pub scenario: &'static str,
    pub solution: LinkSolution,
    pub killed_by: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Trace {
    pub id: &'static str,
    pub summary: &'static str,
    pub lines: Vec<TraceLine>,
    pub survivors: Vec<LinkSolution>,
}

impl Trace {
    /// Number of candidates killed by each check.
    pub fn kill_counts(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for l in &self.lines {
            if let Some(id) = &l.killed_by {
                *out.entry(id.clone()).or_insert(0) += 1;
            }
        }
        out
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# replay {}: {}", self.id, self.summary)?;
        for l in &self.lines {
            match &l.killed_by {
                Some(id) => writeln!(f, "[{}] {} KILLED {id}", l.scenario, l.solution)?,
                None => writeln!(f, "[{}] {} SURVIVES", l.scenario, l.solution)?,
            }
        }
        for s in &self.survivors {
            if let Some(d) = &s.divisorial {
                let gammas: Vec<String> = d.gamma.iter().map(|(k, g)| format!("gamma{k}={g}")).collect();
                writeln!(f, "# minimal divisorial data: delta={} b={} {}", d.delta, d.b, gammas.join(" "))?;
            }
        }
        write!(f, "SURVIVORS: {}", self.survivors.len())
    }
}

pub fn replay_config(cfg: &ReplayConfig) -> Result<Trace> {
    let mut lines = Vec::new();
    let mut survivors = Vec::new();
    for (label, scen) in &cfg.scenarios {
        for (sol, kill) in primary_candidates(scen)? {
            if let Some(id) = kill.or_else(|| cfg.first_failure(scen, &sol)) {
                lines.push(TraceLine { scenario: label, solution: sol, killed_by: Some(id) });
                continue;
            }
            for (mut t, kill) in expand(scen, &sol) {
                let kill = kill.or_else(|| cfg.first_failure(scen, &t));
                if kill.is_none() {
                    if !cfg.divisorial_ks.is_empty() {
                        t.divisorial = minimal_divisorial(scen, &t, &cfg.divisorial_ks, DELTA_MAX);
                    }
                    survivors.push(t.clone());
                }
                lines.push(TraceLine { scenario: label, solution: t, killed_by: kill });
            }
        }
    }
    Ok(Trace { id: cfg.id, summary: cfg.summary, lines, survivors })
}

pub fn replay(id: &str) -> Result<Trace> {
    let cfg = library().into_iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownReplay(id.to_string()))?;
    replay_config(&cfg)
}

fn cyc(label: &str, r: u32, q: u32, n: u32) -> ScenarioPoint {
    ScenarioPoint::cyclic(label, r, q, n).expect("library points have index prime to q")
}

fn point(label: &str, spec: SingularPointSpec, local_m: Option<u32>, local_a: Option<u32>) -> ScenarioPoint {
    ScenarioPoint { label: label.into(), spec, local_m, local_a, free_for: Vec::new() }
}

fn dims(values: &[i64]) -> Vec<(u32, i64)> {
    values.iter().enumerate().map(|(i, &d)| (i as u32 + 1, d)).collect()
}

fn scenario(q: u32, n: u32, dim_m: i64, points: Vec<ScenarioPoint>, torsion: Option<u32>, known: &[i64]) -> LinkScenario {
    let mut s = LinkScenario::new(q, n, dim_m, points);
    s.torsion_order = torsion;
    s.qw_equals_q = true;
    s.known_dims = dims(known);
    s
}

fn torsion_system(label: &str, k: u32, dim: i64, local: &[(&str, u32)], non_cartier: &[&str], requires_torsion: bool) -> AuxSystem {
    AuxSystem {
        label: label.into(),
        k,
        dim,
        local: local.iter().map(|(p, j)| (p.to_string(), *j)).collect(),
        non_cartier: non_cartier.iter().map(|p| p.to_string()).collect(),
        requires_torsion,
    }
}

fn sec(sol: &LinkSolution, k: u32) -> Option<u32> {
    sol.secondary.get(&k).map(|v| v.s)
}

fn is(x: &Rational, num: i64, den: i64) -> bool {
    *x == rat(num, den)
}

const FIBRATIONS_EXCLUDED: SideConstraint = SideConstraint {
    id: "fibration-excluded",
    reason: "the pencil descends to the base of the fibration, which contradicts the local indices",
    check: |s| s.kind == LinkKind::Birational,
};

fn late_rules() -> Vec<HatRule> {
    vec![
        HatRule::Criterion,
        HatRule::IndexFiveHypersurface,
        HatRule::IndexSix,
        HatRule::IndexSevenP1,
        HatRule::TorsionFromIndex(5),
        HatRule::TorsionIndexThree,
        HatRule::IndexFourTorsionDivisor,
    ]
}

/// The index-7 threefold with basket `(2,2,2,3,4,5)` and `A^3 = 1/60`.
fn x14_points(n: u32) -> Vec<ScenarioPoint> {
    vec![cyc("P2", 2, 7, n), cyc("P3", 3, 7, n), cyc("P4", 4, 7, n), cyc("P5", 5, 7, n)]
}

const X14_DIMS: [i64; 6] = [-1, 0, 0, 1, 1, 2];

pub fn library() -> Vec<ReplayConfig> {
    vec![
        q3_torsion(),
        q5_basket_2_9_9(),
        q7_basket_2_6_10(),
        q5_torsion(),
        q5_basket_2_2_3_4(),
        q7_basket_2_3_13(),
        q6(),
        q7_x14_pencil4(),
        q7_basket_3_8_9(),
        q7_basket_2_2_2_5_8(),
        q7_x14_pencil5(),
        q7_x14_index3_center(),
    ]
}

fn q3_torsion() -> ReplayConfig {
    // q_W = 1 here, so only the local type of M at the index-12 point is known.
    let points = vec![
        point("P12", SingularPointSpec::cyclic(12, 1), Some(10), None),
        point("P3", SingularPointSpec::cyclic(3, 1), None, None),
        point("P2", SingularPointSpec::cyclic(2, 1), None, None),
    ];
    let mut s = LinkScenario::new(3, 2, 1, points);
    s.torsion_order = Some(3);
    ReplayConfig {
        id: "q3-torsion-2-3-3-12",
        summary: "index 3, Cl torsion Z/3, basket (2,3,3,12), A^3 = 1/4, M = |2A| a pencil",
        scenarios: vec![("2,3,3,12", s)],
        rules: vec![HatRule::Criterion],
        declared: vec![],
        divisorial_ks: vec![],
        expected: vec![],
    }
}

fn q5_basket_2_9_9() -> ReplayConfig {
    // The index-9 part of the basket is one cA/9 point of axial weight 2
    // or two cyclic points; the former covers both discrepancies.
    let ca9 = SingularPointSpec { kind: PointKind::CA, r: 9, aw: 2, a: 1 };
    let points = vec![point("P9", ca9, Some(8), Some(2)), cyc("P2", 2, 5, 4)];
    let mut s = scenario(5, 4, 1, points, None, &[0, 0, 0, 1]);
    s.secondary = vec![1];
    ReplayConfig {
        id: "q5-basket-2-9-9",
        summary: "index 5, basket (2,9,9), A^3 = 1/18, M = |4A| a pencil",
        scenarios: vec![("2,9,9", s)],
        rules: vec![HatRule::Criterion],
        declared: vec![],
        divisorial_ks: vec![],
        expected: vec![
            ExpectedCase {
                label: "(a) qhat=1 alpha=1/9 e=1 s=s1=0",
                matches: |s| s.qhat == 1 && is(&s.alpha, 1, 9) && s.e == 1 && s.s == 0 && sec(s, 1) == Some(0),
            },
            ExpectedCase {
                label: "(b) qhat=6 alpha=1/9 e=1 s=4",
                matches: |s| s.qhat == 6 && is(&s.alpha, 1, 9) && s.e == 1 && s.s == 4,
            },
            ExpectedCase {
                label: "(c) qhat=7 e*alpha=2/9 s=4",
                matches: |s| s.qhat == 7 && s.alpha.clone() * int(s.e as i64) == rat(2, 9) && s.s == 4,
            },
        ],
    }
}

fn q7_basket_2_6_10() -> ReplayConfig {
    let points = vec![cyc("P2", 2, 7, 6), cyc("P6", 6, 7, 6), cyc("P10", 10, 7, 6)];
    let mut s = scenario(7, 6, 4, points, None, &[0, 0, 0, 1, 2, 4]);
    s.secondary = vec![1];
    s.aux = vec![torsion_system("3A+T", 3, 1, &[], &["P10"], true)];
    ReplayConfig {
        id: "q7-basket-2-6-10",
        summary: "index 7, basket (2,6,10), A^3 = 1/30, M = |6A| of dimension 4",
        scenarios: vec![("2,6,10", s)],
        rules: vec![HatRule::Criterion],
        declared: vec![],
        divisorial_ks: vec![],
        expected: vec![],
    }
}

fn q5_torsion() -> ReplayConfig {
    let mut a = scenario(5, 4, 3, vec![cyc("P4", 4, 5, 4), cyc("P12", 12, 5, 4)], Some(2), &[0, 0, 1, 3, 5]);
    a.secondary = vec![1];
    a.aux = vec![torsion_system("3A+T", 3, 1, &[("P12", 9)], &["P12"], true)];
    let mut b = scenario(5, 4, 1, vec![cyc("P2", 2, 5, 4), cyc("P4", 4, 5, 4), cyc("P14", 14, 5, 4)], Some(2), &[0, 0, 0, 1, 2]);
    b.secondary = vec![1];
    b.aux = vec![torsion_system("4A+T", 4, 1, &[("P14", 5)], &["P14"], true)];
    ReplayConfig {
        id: "q5-torsion",
        summary: "index 5 with Cl torsion Z/2: baskets (4,4,12) with A^3 = 1/12 and (2,4,14) with A^3 = 1/28, M = |4A|",
        scenarios: vec![("4,4,12", a), ("2,4,14", b)],
        rules: vec![HatRule::Criterion, HatRule::TorsionFromIndex(6)],
        declared: vec![],
        divisorial_ks: vec![],
        expected: vec![],
    }
}

fn q5_basket_2_2_3_4() -> ReplayConfig {
    let points = vec![cyc("P2", 2, 5, 3), cyc("P3", 3, 5, 3), cyc("P4", 4, 5, 3)];
    let mut s = scenario(5, 3, 2, points, Some(1), &[0, 1, 2, 4, 6]);
    s.secondary = vec![2];
    ReplayConfig {
        id: "q5-basket-2-2-3-4",
        summary: "index 5, basket (2,2,3,4), A^3 = 1/12, M = |3A| a net",
        scenarios: vec![("2,2,3,4", s)],
        rules: vec![HatRule::Criterion, HatRule::IndexFiveProfile],
        declared: vec![],
        divisorial_ks: vec![],
        expected: vec![ExpectedCase {
            label: "conic bundle: P4 alpha=1/4 beta=3/4 e=1 s=s2=0 qhat=1",
            matches: |s| {
                s.kind == LinkKind::Fibration
                    && s.center == "P4"
                    && is(&s.alpha, 1, 4)
                    && is(&s.beta, 3, 4)
                    && (s.e, s.s, s.qhat) == (1, 0, 1)
                    && sec(s, 2) == Some(0)
            },
        }],
    }
}

fn q7_basket_2_3_13() -> ReplayConfig {
    let points = vec![cyc("P2", 2, 7, 6), cyc("P3", 3, 7, 6), cyc("P13", 13, 7, 6)];
    let mut s = scenario(7, 6, 1, points, Some(1), &[0, 0, 0, 0, 0, 1]);
    s.secondary = vec![1];
    ReplayConfig {
        id: "q7-basket-2-3-13",
        summary: "index 7, basket (2,3,13), A^3 = 1/78, M = |6A| a pencil",
        scenarios: vec![("2,3,13", s)],
        rules: vec![HatRule::Criterion, HatRule::TorsionFromIndex(5)],
        declared: vec![FIBRATIONS_EXCLUDED],
        divisorial_ks: vec![],
        expected: vec![],
    }
}

fn q6() -> ReplayConfig {
    let make = |r1: u32, r2: u32, known: &[i64]| {
        let points = vec![cyc(&format!("P{r1}"), r1, 6, 5), cyc(&format!("P{r2}"), r2, 6, 5)];
        scenario(6, 5, 1, points, Some(1), known)
    };
    ReplayConfig {
        id: "q6",
        summary: "index 6, baskets (5,17), (7,11), (5,11), M = |5A| a pencil",
        scenarios: vec![
            ("5,17", make(5, 17, &[0, 0, 0, 0, 1])),
            ("7,11", make(7, 11, &[-1, 0, 0, 1, 1])),
            ("5,11", make(5, 11, &[0, 0, 0, 0, 1])),
        ],
        rules: vec![HatRule::Criterion, HatRule::IndexFiveHypersurface, HatRule::IndexSevenP1, HatRule::TorsionFromIndex(5)],
        declared: vec![FIBRATIONS_EXCLUDED],
        divisorial_ks: vec![],
        expected: vec![],
    }
}

fn q7_x14_pencil4() -> ReplayConfig {
    let mut s = scenario(7, 4, 1, x14_points(4), Some(1), &X14_DIMS);
    s.secondary = vec![2, 3, 5, 6];
    ReplayConfig {
        id: "q7-basket-2-2-2-3-4-5-m4",
        summary: "index 7, basket (2,2,2,3,4,5), A^3 = 1/60, M = |4A| a pencil",
        scenarios: vec![("2,2,2,3,4,5", s)],
        rules: late_rules(),
        declared: vec![],
        divisorial_ks: vec![2, 4, 5, 6],
        expected: vec![ExpectedCase {
            label: "qhat=5 e=3 s=2 alpha=1/5, s2=1 s3=0 s6=3",
            matches: |s| {
                (s.qhat, s.e, s.s) == (5, 3, 2) && is(&s.alpha, 1, 5) && sec(s, 2) == Some(1) && sec(s, 3) == Some(0) && sec(s, 6) == Some(3)
            },
        }],
    }
}

fn q7_basket_3_8_9() -> ReplayConfig {
    let points = vec![cyc("P3", 3, 7, 6), cyc("P8", 8, 7, 6), cyc("P9", 9, 7, 6)];
    let mut s = scenario(7, 6, 1, points, Some(1), &[-1, -1, 0, 0, 1, 1]);
    s.secondary = vec![3, 4, 5];
    ReplayConfig {
        id: "q7-basket-3-8-9",
        summary: "index 7, basket (3,8,9), A^3 = 1/72, M = |6A| a pencil",
        scenarios: vec![("3,8,9", s)],
        rules: late_rules(),
        declared: vec![],
        divisorial_ks: vec![3, 5, 6],
        expected: vec![ExpectedCase {
            label: "P9 alpha=1/9 e=4 s=2 qhat=5, s3=1 s4=0 s5=3",
            matches: |s| {
                s.center == "P9"
                    && is(&s.alpha, 1, 9)
                    && (s.e, s.s, s.qhat) == (4, 2, 5)
                    && sec(s, 3) == Some(1)
                    && sec(s, 4) == Some(0)
                    && sec(s, 5) == Some(3)
            },
        }],
    }
}

fn q7_basket_2_2_2_5_8() -> ReplayConfig {
    let points = vec![cyc("P2", 2, 7, 4), cyc("P5", 5, 7, 4), cyc("P8", 8, 7, 4)];
    let mut s = scenario(7, 4, 1, points, Some(1), &[-1, 0, 0, 1, 2, 3]);
    s.secondary = vec![2, 3, 5, 6];
    ReplayConfig {
        id: "q7-basket-2-2-2-5-8",
        summary: "index 7, basket (2,2,2,5,8), A^3 = 1/40, M = |4A| a pencil",
        scenarios: vec![("2,2,2,5,8", s)],
        rules: late_rules(),
        declared: vec![],
        divisorial_ks: vec![3, 4, 5, 6],
        expected: vec![ExpectedCase {
            label: "P8 alpha=1/8 e=2 s=2 qhat=5, s_k=k-2",
            matches: |s| {
                s.center == "P8" && is(&s.alpha, 1, 8) && (s.e, s.s, s.qhat) == (2, 2, 5) && [2, 3, 5, 6].iter().all(|&k| sec(s, k) == Some(k - 2))
            },
        }],
    }
}

fn q7_x14_pencil5() -> ReplayConfig {
    let mut points = x14_points(5);
    // P5 is not a base point of |5A|.
    points[3].free_for = vec![5];
    let mut s = scenario(7, 5, 1, points, Some(1), &X14_DIMS);
    s.secondary = vec![2, 3, 4, 6];
    ReplayConfig {
        id: "q7-basket-2-2-2-3-4-5-m5",
        summary: "index 7, basket (2,2,2,3,4,5), A^3 = 1/60, M = |5A| a pencil",
        scenarios: vec![("2,2,2,3,4,5", s)],
        rules: late_rules(),
        declared: vec![],
        divisorial_ks: vec![3, 4, 5, 6],
        expected: vec![ExpectedCase {
            label: "P4 alpha=1/4 qhat=3 e=2 s=1, s2=0 s3=1 s4=s6=2",
            matches: |s| {
                s.center == "P4"
                    && is(&s.alpha, 1, 4)
                    && (s.qhat, s.e, s.s) == (3, 2, 1)
                    && sec(s, 2) == Some(0)
                    && sec(s, 3) == Some(1)
                    && sec(s, 4) == Some(2)
                    && sec(s, 6) == Some(2)
            },
        }],
    }
}

fn q7_x14_index3_center() -> ReplayConfig {
    let mut s = scenario(7, 6, 1, x14_points(6), Some(1), &X14_DIMS);
    s.complete = false;
    s.centers = Some(vec!["P3".into()]);
    s.secondary = vec![2, 3];
    ReplayConfig {
        id: "q7-basket-2-2-2-3-4-5-p3",
        summary: "index 7, basket (2,2,2,3,4,5), M a pencil in |6A| through P3 with canonical threshold 1/3",
        scenarios: vec![("2,2,2,3,4,5", s)],
        rules: late_rules(),
        declared: vec![SideConstraint {
            id: "canonical-threshold",
            reason: "the Kawamata blowup of P3 computes the threshold 1/3 of the first link",
            check: |s| s.beta == int(3) * &s.alpha,
        }],
        divisorial_ks: vec![],
        expected: vec![
            ExpectedCase {
                label: "(1) qhat=2 e=1, s2=0 s3=1",
                matches: |s| (s.qhat, s.e) == (2, 1) && sec(s, 2) == Some(0) && sec(s, 3) == Some(1),
            },
            ExpectedCase {
                label: "(2) qhat=4 e=2, s2=0 s3=2",
                matches: |s| (s.qhat, s.e) == (4, 2) && sec(s, 2) == Some(0) && sec(s, 3) == Some(2),
            },
        ],
    }
}
