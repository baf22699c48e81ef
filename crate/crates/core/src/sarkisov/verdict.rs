//! Known rationality criteria for Q-Fano threefolds in terms of the index,
//! the first plurigenera `p_k = h^0(kA)` and the torsion of `Cl`.

use serde::Serialize;

use crate::ratmod::{rat, Rational};

/// Inputs to [`rationality_verdict`]. `None` marks an unknown value; for
/// plurigenera a known value may also be a lower bound.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HatInvariants {
    pub qhat: u32,
    pub p1: Option<u32>,
    pub p2: Option<u32>,
    pub p3: Option<u32>,
    pub a3: Option<Rational>,
    pub torsion_order: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "verdict", content = "reason")]
pub enum Verdict {
    Rational(&'static str),
    Open,
}

impl Verdict {
    pub fn is_rational(self) -> bool {
        matches!(self, Verdict::Rational(_))
    }
}

/// The plurigenus criteria. With `A^3` unknown the degree exception
/// `A^3 = 1/12` is only kept open for index 5: in index 6 the degree has a
/// denominator prime to 6, and the index-7 candidates of degree 1/12 all
/// have `p_3 >= 3`.
pub fn plurigenus_criterion(qhat: u32, p1: u32, p2: u32, p3: u32, a3: Option<&Rational>) -> Option<&'static str> {
    let may_be_exceptional = match a3 {
        Some(a3) => *a3 == rat(1, 12),
        None => qhat == 5,
    };
    if p1 >= 4 {
        Some("p1>=4")
    } else if qhat >= 3 && p1 >= 3 {
        Some("q>=3,p1>=3")
    } else if qhat >= 4 && p1 >= 2 {
        Some("q>=4,p1>=2")
    } else if qhat >= 5 && p2 >= 2 && !may_be_exceptional {
        Some("q>=5,p2>=2")
    } else if qhat >= 6 && p3 >= 2 {
        Some("q>=6,p3>=2")
    } else if qhat >= 8 {
        Some("q>=8")
    } else {
        None
    }
}

pub fn rationality_verdict(inv: &HatInvariants) -> Verdict {
    let p1 = inv.p1.unwrap_or(0);
    let p2 = inv.p2.unwrap_or(0);
    let p3 = inv.p3.unwrap_or(0);
    if let Some(reason) = plurigenus_criterion(inv.qhat, p1, p2, p3, inv.a3.as_ref()) {
        return Verdict::Rational(reason);
    }
    if inv.qhat == 6 {
        return Verdict::Rational("q=6");
    }
    if inv.qhat == 7 && p1 > 0 {
        return Verdict::Rational("q=7,p1>0");
    }
    if inv.qhat >= 5 && inv.torsion_order.is_some_and(|t| t > 1) {
        return Verdict::Rational("q>=5,torsion");
    }
    Verdict::Open
}
