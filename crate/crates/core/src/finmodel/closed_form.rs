use serde::{Deserialize, Serialize};

use super::limit::{coupling, LimitEquation};
use super::params::{portfolio, FinanceParams};
use crate::Result;

/// Residual a closed-form candidate must reach to be accepted.
const SELF_CHECK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    /// Small shocks, nobody defaults.
    G2SmallResilient,
    /// Small shocks, only shocked banks default.
    G2SmallPartial,
    /// Small shocks, everybody defaults.
    G2SmallAllDefault,
    /// Large shocks, shocked banks pay nothing, the rest pay in full.
    G2LargeDownZero,
    /// Large shocks, shocked banks pay nothing, the rest pay partially.
    G2LargeUpPartial,
    /// Large shocks, shocked banks pay partially, the rest in full.
    G2LargePartial,
    /// Large shocks, everybody pays partially.
    G2LargeAllDefault,
    G1Resilient,
    G1Partial,
    G1AllDefault,
    /// No closed form applied; solved numerically.
    Numeric,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::G2SmallResilient => "g2_small_resilient",
            CaseTag::G2SmallPartial => "g2_small_partial",
            CaseTag::G2SmallAllDefault => "g2_small_all_default",
            CaseTag::G2LargeDownZero => "g2_large_down_zero",
            CaseTag::G2LargeUpPartial => "g2_large_up_partial",
            CaseTag::G2LargePartial => "g2_large_partial",
            CaseTag::G2LargeAllDefault => "g2_large_all_default",
            CaseTag::G1Resilient => "g1_resilient",
            CaseTag::G1Partial => "g1_partial",
            CaseTag::G1AllDefault => "g1_all_default",
            CaseTag::Numeric => "numeric",
        }
    }

    pub const G2_SMALL: [CaseTag; 3] =
        [CaseTag::G2SmallResilient, CaseTag::G2SmallPartial, CaseTag::G2SmallAllDefault];
    pub const G2_LARGE: [CaseTag; 4] = [
        CaseTag::G2LargeDownZero,
        CaseTag::G2LargeUpPartial,
        CaseTag::G2LargePartial,
        CaseTag::G2LargeAllDefault,
    ];
    pub const G1: [CaseTag; 3] = [CaseTag::G1Resilient, CaseTag::G1Partial, CaseTag::G1AllDefault];
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSolution {
    pub x: f64,
    pub pd: f64,
    pub case: CaseTag,
}

/// Value and default probability of one branch, if its formula is finite.
fn candidate(eq: &LimitEquation, tag: CaseTag) -> Option<(f64, f64)> {
    let LimitEquation { kd, ku, v, ybar, w, beta, .. } = *eq;
    let delta = eq.delta();
    let lbar = w * kd + (1.0 - w) * ku;
    let (x, pd) = match tag {
        CaseTag::G2SmallResilient | CaseTag::G1Resilient => (ybar * delta, 0.0),
        CaseTag::G2SmallPartial | CaseTag::G2LargePartial | CaseTag::G1Partial => {
            (delta * ((1.0 - w) * ybar + w * (kd - v + beta)) / (1.0 - delta * w), w)
        }
        CaseTag::G2SmallAllDefault | CaseTag::G2LargeAllDefault | CaseTag::G1AllDefault => {
            ((lbar - v + beta).max(0.0) * delta / (1.0 - delta), 1.0)
        }
        CaseTag::G2LargeDownZero => (ybar * (1.0 - w) * delta, w),
        CaseTag::G2LargeUpPartial => {
            ((ku - v + beta).max(0.0) * (1.0 - w) * delta / (1.0 - delta * (1.0 - w)), 1.0)
        }
        CaseTag::Numeric => return None,
    };
    x.is_finite().then_some((x, pd))
}

fn near(a: f64, b: f64) -> bool {
    a.is_finite() && b.is_finite() && (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// `lo < t < hi` with the end points counted when `t` sits on them.
fn within(t: f64, lo: f64, hi: f64) -> bool {
    (t > lo || near(t, lo)) && (t < hi || near(t, hi))
}

/// Picks among the branches whose threshold region contains the current
/// point; at boundaries the smaller residual wins, then the lower default
/// probability. Falls back to the other branches of the same regime, then to
/// the numeric solver.
fn select(eq: &LimitEquation, regional: &[CaseTag], all: &[CaseTag]) -> Result<GroupSolution> {
    let best = |tags: &[CaseTag]| {
        let mut best: Option<(f64, GroupSolution)> = None;
        for &tag in tags {
            let Some((x, pd)) = candidate(eq, tag) else { continue };
            let r = eq.residual(x);
            let better = match best {
                None => true,
                Some((br, b)) => r < br - 1e-12 || ((r - br).abs() <= 1e-12 && pd < b.pd),
            };
            if better {
                best = Some((r, GroupSolution { x, pd, case: tag }));
            }
        }
        best.filter(|(r, _)| *r < SELF_CHECK).map(|(_, s)| s)
    };
    if let Some(s) = best(regional) {
        return Ok(s);
    }
    if let Some(s) = best(all) {
        log::debug!("threshold regions {regional:?} missed; branch {} satisfies the equation", s.case);
        return Ok(s);
    }
    numeric(eq)
}

fn numeric(eq: &LimitEquation) -> Result<GroupSolution> {
    let x = eq.solve_numeric()?;
    Ok(GroupSolution { x, pd: eq.default_probability(x), case: CaseTag::Numeric })
}

/// Group 2 closed form for a given scalar equation (`beta = 0`).
pub fn g2_closed_form(eq: &LimitEquation) -> Result<GroupSolution> {
    let LimitEquation { kd, ku, v, ybar, w, p_sb, lambda, .. } = *eq;
    if eq.delta() <= 0.0 || ybar <= 0.0 {
        return numeric(eq);
    }
    let q = 1.0 - p_sb;
    let spread = w * (ku - kd);
    let beta0 = if ybar > spread { (ybar + v - ku) / ((ybar - spread) * q) } else { 0.0 };
    let inf = f64::INFINITY;
    if kd > v {
        let theta = (ybar + v - kd) / (ybar * q);
        let regions = [(theta, inf), (beta0, theta), (-inf, beta0)];
        let tags: Vec<CaseTag> = CaseTag::G2_SMALL
            .iter()
            .zip(regions)
            .filter(|(_, (lo, hi))| within(lambda, *lo, *hi))
            .map(|(t, _)| *t)
            .collect();
        return select(eq, &tags, &CaseTag::G2_SMALL);
    }
    if v > kd && ybar > spread {
        let b1 = (v - kd) / (ybar * (1.0 - w) * q);
        let b2 = beta0;
        let b3 = (v - kd) / ((1.0 - w) * (ku - kd) * q);
        let b4 = (ybar - ku + v) / (ybar * (1.0 - w) * q);
        let regions = [(b4, b1), (-inf, b4.min(b3)), (b2.max(b1), inf), (b3, b2)];
        let tags: Vec<CaseTag> = CaseTag::G2_LARGE
            .iter()
            .zip(regions)
            .filter(|(_, (lo, hi))| within(lambda, *lo, *hi))
            .map(|(t, _)| *t)
            .collect();
        return select(eq, &tags, &CaseTag::G2_LARGE);
    }
    numeric(eq)
}

/// Group 1 closed form for a given scalar equation with claims `beta` from group 2.
pub fn g1_closed_form(eq: &LimitEquation) -> Result<GroupSolution> {
    let LimitEquation { kd, ku, v, ybar, w, p_sb, beta, .. } = *eq;
    if kd - v + beta < 0.0 || eq.delta() <= 0.0 {
        return numeric(eq);
    }
    let lbar = w * kd + (1.0 - w) * ku;
    let e1 = v - kd + ybar * p_sb;
    let e2 = v - lbar + p_sb * (ybar + w * (kd - ku));
    let inf = f64::INFINITY;
    let regions = [(e1, inf), (e2, e1), (-inf, e2)];
    let tags: Vec<CaseTag> = CaseTag::G1
        .iter()
        .zip(regions)
        .filter(|(t, (lo, hi))| within(beta, *lo, *hi) && !(**t == CaseTag::G1AllDefault && p_sb == 0.0))
        .map(|(t, _)| *t)
        .collect();
    select(eq, &tags, &CaseTag::G1)
}

pub fn closed_form_g2(params: &FinanceParams) -> Result<GroupSolution> {
    let sr = portfolio(params)?;
    g2_closed_form(&LimitEquation::group2(params, &sr))
}

pub fn closed_form_g1(params: &FinanceParams, x2: f64) -> Result<GroupSolution> {
    let sr = portfolio(params)?;
    g1_closed_form(&LimitEquation::group1(params, &sr, coupling(params, &sr, x2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(kd: f64, ku: f64, v: f64, ybar: f64, w: f64, p_sb: f64, lambda: f64) -> LimitEquation {
        LimitEquation { kd, ku, v, ybar, w, p_sb, lambda, beta: 0.0 }
    }

    #[test]
    fn mc_baseline_is_large_shock_partial() {
        let s = g2_closed_form(&eq(5.0, 15.0, 7.0, 35.0, 0.2, 0.001, 1.0)).unwrap();
        assert_eq!(s.case, CaseTag::G2LargePartial);
        let expect = (35.0 * 0.8 - 2.0 * 0.2) / (1.0 - 0.2 * 0.999) * 0.999;
        assert!((s.x - expect).abs() < 1e-12);
        assert_eq!(s.pd, 0.2);
    }

    #[test]
    fn small_shock_resilient_branch() {
        let e = eq(30.0, 40.0, 5.0, 20.0, 0.3, 0.1, 0.9);
        let s = g2_closed_form(&e).unwrap();
        assert_eq!(s.case, CaseTag::G2SmallResilient);
        assert!((s.x - 20.0 * 0.9 * 0.9).abs() < 1e-12);
        assert_eq!(s.pd, 0.0);
    }

    #[test]
    fn w_zero_resilient() {
        let s = g2_closed_form(&eq(30.0, 40.0, 5.0, 20.0, 0.0, 0.1, 1.0)).unwrap();
        assert_eq!((s.pd, s.x), (0.0, 18.0));
    }

    #[test]
    fn outside_branch_hypotheses_goes_numeric() {
        // v > kd and ybar <= w (ku - kd)
        let e = eq(1.0, 101.0, 2.0, 10.0, 0.5, 0.1, 1.0);
        let s = g2_closed_form(&e).unwrap();
        assert_eq!(s.case, CaseTag::Numeric);
        assert!(e.residual(s.x) < 1e-12);
    }

    #[test]
    fn g1_all_default_without_big_bank_is_numeric() {
        let e = LimitEquation { kd: 1.0, ku: 1.5, v: 1.0, ybar: 50.0, w: 0.5, p_sb: 0.0, lambda: 1.0, beta: 0.0 };
        let s = g1_closed_form(&e).unwrap();
        assert_ne!(s.case, CaseTag::G1AllDefault);
        assert!(e.residual(s.x) < 1e-9);
    }
}
