use serde::{Deserialize, Serialize};

use super::closed_form::{closed_form_g1, closed_form_g2, CaseTag};
use super::limit::{coupling, limit_residual, LimitEquation};
use super::params::{portfolio, FinanceParams};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Measures {
    pub es1: f64,
    pub es2: f64,
    pub sau2: f64,
    pub pd1: f64,
    pub pd2: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitSolution {
    pub x1_inf: f64,
    pub x2_inf: f64,
    pub pd1: f64,
    pub pd2: f64,
    pub es1: f64,
    pub es2: f64,
    pub sau2: f64,
    pub case_tag_g1: CaseTag,
    pub case_tag_g2: CaseTag,
    pub mu1: f64,
    pub residual: f64,
}

/// Surplus and default measures at given limit aggregates. Default
/// probabilities come from comparing `K + aggregate - v` with `ybar`.
pub fn measures(params: &FinanceParams, x1: f64, x2: f64) -> Result<Measures> {
    let sr = portfolio(params)?;
    let e1 = LimitEquation::group1(params, &sr, coupling(params, &sr, x2));
    let e2 = LimitEquation::group2(params, &sr);
    Ok(Measures {
        es1: e1.expected_surplus(x1),
        es2: e2.expected_surplus(x2),
        sau2: (sr.ku2 + x2 - sr.v2 - params.ybar2()).max(0.0),
        pd1: e1.default_probability(x1),
        pd2: e2.default_probability(x2),
    })
}

/// Limit aggregates through the closed forms, with numeric fallback, and the
/// measures they imply.
pub fn solve_limit(params: &FinanceParams) -> Result<LimitSolution> {
    let g2 = closed_form_g2(params)?;
    let g1 = closed_form_g1(params, g2.x)?;
    let residual = limit_residual(params, g1.x, g2.x)?;
    if residual.is_nan() || residual >= 1e-9 {
        return Err(Error::NonConvergence { iterations: 0, residual });
    }
    let m = measures(params, g1.x, g2.x)?;
    Ok(LimitSolution {
        x1_inf: g1.x,
        x2_inf: g2.x,
        pd1: m.pd1,
        pd2: m.pd2,
        es1: m.es1,
        es2: m.es2,
        sau2: m.sau2,
        case_tag_g1: g1.case,
        case_tag_g2: g2.case,
        mu1: params.mu1(),
        residual,
    })
}

/// Single-group theory for shocks that exceed taxes on the way down while
/// only the shocked banks default: `(x_th, es_th)`.
pub fn theory_single_group(params: &FinanceParams) -> Result<(f64, f64)> {
    let sr = portfolio(params)?;
    if params.yc != 0.0 {
        return Err(Error::HypothesisViolated("single-group theory needs yc = 0".into()));
    }
    if sr.v2.partial_cmp(&sr.kd2) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::HypothesisViolated(format!("needs v2 > kd2, got {} <= {}", sr.v2, sr.kd2)));
    }
    let (w, q, ybar) = (params.w, 1.0 - params.p_sb2, params.ybar2());
    let x = (ybar * (1.0 - w) + (sr.kd2 - sr.v2) * w) / (1.0 - w * q) * q;
    let eq = LimitEquation::group2(params, &sr);
    if eq.residual(x) >= 1e-9 || (eq.default_probability(x) - w).abs() > 1e-12 {
        return Err(Error::HypothesisViolated("parameters are outside the partial-default branch".into()));
    }
    let es = (sr.ku2 - sr.v2 + x - ybar) * (1.0 - w);
    Ok((x, es))
}
