use serde::{Deserialize, Serialize};

use super::measures::solve_limit;
use super::params::FinanceParams;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Negative,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "+")]
    Positive,
}

impl Sign {
    pub fn of(v: f64) -> Sign {
        if v.abs() <= 1e-12 {
            Sign::Zero
        } else if v > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub resilient_g1: bool,
    pub resilient_g2: bool,
    pub systemic_g2: bool,
    pub delta_r: f64,
    pub delta_u: f64,
    /// `dc + kappa`; absent under explicit taxes.
    pub burden: Option<f64>,
    /// Trend of group 1 expected surplus in `yc` on the resilient regime.
    pub slope_es1_sign: Option<Sign>,
    /// Trend of group 2 surplus on the upward shock in `yc` on the resilient regime.
    pub slope_sau_sign: Option<Sign>,
    pub g1_robust_applicable: bool,
}

pub fn classify_regime(params: &FinanceParams) -> Result<RegimeReport> {
    let sol = solve_limit(params)?;
    let delta_r = params.rbar() - params.r2;
    let delta_u = params.u - params.r2;
    let burden = params.kappa().map(|k| params.dc + k);
    Ok(RegimeReport {
        resilient_g1: sol.pd1 == 0.0,
        resilient_g2: sol.pd2 == 0.0,
        systemic_g2: sol.pd2 >= 1.0 - 1e-12,
        delta_r,
        delta_u,
        burden,
        slope_es1_sign: burden.map(|b| Sign::of(b - delta_r)),
        slope_sau_sign: burden.map(|b| Sign::of(delta_u - b)),
        g1_robust_applicable: burden.is_some() && params.y1 * params.p_sb1 < params.y2 * params.p_sb2,
    })
}
