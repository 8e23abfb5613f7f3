use serde::{Deserialize, Serialize};

use crate::netgraph::ModelParams;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContractionReport {
    pub rho: f64,
    pub sigma_eta: f64,
    /// `rho <= 1`.
    pub satisfied_b4: bool,
    /// `sigma_eta < 1`.
    pub unique_fp_condition: bool,
}

fn report(rho: f64, sigma: f64, varsigma: f64, eta_lower: f64) -> Result<ContractionReport> {
    for (name, v) in [("sigma", sigma), ("varsigma", varsigma), ("eta_lower", eta_lower)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidParams(format!("{name} = {v} is outside [0, 1]")));
        }
    }
    let sigma_eta = sigma * (1.0 - eta_lower + varsigma * eta_lower);
    Ok(ContractionReport {
        rho,
        sigma_eta,
        satisfied_b4: rho <= 1.0 + 1e-12,
        unique_fp_condition: sigma_eta < 1.0,
    })
}

/// Contraction constant for equal sharing over all creditors.
///
/// Uses the stored `gamma` even in single-group mode, where the two mirrored
/// halves describe the same group.
pub fn contraction_model_a(
    params: &ModelParams,
    sigma: f64,
    varsigma: f64,
    eta_lower: f64,
) -> Result<ContractionReport> {
    let ModelParams { gamma: g, p1, p2, pc1, pc2, p_sb1: s1, p_sb2: s2, .. } = *params;
    let gp1 = g * p1 + (1.0 - g) * pc1;
    let gp2 = g * pc2 + (1.0 - g) * p2;
    if gp1 == 0.0 || gp2 == 0.0 {
        return Err(Error::InvalidParams("gamma_p is zero".into()));
    }
    let a = g * pc1 * (1.0 - s1) / gp1 + (1.0 - g) * p2 * (1.0 - s2) / gp2;
    let b = g * p1 * (1.0 - s1) / gp1 + (1.0 - g) * pc2 * (1.0 - s2) / gp2;
    let rho = a.max(b) + g * s1 + (1.0 - g) * s2;
    report(rho, sigma, varsigma, eta_lower)
}

/// Contraction constant for group-split sharing.
pub fn contraction_model_b(
    params: &ModelParams,
    sigma: f64,
    varsigma: f64,
    eta_lower: f64,
) -> Result<ContractionReport> {
    let ModelParams { gamma: g, pc1, pc2, p_sb1: s1, p_sb2: s2, lambda1: l1, lambda2: l2, .. } = *params;
    if !(g > 0.0 && g < 1.0) {
        return Err(Error::InvalidParams(format!("gamma = {g} must lie in (0, 1)")));
    }
    let ind = |p: f64| if p > 0.0 { 1.0 } else { 0.0 };
    let a = l1 * (1.0 - s1) + (1.0 - g) / g * (1.0 - l2) * ind(pc2);
    let b = g / (1.0 - g) * (1.0 - l1) * ind(pc1) + l2 * (1.0 - s2);
    let rho = a.max(b) + g * l1 * s1 + (1.0 - g) * l2 * s2;
    report(rho, sigma, varsigma, eta_lower)
}
