use serde::{Deserialize, Serialize};

use crate::netgraph::{EtaMode, Group, ModelParams, WeightModel};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Taxes {
    /// `v_m = kappa * Omega_m`.
    Proportional { kappa: f64 },
    Explicit { v1: f64, v2: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FinanceParams {
    pub k0: f64,
    pub y1: f64,
    pub y2: f64,
    #[serde(default)]
    pub yc: f64,
    pub r1: f64,
    pub r2: f64,
    pub u: f64,
    pub d: f64,
    pub w: f64,
    #[serde(default)]
    pub dc: f64,
    pub taxes: Taxes,
    pub p_sb1: f64,
    pub p_sb2: f64,
    pub gamma: f64,
    /// Big-bank initial wealth per small bank; carried but never used.
    #[serde(default)]
    pub kb: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShockReturns {
    pub omega1: f64,
    pub omega2: f64,
    pub kd1: f64,
    pub ku1: f64,
    pub kd2: f64,
    pub ku2: f64,
    pub lbar1: f64,
    pub lbar2: f64,
    pub v1: f64,
    pub v2: f64,
}

impl ShockReturns {
    /// `(kd, ku, v)` of a group.
    pub fn group(&self, g: Group) -> (f64, f64, f64) {
        match g {
            Group::G1 => (self.kd1, self.ku1, self.v1),
            Group::G2 => (self.kd2, self.ku2, self.v2),
        }
    }

    pub fn omega(&self, g: Group) -> f64 {
        match g {
            Group::G1 => self.omega1,
            Group::G2 => self.omega2,
        }
    }
}

impl FinanceParams {
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.k0, self.y1, self.y2, self.yc, self.r1, self.r2, self.u, self.d, self.w, self.dc,
            self.p_sb1, self.p_sb2, self.gamma, self.kb,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("finance parameters must be finite".into()));
        }
        let bad = |m: &str| Err(Error::InvalidParams(m.to_string()));
        if self.k0 <= 0.0 {
            return bad("k0 must be positive");
        }
        if self.y1 <= 0.0 || self.y2 <= 0.0 {
            return bad("y1 and y2 must be positive");
        }
        if self.yc < 0.0 {
            return bad("yc must be nonnegative");
        }
        if !(self.d < self.r1 && self.r1 < self.r2 && self.r2 < self.u) {
            return bad("rates must satisfy d < r1 < r2 < u");
        }
        for (name, v) in [("w", self.w), ("p_sb1", self.p_sb1), ("p_sb2", self.p_sb2)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParams(format!("{name} = {v} is outside [0, 1]")));
            }
        }
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return bad("gamma must lie in (0, 1)");
        }
        match self.taxes {
            Taxes::Proportional { kappa } if !(kappa.is_finite() && kappa >= 0.0) => {
                bad("kappa must be finite and nonnegative")
            }
            Taxes::Explicit { v1, v2 } if !(v1.is_finite() && v2.is_finite() && v1 >= 0.0 && v2 >= 0.0) => {
                bad("explicit taxes must be finite and nonnegative")
            }
            _ => Ok(()),
        }
    }

    pub fn kappa(&self) -> Option<f64> {
        match self.taxes {
            Taxes::Proportional { kappa } => Some(kappa),
            Taxes::Explicit { .. } => None,
        }
    }

    pub fn ybar1(&self) -> f64 {
        self.y1 * (1.0 + self.r1)
    }

    pub fn ybar2(&self) -> f64 {
        (self.y2 + self.yc) * (1.0 + self.r2)
    }

    pub fn ybar(&self, g: Group) -> f64 {
        match g {
            Group::G1 => self.ybar1(),
            Group::G2 => self.ybar2(),
        }
    }

    /// Amount borrowed at time 0 by a bank of group `g`.
    pub fn borrowed(&self, g: Group) -> f64 {
        match g {
            Group::G1 => self.y1,
            Group::G2 => self.y2 + self.yc,
        }
    }

    pub fn lambda2(&self) -> f64 {
        self.y2 / (self.y2 + self.yc)
    }

    pub fn p_sb(&self, g: Group) -> f64 {
        match g {
            Group::G1 => self.p_sb1,
            Group::G2 => self.p_sb2,
        }
    }

    /// `((1-gamma)/gamma)(1-lambda2)`: share of group 2 repayments reaching one
    /// group 1 bank, per unit of a group 2 bank's expected payment.
    pub fn cross_share(&self) -> f64 {
        (1.0 - self.gamma) / self.gamma * (1.0 - self.lambda2())
    }

    /// `mu1 = ((1-gamma)/gamma)(yc/y2)/(1-p_sb2)`; infinite when `p_sb2 = 1` and `yc > 0`.
    pub fn mu1(&self) -> f64 {
        if self.yc == 0.0 {
            0.0
        } else {
            (1.0 - self.gamma) / self.gamma * (self.yc / self.y2) / (1.0 - self.p_sb2)
        }
    }

    pub fn rbar(&self) -> f64 {
        self.u * (1.0 - self.w) + self.d * self.w
    }

    /// Network parameters of the two-group lending structure: group 1 never
    /// borrows from group 2, group 2 borrows from group 1 with probability `pc`.
    pub fn network(&self, p1: f64, p2: f64, pc: f64, eta_mode: EtaMode) -> ModelParams {
        ModelParams {
            gamma: self.gamma,
            p1,
            p2,
            pc1: 0.0,
            pc2: pc,
            p_sb1: self.p_sb1,
            p_sb2: self.p_sb2,
            lambda1: 1.0,
            lambda2: self.lambda2(),
            eta_mode,
            weight_model: WeightModel::GroupSplit,
            single_group: false,
            eta_bs: 0.0,
        }
    }

    /// Network parameters of a single group following group 2.
    pub fn single_network(&self, p: f64, eta_mode: EtaMode) -> ModelParams {
        ModelParams { eta_mode, ..ModelParams::single_group(p, self.p_sb2) }
    }
}

/// Risky investments, shocked returns and taxes of the limit balance sheets.
pub fn portfolio(params: &FinanceParams) -> Result<ShockReturns> {
    params.validate()?;
    let raw1 = params.k0 + params.y1 * params.p_sb1 - (1.0 - params.gamma) / params.gamma * params.yc;
    if raw1 < 0.0 {
        log::warn!("group 1 lends more than it holds (omega1 = {raw1:.6}); clipping to 0");
    }
    let omega1 = raw1.max(0.0);
    let omega2 = params.k0 + params.y2 * params.p_sb2 + params.yc;
    let down = 1.0 + params.d - params.dc;
    let up = 1.0 + params.u - params.dc;
    let (v1, v2) = match params.taxes {
        Taxes::Proportional { kappa } => (kappa * omega1, kappa * omega2),
        Taxes::Explicit { v1, v2 } => (v1, v2),
    };
    let lbar = |o: f64| params.w * o * down + (1.0 - params.w) * o * up;
    Ok(ShockReturns {
        omega1,
        omega2,
        kd1: omega1 * down,
        ku1: omega1 * up,
        kd2: omega2 * down,
        ku2: omega2 * up,
        lbar1: lbar(omega1),
        lbar2: lbar(omega2),
        v1,
        v2,
    })
}
