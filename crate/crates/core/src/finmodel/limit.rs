use serde::{Deserialize, Serialize};

use super::params::{portfolio, FinanceParams, ShockReturns};
use crate::fpcore::{solve_limit_system, LIMIT_TOL};
use crate::Result;

/// Slack in `K + x - v < ybar` when deciding that a bank defaults.
pub(crate) const DEFAULT_SLACK: f64 = 1e-9;

/// Scalar limit equation `x = (1 - p_sb) lambda E[min{(K + x + beta - v)^+, ybar}]`
/// with a two-point `K`: `kd` with probability `w`, `ku` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitEquation {
    pub kd: f64,
    pub ku: f64,
    pub v: f64,
    pub ybar: f64,
    pub w: f64,
    pub p_sb: f64,
    pub lambda: f64,
    /// Claims received from the other group, held fixed.
    pub beta: f64,
}

impl LimitEquation {
    pub fn group2(params: &FinanceParams, sr: &ShockReturns) -> Self {
        LimitEquation {
            kd: sr.kd2,
            ku: sr.ku2,
            v: sr.v2,
            ybar: params.ybar2(),
            w: params.w,
            p_sb: params.p_sb2,
            lambda: params.lambda2(),
            beta: 0.0,
        }
    }

    pub fn group1(params: &FinanceParams, sr: &ShockReturns, beta: f64) -> Self {
        LimitEquation {
            kd: sr.kd1,
            ku: sr.ku1,
            v: sr.v1,
            ybar: params.ybar1(),
            w: params.w,
            p_sb: params.p_sb1,
            lambda: 1.0,
            beta,
        }
    }

    pub fn delta(&self) -> f64 {
        (1.0 - self.p_sb) * self.lambda
    }

    fn pay(&self, k: f64, x: f64) -> f64 {
        (k + x + self.beta - self.v).max(0.0).min(self.ybar)
    }

    /// `E[min{(K + x + beta - v)^+, ybar}]`.
    pub fn expected_payment(&self, x: f64) -> f64 {
        self.w * self.pay(self.kd, x) + (1.0 - self.w) * self.pay(self.ku, x)
    }

    pub fn map(&self, x: f64) -> f64 {
        self.delta() * self.expected_payment(x)
    }

    pub fn residual(&self, x: f64) -> f64 {
        (self.map(x) - x).abs()
    }

    pub fn upper(&self) -> f64 {
        self.delta() * self.ybar
    }

    pub fn default_probability(&self, x: f64) -> f64 {
        let defaults = |k: f64| f64::from(u8::from(k + x + self.beta - self.v < self.ybar - DEFAULT_SLACK));
        self.w * defaults(self.kd) + (1.0 - self.w) * defaults(self.ku)
    }

    /// `E(K + x + beta - v - ybar)^+`.
    pub fn expected_surplus(&self, x: f64) -> f64 {
        let s = |k: f64| (k + x + self.beta - self.v - self.ybar).max(0.0);
        self.w * s(self.kd) + (1.0 - self.w) * s(self.ku)
    }

    pub fn solve_numeric(&self) -> Result<f64> {
        let x = solve_limit_system(|x| vec![self.map(x[0])], &[self.upper()], LIMIT_TOL)?;
        Ok(x[0])
    }
}

/// Claims a group 1 bank receives from group 2 when group 2 aggregates to `x2`.
///
/// Equals `mu1 * x2` on the limit solution; written through the expected group 2
/// payment so that it stays finite when `p_sb2 = 1`.
pub fn coupling(params: &FinanceParams, sr: &ShockReturns, x2: f64) -> f64 {
    if params.yc == 0.0 {
        0.0
    } else if params.p_sb2 < 1.0 {
        params.mu1() * x2
    } else {
        params.cross_share() * LimitEquation::group2(params, sr).expected_payment(x2)
    }
}

/// Joint numeric solution of both limit equations.
pub fn limit_aggregates_numeric(params: &FinanceParams) -> Result<(f64, f64)> {
    let sr = portfolio(params)?;
    let e2 = LimitEquation::group2(params, &sr);
    let upper1 = (1.0 - params.p_sb1) * params.ybar1();
    let x = solve_limit_system(
        |x| {
            let e1 = LimitEquation::group1(params, &sr, coupling(params, &sr, x[1]));
            vec![e1.map(x[0]), e2.map(x[1])]
        },
        &[upper1, e2.upper()],
        LIMIT_TOL,
    )?;
    Ok((x[0], x[1]))
}

/// Largest residual of `(x1, x2)` in the two limit equations.
pub fn limit_residual(params: &FinanceParams, x1: f64, x2: f64) -> Result<f64> {
    let sr = portfolio(params)?;
    let r2 = LimitEquation::group2(params, &sr).residual(x2);
    let r1 = LimitEquation::group1(params, &sr, coupling(params, &sr, x2)).residual(x1);
    Ok(r1.max(r2))
}
