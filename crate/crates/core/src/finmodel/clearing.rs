use rand_distr::{Bernoulli, Distribution};
use serde::{Deserialize, Serialize};

use super::params::{portfolio, FinanceParams};
use crate::netgraph::GraphSample;
use crate::{Error, Result, Seed};

/// How a bank's risky investment is determined at finite `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ShockModel {
    /// From the bank's own sampled balance sheet: initial wealth plus what it
    /// borrowed minus what it lent.
    #[default]
    BalanceSheet,
    /// The group's limit investment `Omega_m` for every bank.
    GroupLimit,
}

/// Realised shocks of one path.
#[derive(Clone, Debug, PartialEq)]
pub struct ShockDraw {
    /// `K_i`.
    pub returns: Vec<f64>,
    pub down: Vec<bool>,
    pub omega: Vec<f64>,
}

impl ShockDraw {
    pub fn shocked_fraction(&self) -> f64 {
        self.down.iter().filter(|&&d| d).count() as f64 / self.down.len().max(1) as f64
    }
}

/// Risky investment `Omega_i` of every bank.
///
/// Bank `j` borrows `y1` (group 1) or `y2 + yc` (group 2) and lends
/// `W_{j',j}` times the borrowing of each of its obligors `j'`.
pub fn node_investments(sample: &GraphSample, params: &FinanceParams, model: ShockModel) -> Result<Vec<f64>> {
    let sr = portfolio(params)?;
    let n = sample.n();
    Ok(match model {
        ShockModel::GroupLimit => (0..n).map(|i| sr.omega(sample.group_of(i))).collect(),
        ShockModel::BalanceSheet => {
            let borrowed: Vec<f64> = (0..n).map(|j| params.borrowed(sample.group_of(j))).collect();
            let lent = sample.aggregate(&borrowed);
            borrowed.iter().zip(&lent).map(|(b, l)| (params.k0 + b - l).max(0.0)).collect()
        }
    })
}

/// Independent two-point shocks: down with probability `w`.
pub fn sample_shocks(
    sample: &GraphSample,
    params: &FinanceParams,
    model: ShockModel,
    seed: Seed,
) -> Result<ShockDraw> {
    let omega = node_investments(sample, params, model)?;
    let coin = Bernoulli::new(params.w).map_err(|e| Error::InvalidParams(e.to_string()))?;
    let mut rng = seed.rng();
    let down: Vec<bool> = (0..sample.n()).map(|_| coin.sample(&mut rng)).collect();
    let returns = omega
        .iter()
        .zip(&down)
        .map(|(o, &dn)| o * (1.0 + if dn { params.d } else { params.u } - params.dc))
        .collect();
    Ok(ShockDraw { returns, down, omega })
}

/// `X -> min{(K_i + sum_j X_j W_{j,i} - v_i)^+, ybar_i}` over one sample.
#[derive(Clone, Debug)]
pub struct ClearingMap<'a> {
    sample: &'a GraphSample,
    returns: Vec<f64>,
    taxes: Vec<f64>,
    ybar: Vec<f64>,
}

/// Taxes are the group values `v_m` of the limit portfolio.
pub fn finite_clearing_map<'a>(
    sample: &'a GraphSample,
    returns: &[f64],
    params: &FinanceParams,
) -> Result<ClearingMap<'a>> {
    let n = sample.n();
    if returns.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: returns.len() });
    }
    let sr = portfolio(params)?;
    let groups: Vec<_> = (0..n).map(|i| sample.group_of(i)).collect();
    Ok(ClearingMap {
        sample,
        returns: returns.to_vec(),
        taxes: groups.iter().map(|&g| sr.group(g).2).collect(),
        ybar: groups.iter().map(|&g| params.ybar(g)).collect(),
    })
}

impl ClearingMap<'_> {
    pub fn n(&self) -> usize {
        self.ybar.len()
    }

    pub fn box_upper(&self) -> &[f64] {
        &self.ybar
    }

    pub fn returns(&self) -> &[f64] {
        &self.returns
    }

    pub fn taxes(&self) -> &[f64] {
        &self.taxes
    }

    pub fn sample(&self) -> &GraphSample {
        self.sample
    }

    /// Claims `sum_j X_j W_{j,i}` received by each bank.
    pub fn aggregate(&self, x: &[f64]) -> Vec<f64> {
        self.sample.aggregate(x)
    }

    pub fn apply(&self, x: &[f64], out: &mut [f64]) {
        self.sample.aggregate_into(x, out);
        for (i, o) in out.iter_mut().enumerate() {
            *o = (self.returns[i] + *o - self.taxes[i]).max(0.0).min(self.ybar[i]);
        }
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n()];
        self.apply(x, &mut out);
        out
    }
}
