use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::netgraph::{sample_graph, GraphSample, Group, ModelParams};
use crate::{Error, Result, Seed};

/// Bounded i.i.d. multipliers `M_j`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplier {
    Constant(f64),
    Uniform { lo: f64, hi: f64 },
    Bernoulli(f64),
}

impl Multiplier {
    pub fn mean(&self) -> f64 {
        match *self {
            Multiplier::Constant(c) => c,
            Multiplier::Uniform { lo, hi } => 0.5 * (lo + hi),
            Multiplier::Bernoulli(p) => p,
        }
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match *self {
            Multiplier::Constant(c) => c,
            Multiplier::Uniform { lo, hi } => lo + (hi - lo) * rng.random::<f64>(),
            Multiplier::Bernoulli(p) => f64::from(u8::from(rng.random::<f64>() < p)),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Multiplier::Constant(c) => c.is_finite(),
            Multiplier::Uniform { lo, hi } => lo.is_finite() && hi.is_finite() && lo <= hi,
            Multiplier::Bernoulli(p) => (0.0..=1.0).contains(&p),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!("bad multiplier {self:?}")))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LlnRow {
    pub n: usize,
    pub group: Group,
    /// Mean of `zeta^n` over the replicates.
    pub zeta: f64,
    pub limit: f64,
    /// Mean of `|zeta^n - limit|` over the replicates.
    pub deviation: f64,
    pub replicates: usize,
}

/// `sum_{j in G_m} M_j (1 - eta_j) / A_j`; rows owing nothing to small nodes add 0.
pub fn zeta(sample: &GraphSample, g: Group, m: &[f64]) -> f64 {
    let adj = sample.adjacency();
    adj.members(g)
        .map(|j| {
            let share = m[j] * (1.0 - sample.eta_sb()[j]);
            if share == 0.0 {
                0.0
            } else {
                share / adj.degree(j) as f64
            }
        })
        .sum()
}

/// `E[M] gamma_m (1 - p_sb_m) / gamma_p_m`.
pub fn zeta_limit(params: &ModelParams, g: Group, mean_m: f64) -> f64 {
    mean_m * params.share(g) * (1.0 - params.p_sb(g)) / params.gamma_p(g)
}

/// Empirical check of the law of large numbers behind the limit system.
///
/// For every `n`, draws `replicates` independent graphs and multiplier vectors
/// from the `n`-th child of `seed` and reports the mean absolute deviation of
/// `zeta^n` from its limit per populated group.
pub fn lln_diagnostic(
    params: &ModelParams,
    n_values: &[usize],
    replicates: usize,
    multiplier: Multiplier,
    seed: Seed,
) -> Result<Vec<LlnRow>> {
    multiplier.validate()?;
    if replicates == 0 {
        return Err(Error::InvalidParams("need at least one replicate".into()));
    }
    let groups = params.groups();
    let mut rows = Vec::new();
    for &n in n_values {
        let family = seed.child(n as u64);
        let draws: Vec<Vec<f64>> = (0..replicates)
            .into_par_iter()
            .map(|r| {
                let s = family.child(r as u64);
                let sample = sample_graph(params, n, s.named("graph"))?;
                let mut rng = s.named("multiplier").rng();
                let m: Vec<f64> = (0..n).map(|_| multiplier.sample(&mut rng)).collect();
                Ok(groups.iter().map(|&g| zeta(&sample, g, &m)).collect())
            })
            .collect::<Result<_>>()?;
        for (gi, &g) in groups.iter().enumerate() {
            let limit = zeta_limit(params, g, multiplier.mean());
            let k = replicates as f64;
            rows.push(LlnRow {
                n,
                group: g,
                zeta: draws.iter().map(|d| d[gi]).sum::<f64>() / k,
                limit,
                deviation: draws.iter().map(|d| (d[gi] - limit).abs()).sum::<f64>() / k,
                replicates,
            });
        }
    }
    Ok(rows)
}
