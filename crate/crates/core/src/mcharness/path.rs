use serde::{Deserialize, Serialize};

use crate::finmodel::{finite_clearing_map, sample_shocks, ClearingMap, FinanceParams, ShockModel};
use crate::fpcore::{iterate_fp, FPConfig};
use crate::netgraph::{sample_graph, sample_regular_graph, DegreeWindow, Group, ModelParams};
use crate::{Result, Seed};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphKind {
    #[default]
    Er,
    Regular {
        /// Window on the number of obligors of each bank.
        lender: Option<DegreeWindow>,
        /// Window on the number of creditors of each bank.
        borrower: Option<DegreeWindow>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathConfig {
    pub model: ModelParams,
    pub finance: FinanceParams,
    pub n: usize,
    #[serde(default)]
    pub graph: GraphKind,
    #[serde(default)]
    pub shock_model: ShockModel,
    #[serde(default)]
    pub fp: FPConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupStats {
    /// Mean claim received per bank.
    pub x_hat: f64,
    /// Fraction of banks paying less than their liability.
    pub pd_hat: f64,
    /// Mean surplus.
    pub es_hat: f64,
    /// Mean surplus of the banks with an upward shock.
    pub sau_hat: f64,
}

/// Outcome of one path; the headline fields describe group 2.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathStats {
    pub x_hat: f64,
    pub pd_hat: f64,
    pub es_hat: f64,
    pub sau_hat: f64,
    pub shock_frac: f64,
    pub iterations: usize,
    pub converged: bool,
    pub g1: Option<GroupStats>,
}

fn group_stats(map: &ClearingMap<'_>, x: &[f64], agg: &[f64], down: &[bool], g: Group) -> GroupStats {
    let members = map.sample().adjacency().members(g);
    let count = members.len().max(1) as f64;
    let (k, v, ybar) = (map.returns(), map.taxes(), map.box_upper());
    let (mut xs, mut defaults, mut surplus, mut up_surplus, mut ups) = (0.0, 0usize, 0.0, 0.0, 0usize);
    for i in members {
        xs += agg[i];
        if x[i] < ybar[i] - 1e-9 {
            defaults += 1;
        }
        let s = (k[i] + agg[i] - v[i] - ybar[i]).max(0.0);
        surplus += s;
        if !down[i] {
            up_surplus += s;
            ups += 1;
        }
    }
    GroupStats {
        x_hat: xs / count,
        pd_hat: defaults as f64 / count,
        es_hat: surplus / count,
        sau_hat: if ups > 0 { up_surplus / ups as f64 } else { 0.0 },
    }
}

/// Samples a graph and shocks, clears the network and summarises it.
/// A path whose iteration hits the cap comes back with `converged = false`.
pub fn run_path(cfg: &PathConfig, seed: Seed) -> Result<PathStats> {
    cfg.finance.validate()?;
    let graph_seed = seed.named("graph");
    let sample = match cfg.graph {
        GraphKind::Er => sample_graph(&cfg.model, cfg.n, graph_seed)?,
        GraphKind::Regular { lender, borrower } => {
            sample_regular_graph(&cfg.model, cfg.n, lender, borrower, graph_seed)?
        }
    };
    let shocks = sample_shocks(&sample, &cfg.finance, cfg.shock_model, seed.named("shocks"))?;
    let map = finite_clearing_map(&sample, &shocks.returns, &cfg.finance)?;
    let fp = iterate_fp(|x, out| map.apply(x, out), map.box_upper(), &cfg.fp)?;
    let agg = map.aggregate(&fp.solution);
    let g2 = group_stats(&map, &fp.solution, &agg, &shocks.down, Group::G2);
    let g1 = (sample.n1() > 0).then(|| group_stats(&map, &fp.solution, &agg, &shocks.down, Group::G1));
    Ok(PathStats {
        x_hat: g2.x_hat,
        pd_hat: g2.pd_hat,
        es_hat: g2.es_hat,
        sau_hat: g2.sau_hat,
        shock_frac: shocks.shocked_fraction(),
        iterations: fp.iterations,
        converged: fp.converged,
        g1,
    })
}
