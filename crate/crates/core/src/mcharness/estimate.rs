use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::path::{run_path, PathConfig, PathStats};
use crate::finmodel::solve_limit;
use crate::{Error, Result, Seed};

pub const Z_95: f64 = 1.96;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureEstimate {
    pub name: String,
    pub mean: f64,
    /// `1.96 sqrt(var / n_paths)`; absent with fewer than two paths.
    pub half_width: Option<f64>,
    pub n_paths: usize,
    pub theory: Option<f64>,
    /// `|theory - mean| / theory * 100`.
    pub error_pct: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MCReport {
    pub n: usize,
    pub master_seed: Seed,
    pub requested_paths: usize,
    pub failed_paths: usize,
    pub measures: Vec<MeasureEstimate>,
    pub paths: Vec<PathStats>,
}

impl MCReport {
    pub fn measure(&self, name: &str) -> Option<&MeasureEstimate> {
        self.measures.iter().find(|m| m.name == name)
    }
}

/// `1.96 sqrt(s^2 / k)` with the unbiased sample variance `s^2`.
pub fn half_width(values: &[f64]) -> Option<f64> {
    let k = values.len();
    if k < 2 {
        return None;
    }
    let mean = values.iter().sum::<f64>() / k as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1) as f64;
    Some(Z_95 * (var / k as f64).sqrt())
}

fn summarise(name: &str, values: &[f64], theory: Option<f64>) -> MeasureEstimate {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let error_pct = theory.filter(|t| *t != 0.0).map(|t| (t - mean).abs() / t.abs() * 100.0);
    MeasureEstimate {
        name: name.to_string(),
        mean,
        half_width: half_width(values),
        n_paths: values.len(),
        theory,
        error_pct,
    }
}

/// Runs `n_paths` paths on `workers` threads (0 = rayon default) and compares
/// the averages with the limit theory. Failed paths are dropped and counted.
pub fn estimate(cfg: &PathConfig, master: Seed, n_paths: usize, workers: usize) -> Result<MCReport> {
    if n_paths == 0 {
        return Err(Error::InvalidParams("need at least one path".into()));
    }
    cfg.model.validate()?;
    cfg.finance.validate()?;
    cfg.fp.validate()?;
    let theory = solve_limit(&cfg.finance).ok();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;
    let outcomes: Vec<Result<PathStats>> =
        pool.install(|| (0..n_paths).into_par_iter().map(|i| run_path(cfg, master.child(i as u64))).collect());

    let mut paths = Vec::with_capacity(n_paths);
    let mut failed = 0;
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Ok(p) if p.converged => paths.push(p),
            Ok(p) => {
                log::warn!("path {i} did not converge after {} iterations; excluded", p.iterations);
                failed += 1;
            }
            Err(e) => {
                log::warn!("path {i} failed: {e}; excluded");
                failed += 1;
            }
        }
    }
    if paths.is_empty() {
        return Err(Error::AllPathsFailed(n_paths));
    }

    let col = |f: &dyn Fn(&PathStats) -> f64| paths.iter().map(f).collect::<Vec<_>>();
    let t = |f: fn(&crate::finmodel::LimitSolution) -> f64| theory.as_ref().map(f);
    let mut measures = vec![
        summarise("x_hat", &col(&|p| p.x_hat), t(|s| s.x2_inf)),
        summarise("pd_hat", &col(&|p| p.pd_hat), t(|s| s.pd2)),
        summarise("es_hat", &col(&|p| p.es_hat), t(|s| s.es2)),
        summarise("sau_hat", &col(&|p| p.sau_hat), t(|s| s.sau2)),
        summarise("shock_frac", &col(&|p| p.shock_frac), Some(cfg.finance.w)),
    ];
    if paths[0].g1.is_some() {
        let g1 = |f: fn(&super::path::GroupStats) -> f64| {
            paths.iter().map(|p| p.g1.as_ref().map_or(f64::NAN, f)).collect::<Vec<_>>()
        };
        measures.push(summarise("x1_hat", &g1(|g| g.x_hat), t(|s| s.x1_inf + s.mu1 * s.x2_inf)));
        measures.push(summarise("pd1_hat", &g1(|g| g.pd_hat), t(|s| s.pd1)));
        measures.push(summarise("es1_hat", &g1(|g| g.es_hat), t(|s| s.es1)));
    }
    Ok(MCReport { n: cfg.n, master_seed: master, requested_paths: n_paths, failed_paths: failed, measures, paths })
}

/// Pearson correlation between the default fraction and the shocked fraction.
pub fn correlation_defaults_vs_shocks(paths: &[PathStats]) -> Result<f64> {
    if paths.len() < 2 {
        return Err(Error::InvalidParams("correlation needs at least two paths".into()));
    }
    let k = paths.len() as f64;
    let mx = paths.iter().map(|p| p.pd_hat).sum::<f64>() / k;
    let my = paths.iter().map(|p| p.shock_frac).sum::<f64>() / k;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for p in paths {
        let (dx, dy) = (p.pd_hat - mx, p.shock_frac - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance("default or shock fractions"));
    }
    Ok(sxy / (sxx * syy).sqrt())
}
