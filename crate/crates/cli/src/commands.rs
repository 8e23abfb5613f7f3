use anyhow::{bail, Context};
use clearnet::finmodel::{
    classify_regime, solve_limit, theory_single_group, FinanceParams, LimitSolution, RegimeReport,
    Taxes,
};
use clearnet::fpcore::{contraction_model_b, ContractionReport};
use clearnet::mcharness::{correlation_defaults_vs_shocks, estimate, GraphKind, MCReport};
use clearnet::netgraph::{
    regularity_diagnostic, sample_adjacency, sample_regular_graph, RegularityReport,
};
use clearnet::Seed;
use serde::Serialize;

use crate::config::{parse_grid, Config, SweepVar};
use crate::output::Sink;

pub const SWEEP_HEADER: [&str; 12] = [
    "var",
    "value",
    "status",
    "x1_inf",
    "x2_inf",
    "pd1",
    "pd2",
    "es1",
    "es2",
    "sau2",
    "case_tag_g1",
    "case_tag_g2",
];
pub const MC_HEADER: [&str; 8] = [
    "n",
    "measure",
    "mean",
    "half_width",
    "n_paths",
    "failed_paths",
    "theory",
    "error_pct",
];
pub const DIAG_HEADER: [&str; 6] = [
    "n",
    "max_dev_g1",
    "max_dev_g2",
    "set_e_sum_g1",
    "set_e_sum_g2",
    "isolated_borrowers",
];

/// Failure of the numerical machinery rather than of the input.
#[derive(Debug)]
pub struct NumericFailure(pub String);

impl std::fmt::Display for NumericFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for NumericFailure {}

#[derive(Serialize)]
struct Theory {
    x_th: f64,
    es_th: f64,
}

#[derive(Serialize)]
struct LimitReport {
    solution: LimitSolution,
    regime: RegimeReport,
    theory: Option<Theory>,
    contraction: Option<ContractionReport>,
}

fn optional(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

pub fn limit(cfg: &Config, sink: &Sink) -> anyhow::Result<()> {
    cfg.finance.validate()?;
    let solution = solve_limit(&cfg.finance)?;
    let regime = classify_regime(&cfg.finance)?;
    let theory = theory_single_group(&cfg.finance)
        .ok()
        .map(|(x_th, es_th)| Theory { x_th, es_th });
    let contraction = contraction_model_b(&cfg.network(), 1.0, 0.0, 0.0).ok();
    let report = LimitReport {
        solution,
        regime,
        theory,
        contraction,
    };
    sink.json("limit.json", &report)
}

fn with_value(base: &FinanceParams, var: SweepVar, v: f64) -> FinanceParams {
    let mut p = base.clone();
    match var {
        SweepVar::Yc => p.yc = v,
        SweepVar::Dc => p.dc = v,
        SweepVar::W => p.w = v,
        SweepVar::Kappa => p.taxes = Taxes::Proportional { kappa: v },
    }
    p
}

pub fn sweep(cfg: &Config, var: SweepVar, grid: &str, sink: &Sink) -> anyhow::Result<()> {
    let values = parse_grid(grid)?;
    if var == SweepVar::Kappa && cfg.finance.kappa().is_none() {
        bail!("a kappa sweep needs proportional taxes");
    }
    let mut rows = Vec::with_capacity(values.len());
    for v in values {
        let mut row = vec![var.name().to_string(), v.to_string()];
        match solve_limit(&with_value(&cfg.finance, var, v)) {
            Ok(s) => {
                row.push("ok".into());
                for x in [s.x1_inf, s.x2_inf, s.pd1, s.pd2, s.es1, s.es2, s.sau2] {
                    row.push(x.to_string());
                }
                row.push(s.case_tag_g1.to_string());
                row.push(s.case_tag_g2.to_string());
            }
            Err(e) => {
                log::warn!("{}={v}: {e}", var.name());
                row.push(format!("error: {e}"));
                row.extend(std::iter::repeat_n(String::new(), 9));
            }
        }
        rows.push(row);
    }
    sink.csv(&format!("sweep_{}.csv", var.name()), &SWEEP_HEADER, &rows)
}

pub fn mc(cfg: &Config, workers: usize, sink: &Sink) -> anyhow::Result<()> {
    cfg.validate()?;
    let mut reports: Vec<MCReport> = Vec::new();
    let mut rows = Vec::new();
    for n in cfg.experiment.n.to_vec() {
        let path_cfg = cfg.path_config(n);
        let master = Seed(cfg.experiment.seed).child(n as u64);
        let report = match estimate(&path_cfg, master, cfg.experiment.paths, workers) {
            Ok(r) => r,
            Err(e @ clearnet::Error::AllPathsFailed(_)) => {
                return Err(anyhow::Error::new(NumericFailure(format!("n = {n}: {e}"))));
            }
            Err(e) => return Err(e).with_context(|| format!("n = {n}")),
        };
        log::info!(
            "n = {n}: {} paths, {} failed",
            report.paths.len(),
            report.failed_paths
        );
        for m in &report.measures {
            rows.push(vec![
                n.to_string(),
                m.name.clone(),
                m.mean.to_string(),
                optional(m.half_width),
                m.n_paths.to_string(),
                report.failed_paths.to_string(),
                optional(m.theory),
                optional(m.error_pct),
            ]);
        }
        if let Ok(c) = correlation_defaults_vs_shocks(&report.paths) {
            rows.push(vec![
                n.to_string(),
                "corr_pd_shock".into(),
                c.to_string(),
                String::new(),
                report.paths.len().to_string(),
                report.failed_paths.to_string(),
                String::new(),
                String::new(),
            ]);
        }
        reports.push(report);
    }
    sink.csv("mc.csv", &MC_HEADER, &rows)?;
    sink.json_file_only("mc.json", &reports)
}

pub fn graph_diag(cfg: &Config, sink: &Sink) -> anyhow::Result<()> {
    let net = cfg.network();
    net.validate()?;
    let mut reports: Vec<RegularityReport> = Vec::new();
    for n in cfg.experiment.n.to_vec() {
        let seed = Seed(cfg.experiment.seed).child(n as u64);
        let adj = match cfg.graph_kind(n) {
            GraphKind::Er => sample_adjacency(&net, n, seed)?,
            GraphKind::Regular { lender, borrower } => {
                sample_regular_graph(&net, n, lender, borrower, seed)?
                    .adjacency()
                    .clone()
            }
        };
        reports.push(regularity_diagnostic(&adj, &net));
    }
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.max_dev_g1.to_string(),
                r.max_dev_g2.to_string(),
                r.set_e_sum_g1.to_string(),
                r.set_e_sum_g2.to_string(),
                r.isolated_borrowers.to_string(),
            ]
        })
        .collect();
    sink.csv("graph_diag.csv", &DIAG_HEADER, &rows)
}
