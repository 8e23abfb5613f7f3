use std::path::Path;

use anyhow::{bail, Context};
use clearnet::finmodel::{FinanceParams, ShockModel};
use clearnet::fpcore::FPConfig;
use clearnet::mcharness::{GraphKind, PathConfig};
use clearnet::netgraph::{DegreeWindow, Group, ModelParams};
use serde::{Deserialize, Serialize};

use crate::presets;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub model: ModelParams,
    pub finance: FinanceParams,
    #[serde(default)]
    pub experiment: Experiment,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NValues {
    One(usize),
    Many(Vec<usize>),
}

impl NValues {
    pub fn to_vec(&self) -> Vec<usize> {
        match self {
            NValues::One(n) => vec![*n],
            NValues::Many(v) => v.clone(),
        }
    }
}

/// Degree window either fixed or `round(fraction * expected)` around the
/// expected count at the current `n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WindowSpec {
    Fixed { lo: usize, hi: usize },
    Relative { relative: f64 },
}

impl WindowSpec {
    fn resolve(&self, expected: f64) -> DegreeWindow {
        match *self {
            WindowSpec::Fixed { lo, hi } => DegreeWindow::new(lo, hi),
            WindowSpec::Relative { relative } => {
                let center = expected.round() as usize;
                DegreeWindow::around(center, (relative * expected).round() as usize)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphSpec {
    #[default]
    Er,
    Regular {
        #[serde(default)]
        lender: Option<WindowSpec>,
        #[serde(default)]
        borrower: Option<WindowSpec>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVar {
    Yc,
    Dc,
    Kappa,
    W,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            SweepVar::Yc => "yc",
            SweepVar::Dc => "dc",
            SweepVar::Kappa => "kappa",
            SweepVar::W => "w",
        }
    }
}

impl std::str::FromStr for SweepVar {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        Ok(match s {
            "yc" => SweepVar::Yc,
            "dc" => SweepVar::Dc,
            "kappa" => SweepVar::Kappa,
            "w" => SweepVar::W,
            other => bail!("unknown sweep variable {other:?} (expected yc, dc, kappa or w)"),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub var: SweepVar,
    /// `start:stop:step`, inclusive of `stop`.
    pub grid: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Experiment {
    pub n: NValues,
    pub paths: usize,
    pub seed: u64,
    pub graph: GraphSpec,
    pub shock_model: ShockModel,
    pub fp: FPConfig,
    pub sweep: Option<SweepSpec>,
    /// Use `model` verbatim instead of deriving weights and big-bank shares
    /// from the finance section.
    pub raw_model: bool,
}

impl Default for Experiment {
    fn default() -> Self {
        Experiment {
            n: NValues::Many(vec![1000]),
            paths: 1,
            seed: 1,
            graph: GraphSpec::Er,
            shock_model: ShockModel::default(),
            fp: FPConfig::default(),
            sweep: None,
            raw_model: false,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> anyhow::Result<Config> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn preset(name: &str) -> anyhow::Result<Config> {
        let Some(text) = presets::get(name) else {
            bail!(
                "unknown preset {name:?}; available: {}",
                presets::NAMES.join(", ")
            );
        };
        serde_json::from_str(text).with_context(|| format!("embedded preset {name}"))
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        self.finance.validate()?;
        let ns = self.experiment.n.to_vec();
        if ns.is_empty() || ns.contains(&0) {
            bail!("experiment.n must list positive sizes");
        }
        if self.experiment.paths == 0 {
            bail!("experiment.paths must be positive");
        }
        self.experiment.fp.validate()?;
        self.network().validate()?;
        Ok(())
    }

    /// Network parameters used for sampling.
    pub fn network(&self) -> ModelParams {
        if self.experiment.raw_model {
            return self.model.clone();
        }
        let m = &self.model;
        let mapped = if m.single_group {
            self.finance.single_network(m.p2, m.eta_mode)
        } else {
            self.finance.network(m.p1, m.p2, m.pc2, m.eta_mode)
        };
        ModelParams {
            weight_model: m.weight_model,
            ..mapped
        }
    }

    pub fn graph_kind(&self, n: usize) -> GraphKind {
        let net = self.network();
        let expected = n as f64 * net.gamma_p(Group::G2);
        match self.experiment.graph {
            GraphSpec::Er => GraphKind::Er,
            GraphSpec::Regular { lender, borrower } => GraphKind::Regular {
                lender: lender.map(|w| w.resolve(expected)),
                borrower: borrower.map(|w| w.resolve(expected)),
            },
        }
    }

    pub fn path_config(&self, n: usize) -> PathConfig {
        PathConfig {
            model: self.network(),
            finance: self.finance.clone(),
            n,
            graph: self.graph_kind(n),
            shock_model: self.experiment.shock_model,
            fp: self.experiment.fp,
        }
    }
}

/// Parses `start:stop:step` into an ascending inclusive grid.
pub fn parse_grid(spec: &str) -> anyhow::Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, s] = parts.as_slice() else {
        bail!("grid {spec:?} is not start:stop:step");
    };
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .with_context(|| format!("grid value {t:?}"))
    };
    let (start, stop, step) = (num(a)?, num(b)?, num(s)?);
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        bail!("grid values must be finite");
    }
    if stop < start {
        bail!("grid {spec:?} is not ascending");
    }
    if start == stop {
        return Ok(vec![start]);
    }
    if step <= 0.0 {
        bail!("grid step must be positive");
    }
    let k = ((stop - start) / step + 1e-9).floor() as usize;
    if k > 1_000_000 {
        bail!("grid {spec:?} has too many points");
    }
    Ok((0..=k).map(|i| start + i as f64 * step).collect())
}
