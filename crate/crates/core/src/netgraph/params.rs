use serde::{Deserialize, Serialize};

use super::graph::Group;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum EtaMode {
    #[default]
    Bernoulli,
    Constant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum WeightModel {
    /// Each borrower splits its small-node share equally over all creditors.
    #[default]
    SharedAll,
    /// Shares are split first by creditor group (`lambda_m` stays at home).
    GroupSplit,
    /// Same numerators as the two models above with deterministic denominators.
    FixedDenominator { grouped: bool },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ModelParams {
    pub gamma: f64,
    pub p1: f64,
    pub p2: f64,
    pub pc1: f64,
    pub pc2: f64,
    pub p_sb1: f64,
    pub p_sb2: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub eta_mode: EtaMode,
    pub weight_model: WeightModel,
    /// All nodes form one group with the parameters of group 2.
    pub single_group: bool,
    /// Big-node to small-node weight. Inert; kept for completeness.
    pub eta_bs: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            gamma: 0.5,
            p1: 0.05,
            p2: 0.05,
            pc1: 0.05,
            pc2: 0.05,
            p_sb1: 0.0,
            p_sb2: 0.0,
            lambda1: 1.0,
            lambda2: 1.0,
            eta_mode: EtaMode::Bernoulli,
            weight_model: WeightModel::SharedAll,
            single_group: false,
            eta_bs: 0.0,
        }
    }
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{name} = {v} is outside [0, 1]")))
    }
}

impl ModelParams {
    /// One group with connectivity `p` and big-node share `p_sb`, written as
    /// two mirrored halves without cross edges.
    pub fn single_group(p: f64, p_sb: f64) -> Self {
        ModelParams {
            gamma: 0.5,
            p1: p,
            p2: p,
            pc1: 0.0,
            pc2: 0.0,
            p_sb1: p_sb,
            p_sb2: p_sb,
            lambda1: 1.0,
            lambda2: 1.0,
            single_group: true,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(Error::InvalidParams(format!("gamma = {} must lie in (0, 1)", self.gamma)));
        }
        for (name, v) in [
            ("p1", self.p1),
            ("p2", self.p2),
            ("pc1", self.pc1),
            ("pc2", self.pc2),
            ("p_sb1", self.p_sb1),
            ("p_sb2", self.p_sb2),
            ("lambda1", self.lambda1),
            ("lambda2", self.lambda2),
        ] {
            check_unit(name, v)?;
        }
        if self.eta_bs != 0.0 {
            return Err(Error::InvalidParams("eta_bs is inert and must be 0".into()));
        }
        match self.weight_model {
            WeightModel::SharedAll | WeightModel::FixedDenominator { grouped: false } => {
                for g in self.groups() {
                    if self.gamma_p(g) <= 0.0 {
                        return Err(Error::InvalidParams(format!("gamma_p of {g:?} is zero")));
                    }
                }
            }
            WeightModel::GroupSplit | WeightModel::FixedDenominator { grouped: true } => {
                for g in self.groups() {
                    if self.pc(g) == 0.0 && self.lambda(g) != 1.0 {
                        return Err(Error::InvalidParams(format!(
                            "{g:?} has no cross edges, so its lambda must be 1"
                        )));
                    }
                    if self.p(g) == 0.0 && self.lambda(g) > 0.0 {
                        return Err(Error::InvalidParams(format!(
                            "{g:?} has no within-group edges but a positive lambda"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Groups that actually hold nodes.
    pub fn groups(&self) -> Vec<Group> {
        if self.single_group {
            vec![Group::G2]
        } else {
            vec![Group::G1, Group::G2]
        }
    }

    /// Group-1 share used for sampling; zero in single-group mode.
    pub fn sampling_gamma(&self) -> f64 {
        if self.single_group {
            0.0
        } else {
            self.gamma
        }
    }

    pub fn group_sizes(&self, n: usize) -> Result<(usize, usize)> {
        let g = self.sampling_gamma();
        let n1 = n as f64 * g;
        if (n1 - n1.round()).abs() > 1e-9 {
            return Err(Error::NonIntegralGroups { n, gamma: g });
        }
        let n1 = n1.round() as usize;
        Ok((n1, n - n1))
    }

    pub fn p(&self, g: Group) -> f64 {
        match g {
            Group::G1 => self.p1,
            Group::G2 => self.p2,
        }
    }

    pub fn pc(&self, g: Group) -> f64 {
        match g {
            Group::G1 => self.pc1,
            Group::G2 => self.pc2,
        }
    }

    pub fn p_sb(&self, g: Group) -> f64 {
        match g {
            Group::G1 => self.p_sb1,
            Group::G2 => self.p_sb2,
        }
    }

    pub fn lambda(&self, g: Group) -> f64 {
        match g {
            Group::G1 => self.lambda1,
            Group::G2 => self.lambda2,
        }
    }

    /// Probability that a node of `borrower` is liable to a node of `creditor`.
    pub fn edge_prob(&self, borrower: Group, creditor: Group) -> f64 {
        if borrower == creditor {
            self.p(borrower)
        } else {
            self.pc(borrower)
        }
    }

    /// Expected creditor count of a `g` borrower divided by `n`.
    pub fn gamma_p(&self, g: Group) -> f64 {
        let gamma = self.sampling_gamma();
        match g {
            Group::G1 => gamma * self.p1 + (1.0 - gamma) * self.pc1,
            Group::G2 => gamma * self.pc2 + (1.0 - gamma) * self.p2,
        }
    }

    /// Group share `gamma_m` as seen by the sampler.
    pub fn share(&self, g: Group) -> f64 {
        let gamma = self.sampling_gamma();
        match g {
            Group::G1 => gamma,
            Group::G2 => 1.0 - gamma,
        }
    }
}
