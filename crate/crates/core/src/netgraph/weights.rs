use super::graph::{Adjacency, Group};
use super::params::{ModelParams, WeightModel};
use crate::{Error, Result};

/// Liability weights aligned with the creditor lists of an [`Adjacency`].
#[derive(Clone, Debug, PartialEq)]
pub struct Weights {
    pub(crate) entries: Vec<f64>,
    pub(crate) big: Vec<f64>,
}

impl Weights {
    /// Weight of every stored edge, in creditor-list order.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// `W_{j,b}` per borrower.
    pub fn big(&self) -> &[f64] {
        &self.big
    }
}

pub fn build_weights(adj: &Adjacency, eta_sb: &[f64], params: &ModelParams) -> Result<Weights> {
    let n = adj.n();
    if eta_sb.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: eta_sb.len() });
    }
    if let Some(&bad) = eta_sb.iter().find(|e| !(0.0..=1.0).contains(*e)) {
        return Err(Error::InvalidParams(format!("eta_sb value {bad} is outside [0, 1]")));
    }
    let size = |g: Group| adj.members(g).len() as f64;
    let mut entries = Vec::with_capacity(adj.nnz());
    let mut big = Vec::with_capacity(n);

    for (j, &eta) in eta_sb.iter().enumerate() {
        let g = adj.group_of(j);
        let row = adj.row(j);
        match params.weight_model {
            WeightModel::SharedAll | WeightModel::FixedDenominator { grouped: false } => {
                let share = 1.0 - eta;
                let denom = match params.weight_model {
                    WeightModel::SharedAll => row.len() as f64,
                    _ => n as f64 * params.gamma_p(g),
                };
                if denom == 0.0 && share > 0.0 {
                    return Err(Error::ZeroDenominator { row: j });
                }
                let w = if share > 0.0 { share / denom } else { 0.0 };
                entries.extend(std::iter::repeat_n(w, row.len()));
                big.push(eta);
            }
            WeightModel::GroupSplit | WeightModel::FixedDenominator { grouped: true } => {
                let lambda = params.lambda(g);
                let within = lambda * (1.0 - eta);
                let cross = if params.pc(g) > 0.0 { 1.0 - lambda } else { 0.0 };
                let (dw, dx) = match params.weight_model {
                    WeightModel::GroupSplit => {
                        (adj.degree_in(j, g) as f64, adj.degree_in(j, g.other()) as f64)
                    }
                    _ => (size(g) * params.p(g), size(g.other()) * params.pc(g)),
                };
                if (within > 0.0 && dw == 0.0) || (cross > 0.0 && dx == 0.0) {
                    return Err(Error::ZeroDenominator { row: j });
                }
                let ww = if within > 0.0 { within / dw } else { 0.0 };
                let wx = if cross > 0.0 { cross / dx } else { 0.0 };
                entries.extend(row.iter().map(|&c| if adj.group_of(c as usize) == g { ww } else { wx }));
                big.push(eta * lambda);
            }
        }
    }
    Ok(Weights { entries, big })
}
