use serde::{Deserialize, Serialize};

use super::graph::{Adjacency, Group};
use super::params::ModelParams;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub n: usize,
    pub max_dev_g1: f64,
    pub max_dev_g2: f64,
    pub set_e_sum_g1: f64,
    pub set_e_sum_g2: f64,
    pub isolated_borrowers: usize,
}

/// Degree regularity of a sample against the expected counts `n * gamma_p`.
/// Rows without creditors count as isolated and are left out of the set-E sums.
pub fn regularity_diagnostic(adj: &Adjacency, params: &ModelParams) -> RegularityReport {
    let n = adj.n();
    let mut max_dev = [0.0f64; 2];
    let mut set_e = [0.0f64; 2];
    let mut isolated = 0;
    for g in [Group::G1, Group::G2] {
        let expected = n as f64 * params.gamma_p(g);
        for j in adj.members(g) {
            let a = adj.degree(j);
            if a == 0 {
                isolated += 1;
            }
            if expected > 0.0 {
                max_dev[g.index()] = max_dev[g.index()].max((a as f64 / expected - 1.0).abs());
                if a > 0 {
                    set_e[g.index()] += (1.0 / a as f64 - 1.0 / expected).abs();
                }
            }
        }
    }
    RegularityReport {
        n,
        max_dev_g1: max_dev[0],
        max_dev_g2: max_dev[1],
        set_e_sum_g1: set_e[0],
        set_e_sum_g2: set_e[1],
        isolated_borrowers: isolated,
    }
}
