use std::ops::Range;

use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Bernoulli, Distribution, Geometric};
use serde::{Deserialize, Serialize};

use super::graph::{Adjacency, GraphSample, Group};
use super::params::{EtaMode, ModelParams};
use crate::{Error, Result, Seed};

/// Whole-graph redraws allowed before giving up.
pub const GRAPH_ATTEMPTS: usize = 100;
const COLUMN_TRIES: usize = 10_000;
const PARTNER_TRIES: usize = 1_000;

/// Inclusive degree bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeWindow {
    pub lo: usize,
    pub hi: usize,
}

impl DegreeWindow {
    pub fn new(lo: usize, hi: usize) -> Self {
        DegreeWindow { lo, hi }
    }

    pub fn around(center: usize, dev: usize) -> Self {
        DegreeWindow { lo: center.saturating_sub(dev), hi: center + dev }
    }

    pub fn contains(&self, d: usize) -> bool {
        (self.lo..=self.hi).contains(&d)
    }
}

fn bernoulli_subset(rng: &mut ChaCha8Rng, range: Range<usize>, q: f64, out: &mut Vec<u32>) {
    if q <= 0.0 || range.is_empty() {
        return;
    }
    if q >= 1.0 {
        out.extend(range.map(|i| i as u32));
        return;
    }
    let geo = Geometric::new(q).expect("probability checked above");
    let mut pos = range.start as u64 + geo.sample(rng);
    while pos < range.end as u64 {
        out.push(pos as u32);
        pos += 1 + geo.sample(rng);
    }
}

pub fn sample_eta(params: &ModelParams, adj: &Adjacency, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..adj.n())
        .map(|j| {
            let p = params.p_sb(adj.group_of(j));
            match params.eta_mode {
                EtaMode::Constant => p,
                EtaMode::Bernoulli => {
                    if Bernoulli::new(p).expect("validated probability").sample(rng) {
                        1.0
                    } else {
                        0.0
                    }
                }
            }
        })
        .collect()
}

fn check_n(params: &ModelParams, n: usize) -> Result<(usize, usize)> {
    params.validate()?;
    if n == 0 {
        return Err(Error::InvalidParams("n must be positive".into()));
    }
    if n > u32::MAX as usize {
        return Err(Error::InvalidParams("n exceeds the index range".into()));
    }
    params.group_sizes(n)
}

fn finish(
    params: &ModelParams,
    adj: Adjacency,
    rng: &mut ChaCha8Rng,
) -> Result<Option<GraphSample>> {
    let eta = sample_eta(params, &adj, rng);
    match GraphSample::new(adj, eta, params) {
        Ok(s) => Ok(Some(s)),
        Err(Error::ZeroDenominator { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn bernoulli_rows(params: &ModelParams, probe: &Adjacency, rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    (0..probe.n())
        .map(|j| {
            let g = probe.group_of(j);
            let mut row = Vec::new();
            for cg in [Group::G1, Group::G2] {
                bernoulli_subset(rng, probe.members(cg), params.edge_prob(g, cg), &mut row);
            }
            row
        })
        .collect()
}

/// One draw of the independent Bernoulli indicators, without weights and
/// without rejecting borrowers that have no creditor.
pub fn sample_adjacency(params: &ModelParams, n: usize, seed: Seed) -> Result<Adjacency> {
    let (n1, _) = check_n(params, n)?;
    let probe = Adjacency::from_rows(n1, vec![Vec::new(); n]);
    let rows = bernoulli_rows(params, &probe, &mut seed.child(0).rng());
    Ok(Adjacency::from_rows(n1, rows))
}

/// Independent Bernoulli indicators, redrawn as a whole while some row has a
/// positive share but no creditor to carry it.
pub fn sample_graph(params: &ModelParams, n: usize, seed: Seed) -> Result<GraphSample> {
    let (n1, _) = check_n(params, n)?;
    let probe = Adjacency::from_rows(n1, vec![Vec::new(); n]);
    for attempt in 0..GRAPH_ATTEMPTS {
        let mut rng = seed.child(attempt as u64).rng();
        let rows = bernoulli_rows(params, &probe, &mut rng);
        if let Some(s) = finish(params, Adjacency::from_rows(n1, rows), &mut rng)? {
            return Ok(s);
        }
    }
    Err(Error::RejectionExhausted {
        attempts: GRAPH_ATTEMPTS,
        reason: "every draw had a borrower without eligible creditors".into(),
    })
}

/// Graph whose borrower count per creditor lies in `lender` and whose creditor
/// count per borrower lies in `borrower`.
///
/// Columns are drawn with rejection against the lender window. Rows outside
/// the borrower window are then repaired by moving an edge `(j, c)` to
/// `(j', c)` with `j'` from the same group, which keeps every column count.
pub fn sample_regular_graph(
    params: &ModelParams,
    n: usize,
    lender: Option<DegreeWindow>,
    borrower: Option<DegreeWindow>,
    seed: Seed,
) -> Result<GraphSample> {
    let (n1, _) = check_n(params, n)?;
    for w in lender.iter().chain(borrower.iter()) {
        if w.lo > w.hi {
            return Err(Error::InvalidParams(format!("empty degree window {}..={}", w.lo, w.hi)));
        }
    }
    let probe = Adjacency::from_rows(n1, vec![Vec::new(); n]);
    let mut last_reason = String::new();
    for attempt in 0..GRAPH_ATTEMPTS {
        let mut rng = seed.child(attempt as u64).rng();
        let mut rows: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut col = Vec::new();
        for i in 0..n {
            let gi = probe.group_of(i);
            let mut tries = 0;
            loop {
                col.clear();
                for bg in [Group::G1, Group::G2] {
                    bernoulli_subset(&mut rng, probe.members(bg), params.edge_prob(bg, gi), &mut col);
                }
                if lender.is_none_or(|w| w.contains(col.len())) {
                    break;
                }
                tries += 1;
                if tries == COLUMN_TRIES {
                    return Err(Error::RejectionExhausted {
                        attempts: COLUMN_TRIES,
                        reason: format!("lender window {lender:?} is too narrow for column {i}"),
                    });
                }
            }
            for &j in &col {
                rows[j as usize].push(i as u32);
            }
        }
        if let Some(w) = borrower {
            if let Err(reason) = repair_rows(&mut rows, &probe, w, &mut rng) {
                last_reason = reason;
                continue;
            }
        }
        if let Some(s) = finish(params, Adjacency::from_rows(n1, rows), &mut rng)? {
            return Ok(s);
        }
        last_reason = "a borrower had no eligible creditors".into();
    }
    Err(Error::RejectionExhausted { attempts: GRAPH_ATTEMPTS, reason: last_reason })
}

fn repair_rows(
    rows: &mut [Vec<u32>],
    probe: &Adjacency,
    w: DegreeWindow,
    rng: &mut ChaCha8Rng,
) -> std::result::Result<(), String> {
    let n = rows.len();
    for j in 0..n {
        let members = probe.members(probe.group_of(j));
        while rows[j].len() > w.hi {
            let moved = (0..PARTNER_TRIES).find_map(|_| {
                let k = rng.random_range(members.clone());
                if k == j || rows[k].len() >= w.hi {
                    return None;
                }
                let movable: Vec<usize> = (0..rows[j].len()).filter(|&t| !rows[k].contains(&rows[j][t])).collect();
                movable.choose(rng).map(|&t| (k, t))
            });
            let Some((k, t)) = moved else {
                return Err(format!("row {j} cannot shed creditors into the borrower window"));
            };
            let c = rows[j].swap_remove(t);
            rows[k].push(c);
        }
        while rows[j].len() < w.lo {
            let moved = (0..PARTNER_TRIES).find_map(|_| {
                let k = rng.random_range(members.clone());
                if k == j || rows[k].len() <= w.lo {
                    return None;
                }
                let movable: Vec<usize> = (0..rows[k].len()).filter(|&t| !rows[j].contains(&rows[k][t])).collect();
                movable.choose(rng).map(|&t| (k, t))
            });
            let Some((k, t)) = moved else {
                return Err(format!("row {j} cannot gain creditors within the borrower window"));
            };
            let c = rows[k].swap_remove(t);
            rows[j].push(c);
        }
    }
    // moves only go to rows that stay inside the window, so one sweep suffices
    debug_assert!(rows.iter().all(|r| w.contains(r.len())));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph() {
        let p = ModelParams { p1: 1.0, p2: 1.0, pc1: 1.0, pc2: 1.0, ..Default::default() };
        let s = sample_graph(&p, 10, Seed(1)).unwrap();
        assert!((0..10).all(|j| s.adjacency().degree(j) == 10));
    }

    #[test]
    fn deterministic() {
        let p = ModelParams::single_group(0.1, 0.05);
        let a = sample_graph(&p, 200, Seed(5)).unwrap();
        let b = sample_graph(&p, 200, Seed(5)).unwrap();
        assert_eq!(a.adjacency(), b.adjacency());
        assert_eq!(a.eta_sb(), b.eta_sb());
    }

    #[test]
    fn too_sparse_fails_loudly() {
        let p = ModelParams::single_group(0.01, 0.0);
        assert!(matches!(sample_graph(&p, 10, Seed(1)), Err(Error::RejectionExhausted { .. })));
    }

    #[test]
    fn infeasible_window_fails() {
        let p = ModelParams::single_group(0.05, 0.0);
        let w = DegreeWindow::new(400, 500);
        assert!(matches!(
            sample_regular_graph(&p, 500, Some(w), None, Seed(1)),
            Err(Error::RejectionExhausted { .. })
        ));
        let bad = DegreeWindow::new(3, 2);
        assert!(sample_regular_graph(&p, 500, Some(bad), None, Seed(1)).is_err());
    }

    #[test]
    fn raw_adjacency_matches_first_attempt() {
        let p = ModelParams::single_group(0.2, 0.0);
        let a = sample_adjacency(&p, 50, Seed(3)).unwrap();
        let s = sample_graph(&p, 50, Seed(3)).unwrap();
        assert_eq!(&a, s.adjacency());
        let lone = sample_adjacency(&p, 1, Seed(3)).unwrap();
        assert_eq!(lone.n(), 1);
    }

    #[test]
    fn window_helpers() {
        let w = DegreeWindow::around(25, 2);
        assert_eq!((w.lo, w.hi), (23, 27));
        assert!(w.contains(23) && w.contains(27) && !w.contains(28));
        assert_eq!(DegreeWindow::around(1, 3).lo, 0);
    }
}
