use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::params::ModelParams;
use super::weights::{build_weights, Weights};
use crate::{Error, Result};

/// Largest `n` for which dense matrices are produced.
pub const DENSE_LIMIT: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    G1,
    G2,
}

impl Group {
    pub fn index(self) -> usize {
        match self {
            Group::G1 => 0,
            Group::G2 => 1,
        }
    }

    pub fn other(self) -> Group {
        match self {
            Group::G1 => Group::G2,
            Group::G2 => Group::G1,
        }
    }
}

/// Creditor lists per borrower in compressed-row form. Nodes `0..n1` are
/// group 1, the rest group 2.
#[derive(Clone, Debug, PartialEq)]
pub struct Adjacency {
    n1: usize,
    offsets: Vec<usize>,
    creditors: Vec<u32>,
}

impl Adjacency {
    pub fn from_rows(n1: usize, rows: Vec<Vec<u32>>) -> Self {
        let n = rows.len();
        assert!(n1 <= n, "group 1 larger than the graph");
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut creditors = Vec::with_capacity(rows.iter().map(Vec::len).sum());
        for mut row in rows {
            row.sort_unstable();
            row.dedup();
            assert!(row.last().is_none_or(|&c| (c as usize) < n), "creditor index out of range");
            creditors.extend_from_slice(&row);
            offsets.push(creditors.len());
        }
        Adjacency { n1, offsets, creditors }
    }

    pub fn complete(n: usize, n1: usize) -> Self {
        let rows = (0..n).map(|_| (0..n as u32).collect()).collect();
        Adjacency::from_rows(n1, rows)
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n() - self.n1
    }

    pub fn group_of(&self, i: usize) -> Group {
        if i < self.n1 {
            Group::G1
        } else {
            Group::G2
        }
    }

    pub fn members(&self, g: Group) -> Range<usize> {
        match g {
            Group::G1 => 0..self.n1,
            Group::G2 => self.n1..self.n(),
        }
    }

    pub fn row_range(&self, j: usize) -> Range<usize> {
        self.offsets[j]..self.offsets[j + 1]
    }

    pub fn row(&self, j: usize) -> &[u32] {
        &self.creditors[self.row_range(j)]
    }

    /// `A_j`, the number of creditors of `j`.
    pub fn degree(&self, j: usize) -> usize {
        self.offsets[j + 1] - self.offsets[j]
    }

    /// Creditors of `j` inside group `g`.
    pub fn degree_in(&self, j: usize, g: Group) -> usize {
        let row = self.row(j);
        let split = row.partition_point(|&c| (c as usize) < self.n1);
        match g {
            Group::G1 => split,
            Group::G2 => row.len() - split,
        }
    }

    pub fn nnz(&self) -> usize {
        self.creditors.len()
    }

    pub fn contains(&self, j: usize, i: usize) -> bool {
        self.row(j).binary_search(&(i as u32)).is_ok()
    }

    /// Number of borrowers of each node.
    pub fn column_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n()];
        for &c in &self.creditors {
            counts[c as usize] += 1;
        }
        counts
    }

    pub fn to_dense(&self) -> Result<Vec<Vec<u8>>> {
        let n = self.n();
        if n > DENSE_LIMIT {
            return Err(Error::DenseTooLarge { n, limit: DENSE_LIMIT });
        }
        let mut dense = vec![vec![0u8; n]; n];
        for (j, row) in dense.iter_mut().enumerate() {
            for &c in self.row(j) {
                row[c as usize] = 1;
            }
        }
        Ok(dense)
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.n()).map(|j| self.row(j).to_vec()).collect()
    }
}

/// One realisation of the network: indicators, big-node fractions and the
/// liability weights derived from them.
#[derive(Clone, Debug)]
pub struct GraphSample {
    adjacency: Adjacency,
    eta_sb: Vec<f64>,
    weights: Weights,
}

/// Serialisable replay form of a [`GraphSample`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n1: usize,
    pub n2: usize,
    pub creditors: Vec<Vec<u32>>,
    pub eta_sb: Vec<f64>,
}

impl GraphSample {
    pub fn new(adjacency: Adjacency, eta_sb: Vec<f64>, params: &ModelParams) -> Result<Self> {
        let weights = build_weights(&adjacency, &eta_sb, params)?;
        Ok(GraphSample { adjacency, eta_sb, weights })
    }

    pub fn n(&self) -> usize {
        self.adjacency.n()
    }

    pub fn n1(&self) -> usize {
        self.adjacency.n1()
    }

    pub fn n2(&self) -> usize {
        self.adjacency.n2()
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    pub fn eta_sb(&self) -> &[f64] {
        &self.eta_sb
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn group_of(&self, i: usize) -> Group {
        self.adjacency.group_of(i)
    }

    /// `(creditor, W_{j,i})` pairs of row `j`.
    pub fn weight_row(&self, j: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.adjacency.row_range(j);
        self.adjacency.creditors[r.clone()]
            .iter()
            .zip(&self.weights.entries[r])
            .map(|(&c, &w)| (c as usize, w))
    }

    /// `sum_i W_{j,i} + W_{j,b}`.
    pub fn row_sum(&self, j: usize) -> f64 {
        self.weights.entries[self.adjacency.row_range(j)].iter().sum::<f64>() + self.weights.big[j]
    }

    /// `out_i = sum_j x_j W_{j,i}`.
    pub fn aggregate_into(&self, x: &[f64], out: &mut [f64]) {
        assert_eq!(x.len(), self.n());
        assert_eq!(out.len(), self.n());
        out.iter_mut().for_each(|o| *o = 0.0);
        for (j, &xj) in x.iter().enumerate() {
            if xj == 0.0 {
                continue;
            }
            let r = self.adjacency.row_range(j);
            for (&c, &w) in self.adjacency.creditors[r.clone()].iter().zip(&self.weights.entries[r]) {
                out[c as usize] += xj * w;
            }
        }
    }

    pub fn aggregate(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n()];
        self.aggregate_into(x, &mut out);
        out
    }

    /// `sum_j W_{j,i} b_j` for per-borrower amounts `b`.
    pub fn column_weight_sums(&self) -> Vec<f64> {
        self.aggregate(&vec![1.0; self.n()])
    }

    /// Dense `n x (n+1)` weights; the last column is the big node.
    pub fn dense_weights(&self) -> Result<Vec<Vec<f64>>> {
        let n = self.n();
        if n > DENSE_LIMIT {
            return Err(Error::DenseTooLarge { n, limit: DENSE_LIMIT });
        }
        let mut dense = vec![vec![0.0; n + 1]; n];
        for (j, row) in dense.iter_mut().enumerate() {
            for (c, w) in self.weight_row(j) {
                row[c] = w;
            }
            row[n] = self.weights.big[j];
        }
        Ok(dense)
    }

    pub fn to_record(&self) -> GraphRecord {
        GraphRecord {
            n1: self.n1(),
            n2: self.n2(),
            creditors: self.adjacency.rows(),
            eta_sb: self.eta_sb.clone(),
        }
    }

    pub fn from_record(record: GraphRecord, params: &ModelParams) -> Result<Self> {
        let n = record.n1 + record.n2;
        if record.creditors.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: record.creditors.len() });
        }
        if record.eta_sb.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: record.eta_sb.len() });
        }
        if record.creditors.iter().flatten().any(|&c| c as usize >= n) {
            return Err(Error::InvalidParams("creditor index out of range".into()));
        }
        let adjacency = Adjacency::from_rows(record.n1, record.creditors);
        GraphSample::new(adjacency, record.eta_sb, params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csr_basics() {
        let a = Adjacency::from_rows(1, vec![vec![2, 1, 1], vec![], vec![0]]);
        assert_eq!(a.n(), 3);
        assert_eq!(a.row(0), &[1, 2]);
        assert_eq!(a.degree(1), 0);
        assert_eq!(a.degree_in(0, Group::G2), 2);
        assert_eq!(a.degree_in(2, Group::G1), 1);
        assert_eq!(a.column_counts(), vec![1, 1, 1]);
        assert!(a.contains(0, 2) && !a.contains(2, 1));
        assert_eq!(a.to_dense().unwrap(), vec![vec![0, 1, 1], vec![0, 0, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn dense_is_refused_when_large() {
        let a = Adjacency::from_rows(0, vec![Vec::new(); DENSE_LIMIT + 1]);
        assert!(matches!(a.to_dense(), Err(Error::DenseTooLarge { .. })));
    }
}
