use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::metric::{build_metric, Edge, MetricKind};
use crate::model::{Instance, ServiceRequest};
use crate::rational::Rational;

/// Shape of a random instance. Weights are `k / weight_denominator` for
/// `k` in `1..=weight_steps`; window lengths and starts lie on a grid of
/// step `1/time_denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomParams {
    pub nodes: usize,
    pub kind: MetricKind,
    pub requests: usize,
    /// Lengths are drawn from `[min_length, max_length)`, or equal
    /// `min_length` when the two coincide.
    pub min_length: Rational,
    pub max_length: Rational,
    /// Window starts are drawn from `[0, horizon)`.
    pub horizon: Rational,
    pub weight_denominator: i128,
    pub weight_steps: i128,
    pub time_denominator: i128,
    /// Chance in percent of each extra edge in graph mode.
    pub extra_edge_percent: u32,
    pub max_profit: u64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            nodes: 6,
            kind: MetricKind::Tree,
            requests: 6,
            min_length: Rational::ONE,
            max_length: Rational::ONE,
            horizon: Rational::from_int(3),
            weight_denominator: 8,
            weight_steps: 12,
            time_denominator: 20,
            extra_edge_percent: 30,
            max_profit: 1,
        }
    }
}

impl RandomParams {
    pub fn unit(kind: MetricKind, nodes: usize, requests: usize) -> Self {
        RandomParams { nodes, kind, requests, ..Default::default() }
    }

    pub fn with_lengths(self, min_length: Rational, max_length: Rational) -> Self {
        RandomParams { min_length, max_length, ..self }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.to_string()));
        if self.nodes == 0 {
            return bad("need at least one node");
        }
        if self.min_length < Rational::ONE || self.max_length < self.min_length {
            return bad("length range must satisfy 1 <= min <= max");
        }
        if !self.horizon.is_positive() {
            return bad("horizon must be positive");
        }
        if self.weight_denominator <= 0 || self.weight_steps <= 0 || self.time_denominator <= 0 {
            return bad("denominators and steps must be positive");
        }
        if self.max_profit == 0 {
            return bad("max profit must be positive");
        }
        if self.extra_edge_percent > 100 {
            return bad("extra edge chance is a percentage");
        }
        Ok(())
    }
}

fn grid_below(rng: &mut ChaCha8Rng, span: Rational, denom: i128) -> Rational {
    let steps = (span * Rational::from_int(denom)).ceil().max(1);
    Rational::new(rng.gen_range(0..steps), denom)
}

/// Deterministic in `seed`.
pub fn generate_random(seed: u64, params: &RandomParams) -> Result<Instance> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weight =
        |rng: &mut ChaCha8Rng| Rational::new(rng.gen_range(1..=params.weight_steps), params.weight_denominator);
    let mut edges = Vec::new();
    for v in 1..params.nodes {
        let u = rng.gen_range(0..v);
        edges.push(Edge::new(u, v, weight(&mut rng)));
    }
    if params.kind == MetricKind::Graph {
        for u in 0..params.nodes {
            for v in u + 1..params.nodes {
                if edges.iter().any(|e| (e.u, e.v) == (u, v) || (e.u, e.v) == (v, u)) {
                    continue;
                }
                if rng.gen_range(0..100) < params.extra_edge_percent {
                    edges.push(Edge::new(u, v, weight(&mut rng)));
                }
            }
        }
    }
    let metric = build_metric(params.nodes, params.kind, edges)?;
    let spread = params.max_length - params.min_length;
    let requests = (0..params.requests)
        .map(|i| {
            let node = rng.gen_range(0..params.nodes);
            let start = grid_below(&mut rng, params.horizon, params.time_denominator);
            let length = if spread.is_zero() {
                params.min_length
            } else {
                params.min_length + grid_below(&mut rng, spread, params.time_denominator)
            };
            let profit = rng.gen_range(1..=params.max_profit);
            ServiceRequest::new(i as u32, node, start, length).with_profit(profit)
        })
        .collect();
    Instance::new(metric, requests)
}

/// Tree whose requests can all be serviced exactly when `values` splits
/// into two halves of equal sum.
///
/// With `K` half the sum: a hub `u` (node 0), one leaf per value at that
/// distance, a start leaf `s` and end leaf `t` at `6K`, and a midpoint leaf
/// `v` at `K`. All windows have length `6K`: `s` from 0, the hub and value
/// leaves from `6K`, `v` from `3K + 1/2` and `9K`, `t` from `12K + 1/2`.
/// The half-unit shifts stand in for closed right ends; with integer
/// distances any schedule that is late by less than one unit is on time.
pub fn generate_partition(values: &[u64]) -> Result<Instance> {
    if values.is_empty() || values.contains(&0) {
        return Err(Error::InvalidParameter("values must be positive and non-empty".into()));
    }
    let sum: u64 = values.iter().sum();
    if sum % 2 == 1 {
        return Err(Error::InvalidParameter(format!("sum {sum} is odd")));
    }
    let k = Rational::from(sum / 2);
    let six_k = Rational::from_int(6) * k;
    let n = values.len();
    let (hub, s, t, v) = (0, n + 1, n + 2, n + 3);
    let mut edges: Vec<Edge> =
        values.iter().enumerate().map(|(i, &x)| Edge::new(hub, i + 1, Rational::from(x))).collect();
    edges.push(Edge::new(hub, s, six_k));
    edges.push(Edge::new(hub, t, six_k));
    edges.push(Edge::new(hub, v, k));
    let metric = build_metric(n + 4, MetricKind::Tree, edges)?;

    let half = Rational::HALF;
    let mut windows = vec![(s, Rational::ZERO), (hub, six_k)];
    windows.extend((1..=n).map(|i| (i, six_k)));
    windows.push((v, Rational::from_int(3) * k + half));
    windows.push((v, Rational::from_int(9) * k));
    windows.push((t, Rational::from_int(12) * k + half));
    let requests = windows
        .into_iter()
        .enumerate()
        .map(|(id, (node, start))| ServiceRequest::new(id as u32, node, start, six_k))
        .collect();
    Instance::new(metric, requests)
}

/// Direct subset-sum check for an equal split.
pub fn has_equal_partition(values: &[u64]) -> bool {
    let sum: u64 = values.iter().sum();
    if sum % 2 == 1 {
        return false;
    }
    let half = (sum / 2) as usize;
    let mut reach = vec![false; half + 1];
    reach[0] = true;
    for &x in values {
        let x = x as usize;
        for s in (x..=half).rev() {
            reach[s] |= reach[s - x];
        }
    }
    reach[half]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let p = RandomParams::default();
        assert_eq!(generate_random(7, &p).unwrap(), generate_random(7, &p).unwrap());
        let empty = RandomParams { requests: 0, ..p };
        assert!(generate_random(1, &empty).unwrap().requests.is_empty());
    }

    #[test]
    fn graph_and_lengths() {
        let p = RandomParams::unit(MetricKind::Graph, 7, 10).with_lengths(Rational::ONE, Rational::from_int(2));
        for seed in 0..20 {
            let inst = generate_random(seed, &p).unwrap();
            assert!(inst
                .requests
                .iter()
                .all(|r| r.window_length >= Rational::ONE && r.window_length < Rational::from_int(2)));
        }
        assert!(generate_random(0, &RandomParams { min_length: Rational::HALF, ..p }).is_err());
    }

    #[test]
    fn partition_shape() {
        let inst = generate_partition(&[1, 2, 3]).unwrap();
        assert_eq!(inst.metric.node_count(), 7);
        assert_eq!(inst.requests.len(), 8);
        assert!(inst.requests.iter().all(|r| r.window_length == Rational::from_int(18)));
        assert!(generate_partition(&[1, 2]).is_err());
    }

    #[test]
    fn subset_sum() {
        assert!(has_equal_partition(&[1, 2, 3]));
        assert!(!has_equal_partition(&[1, 1, 4]));
        assert!(!has_equal_partition(&[1, 2]));
        assert!(has_equal_partition(&[5, 5]));
    }
}
