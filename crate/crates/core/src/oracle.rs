//! Exhaustive solvers for small instances, used as ground truth.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metric::MetricInstance;
use crate::model::{Instance, RequestId, ServiceEvent, ServiceRun};
use crate::rational::{Extended, Rational};
use crate::repairman::ProfitCostProfile;
use crate::trimming::TrimmedInstance;
use crate::verify::{fixed_order_min_speed, Stop};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_requests: usize,
    pub max_nodes: usize,
    pub time_limit: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_requests: 8, max_nodes: 10, time_limit: Some(Duration::from_secs(60)) }
    }
}

impl OracleBudget {
    pub fn with_max_requests(self, max_requests: usize) -> Self {
        OracleBudget { max_requests, ..self }
    }

    pub fn with_max_nodes(self, max_nodes: usize) -> Self {
        OracleBudget { max_nodes, ..self }
    }

    fn check(&self, requests: usize, nodes: usize) -> Result<()> {
        if requests > self.max_requests {
            return Err(Error::BudgetExceeded(format!("{requests} requests (limit {})", self.max_requests)));
        }
        if nodes > self.max_nodes {
            return Err(Error::BudgetExceeded(format!("{nodes} nodes (limit {})", self.max_nodes)));
        }
        Ok(())
    }

    fn clock(&self) -> Deadline {
        Deadline { start: Instant::now(), limit: self.time_limit }
    }
}

struct Deadline {
    start: Instant,
    limit: Option<Duration>,
}

impl Deadline {
    fn check(&self) -> Result<()> {
        match self.limit {
            Some(limit) if self.start.elapsed() > limit => {
                Err(Error::BudgetExceeded(format!("time limit of {limit:?} reached")))
            }
            _ => Ok(()),
        }
    }
}

/// Hard cap on the subset table, whatever the budget says.
const MAX_TABLE_REQUESTS: usize = 20;

#[derive(Debug, Clone, Copy)]
struct Job {
    id: RequestId,
    node: usize,
    profit: u64,
    start: Rational,
    end: Rational,
}

fn jobs(instance: &Instance, trimmed: Option<&TrimmedInstance>) -> Vec<Job> {
    instance
        .requests
        .iter()
        .filter_map(|r| {
            let (start, end) = match trimmed {
                Some(t) => t.target(r.id)?,
                None => (r.window_start, r.window_end()),
            };
            Some(Job { id: r.id, node: r.node, profit: r.profit, start, end })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairmanOptimum {
    pub profit: u64,
    pub run: ServiceRun,
}

/// Maximum-profit unit-speed run, exact.
///
/// For a fixed visiting order, serving each request as early as possible
/// (waiting for its window when early) is optimal, so the search keeps only
/// the earliest finish per (served set, last request).
pub fn brute_repairman(
    instance: &Instance,
    trimmed: Option<&TrimmedInstance>,
    budget: &OracleBudget,
) -> Result<RepairmanOptimum> {
    let jobs = jobs(instance, trimmed);
    let n = jobs.len();
    budget.check(n, instance.metric.node_count())?;
    if n > MAX_TABLE_REQUESTS {
        return Err(Error::BudgetExceeded(format!("{n} requests exceed the table cap {MAX_TABLE_REQUESTS}")));
    }
    let clock = budget.clock();
    let full = 1usize << n;
    let mut time: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; full];
    let mut parent: Vec<Vec<Option<usize>>> = vec![vec![None; n]; full];
    for (i, j) in jobs.iter().enumerate() {
        time[1 << i][i] = Some(j.start);
    }
    let profit_of = |mask: usize| -> u64 { (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| jobs[i].profit).sum() };

    let mut best: (u64, Option<(usize, usize)>, Rational) = (0, None, Rational::ZERO);
    for mask in 1..full {
        clock.check()?;
        let profit = profit_of(mask);
        for last in 0..n {
            let Some(t) = time[mask][last] else { continue };
            if profit > best.0 || (profit == best.0 && best.1.is_some() && t < best.2) {
                best = (profit, Some((mask, last)), t);
            }
            for next in 0..n {
                if mask >> next & 1 == 1 {
                    continue;
                }
                let j = &jobs[next];
                let arrive = (t + instance.dist(jobs[last].node, j.node)).max(j.start);
                if arrive >= j.end {
                    continue;
                }
                let slot = &mut time[mask | 1 << next][next];
                if slot.is_none_or(|cur| arrive < cur) {
                    *slot = Some(arrive);
                    parent[mask | 1 << next][next] = Some(last);
                }
            }
        }
    }

    let mut events = Vec::new();
    if let Some((mut mask, mut last)) = best.1 {
        loop {
            events.push(ServiceEvent::new(jobs[last].id, time[mask][last].expect("reached state")));
            match parent[mask][last] {
                Some(prev) => {
                    mask &= !(1 << last);
                    last = prev;
                }
                None => break,
            }
        }
        events.reverse();
    }
    Ok(RepairmanOptimum { profit: best.0, run: ServiceRun::new(events, Rational::ONE) })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeliverymanOptimum {
    /// Infimum over visiting orders of the least speed for that order.
    pub speed: Extended,
    pub order: Vec<RequestId>,
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("successor exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Least speed at which every request can be serviced, minimized over all
/// visiting orders. Ties go to the lexicographically first order.
pub fn brute_deliveryman(
    instance: &Instance,
    trimmed: Option<&TrimmedInstance>,
    budget: &OracleBudget,
) -> Result<DeliverymanOptimum> {
    let jobs = jobs(instance, trimmed);
    let n = jobs.len();
    budget.check(n, instance.metric.node_count())?;
    if n == 0 {
        return Ok(DeliverymanOptimum { speed: Extended::Finite(Rational::ZERO), order: vec![] });
    }
    let clock = budget.clock();
    let stops: Vec<Stop> = jobs.iter().map(|j| Stop::new(j.node, j.start, j.end)).collect();
    let branches: Vec<Result<(Extended, Vec<usize>)>> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut rest: Vec<usize> = (0..n).filter(|&i| i != first).collect();
            let mut best: Option<(Extended, Vec<usize>)> = None;
            let mut seq = Vec::with_capacity(n);
            let mut count = 0u32;
            loop {
                count += 1;
                if count.is_multiple_of(1024) {
                    clock.check()?;
                }
                seq.clear();
                seq.push(stops[first]);
                seq.extend(rest.iter().map(|&i| stops[i]));
                let s = fixed_order_min_speed(&instance.metric, &seq);
                if best.as_ref().is_none_or(|(b, _)| s < *b) {
                    let mut order = vec![first];
                    order.extend_from_slice(&rest);
                    best = Some((s, order));
                }
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            Ok(best.expect("at least one order"))
        })
        .collect();
    let mut best: Option<(Extended, Vec<usize>)> = None;
    for b in branches {
        let (s, order) = b?;
        if best.as_ref().is_none_or(|(bs, _)| s < *bs) {
            best = Some((s, order));
        }
    }
    let (speed, order) = best.expect("n > 0");
    Ok(DeliverymanOptimum { speed, order: order.into_iter().map(|i| jobs[i].id).collect() })
}

/// Node count accepted by [`brute_path_profile`].
pub const PATH_PROFILE_MAX_NODES: usize = 9;

/// Least cost of a simple `s`–`t` path in the metric closure collecting each
/// profit level, by enumerating every path through profitable nodes.
pub fn brute_path_profile(metric: &MetricInstance, profits: &[u64], s: usize, t: usize) -> Result<ProfitCostProfile> {
    let n = metric.node_count();
    if n > PATH_PROFILE_MAX_NODES {
        return Err(Error::BudgetExceeded(format!("{n} nodes (limit {PATH_PROFILE_MAX_NODES})")));
    }
    if profits.len() != n {
        return Err(Error::InvalidParameter(format!("{} profits for {n} nodes", profits.len())));
    }
    for x in [s, t] {
        if x >= n {
            return Err(Error::NodeOutOfRange { node: x, node_count: n });
        }
    }
    let total: u64 = profits.iter().sum();
    let base = profits[s] + if t != s { profits[t] } else { 0 };
    let inner: Vec<usize> = (0..n).filter(|&v| v != s && v != t && profits[v] > 0).collect();
    let mut exact: Vec<Option<Rational>> = vec![None; total as usize + 1];

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        metric: &MetricInstance,
        profits: &[u64],
        inner: &[usize],
        used: &mut Vec<bool>,
        at: usize,
        cost: Rational,
        collected: u64,
        t: usize,
        exact: &mut [Option<Rational>],
    ) {
        let finish = cost + metric.dist(at, t);
        let slot = &mut exact[collected as usize];
        if slot.is_none_or(|c| finish < c) {
            *slot = Some(finish);
        }
        for k in 0..inner.len() {
            if used[k] {
                continue;
            }
            used[k] = true;
            let v = inner[k];
            dfs(metric, profits, inner, used, v, cost + metric.dist(at, v), collected + profits[v], t, exact);
            used[k] = false;
        }
    }
    let mut used = vec![false; inner.len()];
    dfs(metric, profits, &inner, &mut used, s, Rational::ZERO, base, t, &mut exact);

    let mut costs = vec![Extended::Infinite; exact.len()];
    let mut running = Extended::Infinite;
    for p in (0..exact.len()).rev() {
        if let Some(c) = exact[p] {
            running = running.min(Extended::Finite(c));
        }
        costs[p] = running;
    }
    Ok(ProfitCostProfile::new(costs))
}
