use std::collections::HashSet;

use super::{check_all_included, DeliveryResult};
use crate::error::{Error, Result};
use crate::metric::MetricInstance;
use crate::model::{Instance, ServiceEvent, ServiceRun, ServiceTour};
use crate::rational::{travel_time, Extended, Rational};
use crate::repairman::{periods_of, Period};
use crate::trimming::TrimmedInstance;
use crate::verify::verify_tour;

/// Edges of the smallest subtree spanning `terminals`, as `(parent, child)`
/// pairs with the tree rooted at `root`.
fn steiner_edges(metric: &MetricInstance, terminals: &HashSet<usize>, root: usize) -> Vec<(usize, usize)> {
    let n = metric.node_count();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &(y, _) in metric.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let total = terminals.len();
    let mut below = vec![0usize; n];
    let mut edges = Vec::new();
    for &x in order.iter().rev() {
        if terminals.contains(&x) {
            below[x] += 1;
        }
        if x != root {
            if below[x] > 0 && below[x] < total {
                edges.push((parent[x], x));
            }
            below[parent[x]] += below[x];
        }
    }
    edges
}

/// Shortest walk on a tree from `u` to `v` that visits every node of `nodes`:
/// twice the spanning subtree weight minus the direct distance.
pub fn single_period_tree_length(metric: &MetricInstance, nodes: &[usize], u: usize, v: usize) -> Result<Rational> {
    if !metric.is_tree() {
        return Err(Error::TreeRequired);
    }
    let terminals: HashSet<usize> = nodes.iter().copied().chain([u, v]).collect();
    let weight: Rational = steiner_edges(metric, &terminals, u).iter().map(|&(a, b)| metric.dist(a, b)).sum();
    Ok(weight + weight - metric.dist(u, v))
}

/// Node sequence of that walk: depth-first over the spanning subtree with
/// children by node id, entering the branch towards `v` last.
pub fn single_period_tree_walk(metric: &MetricInstance, nodes: &[usize], u: usize, v: usize) -> Result<Vec<usize>> {
    if !metric.is_tree() {
        return Err(Error::TreeRequired);
    }
    let terminals: HashSet<usize> = nodes.iter().copied().chain([u, v]).collect();
    let edges = steiner_edges(metric, &terminals, u);
    let n = metric.node_count();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(p, c) in &edges {
        children[p].push(c);
    }
    let on_path: HashSet<usize> = metric.tree_path(u, v)?.into_iter().collect();
    for list in &mut children {
        list.sort_by_key(|&c| (on_path.contains(&c), c));
    }
    let mut walk = Vec::new();
    fn visit(x: usize, children: &[Vec<usize>], on_path: &HashSet<usize>, walk: &mut Vec<usize>) {
        walk.push(x);
        for &c in &children[x] {
            if on_path.contains(&c) {
                visit(c, children, on_path, walk);
            } else {
                visit(c, children, on_path, walk);
                walk.push(x);
            }
        }
    }
    visit(u, &children, &on_path, &mut walk);
    debug_assert_eq!(walk.last(), Some(&v));
    Ok(walk)
}

/// The forward table of one speed test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeedSchedule {
    /// Per period: arrival time at each request node.
    pub arrivals: Vec<Vec<(usize, Extended)>>,
    /// Per period: departure (last service) time at each request node.
    pub departures: Vec<Vec<(usize, Extended)>>,
}

#[derive(Debug, Clone)]
pub struct SpeedTest {
    pub feasible: bool,
    pub schedule: SpeedSchedule,
    pub tour: Option<ServiceTour>,
}

fn period_lengths(metric: &MetricInstance, p: &Period) -> Result<Vec<Vec<Rational>>> {
    p.nodes
        .iter()
        .map(|&u| p.nodes.iter().map(|&v| single_period_tree_length(metric, &p.nodes, u, v)).collect())
        .collect()
}

/// Decides whether a tree instance can be toured at `speed` on its trimmed
/// windows, and builds the tour when it can.
pub fn test_speed(instance: &Instance, trimmed: &TrimmedInstance, speed: Rational) -> Result<SpeedTest> {
    let metric = &instance.metric;
    if !metric.is_tree() {
        return Err(Error::TreeRequired);
    }
    if speed.is_negative() {
        return Err(Error::InvalidParameter(format!("negative speed {speed}")));
    }
    check_all_included(trimmed)?;
    let periods = periods_of(instance, trimmed)?;
    if periods.is_empty() {
        return Ok(SpeedTest {
            feasible: true,
            schedule: SpeedSchedule { arrivals: vec![], departures: vec![] },
            tour: Some(ServiceTour::new(ServiceRun::empty(speed))),
        });
    }

    let mut arrivals: Vec<Vec<(usize, Extended)>> = Vec::new();
    let mut departures: Vec<Vec<(usize, Extended)>> = Vec::new();
    // Back-pointers: entry node per departure, departure node per arrival.
    let mut from_entry: Vec<Vec<usize>> = Vec::new();
    let mut from_exit: Vec<Vec<usize>> = Vec::new();

    let mut arrive: Vec<Extended> = vec![Extended::Finite(periods[0].begin); periods[0].nodes.len()];
    from_exit.push(vec![usize::MAX; periods[0].nodes.len()]);
    for (i, p) in periods.iter().enumerate() {
        let lengths = period_lengths(metric, p)?;
        let mut depart = vec![Extended::Infinite; p.nodes.len()];
        let mut entry = vec![usize::MAX; p.nodes.len()];
        for (vi, dv) in depart.iter_mut().enumerate() {
            for ui in 0..p.nodes.len() {
                let t = arrive[ui] + travel_time(lengths[ui][vi], speed);
                if t < *dv {
                    *dv = t;
                    entry[vi] = ui;
                }
            }
            if *dv >= p.end {
                *dv = Extended::Infinite;
            }
        }
        arrivals.push(p.nodes.iter().copied().zip(arrive.iter().copied()).collect());
        departures.push(p.nodes.iter().copied().zip(depart.iter().copied()).collect());
        from_entry.push(entry);

        if let Some(next) = periods.get(i + 1) {
            let mut nxt = vec![Extended::Infinite; next.nodes.len()];
            let mut exit = vec![usize::MAX; next.nodes.len()];
            for (wi, &w) in next.nodes.iter().enumerate() {
                for (vi, &v) in p.nodes.iter().enumerate() {
                    let t = depart[vi] + travel_time(metric.dist(v, w), speed);
                    if t < nxt[wi] {
                        nxt[wi] = t;
                        exit[wi] = vi;
                    }
                }
                nxt[wi] = nxt[wi].max(Extended::Finite(next.begin));
                if nxt[wi] >= next.end {
                    nxt[wi] = Extended::Infinite;
                }
            }
            arrive = nxt;
            from_exit.push(exit);
        }
    }

    let schedule = SpeedSchedule { arrivals, departures };
    let last = periods.len() - 1;
    let best_exit = schedule.departures[last]
        .iter()
        .enumerate()
        .filter(|(_, (_, d))| d.is_finite())
        .min_by_key(|(_, (_, d))| *d)
        .map(|(vi, _)| vi);
    let Some(mut vi) = best_exit else {
        return Ok(SpeedTest { feasible: false, schedule, tour: None });
    };

    // Walk the back-pointers to pick (entry, exit) per period.
    let mut picks = vec![(0usize, 0usize); periods.len()];
    for i in (0..periods.len()).rev() {
        let ui = from_entry[i][vi];
        picks[i] = (ui, vi);
        if i > 0 {
            vi = from_exit[i][ui];
        }
    }

    let mut events = Vec::new();
    for (i, p) in periods.iter().enumerate() {
        let (ui, vi) = picks[i];
        let start = schedule.arrivals[i][ui].1.expect_finite("arrival on the chosen path");
        let walk = single_period_tree_walk(metric, &p.nodes, p.nodes[ui], p.nodes[vi])?;
        let mut clock = start;
        let mut prev = walk[0];
        let mut served = vec![false; p.nodes.len()];
        for &x in &walk {
            clock += travel_time(metric.dist(prev, x), speed).expect_finite("finite leg");
            prev = x;
            if let Some(l) = p.nodes.iter().position(|&n| n == x) {
                if !served[l] {
                    served[l] = true;
                    events.extend(p.requests[l].iter().map(|&id| ServiceEvent::new(id, clock)));
                }
            }
        }
    }
    let tour = ServiceTour::new(ServiceRun::new(events, speed));
    Ok(SpeedTest { feasible: true, schedule, tour: Some(tour) })
}

/// Binary search between half the graph-chain speed and the chain speed.
///
/// Runs `⌈log₂(1/ε′)⌉` halvings with `ε′ = ε/4` and returns the slowest
/// feasible speed seen together with its tour.
pub fn delivery_tree(instance: &Instance, trimmed: &TrimmedInstance, epsilon: Rational) -> Result<DeliveryResult> {
    if !epsilon.is_positive() {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
    }
    if !instance.metric.is_tree() {
        return Err(Error::TreeRequired);
    }
    let chain = super::graph::delivery_graph(instance, trimmed)?;
    let zero = test_speed(instance, trimmed, Rational::ZERO)?;
    if zero.feasible {
        return finish(instance, trimmed, Rational::ZERO, zero);
    }
    let eps_prime = epsilon / Rational::from(4u32);
    let mut iterations = 0u32;
    while Rational::from_int(1i128 << iterations) * eps_prime < Rational::ONE {
        iterations += 1;
    }

    let mut hi = chain.tour.speed();
    let mut hi_test = test_speed(instance, trimmed, hi)?;
    if !hi_test.feasible {
        return Err(Error::Infeasible(format!("bracket speed {hi} rejected by the speed test")));
    }
    let mut lo = chain.speed / Rational::from(2u32);
    for _ in 0..iterations {
        let mid = (lo + hi) / Rational::from(2u32);
        let t = test_speed(instance, trimmed, mid)?;
        if t.feasible {
            hi = mid;
            hi_test = t;
        } else {
            lo = mid;
        }
    }
    finish(instance, trimmed, hi, hi_test)
}

fn finish(instance: &Instance, trimmed: &TrimmedInstance, speed: Rational, test: SpeedTest) -> Result<DeliveryResult> {
    let tour = test.tour.expect("feasible test carries a tour");
    let report = verify_tour(instance, &tour, Some(trimmed))?;
    if !report.feasible {
        return Err(Error::Infeasible(report.to_string()));
    }
    Ok(DeliveryResult { tour, speed })
}
