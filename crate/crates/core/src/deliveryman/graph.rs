use std::collections::HashSet;

use super::{check_all_included, DeliveryResult};
use crate::error::{Error, Result};
use crate::metric::MetricInstance;
use crate::model::{Instance, ServiceEvent, ServiceRun, ServiceTour};
use crate::rational::{Extended, Rational};
use crate::repairman::periods_of;
use crate::trimming::TrimmedInstance;
use crate::verify::{fixed_order_min_speed, simulate_earliest, verify_tour, Stop};

/// One period of the chain: its spanning tree, entry and exit nodes, the
/// doubled-tree walk between them, and the service order taken from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPeriod {
    pub index: i64,
    pub begin: Rational,
    pub end: Rational,
    pub nodes: Vec<usize>,
    pub mst: Vec<(usize, usize)>,
    pub entry: usize,
    pub exit: usize,
    pub walk: Vec<usize>,
    /// Distinct request nodes in service order, `entry` first and `exit` last.
    pub service: Vec<usize>,
    pub requests: Vec<Vec<crate::model::RequestId>>,
}

/// Per-period spanning trees joined by their closest node pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TourChain {
    pub periods: Vec<ChainPeriod>,
    /// `(exit of period i, entry of period i + 1)`.
    pub connectors: Vec<(usize, usize)>,
}

fn prim(metric: &MetricInstance, nodes: &[usize]) -> Vec<(usize, usize)> {
    let mut in_tree = vec![false; nodes.len()];
    let mut edges = Vec::new();
    if nodes.is_empty() {
        return edges;
    }
    in_tree[0] = true;
    for _ in 1..nodes.len() {
        let mut best: Option<(Rational, usize, usize)> = None;
        for (a, &na) in nodes.iter().enumerate() {
            if !in_tree[a] {
                continue;
            }
            for (b, &nb) in nodes.iter().enumerate() {
                if in_tree[b] {
                    continue;
                }
                let cand = (metric.dist(na, nb), na.min(nb), na.max(nb));
                if best.is_none_or(|cur| cand < cur) {
                    best = Some(cand);
                }
                let _ = (a, b);
            }
        }
        let (_, x, y) = best.expect("a crossing edge exists");
        let (ix, iy) = (nodes.iter().position(|&n| n == x).unwrap(), nodes.iter().position(|&n| n == y).unwrap());
        let (inside, outside) = if in_tree[ix] { (x, y) } else { (y, x) };
        in_tree[ix] = true;
        in_tree[iy] = true;
        edges.push((inside, outside));
    }
    edges
}

fn adjacency(nodes: &[usize], edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); nodes.len()];
    let idx = |n: usize| nodes.iter().position(|&x| x == n).expect("edge endpoint is a period node");
    for &(a, b) in edges {
        adj[idx(a)].push(idx(b));
        adj[idx(b)].push(idx(a));
    }
    for list in &mut adj {
        list.sort_by_key(|&i| nodes[i]);
    }
    adj
}

/// Local-index path between `a` and `b` in the tree `adj`.
fn tree_path(adj: &[Vec<usize>], a: usize, b: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; adj.len()];
    parent[a] = a;
    let mut stack = vec![a];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

fn path_weight(metric: &MetricInstance, nodes: &[usize], path: &[usize]) -> Rational {
    path.windows(2).map(|w| metric.dist(nodes[w[0]], nodes[w[1]])).sum()
}

/// Depth-first walk of the doubled tree from `u` that ends at `v`.
fn doubled_walk(nodes: &[usize], adj: &[Vec<usize>], u: usize, v: usize) -> Vec<usize> {
    let on_path: HashSet<usize> = tree_path(adj, u, v).into_iter().collect();
    let mut walk = Vec::new();
    fn visit(x: usize, from: usize, adj: &[Vec<usize>], on_path: &HashSet<usize>, walk: &mut Vec<usize>) {
        walk.push(x);
        let mut kids: Vec<usize> = adj[x].iter().copied().filter(|&c| c != from).collect();
        kids.sort_by_key(|&c| on_path.contains(&c));
        for c in kids {
            visit(c, x, adj, on_path, walk);
            if !on_path.contains(&c) {
                walk.push(x);
            }
        }
    }
    visit(u, usize::MAX, adj, &on_path, &mut walk);
    walk.into_iter().map(|i| nodes[i]).collect()
}

impl TourChain {
    pub fn build(instance: &Instance, trimmed: &TrimmedInstance) -> Result<TourChain> {
        check_all_included(trimmed)?;
        let metric = &instance.metric;
        let raw = periods_of(instance, trimmed)?;
        let m = raw.len();

        let mut connectors = Vec::with_capacity(m.saturating_sub(1));
        for w in raw.windows(2) {
            let mut best: Option<(Rational, usize, usize)> = None;
            for &a in &w[0].nodes {
                for &b in &w[1].nodes {
                    let cand = (metric.dist(a, b), a, b);
                    if best.is_none_or(|cur| cand < cur) {
                        best = Some(cand);
                    }
                }
            }
            let (_, a, b) = best.expect("periods are non-empty");
            connectors.push((a, b));
        }

        let mut periods = Vec::with_capacity(m);
        for (i, p) in raw.into_iter().enumerate() {
            let mst = prim(metric, &p.nodes);
            let adj = adjacency(&p.nodes, &mst);
            let local = |n: usize| p.nodes.iter().position(|&x| x == n).unwrap();
            let fixed_entry = (i > 0).then(|| local(connectors[i - 1].1));
            let fixed_exit = (i + 1 < m).then(|| local(connectors[i].0));
            let entries: Vec<usize> = fixed_entry.map_or_else(|| (0..p.nodes.len()).collect(), |e| vec![e]);
            let exits: Vec<usize> = fixed_exit.map_or_else(|| (0..p.nodes.len()).collect(), |e| vec![e]);
            // Free ends take the farthest tree node, which makes the walk shortest.
            let mut best: Option<(Rational, usize, usize)> = None;
            for &a in &entries {
                for &b in &exits {
                    let w = path_weight(metric, &p.nodes, &tree_path(&adj, a, b));
                    if best.is_none_or(|(bw, _, _)| w > bw) {
                        best = Some((w, a, b));
                    }
                }
            }
            let (_, u, v) = best.expect("period has a node");
            let walk = doubled_walk(&p.nodes, &adj, u, v);
            let mut service: Vec<usize> = Vec::with_capacity(p.nodes.len());
            for &n in &walk {
                if !service.contains(&n) && (n != p.nodes[v] || u == v) {
                    service.push(n);
                }
            }
            if u != v {
                service.push(p.nodes[v]);
            }
            periods.push(ChainPeriod {
                index: p.index,
                begin: p.begin,
                end: p.end,
                mst,
                entry: p.nodes[u],
                exit: p.nodes[v],
                walk,
                service,
                requests: p.requests.clone(),
                nodes: p.nodes,
            });
        }
        Ok(TourChain { periods, connectors })
    }

    /// Nodes in service order across all periods, tagged with the period position.
    pub fn service_nodes(&self) -> Vec<(usize, usize)> {
        self.periods.iter().enumerate().flat_map(|(i, p)| p.service.iter().map(move |&n| (i, n))).collect()
    }

    /// Cost along the service order from the first node of period `i` to
    /// the last node of period `j`.
    pub fn cost_between(&self, metric: &MetricInstance, i: usize, j: usize) -> Rational {
        let seq = self.service_nodes();
        let first = seq.iter().position(|&(p, _)| p == i).expect("period exists");
        let last = seq.iter().rposition(|&(p, _)| p == j).expect("period exists");
        seq[first..=last].windows(2).map(|w| metric.dist(w[0].1, w[1].1)).sum()
    }

    /// `c(u_i, v_j) / (end(S_j) − begin(S_i))` for every `i ≤ j`.
    pub fn candidate_speeds(&self, metric: &MetricInstance) -> Vec<((usize, usize), Rational)> {
        let mut out = Vec::new();
        for i in 0..self.periods.len() {
            for j in i..self.periods.len() {
                let span = self.periods[j].end - self.periods[i].begin;
                out.push(((i, j), self.cost_between(metric, i, j) / span));
            }
        }
        out
    }

    /// The largest candidate: the least speed at which the chain order works
    /// (not attained when positive).
    pub fn closed_form_speed(&self, metric: &MetricInstance) -> Rational {
        self.candidate_speeds(metric).into_iter().map(|(_, s)| s).max().unwrap_or(Rational::ZERO)
    }

    /// One stop per request, in chain order.
    pub fn stops(&self, instance: &Instance) -> Vec<(crate::model::RequestId, Stop)> {
        let mut out = Vec::new();
        for p in &self.periods {
            for &n in &p.service {
                let l = p.nodes.iter().position(|&x| x == n).unwrap();
                for &id in &p.requests[l] {
                    let _ = instance;
                    out.push((id, Stop::new(n, p.begin, p.end)));
                }
            }
        }
        out
    }
}

/// Chains per-period spanning trees into one fixed order and returns the
/// least speed for that order. The returned tour runs at that speed when it
/// is attainable and at `speed · (1 + 10⁻¹²)` otherwise.
pub fn delivery_graph(instance: &Instance, trimmed: &TrimmedInstance) -> Result<DeliveryResult> {
    let chain = TourChain::build(instance, trimmed)?;
    let metric = &instance.metric;
    let speed = chain.closed_form_speed(metric);
    let stops = chain.stops(instance);
    let plain: Vec<Stop> = stops.iter().map(|(_, s)| *s).collect();
    debug_assert_eq!(fixed_order_min_speed(metric, &plain), Extended::Finite(speed));

    let nudge = Rational::ONE + Rational::new(1, 1_000_000_000_000);
    let (run_speed, times) = match simulate_earliest(metric, &plain, speed) {
        Some(times) => (speed, times),
        None => {
            let faster = speed * nudge;
            let times = simulate_earliest(metric, &plain, faster)
                .ok_or_else(|| Error::Infeasible(format!("chain order fails above its infimum {speed}")))?;
            (faster, times)
        }
    };
    let events = stops.iter().zip(times).map(|((id, _), t)| ServiceEvent::new(*id, t)).collect();
    let tour = ServiceTour::new(ServiceRun::new(events, run_speed));
    let report = verify_tour(instance, &tour, Some(trimmed))?;
    if !report.feasible {
        return Err(Error::Infeasible(report.to_string()));
    }
    Ok(DeliveryResult { tour, speed })
}
