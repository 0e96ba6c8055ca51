//! Source-sink k-path: the cheapest simple path between two nodes of the
//! metric closure that collects a given profit.

use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::metric::MetricInstance;
use crate::rational::Rational;

pub const DEFAULT_EXACT_CAP: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathAnswer {
    /// Metric node ids, from `s` to `t`.
    pub nodes: Vec<usize>,
    pub cost: Rational,
    pub profit: u64,
}

/// Held-Karp tables from one start node.
#[derive(Debug)]
struct StartTable {
    /// `cost[mask * m + j]`: cheapest path from the start through `mask` ending at `j`.
    cost: Vec<Option<Rational>>,
    parent: Vec<u8>,
    /// `best[j][k]`: cheapest `(cost, mask)` ending at `j` with profit at least `k`.
    best: Vec<Vec<Option<(Rational, usize)>>>,
}

/// Profit-weighted nodes of a metric with lazily built Held-Karp tables.
#[derive(Debug)]
pub struct PathContext<'a> {
    metric: &'a MetricInstance,
    nodes: Vec<usize>,
    profits: Vec<u64>,
    total: u64,
    tables: Vec<OnceLock<StartTable>>,
}

impl<'a> PathContext<'a> {
    /// `weighted` lists `(node, profit)`; repeated nodes have their profits summed.
    pub fn new(metric: &'a MetricInstance, weighted: &[(usize, u64)], cap: usize) -> Result<PathContext<'a>> {
        let mut nodes: Vec<usize> = Vec::new();
        let mut profits: Vec<u64> = Vec::new();
        for &(node, profit) in weighted {
            if node >= metric.node_count() {
                return Err(Error::NodeOutOfRange { node, node_count: metric.node_count() });
            }
            match nodes.iter().position(|&n| n == node) {
                Some(i) => profits[i] += profit,
                None => {
                    nodes.push(node);
                    profits.push(profit);
                }
            }
        }
        if nodes.len() > cap {
            return Err(Error::BudgetExceeded(format!("{} path nodes exceed the exact cap {cap}", nodes.len())));
        }
        let total = profits.iter().sum();
        let tables = (0..nodes.len()).map(|_| OnceLock::new()).collect();
        Ok(PathContext { metric, nodes, profits, total, tables })
    }

    pub fn metric(&self) -> &MetricInstance {
        self.metric
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn total_profit(&self) -> u64 {
        self.total
    }

    pub fn index_of(&self, node: usize) -> Option<usize> {
        self.nodes.iter().position(|&n| n == node)
    }

    /// Profit of the distinct weighted nodes on `path`.
    pub fn profit_of(&self, path: &[usize]) -> u64 {
        let mut seen = vec![false; self.nodes.len()];
        let mut sum = 0;
        for &n in path {
            if let Some(i) = self.index_of(n) {
                if !seen[i] {
                    seen[i] = true;
                    sum += self.profits[i];
                }
            }
        }
        sum
    }

    fn mask_profit(&self, mask: usize) -> u64 {
        (0..self.nodes.len()).filter(|j| mask & (1 << j) != 0).map(|j| self.profits[j]).sum()
    }

    fn table(&self, start: usize) -> &StartTable {
        self.tables[start].get_or_init(|| self.build(start))
    }

    fn build(&self, start: usize) -> StartTable {
        let m = self.nodes.len();
        let full = 1usize << m;
        let mut cost: Vec<Option<Rational>> = vec![None; full * m];
        let mut parent = vec![u8::MAX; full * m];
        cost[(1 << start) * m + start] = Some(Rational::ZERO);
        for mask in 0..full {
            if mask & (1 << start) == 0 {
                continue;
            }
            for j in 0..m {
                let Some(c) = cost[mask * m + j] else {
                    continue;
                };
                for l in 0..m {
                    if mask & (1 << l) != 0 {
                        continue;
                    }
                    let next = mask | (1 << l);
                    let nc = c + self.metric.dist(self.nodes[j], self.nodes[l]);
                    let slot = &mut cost[next * m + l];
                    if slot.is_none_or(|cur| nc < cur) {
                        *slot = Some(nc);
                        parent[next * m + l] = j as u8;
                    }
                }
            }
        }
        let levels = self.total as usize + 1;
        let mut best: Vec<Vec<Option<(Rational, usize)>>> = vec![vec![None; levels]; m];
        for mask in 0..full {
            let p = self.mask_profit(mask) as usize;
            for j in 0..m {
                if let Some(c) = cost[mask * m + j] {
                    let slot = &mut best[j][p];
                    if slot.is_none_or(|(cur, _)| c < cur) {
                        *slot = Some((c, mask));
                    }
                }
            }
        }
        for row in &mut best {
            for k in (0..levels.saturating_sub(1)).rev() {
                if let Some((c, mask)) = row[k + 1] {
                    if row[k].is_none_or(|(cur, _)| c < cur) {
                        row[k] = Some((c, mask));
                    }
                }
            }
        }
        StartTable { cost, parent, best }
    }

    /// Exact answer between context indices `s` and `t` for profit at least `k`.
    fn exact(&self, s: usize, t: usize, k: u64) -> Option<PathAnswer> {
        let table = self.table(s);
        let (cost, mask) = (*table.best[t].get(k as usize)?)?;
        let m = self.nodes.len();
        let mut seq = vec![t];
        let (mut mask, mut cur) = (mask, t);
        while cur != s || mask != 1 << s {
            let prev = table.parent[mask * m + cur] as usize;
            mask &= !(1 << cur);
            cur = prev;
            seq.push(cur);
        }
        debug_assert_eq!(table.cost[(1 << s) * m + s], Some(Rational::ZERO));
        seq.reverse();
        let nodes: Vec<usize> = seq.into_iter().map(|i| self.nodes[i]).collect();
        let profit = self.profit_of(&nodes);
        Some(PathAnswer { nodes, cost, profit })
    }
}

/// A k-path provider with a declared approximation factor.
///
/// Answers must start at `s`, end at `t`, and report the true cost and
/// profit of the returned node sequence.
pub trait PathSolver: Sync {
    fn gamma(&self) -> Rational;
    fn solve(&self, ctx: &PathContext<'_>, s: usize, t: usize, k: u64) -> Option<PathAnswer>;
    fn name(&self) -> &'static str;
}

/// Exact subset dynamic program.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactPathSolver;

impl PathSolver for ExactPathSolver {
    fn gamma(&self) -> Rational {
        Rational::ONE
    }

    fn solve(&self, ctx: &PathContext<'_>, s: usize, t: usize, k: u64) -> Option<PathAnswer> {
        ctx.exact(ctx.index_of(s)?, ctx.index_of(t)?, k)
    }

    fn name(&self) -> &'static str {
        "exact"
    }
}

/// Deliberately weak solver: answers a request for `k` with the exact path
/// for a pseudo-random target in `[⌈k/2⌉, k]`. Collects at least half the
/// requested profit at no more than the optimal cost.
#[derive(Debug, Clone, Copy)]
pub struct HalvingPathSolver {
    pub seed: u64,
}

impl PathSolver for HalvingPathSolver {
    fn gamma(&self) -> Rational {
        Rational::from(2u32)
    }

    fn solve(&self, ctx: &PathContext<'_>, s: usize, t: usize, k: u64) -> Option<PathAnswer> {
        let mut hasher = std::collections::hash_map::DefaultHasher::new();
        (self.seed, s, t, k).hash(&mut hasher);
        let mut rng = ChaCha8Rng::seed_from_u64(hasher.finish());
        let low = k.div_ceil(2);
        let target = if low >= k { k } else { rng.gen_range(low..=k) };
        ExactPathSolver.solve(ctx, s, t, target)
    }

    fn name(&self) -> &'static str {
        "halving"
    }
}

/// Cheapest simple `s`–`t` path collecting profit at least `k`.
///
/// `Ok(None)` means no path reaches `k`. `s` and `t` are added with profit 0
/// when absent from `weighted`.
pub fn kssp_exact(
    metric: &MetricInstance,
    weighted: &[(usize, u64)],
    s: usize,
    t: usize,
    k: u64,
) -> Result<Option<PathAnswer>> {
    let mut all = weighted.to_vec();
    all.push((s, 0));
    all.push((t, 0));
    let ctx = PathContext::new(metric, &all, DEFAULT_EXACT_CAP)?;
    Ok(ExactPathSolver.solve(&ctx, s, t, k))
}

/// Tries every pair `(u, v)` of weighted nodes as the ends of an inner path
/// for profit `⌈k/β⌉`, and keeps the cheapest `s → u ⇝ v → t`.
pub fn reduced_path(
    ctx: &PathContext<'_>,
    s: usize,
    t: usize,
    k: u64,
    solver: &dyn PathSolver,
    beta: Rational,
) -> Option<PathAnswer> {
    let metric = ctx.metric();
    let target = (Rational::from(k) / beta).ceil().max(0) as u64;
    let mut best: Option<PathAnswer> = None;
    let mut pairs: Vec<(usize, usize)> = vec![(s, t)];
    for &u in ctx.nodes() {
        for &v in ctx.nodes() {
            if (u, v) != (s, t) {
                pairs.push((u, v));
            }
        }
    }
    for (u, v) in pairs {
        let Some(inner) = solver.solve(ctx, u, v, target) else {
            continue;
        };
        let cost = metric.dist(s, u) + inner.cost + metric.dist(v, t);
        if best.as_ref().is_some_and(|b| b.cost <= cost) {
            continue;
        }
        let mut nodes = vec![s];
        for n in inner.nodes.into_iter().chain(std::iter::once(t)) {
            if nodes.last() != Some(&n) {
                nodes.push(n);
            }
        }
        let profit = ctx.profit_of(&nodes);
        best = Some(PathAnswer { nodes, cost, profit });
    }
    best
}
