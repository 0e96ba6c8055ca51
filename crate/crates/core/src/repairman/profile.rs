//! Profit/cost profiles on trees.
//!
//! Contract a root path into one node, then merge the subtrees hanging off it
//! bottom-up. A child's list is shifted by twice its edge weight at every
//! positive profit and min-plus convolved into its parent's list.

use std::fmt;

use crate::error::{Error, Result};
use crate::metric::MetricInstance;
use crate::rational::{Extended, Rational};

/// `cost(p)` is the least cost that collects profit at least `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfitCostProfile {
    costs: Vec<Extended>,
}

impl ProfitCostProfile {
    pub fn new(costs: Vec<Extended>) -> Self {
        ProfitCostProfile { costs }
    }

    pub fn cost(&self, profit: u64) -> Extended {
        self.costs.get(profit as usize).copied().unwrap_or(Extended::Infinite)
    }

    /// Largest profit with a finite cost.
    pub fn max_profit(&self) -> u64 {
        self.costs.iter().rposition(|c| c.is_finite()).unwrap_or(0) as u64
    }

    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    pub fn costs(&self) -> &[Extended] {
        &self.costs
    }

    pub fn is_monotone(&self) -> bool {
        self.costs.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn shifted(&self, by: Rational) -> ProfitCostProfile {
        ProfitCostProfile { costs: self.costs.iter().map(|c| *c + by).collect() }
    }
}

impl fmt::Display for ProfitCostProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.costs.iter().enumerate().filter(|(_, c)| c.is_finite()).map(|(p, c)| format!("{p}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone)]
struct SubtreeNode {
    node: usize,
    children: Vec<(usize, Rational)>,
    /// Cost per profit level after merging all children.
    list: Vec<Rational>,
    /// `splits[c][p]`: profit handed to child `c` at combined level `p`.
    splits: Vec<Vec<usize>>,
}

/// The merged lists for one contracted root path, kept for backtracking.
#[derive(Debug, Clone)]
pub struct SweepTable {
    path: Vec<usize>,
    direct: Rational,
    nodes: Vec<SubtreeNode>,
    /// Root children as (attachment path node, subtree slot).
    root_children: Vec<(usize, usize)>,
    root: SubtreeNode,
}

fn merge(list: &[Rational], child: &[Rational], weight: Rational) -> (Vec<Rational>, Vec<usize>) {
    let detour = weight + weight;
    let len = list.len() + child.len() - 1;
    let mut out: Vec<Option<Rational>> = vec![None; len];
    let mut split = vec![0usize; len];
    for (a, ca) in list.iter().enumerate() {
        for (b, cb) in child.iter().enumerate() {
            let c = if b == 0 { *ca } else { *ca + *cb + detour };
            let slot = &mut out[a + b];
            if slot.is_none_or(|cur| c < cur) {
                *slot = Some(c);
                split[a + b] = b;
            }
        }
    }
    (out.into_iter().map(|c| c.expect("every level is reachable")).collect(), split)
}

impl SweepTable {
    /// Builds the table for the tree path between `s` and `t`; `profits` is
    /// indexed by metric node.
    pub fn new(metric: &MetricInstance, profits: &[u64], s: usize, t: usize) -> Result<SweepTable> {
        let path = metric.tree_path(s, t)?;
        SweepTable::for_path(metric, profits, path)
    }

    fn for_path(metric: &MetricInstance, profits: &[u64], path: Vec<usize>) -> Result<SweepTable> {
        if !metric.is_tree() {
            return Err(Error::TreeRequired);
        }
        if profits.len() != metric.node_count() {
            return Err(Error::InvalidParameter(format!(
                "{} profits for {} nodes",
                profits.len(),
                metric.node_count()
            )));
        }
        let n = metric.node_count();
        let mut on_path = vec![false; n];
        for &p in &path {
            on_path[p] = true;
        }

        // Orient the off-path forest away from the path.
        let mut nodes: Vec<SubtreeNode> = Vec::new();
        let mut root_children = Vec::new();
        let mut order = Vec::new();
        let mut stack: Vec<(usize, usize, Option<usize>)> = Vec::new();
        for &p in &path {
            for &(c, _) in metric.neighbors(p) {
                if !on_path[c] {
                    stack.push((c, p, None));
                }
            }
        }
        // Depth-first creation so parents get slots before children.
        stack.reverse();
        while let Some((u, parent, parent_slot)) = stack.pop() {
            let id = nodes.len();
            nodes.push(SubtreeNode { node: u, children: Vec::new(), list: Vec::new(), splits: Vec::new() });
            match parent_slot {
                None => root_children.push((parent, id)),
                Some(ps) => {
                    let w = metric.dist(parent, u);
                    nodes[ps].children.push((id, w));
                }
            }
            order.push(id);
            let mut next: Vec<usize> = metric.neighbors(u).iter().map(|&(c, _)| c).filter(|&c| c != parent).collect();
            next.reverse();
            for c in next {
                stack.push((c, u, Some(id)));
            }
        }

        for &id in order.iter().rev() {
            let mut list = vec![Rational::ZERO; profits[nodes[id].node] as usize + 1];
            let mut splits = Vec::with_capacity(nodes[id].children.len());
            for &(child, w) in &nodes[id].children.clone() {
                let (merged, split) = merge(&list, &nodes[child].list, w);
                list = merged;
                splits.push(split);
            }
            nodes[id].list = list;
            nodes[id].splits = splits;
        }

        let root_profit: u64 = path.iter().map(|&p| profits[p]).sum();
        let mut root = SubtreeNode {
            node: path[0],
            children: Vec::new(),
            list: vec![Rational::ZERO; root_profit as usize + 1],
            splits: Vec::new(),
        };
        for &(attach, child) in &root_children {
            let w = metric.dist(attach, nodes[child].node);
            root.children.push((child, w));
            let (merged, split) = merge(&root.list, &nodes[child].list, w);
            root.list = merged;
            root.splits.push(split);
        }

        let direct = metric.dist(path[0], *path.last().expect("path is non-empty"));
        Ok(SweepTable { path, direct, nodes, root_children, root })
    }

    /// Extra cost beyond the root path, per profit level.
    pub fn extra_profile(&self) -> ProfitCostProfile {
        ProfitCostProfile::new(self.root.list.iter().map(|&c| Extended::Finite(c)).collect())
    }

    /// Full walk cost from `s` to `t`, per profit level.
    pub fn path_profile(&self) -> ProfitCostProfile {
        self.extra_profile().shifted(self.direct)
    }

    pub fn max_profit(&self) -> u64 {
        (self.root.list.len() - 1) as u64
    }

    /// Walk cost for `profit`, if reachable.
    pub fn cost(&self, profit: u64) -> Option<Rational> {
        self.root.list.get(profit as usize).map(|&c| c + self.direct)
    }

    fn amounts(node: &SubtreeNode, mut level: usize) -> Vec<usize> {
        let mut amounts = vec![0; node.children.len()];
        for c in (0..node.children.len()).rev() {
            let b = node.splits[c][level];
            amounts[c] = b;
            level -= b;
        }
        amounts
    }

    fn subtree_walk(&self, id: usize, level: usize, out: &mut Vec<usize>) {
        let node = &self.nodes[id];
        out.push(node.node);
        let amounts = Self::amounts(node, level);
        for (&(child, _), &amt) in node.children.iter().zip(&amounts) {
            if amt > 0 {
                self.subtree_walk(child, amt, out);
                out.push(node.node);
            }
        }
    }

    /// Node sequence from `s` to `t` that collects at least `profit`,
    /// detouring into subtrees as the merge chose. Its length equals
    /// [`SweepTable::cost`].
    pub fn walk(&self, profit: u64) -> Option<Vec<usize>> {
        if profit > self.max_profit() {
            return None;
        }
        let amounts = Self::amounts(&self.root, profit as usize);
        let mut out = Vec::new();
        for &p in &self.path {
            out.push(p);
            for (k, &(attach, child)) in self.root_children.iter().enumerate() {
                if attach == p && amounts[k] > 0 {
                    self.subtree_walk(child, amounts[k], &mut out);
                    out.push(p);
                }
            }
        }
        Some(out)
    }

    pub fn path(&self) -> &[usize] {
        &self.path
    }
}

/// Extra cost of collecting each profit level with closed detours from `root`.
pub fn sweep_tree(metric: &MetricInstance, profits: &[u64], root: usize) -> Result<ProfitCostProfile> {
    Ok(SweepTable::for_path(metric, profits, vec![root])?.extra_profile())
}

/// Cost of the cheapest `s`–`t` walk collecting each profit level.
pub fn path_profile(metric: &MetricInstance, profits: &[u64], s: usize, t: usize) -> Result<ProfitCostProfile> {
    Ok(SweepTable::new(metric, profits, s, t)?.path_profile())
}
