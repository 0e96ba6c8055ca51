//! Weighted undirected networks and their exact metric closure.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    Tree,
    Graph,
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricKind::Tree => write!(f, "tree"),
            MetricKind::Graph => write!(f, "graph"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
}

impl Edge {
    pub fn new(u: usize, v: usize, weight: Rational) -> Self {
        Edge { u, v, weight }
    }
}

/// A node set with its edge list and the full table of shortest-path distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricInstance {
    node_count: usize,
    kind: MetricKind,
    edges: Vec<Edge>,
    dist: Vec<Vec<Rational>>,
    adjacency: Vec<Vec<(usize, Rational)>>,
}

/// Builds the metric closure of `edges`.
///
/// Tree inputs must have exactly `node_count - 1` edges and be connected;
/// graph inputs must be connected. Distances come from Floyd-Warshall on
/// graphs and from a traversal per source on trees.
pub fn build_metric(node_count: usize, kind: MetricKind, edges: Vec<Edge>) -> Result<MetricInstance> {
    if node_count == 0 {
        return Err(Error::InvalidParameter("metric needs at least one node".into()));
    }
    for e in &edges {
        for node in [e.u, e.v] {
            if node >= node_count {
                return Err(Error::NodeOutOfRange { node, node_count });
            }
        }
        if !e.weight.is_positive() {
            return Err(Error::NonPositiveWeight { u: e.u, v: e.v, weight: e.weight });
        }
    }
    let mut adjacency = vec![Vec::new(); node_count];
    for e in &edges {
        adjacency[e.u].push((e.v, e.weight));
        adjacency[e.v].push((e.u, e.weight));
    }
    for list in &mut adjacency {
        list.sort_by_key(|&(n, _)| n);
    }

    if !is_connected(&adjacency) {
        return Err(Error::Disconnected);
    }

    let dist = match kind {
        MetricKind::Tree => {
            if edges.len() != node_count - 1 {
                return Err(Error::NotATree(format!(
                    "{} edges for {} nodes (cycle or parallel edge)",
                    edges.len(),
                    node_count
                )));
            }
            (0..node_count).map(|s| tree_distances(&adjacency, s)).collect()
        }
        MetricKind::Graph => floyd_warshall(node_count, &edges),
    };

    Ok(MetricInstance { node_count, kind, edges, dist, adjacency })
}

fn is_connected(adjacency: &[Vec<(usize, Rational)>]) -> bool {
    let mut seen = vec![false; adjacency.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &(v, _) in &adjacency[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn tree_distances(adjacency: &[Vec<(usize, Rational)>], source: usize) -> Vec<Rational> {
    let mut dist = vec![Rational::ZERO; adjacency.len()];
    let mut stack = vec![(source, usize::MAX)];
    while let Some((u, parent)) = stack.pop() {
        for &(v, w) in &adjacency[u] {
            if v != parent {
                dist[v] = dist[u] + w;
                stack.push((v, u));
            }
        }
    }
    dist
}

fn floyd_warshall(n: usize, edges: &[Edge]) -> Vec<Vec<Rational>> {
    let mut dist: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = Some(Rational::ZERO);
    }
    for e in edges {
        let better = match dist[e.u][e.v] {
            Some(d) => e.weight < d,
            None => true,
        };
        if better {
            dist[e.u][e.v] = Some(e.weight);
            dist[e.v][e.u] = Some(e.weight);
        }
    }
    #[allow(clippy::needless_range_loop)]
    for k in 0..n {
        for i in 0..n {
            let Some(dik) = dist[i][k] else { continue };
            for j in 0..n {
                if let Some(dkj) = dist[k][j] {
                    let via = dik + dkj;
                    if dist[i][j].is_none_or(|d| via < d) {
                        dist[i][j] = Some(via);
                    }
                }
            }
        }
    }
    dist.into_iter().map(|row| row.into_iter().map(|d| d.expect("connected")).collect()).collect()
}

impl MetricInstance {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn is_tree(&self) -> bool {
        self.kind == MetricKind::Tree
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn dist(&self, u: usize, v: usize) -> Rational {
        self.dist[u][v]
    }

    pub fn distance_table(&self) -> &[Vec<Rational>] {
        &self.dist
    }

    /// Neighbours of `u` in the edge list, ordered by node id.
    pub fn neighbors(&self, u: usize) -> &[(usize, Rational)] {
        &self.adjacency[u]
    }

    /// Node sequence of the unique tree path from `u` to `v`.
    pub fn tree_path(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        if !self.is_tree() {
            return Err(Error::TreeRequired);
        }
        let mut parent = vec![usize::MAX; self.node_count];
        let mut stack = vec![u];
        parent[u] = u;
        while let Some(x) = stack.pop() {
            if x == v {
                break;
            }
            for &(y, _) in &self.adjacency[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
        let mut path = vec![v];
        let mut cur = v;
        while cur != u {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Ok(path)
    }

    /// Multiplies every edge weight and distance by `factor > 0`.
    pub fn scaled(&self, factor: Rational) -> MetricInstance {
        assert!(factor.is_positive(), "scale factor must be positive");
        let edges = self.edges.iter().map(|e| Edge::new(e.u, e.v, e.weight * factor)).collect();
        let dist = self.dist.iter().map(|row| row.iter().map(|d| *d * factor).collect()).collect();
        let adjacency = self.adjacency.iter().map(|row| row.iter().map(|&(n, w)| (n, w * factor)).collect()).collect();
        MetricInstance { node_count: self.node_count, kind: self.kind, edges, dist, adjacency }
    }

    /// Adds fresh leaves, one per `(anchor, weight)` pair, without re-running
    /// the closure. Zero weights are accepted here (they stay internal to
    /// instance transforms); the new node ids are returned in order.
    pub(crate) fn with_leaves(&self, leaves: &[(usize, Rational)]) -> (MetricInstance, Vec<usize>) {
        let mut out = self.clone();
        let mut ids = Vec::with_capacity(leaves.len());
        for &(anchor, weight) in leaves {
            let id = out.node_count;
            out.node_count += 1;
            let mut row: Vec<Rational> = out.dist[anchor].iter().map(|d| *d + weight).collect();
            for (x, d) in row.iter().enumerate() {
                out.dist[x].push(*d);
            }
            row.push(Rational::ZERO);
            out.dist.push(row);
            out.edges.push(Edge::new(anchor, id, weight));
            out.adjacency.push(vec![(anchor, weight)]);
            out.adjacency[anchor].push((id, weight));
            ids.push(id);
        }
        (out, ids)
    }
}
