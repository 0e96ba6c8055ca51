//! The period-by-period arrival table.
//!
//! Entry states `(period, first node, profit so far)` hold the earliest time
//! the first request of a period can be serviced. Finish states
//! `(period, last node, profit after the period)` hold the earliest time the
//! last request of the period is serviced. Within a period the route from
//! first to last node comes from a profit/cost source; between periods the
//! traveler moves directly and waits for the next period to open.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use super::kssp::{reduced_path, PathContext, PathSolver, DEFAULT_EXACT_CAP};
use super::profile::SweepTable;
use crate::error::{Error, Result};
use crate::model::{Instance, RequestId, ServiceEvent, ServiceRun};
use crate::rational::{Extended, Rational};
use crate::trimming::TrimmedInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Tree,
    Graph,
}

/// Requests of one occupied period, grouped by node.
#[derive(Debug, Clone)]
pub struct Period {
    pub index: i64,
    pub begin: Rational,
    pub end: Rational,
    pub nodes: Vec<usize>,
    pub profits: Vec<u64>,
    /// Request ids per node, ascending.
    pub requests: Vec<Vec<RequestId>>,
}

impl Period {
    pub fn total_profit(&self) -> u64 {
        self.profits.iter().sum()
    }

    fn local(&self, node: usize) -> Option<usize> {
        self.nodes.iter().position(|&n| n == node)
    }

    fn weighted(&self) -> Vec<(usize, u64)> {
        self.nodes.iter().copied().zip(self.profits.iter().copied()).collect()
    }
}

pub fn periods_of(instance: &Instance, trimmed: &TrimmedInstance) -> Result<Vec<Period>> {
    let mut out = Vec::new();
    for (index, positions) in trimmed.periods() {
        let (begin, end) = trimmed.grid.bounds(index);
        let mut nodes: Vec<usize> = Vec::new();
        let mut profits: Vec<u64> = Vec::new();
        let mut requests: Vec<Vec<RequestId>> = Vec::new();
        for pos in positions {
            let id = trimmed.requests[pos].id;
            let r = instance.request(id)?;
            match nodes.iter().position(|&n| n == r.node) {
                Some(i) => {
                    profits[i] += r.profit;
                    requests[i].push(id);
                }
                None => {
                    nodes.push(r.node);
                    profits.push(r.profit);
                    requests.push(vec![id]);
                }
            }
        }
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.sort_by_key(|&i| nodes[i]);
        let nodes = order.iter().map(|&i| nodes[i]).collect();
        let profits = order.iter().map(|&i| profits[i]).collect();
        let requests = order
            .iter()
            .map(|&i| {
                let mut ids = requests[i].clone();
                ids.sort();
                ids
            })
            .collect();
        out.push(Period { index, begin, end, nodes, profits, requests });
    }
    Ok(out)
}

/// Within-period routes: for an entry node, exit node and profit target,
/// a node sequence and its cost.
enum SegmentSource<'a> {
    Tree(HashMap<(usize, usize), SweepTable>),
    Graph { ctx: PathContext<'a>, solver: &'a dyn PathSolver },
}

impl<'a> SegmentSource<'a> {
    fn build(instance: &'a Instance, period: &Period, mode: Mode, solver: &'a dyn PathSolver) -> Result<Self> {
        let metric = &instance.metric;
        match mode {
            Mode::Tree => {
                let mut profits = vec![0u64; metric.node_count()];
                for (&n, &p) in period.nodes.iter().zip(&period.profits) {
                    profits[n] = p;
                }
                let mut tables = HashMap::new();
                for &x in &period.nodes {
                    for &y in &period.nodes {
                        tables.insert((x, y), SweepTable::new(metric, &profits, x, y)?);
                    }
                }
                Ok(SegmentSource::Tree(tables))
            }
            Mode::Graph => {
                let ctx = PathContext::new(metric, &period.weighted(), DEFAULT_EXACT_CAP)?;
                Ok(SegmentSource::Graph { ctx, solver })
            }
        }
    }

    fn segment(&self, x: usize, y: usize, profit: u64) -> Option<(Rational, Vec<usize>)> {
        match self {
            SegmentSource::Tree(tables) => {
                let t = &tables[&(x, y)];
                Some((t.cost(profit)?, t.walk(profit)?))
            }
            SegmentSource::Graph { ctx, solver } => {
                let ans = reduced_path(ctx, x, y, profit, *solver, Rational::ONE)?;
                Some((ans.cost, ans.nodes))
            }
        }
    }
}

#[derive(Debug)]
struct Chain {
    events: Vec<ServiceEvent>,
    prev: Option<Rc<Chain>>,
}

fn flatten(chain: &Option<Rc<Chain>>) -> Vec<ServiceEvent> {
    let mut parts = Vec::new();
    let mut cur = chain.clone();
    while let Some(c) = cur {
        parts.push(c.clone());
        cur = c.prev.clone();
    }
    parts.iter().rev().flat_map(|c| c.events.iter().copied()).collect()
}

#[derive(Debug, Clone)]
struct Slot {
    time: Rational,
    count: usize,
    chain: Option<Rc<Chain>>,
}

fn improves(map: &BTreeMap<(usize, u64), Slot>, key: (usize, u64), time: Rational, count: usize) -> bool {
    map.get(&key).is_none_or(|s| (time, count) < (s.time, s.count))
}

/// Earliest entry and finish times for every occupied period.
pub struct ArrivalTable {
    periods: Vec<Period>,
    entries: Vec<BTreeMap<(usize, u64), Slot>>,
    finishes: Vec<BTreeMap<(usize, u64), Slot>>,
}

impl ArrivalTable {
    /// Every request may open a run at the start of its own period.
    pub fn new(periods: Vec<Period>) -> ArrivalTable {
        let entries = periods
            .iter()
            .map(|p| p.nodes.iter().map(|&x| ((x, 0), Slot { time: p.begin, count: 0, chain: None })).collect())
            .collect();
        let finishes = vec![BTreeMap::new(); periods.len()];
        ArrivalTable { periods, entries, finishes }
    }

    pub fn periods(&self) -> &[Period] {
        &self.periods
    }

    /// Earliest time the run can enter period position `i` at `node` with
    /// `profit` collected before it.
    pub fn entry_time(&self, i: usize, node: usize, profit: u64) -> Extended {
        self.entries[i].get(&(node, profit)).map_or(Extended::Infinite, |s| Extended::Finite(s.time))
    }

    /// Earliest time the run can finish period position `i` at `node` with
    /// `profit` collected in total.
    pub fn finish_time(&self, i: usize, node: usize, profit: u64) -> Extended {
        self.finishes[i].get(&(node, profit)).map_or(Extended::Infinite, |s| Extended::Finite(s.time))
    }

    fn process(&mut self, i: usize, instance: &Instance, source: &SegmentSource<'_>) {
        let period = &self.periods[i];
        let mut finishes = BTreeMap::new();
        for (&(x, before), entry) in &self.entries[i] {
            let start = entry.time.max(period.begin);
            for &y in &period.nodes {
                for p in 1..=period.total_profit() {
                    let Some((cost, walk)) = source.segment(x, y, p) else {
                        continue;
                    };
                    let finish = start + cost;
                    if finish >= period.end {
                        continue;
                    }
                    let mut served = vec![false; period.nodes.len()];
                    let mut gain = 0;
                    let mut count = 0;
                    for &n in &walk {
                        if let Some(l) = period.local(n) {
                            if !served[l] {
                                served[l] = true;
                                gain += period.profits[l];
                                count += period.requests[l].len();
                            }
                        }
                    }
                    let key = (y, before + gain);
                    let total_count = entry.count + count;
                    if !improves(&finishes, key, finish, total_count) {
                        continue;
                    }
                    let mut events = Vec::with_capacity(count);
                    let mut served = vec![false; period.nodes.len()];
                    let mut clock = start;
                    let mut prev = walk[0];
                    for &n in &walk {
                        clock += instance.dist(prev, n);
                        prev = n;
                        if let Some(l) = period.local(n) {
                            if !served[l] {
                                served[l] = true;
                                events.extend(period.requests[l].iter().map(|&id| ServiceEvent::new(id, clock)));
                            }
                        }
                    }
                    let chain = Some(Rc::new(Chain { events, prev: entry.chain.clone() }));
                    finishes.insert(key, Slot { time: finish, count: total_count, chain });
                }
            }
        }

        for (&(y, profit), fin) in &finishes {
            for a in i + 1..self.periods.len() {
                let next = &self.periods[a];
                for &b in &next.nodes {
                    let arrival = (fin.time + instance.dist(y, b)).max(next.begin);
                    if arrival >= next.end {
                        continue;
                    }
                    let key = (b, profit);
                    if improves(&self.entries[a], key, arrival, fin.count) {
                        self.entries[a].insert(key, Slot { time: arrival, count: fin.count, chain: fin.chain.clone() });
                    }
                }
            }
        }
        self.finishes[i] = finishes;
    }

    /// Highest recorded profit and its run; ties go to the earlier finish,
    /// then to fewer events.
    fn best(&self) -> Option<(u64, Vec<ServiceEvent>)> {
        let mut best: Option<(u64, Rational, usize, &Slot)> = None;
        for fin in &self.finishes {
            for (&(_, profit), slot) in fin {
                let better = match best {
                    None => true,
                    Some((bp, bt, bc, _)) => {
                        (profit, Reverse(slot.time), Reverse(slot.count)) > (bp, Reverse(bt), Reverse(bc))
                    }
                };
                if better {
                    best = Some((profit, slot.time, slot.count, slot));
                }
            }
        }
        best.map(|(p, _, _, slot)| (p, flatten(&slot.chain)))
    }
}

/// Runs the table over all occupied periods and returns it.
pub fn build_arrival_table(
    instance: &Instance,
    trimmed: &TrimmedInstance,
    mode: Mode,
    solver: &dyn PathSolver,
) -> Result<ArrivalTable> {
    if mode == Mode::Tree && !instance.metric.is_tree() {
        return Err(Error::TreeRequired);
    }
    let periods = periods_of(instance, trimmed)?;
    let mut table = ArrivalTable::new(periods);
    for i in 0..table.periods.len() {
        let source = SegmentSource::build(instance, &table.periods[i], mode, solver)?;
        table.process(i, instance, &source);
    }
    Ok(table)
}

pub(crate) fn best_run(table: &ArrivalTable) -> ServiceRun {
    match table.best() {
        Some((_, events)) => ServiceRun::new(events, Rational::ONE),
        None => ServiceRun::empty(Rational::ONE),
    }
}
