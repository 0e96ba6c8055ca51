//! Solver-versus-oracle ratio reports over seeded random suites.

use std::fmt::{self, Write};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::generate::{generate_random, RandomParams};
use crate::deliveryman::{delivery_graph, delivery_tree};
use crate::error::{Error, Result};
use crate::metric::MetricKind;
use crate::model::Instance;
use crate::multiwindow::{delivery_bounded, window12};
use crate::oracle::{brute_deliveryman, brute_repairman, OracleBudget};
use crate::rational::{Extended, Rational};
use crate::repairman::{solve_repairman_with, ExactPathSolver, HalvingPathSolver, Mode, PathSolver};
use crate::trimming::trim_unit;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    Repairman,
    Deliveryman,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Repairman => "repairman",
            Problem::Deliveryman => "deliveryman",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Unit windows, half-period trimming, exact tree solver.
    UnitTree,
    /// Unit windows on a graph with the exact path solver.
    UnitGraph,
    /// Unit windows on a graph with the seeded factor-2 path solver.
    UnitGraphHalving,
    Window12,
    DeliveryTree,
    DeliveryGraph,
    DeliveryBounded(Mode),
}

impl Algorithm {
    pub fn problem(&self) -> Problem {
        match self {
            Algorithm::UnitTree | Algorithm::UnitGraph | Algorithm::UnitGraphHalving | Algorithm::Window12 => {
                Problem::Repairman
            }
            _ => Problem::Deliveryman,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::UnitTree => f.write_str("unit-tree"),
            Algorithm::UnitGraph => f.write_str("unit-graph"),
            Algorithm::UnitGraphHalving => f.write_str("unit-graph-halving"),
            Algorithm::Window12 => f.write_str("window12"),
            Algorithm::DeliveryTree => f.write_str("delivery-tree"),
            Algorithm::DeliveryGraph => f.write_str("delivery-graph"),
            Algorithm::DeliveryBounded(Mode::Tree) => f.write_str("delivery-bounded-tree"),
            Algorithm::DeliveryBounded(Mode::Graph) => f.write_str("delivery-bounded-graph"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteSpec {
    pub name: String,
    pub algorithm: Algorithm,
    pub params: RandomParams,
    pub count: usize,
    pub seed: u64,
    pub epsilon: Rational,
    pub budget: OracleBudget,
}

/// Names accepted by [`standard_suite`].
pub const SUITE_NAMES: [&str; 8] = [
    "unit-tree",
    "unit-graph",
    "unit-graph-halving",
    "window12",
    "delivery-tree",
    "delivery-graph",
    "delivery12-tree",
    "delivery12-graph",
];

pub fn standard_suite(name: &str, count: usize, seed: u64, epsilon: Rational) -> Option<SuiteSpec> {
    let one = Rational::ONE;
    let two = Rational::from_int(2);
    let (algorithm, params) = match name {
        "unit-tree" => (Algorithm::UnitTree, RandomParams::unit(MetricKind::Tree, 8, 8)),
        "unit-graph" => (Algorithm::UnitGraph, RandomParams::unit(MetricKind::Graph, 7, 7)),
        "unit-graph-halving" => (Algorithm::UnitGraphHalving, RandomParams::unit(MetricKind::Graph, 7, 7)),
        "window12" => (Algorithm::Window12, RandomParams::unit(MetricKind::Tree, 6, 6).with_lengths(one, two)),
        "delivery-tree" => (Algorithm::DeliveryTree, RandomParams::unit(MetricKind::Tree, 6, 6)),
        "delivery-graph" => (Algorithm::DeliveryGraph, RandomParams::unit(MetricKind::Graph, 6, 6)),
        "delivery12-tree" => {
            (Algorithm::DeliveryBounded(Mode::Tree), RandomParams::unit(MetricKind::Tree, 6, 6).with_lengths(one, two))
        }
        "delivery12-graph" => (
            Algorithm::DeliveryBounded(Mode::Graph),
            RandomParams::unit(MetricKind::Graph, 6, 6).with_lengths(one, two),
        ),
        _ => return None,
    };
    Some(SuiteSpec { name: name.to_string(), algorithm, params, count, seed, epsilon, budget: OracleBudget::default() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowStatus {
    Pass,
    Fail,
    /// The oracle refused the instance; the row is kept, unscored.
    Skipped(String),
    Error(String),
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowStatus::Pass => f.write_str("pass"),
            RowStatus::Fail => f.write_str("FAIL"),
            RowStatus::Skipped(why) => write!(f, "skipped ({why})"),
            RowStatus::Error(why) => write!(f, "error ({why})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub instance: String,
    pub problem: Problem,
    pub algorithm: Algorithm,
    pub achieved: Option<Extended>,
    pub oracle: Option<Extended>,
    /// Oracle over achieved for profits, achieved over oracle for speeds.
    pub ratio: Option<Extended>,
    pub bound: Option<Rational>,
    pub status: RowStatus,
    pub wall: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchReport {
    pub suite: String,
    pub rows: Vec<BenchRow>,
}

/// Relative slack allowed where the oracle reports an unattained infimum.
pub fn infimum_slack() -> Rational {
    Rational::ONE + Rational::new(1, 1_000_000_000)
}

fn ratio(num: Extended, den: Extended) -> Extended {
    match (num, den) {
        (Extended::Finite(n), Extended::Finite(d)) if d.is_zero() => {
            if n.is_zero() {
                Extended::Finite(Rational::ONE)
            } else {
                Extended::Infinite
            }
        }
        (Extended::Finite(n), Extended::Finite(d)) => Extended::Finite(n / d),
        (Extended::Infinite, _) => Extended::Infinite,
        (Extended::Finite(_), Extended::Infinite) => Extended::Finite(Rational::ZERO),
    }
}

fn profit(p: u64) -> Extended {
    Extended::Finite(Rational::from(p))
}

struct Scored {
    achieved: Extended,
    oracle: Extended,
    bound: Rational,
}

fn score(spec: &SuiteSpec, inst: &Instance) -> Result<Scored> {
    let eps = spec.epsilon;
    match spec.algorithm {
        Algorithm::UnitTree | Algorithm::UnitGraph | Algorithm::UnitGraphHalving => {
            let trimmed = trim_unit(inst)?;
            let oracle = brute_repairman(inst, None, &spec.budget)?.profit;
            let halving = HalvingPathSolver { seed: spec.seed };
            let (mode, solver, bound): (Mode, &dyn PathSolver, i128) = match spec.algorithm {
                Algorithm::UnitTree => (Mode::Tree, &ExactPathSolver, 3),
                Algorithm::UnitGraph => (Mode::Graph, &ExactPathSolver, 3),
                _ => (Mode::Graph, &halving, 6),
            };
            let run = solve_repairman_with(inst, &trimmed, mode, solver)?;
            Ok(Scored { achieved: profit(run.profit(inst)), oracle: profit(oracle), bound: Rational::from_int(bound) })
        }
        Algorithm::Window12 => {
            let oracle = brute_repairman(inst, None, &spec.budget)?.profit;
            let out = window12(inst, Mode::Tree)?;
            Ok(Scored { achieved: profit(out.profit), oracle: profit(oracle), bound: Rational::new(219, 52) })
        }
        Algorithm::DeliveryTree | Algorithm::DeliveryGraph => {
            let trimmed = trim_unit(inst)?;
            let oracle = brute_deliveryman(inst, None, &spec.budget)?.speed;
            let (res, bound) = if spec.algorithm == Algorithm::DeliveryTree {
                (delivery_tree(inst, &trimmed, eps)?, Rational::from_int(4) + eps)
            } else {
                (delivery_graph(inst, &trimmed)?, Rational::from_int(8))
            };
            Ok(Scored { achieved: Extended::Finite(res.tour.speed()), oracle, bound })
        }
        Algorithm::DeliveryBounded(mode) => {
            let oracle = brute_deliveryman(inst, None, &spec.budget)?.speed;
            let out = delivery_bounded(inst, eps, mode)?;
            let delta = match mode {
                Mode::Tree => Rational::ONE + eps,
                Mode::Graph => Rational::from_int(2),
            };
            Ok(Scored { achieved: Extended::Finite(out.result.tour.speed()), oracle, bound: out.trim_factor * delta })
        }
    }
}

fn bench_row(spec: &SuiteSpec, index: usize) -> BenchRow {
    let seed = spec.seed + index as u64;
    let instance = format!("{}-{seed}", spec.name);
    let started = Instant::now();
    let outcome = generate_random(seed, &spec.params).and_then(|inst| score(spec, &inst));
    let wall = started.elapsed();
    let problem = spec.algorithm.problem();
    let mut row = BenchRow {
        instance,
        problem,
        algorithm: spec.algorithm,
        achieved: None,
        oracle: None,
        ratio: None,
        bound: None,
        status: RowStatus::Pass,
        wall,
    };
    match outcome {
        Ok(s) => {
            let (r, limit) = match problem {
                Problem::Repairman => (ratio(s.oracle, s.achieved), s.bound),
                Problem::Deliveryman => (ratio(s.achieved, s.oracle), s.bound * infimum_slack()),
            };
            row.status = if r <= Extended::Finite(limit) { RowStatus::Pass } else { RowStatus::Fail };
            row.achieved = Some(s.achieved);
            row.oracle = Some(s.oracle);
            row.ratio = Some(r);
            row.bound = Some(s.bound);
        }
        Err(Error::BudgetExceeded(why)) => row.status = RowStatus::Skipped(why),
        Err(e) => row.status = RowStatus::Error(e.to_string()),
    }
    row
}

/// Runs every instance of the suite in parallel; rows come back in seed order.
pub fn run_benchmark(spec: &SuiteSpec) -> BenchReport {
    let rows = (0..spec.count).into_par_iter().map(|i| bench_row(spec, i)).collect();
    BenchReport { suite: spec.name.clone(), rows }
}

fn show(v: &Option<Extended>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

impl BenchReport {
    pub fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.status == RowStatus::Pass).count()
    }

    pub fn failed(&self) -> usize {
        self.rows.iter().filter(|r| matches!(r.status, RowStatus::Fail | RowStatus::Error(_))).count()
    }

    pub fn skipped(&self) -> usize {
        self.rows.iter().filter(|r| matches!(r.status, RowStatus::Skipped(_))).count()
    }

    /// Largest scored ratio.
    pub fn worst_ratio(&self) -> Option<Extended> {
        self.rows.iter().filter_map(|r| r.ratio).max()
    }

    /// Tab-separated rows with a header line. Timing is optional so that
    /// identical runs give identical text.
    pub fn to_tsv(&self, timing: bool) -> String {
        let mut out = String::from("instance\tproblem\talgorithm\tachieved\toracle\tratio\tbound\tstatus");
        if timing {
            out.push_str("\twall_ms");
        }
        out.push('\n');
        for r in &self.rows {
            write!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.instance,
                r.problem,
                r.algorithm,
                show(&r.achieved),
                show(&r.oracle),
                show(&r.ratio),
                r.bound.map_or_else(|| "-".to_string(), |b| b.to_string()),
                r.status
            )
            .unwrap();
            if timing {
                write!(out, "\t{:.3}", r.wall.as_secs_f64() * 1e3).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn summary(&self) -> String {
        let worst = self.worst_ratio().map_or_else(
            || "-".to_string(),
            |w| match w {
                Extended::Finite(x) => format!("{:.4}", x.to_f64()),
                Extended::Infinite => "inf".to_string(),
            },
        );
        format!(
            "{}: {} rows, {} pass, {} fail, {} skipped, worst ratio {}",
            self.suite,
            self.rows.len(),
            self.passed(),
            self.failed(),
            self.skipped(),
            worst
        )
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<24} {:>10} {:>10} {:>10} {:>10}  status", "instance", "achieved", "oracle", "ratio", "bound")?;
        for r in &self.rows {
            let ratio = match r.ratio {
                Some(Extended::Finite(x)) => format!("{:.4}", x.to_f64()),
                Some(Extended::Infinite) => "inf".to_string(),
                None => "-".to_string(),
            };
            let bound = r.bound.map_or_else(|| "-".to_string(), |b| format!("{:.4}", b.to_f64()));
            writeln!(
                f,
                "{:<24} {:>10} {:>10} {:>10} {:>10}  {}",
                r.instance,
                show(&r.achieved),
                show(&r.oracle),
                ratio,
                bound,
                r.status
            )?;
        }
        write!(f, "{}", self.summary())
    }
}
