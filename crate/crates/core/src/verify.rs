//! Exact feasibility checks for runs and tours, and fixed-order speed bounds.

use std::collections::HashSet;
use std::fmt;

use crate::error::Result;
use crate::metric::MetricInstance;
use crate::model::{Instance, RequestId, ServiceRun, ServiceTour};
use crate::rational::{travel_time, Extended, Rational};
use crate::trimming::TrimmedInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    WindowMiss,
    TravelTooFast,
    OrderViolation,
    MissingRequest,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::WindowMiss => "window_miss",
            ViolationKind::TravelTooFast => "travel_too_fast",
            ViolationKind::OrderViolation => "order_violation",
            ViolationKind::MissingRequest => "missing_request",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub request: RequestId,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub feasible: bool,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        VerifyReport { feasible: violations.is_empty(), violations }
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.feasible {
            return writeln!(f, "feasible");
        }
        writeln!(f, "infeasible ({} violations)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {} request {}: {}", v.kind, v.request, v.detail)?;
        }
        Ok(())
    }
}

/// Checks windows, travel times and ordering of `run`.
///
/// With `trimmed`, each request must be serviced inside its assigned period
/// instead of its original window; excluded requests always miss.
pub fn verify_run(instance: &Instance, run: &ServiceRun, trimmed: Option<&TrimmedInstance>) -> Result<VerifyReport> {
    let mut violations = Vec::new();
    let mut seen = HashSet::new();
    let mut prev: Option<(usize, Rational, RequestId)> = None;

    for event in &run.events {
        let request = instance.request(event.request)?;
        let window = match trimmed {
            Some(t) => t.target(event.request),
            None => Some((request.window_start, request.window_end())),
        };
        match window {
            Some((start, end)) if start <= event.time && event.time < end => {}
            Some((start, end)) => violations.push(Violation {
                kind: ViolationKind::WindowMiss,
                request: event.request,
                detail: format!("service at {} outside [{}, {})", event.time, start, end),
            }),
            None => violations.push(Violation {
                kind: ViolationKind::WindowMiss,
                request: event.request,
                detail: "request is excluded by the trimming".into(),
            }),
        }
        if !seen.insert(event.request) {
            violations.push(Violation {
                kind: ViolationKind::OrderViolation,
                request: event.request,
                detail: "request serviced more than once".into(),
            });
        }
        if let Some((prev_node, prev_time, prev_id)) = prev {
            if event.time < prev_time {
                violations.push(Violation {
                    kind: ViolationKind::OrderViolation,
                    request: event.request,
                    detail: format!("time {} precedes request {} at {}", event.time, prev_id, prev_time),
                });
            } else {
                let d = instance.dist(prev_node, request.node);
                let available = event.time - prev_time;
                if d > run.speed * available {
                    let needed = travel_time(d, run.speed);
                    violations.push(Violation {
                        kind: ViolationKind::TravelTooFast,
                        request: event.request,
                        detail: format!(
                            "needs {} time from request {} at speed {}, has {}",
                            needed, prev_id, run.speed, available
                        ),
                    });
                }
            }
        }
        prev = Some((request.node, event.time, event.request));
    }
    Ok(VerifyReport::from_violations(violations))
}

/// [`verify_run`] plus the requirement that every request is serviced.
pub fn verify_tour(instance: &Instance, tour: &ServiceTour, trimmed: Option<&TrimmedInstance>) -> Result<VerifyReport> {
    let mut report = verify_run(instance, &tour.run, trimmed)?;
    let present: HashSet<RequestId> = tour.run.requests().collect();
    for r in &instance.requests {
        if !present.contains(&r.id) {
            report.violations.push(Violation {
                kind: ViolationKind::MissingRequest,
                request: r.id,
                detail: "request not serviced".into(),
            });
        }
    }
    report.feasible = report.violations.is_empty();
    Ok(report)
}

/// A stop in a fixed visiting order: service must happen in `[release, deadline)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stop {
    pub node: usize,
    pub release: Rational,
    pub deadline: Rational,
}

impl Stop {
    pub fn new(node: usize, release: Rational, deadline: Rational) -> Self {
        Stop { node, release, deadline }
    }
}

/// Infimum speed at which `stops` can be serviced in the given order.
///
/// Equals `max C(k,l) / (d_l - r_k)` over pairs `k <= l`, with `C` the
/// cumulative distance along the order. Any speed strictly above the result
/// is feasible; the value itself may not be, since deadlines are exclusive.
/// Returns infinity when some pair has `d_l <= r_k`, because service times
/// are non-decreasing along the order.
pub fn fixed_order_min_speed(metric: &MetricInstance, stops: &[Stop]) -> Extended {
    let mut prefix = Vec::with_capacity(stops.len());
    let mut acc = Rational::ZERO;
    for (i, s) in stops.iter().enumerate() {
        if i > 0 {
            acc += metric.dist(stops[i - 1].node, s.node);
        }
        prefix.push(acc);
    }
    let mut best = Rational::ZERO;
    for k in 0..stops.len() {
        for l in k..stops.len() {
            let span = stops[l].deadline - stops[k].release;
            if !span.is_positive() {
                return Extended::Infinite;
            }
            let c = prefix[l] - prefix[k];
            if c.is_positive() {
                best = best.max(c / span);
            }
        }
    }
    Extended::Finite(best)
}

/// Earliest service times along `stops` at `speed`, waiting for releases.
/// Returns `None` as soon as a deadline is missed.
pub fn simulate_earliest(metric: &MetricInstance, stops: &[Stop], speed: Rational) -> Option<Vec<Rational>> {
    let mut times = Vec::with_capacity(stops.len());
    let mut clock: Option<(usize, Rational)> = None;
    for s in stops {
        let t = match clock {
            None => s.release,
            Some((node, now)) => {
                let travel = travel_time(metric.dist(node, s.node), speed).finite()?;
                (now + travel).max(s.release)
            }
        };
        if t >= s.deadline {
            return None;
        }
        times.push(t);
        clock = Some((s.node, t));
    }
    Some(times)
}

/// Stops for a list of request ids, using trimmed targets when given.
/// Requests excluded by the trimming yield `None`.
pub fn stops_for(
    instance: &Instance,
    order: &[RequestId],
    trimmed: Option<&TrimmedInstance>,
) -> Result<Option<Vec<Stop>>> {
    let mut stops = Vec::with_capacity(order.len());
    for &id in order {
        let r = instance.request(id)?;
        let window = match trimmed {
            Some(t) => t.target(id),
            None => Some((r.window_start, r.window_end())),
        };
        match window {
            Some((a, b)) => stops.push(Stop::new(r.node, a, b)),
            None => return Ok(None),
        }
    }
    Ok(Some(stops))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{build_metric, Edge, MetricKind};
    use crate::model::{ServiceEvent, ServiceRequest};
    use crate::rational::q;

    fn two_far() -> Instance {
        let m = build_metric(3, MetricKind::Tree, vec![Edge::new(0, 1, q(1, 1)), Edge::new(1, 2, q(2, 1))]).unwrap();
        Instance::new(m, vec![ServiceRequest::new(0, 0, q(0, 1), q(1, 1)), ServiceRequest::new(1, 2, q(0, 1), q(1, 1))])
            .unwrap()
    }

    fn run(events: &[(u32, Rational)], speed: Rational) -> ServiceRun {
        ServiceRun::new(events.iter().map(|&(id, t)| ServiceEvent::new(RequestId(id), t)).collect(), speed)
    }

    #[test]
    fn single_service_is_feasible() {
        let inst = two_far();
        let report = verify_run(&inst, &run(&[(0, q(1, 2))], Rational::ONE), None).unwrap();
        assert!(report.feasible);
    }

    #[test]
    fn travel_too_fast_detected() {
        let inst = two_far();
        let report = verify_run(&inst, &run(&[(0, q(1, 5)), (1, q(4, 5))], Rational::ONE), None).unwrap();
        assert!(!report.feasible);
        assert!(report.has(ViolationKind::TravelTooFast));
    }

    #[test]
    fn right_endpoint_misses() {
        let inst = two_far();
        let report = verify_run(&inst, &run(&[(0, q(1, 1))], Rational::ONE), None).unwrap();
        assert!(report.has(ViolationKind::WindowMiss));
    }

    #[test]
    fn order_and_duplicates() {
        let inst = two_far();
        let r = run(&[(0, q(1, 2)), (0, q(1, 2))], Rational::ONE);
        assert!(verify_run(&inst, &r, None).unwrap().has(ViolationKind::OrderViolation));
        let r = run(&[(1, q(1, 2)), (0, q(1, 4))], q(100, 1));
        assert!(verify_run(&inst, &r, None).unwrap().has(ViolationKind::OrderViolation));
    }

    #[test]
    fn unknown_request_is_an_error() {
        let inst = two_far();
        assert!(verify_run(&inst, &run(&[(9, q(0, 1))], Rational::ONE), None).is_err());
    }

    #[test]
    fn tour_reports_missing() {
        let inst = two_far();
        let tour = ServiceTour::new(run(&[(0, q(0, 1))], Rational::ONE));
        let report = verify_tour(&inst, &tour, None).unwrap();
        assert!(report.has(ViolationKind::MissingRequest));
    }

    #[test]
    fn fixed_order_examples() {
        let inst = two_far();
        let m = &inst.metric;
        assert_eq!(fixed_order_min_speed(m, &[Stop::new(0, q(0, 1), q(1, 1))]), Extended::ZERO);
        let stops = [Stop::new(0, q(0, 1), q(1, 2)), Stop::new(2, q(1, 2), q(1, 1))];
        assert_eq!(fixed_order_min_speed(m, &stops), Extended::Finite(q(3, 1)));
        let same = [Stop::new(1, q(0, 1), q(1, 2)), Stop::new(1, q(1, 2), q(1, 1))];
        assert_eq!(fixed_order_min_speed(m, &same), Extended::ZERO);
        let backwards = [Stop::new(1, q(1, 2), q(1, 1)), Stop::new(1, q(0, 1), q(1, 2))];
        assert_eq!(fixed_order_min_speed(m, &backwards), Extended::Infinite);
    }

    #[test]
    fn infimum_is_sharp_for_the_example() {
        // Brute force over a grid of service times: feasible just above 3, not at or below.
        let inst = two_far();
        let m = &inst.metric;
        let stops = [Stop::new(0, q(0, 1), q(1, 2)), Stop::new(2, q(1, 2), q(1, 1))];
        let grid: Vec<Rational> = (0..=100).map(|i| q(i, 100)).collect();
        let feasible_at = |s: Rational| {
            grid.iter().any(|&t0| {
                grid.iter().any(|&t1| t0 < q(1, 2) && q(1, 2) <= t1 && t1 < q(1, 1) && q(3, 1) <= s * (t1 - t0))
            })
        };
        assert!(feasible_at(q(3, 1) + q(1, 10)));
        assert!(!feasible_at(q(3, 1)));
        assert!(simulate_earliest(m, &stops, q(301, 100)).is_some());
        assert!(simulate_earliest(m, &stops, q(3, 1)).is_none());
    }
}
