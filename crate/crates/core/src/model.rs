//! Requests, instances and schedules.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::metric::MetricInstance;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RequestId(pub u32);

impl fmt::Display for RequestId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A demand at `node`, valid during the half-open window
/// `[window_start, window_start + window_length)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServiceRequest {
    pub id: RequestId,
    pub node: usize,
    pub window_start: Rational,
    pub window_length: Rational,
    pub profit: u64,
}

impl ServiceRequest {
    pub fn new(id: u32, node: usize, window_start: Rational, window_length: Rational) -> Self {
        ServiceRequest { id: RequestId(id), node, window_start, window_length, profit: 1 }
    }

    pub fn with_profit(mut self, profit: u64) -> Self {
        self.profit = profit;
        self
    }

    pub fn window_end(&self) -> Rational {
        self.window_start + self.window_length
    }

    pub fn contains(&self, time: Rational) -> bool {
        self.window_start <= time && time < self.window_end()
    }
}

/// A metric together with the requests placed on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub metric: MetricInstance,
    pub requests: Vec<ServiceRequest>,
    index: HashMap<RequestId, usize>,
}

impl Instance {
    /// Validates node ranges, positive lengths and profits, and unique ids.
    pub fn new(metric: MetricInstance, requests: Vec<ServiceRequest>) -> Result<Instance> {
        let mut index = HashMap::with_capacity(requests.len());
        for (pos, r) in requests.iter().enumerate() {
            if r.node >= metric.node_count() {
                return Err(Error::NodeOutOfRange { node: r.node, node_count: metric.node_count() });
            }
            if !r.window_length.is_positive() {
                return Err(Error::InvalidWindow {
                    request: r.id,
                    reason: format!("window length {} is not positive", r.window_length),
                });
            }
            if r.profit == 0 {
                return Err(Error::InvalidWindow { request: r.id, reason: "profit must be positive".into() });
            }
            if index.insert(r.id, pos).is_some() {
                return Err(Error::DuplicateRequest(r.id));
            }
        }
        Ok(Instance { metric, requests, index })
    }

    pub fn request(&self, id: RequestId) -> Result<&ServiceRequest> {
        self.index.get(&id).map(|&pos| &self.requests[pos]).ok_or(Error::UnknownRequest(id))
    }

    pub fn position(&self, id: RequestId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn total_profit(&self) -> u64 {
        self.requests.iter().map(|r| r.profit).sum()
    }

    pub fn dist(&self, u: usize, v: usize) -> Rational {
        self.metric.dist(u, v)
    }

    /// Same metric, different request list.
    pub fn with_requests(&self, requests: Vec<ServiceRequest>) -> Result<Instance> {
        Instance::new(self.metric.clone(), requests)
    }

    /// Ratio of the longest to the shortest window length, if any requests exist.
    pub fn length_ratio(&self) -> Option<Rational> {
        let min = self.requests.iter().map(|r| r.window_length).min()?;
        let max = self.requests.iter().map(|r| r.window_length).max()?;
        Some(max / min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ServiceEvent {
    pub request: RequestId,
    pub time: Rational,
}

impl ServiceEvent {
    pub fn new(request: RequestId, time: Rational) -> Self {
        ServiceEvent { request, time }
    }
}

/// Ordered service events performed at a common speed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServiceRun {
    pub events: Vec<ServiceEvent>,
    pub speed: Rational,
}

impl ServiceRun {
    pub fn new(events: Vec<ServiceEvent>, speed: Rational) -> Self {
        ServiceRun { events, speed }
    }

    pub fn empty(speed: Rational) -> Self {
        ServiceRun { events: Vec::new(), speed }
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Sum of request profits; unknown ids count as zero.
    pub fn profit(&self, instance: &Instance) -> u64 {
        self.events.iter().filter_map(|e| instance.request(e.request).ok()).map(|r| r.profit).sum()
    }

    pub fn requests(&self) -> impl Iterator<Item = RequestId> + '_ {
        self.events.iter().map(|e| e.request)
    }

    /// Shifts every event by `delta` time units.
    pub fn shifted(&self, delta: Rational) -> ServiceRun {
        ServiceRun {
            events: self.events.iter().map(|e| ServiceEvent::new(e.request, e.time + delta)).collect(),
            speed: self.speed,
        }
    }
}

/// A run that claims to service every request of its instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServiceTour {
    pub run: ServiceRun,
    pub covers_all: bool,
}

impl ServiceTour {
    pub fn new(run: ServiceRun) -> Self {
        ServiceTour { run, covers_all: true }
    }

    pub fn speed(&self) -> Rational {
        self.run.speed
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{build_metric, Edge, MetricKind};
    use crate::rational::q;

    fn line() -> MetricInstance {
        build_metric(2, MetricKind::Tree, vec![Edge::new(0, 1, q(1, 1))]).unwrap()
    }

    #[test]
    fn window_is_half_open() {
        let r = ServiceRequest::new(0, 0, q(0, 1), q(1, 1));
        assert!(r.contains(q(0, 1)));
        assert!(r.contains(q(99, 100)));
        assert!(!r.contains(q(1, 1)));
    }

    #[test]
    fn rejects_duplicates_and_ranges() {
        let a = ServiceRequest::new(4, 0, q(0, 1), q(1, 1));
        let err = Instance::new(line(), vec![a.clone(), a.clone()]).unwrap_err();
        assert_eq!(err, Error::DuplicateRequest(RequestId(4)));
        let far = ServiceRequest::new(1, 5, q(0, 1), q(1, 1));
        assert!(matches!(Instance::new(line(), vec![far]), Err(Error::NodeOutOfRange { .. })));
        let flat = ServiceRequest::new(1, 0, q(0, 1), q(0, 1));
        assert!(matches!(Instance::new(line(), vec![flat]), Err(Error::InvalidWindow { .. })));
    }

    #[test]
    fn lookup_and_profit() {
        let inst = Instance::new(
            line(),
            vec![
                ServiceRequest::new(7, 0, q(0, 1), q(1, 1)).with_profit(3),
                ServiceRequest::new(2, 1, q(0, 1), q(1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(inst.request(RequestId(7)).unwrap().profit, 3);
        assert_eq!(inst.request(RequestId(9)).unwrap_err(), Error::UnknownRequest(RequestId(9)));
        let run = ServiceRun::new(vec![ServiceEvent::new(RequestId(7), q(1, 2))], Rational::ONE);
        assert_eq!(run.profit(&inst), 3);
        assert_eq!(inst.total_profit(), 4);
    }
}
