use std::collections::{BTreeMap, HashMap};

use super::factorial::FactorialDigits;
use super::grid::PeriodGrid;
use crate::error::{Error, Result};
use crate::model::{Instance, RequestId, ServiceRequest};
use crate::rational::Rational;

/// Requests assigned to single grid periods inside their windows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrimmedInstance {
    pub grid: PeriodGrid,
    pub requests: Vec<ServiceRequest>,
    /// Parallel to `requests`; `None` marks an excluded request.
    pub assignment: Vec<Option<i64>>,
    index: HashMap<RequestId, usize>,
}

impl TrimmedInstance {
    pub fn new(grid: PeriodGrid, requests: Vec<ServiceRequest>, assignment: Vec<Option<i64>>) -> Result<Self> {
        assert_eq!(requests.len(), assignment.len());
        for (r, a) in requests.iter().zip(&assignment) {
            if let Some(i) = a {
                let (b, e) = grid.bounds(*i);
                if b < r.window_start || e > r.window_end() {
                    return Err(Error::InvalidWindow {
                        request: r.id,
                        reason: format!("period [{b}, {e}) is not inside the window"),
                    });
                }
            }
        }
        let index = requests.iter().enumerate().map(|(p, r)| (r.id, p)).collect();
        Ok(TrimmedInstance { grid, requests, assignment, index })
    }

    pub fn period_of(&self, id: RequestId) -> Option<i64> {
        self.index.get(&id).and_then(|&p| self.assignment[p])
    }

    /// Trimmed window of `id`, or `None` when excluded or unknown.
    pub fn target(&self, id: RequestId) -> Option<(Rational, Rational)> {
        self.period_of(id).map(|i| self.grid.bounds(i))
    }

    pub fn is_excluded(&self, id: RequestId) -> bool {
        self.period_of(id).is_none()
    }

    /// Occupied periods in time order, each with the positions of its requests.
    pub fn periods(&self) -> Vec<(i64, Vec<usize>)> {
        let mut map: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (pos, a) in self.assignment.iter().enumerate() {
            if let Some(i) = a {
                map.entry(*i).or_default().push(pos);
            }
        }
        map.into_iter().collect()
    }

    pub fn occupied_periods(&self) -> Vec<i64> {
        self.periods().into_iter().map(|(i, _)| i).collect()
    }

    pub fn included(&self) -> impl Iterator<Item = &ServiceRequest> + '_ {
        self.requests.iter().zip(&self.assignment).filter(|(_, a)| a.is_some()).map(|(r, _)| r)
    }

    pub fn included_profit(&self) -> u64 {
        self.included().map(|r| r.profit).sum()
    }

    /// The instance whose windows are the trimmed periods; excluded requests dropped.
    pub fn as_instance(&self, base: &Instance) -> Result<Instance> {
        let requests = self
            .requests
            .iter()
            .zip(&self.assignment)
            .filter_map(|(r, a)| {
                a.map(|i| ServiceRequest {
                    window_start: self.grid.begin(i),
                    window_length: self.grid.length,
                    ..r.clone()
                })
            })
            .collect();
        base.with_requests(requests)
    }
}

/// Assigns each request to its earliest wholly contained period of `grid`;
/// requests containing no period are excluded.
pub fn trim_earliest(instance: &Instance, grid: PeriodGrid) -> Result<TrimmedInstance> {
    let assignment = instance
        .requests
        .iter()
        .map(|r| {
            let range = grid.contained(r.window_start, r.window_end());
            (range.start() <= range.end()).then(|| *range.start())
        })
        .collect();
    TrimmedInstance::new(grid, instance.requests.clone(), assignment)
}

/// Unit windows onto half-length periods from time 0.
///
/// A window starting on a period boundary contains two periods and takes the
/// earlier one.
pub fn trim_unit(instance: &Instance) -> Result<TrimmedInstance> {
    if let Some(r) = instance.requests.iter().find(|r| r.window_length != Rational::ONE) {
        return Err(Error::InvalidWindow {
            request: r.id,
            reason: format!("unit trimming needs length 1, found {}", r.window_length),
        });
    }
    trim_earliest(instance, PeriodGrid::unit())
}

/// Trims each request with `v` contained periods to its `(1 + d_{v-1})`-th
/// contained period, with `d_0 = 0`. Requests with `v = 0` are excluded.
pub fn trim_general(instance: &Instance, grid: PeriodGrid, choice: &FactorialDigits) -> Result<TrimmedInstance> {
    let assignment = instance
        .requests
        .iter()
        .map(|r| {
            let range = grid.contained(r.window_start, r.window_end());
            let v = range.end() - range.start() + 1;
            if v <= 0 {
                return None;
            }
            let w = choice.digit((v - 1) as usize) as i64;
            debug_assert!(w < v);
            Some(range.start() + w)
        })
        .collect();
    TrimmedInstance::new(grid, instance.requests.clone(), assignment)
}
