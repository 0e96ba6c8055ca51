//! Service durations folded into the metric as pendant edges.
//!
//! A request that takes `μ` time to service is moved to a fresh leaf at
//! distance `μ/2` from its node. Walking to the leaf and back accounts for
//! the duration at unit speed.

use crate::error::{Error, Result};
use crate::model::{Instance, RequestId, ServiceRequest, ServiceRun};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ServiceModel {
    /// The whole service interval must lie inside the window. Uniform `μ < 1`.
    Contained(Rational),
    /// Only the start of service must lie inside the window; one `μ_r` per request,
    /// in the instance's request order.
    StartOnly(Vec<Rational>),
}

/// Rewrites `instance` so that services of positive duration become instants.
///
/// Request ids are preserved. A zero duration leaves its request untouched.
pub fn service_time_transform(instance: &Instance, model: &ServiceModel) -> Result<Instance> {
    let durations: Vec<Rational> = match model {
        ServiceModel::Contained(mu) => {
            if mu.is_negative() || *mu >= Rational::ONE {
                return Err(Error::InvalidParameter(format!("contained service time {mu} must lie in [0, 1)")));
            }
            for r in &instance.requests {
                if *mu >= r.window_length {
                    return Err(Error::InvalidWindow {
                        request: r.id,
                        reason: format!("service time {mu} does not fit in window length {}", r.window_length),
                    });
                }
            }
            vec![*mu; instance.requests.len()]
        }
        ServiceModel::StartOnly(mus) => {
            if mus.len() != instance.requests.len() {
                return Err(Error::InvalidParameter(format!(
                    "{} service times for {} requests",
                    mus.len(),
                    instance.requests.len()
                )));
            }
            if let Some(mu) = mus.iter().find(|m| m.is_negative()) {
                return Err(Error::InvalidParameter(format!("negative service time {mu}")));
            }
            mus.clone()
        }
    };

    let leaves: Vec<(usize, Rational)> = instance
        .requests
        .iter()
        .zip(&durations)
        .filter(|(_, mu)| mu.is_positive())
        .map(|(r, mu)| (r.node, *mu / Rational::from(2u32)))
        .collect();
    let (metric, ids) = instance.metric.with_leaves(&leaves);

    let mut fresh = ids.into_iter();
    let requests = instance
        .requests
        .iter()
        .zip(&durations)
        .map(|(r, mu)| {
            if mu.is_zero() {
                return r.clone();
            }
            let half = *mu / Rational::from(2u32);
            let (start, length) = match model {
                ServiceModel::Contained(_) => (r.window_start + half, r.window_length - *mu),
                ServiceModel::StartOnly(_) => (r.window_start + half, r.window_length),
            };
            ServiceRequest {
                id: r.id,
                node: fresh.next().expect("one leaf per positive duration"),
                window_start: start,
                window_length: length,
                profit: r.profit,
            }
        })
        .collect();
    Instance::new(metric, requests)
}

/// Interval `[start, end]` during which a request is being serviced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ServiceInterval {
    pub request: RequestId,
    pub start: Rational,
    pub end: Rational,
}

/// Maps a unit-speed run on a transformed instance back to service intervals
/// on the original: an instant at time `τ` on a leaf becomes `[τ − μ/2, τ + μ/2]`.
pub fn map_back(original: &Instance, model: &ServiceModel, run: &ServiceRun) -> Result<Vec<ServiceInterval>> {
    run.events
        .iter()
        .map(|e| {
            let pos = original.position(e.request).ok_or(Error::UnknownRequest(e.request))?;
            let mu = match model {
                ServiceModel::Contained(mu) => *mu,
                ServiceModel::StartOnly(mus) => mus[pos],
            };
            let half = mu / Rational::from(2u32);
            Ok(ServiceInterval { request: e.request, start: e.time - half, end: e.time + half })
        })
        .collect()
}
