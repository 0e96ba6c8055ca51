#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twr::io::{generate_random, RandomParams};
use twr::verify::{simulate_earliest, Stop};
use twr::{Instance, MetricKind, Rational, RequestId, ServiceEvent, ServiceRun, ServiceTour};

/// A random instance whose node and request counts are drawn from the seed.
pub fn sized(
    seed: u64,
    kind: MetricKind,
    max_nodes: usize,
    max_requests: usize,
    min_length: Rational,
    max_length: Rational,
) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let nodes = rng.gen_range(1..=max_nodes);
    let requests = rng.gen_range(1..=max_requests);
    let params = RandomParams { nodes, kind, requests, min_length, max_length, ..Default::default() };
    generate_random(seed, &params).expect("valid params")
}

pub fn unit(seed: u64, kind: MetricKind, max_nodes: usize, max_requests: usize) -> Instance {
    sized(seed, kind, max_nodes, max_requests, Rational::ONE, Rational::ONE)
}

/// Tour visiting `order` at `speed`, or a hair faster when `speed` is an
/// unattained infimum.
pub fn realize(instance: &Instance, order: &[RequestId], speed: Rational) -> Option<ServiceTour> {
    let stops: Vec<Stop> = order
        .iter()
        .map(|&id| {
            let r = instance.request(id).unwrap();
            Stop::new(r.node, r.window_start, r.window_end())
        })
        .collect();
    let nudge = Rational::ONE + Rational::new(1, 1_000_000_000_000);
    let (speed, times) = match simulate_earliest(&instance.metric, &stops, speed) {
        Some(t) => (speed, t),
        None => (speed * nudge, simulate_earliest(&instance.metric, &stops, speed * nudge)?),
    };
    let events = order.iter().zip(times).map(|(&id, t)| ServiceEvent::new(id, t)).collect();
    Some(ServiceTour::new(ServiceRun::new(events, speed)))
}

pub fn slack() -> Rational {
    Rational::ONE + Rational::new(1, 1_000_000_000)
}
