//! Minimum-speed tours that service every trimmed request.

pub mod graph;
pub mod tree;

pub use graph::{delivery_graph, ChainPeriod, TourChain};
pub use tree::{
    delivery_tree, single_period_tree_length, single_period_tree_walk, test_speed, SpeedSchedule, SpeedTest,
};

use crate::error::{Error, Result};
use crate::model::ServiceTour;
use crate::rational::Rational;
use crate::trimming::TrimmedInstance;

/// A tour together with the speed it certifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeliveryResult {
    pub tour: ServiceTour,
    pub speed: Rational,
}

pub(crate) fn check_all_included(trimmed: &TrimmedInstance) -> Result<()> {
    match trimmed.requests.iter().zip(&trimmed.assignment).find(|(_, a)| a.is_none()) {
        Some((r, _)) => Err(Error::InvalidWindow {
            request: r.id,
            reason: "no contained period; every request must be serviced".into(),
        }),
        None => Ok(()),
    }
}
