//! Time-windowed routing on trees and metric graphs.
//!
//! Two objectives are covered. The repairman maximizes serviced profit at
//! unit speed; the deliveryman services every request and minimizes the speed
//! needed. Windows are first trimmed onto a grid of short periods, where exact
//! or near-exact solvers run, and the loss from trimming is bounded by a
//! constant factor. Every quantity is an exact rational.
//!
//! ```
//! use twr::prelude::*;
//!
//! let metric = build_metric(2, MetricKind::Tree, vec![Edge::new(0, 1, q(1, 4))]).unwrap();
//! let instance = Instance::new(
//!     metric,
//!     vec![
//!         ServiceRequest::new(0, 0, q(0, 1), Rational::ONE),
//!         ServiceRequest::new(1, 1, q(1, 2), Rational::ONE),
//!     ],
//! )
//! .unwrap();
//! let trimmed = trim_unit(&instance).unwrap();
//! let run = solve_repairman(&instance, &trimmed, Mode::Tree).unwrap();
//! assert_eq!(run.profit(&instance), 2);
//! ```

pub mod deliveryman;
pub mod error;
pub mod io;
pub mod metric;
pub mod model;
pub mod multiwindow;
pub mod oracle;
pub mod rational;
pub mod repairman;
pub mod service_time;
pub mod trimming;
pub mod verify;

pub use error::{Error, Result};
pub use metric::{build_metric, Edge, MetricInstance, MetricKind};
pub use model::{Instance, RequestId, ServiceEvent, ServiceRequest, ServiceRun, ServiceTour};
pub use rational::{q, Extended, Rational};

pub mod prelude {
    pub use crate::deliveryman::{delivery_graph, delivery_tree, test_speed, DeliveryResult};
    pub use crate::error::{Error, Result};
    pub use crate::metric::{build_metric, Edge, MetricInstance, MetricKind};
    pub use crate::model::{Instance, RequestId, ServiceEvent, ServiceRequest, ServiceRun, ServiceTour};
    pub use crate::multiwindow::{delivery_bounded, window12, windowg, windowgd};
    pub use crate::oracle::{brute_deliveryman, brute_repairman, OracleBudget};
    pub use crate::rational::{q, Extended, Rational};
    pub use crate::repairman::{solve_repairman, solve_repairman_with, Mode};
    pub use crate::trimming::{trim_general, trim_unit, PeriodGrid, TrimmedInstance};
    pub use crate::verify::{fixed_order_min_speed, verify_run, verify_tour, VerifyReport};
}
