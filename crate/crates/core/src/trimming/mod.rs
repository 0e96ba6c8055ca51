//! Period grids, trimming schemes and the witnesses that bound their loss.

mod factorial;
mod grid;
mod loss;
mod racing;
mod trim;

pub use factorial::{factorial, factorial_decode, factorial_encode, FactorialDigits};
pub use grid::PeriodGrid;
pub use loss::{limited_loss_candidates, LossCandidates};
pub use racing::{racing_tour, unit_service_time, ArcTour, RacingPattern, RacingWitness, WindowClass, WitnessEvent};
pub use trim::{trim_earliest, trim_general, trim_unit, TrimmedInstance};
