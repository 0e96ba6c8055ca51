//! Drivers for windows of different lengths.

mod bound;
mod delivery;
mod plan;
mod window;

pub use bound::{evaluate_bound12, mixing_weights, phase_bounds, rho, ProfitShareVector};
pub use delivery::{delivery_bounded, ratio_class, BoundedDelivery};
pub use plan::{max_window, windowg_invocations, Phase, PhasePlan, MAX_PLAN_ORDER};
pub use window::{
    length_classes, rescale_instance, rescale_run, run_plan, window12, window12_with, windowg, windowg_with, windowgd,
    windowgd_with, ClassOutcome, GdOutcome, LengthClass, TrimChoice, WindowOutcome,
};
