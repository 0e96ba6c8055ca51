use crate::deliveryman::{delivery_graph, delivery_tree, DeliveryResult};
use crate::error::{Error, Result};
use crate::model::Instance;
use crate::rational::Rational;
use crate::repairman::Mode;
use crate::trimming::{trim_earliest, PeriodGrid, TrimmedInstance};

#[derive(Debug, Clone)]
pub struct BoundedDelivery {
    pub result: DeliveryResult,
    pub trimmed: TrimmedInstance,
    /// `D`, the longest window length rounded up.
    pub class: u32,
    /// `2D + 2`: the speed lost to trimming at most.
    pub trim_factor: Rational,
}

/// `⌈L_max⌉` for an instance whose lengths are all at least 1.
pub fn ratio_class(instance: &Instance) -> Result<u32> {
    let mut longest = Rational::ONE;
    for r in &instance.requests {
        if r.window_length < Rational::ONE {
            return Err(Error::InvalidWindow {
                request: r.id,
                reason: format!("length {} below 1; rescale first", r.window_length),
            });
        }
        longest = longest.max(r.window_length);
    }
    u32::try_from(longest.ceil()).map_err(|_| Error::InvalidParameter(format!("length {longest} too large")))
}

/// Trims every window to its earliest contained half period and runs the
/// trimmed deliveryman solver. The tour speed is at most
/// `(2D + 2)·δ` times optimal, with `δ = 1 + ε` on trees and `2` on graphs.
pub fn delivery_bounded(instance: &Instance, epsilon: Rational, mode: Mode) -> Result<BoundedDelivery> {
    let class = ratio_class(instance)?;
    let trimmed = trim_earliest(instance, PeriodGrid::unit())?;
    let result = match mode {
        Mode::Tree => delivery_tree(instance, &trimmed, epsilon)?,
        Mode::Graph => delivery_graph(instance, &trimmed)?,
    };
    Ok(BoundedDelivery { result, trimmed, class, trim_factor: Rational::from(2 * class + 2) })
}
