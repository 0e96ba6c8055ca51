//! Profit-maximizing runs at unit speed on trimmed windows.

mod kssp;
mod period;
mod profile;

pub use kssp::{
    kssp_exact, reduced_path, ExactPathSolver, HalvingPathSolver, PathAnswer, PathContext, PathSolver,
    DEFAULT_EXACT_CAP,
};
pub use period::{build_arrival_table, periods_of, ArrivalTable, Mode, Period};
pub use profile::{path_profile, sweep_tree, ProfitCostProfile, SweepTable};

use crate::error::{Error, Result};
use crate::model::{Instance, ServiceRun};
use crate::trimming::TrimmedInstance;
use crate::verify::verify_run;

/// Best run on the trimmed windows using the exact path solver.
///
/// In tree mode the profit is optimal among runs that respect the trimming.
pub fn solve_repairman(instance: &Instance, trimmed: &TrimmedInstance, mode: Mode) -> Result<ServiceRun> {
    solve_repairman_with(instance, trimmed, mode, &ExactPathSolver)
}

/// Like [`solve_repairman`] with a chosen k-path solver for graph mode.
/// The result is checked against the trimmed windows before it is returned.
pub fn solve_repairman_with(
    instance: &Instance,
    trimmed: &TrimmedInstance,
    mode: Mode,
    solver: &dyn PathSolver,
) -> Result<ServiceRun> {
    let table = build_arrival_table(instance, trimmed, mode, solver)?;
    let run = period::best_run(&table);
    let report = verify_run(instance, &run, Some(trimmed))?;
    if !report.feasible {
        return Err(Error::Infeasible(report.to_string()));
    }
    Ok(run)
}
