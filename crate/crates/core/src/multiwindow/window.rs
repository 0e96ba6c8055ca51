use rayon::prelude::*;

use super::plan::{max_window, PhasePlan};
use crate::error::{Error, Result};
use crate::model::{Instance, RequestId, ServiceEvent, ServiceRequest, ServiceRun};
use crate::rational::Rational;
use crate::repairman::{solve_repairman_with, ExactPathSolver, Mode, PathSolver};
use crate::trimming::{factorial_encode, trim_general, PeriodGrid};
use crate::verify::verify_run;

/// Which grid and trim choice produced a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrimChoice {
    pub phase: usize,
    pub offset: usize,
    pub choice: u128,
}

#[derive(Debug, Clone)]
pub struct WindowOutcome {
    pub run: ServiceRun,
    pub profit: u64,
    /// Number of base-solver calls made.
    pub invocations: u128,
    pub best: Option<TrimChoice>,
}

fn check_lengths(instance: &Instance, lo: Rational, hi: Rational, hi_open: bool) -> Result<()> {
    for r in &instance.requests {
        let l = r.window_length;
        if l < lo || l > hi || (hi_open && l == hi) {
            let close = if hi_open { ")" } else { "]" };
            return Err(Error::InvalidWindow {
                request: r.id,
                reason: format!("length {l} outside [{lo}, {hi}{close}"),
            });
        }
    }
    Ok(())
}

/// Runs every (grid, trim choice) of `plan` and keeps the most profitable
/// run; ties go to the earliest in enumeration order.
pub fn run_plan(instance: &Instance, plan: &PhasePlan, mode: Mode, solver: &dyn PathSolver) -> Result<WindowOutcome> {
    let jobs: Vec<TrimChoice> = plan
        .phases
        .iter()
        .enumerate()
        .flat_map(|(phase, ph)| {
            (0..ph.offsets.len()).flat_map(move |offset| {
                (0..ph.trim_choice_count).map(move |choice| TrimChoice { phase, offset, choice })
            })
        })
        .collect();
    let results: Vec<(u64, ServiceRun)> = jobs
        .par_iter()
        .map(|job| {
            let ph = &plan.phases[job.phase];
            let grid = PeriodGrid::new(ph.period_length, ph.offsets[job.offset]);
            let digits = factorial_encode(job.choice, ph.digit_width)?;
            let trimmed = trim_general(instance, grid, &digits)?;
            let run = solve_repairman_with(instance, &trimmed, mode, solver)?;
            Ok((run.profit(instance), run))
        })
        .collect::<Result<_>>()?;

    let mut best: Option<usize> = None;
    for (k, (profit, _)) in results.iter().enumerate() {
        if best.is_none_or(|b| *profit > results[b].0) {
            best = Some(k);
        }
    }
    let (profit, run) = match best {
        Some(b) => results[b].clone(),
        None => (0, ServiceRun::empty(Rational::ONE)),
    };
    let report = verify_run(instance, &run, None)?;
    if !report.feasible {
        return Err(Error::Infeasible(report.to_string()));
    }
    Ok(WindowOutcome { run, profit, invocations: results.len() as u128, best: best.map(|b| jobs[b]) })
}

/// Best run over the full enumeration for window lengths in `[1, 1 + p/2^g]`.
pub fn windowg(instance: &Instance, p: u32, g: u32, mode: Mode) -> Result<WindowOutcome> {
    windowg_with(instance, p, g, mode, &ExactPathSolver)
}

pub fn windowg_with(instance: &Instance, p: u32, g: u32, mode: Mode, solver: &dyn PathSolver) -> Result<WindowOutcome> {
    let plan = PhasePlan::windowg(p, g)?;
    check_lengths(instance, Rational::ONE, max_window(p, g)?, false)?;
    run_plan(instance, &plan, mode, solver)
}

/// Best run over the 22 trimmings for window lengths in `[1, 2)`.
pub fn window12(instance: &Instance, mode: Mode) -> Result<WindowOutcome> {
    window12_with(instance, mode, &ExactPathSolver)
}

pub fn window12_with(instance: &Instance, mode: Mode, solver: &dyn PathSolver) -> Result<WindowOutcome> {
    let plan = PhasePlan::windowg(2, 1)?;
    assert_eq!(plan, PhasePlan::window12(), "windowg(2, 1) drifted from the three-phase plan");
    check_lengths(instance, Rational::ONE, Rational::from_int(2), true)?;
    run_plan(instance, &plan, mode, solver)
}

/// Requests whose lengths, after dividing by the shortest, fall in
/// `(b^r, b^(r+1)]` (class 0 also takes length 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthClass {
    pub exponent: u32,
    /// Factor taking original times and distances into the class frame.
    pub scale: Rational,
    pub requests: Vec<RequestId>,
}

pub fn length_classes(instance: &Instance, p: u32, g: u32) -> Result<Vec<LengthClass>> {
    let b = max_window(p, g)?;
    let shortest = instance
        .requests
        .iter()
        .map(|r| r.window_length)
        .min()
        .ok_or_else(|| Error::InvalidParameter("no requests to partition".into()))?;
    let norm = shortest.recip();
    let mut classes: Vec<LengthClass> = Vec::new();
    for r in &instance.requests {
        let len = r.window_length * norm;
        let mut exponent = 0u32;
        let mut top = b;
        while len > top {
            exponent += 1;
            top = top * b;
        }
        match classes.iter_mut().find(|c| c.exponent == exponent) {
            Some(c) => c.requests.push(r.id),
            None => classes.push(LengthClass { exponent, scale: norm * b.pow(exponent).recip(), requests: vec![r.id] }),
        }
    }
    classes.sort_by_key(|c| c.exponent);
    Ok(classes)
}

/// Multiplies all times and distances by `factor`.
pub fn rescale_instance(instance: &Instance, factor: Rational) -> Result<Instance> {
    let requests = instance
        .requests
        .iter()
        .map(|r| ServiceRequest {
            window_start: r.window_start * factor,
            window_length: r.window_length * factor,
            ..r.clone()
        })
        .collect();
    Instance::new(instance.metric.scaled(factor), requests)
}

/// Multiplies all event times by `factor`; the speed is unchanged because
/// distances scale with them.
pub fn rescale_run(run: &ServiceRun, factor: Rational) -> ServiceRun {
    let events = run.events.iter().map(|e| ServiceEvent::new(e.request, e.time * factor)).collect();
    ServiceRun::new(events, run.speed)
}

#[derive(Debug, Clone)]
pub struct ClassOutcome {
    pub class: LengthClass,
    pub outcome: WindowOutcome,
}

#[derive(Debug, Clone)]
pub struct GdOutcome {
    pub run: ServiceRun,
    pub profit: u64,
    pub classes: Vec<ClassOutcome>,
    pub best_class: Option<usize>,
}

/// Runs [`windowg`] on each length class separately and returns the best run
/// in the original time frame.
pub fn windowgd(instance: &Instance, p: u32, g: u32, mode: Mode) -> Result<GdOutcome> {
    windowgd_with(instance, p, g, mode, &ExactPathSolver)
}

pub fn windowgd_with(instance: &Instance, p: u32, g: u32, mode: Mode, solver: &dyn PathSolver) -> Result<GdOutcome> {
    let classes = length_classes(instance, p, g)?;
    let mut outcomes = Vec::with_capacity(classes.len());
    let mut best: Option<(usize, u64, ServiceRun)> = None;
    for (k, class) in classes.into_iter().enumerate() {
        let members = instance.requests.iter().filter(|r| class.requests.contains(&r.id)).cloned().collect();
        let sub = rescale_instance(&instance.with_requests(members)?, class.scale)?;
        let outcome = windowg_with(&sub, p, g, mode, solver)?;
        let run = rescale_run(&outcome.run, class.scale.recip());
        if best.as_ref().is_none_or(|(_, bp, _)| outcome.profit > *bp) {
            best = Some((k, outcome.profit, run));
        }
        outcomes.push(ClassOutcome { class, outcome });
    }
    let (best_class, profit, run) = best.expect("at least one class");
    let report = verify_run(instance, &run, None)?;
    if !report.feasible {
        return Err(Error::Infeasible(report.to_string()));
    }
    Ok(GdOutcome { run, profit, classes: outcomes, best_class: Some(best_class) })
}
