//! Racing-tour witnesses: a tour on trimmed half-period windows obtained by
//! moving back and forth along a tour on the original windows.
//!
//! Within each unit block `[T, T+1)` the racer runs forward for one period,
//! backward for `(F−1)/F` periods and forward for `1/F` periods, all at `F`
//! times the base speed. The net advance over the block is one time unit of
//! the base tour, and every base time in `[T − 1/2, T − 1/2 + F/2]` is passed
//! during the block.

use super::grid::PeriodGrid;
use super::trim::{trim_earliest, TrimmedInstance};
use crate::error::{Error, Result};
use crate::model::{Instance, RequestId, ServiceEvent, ServiceRun, ServiceTour};
use crate::rational::Rational;
use crate::verify::verify_tour;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowClass {
    /// All windows of length exactly 1.
    Unit,
    /// Window lengths in `[1, 2)`.
    OneToTwo,
    /// Window lengths in `[1, D]`.
    Bounded(u32),
}

impl WindowClass {
    pub fn factor(&self) -> Rational {
        match self {
            WindowClass::Unit => Rational::from(4u32),
            WindowClass::OneToTwo => Rational::from(6u32),
            WindowClass::Bounded(d) => Rational::from(2 * d + 2),
        }
    }

    fn admits(&self, length: Rational) -> bool {
        match self {
            WindowClass::Unit => length == Rational::ONE,
            WindowClass::OneToTwo => Rational::ONE <= length && length < Rational::from(2u32),
            WindowClass::Bounded(d) => Rational::ONE <= length && length <= Rational::from(*d),
        }
    }
}

/// Arc-length parameterization of a base run: it leaves each event
/// immediately at its speed, waits at the next node, and is stationary before
/// its first event and after its last.
#[derive(Debug, Clone)]
pub struct ArcTour {
    times: Vec<Rational>,
    offsets: Vec<Rational>,
    legs: Vec<Rational>,
    speed: Rational,
}

impl ArcTour {
    pub fn new(instance: &Instance, run: &ServiceRun) -> Result<ArcTour> {
        let mut times = Vec::with_capacity(run.len());
        let mut offsets = Vec::with_capacity(run.len());
        let mut legs = Vec::with_capacity(run.len());
        let mut acc = Rational::ZERO;
        let mut prev_node = None;
        for e in &run.events {
            let node = instance.request(e.request)?.node;
            if let Some(p) = prev_node {
                let d = instance.dist(p, node);
                legs.push(d);
                acc += d;
            }
            times.push(e.time);
            offsets.push(acc);
            prev_node = Some(node);
        }
        Ok(ArcTour { times, offsets, legs, speed: run.speed })
    }

    pub fn length(&self) -> Rational {
        self.offsets.last().copied().unwrap_or(Rational::ZERO)
    }

    /// Arc position of the base run at time `t`.
    pub fn position(&self, t: Rational) -> Rational {
        if self.times.is_empty() || t <= self.times[0] {
            return Rational::ZERO;
        }
        let k = self.times.partition_point(|&x| x <= t) - 1;
        if k + 1 >= self.times.len() {
            return self.length();
        }
        let moved = (self.speed * (t - self.times[k])).min(self.legs[k]);
        self.offsets[k] + moved
    }

    pub fn event_position(&self, k: usize) -> Rational {
        self.offsets[k]
    }
}

/// The piecewise-linear map from racer time to base time for factor `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RacingPattern {
    pub factor: Rational,
}

impl RacingPattern {
    pub fn new(factor: Rational) -> Self {
        assert!(factor > Rational::ONE, "racing factor must exceed 1");
        RacingPattern { factor }
    }

    /// Offset inside a block where the backward leg ends.
    fn turn(&self) -> Rational {
        Rational::HALF + (self.factor - Rational::ONE) / (Rational::from(2u32) * self.factor)
    }

    /// Base time whose position the racer occupies at time `t`.
    pub fn base_time(&self, t: Rational) -> Rational {
        let f = self.factor;
        let block = Rational::from_int(t.floor());
        let u = t - block;
        if u <= Rational::HALF {
            block - Rational::HALF + f * u
        } else if u <= self.turn() {
            block - Rational::HALF + f * Rational::HALF - f * (u - Rational::HALF)
        } else {
            block + f * (u - self.turn())
        }
    }

    /// Earliest racer time in the half-open `period` at which the racer sits
    /// at base time `target`.
    pub fn earliest_visit(&self, period: (Rational, Rational), target: Rational) -> Option<Rational> {
        let f = self.factor;
        let (p, p_end) = period;
        let block = Rational::from_int(p.floor());
        let half = block + Rational::HALF;
        let turn = block + self.turn();
        let mut candidates = [
            // forward leg on [block, block + 1/2]
            (block + (target - block + Rational::HALF) / f, block, half),
            // backward leg on [block + 1/2, turn]
            (half + (block - Rational::HALF + f * Rational::HALF - target) / f, half, turn),
            // final forward leg on [turn, block + 1]
            (turn + (target - block) / f, turn, block + Rational::ONE),
        ];
        candidates.sort();
        candidates.into_iter().find(|&(t, lo, hi)| lo <= t && t <= hi && p <= t && t < p_end).map(|(t, _, _)| t)
    }
}

/// The unit-window service time from the case analysis for factor 4:
/// base service at `t`, trimmed period starting at `period_begin`.
pub fn unit_service_time(t: Rational, period_begin: Rational) -> Rational {
    let quarter = Rational::new(1, 4);
    let i = (t * Rational::from(2u32)).floor();
    let ti = Rational::new(i, 2);
    let half = Rational::HALF;
    if i.rem_euclid(2) == 1 {
        if period_begin == ti - half {
            ti + quarter * ((t - ti) - Rational::ONE)
        } else if period_begin == ti {
            ti + quarter * ((ti - t) + Rational::ONE)
        } else {
            ti + quarter * ((t - ti) + Rational::from(2u32))
        }
    } else if period_begin == ti - half {
        ti + quarter * ((ti - t) - Rational::new(3, 2))
    } else if period_begin == ti {
        ti + quarter * ((t - ti) + half)
    } else {
        ti + quarter * ((ti - t) + Rational::new(7, 2))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessEvent {
    pub request: RequestId,
    pub time: Rational,
    pub arc_position: Rational,
}

/// A racing schedule together with the base tour it follows.
#[derive(Debug, Clone)]
pub struct RacingWitness {
    pub base: ServiceRun,
    pub factor: Rational,
    pub trimmed: TrimmedInstance,
    /// Sorted by time.
    pub schedule: Vec<WitnessEvent>,
    arc: ArcTour,
    pattern: RacingPattern,
}

impl RacingWitness {
    /// Arc position of the racer at time `t`.
    pub fn position_at(&self, t: Rational) -> Rational {
        self.arc.position(self.pattern.base_time(t))
    }

    pub fn speed(&self) -> Rational {
        self.factor * self.base.speed
    }

    pub fn as_run(&self) -> ServiceRun {
        ServiceRun::new(self.schedule.iter().map(|e| ServiceEvent::new(e.request, e.time)).collect(), self.speed())
    }

    pub fn as_tour(&self) -> ServiceTour {
        ServiceTour::new(self.as_run())
    }
}

/// Builds the racing witness for `tour`, which must be feasible on the
/// untrimmed windows at its own speed. Windows are trimmed to their earliest
/// contained half-period.
pub fn racing_tour(instance: &Instance, tour: &ServiceTour, class: WindowClass) -> Result<RacingWitness> {
    if let Some(r) = instance.requests.iter().find(|r| !class.admits(r.window_length)) {
        return Err(Error::InvalidWindow {
            request: r.id,
            reason: format!("length {} outside the window class {:?}", r.window_length, class),
        });
    }
    let report = verify_tour(instance, tour, None)?;
    if !report.feasible {
        return Err(Error::Infeasible(format!("base tour rejected: {report}")));
    }
    let trimmed = trim_earliest(instance, PeriodGrid::unit())?;
    let arc = ArcTour::new(instance, &tour.run)?;
    let factor = class.factor();
    let pattern = RacingPattern::new(factor);

    let mut schedule = Vec::with_capacity(tour.run.len());
    for (k, e) in tour.run.events.iter().enumerate() {
        let period = trimmed
            .target(e.request)
            .ok_or_else(|| Error::Infeasible(format!("request {} has no contained period", e.request)))?;
        let time = match class {
            WindowClass::Unit => unit_service_time(e.time, period.0),
            _ => pattern.earliest_visit(period, e.time).ok_or_else(|| {
                Error::Infeasible(format!("racer never reaches request {} inside its period", e.request))
            })?,
        };
        schedule.push(WitnessEvent { request: e.request, time, arc_position: arc.event_position(k) });
    }
    schedule.sort_by(|a, b| a.time.cmp(&b.time).then(a.arc_position.cmp(&b.arc_position)));
    Ok(RacingWitness { base: tour.run.clone(), factor, trimmed, schedule, arc, pattern })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn block_landmarks_for_factor_four() {
        let p = RacingPattern::new(q(4, 1));
        for block in [-2i128, 0, 3] {
            let t = Rational::from_int(block);
            assert_eq!(p.base_time(t), t - Rational::HALF);
            assert_eq!(p.base_time(t + q(1, 2)), t + q(3, 2));
            assert_eq!(p.base_time(t + q(7, 8)), t);
            assert_eq!(p.base_time(t + Rational::ONE), t + q(1, 2));
        }
    }

    #[test]
    fn pattern_is_continuous_across_blocks() {
        for f in [4i128, 6, 8] {
            let p = RacingPattern::new(Rational::from_int(f));
            let just_before = p.base_time(q(1, 1) - q(1, 1_000_000));
            let at = p.base_time(q(1, 1));
            assert!((at - just_before).abs() <= Rational::from_int(f) * q(1, 1_000_000));
        }
    }

    #[test]
    fn unit_formulas_match_generic_inverse() {
        let p = RacingPattern::new(q(4, 1));
        for num in -20i128..40 {
            let t = q(num, 20);
            let i = (t * q(2, 1)).floor();
            let ti = q(i, 2);
            for begin in [ti - q(1, 2), ti, ti + q(1, 2)] {
                let generic = p.earliest_visit((begin, begin + q(1, 2)), t).unwrap();
                assert_eq!(unit_service_time(t, begin), generic, "t={t} begin={begin}");
                assert_eq!(p.base_time(generic), t);
            }
        }
    }

    #[test]
    fn bounded_factor() {
        assert_eq!(WindowClass::Bounded(3).factor(), q(8, 1));
        assert_eq!(WindowClass::OneToTwo.factor(), q(6, 1));
    }
}
