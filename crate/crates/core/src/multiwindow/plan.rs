use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::trimming::factorial;

/// One period length with its grid offsets and number of trim choices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phase {
    pub period_length: Rational,
    pub offsets: Vec<Rational>,
    pub trim_choice_count: u128,
    /// Factorial digits needed to spell every trim choice.
    pub digit_width: usize,
}

impl Phase {
    pub fn invocations(&self) -> u128 {
        self.offsets.len() as u128 * self.trim_choice_count
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhasePlan {
    pub phases: Vec<Phase>,
}

/// Largest `p + g` accepted; beyond it the enumeration is hopeless anyway.
pub const MAX_PLAN_ORDER: u32 = 12;

fn check_pg(p: u32, g: u32) -> Result<()> {
    if p < 1 || g < 1 {
        return Err(Error::InvalidParameter(format!("p and g must be at least 1 (got p={p}, g={g})")));
    }
    if p + g > MAX_PLAN_ORDER {
        return Err(Error::InvalidParameter(format!("p + g = {} exceeds {MAX_PLAN_ORDER}", p + g)));
    }
    Ok(())
}

/// `b = 1 + p/2^g`, the longest window the plan for `(p, g)` handles.
pub fn max_window(p: u32, g: u32) -> Result<Rational> {
    check_pg(p, g)?;
    Ok(Rational::ONE + Rational::new(p as i128, 1i128 << g))
}

impl PhasePlan {
    /// Period lengths `(i + 2^g)·q` for `i = 0..=p` with `q = 1/2^(g+1)`,
    /// `i + 2^g` offsets spaced `q` apart and `(p + g − i)!` trim choices.
    pub fn windowg(p: u32, g: u32) -> Result<PhasePlan> {
        check_pg(p, g)?;
        let q = Rational::new(1, 1i128 << (g + 1));
        let base = 1i128 << g;
        let phases = (0..=p)
            .map(|i| {
                let slots = i as i128 + base;
                let width = (p + g - i) as usize - 1;
                Phase {
                    period_length: Rational::from_int(slots) * q,
                    offsets: (0..slots).map(|j| Rational::from_int(j) * q).collect(),
                    trim_choice_count: factorial(p + g - i),
                    digit_width: width,
                }
            })
            .collect();
        Ok(PhasePlan { phases })
    }

    /// The three-phase plan for lengths in `[1, 2)`, written out by hand.
    pub fn window12() -> PhasePlan {
        let quarters = |n: i128| (0..n).map(|j| Rational::new(j, 4)).collect::<Vec<_>>();
        PhasePlan {
            phases: vec![
                Phase {
                    period_length: Rational::new(1, 2),
                    offsets: quarters(2),
                    trim_choice_count: 6,
                    digit_width: 2,
                },
                Phase {
                    period_length: Rational::new(3, 4),
                    offsets: quarters(3),
                    trim_choice_count: 2,
                    digit_width: 1,
                },
                Phase { period_length: Rational::ONE, offsets: quarters(4), trim_choice_count: 1, digit_width: 0 },
            ],
        }
    }

    pub fn invocation_count(&self) -> u128 {
        self.phases.iter().map(Phase::invocations).sum()
    }
}

/// `Σ_{i=0..p} (i + 2^g)·(p + g − i)!`.
pub fn windowg_invocations(p: u32, g: u32) -> Result<u128> {
    check_pg(p, g)?;
    Ok((0..=p).map(|i| (i as u128 + (1u128 << g)) * factorial(p + g - i)).sum())
}
