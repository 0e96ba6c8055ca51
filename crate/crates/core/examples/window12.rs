//! Windows with lengths in [1, 2): three grids, 22 trimmings, best run wins.

use twr::io::{generate_random, RandomParams};
use twr::multiwindow::{evaluate_bound12, PhasePlan, ProfitShareVector};
use twr::prelude::*;

fn main() -> Result<()> {
    let plan = PhasePlan::window12();
    for (i, phase) in plan.phases.iter().enumerate() {
        println!(
            "phase {i}: period {} offsets {:?} trim choices {} -> {} calls",
            phase.period_length,
            phase.offsets.iter().map(ToString::to_string).collect::<Vec<_>>(),
            phase.trim_choice_count,
            phase.invocations()
        );
    }

    let params = RandomParams::unit(MetricKind::Tree, 6, 6).with_lengths(Rational::ONE, Rational::from_int(2));
    let instance = generate_random(9, &params)?;
    let out = window12(&instance, Mode::Tree)?;
    let opt = brute_repairman(&instance, None, &OracleBudget::default())?.profit;
    println!("\nprofit {} of optimum {opt} after {} calls; best trimming {:?}", out.profit, out.invocations, out.best);

    for c in 0..5 {
        println!("guarantee if all profit sits in class {c}: {}", evaluate_bound12(&ProfitShareVector::corner(c)));
    }
    Ok(())
}
