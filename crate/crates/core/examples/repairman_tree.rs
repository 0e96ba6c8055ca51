//! Unit windows on a small tree: trim, solve exactly on the trimmed windows,
//! and compare with the exact optimum on the original windows.
//!
//! ```text
//! cargo run --example repairman_tree
//! ```

use twr::prelude::*;
use twr::trimming::limited_loss_candidates;

fn main() -> Result<()> {
    // A star with center 0 and three leaves.
    let metric = build_metric(
        4,
        MetricKind::Tree,
        vec![Edge::new(0, 1, q(1, 4)), Edge::new(0, 2, q(1, 2)), Edge::new(0, 3, q(3, 8))],
    )?;
    let one = Rational::ONE;
    let requests = vec![
        ServiceRequest::new(0, 1, q(0, 1), one),
        ServiceRequest::new(1, 2, q(1, 4), one),
        ServiceRequest::new(2, 3, q(3, 4), one),
        ServiceRequest::new(3, 0, q(1, 1), one),
        ServiceRequest::new(4, 1, q(7, 4), one).with_profit(2),
        ServiceRequest::new(5, 2, q(9, 4), one),
    ];
    let instance = Instance::new(metric, requests)?;

    let trimmed = trim_unit(&instance)?;
    for r in &instance.requests {
        let (a, b) = trimmed.target(r.id).unwrap();
        println!("request {}: window [{}, {}) trimmed to [{a}, {b})", r.id, r.window_start, r.window_end());
    }

    let run = solve_repairman(&instance, &trimmed, Mode::Tree)?;
    println!("\nrun on trimmed windows:");
    for e in &run.events {
        println!("  t = {:>5}  request {}", e.time, e.request);
    }
    assert!(verify_run(&instance, &run, Some(&trimmed))?.feasible);

    let budget = OracleBudget::default();
    let best = brute_repairman(&instance, None, &budget)?;
    let best_trimmed = brute_repairman(&instance, Some(&trimmed), &budget)?;
    println!(
        "\nprofit {} (trimmed optimum {}, untrimmed optimum {})",
        run.profit(&instance),
        best_trimmed.profit,
        best.profit
    );

    // The three shifted pieces of an untrimmed optimum; one keeps a third.
    let pieces = limited_loss_candidates(&best.run, &trimmed);
    for (name, piece) in ["target", "late", "early"].iter().zip(pieces.all()) {
        println!("  {name:>6} piece: profit {}", piece.profit(&instance));
    }
    Ok(())
}
