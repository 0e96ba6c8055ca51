//! Follow an optimal tour back and forth at four times its speed. Every
//! request is then met inside its trimmed half-unit period.

use twr::io::{generate_random, RandomParams};
use twr::prelude::*;
use twr::trimming::{racing_tour, WindowClass};
use twr::verify::{simulate_earliest, Stop};

fn main() -> Result<()> {
    let instance = generate_random(3, &RandomParams::unit(MetricKind::Tree, 5, 5))?;
    let opt = brute_deliveryman(&instance, None, &OracleBudget::default())?;
    let speed = opt.speed.expect_finite("optimum");

    let stops: Vec<Stop> = opt
        .order
        .iter()
        .map(|&id| {
            let r = instance.request(id).unwrap();
            Stop::new(r.node, r.window_start, r.window_end())
        })
        .collect();
    // Nudge past the infimum in case it is not attained.
    let speed = if simulate_earliest(&instance.metric, &stops, speed).is_some() {
        speed
    } else {
        speed * q(1_000_001, 1_000_000)
    };
    let times = simulate_earliest(&instance.metric, &stops, speed).unwrap();
    let events = opt.order.iter().zip(times).map(|(&id, t)| ServiceEvent::new(id, t)).collect();
    let tour = ServiceTour::new(ServiceRun::new(events, speed));

    let witness = racing_tour(&instance, &tour, WindowClass::Unit)?;
    println!("base speed {speed}, racer speed {}", witness.speed());
    println!("{:>8} {:>8} {:>8}  target", "request", "time", "arc");
    for e in &witness.schedule {
        let (a, b) = witness.trimmed.target(e.request).unwrap();
        println!("{:>8} {:>8.4} {:>8.4}  [{a}, {b})", e.request.to_string(), e.time.to_f64(), e.arc_position.to_f64());
    }
    let report = verify_tour(&instance, &witness.as_tour(), Some(&witness.trimmed))?;
    println!("witness feasible on trimmed windows: {}", report.feasible);
    Ok(())
}
