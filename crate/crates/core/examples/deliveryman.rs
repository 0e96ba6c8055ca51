//! Serve every request and minimize speed, on a tree and on a graph.

use twr::deliveryman::TourChain;
use twr::io::{generate_random, RandomParams};
use twr::prelude::*;

fn report(label: &str, instance: &Instance, result: &DeliveryResult) -> Result<()> {
    let opt = brute_deliveryman(instance, None, &OracleBudget::default())?.speed;
    println!("{label}: speed {} (~{:.3}), optimum infimum {opt}", result.speed, result.speed.to_f64());
    for e in &result.tour.run.events {
        println!("    t = {:>8.4}  request {}", e.time.to_f64(), e.request);
    }
    Ok(())
}

fn main() -> Result<()> {
    let tree = generate_random(11, &RandomParams::unit(MetricKind::Tree, 6, 6))?;
    let trimmed = trim_unit(&tree)?;
    let res = delivery_tree(&tree, &trimmed, q(1, 20))?;
    report("tree", &tree, &res)?;

    // The tree routine searches speeds; test_speed answers one query.
    let half = test_speed(&tree, &trimmed, res.speed / Rational::from_int(2))?;
    println!("  feasible at half the speed: {}", half.feasible);

    let graph = generate_random(11, &RandomParams::unit(MetricKind::Graph, 6, 6))?;
    let trimmed = trim_unit(&graph)?;
    let res = delivery_graph(&graph, &trimmed)?;
    report("graph", &graph, &res)?;

    let chain = TourChain::build(&graph, &trimmed)?;
    let ((i, j), s) =
        chain.candidate_speeds(&graph.metric).into_iter().max_by_key(|&(_, s)| s).expect("at least one period");
    println!("  binding periods {i}..={j} force speed {s}");
    Ok(())
}
