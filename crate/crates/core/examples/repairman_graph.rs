//! Graph mode replaces the tree sweep with k-stroll path queries. A solver
//! that only guarantees half the requested profit costs at most a factor 2.

use twr::io::{generate_random, RandomParams};
use twr::prelude::*;
use twr::repairman::HalvingPathSolver;

fn main() -> Result<()> {
    let params = RandomParams::unit(MetricKind::Graph, 7, 8);
    let budget = OracleBudget::default();
    println!("{:>4} {:>6} {:>8} {:>7}", "seed", "exact", "halving", "oracle");
    for seed in 0..8 {
        let instance = generate_random(seed, &params)?;
        let trimmed = trim_unit(&instance)?;
        let exact = solve_repairman(&instance, &trimmed, Mode::Graph)?;
        let weak = solve_repairman_with(&instance, &trimmed, Mode::Graph, &HalvingPathSolver { seed })?;
        let opt = brute_repairman(&instance, None, &budget)?.profit;
        println!("{seed:>4} {:>6} {:>8} {opt:>7}", exact.profit(&instance), weak.profit(&instance));
        assert!(3 * exact.profit(&instance) >= opt);
        assert!(6 * weak.profit(&instance) >= opt);
    }
    Ok(())
}
