//! The text format: write an instance, read it back, store a solution.

use twr::io::{parse_instance, parse_solution, serialize_instance, serialize_solution, Solution};
use twr::prelude::*;

const TEXT: &str = "\
twr 1
# two depots joined by a road
metric graph
node 0
node 1
node 2
edge 0 1 0.5
edge 1 2 3/4
edge 0 2 2
request 0 0 0 1
request 1 2 1.25 1 3   # worth three
";

fn main() -> Result<()> {
    let instance = parse_instance(TEXT)?;
    println!("shortest 0 -> 2: {}", instance.dist(0, 2));
    print!("{}", serialize_instance(&instance));

    let trimmed = trim_unit(&instance)?;
    let run = solve_repairman(&instance, &trimmed, Mode::Graph)?;
    let text = serialize_solution(&Solution::Repairman(run));
    print!("\n{text}");
    assert_eq!(parse_solution(&text)?, Solution::Repairman(solve_repairman(&instance, &trimmed, Mode::Graph)?));

    match parse_instance("twr 1\nmetric tree\nnode 0\nnode 1\nedge 0 7 1/3\n") {
        Err(e) => println!("\nrejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
