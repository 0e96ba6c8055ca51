//! Seeded suites compared row by row with the exact oracle.
//!
//! ```text
//! cargo run --release --example benchmark -- unit-graph 20
//! ```

use twr::io::{run_benchmark, standard_suite};
use twr::prelude::*;

fn main() {
    let mut args = std::env::args().skip(1);
    let names: Vec<String> = match args.next() {
        Some(name) => vec![name],
        None => twr::io::SUITE_NAMES.iter().map(|s| s.to_string()).collect(),
    };
    let count = args.next().and_then(|c| c.parse().ok()).unwrap_or(10);
    for name in names {
        let Some(spec) = standard_suite(&name, count, 1, q(1, 20)) else {
            eprintln!("unknown suite {name}");
            std::process::exit(2);
        };
        let report = run_benchmark(&spec);
        println!("{}", report.summary());
        if let Some(worst) = report.worst_ratio() {
            println!("  worst ratio {worst}");
        }
    }
}
