//! Text formats, instance generators and benchmark reports.

pub mod bench;
pub mod format;
pub mod generate;

pub use bench::{
    run_benchmark, standard_suite, Algorithm, BenchReport, BenchRow, Problem, RowStatus, SuiteSpec, SUITE_NAMES,
};
pub use format::{parse_instance, parse_solution, serialize_instance, serialize_solution, Solution};
pub use generate::{generate_partition, generate_random, has_equal_partition, RandomParams};
