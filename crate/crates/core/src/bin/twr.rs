use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use twr::io::{
    generate_partition, generate_random, parse_instance, parse_solution, run_benchmark, serialize_instance,
    serialize_solution, standard_suite, RandomParams, Solution,
};
use twr::multiwindow::{delivery_bounded, rescale_instance, rescale_run, window12, windowgd};
use twr::oracle::{brute_deliveryman, brute_repairman, OracleBudget};
use twr::repairman::{solve_repairman, Mode};
use twr::trimming::trim_unit;
use twr::verify::{verify_run, verify_tour};
use twr::{Error, Instance, MetricKind, Rational, ServiceRun, ServiceTour};

#[derive(Parser)]
#[command(name = "twr", version, about = "Time-window repairman and deliveryman routing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance.
    #[command(subcommand)]
    Gen(Gen),
    /// Solve an instance file (`-` or nothing reads stdin).
    #[command(subcommand)]
    Solve(Solve),
    /// Check a solution against an instance.
    Verify { instance: String, solution: String },
    /// Solve a small instance exactly.
    Oracle {
        problem: ProblemArg,
        #[arg(default_value = "-")]
        instance: String,
        #[arg(long, default_value_t = 8)]
        max_requests: usize,
        #[arg(long, default_value_t = 10)]
        max_nodes: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Compare a solver with the oracle on a seeded suite.
    Bench {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "1/20")]
        epsilon: Rational,
        /// Tab-separated output without timings.
        #[arg(long)]
        tsv: bool,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum Gen {
    Random {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        nodes: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Tree)]
        kind: KindArg,
        #[arg(long, default_value_t = 6)]
        requests: usize,
        #[arg(long, default_value = "1")]
        min_length: Rational,
        #[arg(long, default_value = "1")]
        max_length: Rational,
        #[arg(long, default_value = "3")]
        horizon: Rational,
        #[command(flatten)]
        out: OutArg,
    },
    Partition {
        #[arg(required = true)]
        values: Vec<u64>,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum Solve {
    Repairman {
        #[arg(default_value = "-")]
        instance: String,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Use the length-class driver with these parameters.
        #[arg(long, num_args = 2, value_names = ["P", "G"])]
        pg: Option<Vec<u32>>,
        #[command(flatten)]
        out: OutArg,
    },
    Deliveryman {
        #[arg(default_value = "-")]
        instance: String,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value = "1/20")]
        epsilon: Rational,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct OutArg {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Tree,
    Graph,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Tree,
    Graph,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Repairman,
    Deliveryman,
}

enum Failure {
    /// Bad input or parameters: exit 2.
    Input(String),
    /// Infeasible result or failed check: exit 1.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible(_) => Failure::Check(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }
}

fn load(path: &str) -> Result<Instance, Failure> {
    let text = read_input(path)?;
    parse_instance(&text).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn emit(out: &OutArg, text: &str) -> Outcome {
    match &out.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn mode_for(instance: &Instance, mode: Option<ModeArg>) -> Mode {
    match mode {
        Some(ModeArg::Tree) => Mode::Tree,
        Some(ModeArg::Graph) => Mode::Graph,
        None if instance.metric.is_tree() => Mode::Tree,
        None => Mode::Graph,
    }
}

fn solve_repairman_cmd(instance: &Instance, mode: Mode, pg: Option<&[u32]>) -> Result<ServiceRun, Error> {
    if let Some(pg) = pg {
        return Ok(windowgd(instance, pg[0], pg[1], mode)?.run);
    }
    let lengths: Vec<Rational> = instance.requests.iter().map(|r| r.window_length).collect();
    let Some(&first) = lengths.first() else {
        return Ok(ServiceRun::empty(Rational::ONE));
    };
    if lengths.iter().all(|&l| l == first) {
        let unit = rescale_instance(instance, first.recip())?;
        let run = solve_repairman(&unit, &trim_unit(&unit)?, mode)?;
        return Ok(rescale_run(&run, first));
    }
    let two = Rational::from_int(2);
    if lengths.iter().all(|&l| l >= Rational::ONE && l < two) {
        return Ok(window12(instance, mode)?.run);
    }
    Ok(windowgd(instance, 2, 1, mode)?.run)
}

fn solve_deliveryman_cmd(instance: &Instance, mode: Mode, epsilon: Rational) -> Result<ServiceTour, Error> {
    let shortest = instance.requests.iter().map(|r| r.window_length).min().unwrap_or(Rational::ONE);
    let scale = if shortest < Rational::ONE { shortest.recip() } else { Rational::ONE };
    let scaled = rescale_instance(instance, scale)?;
    let out = delivery_bounded(&scaled, epsilon, mode)?;
    Ok(ServiceTour::new(rescale_run(&out.result.tour.run, scale.recip())))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen(Gen::Random { seed, nodes, kind, requests, min_length, max_length, horizon, out }) => {
            let kind = match kind {
                KindArg::Tree => MetricKind::Tree,
                KindArg::Graph => MetricKind::Graph,
            };
            let params = RandomParams { nodes, kind, requests, min_length, max_length, horizon, ..Default::default() };
            emit(&out, &serialize_instance(&generate_random(seed, &params)?))
        }
        Command::Gen(Gen::Partition { values, out }) => emit(&out, &serialize_instance(&generate_partition(&values)?)),
        Command::Solve(Solve::Repairman { instance, mode, pg, out }) => {
            let inst = load(&instance)?;
            let run = solve_repairman_cmd(&inst, mode_for(&inst, mode), pg.as_deref())?;
            eprintln!("profit {} of {}", run.profit(&inst), inst.total_profit());
            emit(&out, &serialize_solution(&Solution::Repairman(run)))
        }
        Command::Solve(Solve::Deliveryman { instance, mode, epsilon, out }) => {
            let inst = load(&instance)?;
            let tour = solve_deliveryman_cmd(&inst, mode_for(&inst, mode), epsilon)?;
            eprintln!("speed {}", tour.speed());
            emit(&out, &serialize_solution(&Solution::Deliveryman(tour)))
        }
        Command::Verify { instance, solution } => {
            let inst = load(&instance)?;
            let text = read_input(&solution)?;
            let sol = parse_solution(&text).map_err(|e| Failure::Input(format!("{solution}: {e}")))?;
            let report = match &sol {
                Solution::Repairman(run) => verify_run(&inst, run, None)?,
                Solution::Deliveryman(tour) => verify_tour(&inst, tour, None)?,
            };
            println!("{report}");
            if let Solution::Repairman(run) = &sol {
                println!("profit {}", run.profit(&inst));
            }
            if report.feasible {
                Ok(())
            } else {
                Err(Failure::Check("solution is not feasible".into()))
            }
        }
        Command::Oracle { problem, instance, max_requests, max_nodes, out } => {
            let inst = load(&instance)?;
            let budget = OracleBudget::default().with_max_requests(max_requests).with_max_nodes(max_nodes);
            match problem {
                ProblemArg::Repairman => {
                    let opt = brute_repairman(&inst, None, &budget)?;
                    eprintln!("optimal profit {}", opt.profit);
                    emit(&out, &serialize_solution(&Solution::Repairman(opt.run)))
                }
                ProblemArg::Deliveryman => {
                    let opt = brute_deliveryman(&inst, None, &budget)?;
                    let order: Vec<String> = opt.order.iter().map(ToString::to_string).collect();
                    emit(&out, &format!("infimum speed {}\norder {}\n", opt.speed, order.join(" ")))
                }
            }
        }
        Command::Bench { suite, count, seed, epsilon, tsv, out } => {
            let spec = standard_suite(&suite, count, seed, epsilon)
                .ok_or_else(|| Failure::Input(format!("unknown suite `{suite}`")))?;
            let report = run_benchmark(&spec);
            let text = if tsv { report.to_tsv(false) } else { format!("{report}\n") };
            emit(&out, &text)?;
            if report.failed() > 0 {
                return Err(Failure::Check(report.summary()));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("twr: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("twr: {msg}");
            ExitCode::from(2)
        }
    }
}
