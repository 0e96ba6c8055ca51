//! Acceptance gate: twelve checks against exact oracles, one PASS/FAIL line each.

mod common;

use std::fs;
use std::panic;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twr::deliveryman::{delivery_graph, delivery_tree, TourChain};
use twr::io::{
    generate_partition, generate_random, has_equal_partition, parse_instance, parse_solution, serialize_instance,
    serialize_solution, RandomParams, Solution,
};
use twr::multiwindow::{evaluate_bound12, window12, windowg, windowg_invocations, ProfitShareVector};
use twr::oracle::{brute_deliveryman, brute_path_profile, brute_repairman, OracleBudget};
use twr::repairman::{path_profile, solve_repairman, solve_repairman_with, sweep_tree, HalvingPathSolver, Mode};
use twr::trimming::{limited_loss_candidates, racing_tour, trim_unit, WindowClass};
use twr::verify::{fixed_order_min_speed, verify_run, verify_tour};
use twr::{Error, Extended, MetricKind, Rational, ServiceEvent, ServiceRun, ServiceTour};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(started: Instant, limit: Duration) -> Result<(), String> {
    let took = started.elapsed();
    ensure(took < limit, || format!("took {took:.1?}, limit {limit:?}"))
}

fn e(err: Error) -> String {
    err.to_string()
}

fn finite(x: Extended) -> Result<Rational, String> {
    x.finite().ok_or_else(|| "unexpected infinite speed".to_string())
}

fn trimmed_tree_optimality() -> Check {
    let started = Instant::now();
    let budget = OracleBudget::default();
    for seed in 0..200 {
        let inst = common::unit(seed, MetricKind::Tree, 8, 8);
        let trimmed = trim_unit(&inst).map_err(e)?;
        let got = solve_repairman(&inst, &trimmed, Mode::Tree).map_err(e)?.profit(&inst);
        let opt = brute_repairman(&inst, Some(&trimmed), &budget).map_err(e)?.profit;
        ensure(got == opt, || format!("seed {seed}: solver {got}, trimmed oracle {opt}"))?;
    }
    within(started, Duration::from_secs(30))?;
    Ok("200/200 equal to the trimmed oracle".into())
}

fn limited_loss() -> Check {
    let budget = OracleBudget::default();
    let mut tight = 0;
    for seed in 0..200 {
        let inst = common::unit(seed, MetricKind::Tree, 8, 8);
        let trimmed = trim_unit(&inst).map_err(e)?;
        let got = solve_repairman(&inst, &trimmed, Mode::Tree).map_err(e)?.profit(&inst);
        let opt = brute_repairman(&inst, None, &budget).map_err(e)?;
        ensure(3 * got >= opt.profit, || format!("seed {seed}: {got} < {}/3", opt.profit))?;
        let candidates = limited_loss_candidates(&opt.run, &trimmed);
        let mut best = 0;
        for c in candidates.all() {
            let report = verify_run(&inst, c, Some(&trimmed)).map_err(e)?;
            ensure(report.feasible, || format!("seed {seed}: candidate infeasible: {report}"))?;
            best = best.max(c.profit(&inst));
        }
        ensure(3 * best >= opt.profit, || format!("seed {seed}: candidates {best} < {}/3", opt.profit))?;
        if 3 * got < 2 * opt.profit {
            tight += 1;
        }
    }
    Ok(format!("200/200 within a third; {tight} instances below two thirds"))
}

fn graph_repairman() -> Check {
    let budget = OracleBudget::default();
    for seed in 0..200 {
        let inst = common::unit(1000 + seed, MetricKind::Graph, 7, 7);
        let trimmed = trim_unit(&inst).map_err(e)?;
        let opt = brute_repairman(&inst, None, &budget).map_err(e)?.profit;
        let exact = solve_repairman(&inst, &trimmed, Mode::Graph).map_err(e)?.profit(&inst);
        ensure(3 * exact >= opt, || format!("seed {seed}: exact-path {exact} < {opt}/3"))?;
        let weak = HalvingPathSolver { seed };
        let halved = solve_repairman_with(&inst, &trimmed, Mode::Graph, &weak).map_err(e)?.profit(&inst);
        ensure(6 * halved >= opt, || format!("seed {seed}: halving {halved} < {opt}/6"))?;
    }
    Ok("200/200 within 3 (exact path) and 6 (halving path)".into())
}

fn deliveryman_tree() -> Check {
    let started = Instant::now();
    let eps = Rational::new(1, 20);
    let bound = (Rational::from_int(4) + eps) * common::slack();
    let budget = OracleBudget::default();
    let mut worst = Rational::ZERO;
    for seed in 0..100 {
        let inst = common::unit(2000 + seed, MetricKind::Tree, 6, 6);
        let trimmed = trim_unit(&inst).map_err(e)?;
        let res = delivery_tree(&inst, &trimmed, eps).map_err(e)?;
        let opt = finite(brute_deliveryman(&inst, None, &budget).map_err(e)?.speed)?;
        let got = res.tour.speed();
        ensure(got <= bound * opt, || format!("seed {seed}: speed {got} vs optimum {opt}"))?;
        if opt.is_positive() {
            worst = worst.max(got / opt);
        }
    }
    within(started, Duration::from_secs(60))?;
    Ok(format!("100/100 within 4+1/20; worst ratio {:.4}", worst.to_f64()))
}

fn deliveryman_graph() -> Check {
    let bound = Rational::from_int(8) * common::slack();
    let budget = OracleBudget::default();
    let mut worst = Rational::ZERO;
    for seed in 0..100 {
        let inst = common::unit(3000 + seed, MetricKind::Graph, 6, 6);
        let trimmed = trim_unit(&inst).map_err(e)?;
        let res = delivery_graph(&inst, &trimmed).map_err(e)?;
        let opt = finite(brute_deliveryman(&inst, None, &budget).map_err(e)?.speed)?;
        let got = res.tour.speed();
        ensure(got <= bound * opt, || format!("seed {seed}: speed {got} vs optimum {opt}"))?;
        let chain = TourChain::build(&inst, &trimmed).map_err(e)?;
        let stops: Vec<_> = chain.stops(&inst).into_iter().map(|(_, s)| s).collect();
        let closed = chain.closed_form_speed(&inst.metric);
        let direct = fixed_order_min_speed(&inst.metric, &stops);
        ensure(direct == Extended::Finite(closed) && closed == res.speed, || {
            format!("seed {seed}: closed form {closed}, fixed order {direct}")
        })?;
        if opt.is_positive() {
            worst = worst.max(got / opt);
        }
    }
    Ok(format!("100/100 within 8; closed form exact; worst ratio {:.4}", worst.to_f64()))
}

fn racing_witnesses() -> Check {
    let budget = OracleBudget::default();
    let classes = [
        (WindowClass::Unit, Rational::ONE, Rational::ONE),
        (WindowClass::OneToTwo, Rational::ONE, Rational::from_int(2)),
        (WindowClass::Bounded(3), Rational::ONE, Rational::from_int(3)),
    ];
    for (k, (class, lo, hi)) in classes.into_iter().enumerate() {
        for seed in 0..100 {
            let seed = 4000 + 1000 * k as u64 + seed;
            let inst = common::sized(seed, MetricKind::Tree, 6, 6, lo, hi);
            let opt = brute_deliveryman(&inst, None, &budget).map_err(e)?;
            let speed = finite(opt.speed)?;
            let tour = common::realize(&inst, &opt.order, speed)
                .ok_or_else(|| format!("seed {seed}: optimal order not realizable"))?;
            let witness = racing_tour(&inst, &tour, class).map_err(|err| format!("seed {seed}: {err}"))?;
            let report = verify_tour(&inst, &witness.as_tour(), Some(&witness.trimmed)).map_err(e)?;
            ensure(report.feasible, || format!("seed {seed} {class:?}: {report}"))?;
            ensure(witness.speed() == class.factor() * tour.speed(), || format!("seed {seed}: wrong speed"))?;
        }
    }
    Ok("300/300 witnesses feasible at factors 4, 6 and 8".into())
}

fn window12_bound() -> Check {
    let budget = OracleBudget::default();
    for seed in 0..100 {
        let inst = common::sized(7000 + seed, MetricKind::Tree, 6, 6, Rational::ONE, Rational::from_int(2));
        let out = window12(&inst, Mode::Tree).map_err(e)?;
        let opt = brute_repairman(&inst, None, &budget).map_err(e)?.profit;
        ensure(219 * out.profit >= 52 * opt, || format!("seed {seed}: {} vs optimum {opt}", out.profit))?;
        ensure(out.invocations == 22, || format!("seed {seed}: {} solver calls", out.invocations))?;
    }
    Ok("100/100 within 219/52 with 22 solver calls each".into())
}

fn bound_evaluator() -> Check {
    let target = Rational::new(52, 219);
    for c in 0..5 {
        let v = evaluate_bound12(&ProfitShareVector::corner(c));
        ensure(v == target, || format!("corner {c}: {v}"))?;
    }
    Ok("all five corners equal 52/219".into())
}

fn windowg_counts() -> Check {
    let fact = |n: u32| -> u128 { (1..=n as u128).product() };
    let m = twr::build_metric(1, MetricKind::Tree, vec![]).map_err(e)?;
    let inst = twr::Instance::new(m, vec![twr::ServiceRequest::new(0, 0, Rational::ZERO, Rational::ONE)]).map_err(e)?;
    let mut seen = Vec::new();
    for (p, g) in [(1u32, 1u32), (2, 1), (3, 1)] {
        let expect: u128 = (0..=p).map(|i| (i as u128 + (1 << g)) * fact(p + g - i)).sum();
        let formula = windowg_invocations(p, g).map_err(e)?;
        let ran = windowg(&inst, p, g, Mode::Tree).map_err(e)?.invocations;
        ensure(formula == expect && ran == expect, || format!("(p,g)=({p},{g}): {formula}, ran {ran}, want {expect}"))?;
        seen.push(ran);
    }
    ensure(seen[1] == 22, || "(2,1) is not 22".into())?;
    Ok(format!("calls {:?} for (1,1), (2,1), (3,1)", seen))
}

fn multisets(max_len: usize, max_sum: u64) -> Vec<Vec<u64>> {
    fn grow(cur: &mut Vec<u64>, min: u64, left: u64, max_len: usize, out: &mut Vec<Vec<u64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for x in min..=left {
            cur.push(x);
            grow(cur, x, left - x, max_len, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), 1, max_sum, max_len, &mut out);
    out
}

fn partition_reduction() -> Check {
    let started = Instant::now();
    let budget = OracleBudget::default().with_max_requests(10).with_max_nodes(9);
    let (mut yes, mut no, mut odd) = (0, 0, 0);
    for values in multisets(5, 24) {
        let sum: u64 = values.iter().sum();
        if sum % 2 == 1 {
            ensure(generate_partition(&values).is_err(), || format!("{values:?}: odd sum accepted"))?;
            odd += 1;
            continue;
        }
        let inst = generate_partition(&values).map_err(e)?;
        let full = brute_repairman(&inst, None, &budget).map_err(e)?.profit == inst.total_profit();
        let split = has_equal_partition(&values);
        ensure(full == split, || format!("{values:?}: full profit {full}, equal split {split}"))?;
        if split {
            yes += 1;
        } else {
            no += 1;
        }
    }
    within(started, Duration::from_secs(60))?;
    Ok(format!("{yes} splittable and {no} unsplittable multisets decided; {odd} odd sums rejected"))
}

fn sweep_exactness() -> Check {
    let mut levels = 0;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(8000 + seed);
        let nodes = rng.gen_range(1..=9);
        let params = RandomParams { nodes, requests: 0, ..Default::default() };
        let inst = generate_random(8000 + seed, &params).map_err(e)?;
        let profits: Vec<u64> = (0..nodes).map(|_| rng.gen_range(0..=2)).collect();
        let (s, t) = (rng.gen_range(0..nodes), rng.gen_range(0..nodes));
        let fast = path_profile(&inst.metric, &profits, s, t).map_err(e)?;
        let slow = brute_path_profile(&inst.metric, &profits, s, t).map_err(e)?;
        ensure(fast == slow, || format!("seed {seed} s={s} t={t}: {fast} vs {slow}"))?;
        let rooted = sweep_tree(&inst.metric, &profits, s).map_err(e)?;
        let closed = brute_path_profile(&inst.metric, &profits, s, s).map_err(e)?;
        ensure(rooted == closed, || format!("seed {seed} root {s}: {rooted} vs {closed}"))?;
        levels += fast.len() + rooted.len();
    }
    Ok(format!("100/100 trees, {levels} profit levels equal"))
}

fn serialization() -> Check {
    for seed in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(9000 + seed);
        let kind = if rng.gen_bool(0.5) { MetricKind::Tree } else { MetricKind::Graph };
        let params = RandomParams {
            nodes: rng.gen_range(1..=8),
            kind,
            requests: rng.gen_range(0..=8),
            max_length: Rational::from_int(3),
            max_profit: 3,
            ..Default::default()
        };
        let inst = generate_random(9000 + seed, &params).map_err(e)?;
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).map_err(|err| format!("seed {seed}: {err}"))?;
        ensure(back == inst && serialize_instance(&back) == text, || format!("seed {seed}: instance drifted"))?;

        let events = inst
            .requests
            .iter()
            .map(|r| ServiceEvent::new(r.id, r.window_start + Rational::new(rng.gen_range(0..60), 7)))
            .collect();
        let run = ServiceRun::new(events, Rational::new(rng.gen_range(1..50), rng.gen_range(1..9)));
        let sol =
            if rng.gen_bool(0.5) { Solution::Repairman(run) } else { Solution::Deliveryman(ServiceTour::new(run)) };
        let text = serialize_solution(&sol);
        let back = parse_solution(&text).map_err(|err| format!("seed {seed}: {err}"))?;
        ensure(back == sol && serialize_solution(&back) == text, || format!("seed {seed}: solution drifted"))?;
    }

    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/malformed");
    let mut files: Vec<_> = fs::read_dir(&dir).map_err(|err| err.to_string())?.map(|d| d.unwrap().path()).collect();
    files.sort();
    ensure(files.len() >= 20, || format!("only {} malformed files", files.len()))?;
    for path in &files {
        let text = fs::read_to_string(path).map_err(|err| err.to_string())?;
        let expect: usize = text
            .lines()
            .find_map(|l| l.strip_prefix("# expect-line:"))
            .and_then(|n| n.trim().parse().ok())
            .ok_or_else(|| format!("{}: no expected line", path.display()))?;
        let is_solution = text.lines().any(|l| l.starts_with("solution"));
        let err = if is_solution { parse_solution(&text).err() } else { parse_instance(&text).err() };
        match err {
            Some(Error::Parse { line, .. }) if line == expect => {}
            other => return Err(format!("{}: expected error on line {expect}, got {other:?}", path.display())),
        }
    }
    Ok(format!("500 instance and solution round trips; {} malformed files rejected", files.len()))
}

const CRITERIA: [Criterion; 12] = [
    ("trimmed-tree optimality", trimmed_tree_optimality),
    ("limited loss", limited_loss),
    ("graph repairman", graph_repairman),
    ("deliveryman on trees", deliveryman_tree),
    ("deliveryman on graphs", deliveryman_graph),
    ("racing witnesses", racing_witnesses),
    ("window12 bound", window12_bound),
    ("bound evaluator", bound_evaluator),
    ("windowg call counts", windowg_counts),
    ("partition reduction", partition_reduction),
    ("sweep exactness", sweep_exactness),
    ("serialization", serialization),
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (k, (name, check)) in CRITERIA.iter().enumerate() {
        let started = Instant::now();
        let outcome = panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({took:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({took:.2}s)", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
