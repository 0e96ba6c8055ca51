mod common;

use proptest::prelude::*;

use twr::deliveryman::{delivery_graph, delivery_tree, single_period_tree_length, test_speed};
use twr::io::{generate_random, RandomParams};
use twr::multiwindow::{delivery_bounded, length_classes, rescale_instance, rescale_run, window12, windowgd};
use twr::oracle::{brute_deliveryman, brute_repairman, OracleBudget};
use twr::repairman::{
    kssp_exact, path_profile, reduced_path, solve_repairman, sweep_tree, ExactPathSolver, Mode, PathContext,
};
use twr::service_time::{map_back, service_time_transform, ServiceModel};
use twr::trimming::{
    factorial, factorial_decode, factorial_encode, racing_tour, trim_unit, ArcTour, PeriodGrid, WindowClass,
};
use twr::verify::{fixed_order_min_speed, simulate_earliest, verify_run, verify_tour, Stop};
use twr::{build_metric, Edge, Extended, Instance, MetricKind, Rational, RequestId, ServiceRequest};

fn kind() -> impl Strategy<Value = MetricKind> {
    prop_oneof![Just(MetricKind::Tree), Just(MetricKind::Graph)]
}

fn mode(kind: MetricKind) -> Mode {
    match kind {
        MetricKind::Tree => Mode::Tree,
        MetricKind::Graph => Mode::Graph,
    }
}

fn q(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn closure_is_idempotent_and_metric(seed in any::<u64>(), kind in kind()) {
        let inst = common::unit(seed, kind, 8, 1);
        let m = &inst.metric;
        let n = m.node_count();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push(Edge::new(u, v, m.dist(u, v)));
            }
        }
        if n > 1 {
            let again = build_metric(n, MetricKind::Graph, edges).unwrap();
            prop_assert_eq!(again.distance_table(), m.distance_table());
        }
        for u in 0..n {
            prop_assert!(m.dist(u, u).is_zero());
            for v in 0..n {
                prop_assert_eq!(m.dist(u, v), m.dist(v, u));
                for w in 0..n {
                    prop_assert!(m.dist(u, w) <= m.dist(u, v) + m.dist(v, w));
                }
            }
        }
    }

    #[test]
    fn repairman_runs_verify(seed in any::<u64>(), kind in kind()) {
        let inst = common::unit(seed, kind, 8, 10);
        let trimmed = trim_unit(&inst).unwrap();
        let run = solve_repairman(&inst, &trimmed, mode(kind)).unwrap();
        prop_assert!(verify_run(&inst, &run, Some(&trimmed)).unwrap().feasible);
        prop_assert!(verify_run(&inst, &run, None).unwrap().feasible);
    }

    #[test]
    fn multiwindow_runs_verify(seed in any::<u64>(), kind in kind()) {
        let inst = common::sized(seed, kind, 6, 6, Rational::ONE, q(2, 1));
        let out = window12(&inst, mode(kind)).unwrap();
        prop_assert!(verify_run(&inst, &out.run, None).unwrap().feasible);
        let wide = rescale_instance(&common::sized(seed, kind, 6, 6, Rational::ONE, q(10, 1)), q(1, 2)).unwrap();
        let gd = windowgd(&wide, 2, 1, mode(kind)).unwrap();
        prop_assert!(verify_run(&wide, &gd.run, None).unwrap().feasible);
        prop_assert_eq!(gd.profit, gd.run.profit(&wide));
    }

    #[test]
    fn delivery_tours_verify(seed in any::<u64>(), kind in kind()) {
        let inst = common::unit(seed, kind, 7, 8);
        let trimmed = trim_unit(&inst).unwrap();
        let res = match kind {
            MetricKind::Tree => delivery_tree(&inst, &trimmed, q(1, 20)).unwrap(),
            MetricKind::Graph => delivery_graph(&inst, &trimmed).unwrap(),
        };
        prop_assert!(verify_tour(&inst, &res.tour, Some(&trimmed)).unwrap().feasible);
        prop_assert!(verify_tour(&inst, &res.tour, None).unwrap().feasible);
    }

    #[test]
    fn bounded_delivery_verifies_on_trimmed(seed in any::<u64>(), kind in kind()) {
        let inst = common::sized(seed, kind, 6, 7, Rational::ONE, q(7, 2));
        let out = delivery_bounded(&inst, q(1, 10), mode(kind)).unwrap();
        prop_assert!(verify_tour(&inst, &out.result.tour, Some(&out.trimmed)).unwrap().feasible);
    }

    #[test]
    fn fixed_order_speed_is_tight(seed in any::<u64>(), kind in kind(), rot in 0usize..5) {
        let params = RandomParams { nodes: 6, kind, requests: 5, horizon: q(2, 1), ..Default::default() };
        let inst = generate_random(seed, &params).unwrap();
        let mut stops: Vec<Stop> = inst
            .requests
            .iter()
            .map(|r| Stop::new(r.node, r.window_start, r.window_end()))
            .collect();
        stops.rotate_left(rot);
        match fixed_order_min_speed(&inst.metric, &stops) {
            Extended::Finite(s) if s.is_positive() => {
                let up = s * (Rational::ONE + q(1, 1_000_000));
                let down = s * (Rational::ONE - q(1, 1_000_000));
                prop_assert!(simulate_earliest(&inst.metric, &stops, up).is_some());
                prop_assert!(simulate_earliest(&inst.metric, &stops, down).is_none());
            }
            Extended::Finite(_) => {
                prop_assert!(simulate_earliest(&inst.metric, &stops, Rational::ZERO).is_some());
            }
            Extended::Infinite => {
                prop_assert!(simulate_earliest(&inst.metric, &stops, q(1_000_000, 1)).is_none());
            }
        }
    }

    #[test]
    fn contained_service_intervals(seed in any::<u64>(), mu in 1i128..10) {
        let inst = common::unit(seed, MetricKind::Tree, 5, 6);
        let model = ServiceModel::Contained(q(mu, 10));
        let moved = service_time_transform(&inst, &model).unwrap();
        let opt = brute_repairman(&moved, None, &OracleBudget::default().with_max_nodes(12)).unwrap();
        let intervals = map_back(&inst, &model, &opt.run).unwrap();
        prop_assert_eq!(intervals.len(), opt.run.len());
        for iv in intervals {
            let r = inst.request(iv.request).unwrap();
            prop_assert_eq!(iv.end - iv.start, q(mu, 10));
            prop_assert!(r.window_start <= iv.start && iv.end < r.window_end());
        }
    }

    #[test]
    fn unit_trimming_targets(seed in any::<u64>()) {
        let inst = common::unit(seed, MetricKind::Tree, 4, 10);
        let trimmed = trim_unit(&inst).unwrap();
        let grid = PeriodGrid::unit();
        for r in &inst.requests {
            let (a, b) = trimmed.target(r.id).unwrap();
            prop_assert!(r.window_start <= a && b <= r.window_end());
            prop_assert_eq!(b - a, grid.length);
            let contained = grid.contained_count(r.window_start, r.window_end());
            let on_boundary = (r.window_start * q(2, 1)).is_integer();
            prop_assert_eq!(contained, if on_boundary { 2 } else { 1 });
            prop_assert_eq!(a, grid.begin(*grid.contained(r.window_start, r.window_end()).start()));
        }
    }

    #[test]
    fn racing_witness_is_paced(seed in any::<u64>(), class in 0usize..3) {
        let (class, hi) = [
            (WindowClass::Unit, Rational::ONE),
            (WindowClass::OneToTwo, q(2, 1)),
            (WindowClass::Bounded(3), q(3, 1)),
        ][class];
        let inst = common::sized(seed, MetricKind::Tree, 5, 5, Rational::ONE, hi);
        let opt = brute_deliveryman(&inst, None, &OracleBudget::default()).unwrap();
        let tour = common::realize(&inst, &opt.order, opt.speed.finite().unwrap()).unwrap();
        let w = racing_tour(&inst, &tour, class).unwrap();
        prop_assert!(verify_run(&inst, &w.as_run(), Some(&w.trimmed)).unwrap().feasible);
        for pair in w.schedule.windows(2) {
            let dx = (pair[1].arc_position - pair[0].arc_position).abs();
            prop_assert!(dx <= w.speed() * (pair[1].time - pair[0].time));
        }
        if class == WindowClass::Unit {
            let arc = ArcTour::new(&inst, &tour.run).unwrap();
            let first = w.schedule[0].time.floor() - 1;
            for j in first..first + 8 {
                let t = Rational::from_int(j);
                prop_assert_eq!(w.position_at(t), arc.position(t - Rational::HALF));
            }
        }
    }

    #[test]
    fn test_speed_is_monotone(seed in any::<u64>(), num in 1i128..40) {
        let inst = common::unit(seed, MetricKind::Tree, 6, 7);
        let trimmed = trim_unit(&inst).unwrap();
        let s = q(num, 8);
        if test_speed(&inst, &trimmed, s).unwrap().feasible {
            for bump in [q(1, 1000), q(1, 2), q(3, 1)] {
                prop_assert!(test_speed(&inst, &trimmed, s + bump).unwrap().feasible);
            }
        }
    }

    #[test]
    fn profiles_are_monotone(seed in any::<u64>(), root in 0usize..9) {
        let inst = common::unit(seed, MetricKind::Tree, 9, 1);
        let n = inst.metric.node_count();
        let profits: Vec<u64> = (0..n as u64).map(|i| (seed >> i) & 3).collect();
        let prof = sweep_tree(&inst.metric, &profits, root % n).unwrap();
        prop_assert_eq!(prof.cost(0), Extended::Finite(Rational::ZERO));
        prop_assert!(prof.is_monotone());
        let path = path_profile(&inst.metric, &profits, root % n, (root * 7) % n).unwrap();
        prop_assert!(path.is_monotone());
    }

    #[test]
    fn reduced_path_within_exact(seed in any::<u64>(), k in 0u64..6) {
        let inst = common::unit(seed, MetricKind::Graph, 7, 1);
        let n = inst.metric.node_count();
        let weighted: Vec<(usize, u64)> = (0..n).map(|u| (u, 1 + (seed >> u) % 2)).collect();
        let ctx = PathContext::new(&inst.metric, &weighted, 15).unwrap();
        let (s, t) = (0, n - 1);
        if let Some(exact) = kssp_exact(&inst.metric, &weighted, s, t, k).unwrap() {
            prop_assert_eq!(exact.nodes.first(), Some(&s));
            prop_assert_eq!(exact.nodes.last(), Some(&t));
            prop_assert!(exact.profit >= k);
            let reduced = reduced_path(&ctx, s, t, k, &ExactPathSolver, Rational::ONE).unwrap();
            prop_assert!(reduced.cost <= exact.cost);
            prop_assert!(reduced.profit >= k);
        }
    }

    #[test]
    fn length_classes_partition(seed in any::<u64>(), p in 1u32..4, g in 1u32..3) {
        let inst = rescale_instance(&common::sized(seed, MetricKind::Tree, 4, 10, Rational::ONE, q(18, 1)), q(1, 2)).unwrap();
        let classes = length_classes(&inst, p, g).unwrap();
        let mut seen: Vec<RequestId> = classes.iter().flat_map(|c| c.requests.clone()).collect();
        seen.sort();
        let mut all: Vec<RequestId> = inst.requests.iter().map(|r| r.id).collect();
        all.sort();
        prop_assert_eq!(seen, all);
        for c in &classes {
            let there = rescale_instance(&inst, c.scale).unwrap();
            prop_assert_eq!(rescale_instance(&there, c.scale.recip()).unwrap(), inst.clone());
        }
        let run = brute_repairman(&inst, None, &OracleBudget::default().with_max_requests(10)).unwrap().run;
        prop_assert_eq!(rescale_run(&rescale_run(&run, q(3, 7)), q(7, 3)), run);
    }
}

fn relabeled(inst: &Instance, shift: Rational) -> Instance {
    let n = inst.requests.len() as u32;
    let requests = inst
        .requests
        .iter()
        .rev()
        .map(|r| ServiceRequest {
            id: RequestId(3 * (n - r.id.0) + 1),
            window_start: r.window_start + shift,
            ..r.clone()
        })
        .collect();
    inst.with_requests(requests).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn oracles_ignore_labels_and_translation(seed in any::<u64>(), kind in kind(), shift in -40i128..40) {
        let inst = common::sized(seed, kind, 6, 6, Rational::ONE, q(2, 1));
        let moved = relabeled(&inst, q(shift, 4));
        let budget = OracleBudget::default();
        prop_assert_eq!(
            brute_repairman(&inst, None, &budget).unwrap().profit,
            brute_repairman(&moved, None, &budget).unwrap().profit
        );
        prop_assert_eq!(
            brute_deliveryman(&inst, None, &budget).unwrap().speed,
            brute_deliveryman(&moved, None, &budget).unwrap().speed
        );
    }

    #[test]
    fn trimming_costs_bounded_speedup(seed in any::<u64>(), kind in kind()) {
        let inst = common::unit(seed, kind, 6, 6);
        let trimmed = trim_unit(&inst).unwrap();
        let budget = OracleBudget::default();
        let loose = brute_deliveryman(&inst, None, &budget).unwrap().speed.finite().unwrap();
        let tight = brute_deliveryman(&inst, Some(&trimmed), &budget).unwrap().speed.finite().unwrap();
        prop_assert!(tight <= q(4, 1) * loose * common::slack());
        let opt = brute_repairman(&inst, None, &budget).unwrap().profit;
        let trimmed_opt = brute_repairman(&inst, Some(&trimmed), &budget).unwrap().profit;
        prop_assert!(3 * trimmed_opt >= opt);
    }
}

proptest! {
    #[test]
    fn factorial_codec(k in 0u128..5040) {
        let d = factorial_encode(k, 6).unwrap();
        prop_assert_eq!(factorial_decode(&d), k);
        for i in 0..d.width() {
            prop_assert!(d.digit(i) <= i as u32);
        }
        prop_assert!(factorial_encode(factorial(7), 6).is_err());
    }
}

/// Brute-force single-period walk length: shortest node sequence (at most
/// `2n` long) from `u` to `v` that visits all of `nodes`.
fn brute_walk_length(inst: &Instance, nodes: &[usize], u: usize, v: usize) -> Rational {
    let n = inst.metric.node_count();
    let mut best: Option<Rational> = None;
    let target: u32 = nodes.iter().fold(0, |m, &x| m | 1 << x);
    let mut stack = vec![(u, 1u32 << u, Rational::ZERO, 1usize)];
    while let Some((at, seen, cost, len)) = stack.pop() {
        if best.is_some_and(|b| cost >= b) {
            continue;
        }
        if at == v && seen & target == target {
            best = Some(cost);
            continue;
        }
        if len == 2 * n {
            continue;
        }
        for &(next, w) in inst.metric.neighbors(at) {
            stack.push((next, seen | 1 << next, cost + w, len + 1));
        }
    }
    best.unwrap()
}

#[test]
fn single_period_length_matches_walks() {
    for seed in 0..60u64 {
        let inst = common::unit(seed, MetricKind::Tree, 7, 1);
        let n = inst.metric.node_count();
        let nodes: Vec<usize> = (0..n).filter(|&x| (seed >> x) & 1 == 1 || x == 0).collect();
        for &u in &nodes {
            for &v in &nodes {
                let fast = single_period_tree_length(&inst.metric, &nodes, u, v).unwrap();
                assert_eq!(fast, brute_walk_length(&inst, &nodes, u, v), "seed {seed} u={u} v={v}");
            }
        }
    }
}
