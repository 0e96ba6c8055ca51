use proptest::prelude::*;

use twr::io::{
    generate_partition, generate_random, parse_instance, parse_solution, serialize_instance, serialize_solution,
    RandomParams, Solution,
};
use twr::oracle::{brute_repairman, OracleBudget};
use twr::{Error, MetricKind, Rational, RequestId, ServiceEvent, ServiceRun, ServiceTour};

#[test]
fn thousand_generated_instances_parse_as_metrics() {
    for seed in 0..1000u64 {
        let kind = if seed % 3 == 0 { MetricKind::Graph } else { MetricKind::Tree };
        let params = RandomParams {
            nodes: 1 + (seed % 9) as usize,
            kind,
            requests: (seed % 7) as usize,
            max_length: Rational::from_int(4),
            ..Default::default()
        };
        let inst = generate_random(seed, &params).unwrap();
        let back = parse_instance(&serialize_instance(&inst)).unwrap();
        let m = &back.metric;
        let n = m.node_count();
        if kind == MetricKind::Tree {
            assert_eq!(m.edges().len(), n - 1);
        }
        for u in 0..n {
            for v in 0..n {
                assert_eq!(m.dist(u, v), m.dist(v, u));
                for w in 0..n {
                    assert!(m.dist(u, w) <= m.dist(u, v) + m.dist(v, w), "seed {seed}");
                }
            }
        }
    }
}

#[test]
fn same_seed_same_file() {
    let p = RandomParams::unit(MetricKind::Graph, 7, 9);
    assert_eq!(
        serialize_instance(&generate_random(5, &p).unwrap()),
        serialize_instance(&generate_random(5, &p).unwrap())
    );
    assert_ne!(
        serialize_instance(&generate_random(5, &p).unwrap()),
        serialize_instance(&generate_random(6, &p).unwrap())
    );
}

#[test]
fn partition_examples() {
    let budget = OracleBudget::default().with_max_requests(10).with_max_nodes(9);
    let yes = generate_partition(&[1, 2, 3]).unwrap();
    assert_eq!(brute_repairman(&yes, None, &budget).unwrap().profit, 8);
    let no = generate_partition(&[1, 1, 4]).unwrap();
    assert!(brute_repairman(&no, None, &budget).unwrap().profit < 8);
    assert!(matches!(generate_partition(&[1, 2, 4]), Err(Error::InvalidParameter(_))));
}

#[test]
fn stdin_style_text_with_crlf_and_blank_lines() {
    let text = "twr 1\r\n\r\nmetric tree\r\nnode 0\r\nnode 1\r\nedge 0 1 3/4\r\n\r\nrequest 0 1 0.5 2\r\n";
    let inst = parse_instance(text).unwrap();
    assert_eq!(inst.dist(0, 1), Rational::new(3, 4));
    assert_eq!(inst.requests[0].window_start, Rational::HALF);
}

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i128..10_000, 1i128..10_000).prop_map(|(n, d)| Rational::new(n, d))
}

proptest! {
    #[test]
    fn solution_round_trip(
        times in prop::collection::vec(rational(), 0..12),
        speed in (0i128..1_000_000_000, 1i128..1_000_000).prop_map(|(n, d)| Rational::new(n, d)),
        tour in any::<bool>(),
    ) {
        let events = times.iter().enumerate().map(|(i, &t)| ServiceEvent::new(RequestId(i as u32 * 3), t)).collect();
        let run = ServiceRun::new(events, speed);
        let sol = if tour { Solution::Deliveryman(ServiceTour::new(run)) } else { Solution::Repairman(run) };
        let text = serialize_solution(&sol);
        let back = parse_solution(&text).unwrap();
        prop_assert_eq!(serialize_solution(&back), text);
        prop_assert_eq!(back, sol);
    }

    #[test]
    fn garbage_never_panics(text in "[a-z0-9 /.#\\-\n]{0,200}") {
        match parse_instance(&text) {
            Ok(inst) => prop_assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst),
            Err(Error::Parse { line, .. }) => prop_assert!(line >= 1 && line <= text.lines().count().max(1)),
            Err(other) => prop_assert!(false, "non-parse error {other:?}"),
        }
        let _ = parse_solution(&text);
    }

    #[test]
    fn header_lines_are_reported(prefix in 0usize..5) {
        let text = format!("{}twr 1\nmetric tree\nnode 0\nrequest 0 0 0 -1\n", "# c\n".repeat(prefix));
        match parse_instance(&text) {
            Err(Error::Parse { line, .. }) => prop_assert_eq!(line, prefix + 4),
            other => prop_assert!(false, "{other:?}"),
        }
    }
}
