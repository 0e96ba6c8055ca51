//! Services that take time become pendant edges; solving the rewritten
//! instance gives service intervals on the original.

use twr::prelude::*;
use twr::service_time::{map_back, service_time_transform, ServiceModel};

fn main() -> Result<()> {
    let metric = build_metric(3, MetricKind::Tree, vec![Edge::new(0, 1, q(1, 4)), Edge::new(1, 2, q(1, 4))])?;
    let one = Rational::ONE;
    let instance = Instance::new(
        metric,
        vec![
            ServiceRequest::new(0, 0, q(0, 1), one),
            ServiceRequest::new(1, 1, q(1, 4), one),
            ServiceRequest::new(2, 2, q(1, 2), one),
            ServiceRequest::new(3, 0, q(3, 4), one),
        ],
    )?;
    for mu in [q(0, 1), q(1, 5), q(2, 5), q(3, 5)] {
        let model = ServiceModel::Contained(mu);
        let moved = service_time_transform(&instance, &model)?;
        let opt = brute_repairman(&moved, None, &OracleBudget::default())?;
        let spans: Vec<String> = map_back(&instance, &model, &opt.run)?
            .iter()
            .map(|s| format!("{}@[{}, {}]", s.request, s.start, s.end))
            .collect();
        println!("service time {mu}: profit {}  {}", opt.profit, spans.join(" "));
    }
    Ok(())
}
