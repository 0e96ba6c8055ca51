//! Line-oriented text format for instances and solutions.
//!
//! ```text
//! twr 1
//! metric tree
//! node 0
//! node 1
//! edge 0 1 3/2
//! request 0 1 0 1
//! request 1 0 1/4 1 2
//! ```
//!
//! Sections come in the order shown. `#` starts a comment. Rationals are
//! written `p/q` or as terminating decimals and always printed as `p/q`.

use std::collections::HashSet;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::metric::{build_metric, Edge, MetricKind};
use crate::model::{Instance, RequestId, ServiceEvent, ServiceRequest, ServiceRun, ServiceTour};
use crate::rational::Rational;

pub const FORMAT_VERSION: u32 = 1;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Non-empty lines with comments removed, as `(line number, fields)`.
fn directives(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn arity(line: usize, fields: &[&str], min: usize, max: usize) -> Result<()> {
    let got = fields.len() - 1;
    if got < min || got > max {
        let want = if min == max { format!("{min}") } else { format!("{min} to {max}") };
        return Err(parse_err(line, format!("`{}` takes {want} arguments, found {got}", fields[0])));
    }
    Ok(())
}

fn rational(line: usize, what: &str, s: &str) -> Result<Rational> {
    s.parse().map_err(|_| parse_err(line, format!("invalid {what} `{s}`")))
}

fn integer<T: std::str::FromStr>(line: usize, what: &str, s: &str) -> Result<T> {
    if s.starts_with('+') {
        return Err(parse_err(line, format!("invalid {what} `{s}`")));
    }
    s.parse().map_err(|_| parse_err(line, format!("invalid {what} `{s}`")))
}

fn header(line: usize, fields: &[&str]) -> Result<()> {
    if fields[0] != "twr" {
        return Err(parse_err(line, format!("expected header `twr {FORMAT_VERSION}`, found `{}`", fields[0])));
    }
    arity(line, fields, 1, 1)?;
    let v: u32 = integer(line, "version", fields[1])?;
    if v != FORMAT_VERSION {
        return Err(parse_err(line, format!("unsupported version {v}")));
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Header,
    Metric,
    Nodes,
    Edges,
    Requests,
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut section = Section::Header;
    let mut kind = None;
    let mut metric_line = 0;
    let mut nodes = 0usize;
    let mut edges: Vec<Edge> = Vec::new();
    let mut requests: Vec<ServiceRequest> = Vec::new();
    let mut ids = HashSet::new();
    let mut last_line = 0;

    fn advance(line: usize, to: Section, current: &mut Section) -> Result<()> {
        if to < *current {
            return Err(parse_err(line, "directive out of order"));
        }
        *current = to;
        Ok(())
    }

    for (line, f) in directives(text) {
        last_line = line;
        if section == Section::Header {
            header(line, &f)?;
            section = Section::Metric;
            continue;
        }
        match f[0] {
            "metric" => {
                if kind.is_some() {
                    return Err(parse_err(line, "duplicate `metric` directive"));
                }
                advance(line, Section::Metric, &mut section)?;
                arity(line, &f, 1, 1)?;
                kind = Some(match f[1] {
                    "tree" => MetricKind::Tree,
                    "graph" => MetricKind::Graph,
                    other => return Err(parse_err(line, format!("unknown metric kind `{other}`"))),
                });
                metric_line = line;
                section = Section::Nodes;
            }
            "node" => {
                if kind.is_none() {
                    return Err(parse_err(line, "`node` before `metric`"));
                }
                advance(line, Section::Nodes, &mut section)?;
                arity(line, &f, 1, 1)?;
                let id: usize = integer(line, "node id", f[1])?;
                if id != nodes {
                    return Err(parse_err(line, format!("expected node {nodes}, found {id}")));
                }
                nodes += 1;
            }
            "edge" => {
                if kind.is_none() {
                    return Err(parse_err(line, "`edge` before `metric`"));
                }
                advance(line, Section::Edges, &mut section)?;
                arity(line, &f, 3, 3)?;
                let u: usize = integer(line, "node id", f[1])?;
                let v: usize = integer(line, "node id", f[2])?;
                let w = rational(line, "weight", f[3])?;
                for x in [u, v] {
                    if x >= nodes {
                        return Err(parse_err(line, format!("unknown node {x} ({nodes} declared)")));
                    }
                }
                if u == v {
                    return Err(parse_err(line, format!("self-loop at node {u}")));
                }
                if !w.is_positive() {
                    return Err(parse_err(line, format!("non-positive weight {w}")));
                }
                edges.push(Edge::new(u, v, w));
            }
            "request" => {
                if kind.is_none() {
                    return Err(parse_err(line, "`request` before `metric`"));
                }
                advance(line, Section::Requests, &mut section)?;
                arity(line, &f, 4, 5)?;
                let id: u32 = integer(line, "request id", f[1])?;
                let node: usize = integer(line, "node id", f[2])?;
                let start = rational(line, "window start", f[3])?;
                let length = rational(line, "window length", f[4])?;
                let profit: u64 = match f.get(5) {
                    Some(p) => integer(line, "profit", p)?,
                    None => 1,
                };
                if node >= nodes {
                    return Err(parse_err(line, format!("unknown node {node} ({nodes} declared)")));
                }
                if !length.is_positive() {
                    return Err(parse_err(line, format!("non-positive window length {length}")));
                }
                if profit == 0 {
                    return Err(parse_err(line, "profit must be positive"));
                }
                if !ids.insert(id) {
                    return Err(parse_err(line, format!("duplicate request id {id}")));
                }
                requests.push(ServiceRequest::new(id, node, start, length).with_profit(profit));
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }

    if section == Section::Header {
        return Err(parse_err(last_line.max(1), "missing header"));
    }
    let Some(kind) = kind else {
        return Err(parse_err(last_line.max(1), "missing `metric` directive"));
    };
    if nodes == 0 {
        return Err(parse_err(metric_line, "no nodes declared"));
    }
    let metric = build_metric(nodes, kind, edges).map_err(|e| parse_err(metric_line, e.to_string()))?;
    Instance::new(metric, requests).map_err(|e| parse_err(last_line, e.to_string()))
}

pub fn serialize_instance(instance: &Instance) -> String {
    let mut out = String::new();
    let m = &instance.metric;
    writeln!(out, "twr {FORMAT_VERSION}").unwrap();
    writeln!(out, "metric {}", m.kind()).unwrap();
    for v in 0..m.node_count() {
        writeln!(out, "node {v}").unwrap();
    }
    for e in m.edges() {
        writeln!(out, "edge {} {} {}", e.u, e.v, e.weight).unwrap();
    }
    for r in &instance.requests {
        write!(out, "request {} {} {} {}", r.id, r.node, r.window_start, r.window_length).unwrap();
        if r.profit != 1 {
            write!(out, " {}", r.profit).unwrap();
        }
        out.push('\n');
    }
    out
}

/// A stored answer: a repairman run or a deliveryman tour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Repairman(ServiceRun),
    Deliveryman(ServiceTour),
}

impl Solution {
    pub fn run(&self) -> &ServiceRun {
        match self {
            Solution::Repairman(run) => run,
            Solution::Deliveryman(tour) => &tour.run,
        }
    }
}

pub fn parse_solution(text: &str) -> Result<Solution> {
    let mut kind: Option<&str> = None;
    let mut speed: Option<Rational> = None;
    let mut events = Vec::new();
    let mut seen_header = false;
    let mut last_line = 0;
    for (line, f) in directives(text) {
        last_line = line;
        if !seen_header {
            header(line, &f)?;
            seen_header = true;
            continue;
        }
        match f[0] {
            "solution" => {
                if kind.is_some() {
                    return Err(parse_err(line, "duplicate `solution` directive"));
                }
                arity(line, &f, 1, 1)?;
                kind = Some(match f[1] {
                    "repairman" => "repairman",
                    "deliveryman" => "deliveryman",
                    other => return Err(parse_err(line, format!("unknown solution kind `{other}`"))),
                });
            }
            "speed" => {
                if kind.is_none() {
                    return Err(parse_err(line, "`speed` before `solution`"));
                }
                if speed.is_some() || !events.is_empty() {
                    return Err(parse_err(line, "`speed` must appear once, before events"));
                }
                arity(line, &f, 1, 1)?;
                let s = rational(line, "speed", f[1])?;
                if s.is_negative() {
                    return Err(parse_err(line, format!("negative speed {s}")));
                }
                speed = Some(s);
            }
            "event" => {
                if kind.is_none() {
                    return Err(parse_err(line, "`event` before `solution`"));
                }
                arity(line, &f, 2, 2)?;
                let id: u32 = integer(line, "request id", f[1])?;
                let time = rational(line, "time", f[2])?;
                events.push(ServiceEvent::new(RequestId(id), time));
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }
    if !seen_header {
        return Err(parse_err(last_line.max(1), "missing header"));
    }
    match kind {
        Some("repairman") => Ok(Solution::Repairman(ServiceRun::new(events, speed.unwrap_or(Rational::ONE)))),
        Some(_) => match speed {
            Some(s) => Ok(Solution::Deliveryman(ServiceTour::new(ServiceRun::new(events, s)))),
            None => Err(parse_err(last_line, "deliveryman solution needs a `speed` line")),
        },
        None => Err(parse_err(last_line, "missing `solution` directive")),
    }
}

pub fn serialize_solution(solution: &Solution) -> String {
    let mut out = String::new();
    writeln!(out, "twr {FORMAT_VERSION}").unwrap();
    let run = solution.run();
    match solution {
        Solution::Repairman(_) => {
            writeln!(out, "solution repairman").unwrap();
            if run.speed != Rational::ONE {
                writeln!(out, "speed {}", run.speed).unwrap();
            }
        }
        Solution::Deliveryman(_) => {
            writeln!(out, "solution deliveryman").unwrap();
            writeln!(out, "speed {}", run.speed).unwrap();
        }
    }
    for e in &run.events {
        writeln!(out, "event {} {}", e.request, e.time).unwrap();
    }
    out
}
