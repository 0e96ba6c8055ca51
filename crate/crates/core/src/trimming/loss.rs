use super::trim::TrimmedInstance;
use crate::model::{ServiceEvent, ServiceRun};

/// The three best-of-three candidates built from a run on untrimmed windows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LossCandidates {
    /// Events already inside their target periods, unchanged.
    pub target: ServiceRun,
    /// Events in the period before their target, run started one period later.
    pub late: ServiceRun,
    /// Events in the period after their target, run started one period earlier.
    pub early: ServiceRun,
}

impl LossCandidates {
    pub fn all(&self) -> [&ServiceRun; 3] {
        [&self.target, &self.late, &self.early]
    }

    pub fn best_len(&self) -> usize {
        self.all().iter().map(|r| r.len()).max().unwrap_or(0)
    }
}

/// Splits `run` by where each event sits relative to its trimmed period and
/// shifts the late and early parts onto their targets. Each candidate is a
/// subsequence of `run` translated in time, so it keeps the travel slack.
pub fn limited_loss_candidates(run: &ServiceRun, trimmed: &TrimmedInstance) -> LossCandidates {
    let len = trimmed.grid.length;
    let mut target = Vec::new();
    let mut late = Vec::new();
    let mut early = Vec::new();
    for e in &run.events {
        let Some((a, b)) = trimmed.target(e.request) else {
            continue;
        };
        if a <= e.time && e.time < b {
            target.push(*e);
        } else if a - len <= e.time && e.time < a {
            late.push(ServiceEvent::new(e.request, e.time + len));
        } else if b <= e.time && e.time < b + len {
            early.push(ServiceEvent::new(e.request, e.time - len));
        }
    }
    LossCandidates {
        target: ServiceRun::new(target, run.speed),
        late: ServiceRun::new(late, run.speed),
        early: ServiceRun::new(early, run.speed),
    }
}
