//! Structured check reports: stable ids, exact computed/expected
//! renderings, deterministic ordering.

use serde::Serialize;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub computed: String,
    pub expected: String,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suite: suite.to_string(), checks: Vec::new() }
    }

    /// Records one check; equal rendered values pass, unequal fail.
    pub fn check(&mut self, id: &str, anchor: &str, computed: String, expected: String) {
        let status = if computed == expected { Status::Pass } else { Status::Fail };
        self.push(id, anchor, status, computed, expected);
    }

    /// Records a check whose work runs inside the closure, timing it.
    pub fn timed(
        &mut self,
        id: &str,
        anchor: &str,
        f: impl FnOnce() -> (String, String),
    ) {
        let start = Instant::now();
        let (computed, expected) = f();
        let elapsed = start.elapsed().as_millis();
        let status = if computed == expected { Status::Pass } else { Status::Fail };
        self.checks.push(Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            status,
            computed,
            expected,
            elapsed_ms: elapsed,
        });
    }

    pub fn push(&mut self, id: &str, anchor: &str, status: Status, computed: String, expected: String) {
        debug_assert!(
            self.checks.iter().all(|c| c.id != id),
            "duplicate check id {id}"
        );
        self.checks.push(Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            status,
            computed,
            expected,
            elapsed_ms: 0,
        });
    }

    pub fn skip(&mut self, id: &str, anchor: &str, note: &str) {
        self.push(id, anchor, Status::Skipped, note.to_string(), note.to_string());
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn pass_count(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Pass).count()
    }

    pub fn fail_count(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn skipped_count(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Skipped).count()
    }

    pub fn all_passed(&self) -> bool {
        self.fail_count() == 0
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let id_width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            out.push_str(&format!(
                "[{tag}] {:id_width$}  {}  computed={} expected={} ({} ms)\n",
                c.id, c.anchor, c.computed, c.expected, c.elapsed_ms
            ));
        }
        out.push_str(&format!(
            "summary: {} pass, {} fail, {} skipped\n",
            self.pass_count(),
            self.fail_count(),
            self.skipped_count()
        ));
        out
    }
}
