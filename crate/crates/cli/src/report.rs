//! Run reports: deterministic JSON plus an optional diagnostics section.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::failure::Failure;
use crate::scenario::Task;

pub const REPORT_SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Assertion {
    pub label: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TaskReport {
    pub task: Task,
    pub passed: bool,
    pub assertions: Vec<Assertion>,
    pub data: Value,
}

impl TaskReport {
    pub fn new(task: Task) -> TaskReport {
        TaskReport {
            task,
            passed: true,
            assertions: Vec::new(),
            data: Value::Object(Default::default()),
        }
    }

    pub fn check(&mut self, label: &str, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.assertions.push(Assertion {
            label: label.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    /// Compare with an optional expected value.
    pub fn expect<T: PartialEq + std::fmt::Debug>(&mut self, label: &str, actual: &T, expected: Option<&T>) {
        if let Some(e) = expected {
            let passed = actual == e;
            let found = format!("{actual:?}");
            let detail = if passed && found.len() > 40 {
                String::new()
            } else if passed {
                found
            } else {
                format!("expected {e:?}, found {found}")
            };
            self.check(label, passed, detail);
        }
    }

    pub fn put(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report data serializes");
        if let Value::Object(m) = &mut self.data {
            m.insert(key.to_string(), v);
        }
    }
}

/// Timings and cache statistics; these vary between runs and stay out of the report proper
/// unless asked for.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    pub task_seconds: Vec<(Task, f64)>,
    pub cache_hits: usize,
    pub cache_misses: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub report_schema_version: u32,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario_name: Option<String>,
    pub scenario_hash: String,
    pub seed: u64,
    /// Degree of the field actually used; larger than requested after escalation.
    pub field_degree: u32,
    pub tasks: Vec<TaskReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<Diagnostics>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        self.failure.as_ref().map_or(0, |f| f.exit_code)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// A plain-text table: one line per assertion, then the verdict.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let width = self
            .tasks
            .iter()
            .flat_map(|t| t.assertions.iter().map(|a| a.label.len()))
            .max()
            .unwrap_or(0);
        for t in &self.tasks {
            let _ = writeln!(out, "[{}]", t.task.name());
            for a in &t.assertions {
                let mark = if a.passed { "ok  " } else { "FAIL" };
                let _ = writeln!(out, "  {mark} {:<width$}  {}", a.label, a.detail);
            }
        }
        if let Some(d) = &self.diagnostics {
            for (t, s) in &d.task_seconds {
                let _ = writeln!(out, "time {:<20} {s:.2}s", t.name());
            }
            let _ = writeln!(out, "cache hits {} misses {}", d.cache_hits, d.cache_misses);
        }
        if let Some(v) = &self.verdict {
            let _ = writeln!(out, "verdict: {v}");
        }
        match &self.failure {
            None => {
                let _ = writeln!(out, "result: pass");
            }
            Some(f) => {
                let _ = writeln!(out, "result: {f} (exit {})", f.exit_code);
            }
        }
        out
    }
}
