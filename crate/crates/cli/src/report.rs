use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::{Format, ScenarioConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The statement being checked.
    pub anchor: String,
    pub status: Status,
    /// `null` when the computation itself failed.
    pub residual: Option<f64>,
    pub tolerance: f64,
    /// Measured quantity behind the residual, when it is informative.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

impl Default for Tool {
    fn default() -> Self {
        Tool { name: "cl13".into(), version: env!("CARGO_PKG_VERSION").into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool: Tool,
    pub config: Option<ScenarioConfig>,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    /// Sorts checks by name and recounts the summary.
    pub fn new(config: Option<ScenarioConfig>, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
        Report { tool: Tool::default(), config, checks: checks.clone(), summary: Summary { passed: checks.len() - failed, failed } }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

fn fmt_num(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |v| format!("{v:.3e}"))
}

/// Renders `report`; JSON is pretty-printed with a trailing newline.
pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
            let mut s = String::new();
            let _ = writeln!(s, "{} {}", report.tool.name, report.tool.version);
            let _ = writeln!(s, "{:<6} {:<width$} {:>10} {:>10}  statement", "status", "check", "residual", "tol");
            for c in &report.checks {
                let status = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                };
                let _ = write!(s, "{status:<6} {:<width$} {:>10} {:>10}  {}", c.name, fmt_num(c.residual), format!("{:.1e}", c.tolerance), c.anchor);
                if let Some(e) = &c.error {
                    let _ = write!(s, "  [error: {e}]");
                }
                s.push('\n');
            }
            let _ = writeln!(s, "{} passed, {} failed", report.summary.passed, report.summary.failed);
            s
        }
    }
}
