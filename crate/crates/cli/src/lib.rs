//! Scenario runner for the `cl13` verification suites.
//!
//! A [`ScenarioConfig`] names a suite and its inputs; [`run_scenario`] turns
//! it into a [`Report`] whose checks are sorted by name, so that the JSON
//! rendering from [`emit_report`] is byte-identical for identical inputs.

pub mod config;
pub mod report;
pub mod suites;

pub use config::{parse_list, ConfigError, FamilyChoice, Format, ScenarioConfig, Suite, OUT_DIR_ENV};
pub use report::{emit_report, Check, Report, Status, Summary, Tool};
pub use suites::run_scenario;
