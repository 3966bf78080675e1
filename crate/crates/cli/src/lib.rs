//! Scenario runner, report format and artifact cache behind the `modrep` command.

pub mod cache;
pub mod failure;
pub mod report;
pub mod runner;
pub mod scenario;

pub use cache::Cache;
pub use failure::{Failure, FailureClass};
pub use report::{Assertion, Diagnostics, RunReport, TaskReport};
pub use runner::{run_scenario, RunOptions, DEFAULT_SEED};
pub use scenario::{Scenario, Task};
