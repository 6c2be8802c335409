//! Library surface of the `geoflow` command-line tool: run configuration,
//! initial-condition expressions, trajectory/report serialization, and the
//! randomized algebra property suites.

pub mod app;
pub mod config;
pub mod expr;
pub mod fault;
pub mod report;
pub mod suites;
