//! Command-line front end: ID list files in, diagram and region report out.

pub mod args;
pub mod pipeline;
pub mod report;

pub use args::{parse_cli, CliConfig, SetSpec};
pub use pipeline::{run_pipeline, PipelineError};
pub use report::{build_report, dump_regions, Report};
