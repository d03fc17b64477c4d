//! Spec parsing, suite orchestration and reporting for the `pqn` binary.

pub mod error;
pub mod generate;
pub mod spec;
pub mod suite;

pub use error::{CliError, Result};
pub use generate::generate;
pub use spec::{parse_spec, SpecFile, Structure};
pub use suite::{run_suite, RunOptions, RunReport, Suite};
