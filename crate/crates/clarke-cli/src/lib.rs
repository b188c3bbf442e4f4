//! File formats, reports and the command dispatcher behind the `clarke`
//! binary.

pub mod bundled;
pub mod compute;
pub mod formats;
pub mod report;
pub mod run;

pub use run::{execute, run, run_on_text, Cli, Command, Outcome};
