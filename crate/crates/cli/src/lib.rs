//! Command-line front end over the core checks.
//!
//! The binary reads JSON documents (`{kind, version, payload}` envelopes),
//! runs the checks a subcommand names, and emits one run report: inputs
//! with content digests, the seed, findings with embedded law reports, and
//! an overall status. Reports serialize canonically (sorted keys, fixed
//! float grammar), so identical runs produce identical bytes.
//!
//! Exit codes: 0 when every check passed, 1 when at least one check found
//! a violation (the report carries the witness), 2 when bad input or bad
//! flags stopped any check from running.

pub mod canon;
pub mod docs;
pub mod maps;
pub mod run;

pub use canon::{canonical_string, fmt_g17, json_f64};
pub use docs::{CliError, Ctx, Document, InputRecord};
pub use run::{emit, execute, resolve_seed, Cli, Command, Outcome, RunReport};
