//! File formats, threaded enumeration and the command-line front end for
//! [`tpmc_core`].
//!
//! * [`format`]: JSON documents for instances, solutions and graphs.
//! * [`parallel`]: enumeration passes split across threads.
//! * [`report`]: output documents of each subcommand.
//! * [`cli`]: argument parsing and dispatch.

pub mod cli;
pub mod format;
pub mod parallel;
pub mod report;

pub use format::{parse_graph, parse_instance, parse_solution, write_graph, write_instance, write_solution, FormatError};
