//! File formats, report serialization and the command-line front end for
//! [`oscsync_core`].

pub mod cli;
pub mod formats;
pub mod report;
