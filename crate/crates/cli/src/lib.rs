//! Problem files, cached complexes and report envelopes for the `cyclix`
//! command line tool.

pub mod cache;
pub mod commands;
pub mod envelope;
pub mod problem;
