//! File formats, the parallel census and the `glsg` command line, on top of
//! [`glsg_core`].

pub mod census;
pub mod checkpoint;
pub mod cli;
pub mod format;
pub mod report;
