//! File formats, random samplers, verification suites and the command line
//! on top of `graphmat-core`.

pub mod cli;
pub mod error;
pub mod io;
pub mod sample;
pub mod suites;

pub use error::{Error, Result};
pub use graphmat_core as core;
