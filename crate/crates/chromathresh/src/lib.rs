//! File formats, parallel drivers, sweeps and the command-line front end
//! for [`chromathresh_core`].

pub mod cli;
pub mod error;
pub mod format;
pub mod parallel;
pub mod sweep;
pub mod verify;

pub use chromathresh_core as core;
pub use error::{Error, Result};
