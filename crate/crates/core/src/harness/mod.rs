//! Measurement, statistics, file conversion and fuzzing built on the library.

pub mod bench;
pub mod cli;
pub mod fuzz;
pub mod io;
pub mod stats;
