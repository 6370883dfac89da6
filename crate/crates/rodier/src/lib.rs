//! Command line front end, file formats and verification driver for
//! `rodier-core`.

pub mod cache;
pub mod dot;
pub mod error;
pub mod pipeline;
pub mod report;
pub mod spec;
pub mod verify;

pub use error::CliError;
