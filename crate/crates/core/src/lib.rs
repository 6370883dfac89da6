#![no_std]
//! Exact combinatorics behind the decomposition of regular generalized
//! principal series: root systems, relative Weyl groups of standard Levi
//! subgroups, relative chambers cut by reducibility walls, and the resulting
//! constituent parametrization with Jacquet modules and flags.
//!
//! The crate is `no_std` (with `alloc`) and does no IO; the `rodier` crate
//! carries the command line, file formats and caching.

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arrangement;
pub mod cartan;
pub mod constituents;
pub mod error;
pub mod levi;
pub mod linalg;
pub mod poles;

pub use arrangement::{Arrangement, Chamber, Component, Sign, WallSet};
pub use cartan::{CartanType, Family, RootSystem, WeylElement, WeylGroup};
pub use constituents::{Constituent, DecompositionReport, Flags};
pub use error::{Error, Result};
pub use levi::{LeviDatum, RelativeRoot, RelativeWeylGroup};
pub use linalg::{Rational, Vector};
pub use poles::{InducingDatum, PoleSpec};
