//! Exact computation on finite loops.
//!
//! The crate covers structure-constant rings and the triple loops built
//! from them, dense Cayley-table loops, inner mapping groups, centers,
//! nuclei and central series, identity batteries with exhaustive or seeded
//! sampled scans, and the Bruck loop `Q(1/2)` of a uniquely 2-divisible
//! Moufang loop.

pub mod analysis;
pub mod error;
pub mod half;
pub mod loops;
pub mod mapping;
pub mod report;
pub mod ring;
pub mod sampling;
pub mod session;
pub mod suites;
pub mod verify;

pub use error::{Error, Result};
pub use loops::Loop;
