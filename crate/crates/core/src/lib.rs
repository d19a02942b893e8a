//! Exact and asymptotic distribution of the number of hook lengths
//! divisible by t over the integer partitions of n.
//!
//! The count over a uniformly random partition of n is an integer random
//! variable supported on {0, ..., floor(n/t)}. Its exact law comes out of
//! q-series: the coefficient generating polynomial factors through
//! t-colored and t-core partition counts, so `hookstat::coeff_table`
//! produces exact big-integer coefficient tables at n in the thousands.
//! The `dist` layer turns tables into PMFs, CDFs, scaled mass functions on
//! their natural grid, characteristic functions, and compares them with
//! the shifted-Gamma limit law and with closed-form continuous
//! approximations and saddle-point estimates.
//!
//! Layout:
//! - [`series`]: truncated integer power series, eta-quotient expansion,
//!   partition numbers, an on-disk series cache.
//! - [`hookstat`]: partitions, hook lengths, brute-force oracles, the
//!   closed-form coefficient routes, support statistics, q-series
//!   identity verification.
//! - [`dist`]: probability layer over coefficient tables.
//! - [`checks`]: the runnable verification suite backing `verify`.

pub mod checks;
pub mod dist;
pub mod error;
pub mod hookstat;
pub mod series;

pub use dist::{CdfRow, CharRow, CurveRow, DistReport, GammaParams, GridPoint, SaddleValue};
pub use error::{Error, Result};
pub use hookstat::{CoeffTable, Partition, SupportStats};
pub use series::{EtaFactor, IntSeries};
