//! Exact counting and enumeration of the regions of the threshold arrangement
//! `T_n` (hyperplanes `x_i + x_j = 0`) and the boxed threshold arrangement
//! `BT_n` (`T_n` plus the walls `x_i = ±1/2`).
//!
//! Four independent routes are provided and cross-checked:
//!
//! * closed-form characteristic polynomials and region formulas ([`formulas`]),
//! * finite-field point counting with exact interpolation ([`arrangement`]),
//! * bijective enumeration by signed ordered partitions ([`orders`]) and by
//!   colored threshold graphs ([`graphs`]),
//! * a brute-force sign-vector oracle over a generic lattice ([`oracle`]).
//!
//! Everything is exact: integers are arbitrary precision and no floating point
//! is used anywhere.

pub mod arrangement;
pub mod cli;
pub mod combinat;
pub mod error;
pub mod exactmath;
pub mod formulas;
pub mod graphs;
pub mod oracle;
pub mod orders;
pub mod reference;
pub mod sign;

pub use error::{Error, Result};
pub use exactmath::{BigInt, BigRational, Polynomial, TruncatedSeries};
pub use sign::Sign;
