//! Desk-scale numerics for zeros of the Riemann zeta function and its
//! derivative.
//!
//! The crate locates critical-line zeros of zeta and right-half-plane zeros
//! of zeta' with certificates, computes the counting decomposition
//! N(T) = L(T) + S(T) + E(T), and evaluates the Poisson-kernel machinery
//! behind the normalized gap statistic between ordinates of zeta' zeros and
//! their nearest zeta ordinates, including the explicit constants
//! c0 ~ 0.463 and 1/c0 ~ 2.16.

pub mod cli;
pub mod counting;
pub mod error;
pub mod quad;
pub mod specfun;
pub mod theoremlab;
pub mod zerofinder;

pub use error::{Error, Result};
pub use specfun::Accuracy;
