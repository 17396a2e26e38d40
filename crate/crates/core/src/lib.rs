//! Sharp large-deviation tail approximations for the number of descents
//! `D_n` and the major index `M_n` of a uniform random permutation, together
//! with the exact and Monte Carlo machinery used to check them.
//!
//! The crate is organized bottom-up:
//!
//! * [`cgf`]: the cumulant generating functions `L_D`, `L_M`, the prefactor
//!   `H`, the finite-`n` transform `L_n` and all their derivatives.
//! * [`saddle`]: dual equations `L'(t_x) = x`, rate functions and the
//!   derivative tables consumed by the expansions.
//! * [`sldp`]: the tail approximations themselves, including a generic-order
//!   generator for the descents bracket.
//! * [`exact`]: big-integer Eulerian and Mahonian rows, exact tails, the
//!   Irwin–Hall closed form and characteristic-function inversion.
//! * [`montecarlo`]: seeded permutation sampling.
//! * [`report`]: comparison rows shared by the CLI and the test suites.

pub mod cgf;
pub mod error;
pub mod exact;
pub mod montecarlo;
pub mod report;
pub mod saddle;
pub mod sldp;

mod statistic;

pub use error::{Error, Result};
pub use statistic::Statistic;
