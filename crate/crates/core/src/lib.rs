//! Exact and Monte Carlo tools for comparing adaptive corruption of a sample
//! with oblivious corruption of the distribution it is drawn from.
//!
//! Modules build on each other in order: [`probkit`] (distributions,
//! information measures, transport), [`costs`] (corruption cost functions),
//! [`adversary`] (feasible corruptions and worst-case values), [`simulate`]
//! (turning adaptive corruption into a mixture of oblivious ones) and [`lab`]
//! (reproducible experiments with reports).

pub mod combinatorics;
pub mod costs;
pub mod error;
pub mod lab;
pub mod lp;
pub mod mc;
pub mod numfmt;
pub mod probkit;
pub mod simulate;
pub mod adversary;

pub use error::{Error, Result};
