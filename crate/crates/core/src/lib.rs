//! Exact computations with polynomials over the rational quaternions, the
//! pseudo-root algebra `Q_n`, noncommutative symmetric functions, and a
//! check that no bialgebra structure on `Q_n` extends the one on NSym.

pub mod cli;
pub mod error;
pub mod freealg;
pub mod linalg;
pub mod ncpoly;
pub mod nogo;
pub mod nsym;
pub mod qn;
pub mod scalars;

pub use error::{Error, Result};
