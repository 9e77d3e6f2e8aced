//! Polynomials in one central variable `t` over a division ring.
//!
//! Polynomials are kept in left form `a_0 + a_1 t + ... + a_n t^n` and
//! evaluated by substituting on the right of each coefficient. Since the
//! coefficients do not commute, a factorization `f = g h` does not give
//! `f(x) = g(x) h(x)`; [`eval_factored`] implements the corrected rule.

mod matrix;
mod poly;
mod roots;

pub use matrix::{quasidet, vandermonde_matrix, vandermonde_qd, RingMatrix};
pub use poly::{eval_factored, LeftPolynomial};
pub use roots::{expand_factors, vieta, RootSystem};
