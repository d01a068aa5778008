//! Exact rational helpers, characteristic polynomials of zero-diagonal
//! tridiagonal chains, and a floating-point tridiagonal eigensolver with
//! spectral time evolution.

mod chain;
mod dynamics;
mod eigen;
mod poly;
pub mod rational;

pub use chain::ChainOperator;
pub use dynamics::{evolve_excitation, transfer_amplitude};
pub use eigen::{eig_sym_tridiag, EigenSystem};
pub use poly::MonicPolynomial;
