//! Coupling design for perfect state transfer (PST) in XY spin chains.
//!
//! Given a preselected spectrum that is symmetric about zero, this crate
//! builds the unique positive, mirror-symmetric nearest-neighbour coupling
//! scheme of a zero-diagonal tridiagonal operator with that spectrum. It then
//! checks the result twice: exactly, by comparing characteristic polynomials
//! over arbitrary-precision rationals, and dynamically, by evolving a single
//! excitation through the chain.
//!
//! The numerical core is generic over [`Scalar`], which is implemented for
//! `f32`, `f64` and [`Exact`] (arbitrary-precision rationals). The same
//! recursion therefore runs exactly or in floating point.
//!
//! ```
//! use pstforge::{solver, spectra, verifier};
//!
//! let spectrum = spectra::gen_linear(4).unwrap();
//! let scheme = solver::solve(&spectrum).unwrap();
//! assert_eq!(scheme.couplings_squared_text(), vec!["3/4", "1", "3/4"]);
//!
//! let report = verifier::verify_exact(&scheme, &spectrum).unwrap();
//! assert!(report.exact_spectrum_match);
//! ```

pub mod error;
pub mod exactnum;
pub mod scalar;
pub mod scheme_file;
pub mod solver;
pub mod spectra;
pub mod verifier;

pub use error::{Error, Result};
pub use exactnum::{ChainOperator, EigenSystem, MonicPolynomial};
pub use scalar::Scalar;
pub use scheme_file::SchemeFile;
pub use solver::{CouplingScheme, RecursionState};
pub use spectra::{Parity, PstValidityReport, Spectrum};
pub use verifier::VerificationReport;

/// Arbitrary-precision rational used for every exact construction.
pub type Exact = num_rational::BigRational;

pub type ExactSpectrum = Spectrum<Exact>;
pub type FloatSpectrum = Spectrum<f64>;
pub type ExactScheme = CouplingScheme<Exact>;
pub type FloatScheme = CouplingScheme<f64>;
pub type ExactChain = ChainOperator<Exact>;
pub type ExactPolynomial = MonicPolynomial<Exact>;
pub type FloatEigenSystem = EigenSystem<f64>;
