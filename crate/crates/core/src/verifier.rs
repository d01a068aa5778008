//! Independent checks of a constructed scheme: exact characteristic
//! polynomial, transfer fidelity, mirror inversion, and the float round trip.

use std::f64::consts::PI;

use num_traits::Zero;

use crate::exactnum::{eig_sym_tridiag, evolve_excitation, transfer_amplitude, EigenSystem};
use crate::solver::{self, CouplingScheme};
use crate::spectra::{validate_pst, Parity, Spectrum};
use crate::{ChainOperator, Error, Exact, Result, Scalar};

/// A PST chain must reach `|⟨N|e^{−iHt}|1⟩| ≥ 1 − FIDELITY_TOLERANCE`.
pub const FIDELITY_TOLERANCE: f64 = 1e-9;
/// Largest accepted `|1 − |⟨N+1−m|e^{−iHt}|m⟩||` over all sites m.
pub const MIRROR_TOLERANCE: f64 = 1e-9;
/// Round trips whose smallest level gap (relative to ‖H‖) falls below this are flagged.
pub const ILL_CONDITIONED_GAP: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientMismatch {
    pub degree: usize,
    pub got: Exact,
    pub expected: Exact,
}

/// Outcome of verifying a scheme. The dynamical fields stay `None` when only
/// the exact check ran.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub exact_spectrum_match: bool,
    pub coefficient_mismatches: Vec<CoefficientMismatch>,
    pub fidelity_at_pi: Option<f64>,
    pub fidelity_phase: Option<f64>,
    pub mirror_deviation: Option<f64>,
    pub pst_valid: Option<bool>,
}

impl VerificationReport {
    pub fn fidelity_ok(&self) -> bool {
        self.fidelity_at_pi.is_some_and(|f| f >= 1.0 - FIDELITY_TOLERANCE)
    }

    pub fn mirror_ok(&self) -> bool {
        self.mirror_deviation.is_some_and(|d| d <= MIRROR_TOLERANCE)
    }

    /// Conjunction of every check in the report.
    pub fn passed(&self) -> bool {
        self.exact_spectrum_match && self.pst_valid == Some(true) && self.fidelity_ok() && self.mirror_ok()
    }
}

/// Compares det(λI − H) of the scheme with ∏(λ² − Λ_i²) (times λ for odd
/// chains), coefficient by coefficient, in exact arithmetic.
pub fn verify_exact(scheme: &CouplingScheme<Exact>, spectrum: &Spectrum<Exact>) -> Result<VerificationReport> {
    if scheme.n_sites() != spectrum.n_sites() {
        return Err(Error::DimensionMismatch {
            expected: spectrum.n_sites(),
            found: scheme.n_sites(),
        });
    }
    let got = scheme.operator().charpoly();
    let expected = spectrum.target_polynomial();
    let coefficient_mismatches: Vec<CoefficientMismatch> = (0..got.degree())
        .filter_map(|k| {
            let (g, e) = (got.coefficient(k), expected.coefficient(k));
            (g != e).then_some(CoefficientMismatch {
                degree: k,
                got: g,
                expected: e,
            })
        })
        .collect();
    Ok(VerificationReport {
        exact_spectrum_match: coefficient_mismatches.is_empty(),
        coefficient_mismatches,
        fidelity_at_pi: None,
        fidelity_phase: None,
        mirror_deviation: None,
        pst_valid: None,
    })
}

fn diagonalize(couplings: &[f64]) -> Result<EigenSystem<f64>> {
    eig_sym_tridiag(couplings, couplings.len() + 1)
}

/// Magnitude and phase of ⟨N|e^{−iHt}|1⟩ for a chain with the given
/// (unsquared) couplings.
pub fn transfer_fidelity(couplings: &[f64], t: f64) -> Result<(f64, f64)> {
    let eig = diagonalize(couplings)?;
    let amp = transfer_amplitude(&eig, 1, eig.dim(), t)?;
    Ok((amp.norm(), amp.arg()))
}

pub fn fidelity_check<T: Scalar>(scheme: &CouplingScheme<T>, t: f64) -> Result<(f64, f64)> {
    transfer_fidelity(scheme.couplings_float(), t)
}

/// Largest end-to-end fidelity over `samples` equally spaced times in [0, t_max].
pub fn max_transfer_fidelity(couplings: &[f64], t_max: f64, samples: usize) -> Result<f64> {
    let eig = diagonalize(couplings)?;
    let n = eig.dim();
    let steps = samples.max(2) - 1;
    (0..=steps).try_fold(0.0f64, |best, s| {
        let t = t_max * s as f64 / steps as f64;
        Ok(best.max(transfer_amplitude(&eig, 1, n, t)?.norm()))
    })
}

/// max over source sites m of |1 − |⟨N+1−m|e^{−iHt}|m⟩||.
pub fn mirror_deviation(couplings: &[f64], t: f64) -> Result<f64> {
    let eig = diagonalize(couplings)?;
    let n = eig.dim();
    (1..=n).try_fold(0.0f64, |worst, m| {
        let amps = evolve_excitation(&eig, m, t)?;
        Ok(worst.max((1.0 - amps[n - m].norm()).abs()))
    })
}

/// Mirror inversion at the transfer time t = π.
pub fn mirror_inversion_check<T: Scalar>(scheme: &CouplingScheme<T>) -> Result<f64> {
    mirror_deviation(scheme.couplings_float(), PI)
}

/// Exact check plus PST validity, fidelity and mirror inversion at
/// t = τ·π. The odd-gap test is applied to the spectrum scaled by τ.
pub fn verify(scheme: &CouplingScheme<Exact>, tau: &Exact) -> Result<VerificationReport> {
    if *tau <= Exact::zero() {
        return Err(Error::InvalidParam(format!("tau must be positive, got {tau}")));
    }
    let mut report = verify_exact(scheme, scheme.source_spectrum())?;
    let t = Scalar::to_f64(tau) * PI;
    let (magnitude, phase) = fidelity_check(scheme, t)?;
    report.fidelity_at_pi = Some(magnitude);
    report.fidelity_phase = Some(phase);
    report.mirror_deviation = Some(mirror_deviation(scheme.couplings_float(), t)?);
    report.pst_valid = Some(validate_pst(&scheme.source_spectrum().scaled(tau)?).is_valid);
    Ok(report)
}

/// Result of rebuilding a chain from its own floating-point spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundTrip {
    pub recovered: Vec<f64>,
    pub max_relative_error: f64,
    /// Smallest distance between distinct eigenvalues, relative to ‖H‖.
    pub min_relative_gap: f64,
}

impl RoundTrip {
    pub fn ill_conditioned(&self) -> bool {
        self.min_relative_gap < ILL_CONDITIONED_GAP
    }
}

/// Diagonalizes the chain, keeps the positive half-spectrum, runs the
/// floating-point recursion on it, and compares the recovered `J_i²` with the
/// input.
pub fn roundtrip_float(j_squared_full: &[f64]) -> Result<RoundTrip> {
    let op = ChainOperator::new(j_squared_full.to_vec())?;
    let n_sites = op.n_sites();
    let eig = diagonalize(&op.couplings_float())?;
    let parity = Parity::of_sites(n_sites);
    let n = n_sites / 2;
    let positive: Vec<f64> = eig.values[n_sites - n..].to_vec();
    let norm = eig.norm();
    let min_relative_gap = eig
        .values
        .windows(2)
        .map(|w| (w[1] - w[0]) / norm)
        .fold(f64::INFINITY, f64::min);
    if positive[0] <= 0.0 || positive.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::OrderingBreakdown(format!(
            "positive half-spectrum is not strictly increasing and positive: {positive:?}"
        )));
    }
    let breakdown = |e: Error| Error::OrderingBreakdown(e.to_string());
    let spectrum = Spectrum::new(positive, parity).map_err(breakdown)?;
    let scheme = solver::solve(&spectrum).map_err(breakdown)?;
    let recovered = scheme.couplings_squared().to_vec();
    if recovered.iter().any(|x| !x.is_finite()) {
        return Err(Error::OrderingBreakdown("recursion produced non-finite couplings".into()));
    }
    let max_relative_error = recovered
        .iter()
        .zip(j_squared_full)
        .map(|(r, x)| ((r - x) / x).abs())
        .fold(0.0, f64::max);
    Ok(RoundTrip {
        recovered,
        max_relative_error,
        min_relative_gap,
    })
}
