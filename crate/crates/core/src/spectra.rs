//! Half-spectra, the odd-gap PST test, and the built-in eigenvalue families.
//!
//! Energies are in units of π/τ, so a valid spectrum transfers perfectly at t = π.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exactnum::rational::{format_exact, parse_rational_list, ratio};
use crate::exactnum::MonicPolynomial;
use crate::{Error, Exact, Result, Scalar};

/// Whether the chain has an even or odd number of sites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// Full spectrum {±Λ_i}.
    Even,
    /// Full spectrum {0, ±Λ_i}.
    Odd,
}

impl Parity {
    pub fn of_sites(n_sites: usize) -> Self {
        if n_sites.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn n_sites(self, n_levels: usize) -> usize {
        match self {
            Parity::Even => 2 * n_levels,
            Parity::Odd => 2 * n_levels + 1,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::Parse(format!("parity must be 'even' or 'odd', got {other:?}"))),
        }
    }
}

/// The positive half {Λ_i} of a spectrum symmetric about zero.
///
/// Levels are distinct, strictly positive, and stored in descending order.
/// The zero level of odd chains is implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T> {
    levels: Vec<T>,
    parity: Parity,
}

impl<T: Scalar> Spectrum<T> {
    pub fn new(mut levels: Vec<T>, parity: Parity) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        if let Some(bad) = levels.iter().find(|l| **l <= T::zero()) {
            return Err(Error::InvalidSpectrum(format!("level {bad} is not positive")));
        }
        levels.sort_by(|a, b| b.partial_cmp(a).expect("levels are ordered"));
        if let Some(w) = levels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidSpectrum(format!("level {} is repeated", w[0])));
        }
        Ok(Self { levels, parity })
    }

    /// Λ_i in descending order.
    pub fn positive_levels(&self) -> &[T] {
        &self.levels
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn n_sites(&self) -> usize {
        self.parity.n_sites(self.levels.len())
    }

    /// Every eigenvalue, sorted descending.
    pub fn full_spectrum(&self) -> Vec<T> {
        let mut full = self.levels.clone();
        if self.parity == Parity::Odd {
            full.push(T::zero());
        }
        full.extend(self.levels.iter().rev().map(|l| -l.clone()));
        full
    }

    /// ∏(λ² − Λ_i²), times λ for odd chains: the characteristic polynomial
    /// det(λI − H) a chain with this spectrum must have.
    pub fn target_polynomial(&self) -> MonicPolynomial<T> {
        MonicPolynomial::from_symmetric_roots(&self.levels, self.parity == Parity::Odd)
    }

    /// Same spectrum in double precision; fails if rounding merges levels.
    pub fn to_float(&self) -> Result<Spectrum<f64>> {
        Spectrum::new(self.levels.iter().map(Scalar::to_f64).collect(), self.parity)
    }
}

impl Spectrum<Exact> {
    /// Parses the comma-separated text form, e.g. `"9/2,7/2,3/2,1/2"`.
    pub fn parse(text: &str, parity: Parity) -> Result<Self> {
        Self::new(parse_rational_list(text)?, parity)
    }

    /// Comma-separated `p/q` text form, descending.
    pub fn to_text(&self) -> String {
        self.levels.iter().map(format_exact).collect::<Vec<_>>().join(",")
    }

    /// Multiplies every level by a positive rational.
    pub fn scaled(&self, factor: &Exact) -> Result<Self> {
        Self::new(self.levels.iter().map(|l| l * factor).collect(), self.parity)
    }
}

/// A pair of adjacent eigenvalues (indices into the descending full spectrum)
/// whose difference is not an odd integer.
#[derive(Clone, Debug, PartialEq)]
pub struct GapViolation {
    pub upper: usize,
    pub lower: usize,
    pub gap: Exact,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PstValidityReport {
    pub is_valid: bool,
    pub gap_violations: Vec<GapViolation>,
    pub sorted_full_spectrum: Vec<Exact>,
}

fn is_odd_integer(x: &Exact) -> bool {
    x.is_integer() && x.to_integer().is_odd()
}

/// Checks that every adjacent gap of the full (descending) spectrum is an odd integer.
pub fn validate_pst(spectrum: &Spectrum<Exact>) -> PstValidityReport {
    let full = spectrum.full_spectrum();
    let gap_violations: Vec<GapViolation> = full
        .windows(2)
        .enumerate()
        .filter_map(|(i, w)| {
            let gap = &w[0] - &w[1];
            (!is_odd_integer(&gap)).then_some(GapViolation {
                upper: i,
                lower: i + 1,
                gap,
            })
        })
        .collect();
    PstValidityReport {
        is_valid: gap_violations.is_empty(),
        gap_violations,
        sorted_full_spectrum: full,
    }
}

/// Equally spaced spectrum {−k, …, k} with unit gaps, k = (N−1)/2.
///
/// Even N gives Λ_i = (2i−1)/2; odd N gives Λ_i = i.
pub fn gen_linear(n_sites: usize) -> Result<Spectrum<Exact>> {
    if n_sites < 2 {
        return Err(Error::InvalidParam(format!("n_sites must be >= 2, got {n_sites}")));
    }
    let parity = Parity::of_sites(n_sites);
    let n = n_sites / 2;
    let levels = (1..=n as i64)
        .map(|i| match parity {
            Parity::Even => ratio(2 * i - 1, 2),
            Parity::Odd => ratio(i, 1),
        })
        .collect();
    Spectrum::new(levels, parity)
}

fn check_ts(n_sites: usize) -> Result<()> {
    if n_sites < 2 || !n_sites.is_multiple_of(2) {
        return Err(Error::InvalidParam(format!(
            "the (T, S) family needs an even n_sites >= 2, got {n_sites}"
        )));
    }
    Ok(())
}

/// Λ_i = T + 1/2 + i(2S+1), i = 1..N/2: gaps 2S+1 on each side of zero and a
/// gap of 2T + 4S + 3 across zero.
pub fn gen_ts(n_sites: usize, t: u64, s: u64) -> Result<Spectrum<Exact>> {
    check_ts(n_sites)?;
    let base = Exact::from_integer(BigInt::from(t)) + ratio(1, 2);
    let step = BigInt::from(2 * s + 1);
    let levels = (1..=n_sites / 2)
        .map(|i| &base + Exact::from_integer(&step * BigInt::from(i)))
        .collect();
    Spectrum::new(levels, Parity::Even)
}

/// Closed-form squared couplings of the (T, S) family, i = 1..N−1:
/// `i(N−i)(1+2S)²/4` for even i and
/// `((1+2T)+(1+i)(1+2S))((1+2T)+(N+1−i)(1+2S))/4` for odd i.
pub fn ts_closed_form_couplings(n_sites: usize, t: u64, s: u64) -> Result<Vec<Exact>> {
    check_ts(n_sites)?;
    let n = BigInt::from(n_sites);
    let a = BigInt::from(1 + 2 * t);
    let b = BigInt::from(1 + 2 * s);
    let four = BigInt::from(4);
    Ok((1..n_sites)
        .map(|i| {
            let i = BigInt::from(i);
            let num = if i.is_even() {
                &i * (&n - &i) * &b * &b
            } else {
                (&a + (BigInt::one() + &i) * &b) * (&a + (&n + 1 - &i) * &b)
            };
            Exact::new(num, four.clone())
        })
        .collect())
}

/// Random PST-valid spectrum whose adjacent gaps are odd integers drawn
/// uniformly from {1, 3, …, gap_max}.
///
/// Reproducible: the generator is ChaCha8 seeded via `seed_from_u64(seed)`, and
/// each odd draw is `2·U{0..=(gap_max−1)/2} + 1`. The first draw fixes the
/// smallest level (even chains: Λ_min = draw/2, so the gap across zero is the
/// draw itself; odd chains: Λ_min = draw). Each later draw is the gap to the
/// next level up.
pub fn gen_random_odd_gaps(n_levels: usize, parity: Parity, gap_max: u64, seed: u64) -> Result<Spectrum<Exact>> {
    if n_levels < 1 {
        return Err(Error::InvalidParam("n_levels must be >= 1".into()));
    }
    if gap_max < 1 || gap_max.is_multiple_of(2) {
        return Err(Error::InvalidParam(format!("gap_max must be an odd integer >= 1, got {gap_max}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half_range = (gap_max - 1) / 2;
    let mut odd_draw = || Exact::from_integer(BigInt::from(2 * rng.random_range(0..=half_range) + 1));

    let first = odd_draw();
    let mut level = match parity {
        Parity::Even => first / Exact::from_integer(BigInt::from(2)),
        Parity::Odd => first,
    };
    let mut levels = Vec::with_capacity(n_levels);
    levels.push(level.clone());
    for _ in 1..n_levels {
        level += odd_draw();
        levels.push(level.clone());
    }
    Spectrum::new(levels, parity)
}

/// A built-in spectrum family, for listing by the CLI.
#[derive(Clone, Copy, Debug)]
pub struct FamilyInfo {
    pub name: &'static str,
    pub parameters: &'static str,
    pub description: &'static str,
    pub provenance: &'static str,
}

pub const CATALOG: &[FamilyInfo] = &[
    FamilyInfo {
        name: "linear",
        parameters: "--n N",
        description: "equally spaced spectrum {-k, ..., k}, k = (N-1)/2; couplings J_i^2 = i(N-i)/4",
        provenance: "Christandl et al., PRL 92, 187902 (2004); Albanese et al., PRL 93, 230502 (2004)",
    },
    FamilyInfo {
        name: "ts",
        parameters: "--n N (even) --T t --S s",
        description: "levels +-(T + 1/2 + i(2S+1)), i = 1..N/2; closed-form couplings; S = 0 gives the gapped half-integer family",
        provenance: "closed-form two-parameter family; S = 0 is the gapped half-integer spectrum of Shi, Li, Song and Sun (2005)",
    },
    FamilyInfo {
        name: "random",
        parameters: "--n N --gap-max g --seed k",
        description: "adjacent gaps drawn uniformly from the odd integers in [1, g] (ChaCha8, seed_from_u64)",
        provenance: "stress family for the exact recursion: large levels, large rationals",
    },
];
