//! Recursive construction of mirror-symmetric couplings from a half-spectrum.
//!
//! The recursion works on `j`-variables. For a chain of N sites with
//! n = ⌊N/2⌋ independent couplings, `j_i = J_i²` for i < n. The middle entry
//! follows a parity convention: `j_n = J_n` (unsquared) for even N and
//! `j_n = 2·J_n²` for odd N.
//!
//! Each extension step adds one level ±Λ and two sites. It uses the previous
//! chain's `j`s, the new chain's already-computed `j_{i+1}..j_n`, and the
//! accumulators
//!
//! ```text
//! Γ_k = j'_{n−1} j'_{n−2} ⋯ j'_{k−1} / (j_n j_{n−1} ⋯ j_{k+1}),  j'_0 = 0,  Γ_n = j'_{n−1}
//! Δ_k = j'_k j'_{k+2} ⋯ / (j_{k+2} j_{k+4} ⋯),                    Δ_{n−1} = j'_{n−1},  Δ_n = 1
//! ```
//!
//! where primes mark the previous chain, and the products in Δ stop at index
//! n−1 (numerator) and n (denominator). Even chains take levels in descending
//! order and use
//!
//! ```text
//! j_i = Γ_i − (−1)^i Λ Δ_i,                      i = n, n−1, …, 1
//! ```
//!
//! Odd chains take levels in ascending order and use
//!
//! ```text
//! j_i = Λ² Δ_i − Γ_i   if n − i is even,   j_i = Δ_i − Γ_i   otherwise.
//! ```
//!
//! Γ and Δ are carried as running products, so one extension costs O(n) and
//! a full solve O(n²) scalar operations.

use num_traits::Zero;

use crate::exactnum::rational::max_bit_size;
use crate::exactnum::ChainOperator;
use crate::spectra::{Parity, Spectrum};
use crate::{Error, Exact, Result, Scalar};

/// Recursion variables `j_1..j_n` of the current chain.
#[derive(Clone, Debug, PartialEq)]
pub struct RecursionState<T> {
    n_sites: usize,
    parity: Parity,
    j: Vec<T>,
    /// Level consumed by the most recent step; the next one must lie beyond it.
    last_level: T,
}

impl<T: Scalar> RecursionState<T> {
    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// `j_1..j_n`, index 0 holding `j_1`.
    pub fn j(&self) -> &[T] {
        &self.j
    }

    pub fn last_level(&self) -> &T {
        &self.last_level
    }

    /// The unsquared middle coupling J_{N/2} of an even chain.
    pub fn middle_coupling(&self) -> Option<&T> {
        match self.parity {
            Parity::Even => self.j.last(),
            Parity::Odd => None,
        }
    }

    /// Mirror-expanded `J_1²..J_{N−1}²`.
    pub fn couplings_squared(&self) -> Vec<T> {
        let n = self.j.len();
        let outer = &self.j[..n - 1];
        let middle = self.j[n - 1].clone();
        let mut full = outer.to_vec();
        match self.parity {
            Parity::Even => full.push(middle.clone() * middle),
            Parity::Odd => {
                let half = middle / (T::one() + T::one());
                full.push(half.clone());
                full.push(half);
            }
        }
        full.extend(outer.iter().rev().cloned());
        full
    }
}

/// Γ_k and Δ_k for one step of the recursion.
#[derive(Clone, Debug, PartialEq)]
pub struct AccumulatorPair<T> {
    pub gamma: T,
    pub delta: T,
}

/// Γ_k, Δ_k evaluated straight from their product definitions.
///
/// `prev` is the chain of N−2 sites, `partial` holds the new `j_{k+1}..j_n` in
/// index order. The solver itself keeps running products instead; this is the
/// reference form.
pub fn accumulators<T: Scalar>(prev: &RecursionState<T>, partial: &[T], k: usize) -> Result<AccumulatorPair<T>> {
    let n = prev.j.len() + 1;
    if k < 1 || k > n || partial.len() != n - k {
        return Err(Error::InvalidParam(format!(
            "need 1 <= k <= {n} and {} partial entries, got k = {k} with {}",
            n.saturating_sub(k),
            partial.len()
        )));
    }
    if let Some(pos) = partial.iter().position(Zero::is_zero) {
        return Err(Error::DivisionByZero(format!("j_{} of the new chain is zero", k + 1 + pos)));
    }
    let old = |i: usize| if i == 0 { T::zero() } else { prev.j[i - 1].clone() };
    let new = |i: usize| partial[i - k - 1].clone();

    let gamma = if k == n {
        old(n - 1)
    } else {
        let num = (k - 1..n).fold(T::one(), |acc, i| acc * old(i));
        let den = (k + 1..=n).fold(T::one(), |acc, i| acc * new(i));
        num / den
    };
    let delta = if k == n {
        T::one()
    } else if k == n - 1 {
        old(n - 1)
    } else {
        let num = (k..n).step_by(2).fold(T::one(), |acc, i| acc * old(i));
        let den = (k + 2..=n).step_by(2).fold(T::one(), |acc, i| acc * new(i));
        num / den
    };
    Ok(AccumulatorPair { gamma, delta })
}

/// One raw recursion step: no ordering or positivity checks.
fn step<T: Scalar>(prev: &[T], lambda: &T, parity: Parity) -> Result<Vec<T>> {
    let n = prev.len() + 1;
    let old = |i: usize| if i == 0 { T::zero() } else { prev[i - 1].clone() };
    let lambda_sq = lambda.clone() * lambda.clone();
    // cur[i - 1] holds j_i once computed.
    let mut cur = vec![T::zero(); n];
    let mut gamma = T::zero();
    let mut delta_up1 = T::one();
    let mut delta_up2 = T::one();
    for i in (1..=n).rev() {
        let (g, d) = if i == n {
            (old(n - 1), T::one())
        } else {
            let denom = nonzero(&cur[i], i + 1)?;
            let g = gamma.clone() * old(i - 1) / denom.clone();
            let d = if i == n - 1 {
                old(n - 1)
            } else {
                let denom2 = nonzero(&cur[i + 1], i + 2)?;
                old(i) * delta_up2.clone() / denom2.clone()
            };
            (g, d)
        };
        cur[i - 1] = match parity {
            Parity::Even if i % 2 == 0 => g.clone() - lambda.clone() * d.clone(),
            Parity::Even => g.clone() + lambda.clone() * d.clone(),
            Parity::Odd if (n - i).is_multiple_of(2) => lambda_sq.clone() * d.clone() - g.clone(),
            Parity::Odd => d.clone() - g.clone(),
        };
        gamma = g;
        delta_up2 = std::mem::replace(&mut delta_up1, d);
    }
    Ok(cur)
}

fn nonzero<T: Scalar>(value: &T, index: usize) -> Result<&T> {
    if value.is_zero() {
        Err(Error::DivisionByZero(format!("j_{index} of the new chain is zero")))
    } else {
        Ok(value)
    }
}

fn check_positive<T: Scalar>(j: &[T]) -> Result<()> {
    match j.iter().position(|x| *x <= T::zero()) {
        Some(pos) => Err(Error::NonPositiveCoupling {
            index: pos + 1,
            value: j[pos].to_string(),
        }),
        None => Ok(()),
    }
}

/// Smallest chain of each parity: N = 2 with `j = [Λ]`, or N = 3 with `j = [Λ²]`.
pub fn base_state<T: Scalar>(parity: Parity, lambda_1: T) -> Result<RecursionState<T>> {
    if lambda_1 <= T::zero() {
        return Err(Error::OrderingViolation {
            level: lambda_1.to_string(),
            reason: "levels must be positive".into(),
        });
    }
    let j = match parity {
        Parity::Even => vec![lambda_1.clone()],
        Parity::Odd => vec![lambda_1.clone() * lambda_1.clone()],
    };
    Ok(RecursionState {
        n_sites: parity.n_sites(1),
        parity,
        j,
        last_level: lambda_1,
    })
}

fn extend<T: Scalar>(prev: &RecursionState<T>, lambda_new: T, parity: Parity) -> Result<RecursionState<T>> {
    if prev.parity != parity {
        return Err(Error::InvalidParam(format!(
            "cannot extend a {} chain with the {parity} recursion",
            prev.parity
        )));
    }
    let ordered = match parity {
        Parity::Even => lambda_new > T::zero() && lambda_new < prev.last_level,
        Parity::Odd => lambda_new > prev.last_level,
    };
    if !ordered {
        let reason = match parity {
            Parity::Even => format!("even chains need 0 < level < {}", prev.last_level),
            Parity::Odd => format!("odd chains need level > {}", prev.last_level),
        };
        return Err(Error::OrderingViolation {
            level: lambda_new.to_string(),
            reason,
        });
    }
    let j = step(&prev.j, &lambda_new, parity)?;
    check_positive(&j)?;
    Ok(RecursionState {
        n_sites: prev.n_sites + 2,
        parity,
        j,
        last_level: lambda_new,
    })
}

/// Adds ±`lambda_new` to an even chain; `lambda_new` must be below every current level.
pub fn extend_even<T: Scalar>(prev: &RecursionState<T>, lambda_new: T) -> Result<RecursionState<T>> {
    extend(prev, lambda_new, Parity::Even)
}

/// Adds ±`lambda_new` to an odd chain; `lambda_new` must exceed every current level.
pub fn extend_odd<T: Scalar>(prev: &RecursionState<T>, lambda_new: T) -> Result<RecursionState<T>> {
    extend(prev, lambda_new, Parity::Odd)
}

/// Runs the whole recursion for `spectrum` and returns the final `j`s.
pub fn solve_state<T: Scalar>(spectrum: &Spectrum<T>) -> Result<RecursionState<T>> {
    let parity = spectrum.parity();
    let mut levels: Vec<T> = spectrum.positive_levels().to_vec();
    if parity == Parity::Odd {
        levels.reverse();
    }
    let mut levels = levels.into_iter();
    let first = levels.next().ok_or(Error::EmptySpectrum)?;
    levels.try_fold(base_state(parity, first)?, |state, level| extend(&state, level, parity))
}

/// The positive mirror-symmetric coupling scheme whose spectrum is `spectrum`.
///
/// Works for any distinct positive levels; PST validity is not required.
pub fn solve<T: Scalar>(spectrum: &Spectrum<T>) -> Result<CouplingScheme<T>> {
    let state = solve_state(spectrum)?;
    CouplingScheme::new(state.couplings_squared(), spectrum.clone())
}

/// Applies the recursion verbatim to `signed_levels` in the given order, with
/// no sorting, sign normalization or positivity check.
///
/// Used to probe the permutation symmetries of the recursion; see
/// [`invariance_orbit`].
pub fn permutation_invariance_eval<T: Scalar>(signed_levels: &[T], parity: Parity) -> Result<RecursionState<T>> {
    let (first, rest) = signed_levels.split_first().ok_or(Error::EmptySpectrum)?;
    if signed_levels.iter().any(Zero::is_zero) {
        return Err(Error::InvalidParam("levels must be nonzero".into()));
    }
    let mut state = RecursionState {
        n_sites: parity.n_sites(1),
        parity,
        j: match parity {
            Parity::Even => vec![first.clone()],
            Parity::Odd => vec![first.clone() * first.clone()],
        },
        last_level: first.clone(),
    };
    for level in rest {
        state = RecursionState {
            n_sites: state.n_sites + 2,
            parity,
            j: step(&state.j, level, parity)?,
            last_level: level.clone(),
        };
    }
    Ok(state)
}

/// Every reordering of `levels` (given in consumption order) that the
/// recursion's symmetry group maps to the same `j`s.
///
/// Even chains: all permutations of the alternating-sign sequence
/// (Λ_1, −Λ_2, Λ_3, …), mapped back through the same alternating signs.
/// Odd chains: independent permutations of the two interlaced index classes
/// {Λ_n, Λ_{n−2}, …} and {Λ_{n−1}, Λ_{n−3}, …}.
pub fn invariance_orbit<T: Scalar>(levels: &[T], parity: Parity) -> Vec<Vec<T>> {
    let n = levels.len();
    let sign = |i: usize, x: &T| if i.is_multiple_of(2) { x.clone() } else { -x.clone() };
    match parity {
        Parity::Even => {
            let signed: Vec<T> = levels.iter().enumerate().map(|(i, x)| sign(i, x)).collect();
            permutations(n)
                .into_iter()
                .map(|p| p.iter().enumerate().map(|(i, &src)| sign(i, &signed[src])).collect())
                .collect()
        }
        Parity::Odd => {
            let class_a: Vec<usize> = (0..n).filter(|i| (n - 1 - i).is_multiple_of(2)).collect();
            let class_b: Vec<usize> = (0..n).filter(|i| (n - 1 - i) % 2 == 1).collect();
            let mut orbit = Vec::new();
            for pa in permutations(class_a.len()) {
                for pb in permutations(class_b.len()) {
                    let mut element = levels.to_vec();
                    for (slot, &src) in class_a.iter().zip(&pa) {
                        element[*slot] = levels[class_a[src]].clone();
                    }
                    for (slot, &src) in class_b.iter().zip(&pb) {
                        element[*slot] = levels[class_b[src]].clone();
                    }
                    orbit.push(element);
                }
            }
            orbit
        }
    }
}

/// All permutations of 0..n in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("successor exists");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// Squared couplings of a chain together with the spectrum they were built for.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingScheme<T> {
    couplings_squared: Vec<T>,
    couplings_float: Vec<f64>,
    source_spectrum: Spectrum<T>,
}

impl<T: Scalar> CouplingScheme<T> {
    /// Checks positivity and mirror symmetry. Agreement with the spectrum is
    /// left to the verifier.
    pub fn new(couplings_squared: Vec<T>, source_spectrum: Spectrum<T>) -> Result<Self> {
        let op = ChainOperator::new(couplings_squared)?;
        let couplings_float = op.couplings_float();
        Ok(Self {
            couplings_squared: op.couplings_squared().to_vec(),
            couplings_float,
            source_spectrum,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.couplings_squared.len() + 1
    }

    pub fn couplings_squared(&self) -> &[T] {
        &self.couplings_squared
    }

    /// `sqrt(J_i²)` in double precision.
    pub fn couplings_float(&self) -> &[f64] {
        &self.couplings_float
    }

    pub fn source_spectrum(&self) -> &Spectrum<T> {
        &self.source_spectrum
    }

    pub fn operator(&self) -> ChainOperator<T> {
        ChainOperator::new(self.couplings_squared.clone()).expect("validated on construction")
    }
}

impl CouplingScheme<Exact> {
    pub fn couplings_squared_text(&self) -> Vec<String> {
        self.couplings_squared.iter().map(ToString::to_string).collect()
    }

    /// Largest numerator or denominator bit length among levels and couplings.
    pub fn bit_size_max(&self) -> u64 {
        max_bit_size(self.couplings_squared.iter().chain(self.source_spectrum.positive_levels()))
    }
}
