#![allow(dead_code)]

use num_bigint::BigInt;
use pstforge::exactnum::eig_sym_tridiag;
use pstforge::spectra::{gen_linear, gen_random_odd_gaps, gen_ts, Parity};
use pstforge::{Exact, ExactSpectrum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn r(p: i64, q: i64) -> Exact {
    Exact::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Clone, Debug)]
pub struct Case {
    pub label: String,
    pub spectrum: ExactSpectrum,
}

/// Linear N = 2..60, (T, S) family N = 4..40 even with T, S in 0..=3, and
/// 25 random odd-gap spectra per parity with 6..=30 levels.
pub fn acceptance_matrix() -> Vec<Case> {
    let mut cases = Vec::new();
    for n in 2..=60 {
        cases.push(Case {
            label: format!("linear N={n}"),
            spectrum: gen_linear(n).unwrap(),
        });
    }
    for n in (4..=40).step_by(2) {
        for t in 0..=3 {
            for s in 0..=3 {
                cases.push(Case {
                    label: format!("ts N={n} T={t} S={s}"),
                    spectrum: gen_ts(n, t, s).unwrap(),
                });
            }
        }
    }
    for parity in [Parity::Even, Parity::Odd] {
        for seed in 0..25u64 {
            let levels = 6 + seed as usize;
            cases.push(Case {
                label: format!("random {parity} n={levels} seed={seed}"),
                spectrum: gen_random_odd_gaps(levels, parity, 99, seed).unwrap(),
            });
        }
    }
    cases
}

/// det(λI − A) for a dense exact matrix, by fraction-based Gaussian elimination.
pub fn dense_char_det(couplings_squared: &[Exact], lambda: &Exact) -> Exact {
    use num_traits::{One, Zero};
    let n = couplings_squared.len() + 1;
    // Entries of λI − H: H has off-diagonals J_i, so build with squared values
    // via the symmetric scaling H' = D H D⁻¹ with H'_{i,i+1} = J_i², H'_{i+1,i} = 1.
    let mut a = vec![vec![Exact::zero(); n]; n];
    for i in 0..n {
        a[i][i] = lambda.clone();
    }
    for (i, c2) in couplings_squared.iter().enumerate() {
        a[i][i + 1] = -c2.clone();
        a[i + 1][i] = -Exact::one();
    }
    let mut det = Exact::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&row| !a[row][col].is_zero()) else {
            return Exact::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let f = &a[row][col] / &p;
            for k in col..n {
                let sub = &f * &a[col][k];
                a[row][k] -= sub;
            }
        }
    }
    det
}

/// Random positive mirror-symmetric chain with 2..=max_sites sites, resampled
/// until its smallest eigenvalue gap is at least `min_gap_ratio` of the mean gap.
pub fn random_mirror_chain(rng: &mut ChaCha8Rng, max_sites: usize, min_gap_ratio: f64) -> Vec<f64> {
    loop {
        let n = rng.random_range(2..=max_sites);
        let half: Vec<f64> = (0..n / 2).map(|_| rng.random_range(0.5..2.0)).collect();
        let mut full = half.clone();
        if n % 2 == 0 {
            full.pop();
            full.push(half[half.len() - 1]);
            full.extend(half[..half.len() - 1].iter().rev());
        } else {
            full.extend(half.iter().rev());
        }
        let couplings: Vec<f64> = full.iter().map(|c| c.sqrt()).collect();
        let eig = eig_sym_tridiag(&couplings, n).unwrap();
        let gaps: Vec<f64> = eig.values.windows(2).map(|w| w[1] - w[0]).collect();
        let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
        if gaps.iter().all(|g| *g >= min_gap_ratio * mean) {
            return full;
        }
    }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
