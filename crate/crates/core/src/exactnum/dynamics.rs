use num_complex::Complex;
use num_traits::Float;

use super::EigenSystem;
use crate::{Error, Result};

/// Amplitudes a_m(t) = Σ_k e^{−iλ_k t} v_k(m) v_k(source) for an excitation
/// starting on `source_site` (1-based).
pub fn evolve_excitation<F: Float>(eig: &EigenSystem<F>, source_site: usize, t: F) -> Result<Vec<Complex<F>>> {
    let n = eig.dim();
    check_site(source_site, n)?;
    let s = source_site - 1;
    let mut amps = vec![Complex::new(F::zero(), F::zero()); n];
    for (lambda, v) in eig.values.iter().zip(&eig.vectors) {
        let phase = Complex::from_polar(F::one(), -*lambda * t) * v[s];
        for (a, vm) in amps.iter_mut().zip(v) {
            *a = *a + phase * *vm;
        }
    }
    Ok(amps)
}

/// ⟨target| e^{−iHt} |source⟩, both sites 1-based.
pub fn transfer_amplitude<F: Float>(
    eig: &EigenSystem<F>,
    source_site: usize,
    target_site: usize,
    t: F,
) -> Result<Complex<F>> {
    let n = eig.dim();
    check_site(source_site, n)?;
    check_site(target_site, n)?;
    let (s, m) = (source_site - 1, target_site - 1);
    Ok(eig
        .values
        .iter()
        .zip(&eig.vectors)
        .fold(Complex::new(F::zero(), F::zero()), |acc, (lambda, v)| {
            acc + Complex::from_polar(F::one(), -*lambda * t) * (v[s] * v[m])
        }))
}

fn check_site(site: usize, n: usize) -> Result<()> {
    if site == 0 || site > n {
        return Err(Error::InvalidParam(format!("site {site} outside 1..={n}")));
    }
    Ok(())
}
