//! Acceptance suite: one pass/fail line per criterion, non-zero exit on any failure.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{acceptance_matrix, r, random_mirror_chain, seeded, Case};
use num_traits::Zero;
use pstforge::solver::{self, invariance_orbit, permutation_invariance_eval};
use pstforge::spectra::{gen_linear, gen_random_odd_gaps, gen_ts, ts_closed_form_couplings, Parity};
use pstforge::verifier::{fidelity_check, max_transfer_fidelity, mirror_inversion_check, roundtrip_float, verify_exact};
use pstforge::{Exact, ExactScheme};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn solved(cases: &[Case]) -> Result<Vec<(&Case, ExactScheme)>, String> {
    cases
        .iter()
        .map(|c| solver::solve(&c.spectrum).map(|s| (c, s)).map_err(|e| format!("{}: {e}", c.label)))
        .collect()
}

fn exact_spectral_identity(cases: &[Case]) -> Outcome {
    let start = Instant::now();
    for (case, scheme) in solved(cases)? {
        let report = verify_exact(&scheme, &case.spectrum).map_err(|e| e.to_string())?;
        ensure(report.exact_spectrum_match, || {
            format!("{}: {} coefficient mismatches", case.label, report.coefficient_mismatches.len())
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(120), || format!("took {elapsed:?} > 120 s"))?;
    Ok(format!("{} spectra, exact match, {elapsed:.2?}", cases.len()))
}

fn closed_form_regression() -> Outcome {
    let mut checked = 0;
    for n in (2..=40).step_by(2) {
        for t in 0..=3 {
            for s in 0..=3 {
                let got = solver::solve(&gen_ts(n, t, s).unwrap()).unwrap();
                let want = ts_closed_form_couplings(n, t, s).unwrap();
                ensure(got.couplings_squared() == want.as_slice(), || format!("ts N={n} T={t} S={s}"))?;
                checked += 1;
            }
        }
    }
    for n in 2..=40usize {
        let got = solver::solve(&gen_linear(n).unwrap()).unwrap();
        let want: Vec<Exact> = (1..n).map(|i| r((i * (n - i)) as i64, 4)).collect();
        ensure(got.couplings_squared() == want.as_slice(), || format!("linear N={n}"))?;
        checked += 1;
    }
    Ok(format!("{checked} schemes equal their closed forms exactly"))
}

fn pst_fidelity(cases: &[Case]) -> Outcome {
    let small: Vec<Case> = cases.iter().filter(|c| c.spectrum.n_sites() <= 30).cloned().collect();
    let mut worst_fidelity = 1.0f64;
    let mut worst_mirror = 0.0f64;
    for (case, scheme) in solved(&small)? {
        let (mag, _) = fidelity_check(&scheme, PI).map_err(|e| format!("{}: {e}", case.label))?;
        let mirror = mirror_inversion_check(&scheme).map_err(|e| format!("{}: {e}", case.label))?;
        ensure(mag >= 1.0 - 1e-9, || format!("{}: fidelity {mag}", case.label))?;
        ensure(mirror <= 1e-9, || format!("{}: mirror deviation {mirror:e}", case.label))?;
        worst_fidelity = worst_fidelity.min(mag);
        worst_mirror = worst_mirror.max(mirror);
    }
    let schemes = format!(
        "{} schemes: min fidelity 1-{:.1e}, max mirror deviation {:.1e}",
        small.len(),
        1.0 - worst_fidelity,
        worst_mirror
    );

    // Uniform chains: peak end-to-end fidelity over t in [0, 20π] must stay <= 1 - 1e-3.
    let mut peaks = Vec::new();
    let mut offenders = Vec::new();
    for n in 4..=10 {
        let peak = max_transfer_fidelity(&vec![1.0; n - 1], 20.0 * PI, 10_000).map_err(|e| e.to_string())?;
        if peak > 1.0 - 1e-3 {
            offenders.push(format!("N={n} peaks at {peak:.10}"));
        }
        peaks.push(format!("{n}:{peak:.6}"));
    }
    if offenders.is_empty() {
        Ok(format!("{schemes}; uniform peaks {}", peaks.join(" ")))
    } else {
        Err(format!(
            "{schemes} (ok); uniform-chain bound 1-1e-3 exceeded: {}",
            offenders.join(", ")
        ))
    }
}

fn performance() -> Outcome {
    let mut slowest_exact = Duration::ZERO;
    let mut slowest_float = Duration::ZERO;
    let mut max_bits = 0;
    for seed in 1..=5 {
        let spectrum = gen_random_odd_gaps(50, Parity::Even, 99, seed).unwrap();
        let start = Instant::now();
        let scheme = solver::solve(&spectrum).map_err(|e| e.to_string())?;
        let exact = start.elapsed();
        ensure(exact <= Duration::from_secs(60), || format!("seed {seed}: exact solve took {exact:?}"))?;

        let float_spectrum = spectrum.to_float().map_err(|e| e.to_string())?;
        let start = Instant::now();
        let float_scheme = solver::solve(&float_spectrum).map_err(|e| e.to_string())?;
        let float = start.elapsed();
        ensure(float <= Duration::from_millis(100), || format!("seed {seed}: float solve took {float:?}"))?;
        ensure(float_scheme.n_sites() == 100, || "float scheme has wrong size".into())?;

        slowest_exact = slowest_exact.max(exact);
        slowest_float = slowest_float.max(float);
        max_bits = max_bits.max(scheme.bit_size_max());
    }
    Ok(format!(
        "5 spectra of 50 levels: exact <= {slowest_exact:.2?}, float <= {slowest_float:.2?}, up to {max_bits} bits"
    ))
}

fn completeness_round_trip() -> Outcome {
    let mut rng = seeded(2024);
    let mut worst = 0.0f64;
    for instance in 0..50 {
        let chain = random_mirror_chain(&mut rng, 40, 0.1);
        let rt = roundtrip_float(&chain).map_err(|e| format!("instance {instance} (N={}): {e}", chain.len() + 1))?;
        ensure(rt.max_relative_error <= 1e-8, || {
            format!("instance {instance} (N={}): error {:e}", chain.len() + 1, rt.max_relative_error)
        })?;
        worst = worst.max(rt.max_relative_error);
    }
    Ok(format!("50 chains up to N=40, max relative error {worst:.1e}"))
}

fn permutation_invariance() -> Outcome {
    let mut elements = 0;
    for (n_sites, parity) in [(4, Parity::Even), (6, Parity::Even), (8, Parity::Even), (5, Parity::Odd), (7, Parity::Odd), (9, Parity::Odd)] {
        let mut spectra = vec![gen_linear(n_sites).unwrap()];
        for seed in 0..3 {
            spectra.push(gen_random_odd_gaps(n_sites / 2, parity, 15, seed).unwrap());
        }
        for spectrum in spectra {
            let mut order = spectrum.positive_levels().to_vec();
            if parity == Parity::Odd {
                order.reverse();
            }
            let reference = permutation_invariance_eval(&order, parity).map_err(|e| e.to_string())?;
            for element in invariance_orbit(&order, parity) {
                let got = permutation_invariance_eval(&element, parity).map_err(|e| e.to_string())?;
                ensure(got.j() == reference.j(), || format!("N={n_sites}: {element:?} changes j"))?;
                elements += 1;
            }
        }
    }
    Ok(format!("{elements} group elements leave j unchanged"))
}

fn determinant_roots(cases: &[Case]) -> Outcome {
    let mut roots = 0;
    for (case, scheme) in solved(cases)? {
        let op = scheme.operator();
        for level in case.spectrum.positive_levels() {
            ensure(op.det_eval(level).is_zero(), || format!("{}: det(H - {level} I) != 0", case.label))?;
            roots += 1;
        }
    }
    Ok(format!("{roots} levels are exact roots"))
}

fn middle_coupling_identity(cases: &[Case]) -> Outcome {
    let mut checked = 0;
    for case in cases.iter().filter(|c| c.spectrum.parity() == Parity::Even && c.spectrum.n_sites() <= 40) {
        let alternating = case
            .spectrum
            .positive_levels()
            .iter()
            .enumerate()
            .fold(Exact::zero(), |acc, (i, l)| if i % 2 == 0 { acc + l } else { acc - l });
        let state = solver::solve_state(&case.spectrum).map_err(|e| e.to_string())?;
        ensure(state.middle_coupling() == Some(&alternating), || format!("{}: middle coupling", case.label))?;
        let n = case.spectrum.n_levels();
        let scheme = solver::solve(&case.spectrum).unwrap();
        ensure(scheme.couplings_squared()[n - 1] == &alternating * &alternating, || {
            format!("{}: squared middle coupling", case.label)
        })?;
        checked += 1;
    }
    Ok(format!("{checked} even chains"))
}

fn main() -> ExitCode {
    let cases = acceptance_matrix();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("1 exact spectral identity", Box::new(|| exact_spectral_identity(&cases))),
        ("2 closed-form regression", Box::new(closed_form_regression)),
        ("3 PST fidelity and mirror inversion", Box::new(|| pst_fidelity(&cases))),
        ("4 performance", Box::new(performance)),
        ("5 completeness round trip", Box::new(completeness_round_trip)),
        ("6 permutation invariance", Box::new(permutation_invariance)),
        ("7 determinant roots", Box::new(|| determinant_roots(&cases))),
        ("8 middle-coupling identity", Box::new(|| middle_coupling_identity(&cases))),
    ];
    let mut failures = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("[PASS] criterion {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
