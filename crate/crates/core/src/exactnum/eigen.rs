use num_traits::Float;

use crate::{Error, Result};

/// Eigenpairs of a zero-diagonal symmetric tridiagonal matrix.
///
/// `values` are ascending; `vectors[k]` is the unit eigenvector for `values[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenSystem<F> {
    pub values: Vec<F>,
    pub vectors: Vec<Vec<F>>,
}

impl<F: Float> EigenSystem<F> {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Spectral norm, i.e. the largest |λ|.
    pub fn norm(&self) -> F {
        self.values.iter().fold(F::zero(), |m, v| m.max(v.abs()))
    }
}

/// Bisection on Sturm counts for the eigenvalues, then inverse iteration for
/// the eigenvectors. Eigenvectors whose eigenvalues lie within `1e-3·‖H‖` of
/// each other are re-orthogonalized with Gram-Schmidt.
///
/// `offdiag` holds the n−1 positive couplings (not squared).
pub fn eig_sym_tridiag<F: Float>(offdiag: &[F], n: usize) -> Result<EigenSystem<F>> {
    if n < 2 || offdiag.len() != n - 1 {
        return Err(Error::InvalidParam(format!(
            "need n >= 2 and n-1 couplings, got n = {n} with {} couplings",
            offdiag.len()
        )));
    }
    if offdiag.iter().any(|b| !b.is_finite() || *b <= F::zero()) {
        return Err(Error::InvalidParam("couplings must be finite and positive".into()));
    }
    let values = bisect_all(offdiag)?;
    let vectors = inverse_iteration(offdiag, &values)?;
    Ok(EigenSystem { values, vectors })
}

fn lit<F: Float>(x: f64) -> F {
    F::from(x).expect("literal representable")
}

/// Gershgorin radius of the zero-diagonal matrix.
fn gershgorin<F: Float>(b: &[F]) -> F {
    let n = b.len() + 1;
    (0..n).fold(F::zero(), |m, i| {
        let left = if i > 0 { b[i - 1] } else { F::zero() };
        let right = if i < n - 1 { b[i] } else { F::zero() };
        m.max(left + right)
    })
}

/// Number of eigenvalues strictly less than `x`.
///
/// Pivots of the LDLᵀ factorization of H − xI; an exactly vanishing pivot is
/// replaced by −pivmin and counted as negative.
fn sturm_count<F: Float>(b: &[F], x: F, pivmin: F) -> usize {
    let guard = |q: F| if q.abs() < pivmin { -pivmin } else { q };
    let mut q = guard(-x);
    let mut count = usize::from(q < F::zero());
    for &bi in b {
        q = guard(-x - bi * bi / q);
        if q < F::zero() {
            count += 1;
        }
    }
    count
}

fn bisect_all<F: Float>(b: &[F]) -> Result<Vec<F>> {
    let n = b.len() + 1;
    let eps = F::epsilon();
    let radius = gershgorin(b);
    let bmax2 = b.iter().fold(F::zero(), |m, v| m.max(*v * *v));
    let pivmin = F::min_positive_value() * bmax2.max(F::one());
    let abs_tol = eps * radius;
    let budget = 100 * n;
    let outer = radius * (F::one() + lit::<F>(4.0) * eps) + pivmin;

    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        // Invariant: count(lo) <= k < count(hi).
        let mut lo = if k == 0 { -outer } else { values[k - 1] };
        let mut hi = outer;
        if sturm_count(b, lo, pivmin) > k {
            lo = -outer;
        }
        let mut steps = 0;
        loop {
            let width = hi - lo;
            if width <= lit::<F>(2.0) * eps * lo.abs().max(hi.abs()) + abs_tol {
                break;
            }
            let mid = lo + width / lit(2.0);
            if mid <= lo || mid >= hi {
                break;
            }
            if sturm_count(b, mid, pivmin) > k {
                hi = mid;
            } else {
                lo = mid;
            }
            steps += 1;
            if steps > budget {
                return Err(Error::ConvergenceFailure(format!(
                    "eigenvalue {k} not isolated after {budget} bisection steps"
                )));
            }
        }
        values.push(lo + (hi - lo) / lit(2.0));
    }
    Ok(values)
}

/// LU factorization with partial pivoting of the tridiagonal T − σI.
struct TridiagLu<F> {
    d: Vec<F>,
    du: Vec<F>,
    du2: Vec<F>,
    dl: Vec<F>,
    swapped: Vec<bool>,
}

impl<F: Float> TridiagLu<F> {
    fn factor(b: &[F], shift: F, tiny: F) -> Self {
        let n = b.len() + 1;
        let mut d = vec![-shift; n];
        let mut du = b.to_vec();
        let mut dl = b.to_vec();
        let mut du2 = vec![F::zero(); n.saturating_sub(2)];
        let mut swapped = vec![false; n - 1];
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i] != F::zero() {
                    let f = dl[i] / d[i];
                    dl[i] = f;
                    d[i + 1] = d[i + 1] - f * du[i];
                } else {
                    dl[i] = F::zero();
                }
            } else {
                let f = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = f;
                let upper = du[i];
                du[i] = d[i + 1];
                d[i + 1] = upper - f * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -f * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        // Exactly singular pivots are perturbed so the solve amplifies the null direction.
        for p in d.iter_mut() {
            if p.abs() < tiny {
                *p = if *p < F::zero() { -tiny } else { tiny };
            }
        }
        Self { d, du, du2, dl, swapped }
    }

    fn solve(&self, x: &mut [F]) {
        let n = x.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                let t = x[i];
                x[i] = x[i + 1];
                x[i + 1] = t - self.dl[i] * x[i];
            } else {
                x[i + 1] = x[i + 1] - self.dl[i] * x[i];
            }
        }
        x[n - 1] = x[n - 1] / self.d[n - 1];
        x[n - 2] = (x[n - 2] - self.du[n - 2] * x[n - 1]) / self.d[n - 2];
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (x[i] - self.du[i] * x[i + 1] - self.du2[i] * x[i + 2]) / self.d[i];
        }
    }
}

fn normalize<F: Float>(v: &mut [F]) -> F {
    let norm = v.iter().fold(F::zero(), |s, x| s + *x * *x).sqrt();
    if norm > F::zero() {
        v.iter_mut().for_each(|x| *x = *x / norm);
    }
    norm
}

fn residual<F: Float>(b: &[F], lambda: F, v: &[F]) -> F {
    let n = v.len();
    (0..n)
        .map(|i| {
            let mut hv = F::zero();
            if i > 0 {
                hv = hv + b[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                hv = hv + b[i] * v[i + 1];
            }
            let r = hv - lambda * v[i];
            r * r
        })
        .fold(F::zero(), |s, x| s + x)
        .sqrt()
}

fn inverse_iteration<F: Float>(b: &[F], values: &[F]) -> Result<Vec<Vec<F>>> {
    const MAX_SWEEPS: usize = 8;
    let n = values.len();
    let norm = values.iter().fold(F::zero(), |m, v| m.max(v.abs()));
    let cluster_gap = lit::<F>(1e-3) * norm;
    // 1e-11·‖H‖ in double precision, a few hundred ulps in lower precisions.
    let target = lit::<F>(1e-11).max(lit::<F>(256.0) * F::epsilon()) * norm;
    let tiny = F::epsilon() * norm.max(F::min_positive_value());

    let mut vectors: Vec<Vec<F>> = Vec::with_capacity(n);
    for (k, &lambda) in values.iter().enumerate() {
        let lu = TridiagLu::factor(b, lambda, tiny);
        let cluster_start = (0..k)
            .rev()
            .take_while(|&j| values[k] - values[j] < cluster_gap)
            .last()
            .unwrap_or(k);
        // Deterministic start vector with no mirror symmetry.
        let mut v: Vec<F> = (0..n)
            .map(|i| lit::<F>(0.5) + lit::<F>(((i as f64 + 1.0) * 0.754_877_666_246_692_7).fract()))
            .collect();
        normalize(&mut v);
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            lu.solve(&mut v);
            for prev in &vectors[cluster_start..k] {
                let dot = prev.iter().zip(&v).fold(F::zero(), |s, (a, x)| s + *a * *x);
                v.iter_mut().zip(prev).for_each(|(x, a)| *x = *x - dot * *a);
            }
            if normalize(&mut v) == F::zero() || v.iter().any(|x| !x.is_finite()) {
                return Err(Error::ConvergenceFailure(format!(
                    "inverse iteration collapsed for eigenvalue {k}"
                )));
            }
            if residual(b, lambda, &v) <= target {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::ConvergenceFailure(format!(
                "eigenvector {k} residual above target after {MAX_SWEEPS} sweeps"
            )));
        }
        // Sign convention: first nonzero component positive.
        if let Some(first) = v.iter().find(|x| x.abs() > F::epsilon()) {
            if *first < F::zero() {
                v.iter_mut().for_each(|x| *x = -*x);
            }
        }
        vectors.push(v);
    }
    Ok(vectors)
}
