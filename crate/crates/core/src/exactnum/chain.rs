use super::MonicPolynomial;
use crate::{Error, Result, Scalar};

/// Zero-diagonal, mirror-symmetric tridiagonal operator on `n_sites` sites.
///
/// Stored through the squared couplings `J_i²`, i = 1..N−1, which must be
/// strictly positive and satisfy `J_i² = J_{N−i}²`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainOperator<T> {
    couplings_squared: Vec<T>,
}

impl<T: Scalar> ChainOperator<T> {
    pub fn new(couplings_squared: Vec<T>) -> Result<Self> {
        if couplings_squared.is_empty() {
            return Err(Error::InvalidOperator("a chain needs at least two sites".into()));
        }
        if let Some(i) = couplings_squared.iter().position(|c| *c <= T::zero()) {
            return Err(Error::InvalidOperator(format!(
                "coupling J_{}² = {} is not positive",
                i + 1,
                couplings_squared[i]
            )));
        }
        let m = couplings_squared.len();
        for i in 0..m / 2 {
            if couplings_squared[i] != couplings_squared[m - 1 - i] {
                return Err(Error::InvalidOperator(format!(
                    "couplings are not mirror symmetric: J_{}² = {} but J_{}² = {}",
                    i + 1,
                    couplings_squared[i],
                    m - i,
                    couplings_squared[m - 1 - i]
                )));
            }
        }
        Ok(Self { couplings_squared })
    }

    pub fn n_sites(&self) -> usize {
        self.couplings_squared.len() + 1
    }

    pub fn couplings_squared(&self) -> &[T] {
        &self.couplings_squared
    }

    /// `sqrt(J_i²)` in double precision.
    pub fn couplings_float(&self) -> Vec<f64> {
        self.couplings_squared.iter().map(|c| c.to_f64().sqrt()).collect()
    }

    /// det(λI − H), monic of degree N.
    ///
    /// Three-term recurrence P_k = λ P_{k−1} − J_{k−1}² P_{k−2}, P_0 = 1, P_1 = λ.
    /// Coefficients of λ^(N−1), λ^(N−3), ... vanish because the diagonal is zero.
    pub fn charpoly(&self) -> MonicPolynomial<T> {
        let mut older = vec![T::one()];
        let mut old = vec![T::zero(), T::one()];
        for c2 in &self.couplings_squared {
            let mut next = Vec::with_capacity(old.len() + 1);
            next.push(T::zero());
            next.extend(old.iter().cloned());
            for (i, a) in older.iter().enumerate() {
                if !a.is_zero() {
                    next[i] = next[i].clone() - c2.clone() * a.clone();
                }
            }
            older = std::mem::replace(&mut old, next);
        }
        MonicPolynomial::from_full(old)
    }

    /// Leading principal minors D_0..D_N of H − λI.
    ///
    /// D_k = −λ D_{k−1} − J_{k−1}² D_{k−2}, D_0 = 1, D_1 = −λ.
    pub fn minor_sequence(&self, lambda: &T) -> Vec<T> {
        let mut minors = Vec::with_capacity(self.n_sites() + 1);
        minors.push(T::one());
        minors.push(-lambda.clone());
        for (k, c2) in self.couplings_squared.iter().enumerate() {
            let next = -lambda.clone() * minors[k + 1].clone() - c2.clone() * minors[k].clone();
            minors.push(next);
        }
        minors
    }

    /// det(H − λI); zero exactly when λ is an eigenvalue.
    ///
    /// Note the sign convention differs from [`Self::charpoly`] by (−1)^N.
    pub fn det_eval(&self, lambda: &T) -> T {
        self.minor_sequence(lambda).pop().expect("non-empty minor sequence")
    }
}
