use crate::Scalar;

/// Dense monic polynomial in λ.
///
/// `lower` holds the coefficients of λ^0 .. λ^(d-1) in ascending order; the
/// leading coefficient of λ^d is an implicit 1.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicPolynomial<T> {
    lower: Vec<T>,
}

impl<T: Scalar> MonicPolynomial<T> {
    /// λ^degree.
    pub fn monomial(degree: usize) -> Self {
        Self {
            lower: vec![T::zero(); degree],
        }
    }

    pub fn from_lower_coefficients(lower: Vec<T>) -> Self {
        Self { lower }
    }

    /// Drops the leading entry of a full ascending coefficient vector, which must be 1.
    pub(crate) fn from_full(mut full: Vec<T>) -> Self {
        let lead = full.pop().expect("polynomial of degree >= 0");
        debug_assert!(lead.is_one());
        Self { lower: full }
    }

    /// ∏ (λ² − r²) over `roots`, times λ when `zero_root` is set.
    pub fn from_symmetric_roots(roots: &[T], zero_root: bool) -> Self {
        let mut full = vec![T::one()];
        if zero_root {
            full.insert(0, T::zero());
        }
        for r in roots {
            let r2 = r.clone() * r.clone();
            let mut next = vec![T::zero(); full.len() + 2];
            for (i, c) in full.iter().enumerate() {
                next[i + 2] = next[i + 2].clone() + c.clone();
                next[i] = next[i].clone() - r2.clone() * c.clone();
            }
            full = next;
        }
        Self::from_full(full)
    }

    pub fn degree(&self) -> usize {
        self.lower.len()
    }

    pub fn lower_coefficients(&self) -> &[T] {
        &self.lower
    }

    /// Coefficient of λ^k, including the implicit leading 1 and zeros above the degree.
    pub fn coefficient(&self, k: usize) -> T {
        match k.cmp(&self.degree()) {
            std::cmp::Ordering::Less => self.lower[k].clone(),
            std::cmp::Ordering::Equal => T::one(),
            std::cmp::Ordering::Greater => T::zero(),
        }
    }

    pub fn eval(&self, x: &T) -> T {
        self.lower
            .iter()
            .rev()
            .fold(T::one(), |acc, c| acc * x.clone() + c.clone())
    }
}
