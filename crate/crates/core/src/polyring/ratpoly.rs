use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::tables::binomial;

/// Univariate polynomial in `X` over the rationals; trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// `X^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(x.into()))
    }

    /// Forward difference `p(X+1) - p(X)`.
    pub fn delta(&self) -> Self {
        let len = self.coeffs.len();
        let mut out = vec![BigRational::zero(); len];
        for (d, c) in self.coeffs.iter().enumerate() {
            // (X+1)^d - X^d contributes to degrees below d only
            for (e, slot) in out.iter_mut().enumerate().take(d) {
                let b: BigInt = binomial(d as i64, e as i64);
                *slot += c * BigRational::from_integer(b);
            }
        }
        Self::new(out)
    }

    /// `Δ^r p`.
    pub fn delta_power(&self, r: usize) -> Self {
        (0..r).fold(self.clone(), |p, _| p.delta())
    }
}
