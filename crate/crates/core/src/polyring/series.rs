use std::ops::{Add, Mul, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `Σ_{n ≤ N} c_n x^n` over the rationals, truncated at order `N`.
///
/// Coefficients are the plain power-series ones; callers that want an
/// exponential generating function multiply by `n!` themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<BigRational>,
}

impl TruncSeries {
    pub fn new(order: usize, mut coeffs: Vec<BigRational>) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn constant(order: usize, c: BigRational) -> Self {
        Self::new(order, vec![c])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, BigRational::one())
    }

    /// `a·x`.
    pub fn linear(order: usize, a: BigRational) -> Self {
        Self::new(order, vec![BigRational::zero(), a])
    }

    /// `e^{a x}`.
    pub fn exp_linear(order: usize, a: &BigRational) -> Self {
        let mut coeffs = vec![BigRational::one()];
        for n in 1..=order {
            let next = &coeffs[n - 1] * a / BigRational::from_integer(n.into());
            coeffs.push(next);
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs
            .get(n)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `1/s`; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Series(
                "reciprocal of a series with zero constant term".into(),
            ));
        }
        let inv0 = c0.recip();
        let mut out = vec![inv0.clone()];
        for n in 1..=self.order() {
            let acc: BigRational = (1..=n).map(|k| &self.coeffs[k] * &out[n - k]).sum();
            out.push(-acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// `exp(s)`; needs a zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Series(
                "exp of a series with nonzero constant term".into(),
            ));
        }
        // n f_n = Σ_{k=1}^{n} k s_k f_{n-k}
        let mut out = vec![BigRational::one()];
        for n in 1..=self.order() {
            let acc: BigRational = (1..=n)
                .map(|k| BigRational::from_integer(k.into()) * &self.coeffs[k] * &out[n - k])
                .sum();
            out.push(acc / BigRational::from_integer(n.into()));
        }
        Ok(Self { coeffs: out })
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.order()), |acc, _| &acc * self)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let order = self.order().min(rhs.order());
        Self {
            coeffs: (0..=order)
                .map(|n| f(&self.coeffs[n], &rhs.coeffs[n]))
                .collect(),
        }
    }
}

impl Add<&TruncSeries> for &TruncSeries {
    type Output = TruncSeries;

    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub<&TruncSeries> for &TruncSeries {
    type Output = TruncSeries;

    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<&TruncSeries> for &TruncSeries {
    type Output = TruncSeries;

    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| (0..=n).map(|k| &self.coeffs[k] * &rhs.coeffs[n - k]).sum())
            .collect();
        TruncSeries { coeffs }
    }
}
