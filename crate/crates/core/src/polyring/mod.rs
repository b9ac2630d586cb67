//! Exact polynomial and series arithmetic, and the generalized Eulerian
//! polynomials built on it.

mod bipoly;
mod ratpoly;
mod series;

pub use bipoly::BiPoly;
pub use ratpoly::RatPoly;
pub use series::TruncSeries;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::tables::{eulerian_row, factorial, k_table, stirling2_row, t_recurrence_rows, Method};

/// `α_n(t,q) = Σ_{i,j} K(n,i,j) t^i q^j`, with `α_0 = 1`.
pub fn alpha_poly(n: usize) -> BiPoly {
    let slice = k_table(n, Method::RecurrenceN).expect("recurrence tables never fail");
    BiPoly::from_terms(
        slice
            .entries
            .into_iter()
            .map(|((i, j), c)| ((i as u32, j as u32), c)),
    )
}

/// The one-variable families that `α_n` specializes to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Classical Eulerian polynomial `A_n(t)`.
    A,
    /// Ordered Bell polynomial `B_n(q) = Σ_r S(n,r+1)(r+1)! q^r`.
    B,
    /// `P_n(t) = Σ_k T(n,k) t^k`.
    P,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "P" => Ok(Family::P),
            _ => Err(Error::InvalidParameter(format!(
                "unknown polynomial family {s:?}"
            ))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

pub fn named_poly(family: Family, n: usize) -> BiPoly {
    match family {
        Family::A => BiPoly::from_terms(
            eulerian_row(n)
                .into_iter()
                .enumerate()
                .map(|(k, c)| ((k as u32, 0), c)),
        ),
        Family::B => {
            if n == 0 {
                return BiPoly::one();
            }
            let s = stirling2_row(n);
            BiPoly::from_terms((0..n).map(|r| ((0, r as u32), &s[r + 1] * factorial(r + 1))))
        }
        Family::P => {
            let row = t_recurrence_rows(n).pop().expect("row n");
            BiPoly::from_terms(row.into_iter().enumerate().map(|(k, c)| ((k as u32, 0), c)))
        }
    }
}

/// `α_n(t0, q0)` for `n = 0..=order`, read off the exponential generating
/// function `1 + (e^{x(1-t)} - 1) / (1 + q - (t+q) e^{x(1-t)})`.
pub fn gf_alpha(t0: &BigRational, q0: &BigRational, order: usize) -> Result<Vec<BigRational>> {
    let one = BigRational::one();
    if *t0 == one {
        return Err(Error::InvalidParameter(
            "t = 1 makes the denominator vanish at x = 0".into(),
        ));
    }
    let e = TruncSeries::exp_linear(order, &(&one - t0));
    let num = &e - &TruncSeries::one(order);
    let den = &TruncSeries::constant(order, &one + q0) - &e.scale(&(t0 + q0));
    let g = &TruncSeries::one(order) + &(&num * &den.reciprocal()?);
    Ok((0..=order)
        .map(|n| g.coeff(n) * BigRational::from_integer(factorial(n)))
        .collect())
}

/// Integer helper for building coefficients such as `(1 - t)^k`.
pub(crate) fn linear(c: i64, t: i64, q: i64) -> BiPoly {
    BiPoly::from_terms([
        ((0, 0), BigInt::from(c)),
        ((1, 0), BigInt::from(t)),
        ((0, 1), BigInt::from(q)),
    ])
}
