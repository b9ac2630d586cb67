use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{decimal, one, rat_int, require_tables, scientific, Checker, VerificationReport};
use crate::error::{Error, Result};
use crate::tables::KTables;

/// Which power of two divides the `k`-th term of the series.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DenominatorShift {
    /// `2^{k+1}`.
    #[default]
    Corrected,
    /// `2^{k-1}`, which overshoots by a factor of four.
    Printed,
}

impl DenominatorShift {
    fn exponent(self, k: usize) -> usize {
        match self {
            DenominatorShift::Corrected => k + 1,
            DenominatorShift::Printed => k - 1,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            DenominatorShift::Corrected => "corrected",
            DenominatorShift::Printed => "printed",
        }
    }
}

fn pow2(e: usize) -> BigRational {
    rat_int(BigInt::one() << e)
}

/// Checks `P_n(t0)/(1-t0)^{n+1} = Σ_{k≥1} (1+t0)^{k-1} k^n / 2^{k+1}` with the
/// first `terms` summands taken exactly and the rest bounded by a geometric
/// tail. Passes when the left side lies within that bound of the partial sum.
pub fn verify_dobinski(
    tables: &KTables,
    n: usize,
    t0: &BigRational,
    terms: usize,
    shift: DenominatorShift,
) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "the series identity needs n >= 1".into(),
        ));
    }
    let base = one() + t0;
    if base.abs() >= rat_int(2) {
        return Err(Error::InvalidParameter(format!(
            "|1 + t| must be below 2, got t = {t0}"
        )));
    }
    if terms == 0 {
        return Err(Error::InvalidParameter(
            "at least one term is needed".into(),
        ));
    }
    require_tables(tables.n_max(), n)?;

    // Consecutive terms have ratio ((k+1)/k)^n · ρ, which decreases in k.
    let rho = base.abs() / rat_int(2);
    let growth = BigRational::new(BigInt::from(terms + 1), BigInt::from(terms));
    let ratio = num_traits::pow(growth, n) * &rho;
    if ratio >= one() {
        return Err(Error::InvalidParameter(format!(
            "{terms} terms are too few for a convergent tail bound at n = {n}, t = {t0}"
        )));
    }

    let mut c = Checker::new("Dobinski series")
        .form(shift.tag())
        .range("n", n)
        .range("t", t0)
        .range("terms", terms);

    let p = tables.p_poly(n).eval(t0, &BigRational::zero());
    let lhs = p / num_traits::pow(one() - t0, n + 1);

    let mut partial = BigRational::zero();
    let mut last = BigRational::zero();
    let mut base_pow = one();
    for k in 1..=terms {
        last = &base_pow * rat_int(BigInt::from(k).pow(n as u32)) / pow2(shift.exponent(k));
        partial += &last;
        base_pow *= &base;
    }
    let bound = last.abs() * &ratio / (one() - &ratio);
    let gap = (&lhs - &partial).abs();

    c.detail("lhs", decimal(&lhs, 30));
    c.detail("partial sum", decimal(&partial, 30));
    c.detail("difference", scientific(&gap, 6));
    c.detail("tail bound", scientific(&bound, 6));
    if gap > bound {
        c.fail(
            format!("n={n}, t={t0}, terms={terms}"),
            format!("|lhs - partial| <= {}", scientific(&bound, 6)),
            scientific(&gap, 6),
        );
    } else {
        c.check(String::new, &true, &true);
    }
    Ok(c.finish())
}
