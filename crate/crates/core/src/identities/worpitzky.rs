use std::ops::RangeInclusive;

use num_bigint::BigInt;

use super::{rat_int, require_tables, Checker, VerificationReport};
use crate::error::{Error, Result};
use crate::polyring::RatPoly;
use crate::tables::{binomial, eulerian_row, KTables};

/// Top argument of the binomial weight `C(n+k-i+offset, n-1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BinomialShift {
    /// `C(n+k-i-2, n-1)`.
    #[default]
    Corrected,
    /// `C(n+k-i, n-1)`.
    Printed,
}

impl BinomialShift {
    fn offset(self) -> i64 {
        match self {
            BinomialShift::Corrected => -2,
            BinomialShift::Printed => 0,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            BinomialShift::Corrected => "corrected",
            BinomialShift::Printed => "printed",
        }
    }
}

/// Summation range of the classical difference form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SumRange {
    /// `0 ≤ i ≤ n-1`.
    #[default]
    Full,
    /// `0 ≤ i ≤ k-1`, which drops terms once `r > 0`.
    UpToKMinusOne,
}

impl SumRange {
    fn upper(self, n: usize, k: usize) -> usize {
        match self {
            SumRange::Full => n,
            SumRange::UpToKMinusOne => k,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            SumRange::Full => "full",
            SumRange::UpToKMinusOne => "up-to-k-minus-1",
        }
    }
}

fn as_int(r: &num_rational::BigRational) -> BigInt {
    debug_assert!(r.is_integer());
    r.to_integer()
}

fn check_k(k_max: usize) -> Result<()> {
    if k_max == 0 {
        return Err(Error::InvalidParameter(
            "k must range over at least 1..=1".into(),
        ));
    }
    Ok(())
}

/// `C(k+r-1, r) · Δ^{r+1}(X^n)|_{X=k-1} = Σ_{i<k} C(n+k-i-2, n-1) K(n,i,r)`
/// for `n ∈ ns`, `r ∈ rs`, `1 ≤ k ≤ k_max`.
pub fn verify_worpitzky(
    tables: &KTables,
    ns: RangeInclusive<usize>,
    rs: RangeInclusive<usize>,
    k_max: usize,
    shift: BinomialShift,
) -> Result<VerificationReport> {
    check_k(k_max)?;
    if *ns.start() == 0 {
        return Err(Error::InvalidParameter("the identity needs n >= 1".into()));
    }
    require_tables(tables.n_max(), *ns.end())?;
    let mut c = Checker::new("generalized Worpitzky")
        .form(shift.tag())
        .range("n", format!("{}..={}", ns.start(), ns.end()))
        .range("r", format!("{}..={}", rs.start(), rs.end()))
        .range("k", format!("1..={k_max}"));
    for n in ns {
        let power = RatPoly::monomial(n);
        for r in rs.clone() {
            let diff = power.delta_power(r + 1);
            for k in 1..=k_max {
                let (ki, ri, ni) = (k as i64, r as i64, n as i64);
                let lhs = binomial(ki + ri - 1, ri) * as_int(&diff.eval_int(ki - 1));
                let rhs: BigInt = (0..k)
                    .map(|i| {
                        binomial(ni + ki - i as i64 + shift.offset(), ni - 1) * tables.get(n, i, r)
                    })
                    .sum();
                c.check(|| format!("n={n}, r={r}, k={k}"), &lhs, &rhs);
            }
        }
    }
    Ok(c.finish())
}

/// `k^n = Σ_{i<k} C(k+n-i-1, n) A(n,i)` for `1 ≤ n ≤ n_max`, `1 ≤ k ≤ k_max`.
pub fn verify_classical_worpitzky(n_max: usize, k_max: usize) -> Result<VerificationReport> {
    check_k(k_max)?;
    let mut c = Checker::new("classical Worpitzky")
        .range("n", format!("1..={n_max}"))
        .range("k", format!("1..={k_max}"));
    for n in 1..=n_max {
        let a = eulerian_row(n);
        for k in 1..=k_max {
            let lhs = BigInt::from(k).pow(n as u32);
            let rhs: BigInt = (0..k.min(n))
                .map(|i| binomial((k + n - i - 1) as i64, n as i64) * &a[i])
                .sum();
            c.check(|| format!("n={n}, k={k}"), &lhs, &rhs);
        }
    }
    Ok(c.finish())
}

/// `Δ^r(X^n)|_{X=k} = Σ_i C(k+n-i-1, n-r) A(n,i)` for `1 ≤ n ≤ n_max`,
/// `0 ≤ r ≤ n`, `1 ≤ k ≤ k_max`, with `i` running over `range`.
pub fn verify_worpitzky_difference(
    n_max: usize,
    k_max: usize,
    range: SumRange,
) -> Result<VerificationReport> {
    check_k(k_max)?;
    let mut c = Checker::new("Worpitzky differences")
        .form(range.tag())
        .range("n", format!("1..={n_max}"))
        .range("k", format!("1..={k_max}"));
    for n in 1..=n_max {
        let a = eulerian_row(n);
        let power = RatPoly::monomial(n);
        for r in 0..=n {
            let diff = power.delta_power(r);
            for k in 1..=k_max {
                let lhs = as_int(&diff.eval(&rat_int(k)));
                let rhs: BigInt = (0..range.upper(n, k).min(n))
                    .map(|i| binomial((k + n - i - 1) as i64, (n - r) as i64) * &a[i])
                    .sum();
                c.check(|| format!("n={n}, r={r}, k={k}"), &lhs, &rhs);
            }
        }
    }
    if c.failed() {
        c.detail(
            "note",
            "the sum must run over every descent count, not only i < k",
        );
    }
    Ok(c.finish())
}
