//! Exact verifiers for the identities satisfied by the generalized Eulerian
//! polynomials.
//!
//! Every verifier reads its `K` values from a [`KTables`] it is handed, so a
//! deliberately corrupted table must make at least one of them fail. The
//! other side of each identity is computed independently (series expansion,
//! classical Eulerian or Stirling numbers, the `T` recurrence, enumeration).
//!
//! Three printed forms do not hold as stated; each is a parameter whose
//! default is the form that checks out, and reports record which one ran:
//! the mirror index ([`MirrorIndex`]), the Dobinski denominator
//! ([`DenominatorShift`]) and the Worpitzky binomial ([`BinomialShift`]).

mod dobinski;
mod exact;
mod gf;
mod unimodality;
mod worpitzky;

pub use dobinski::{verify_dobinski, DenominatorShift};
pub use exact::{verify_recurrences_and_symmetries, verify_specializations, MirrorIndex};
pub use gf::{lemma_gf_alpha, verify_gf, verify_lemma_gf};
pub use unimodality::{is_unimodal, unimodality_scan};
pub use worpitzky::{
    verify_classical_worpitzky, verify_worpitzky, verify_worpitzky_difference, BinomialShift,
    SumRange,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Display};
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub parameters: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub name: String,
    /// `"corrected"` / `"printed"` for identities with a selectable form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    pub ranges: BTreeMap<String, String>,
    pub checks: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, String>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        let ranges: Vec<String> = self
            .ranges
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, "{status} {}", self.name)?;
        if let Some(form) = &self.form {
            write!(f, " ({form})")?;
        }
        write!(
            f,
            " [{}] {} checks, {} ms",
            ranges.join(", "),
            self.checks,
            self.elapsed_ms
        )?;
        if let Some(c) = &self.counterexample {
            write!(
                f,
                "\n  counterexample at {}: expected {}, got {}",
                c.parameters, c.expected, c.actual
            )?;
        }
        for (k, v) in &self.details {
            write!(f, "\n  {k}: {v}")?;
        }
        Ok(())
    }
}

/// Accumulates checks and keeps the first failure.
pub(crate) struct Checker {
    name: String,
    form: Option<String>,
    ranges: BTreeMap<String, String>,
    checks: u64,
    failure: Option<Counterexample>,
    details: BTreeMap<String, String>,
    start: Instant,
}

impl Checker {
    pub(crate) fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            form: None,
            ranges: BTreeMap::new(),
            checks: 0,
            failure: None,
            details: BTreeMap::new(),
            start: Instant::now(),
        }
    }

    pub(crate) fn form(mut self, form: &str) -> Self {
        self.form = Some(form.to_string());
        self
    }

    pub(crate) fn range(mut self, key: &str, value: impl Display) -> Self {
        self.ranges.insert(key.to_string(), value.to_string());
        self
    }

    pub(crate) fn detail(&mut self, key: &str, value: impl Display) {
        self.details.insert(key.to_string(), value.to_string());
    }

    /// Records one comparison; returns whether it held.
    pub(crate) fn check<T: PartialEq + Display>(
        &mut self,
        parameters: impl FnOnce() -> String,
        expected: &T,
        actual: &T,
    ) -> bool {
        self.checks += 1;
        let ok = expected == actual;
        if !ok && self.failure.is_none() {
            self.failure = Some(Counterexample {
                parameters: parameters(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
        ok
    }

    pub(crate) fn fail(&mut self, parameters: String, expected: String, actual: String) {
        self.checks += 1;
        if self.failure.is_none() {
            self.failure = Some(Counterexample {
                parameters,
                expected,
                actual,
            });
        }
    }

    pub(crate) fn failed(&self) -> bool {
        self.failure.is_some()
    }

    pub(crate) fn finish(self) -> VerificationReport {
        VerificationReport {
            name: self.name,
            form: self.form,
            ranges: self.ranges,
            checks: self.checks,
            status: if self.failure.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            counterexample: self.failure,
            details: self.details,
            elapsed_ms: self.start.elapsed().as_millis(),
        }
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num: i64 = rng.gen_range(-12..=12);
    let den: i64 = rng.gen_range(1..=7);
    BigRational::new(num.into(), den.into())
}

fn distinct_values(
    rng: &mut ChaCha8Rng,
    count: usize,
    excluded: &[BigRational],
) -> Vec<BigRational> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v = random_rational(rng);
        if !excluded.contains(&v) && seen.insert(v.clone()) {
            out.push(v);
        }
    }
    out
}

/// `count` sample points `(t, q)` from `seed`. The first `s²` points, with
/// `s = ⌊√count⌋`, form a grid over `s` distinct `t` values and `s` distinct
/// `q` values, so two polynomials of degree `< s` in each variable that
/// agree on them are equal. `t` never takes a value in `excluded_t`.
pub fn sample_points(
    count: usize,
    seed: u64,
    excluded_t: &[BigRational],
) -> Vec<(BigRational, BigRational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = num_integer::Roots::sqrt(&count);
    let ts = distinct_values(&mut rng, side, excluded_t);
    let qs = distinct_values(&mut rng, side, &[]);
    let mut out: Vec<(BigRational, BigRational)> = ts
        .iter()
        .flat_map(|t| qs.iter().map(move |q| (t.clone(), q.clone())))
        .collect();
    while out.len() < count {
        let t = random_rational(&mut rng);
        if !excluded_t.contains(&t) {
            out.push((t, random_rational(&mut rng)));
        }
    }
    out
}

pub(crate) fn require_tables(have: usize, need: usize) -> Result<()> {
    if have < need {
        return Err(Error::InvalidParameter(format!(
            "tables cover n <= {have}, but n = {need} is needed"
        )));
    }
    Ok(())
}

/// Decimal rendering of an exact rational, truncated to `digits` places.
pub fn decimal(r: &BigRational, digits: usize) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let r = r.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (r.numer() * &scale).div_floor(r.denom());
    let (int, frac) = scaled.div_rem(&scale);
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>digits$}", frac.to_string())
}

/// Scientific rendering `m.mmme±x` of an exact rational, mantissa truncated.
pub fn scientific(r: &BigRational, digits: usize) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let r = r.abs();
    let ten = BigRational::from_integer(10.into());
    // first guess from digit counts, then settle so that 1 <= r/10^e < 10
    let mut e = r.numer().to_string().len() as i64 - r.denom().to_string().len() as i64;
    let scaled = |e: i64| {
        let p = num_traits::pow(ten.clone(), e.unsigned_abs() as usize);
        if e >= 0 {
            &r / p
        } else {
            &r * p
        }
    };
    let mut m = scaled(e);
    while m >= ten {
        e += 1;
        m = scaled(e);
    }
    while m < BigRational::one() {
        e -= 1;
        m = scaled(e);
    }
    format!("{sign}{}e{e}", decimal(&m, digits))
}

pub(crate) fn rat_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

pub(crate) fn one() -> BigRational {
    BigRational::one()
}
