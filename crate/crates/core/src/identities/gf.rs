use num_rational::BigRational;
use num_traits::Zero;

use super::{one, rat_int, require_tables, sample_points, Checker, VerificationReport};
use crate::error::{Error, Result};
use crate::polyring::{gf_alpha, TruncSeries};
use crate::tables::{segmented_count, KTables};

fn check_samples(order: usize, sample_count: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::InvalidParameter(
            "series order must be at least 1".into(),
        ));
    }
    let need = (order + 1) * (order + 1);
    if sample_count < need {
        return Err(Error::InvalidParameter(format!(
            "{sample_count} samples cannot pin down order {order}; need at least {need}"
        )));
    }
    Ok(())
}

/// Compares `α_n(t0,q0)` from the tables with the coefficients of the
/// exponential generating function at every sample point, `n ≤ order`.
pub fn verify_gf(
    tables: &KTables,
    order: usize,
    sample_count: usize,
    seed: u64,
) -> Result<VerificationReport> {
    check_samples(order, sample_count)?;
    require_tables(tables.n_max(), order)?;
    let mut c = Checker::new("generating function")
        .range("N", order)
        .range("samples", sample_count)
        .range("seed", seed);
    let alphas: Vec<_> = (0..=order).map(|n| tables.alpha(n)).collect();
    for (t0, q0) in sample_points(sample_count, seed, &[one()]) {
        let series = gf_alpha(&t0, &q0, order)?;
        for (n, from_series) in series.iter().enumerate() {
            let from_table = alphas[n].eval(&t0, &q0);
            c.check(
                || format!("n={n}, t={t0}, q={q0}"),
                from_series,
                &from_table,
            );
        }
    }
    Ok(c.finish())
}

/// Right-hand side `[(1-t) - (q-t)(e^{x/2}-1)] / [(1-t) - (q+t)(e^{x/2}-1)]`.
fn lemma_rhs(t0: &BigRational, q0: &BigRational, order: usize) -> Result<TruncSeries> {
    let half = BigRational::new(1.into(), 2.into());
    let e = &TruncSeries::exp_linear(order, &half) - &TruncSeries::one(order);
    let base = TruncSeries::constant(order, one() - t0);
    let num = &base - &e.scale(&(q0 - t0));
    let den = &base - &e.scale(&(q0 + t0));
    Ok(&num * &den.reciprocal()?)
}

fn normalizer(n: usize) -> BigRational {
    rat_int(segmented_count(n))
}

/// Compares `1 + Σ t α_n/(1-t)^n · x^n/(2^{n-1} n!)` against its closed
/// form in `e^{x/2}` at every sample point.
pub fn verify_lemma_gf(
    tables: &KTables,
    order: usize,
    sample_count: usize,
    seed: u64,
) -> Result<VerificationReport> {
    check_samples(order, sample_count)?;
    require_tables(tables.n_max(), order)?;
    let mut c = Checker::new("lemma generating function")
        .range("N", order)
        .range("samples", sample_count)
        .range("seed", seed);
    let alphas: Vec<_> = (0..=order).map(|n| tables.alpha(n)).collect();
    for (t0, q0) in sample_points(sample_count, seed, &[one()]) {
        let rhs = lemma_rhs(&t0, &q0, order)?;
        let one_minus_t = one() - &t0;
        c.check(|| format!("n=0, t={t0}, q={q0}"), &rhs.coeff(0), &one());
        let mut power = one();
        for (n, alpha) in alphas.iter().enumerate().skip(1) {
            power *= &one_minus_t;
            let lhs = &t0 * alpha.eval(&t0, &q0) / &power / normalizer(n);
            c.check(|| format!("n={n}, t={t0}, q={q0}"), &rhs.coeff(n), &lhs);
        }
    }
    Ok(c.finish())
}

/// `α_n(t0,q0)`, `n ≤ order`, extracted from the closed form of the lemma
/// series alone. Needs `t0 ∉ {0, 1}`.
pub fn lemma_gf_alpha(
    t0: &BigRational,
    q0: &BigRational,
    order: usize,
) -> Result<Vec<BigRational>> {
    if t0.is_zero() || *t0 == one() {
        return Err(Error::InvalidParameter("t must avoid 0 and 1".into()));
    }
    let rhs = lemma_rhs(t0, q0, order)?;
    let one_minus_t = one() - t0;
    let mut out = vec![one()];
    let mut power = one();
    for n in 1..=order {
        power *= &one_minus_t;
        out.push(rhs.coeff(n) * &power * normalizer(n) / t0);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::Status;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn gf_passes_small() {
        let tables = KTables::by_recurrence(5);
        assert!(verify_gf(&tables, 2, 9, 7).unwrap().passed());
        assert!(verify_gf(&tables, 5, 36, 11).unwrap().passed());
    }

    #[test]
    fn gf_rejects_bad_parameters() {
        let tables = KTables::by_recurrence(5);
        assert!(verify_gf(&tables, 5, 35, 0).is_err());
        assert!(verify_gf(&tables, 6, 49, 0).is_err());
        assert!(verify_gf(&tables, 0, 49, 0).is_err());
    }

    #[test]
    fn gf_detects_mutation() {
        let mut tables = KTables::by_recurrence(5);
        tables.perturb(4, 1, 1, 1);
        let report = verify_gf(&tables, 5, 36, 3).unwrap();
        assert_eq!(report.status, Status::Fail);
        assert!(report.counterexample.unwrap().parameters.starts_with("n=4"));
    }

    #[test]
    fn lemma_first_order() {
        let rhs = lemma_rhs(&rat(1, 3), &rat(2, 5), 3).unwrap();
        // coefficient of x is t α_1/(1-t) with α_1 = 1
        assert_eq!(rhs.coeff(1), rat(1, 3) / rat(2, 3));
        assert!(verify_lemma_gf(&KTables::by_recurrence(6), 6, 49, 5)
            .unwrap()
            .passed());
    }

    #[test]
    fn both_closed_forms_agree() {
        for (t0, q0) in sample_points(16, 9, &[one(), rat(0, 1)]) {
            assert_eq!(
                lemma_gf_alpha(&t0, &q0, 5).unwrap(),
                gf_alpha(&t0, &q0, 5).unwrap()
            );
        }
        assert!(lemma_gf_alpha(&rat(0, 1), &rat(1, 1), 3).is_err());
    }
}
