use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{require_tables, Checker, VerificationReport};
use crate::error::Result;
use crate::polyring::{linear, named_poly, BiPoly, Family};
use crate::segcomb::LexPermutations;
use crate::tables::{binomial, factorial, stirling2_row, t_recurrence_rows, KTables};

/// Partner index under the reversal symmetry `K(n,i,j) = K(n,i',j)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MirrorIndex {
    /// `i' = n-1-i-j`.
    #[default]
    Corrected,
    /// `i' = n-i-j`.
    Printed,
}

impl MirrorIndex {
    fn partner(self, n: usize, i: usize, j: usize) -> Option<usize> {
        let top = match self {
            MirrorIndex::Corrected => n.checked_sub(1)?,
            MirrorIndex::Printed => n,
        };
        top.checked_sub(i + j)
    }

    fn tag(self) -> &'static str {
        match self {
            MirrorIndex::Corrected => "corrected",
            MirrorIndex::Printed => "printed",
        }
    }
}

fn as_poly(coeffs: &[BigInt]) -> BiPoly {
    BiPoly::from_terms(
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| ((k as u32, 0), c.clone())),
    )
}

/// The five specializations of `α_n`, each against an independent source:
/// `α(t,0) = A_n`, `α(0,q) = B_n`, `α(t,1) = P_n`, `[t^m] α(t,t) = T(n,n-1-m)`
/// and `α(-1,1) = 2^{n-1}`, for `1 ≤ n ≤ n_max`.
pub fn verify_specializations(tables: &KTables, n_max: usize) -> Result<VerificationReport> {
    require_tables(tables.n_max(), n_max)?;
    let mut c = Checker::new("specializations").range("n", format!("1..={n_max}"));
    let t_rows = t_recurrence_rows(n_max);
    let (t, q) = (BiPoly::t(), BiPoly::q());
    let (zero, one) = (BiPoly::zero(), BiPoly::one());
    for n in 1..=n_max {
        let alpha = tables.alpha(n);
        c.check(
            || format!("a(t,0), n={n}"),
            &named_poly(Family::A, n),
            &alpha.compose(&t, &zero),
        );
        c.check(
            || format!("a(0,q), n={n}"),
            &named_poly(Family::B, n),
            &alpha.compose(&zero, &q),
        );
        c.check(
            || format!("a(t,1), n={n}"),
            &as_poly(&t_rows[n]),
            &alpha.compose(&t, &one),
        );
        let diagonal = alpha.compose(&t, &t);
        for m in 0..n {
            c.check(
                || format!("[t^{m}] a(t,t), n={n}"),
                &t_rows[n][n - 1 - m],
                &diagonal.coeff(m as u32, 0),
            );
        }
        let at_minus_one = alpha.compose(&BiPoly::constant(-1), &one);
        c.check(
            || format!("a(-1,1), n={n}"),
            &BiPoly::constant(BigInt::one() << (n - 1)),
            &at_minus_one,
        );
    }
    Ok(c.finish())
}

/// `Σ_{i+j<n} t^i (q-t)^j (1-t)^{n-i-j-1} 2^i (i+j+1)! C(i+j,j) S(n,i+j+1)`.
fn stirling_expansion(n: usize) -> BiPoly {
    let s = stirling2_row(n);
    let q_minus_t = linear(0, -1, 1);
    let one_minus_t = linear(1, -1, 0);
    let mut out = BiPoly::zero();
    for i in 0..n {
        for j in 0..n - i {
            let weight = (BigInt::one() << i)
                * factorial(i + j + 1)
                * binomial((i + j) as i64, j as i64)
                * &s[i + j + 1];
            if weight.is_zero() {
                continue;
            }
            let term = BiPoly::t().pow(i as u32)
                * q_minus_t.pow(j as u32)
                * one_minus_t.pow((n - i - j - 1) as u32);
            out = out + term.scale(&weight);
        }
    }
    out
}

/// `α_n = ((n-2)tq + (n-1)t + 2q + 1) α_{n-1} + (t - t²)(q+1) ∂_t α_{n-1}
///        + (1-t)(q² + q) ∂_q α_{n-1}`.
fn recurrence_step(n: usize, prev: &BiPoly) -> BiPoly {
    let n = n as i64;
    let t = BiPoly::t();
    let q = BiPoly::q();
    let lead = (&t * &q).scale(&(n - 2).into()) + linear(1, n - 1, 2);
    let dt = (&t - &t.pow(2)) * linear(1, 0, 1);
    let dq = linear(1, -1, 0) * (q.pow(2) + &q);
    lead * prev + dt * prev.deriv_t() + dq * prev.deriv_q()
}

/// The differential recurrence, the reversal symmetry (on the table, as a
/// polynomial identity and on enumerated permutations up to
/// `min(n_max, oracle_cap)`), the Stirling expansion, the first column
/// `K(n,0,j) = (j+1)! S(n,j+1)` and divisibility of `K(n,i,j)` by `(j+1)!`.
/// Enumeration also checks `T(n, n-1-m) = #{σ : des(σ) + seg(σ) = m}`.
pub fn verify_recurrences_and_symmetries(
    tables: &KTables,
    n_max: usize,
    mirror: MirrorIndex,
    oracle_cap: usize,
) -> Result<VerificationReport> {
    require_tables(tables.n_max(), n_max)?;
    let enum_max = n_max.min(oracle_cap);
    let mut c = Checker::new("recurrences and symmetries")
        .form(mirror.tag())
        .range("n", format!("1..={n_max}"))
        .range("enumerated n", format!("1..={enum_max}"));
    for n in 1..=n_max {
        let alpha = tables.alpha(n);
        if n >= 2 {
            let stepped = recurrence_step(n, &tables.alpha(n - 1));
            c.check(
                || format!("differential recurrence, n={n}"),
                &stepped,
                &alpha,
            );
        }

        let slice = tables.slice(n).expect("checked above");
        for (&(i, j), v) in &slice.entries {
            let partner = mirror
                .partner(n, i, j)
                .map_or_else(BigInt::zero, |p| tables.get(n, p, j));
            c.check(|| format!("K({n},{i},{j}) vs its mirror"), v, &partner);
        }
        // t^{n-1} α(1/t, q/t) = α(t, q), written out on monomials.
        let reflected = BiPoly::from_terms(alpha.terms().iter().filter_map(|(&(i, j), v)| {
            let p = mirror.partner(n, i as usize, j as usize)?;
            Some(((p as u32, j), v.clone()))
        }));
        c.check(
            || format!("reflected polynomial, n={n}"),
            &alpha,
            &reflected,
        );

        c.check(
            || format!("Stirling expansion, n={n}"),
            &stirling_expansion(n),
            &alpha,
        );

        let s = stirling2_row(n);
        for j in 0..n {
            let first = factorial(j + 1) * &s[j + 1];
            c.check(|| format!("K({n},0,{j})"), &first, &tables.get(n, 0, j));
            for i in 0..n - j {
                let v = tables.get(n, i, j);
                let rem = v.mod_floor(&factorial(j + 1));
                c.check(
                    || format!("({})! divides K({n},{i},{j}) = {v}", j + 1),
                    &BigInt::zero(),
                    &rem,
                );
            }
        }
    }

    for n in 1..=enum_max {
        let (counts, mismatch) = mirror_tally(n, mirror);
        if let Some((sigma, expected, got)) = mismatch {
            c.fail(
                format!("mirror of {sigma}"),
                expected.map_or("no partner".into(), |(a, b)| {
                    format!("(des, seg) = ({a}, {b})")
                }),
                format!("(des, seg) = ({}, {})", got.0, got.1),
            );
        } else {
            c.check(String::new, &true, &true);
        }
        let t_row = tables.t_row(n);
        for m in 0..n {
            let tally: BigInt = counts
                .iter()
                .filter(|(k, _)| k.0 + k.1 == m)
                .map(|(_, v)| v)
                .sum();
            c.check(
                || format!("T({n},{}) vs des+seg={m}", n - 1 - m),
                &t_row[n - 1 - m],
                &tally,
            );
        }
        let slice = tables.slice(n).expect("checked above");
        let table: BTreeMap<(usize, usize), BigInt> = slice
            .entries
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        for key in table.keys().chain(counts.keys()) {
            let zero = BigInt::zero();
            c.check(
                || format!("enumerated K({n},{},{})", key.0, key.1),
                counts.get(key).unwrap_or(&zero),
                table.get(key).unwrap_or(&zero),
            );
        }
    }
    Ok(c.finish())
}

type Stats = (usize, usize);
type Mismatch = (String, Option<Stats>, Stats);

fn descent_mask(word: &[usize]) -> u64 {
    (1..word.len())
        .filter(|&p| word[p - 1] > word[p])
        .fold(0, |m, p| m | 1 << (p - 1))
}

fn render(word: &[usize], bars: u64) -> String {
    let mut out = word[0].to_string();
    for (p, v) in word.iter().enumerate().skip(1) {
        out.push(if bars >> (p - 1) & 1 == 1 { '|' } else { ',' });
        out.push_str(&v.to_string());
    }
    out
}

/// Tallies `(des, seg)` over `SP_n` and checks that reversing each word and
/// reflecting its bars lands on the partner statistic. Works on bit masks:
/// bit `p-1` stands for position `p`.
fn mirror_tally(n: usize, mirror: MirrorIndex) -> (BTreeMap<Stats, BigInt>, Option<Mismatch>) {
    let width = n - 1;
    let masks = 1u64 << width;
    let reflected: Vec<u64> = (0..masks)
        .map(|b| {
            (0..width)
                .filter(|&k| b >> k & 1 == 1)
                .fold(0, |m, k| m | 1 << (width - 1 - k))
        })
        .collect();
    let mut dense = vec![vec![0u64; n]; n];
    let mut mismatch = None;
    let mut perms = LexPermutations::new(n);
    let mut reversed = vec![0; n];
    while let Some(word) = perms.next_slice() {
        reversed.copy_from_slice(word);
        reversed.reverse();
        let (d, rd) = (descent_mask(word), descent_mask(&reversed));
        for bars in 0..masks {
            let s = bars.count_ones() as usize;
            let i = (d & !bars).count_ones() as usize;
            dense[i][s] += 1;
            let mirrored = ((rd & !reflected[bars as usize]).count_ones() as usize, s);
            let expected = mirror.partner(n, i, s).map(|p| (p, s));
            if mismatch.is_none() && expected != Some(mirrored) {
                mismatch = Some((render(word, bars), expected, mirrored));
            }
        }
    }
    let counts = dense
        .into_iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .filter(|(_, v)| *v > 0)
                .map(move |(j, v)| ((i, j), BigInt::from(v)))
        })
        .collect();
    (counts, mismatch)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specializations_hold() {
        let r = verify_specializations(&KTables::by_recurrence(12), 12).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn corrected_mirror_passes() {
        let tables = KTables::by_recurrence(10);
        let r = verify_recurrences_and_symmetries(&tables, 10, MirrorIndex::Corrected, 5).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn printed_mirror_fails() {
        let tables = KTables::by_recurrence(5);
        let r = verify_recurrences_and_symmetries(&tables, 5, MirrorIndex::Printed, 4).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn mutations_are_noticed() {
        let mut tables = KTables::by_recurrence(6);
        tables.perturb(6, 0, 3, 24);
        assert!(!verify_specializations(&tables, 6).unwrap().passed());
        assert!(
            !verify_recurrences_and_symmetries(&tables, 6, MirrorIndex::Corrected, 3)
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn tally_agrees_with_segmented_permutations() {
        use crate::segcomb::enumerate_permutations;
        let (counts, mismatch) = mirror_tally(4, MirrorIndex::Corrected);
        assert!(mismatch.is_none());
        for sigma in enumerate_permutations(4, None) {
            let m = sigma.mirror();
            assert_eq!(
                (m.des(), m.seg()),
                (3 - sigma.des() - sigma.seg(), sigma.seg())
            );
        }
        let total: BigInt = counts.values().sum();
        assert_eq!(total, BigInt::from(192));
        let (_, bad) = mirror_tally(3, MirrorIndex::Printed);
        assert_eq!(bad.unwrap().0, "1,2,3");
    }

    #[test]
    fn expansion_small() {
        assert_eq!(stirling_expansion(2).to_string(), "1 + t + 2*q");
        assert_eq!(
            recurrence_step(2, &BiPoly::one()).to_string(),
            "1 + t + 2*q"
        );
    }
}
