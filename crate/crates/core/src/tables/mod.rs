//! Exact counting tables.
//!
//! `T(n,k)` counts segmented permutations of size `n` with `k` descents and
//! `K(n,i,j)` those with `i` descents and `j` bars. Both are available from a
//! brute-force enumeration oracle and from independent recurrences, next to
//! the classical Eulerian numbers `A(n,k)` and Stirling numbers `S(n,k)`.
//! Out-of-range indices read as zero.

mod export;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use export::{
    bfile, entries_csv, entries_json, k_entries, k_latex, k_text, parse_entries_json, t_entries,
    t_latex, t_text, Entry,
};

use crate::error::{Error, Result};
use crate::polyring::BiPoly;
use crate::segcomb::LexPermutations;

/// Largest `n` the enumeration oracle accepts unless told otherwise
/// (`2^8 · 9! ≈ 9.3·10^7` objects).
pub const DEFAULT_ORACLE_CAP: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Enumerate,
    RecurrenceN,
    RecurrenceJ,
    ClosedForm,
    Sum,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Enumerate => "enumerate",
            Method::RecurrenceN => "recurrence_n",
            Method::RecurrenceJ => "recurrence_j",
            Method::ClosedForm => "closed_form",
            Method::Sum => "sum",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One row (`Ix = usize`) or slice (`Ix = (usize, usize)`) of a counting table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable<Ix: Ord> {
    pub n: usize,
    pub method: Method,
    pub entries: BTreeMap<Ix, BigInt>,
}

pub type TRow = CountTable<usize>;
pub type KSlice = CountTable<(usize, usize)>;

impl<Ix: Ord + Copy> CountTable<Ix> {
    pub fn get(&self, ix: Ix) -> BigInt {
        self.entries.get(&ix).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn total(&self) -> BigInt {
        self.entries.values().sum()
    }
}

impl KSlice {
    /// Sum of the entries with `i == k`, i.e. `T(n,k)`.
    pub fn descent_total(&self, k: usize) -> BigInt {
        self.entries
            .range((k, 0)..=(k, usize::MAX))
            .map(|(_, v)| v)
            .sum()
    }

    /// Row `j` of the slice, `K(n, 0..n-j, j)`.
    pub fn row(&self, j: usize) -> Vec<BigInt> {
        (0..self.n.saturating_sub(j))
            .map(|i| self.get((i, j)))
            .collect()
    }

    /// Column `i` of the slice, `K(n, i, 0..n-i)`.
    pub fn column(&self, i: usize) -> Vec<BigInt> {
        (0..self.n.saturating_sub(i))
            .map(|j| self.get((i, j)))
            .collect()
    }
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for step in 0..k {
        acc = acc * (n - step) / (step + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `2^(n-1) · n!`, the number of segmented permutations of size `n ≥ 1`.
pub fn segmented_count(n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    factorial(n) << (n - 1)
}

/// Row `n` of the classical Eulerian triangle, `A(n, 0..n)` (`[1]` for `n = 0`).
pub fn eulerian_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let prev = row;
        row = (0..m)
            .map(|k| {
                let stay = prev.get(k).map_or_else(BigInt::zero, |a| a * (k + 1));
                let rise = if k > 0 {
                    prev.get(k - 1).map_or_else(BigInt::zero, |a| a * (m - k))
                } else {
                    BigInt::zero()
                };
                stay + rise
            })
            .collect();
    }
    row
}

/// Classical Eulerian number `A(n,k)`; zero outside `0 ≤ k < max(n,1)`.
pub fn eulerian(n: usize, k: usize) -> BigInt {
    eulerian_row(n).get(k).cloned().unwrap_or_else(BigInt::zero)
}

/// `S(n, 0..=n)`, Stirling numbers of the second kind.
pub fn stirling2_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m + 1];
        for k in 1..=m {
            let same = row.get(k).map_or_else(BigInt::zero, |s| s * k);
            next[k] = same + &row[k - 1];
        }
        row = next;
    }
    row
}

pub fn stirling2(n: usize, k: usize) -> BigInt {
    stirling2_row(n)
        .get(k)
        .cloned()
        .unwrap_or_else(BigInt::zero)
}

/// Number of ordered set partitions of an `n`-set, `Σ_k S(n,k)·k!`.
pub fn ordered_bell(n: usize) -> BigInt {
    stirling2_row(n)
        .into_iter()
        .enumerate()
        .map(|(k, s)| s * factorial(k))
        .sum()
}

type Dense = Vec<Vec<BigInt>>;

fn dense_get(slice: &Dense, i: i64, j: i64) -> BigInt {
    if i < 0 || j < 0 {
        return BigInt::zero();
    }
    slice
        .get(i as usize)
        .and_then(|row| row.get(j as usize))
        .cloned()
        .unwrap_or_else(BigInt::zero)
}

fn dense_to_table(n: usize, method: Method, dense: &Dense) -> KSlice {
    let mut entries = BTreeMap::new();
    if n == 0 {
        entries.insert((0, 0), BigInt::one());
    }
    for i in 0..n {
        for j in 0..n - i {
            entries.insert((i, j), dense_get(dense, i as i64, j as i64));
        }
    }
    CountTable { n, method, entries }
}

/// Slices `0..=n_max` from the recurrence that removes the letter `n`.
fn recurrence_n_slices(n_max: usize) -> Vec<Dense> {
    let mut slices: Vec<Dense> = vec![vec![vec![BigInt::one()]]];
    for n in 1..=n_max {
        let prev = &slices[n - 1];
        let mut cur = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n - i {
                let (ii, jj) = (i as i64, j as i64);
                let same = dense_get(prev, ii, jj) + dense_get(prev, ii, jj - 1);
                let more = dense_get(prev, ii - 1, jj) + dense_get(prev, ii - 1, jj - 1);
                cur[i][j] = same * (i + j + 1) + more * (n - i - j);
            }
        }
        slices.push(cur);
    }
    slices
}

fn recurrence_j_slice(n: usize) -> Result<Dense> {
    let eul = eulerian_row(n);
    let mut cur = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        cur[i][0] = eul[i].clone();
    }
    for j in 1..n {
        for i in 0..n - j {
            let num = dense_get(&cur, i as i64, j as i64 - 1) * (n - i - j)
                + dense_get(&cur, i as i64 + 1, j as i64 - 1) * (i + 1);
            let (q, r) = num.div_rem(&BigInt::from(j));
            if !r.is_zero() {
                return Err(Error::InexactDivision { n, i, j });
            }
            cur[i][j] = q;
        }
    }
    Ok(cur)
}

fn closed_form_slice(n: usize) -> Dense {
    let eul = eulerian_row(n);
    let mut cur = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n - i {
            cur[i][j] = (0..n)
                .map(|k| {
                    let (k_, i_, j_, n_) = (k as i64, i as i64, j as i64, n as i64);
                    binomial(k_, i_) * binomial(n_ - 1 - k_, i_ + j_ - k_) * &eul[k]
                })
                .sum();
        }
    }
    cur
}

/// Brute-force count over every `(word, bar set)` pair of size `n`.
fn enumerate_slice(n: usize) -> Dense {
    let mut counts = vec![vec![0u64; n.max(1)]; n.max(1)];
    if n == 0 {
        counts[0][0] = 1;
    }
    let masks = if n == 0 { 0u64 } else { 1u64 << (n - 1) };
    let mut perms = LexPermutations::new(n);
    while let Some(w) = perms.next_slice() {
        let descents = (1..n)
            .filter(|&p| w[p - 1] > w[p])
            .fold(0u64, |m, p| m | 1 << (p - 1));
        for bars in 0..masks {
            let i = (descents & !bars).count_ones() as usize;
            let j = bars.count_ones() as usize;
            counts[i][j] += 1;
        }
    }
    counts
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect()
}

/// `K(n, ·, ·)` by the given method, with the default oracle cap.
pub fn k_table(n: usize, method: Method) -> Result<KSlice> {
    k_table_with_cap(n, method, DEFAULT_ORACLE_CAP)
}

pub fn k_table_with_cap(n: usize, method: Method, cap: usize) -> Result<KSlice> {
    let dense = match method {
        Method::Enumerate => {
            if n > cap {
                return Err(Error::OracleCapExceeded { n, cap });
            }
            enumerate_slice(n)
        }
        Method::RecurrenceN => recurrence_n_slices(n).pop().expect("at least one slice"),
        Method::RecurrenceJ => recurrence_j_slice(n)?,
        Method::ClosedForm => closed_form_slice(n),
        Method::Sum => {
            return Err(Error::InvalidParameter(
                "K tables have no 'sum' method".into(),
            ));
        }
    };
    Ok(dense_to_table(n, method, &dense))
}

/// `T(n, ·)`, either summed from the `K` slice or from its own recurrence.
pub fn t_table(n: usize, method: Method) -> Result<TRow> {
    let entries = match method {
        Method::Sum => {
            let k = k_table(n, Method::RecurrenceN)?;
            (0..n.max(1)).map(|d| (d, k.descent_total(d))).collect()
        }
        Method::RecurrenceN => t_recurrence_rows(n)
            .pop()
            .expect("row n")
            .into_iter()
            .enumerate()
            .collect(),
        other => {
            return Err(Error::InvalidParameter(format!(
                "T tables have no '{other}' method"
            )));
        }
    };
    Ok(CountTable { n, method, entries })
}

/// Rows `0..=n_max` of `T` from its three-term recurrence.
pub fn t_recurrence_rows(n_max: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    if n_max >= 1 {
        rows.push(vec![BigInt::one()]);
    }
    for n in 2..=n_max {
        let prev = &rows[n - 1];
        let at = |k: i64| -> BigInt {
            if k < 0 {
                BigInt::zero()
            } else {
                prev.get(k as usize).cloned().unwrap_or_else(BigInt::zero)
            }
        };
        let row = (0..n)
            .map(|k| {
                let ki = k as i64;
                at(ki - 1) * (n - k) + at(ki) * (n + 1) + at(ki + 1) * (k + 1)
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// A stack of `K` slices for `n = 0..=n_max`, the common input of the
/// polynomial builders and the identity verifiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTables {
    slices: Vec<KSlice>,
}

impl KTables {
    pub fn by_recurrence(n_max: usize) -> Self {
        let slices = recurrence_n_slices(n_max)
            .iter()
            .enumerate()
            .map(|(n, dense)| dense_to_table(n, Method::RecurrenceN, dense))
            .collect();
        Self { slices }
    }

    pub fn by_method(n_max: usize, method: Method, cap: usize) -> Result<Self> {
        if method == Method::RecurrenceN {
            return Ok(Self::by_recurrence(n_max));
        }
        let slices = (0..=n_max)
            .map(|n| k_table_with_cap(n, method, cap))
            .collect::<Result<_>>()?;
        Ok(Self { slices })
    }

    pub fn n_max(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn slice(&self, n: usize) -> Option<&KSlice> {
        self.slices.get(n)
    }

    pub fn slices(&self) -> &[KSlice] {
        &self.slices
    }

    pub fn get(&self, n: usize, i: usize, j: usize) -> BigInt {
        self.slices
            .get(n)
            .map_or_else(BigInt::zero, |s| s.get((i, j)))
    }

    /// `T(n, 0..max(n,1))` summed from the slice.
    pub fn t_row(&self, n: usize) -> Vec<BigInt> {
        let slice = &self.slices[n];
        (0..n.max(1)).map(|k| slice.descent_total(k)).collect()
    }

    /// `α_n(t,q) = Σ K(n,i,j) t^i q^j`.
    pub fn alpha(&self, n: usize) -> BiPoly {
        BiPoly::from_terms(
            self.slices[n]
                .entries
                .iter()
                .map(|(&(i, j), c)| ((i as u32, j as u32), c.clone())),
        )
    }

    /// `P_n(t) = Σ T(n,k) t^k`.
    pub fn p_poly(&self, n: usize) -> BiPoly {
        BiPoly::from_terms(
            self.t_row(n)
                .into_iter()
                .enumerate()
                .map(|(k, c)| ((k as u32, 0), c)),
        )
    }

    /// Adds `delta` to one entry. Used to check that verifiers notice a bad table.
    pub fn perturb(&mut self, n: usize, i: usize, j: usize, delta: i64) {
        let entry = self.slices[n]
            .entries
            .entry((i, j))
            .or_insert_with(BigInt::zero);
        *entry += delta;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn classical_numbers() {
        assert_eq!(eulerian(4, 1), BigInt::from(11));
        assert_eq!(eulerian(6, 2), BigInt::from(302));
        assert_eq!(eulerian(4, 7), BigInt::zero());
        for n in 1..10 {
            assert_eq!(eulerian(n, 0), BigInt::one());
        }
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(6, 6), BigInt::one());
        assert_eq!(stirling2(3, 0), BigInt::zero());
        let bells: Vec<BigInt> = (0..=7).map(ordered_bell).collect();
        assert_eq!(bells, ints(&[1, 1, 3, 13, 75, 541, 4683, 47293]));
    }

    #[test]
    fn ordered_bell_is_eulerian_at_two() {
        for n in 0..12 {
            let at_two: BigInt = eulerian_row(n)
                .into_iter()
                .enumerate()
                .map(|(k, a)| a << k)
                .sum();
            assert_eq!(at_two, ordered_bell(n));
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(4, -1), BigInt::zero());
    }

    #[test]
    fn k_slice_n4_all_methods() {
        let expected: BTreeMap<(usize, usize), BigInt> = [
            ((0, 0), 1),
            ((1, 0), 11),
            ((2, 0), 11),
            ((3, 0), 1),
            ((0, 1), 14),
            ((1, 1), 44),
            ((2, 1), 14),
            ((0, 2), 36),
            ((1, 2), 36),
            ((0, 3), 24),
        ]
        .into_iter()
        .map(|(k, v)| (k, BigInt::from(v)))
        .collect();
        for m in [
            Method::Enumerate,
            Method::RecurrenceN,
            Method::RecurrenceJ,
            Method::ClosedForm,
        ] {
            let t = k_table(4, m).unwrap();
            assert_eq!(t.entries, expected, "method {m}");
            assert_eq!(t.method, m);
        }
    }

    #[test]
    fn k_small_values() {
        let k3 = k_table(3, Method::RecurrenceN).unwrap();
        // j-recurrence seed: 1·K(3,0,1) = 2·K(3,0,0) + 1·K(3,1,0)
        assert_eq!(k3.get((0, 1)), k3.get((0, 0)) * 2 + k3.get((1, 0)));
        assert_eq!(k3.get((1, 1)), BigInt::from(6));
        assert_eq!(k3.get((3, 0)), BigInt::zero());
        assert_eq!(
            k_table(1, Method::RecurrenceJ).unwrap().get((0, 0)),
            BigInt::one()
        );
    }

    #[test]
    fn oracle_cap() {
        assert_eq!(
            k_table_with_cap(5, Method::Enumerate, 4),
            Err(Error::OracleCapExceeded { n: 5, cap: 4 })
        );
        assert!(k_table(3, Method::Sum).is_err());
        assert!(t_table(3, Method::ClosedForm).is_err());
    }

    #[test]
    fn t_rows() {
        let row6 = t_table(6, Method::RecurrenceN).unwrap();
        assert_eq!(
            row6.entries.values().cloned().collect::<Vec<_>>(),
            ints(&[4683, 9829, 6734, 1674, 119, 1])
        );
        assert_eq!(t_table(6, Method::Sum).unwrap().entries, row6.entries);
        let rows = t_recurrence_rows(3);
        assert_eq!(rows[3][1], &rows[2][0] * 2 + &rows[2][1] * 4);
        let t4 = t_table(4, Method::Sum).unwrap();
        assert_eq!(t4.get(1), BigInt::from(91));
        assert_eq!(
            t_table(0, Method::RecurrenceN).unwrap().get(0),
            BigInt::one()
        );
    }

    #[test]
    fn sums_and_zeros() {
        for n in 1..=9 {
            let k = k_table(n, Method::RecurrenceN).unwrap();
            assert_eq!(k.total(), segmented_count(n));
            assert!(k.entries.keys().all(|&(i, j)| i + j < n));
            assert_eq!(k.get((n, 0)), BigInt::zero());
            let t = t_table(n, Method::RecurrenceN).unwrap();
            assert_eq!(t.total(), segmented_count(n));
        }
    }

    #[test]
    fn ktables_perturb() {
        let mut kt = KTables::by_recurrence(4);
        assert_eq!(kt.get(4, 1, 1), BigInt::from(44));
        kt.perturb(4, 1, 1, 1);
        assert_eq!(kt.get(4, 1, 1), BigInt::from(45));
        assert_eq!(kt.t_row(4), ints(&[75, 92, 25, 1]));
    }
}
