use num_bigint::BigInt;
use segeuler::segcomb::LexPermutations;
use segeuler::tables::{
    binomial, eulerian, factorial, k_table, k_table_with_cap, ordered_bell, segmented_count,
    stirling2, t_recurrence_rows, t_table, Method,
};
use segeuler::{Error, KTables};

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn row(values: &[u64]) -> Vec<BigInt> {
    values.iter().map(|&v| big(v)).collect()
}

#[test]
fn t_triangle_values() {
    let expected: [&[u64]; 7] = [
        &[1],
        &[1],
        &[3, 1],
        &[13, 10, 1],
        &[75, 91, 25, 1],
        &[541, 896, 426, 56, 1],
        &[4683, 9829, 6734, 1674, 119, 1],
    ];
    let rows = t_recurrence_rows(6);
    let mut entries = 0;
    for (n, want) in expected.iter().enumerate() {
        assert_eq!(rows[n], row(want), "n={n}");
        entries += want.len();
    }
    assert_eq!(entries, 22);
    for n in 1..=6 {
        let by_sum = t_table(n, Method::Sum).unwrap();
        let by_rec = t_table(n, Method::RecurrenceN).unwrap();
        assert_eq!(by_sum.entries, by_rec.entries);
    }
}

#[test]
fn k_slice_values() {
    let expected: [(usize, usize, usize, u64); 19] = [
        (2, 0, 0, 1),
        (2, 1, 0, 1),
        (2, 0, 1, 2),
        (3, 0, 0, 1),
        (3, 1, 0, 4),
        (3, 2, 0, 1),
        (3, 0, 1, 6),
        (3, 1, 1, 6),
        (3, 0, 2, 6),
        (4, 0, 0, 1),
        (4, 1, 0, 11),
        (4, 2, 0, 11),
        (4, 3, 0, 1),
        (4, 0, 1, 14),
        (4, 1, 1, 44),
        (4, 2, 1, 14),
        (4, 0, 2, 36),
        (4, 1, 2, 36),
        (4, 0, 3, 24),
    ];
    for method in [
        Method::RecurrenceN,
        Method::RecurrenceJ,
        Method::ClosedForm,
        Method::Enumerate,
    ] {
        let tables = KTables::by_method(4, method, 9).unwrap();
        for &(n, i, j, v) in &expected {
            assert_eq!(tables.get(n, i, j), big(v), "{method} K({n},{i},{j})");
        }
        for n in 2..=4 {
            let nonzero = tables
                .slice(n)
                .unwrap()
                .entries
                .values()
                .filter(|v| **v != big(0))
                .count();
            assert_eq!(nonzero, n * (n + 1) / 2);
        }
    }
}

#[test]
fn all_methods_agree_up_to_nine() {
    for n in 1..=9 {
        let reference = k_table(n, Method::RecurrenceN).unwrap().entries;
        for method in [Method::RecurrenceJ, Method::ClosedForm, Method::Enumerate] {
            assert_eq!(
                k_table(n, method).unwrap().entries,
                reference,
                "{method} n={n}"
            );
        }
    }
}

#[test]
fn recurrences_and_closed_form_agree_up_to_fourteen() {
    let tables = KTables::by_recurrence(14);
    for n in 1..=14 {
        let reference = &tables.slice(n).unwrap().entries;
        assert_eq!(
            &k_table(n, Method::RecurrenceJ).unwrap().entries,
            reference,
            "n={n}"
        );
        assert_eq!(
            &k_table(n, Method::ClosedForm).unwrap().entries,
            reference,
            "n={n}"
        );
    }
}

#[test]
fn enumeration_respects_the_cap() {
    match k_table_with_cap(7, Method::Enumerate, 6) {
        Err(Error::OracleCapExceeded { n: 7, cap: 6 }) => {}
        other => panic!("unexpected {other:?}"),
    }
    assert!(k_table_with_cap(6, Method::Enumerate, 6).is_ok());
}

#[test]
fn slice_invariants_up_to_twelve() {
    let tables = KTables::by_recurrence(12);
    for n in 1..=12 {
        let slice = tables.slice(n).unwrap();
        assert_eq!(slice.total(), segmented_count(n));
        let t: BigInt = tables.t_row(n).iter().sum();
        assert_eq!(t, segmented_count(n));
        for (&(i, j), v) in &slice.entries {
            assert!(i + j < n && *v > big(0), "K({n},{i},{j}) = {v}");
            assert_eq!(*v, tables.get(n, n - 1 - i - j, j), "mirror K({n},{i},{j})");
            assert_eq!(v % factorial(j + 1), big(0), "K({n},{i},{j})");
        }
        for j in 0..n {
            assert_eq!(tables.get(n, 0, j), factorial(j + 1) * stirling2(n, j + 1));
        }
    }
}

#[test]
fn printed_mirror_index_disagrees_with_the_table() {
    let tables = KTables::by_recurrence(3);
    // K(3,0,1) = 6 while K(3, 3-0-1, 1) = K(3,2,1) lies outside the slice.
    assert_eq!(tables.get(3, 0, 1), big(6));
    assert_eq!(tables.get(3, 2, 1), big(0));
    assert_eq!(tables.get(3, 1, 1), big(6));
}

#[test]
fn twenty_overflows_sixty_four_bits() {
    let rows = t_recurrence_rows(20);
    assert!(rows[20].iter().any(|v| *v > big(u64::MAX)));
    let total: BigInt = rows[20].iter().sum();
    assert_eq!(total, segmented_count(20));
}

fn descents(word: &[usize]) -> usize {
    word.windows(2).filter(|w| w[0] > w[1]).count()
}

#[test]
fn eulerian_against_descent_counts() {
    assert_eq!(eulerian(4, 1), big(11));
    assert_eq!(eulerian(6, 2), big(302));
    for n in 1..=7 {
        let mut counts = vec![0u64; n];
        let mut perms = LexPermutations::new(n);
        while let Some(w) = perms.next_slice() {
            counts[descents(w)] += 1;
        }
        for (k, &c) in counts.iter().enumerate() {
            assert_eq!(eulerian(n, k), big(c), "A({n},{k})");
        }
        assert_eq!(eulerian(n, n + 3), big(0));
        assert_eq!(eulerian(n, 0), big(1));
    }
}

/// Set partitions of `{1..n}` counted by restricted growth strings.
fn set_partitions(n: usize) -> Vec<u64> {
    fn walk(pos: usize, n: usize, max: usize, counts: &mut [u64]) {
        if pos == n {
            counts[max] += 1;
            return;
        }
        for b in 0..=max {
            walk(pos + 1, n, max.max(b + 1), counts);
        }
    }
    let mut counts = vec![0; n + 1];
    if n == 0 {
        counts[0] = 1;
    } else {
        walk(1, n, 1, &mut counts);
    }
    counts
}

#[test]
fn stirling_against_set_partitions() {
    assert_eq!(stirling2(4, 2), big(7));
    for n in 0..=8 {
        for (k, &c) in set_partitions(n).iter().enumerate() {
            assert_eq!(stirling2(n, k), big(c), "S({n},{k})");
        }
        assert_eq!(stirling2(n, n), big(1));
    }
    assert_eq!(
        factorial(2) * stirling2(4, 2),
        k_table(4, Method::RecurrenceN).unwrap().get((0, 1))
    );
}

#[test]
fn ordered_bell_numbers() {
    let mut fubini = vec![big(1)];
    for n in 1..=12 {
        let next: BigInt = (1..=n)
            .map(|k| binomial(n as i64, k as i64) * &fubini[n - k])
            .sum();
        fubini.push(next);
    }
    let rows = t_recurrence_rows(12);
    for n in 0..=12 {
        assert_eq!(ordered_bell(n), fubini[n], "n={n}");
        assert_eq!(rows[n][0], fubini[n]);
    }
    assert_eq!(ordered_bell(7), big(47293));
    let a2_at_2: BigInt = (0..2)
        .map(|k| eulerian(2, k) * BigInt::from(2u32).pow(k as u32))
        .sum();
    assert_eq!(ordered_bell(2), a2_at_2);
    let des_zero = segeuler::segcomb::enumerate_permutations(7, None)
        .filter(|s| s.des() == 0)
        .count();
    assert_eq!(big(des_zero as u64), big(47293));
}

#[test]
fn recurrence_j_examples() {
    let k3 = k_table(3, Method::RecurrenceJ).unwrap();
    assert_eq!(k3.get((0, 1)), big(2) * k3.get((0, 0)) + k3.get((1, 0)));
    let t3 = t_recurrence_rows(3);
    assert_eq!(t3[3][1], big(2) * &t3[2][0] + big(4) * &t3[2][1]);
    let k4 = k_table(4, Method::RecurrenceN).unwrap();
    assert_eq!(k4.descent_total(1), big(91));
}
