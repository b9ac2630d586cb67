use num_bigint::BigInt;

use super::{require_tables, Checker, VerificationReport};
use crate::error::Result;
use crate::tables::KTables;

/// Weakly increasing then weakly decreasing.
pub fn is_unimodal(seq: &[BigInt]) -> bool {
    let peak = seq.windows(2).take_while(|w| w[0] <= w[1]).count();
    seq[peak..].windows(2).all(|w| w[0] >= w[1])
}

fn show(seq: &[BigInt]) -> String {
    let parts: Vec<String> = seq.iter().map(BigInt::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Unimodality of the rows and columns of `T` and of every `K(n,·,·)` slice,
/// `1 ≤ n ≤ n_max`.
pub fn unimodality_scan(tables: &KTables, n_max: usize) -> Result<VerificationReport> {
    require_tables(tables.n_max(), n_max)?;
    let mut c = Checker::new("unimodality").range("n", format!("1..={n_max}"));
    let mut visit = |label: String, seq: Vec<BigInt>| {
        if !is_unimodal(&seq) {
            c.fail(label, "unimodal".into(), show(&seq));
        } else {
            c.check(String::new, &true, &true);
        }
    };
    let rows: Vec<Vec<BigInt>> = (0..=n_max).map(|n| tables.t_row(n)).collect();
    for n in 1..=n_max {
        visit(format!("T row n={n}"), rows[n].clone());
    }
    for k in 0..n_max {
        let column = (k + 1..=n_max).map(|n| rows[n][k].clone()).collect();
        visit(format!("T column k={k}"), column);
    }
    for n in 1..=n_max {
        let slice = tables.slice(n).expect("checked above");
        for j in 0..n {
            visit(format!("K row n={n}, j={j}"), slice.row(j));
        }
        for i in 0..n {
            visit(format!("K column n={n}, i={i}"), slice.column(i));
        }
    }
    Ok(c.finish())
}
