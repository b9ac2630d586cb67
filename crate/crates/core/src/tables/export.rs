use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{Map, Value};

use super::KSlice;
use crate::error::{Error, Result};

/// A table entry: index tuple and value, e.g. `([n, k], T(n,k))`.
pub type Entry = (Vec<usize>, BigInt);

pub fn t_entries(rows: &[Vec<BigInt>]) -> Vec<Entry> {
    rows.iter()
        .enumerate()
        .flat_map(|(n, row)| {
            row.iter()
                .enumerate()
                .map(move |(k, v)| (vec![n, k], v.clone()))
        })
        .collect()
}

pub fn k_entries(slices: &[KSlice]) -> Vec<Entry> {
    slices
        .iter()
        .flat_map(|s| {
            s.entries
                .iter()
                .map(move |(&(i, j), v)| (vec![s.n, i, j], v.clone()))
        })
        .collect()
}

fn key(ix: &[usize]) -> String {
    ix.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Object keyed by `"n,k"` / `"n,i,j"`; values are JSON integers of any size.
pub fn entries_json(entries: &[Entry]) -> Value {
    let mut map = Map::new();
    for (ix, v) in entries {
        let num = v
            .to_string()
            .parse()
            .expect("integers are valid JSON numbers");
        map.insert(key(ix), Value::Number(num));
    }
    Value::Object(map)
}

pub fn parse_entries_json(value: &Value) -> Result<Vec<Entry>> {
    let bad = |reason: String| Error::Parse {
        input: value.to_string(),
        reason,
    };
    let map = value
        .as_object()
        .ok_or_else(|| bad("expected an object".into()))?;
    let mut out = Vec::with_capacity(map.len());
    for (k, v) in map {
        let ix = k
            .split(',')
            .map(|p| p.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| bad(format!("key {k:?}: {e}")))?;
        let n = v
            .as_number()
            .ok_or_else(|| bad(format!("value of {k:?} is not a number")))?;
        let n: BigInt = n
            .to_string()
            .parse()
            .map_err(|e| bad(format!("value of {k:?}: {e}")))?;
        out.push((ix, n));
    }
    out.sort();
    Ok(out)
}

/// One CSV row per entry under `header` (index columns then `value`).
pub fn entries_csv(header: &[&str], entries: &[Entry]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidParameter(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for (ix, v) in entries {
        let mut rec: Vec<String> = ix.iter().map(usize::to_string).collect();
        rec.push(v.to_string());
        w.write_record(&rec).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// OEIS b-file: one `"index value"` line per term. Indices start at
/// `offset` when given, otherwise the natural index of each term is used.
pub fn bfile(terms: &[(usize, BigInt)], offset: Option<usize>) -> String {
    let mut out = String::new();
    for (pos, (natural, v)) in terms.iter().enumerate() {
        let idx = offset.map_or(*natural, |o| o + pos);
        writeln!(out, "{idx} {v}").unwrap();
    }
    out
}

/// Triangle rows `0..` laid out as a LaTeX array with `n\backslash r` header.
pub fn t_latex(rows: &[Vec<BigInt>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(1);
    let mut out = String::new();
    writeln!(out, "\\begin{{array}}{{r|{}}}", "c".repeat(width)).unwrap();
    let head: Vec<String> = (0..width).map(|k| k.to_string()).collect();
    writeln!(out, "  n\\backslash r & {} \\\\ \\hline", head.join(" & ")).unwrap();
    for (n, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(BigInt::to_string).collect();
        writeln!(out, "  {n} & {} \\\\", cells.join(" & ")).unwrap();
    }
    out.push_str("\\end{array}\n");
    out
}

/// A `K(n,·,·)` slice with `i` along columns and `j` along rows.
pub fn k_latex(slice: &KSlice) -> String {
    let n = slice.n.max(1);
    let mut out = String::new();
    writeln!(
        out,
        "n={}:~\\begin{{array}}{{r|{}}}",
        slice.n,
        "c".repeat(n)
    )
    .unwrap();
    let head: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    writeln!(out, "  j\\backslash i & {} \\\\ \\hline", head.join(" & ")).unwrap();
    for j in 0..n {
        let cells: Vec<String> = slice.row(j).iter().map(BigInt::to_string).collect();
        let cells = if slice.n == 0 {
            vec!["1".to_string()]
        } else {
            cells
        };
        writeln!(out, "  {j} & {} \\\\", cells.join(" & ")).unwrap();
    }
    out.push_str("\\end{array}\n");
    out
}

fn aligned(rows: &[(String, Vec<String>)], header: (&str, Vec<String>)) -> String {
    let cols = header.1.len();
    let mut widths = vec![0; cols];
    let label_w = rows
        .iter()
        .map(|r| r.0.len())
        .chain([header.0.len()])
        .max()
        .unwrap_or(0);
    for (_, cells) in rows.iter().chain([&(String::new(), header.1.clone())]) {
        for (c, cell) in cells.iter().enumerate() {
            widths[c] = widths[c].max(cell.len());
        }
    }
    let mut out = String::new();
    let render = |label: &str, cells: &[String]| {
        let body: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:>w$}", w = widths[c]))
            .collect();
        format!("{label:>label_w$} | {}", body.join(" "))
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", render(header.0, &header.1)).unwrap();
    for (label, cells) in rows {
        writeln!(out, "{}", render(label, cells)).unwrap();
    }
    out
}

/// Plain-text triangle, one row per `n`.
pub fn t_text(rows: &[Vec<BigInt>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(1);
    let body: Vec<(String, Vec<String>)> = rows
        .iter()
        .enumerate()
        .map(|(n, row)| (n.to_string(), row.iter().map(BigInt::to_string).collect()))
        .collect();
    aligned(&body, ("n\\k", (0..width).map(|k| k.to_string()).collect()))
}

pub fn k_text(slice: &KSlice) -> String {
    let n = slice.n.max(1);
    let body: Vec<(String, Vec<String>)> = (0..n)
        .map(|j| {
            let cells = if slice.n == 0 {
                vec!["1".into()]
            } else {
                slice.row(j).iter().map(BigInt::to_string).collect()
            };
            (j.to_string(), cells)
        })
        .collect();
    format!(
        "n={}\n{}",
        slice.n,
        aligned(&body, ("j\\i", (0..n).map(|i| i.to_string()).collect()))
    )
}
