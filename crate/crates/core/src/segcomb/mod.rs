//! Segmented compositions and segmented permutations.
//!
//! Positions are 1-indexed: a descent or bar at position `i` sits between
//! the `i`-th and `(i+1)`-th part (or letter). Text form is
//! `part (("," | "|") part)*`, e.g. `2,1|2|3,1` or `3|7,1,5,6|2,4`.

mod composition;
mod permutation;

pub use composition::{enumerate_compositions, ConcatMode, SegmentedComposition, Separator};
pub use permutation::{
    convolution, enumerate_permutations, standardize, LexPermutations, SegmentedPermutation,
};

use crate::error::{Error, Result};

/// Splits `text` into decimal values and the separators between them.
/// ASCII spaces are ignored.
pub(crate) fn tokenize(text: &str) -> Result<(Vec<usize>, Vec<Separator>)> {
    let fail = |reason: &str| Error::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let mut values = Vec::new();
    let mut seps = Vec::new();
    let mut current: Option<usize> = None;
    for c in text.chars().filter(|&c| c != ' ') {
        match c {
            '0'..='9' => {
                let digit = c as usize - '0' as usize;
                let v = current.unwrap_or(0);
                current = Some(
                    v.checked_mul(10)
                        .and_then(|v| v.checked_add(digit))
                        .ok_or_else(|| fail("value overflows"))?,
                );
            }
            ',' | '|' => {
                let v = current
                    .take()
                    .ok_or_else(|| fail("separator without a value before it"))?;
                values.push(v);
                seps.push(if c == ',' {
                    Separator::Comma
                } else {
                    Separator::Bar
                });
            }
            other => return Err(fail(&format!("unexpected character {other:?}"))),
        }
    }
    match current {
        Some(v) => values.push(v),
        None if values.is_empty() => return Err(fail("empty input")),
        None => return Err(fail("trailing separator")),
    }
    Ok((values, seps))
}

/// All subsets of `elements` (assumed sorted), in lexicographic order of
/// their sorted element lists: `[]`, `[a]`, `[a, b]`, ...
pub(crate) fn lex_subsets(elements: &[usize]) -> Vec<Vec<usize>> {
    fn walk(elements: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(prefix.clone());
        for (idx, &e) in elements.iter().enumerate() {
            prefix.push(e);
            walk(&elements[idx + 1..], prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(1 << elements.len().min(20));
    walk(elements, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn write_tokens(
    f: &mut std::fmt::Formatter<'_>,
    values: &[usize],
    mut sep_at: impl FnMut(usize) -> Separator,
) -> std::fmt::Result {
    for (idx, v) in values.iter().enumerate() {
        if idx > 0 {
            match sep_at(idx) {
                Separator::Comma => f.write_str(",")?,
                Separator::Bar => f.write_str("|")?,
            }
        }
        write!(f, "{v}")?;
    }
    Ok(())
}
