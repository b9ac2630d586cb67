use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::{lex_subsets, tokenize, write_tokens, SegmentedComposition, Separator};
use crate::error::{Error, Result};

/// A permutation of `1..=n` with bars between some adjacent letters.
/// A bar at position `i` sits between `word[i]` and `word[i+1]` (1-indexed).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SegmentedPermutation {
    word: Vec<usize>,
    bars: BTreeSet<usize>,
}

impl SegmentedPermutation {
    pub fn new(word: Vec<usize>, bars: BTreeSet<usize>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty word".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{word:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        if let Some(&p) = bars.iter().find(|&&p| p == 0 || p >= n) {
            return Err(Error::OutOfRange {
                position: p,
                max: n - 1,
            });
        }
        Ok(Self { word, bars })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((1..=n).collect(), BTreeSet::new())
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn bars(&self) -> &BTreeSet<usize> {
        &self.bars
    }

    /// Unbarred positions `i` with `word[i] > word[i+1]`.
    pub fn descent_set(&self) -> BTreeSet<usize> {
        (1..self.n())
            .filter(|p| !self.bars.contains(p) && self.word[p - 1] > self.word[*p])
            .collect()
    }

    pub fn des(&self) -> usize {
        self.descent_set().len()
    }

    pub fn seg(&self) -> usize {
        self.bars.len()
    }

    /// The segmented composition of descents, `SCDes(σ)`.
    pub fn scdes(&self) -> SegmentedComposition {
        SegmentedComposition::from_sets(self.n(), &self.descent_set(), &self.bars)
            .expect("descents and bars are disjoint and in range")
    }

    /// Reversed word; a bar at `i` moves to `n - i`.
    pub fn mirror(&self) -> Self {
        let n = self.n();
        Self {
            word: self.word.iter().rev().copied().collect(),
            bars: self.bars.iter().map(|&p| n - p).collect(),
        }
    }

    /// All `σ` of size `I.n()` with `SCDes(σ) = I`, in lexicographic word order.
    pub fn with_scdes(composition: &SegmentedComposition) -> Vec<Self> {
        let n = composition.n();
        let (des, bars) = composition.sets();
        let mut out = Vec::new();
        let mut perms = LexPermutations::new(n);
        while let Some(w) = perms.next_slice() {
            let matches = (1..n)
                .filter(|p| !bars.contains(p))
                .all(|p| (w[p - 1] > w[p]) == des.contains(&p));
            if matches {
                out.push(Self {
                    word: w.to_vec(),
                    bars: bars.clone(),
                });
            }
        }
        out
    }
}

impl Ord for SegmentedPermutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n()
            .cmp(&other.n())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.bars.cmp(&other.bars))
    }
}

impl PartialOrd for SegmentedPermutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SegmentedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, &self.word, |idx| {
            if self.bars.contains(&idx) {
                Separator::Bar
            } else {
                Separator::Comma
            }
        })
    }
}

impl FromStr for SegmentedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (word, seps) = tokenize(s)?;
        let bars = seps
            .iter()
            .enumerate()
            .filter(|(_, &sep)| sep == Separator::Bar)
            .map(|(idx, _)| idx + 1)
            .collect();
        Self::new(word, bars).map_err(|e| Error::Parse {
            input: s.to_string(),
            reason: e.to_string(),
        })
    }
}

/// Standardizes a word, keeping its bars: equal letters are numbered left to right.
pub fn standardize(word: &[usize], bars: &BTreeSet<usize>) -> Result<SegmentedPermutation> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by_key(|&idx| (word[idx], idx));
    let mut std = vec![0; word.len()];
    for (rank, idx) in order.into_iter().enumerate() {
        std[idx] = rank + 1;
    }
    SegmentedPermutation::new(std, bars.clone())
}

/// `σ * τ`: every segmented permutation of size `n + r` whose first `n`
/// letters standardize to `σ` and last `r` letters to `τ`. The boundary
/// position `n` may or may not carry a bar, so the result has
/// `2·C(n+r, n)` elements.
pub fn convolution(
    sigma: &SegmentedPermutation,
    tau: &SegmentedPermutation,
) -> Vec<SegmentedPermutation> {
    let (n, r) = (sigma.n(), tau.n());
    let total = n + r;
    let mut out = Vec::new();
    for_each_combination(total, n, &mut |chosen: &[usize]| {
        let rest: Vec<usize> = (1..=total)
            .filter(|v| chosen.binary_search(v).is_err())
            .collect();
        let word: Vec<usize> = sigma
            .word
            .iter()
            .map(|&v| chosen[v - 1])
            .chain(tau.word.iter().map(|&v| rest[v - 1]))
            .collect();
        let bars: BTreeSet<usize> = sigma
            .bars
            .iter()
            .copied()
            .chain(tau.bars.iter().map(|&p| p + n))
            .collect();
        let mut with_bar = bars.clone();
        with_bar.insert(n);
        out.push(SegmentedPermutation {
            word: word.clone(),
            bars,
        });
        out.push(SegmentedPermutation {
            word,
            bars: with_bar,
        });
    });
    out
}

/// Calls `f` on every `k`-subset of `1..=n` in lexicographic order.
fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn walk(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if acc.len() == k {
            f(acc);
            return;
        }
        let need = k - acc.len();
        for v in start..=n + 1 - need {
            acc.push(v);
            walk(v + 1, n, k, acc, f);
            acc.pop();
        }
    }
    walk(1, n, k, &mut Vec::with_capacity(k), f);
}

/// Permutations of `1..=n` in lexicographic order.
///
/// [`LexPermutations::next_slice`] walks them without allocating; the
/// `Iterator` impl clones each word.
#[derive(Clone, Debug)]
pub struct LexPermutations {
    word: Vec<usize>,
    started: bool,
    done: bool,
}

impl LexPermutations {
    pub fn new(n: usize) -> Self {
        Self {
            word: (1..=n).collect(),
            started: false,
            done: n == 0,
        }
    }

    pub fn next_slice(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.word);
        }
        let w = &mut self.word;
        let Some(pivot) = (1..w.len()).rev().find(|&i| w[i - 1] < w[i]).map(|i| i - 1) else {
            self.done = true;
            return None;
        };
        let succ = (pivot + 1..w.len())
            .rev()
            .find(|&j| w[j] > w[pivot])
            .expect("pivot has a successor");
        w.swap(pivot, succ);
        w[pivot + 1..].reverse();
        Some(&self.word)
    }
}

impl Iterator for LexPermutations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.next_slice().map(<[usize]>::to_vec)
    }
}

/// All segmented permutations of size `n`, by lexicographic word and then
/// lexicographic bar set, optionally restricted to `(des, seg) = filter`.
pub fn enumerate_permutations(
    n: usize,
    filter: Option<(usize, usize)>,
) -> impl Iterator<Item = SegmentedPermutation> {
    let positions: Vec<usize> = (1..n).collect();
    let bar_sets: Arc<Vec<BTreeSet<usize>>> = Arc::new(
        lex_subsets(&positions)
            .into_iter()
            .map(|s| s.into_iter().collect())
            .filter(|s: &BTreeSet<usize>| filter.is_none_or(|(_, seg)| s.len() == seg))
            .collect(),
    );
    LexPermutations::new(n).flat_map(move |word| {
        let bar_sets = Arc::clone(&bar_sets);
        (0..bar_sets.len()).filter_map(move |idx| {
            let sp = SegmentedPermutation {
                word: word.clone(),
                bars: bar_sets[idx].clone(),
            };
            match filter {
                Some((des, _)) if sp.des() != des => None,
                _ => Some(sp),
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SegmentedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_format() {
        let s = p("3|7,1,5,6|2,4");
        assert_eq!(s.word(), &[3, 7, 1, 5, 6, 2, 4]);
        assert_eq!(s.bars().iter().copied().collect::<Vec<_>>(), vec![1, 5]);
        assert_eq!(s.to_string(), "3|7,1,5,6|2,4");
        assert!("1,1".parse::<SegmentedPermutation>().is_err());
        assert!("1,3".parse::<SegmentedPermutation>().is_err());
        assert!(SegmentedPermutation::new(vec![1, 2], [2].into()).is_err());
    }

    #[test]
    fn statistics_and_scdes() {
        let s = p("3|7,1,5,6|2,4");
        assert_eq!((s.des(), s.seg()), (1, 2));
        assert_eq!(s.scdes().to_string(), "1|1,3|2");
        let id = SegmentedPermutation::identity(5).unwrap();
        assert_eq!((id.des(), id.seg()), (0, 0));
        assert_eq!(id.scdes().to_string(), "5");
        let s = p("2|1");
        assert_eq!((s.des(), s.seg()), (0, 1));
        assert_eq!(s.scdes().to_string(), "1|1");
    }

    #[test]
    fn standardization() {
        let bars: BTreeSet<usize> = [2, 6].into();
        assert_eq!(
            standardize(&[4, 1, 2, 1, 1, 6, 4], &bars)
                .unwrap()
                .to_string(),
            "5,1|4,2,3,7|6"
        );
        assert_eq!(
            standardize(&[9, 9, 9], &BTreeSet::new())
                .unwrap()
                .to_string(),
            "1,2,3"
        );
        let s = p("3|7,1,5,6|2,4");
        assert_eq!(standardize(s.word(), s.bars()).unwrap(), s);
    }

    #[test]
    fn mirror_example() {
        let s = p("3|7,1,5,6|2,4");
        assert_eq!(s.mirror().to_string(), "4,2|6,5,1,7|3");
        assert_eq!(s.mirror().mirror(), s);
    }

    #[test]
    fn convolution_examples() {
        let conv = convolution(&p("2|1,3"), &p("1,2"));
        assert_eq!(conv.len(), 20);
        let texts: BTreeSet<String> = conv.iter().map(|m| m.to_string()).collect();
        for expected in [
            "2|1,3,4,5",
            "2|1,3|4,5",
            "2|1,4,3,5",
            "2|1,4|3,5",
            "4|3,5,1,2",
            "4|3,5|1,2",
        ] {
            assert!(texts.contains(expected), "missing {expected}");
        }
        let one = p("1");
        let texts: Vec<String> = convolution(&one, &one)
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(texts, vec!["1,2", "1|2", "2,1", "2|1"]);
    }

    #[test]
    fn lex_permutations() {
        let all: Vec<Vec<usize>> = LexPermutations::new(3).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![1, 2, 3]);
        assert_eq!(all[5], vec![3, 2, 1]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(LexPermutations::new(0).count(), 0);
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_permutations(3, None).count(), 24);
        assert_eq!(enumerate_permutations(3, Some((0, 1))).count(), 6);
        let one: Vec<String> = enumerate_permutations(1, None)
            .map(|s| s.to_string())
            .collect();
        assert_eq!(one, vec!["1"]);
        let two: Vec<String> = enumerate_permutations(2, None)
            .map(|s| s.to_string())
            .collect();
        assert_eq!(two, vec!["1,2", "1|2", "2,1", "2|1"]);
        assert_eq!(enumerate_permutations(0, None).count(), 0);
    }

    #[test]
    fn with_scdes_partitions_sp_n() {
        let comp: SegmentedComposition = "2|1,1".parse().unwrap();
        let texts: Vec<String> = SegmentedPermutation::with_scdes(&comp)
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(
            texts,
            vec!["1,2|4,3", "1,3|4,2", "1,4|3,2", "2,3|4,1", "2,4|3,1", "3,4|2,1"]
        );
    }
}
