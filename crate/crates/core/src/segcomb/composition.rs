use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{lex_subsets, tokenize, write_tokens};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Separator {
    Comma,
    Bar,
}

/// The three ways of gluing two segmented compositions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConcatMode {
    /// `I·K`: a comma between the last part of `I` and the first of `K`.
    Comma,
    /// `I|K`: a bar between them.
    Bar,
    /// `I▷K`: the last part of `I` and the first part of `K` are added.
    Join,
}

/// A composition of `n` whose adjacent parts are separated by commas or bars.
///
/// Stored as `(parts, seps)` with `seps.len() == parts.len() - 1`. The
/// equivalent `(Des, Bar)` pair of subsets of `1..n` is computed on demand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SegmentedComposition {
    parts: Vec<usize>,
    seps: Vec<Separator>,
}

impl SegmentedComposition {
    pub fn new(parts: Vec<usize>, seps: Vec<Separator>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("no parts".into()));
        }
        if seps.len() + 1 != parts.len() {
            return Err(Error::InvalidComposition(format!(
                "{} parts need {} separators, got {}",
                parts.len(),
                parts.len() - 1,
                seps.len()
            )));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidComposition("parts must be positive".into()));
        }
        Ok(Self { parts, seps })
    }

    /// The one-part composition `(n)`.
    pub fn single(n: usize) -> Result<Self> {
        Self::new(vec![n], Vec::new())
    }

    /// Rebuilds a composition of `n` from its descent and bar sets.
    pub fn from_sets(n: usize, des: &BTreeSet<usize>, bars: &BTreeSet<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidComposition("n must be positive".into()));
        }
        for &p in des.iter().chain(bars) {
            if p == 0 || p >= n {
                return Err(Error::OutOfRange {
                    position: p,
                    max: n - 1,
                });
            }
        }
        if let Some(&p) = des.intersection(bars).next() {
            return Err(Error::OverlappingSets(p));
        }
        Ok(Self::from_sets_unchecked(n, des.iter().copied(), |p| {
            bars.contains(&p)
        }))
    }

    fn from_sets_unchecked(
        n: usize,
        des: impl Iterator<Item = usize>,
        is_bar: impl Fn(usize) -> bool,
    ) -> Self {
        let mut cuts: Vec<usize> = des.collect();
        cuts.extend((1..n).filter(|&p| is_bar(p)));
        cuts.sort_unstable();
        let mut parts = Vec::with_capacity(cuts.len() + 1);
        let mut seps = Vec::with_capacity(cuts.len());
        let mut last = 0;
        for &c in &cuts {
            parts.push(c - last);
            seps.push(if is_bar(c) {
                Separator::Bar
            } else {
                Separator::Comma
            });
            last = c;
        }
        parts.push(n - last);
        Self { parts, seps }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn seps(&self) -> &[Separator] {
        &self.seps
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, `ℓ(I)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn seg(&self) -> usize {
        self.seps.iter().filter(|&&s| s == Separator::Bar).count()
    }

    /// Number of parts not followed by a bar (the last part counts).
    pub fn des(&self) -> usize {
        self.len() - self.seg()
    }

    fn prefix_sums_where(&self, wanted: Separator) -> BTreeSet<usize> {
        let mut acc = 0;
        let mut out = BTreeSet::new();
        for (part, &sep) in self.parts.iter().zip(&self.seps) {
            acc += part;
            if sep == wanted {
                out.insert(acc);
            }
        }
        out
    }

    pub fn descent_set(&self) -> BTreeSet<usize> {
        self.prefix_sums_where(Separator::Comma)
    }

    pub fn bar_set(&self) -> BTreeSet<usize> {
        self.prefix_sums_where(Separator::Bar)
    }

    /// `(Des(I), Bar(I))`.
    pub fn sets(&self) -> (BTreeSet<usize>, BTreeSet<usize>) {
        (self.descent_set(), self.bar_set())
    }

    pub fn concat(&self, other: &Self, mode: ConcatMode) -> Self {
        let mut parts = self.parts.clone();
        let mut seps = self.seps.clone();
        match mode {
            ConcatMode::Comma | ConcatMode::Bar => {
                seps.push(if mode == ConcatMode::Comma {
                    Separator::Comma
                } else {
                    Separator::Bar
                });
                parts.extend_from_slice(&other.parts);
            }
            ConcatMode::Join => {
                *parts.last_mut().expect("non-empty") += other.parts[0];
                parts.extend_from_slice(&other.parts[1..]);
            }
        }
        seps.extend_from_slice(&other.seps);
        Self { parts, seps }
    }

    /// Reverse refinement order: `self ⪰ other`.
    pub fn is_finer(&self, other: &Self) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let (des_i, bar_i) = self.sets();
        let (des_k, bar_k) = other.sets();
        des_i.is_superset(&des_k)
            && bar_i.is_subset(&bar_k)
            && bar_k.iter().all(|p| des_i.contains(p) || bar_i.contains(p))
    }

    /// Every `K` with `self ⪰ K`, paired with `des(self) - des(K)`.
    ///
    /// Each descent of `self` independently stays a descent, becomes a bar,
    /// or is erased, so there are `3^|Des|` results.
    pub fn coarsenings(&self) -> Vec<(Self, usize)> {
        let n = self.n();
        let (des, bars) = self.sets();
        let des: Vec<usize> = des.into_iter().collect();
        let mut out = Vec::with_capacity(3usize.pow(des.len() as u32));
        // choice per descent: 0 keep, 1 bar, 2 erase
        let mut choice = vec![0u8; des.len()];
        loop {
            let kept = des
                .iter()
                .zip(&choice)
                .filter(|(_, &c)| c == 0)
                .map(|(&d, _)| d);
            let extra_bars: BTreeSet<usize> = des
                .iter()
                .zip(&choice)
                .filter(|(_, &c)| c == 1)
                .map(|(&d, _)| d)
                .collect();
            let k = Self::from_sets_unchecked(n, kept, |p| {
                bars.contains(&p) || extra_bars.contains(&p)
            });
            out.push((k, choice.iter().filter(|&&c| c != 0).count()));
            let mut idx = 0;
            loop {
                if idx == choice.len() {
                    return out;
                }
                choice[idx] += 1;
                if choice[idx] < 3 {
                    break;
                }
                choice[idx] = 0;
                idx += 1;
            }
        }
    }
}

impl Ord for SegmentedComposition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n()
            .cmp(&other.n())
            .then_with(|| self.parts.cmp(&other.parts))
            .then_with(|| self.seps.cmp(&other.seps))
    }
}

impl PartialOrd for SegmentedComposition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SegmentedComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, &self.parts, |idx| self.seps[idx - 1])
    }
}

impl FromStr for SegmentedComposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (parts, seps) = tokenize(s)?;
        Self::new(parts, seps).map_err(|e| Error::Parse {
            input: s.to_string(),
            reason: e.to_string(),
        })
    }
}

/// All segmented compositions of `n`, ordered lexicographically by
/// `(Des, Bar)`. There are `3^(n-1)` of them; `n = 0` yields nothing.
pub fn enumerate_compositions(n: usize) -> impl Iterator<Item = SegmentedComposition> {
    let positions: Vec<usize> = (1..n).collect();
    let descent_sets = if n == 0 {
        Vec::new()
    } else {
        lex_subsets(&positions)
    };
    descent_sets.into_iter().flat_map(move |des| {
        let rest: Vec<usize> = positions
            .iter()
            .copied()
            .filter(|p| !des.contains(p))
            .collect();
        lex_subsets(&rest).into_iter().map(move |bars| {
            SegmentedComposition::from_sets_unchecked(n, des.iter().copied(), |p| {
                bars.binary_search(&p).is_ok()
            })
        })
    })
}
