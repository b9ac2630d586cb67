//! The algebra of segmented compositions (ribbon basis `R`, complete basis
//! `S`) and its embedding into the algebra of segmented permutations
//! (basis `G`).
//!
//! Products:
//! - `R_I · R_K = R_{I·K} + R_{I|K} + R_{I▷K}`
//! - `S^I · S^K = S^{I·K}`
//! - `G_σ · G_τ = Σ_{μ ∈ σ*τ} G_μ`
//!
//! Basis changes: `S^I = Σ_{I⪰K} R_K`, `R_I = Σ_{I⪰K} (-1)^{des(I)-des(K)} S^K`
//! and `R_I = Σ_{SCDes(σ)=I} G_σ`. There is no map back from `G`.
//!
//! Coefficients are [`BiPoly`]s; elements of different degrees may be mixed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::polyring::{linear, BiPoly};
use crate::segcomb::{
    convolution, enumerate_compositions, ConcatMode, LexPermutations, SegmentedComposition,
    SegmentedPermutation,
};
use crate::tables::segmented_count;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// Ribbon basis `R_I`.
    R,
    /// Complete basis `S^I`.
    S,
    /// Permutation basis `G_σ`.
    G,
}

impl Basis {
    pub fn tag(self) -> char {
        match self {
            Basis::R => 'R',
            Basis::S => 'S',
            Basis::G => 'G',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisIndex {
    Comp(SegmentedComposition),
    Perm(SegmentedPermutation),
}

impl BasisIndex {
    pub fn n(&self) -> usize {
        match self {
            BasisIndex::Comp(c) => c.n(),
            BasisIndex::Perm(p) => p.n(),
        }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisIndex::Comp(c) => c.fmt(f),
            BasisIndex::Perm(p) => p.fmt(f),
        }
    }
}

impl From<SegmentedComposition> for BasisIndex {
    fn from(c: SegmentedComposition) -> Self {
        BasisIndex::Comp(c)
    }
}

impl From<SegmentedPermutation> for BasisIndex {
    fn from(p: SegmentedPermutation) -> Self {
        BasisIndex::Perm(p)
    }
}

/// A finite linear combination of basis elements of one basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    basis: Basis,
    terms: BTreeMap<BasisIndex, BiPoly>,
}

impl ModuleElement {
    pub fn zero(basis: Basis) -> Self {
        Self {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        basis: Basis,
        terms: impl IntoIterator<Item = (BasisIndex, BiPoly)>,
    ) -> Result<Self> {
        let mut out = Self::zero(basis);
        for (ix, c) in terms {
            out.check_index(&ix)?;
            out.add_term(ix, c);
        }
        Ok(out)
    }

    pub fn basis_element(basis: Basis, index: impl Into<BasisIndex>) -> Result<Self> {
        Self::from_terms(basis, [(index.into(), BiPoly::one())])
    }

    pub fn ribbon(i: SegmentedComposition) -> Self {
        Self::basis_element(Basis::R, i).expect("compositions index R")
    }

    pub fn complete(i: SegmentedComposition) -> Self {
        Self::basis_element(Basis::S, i).expect("compositions index S")
    }

    pub fn g(sigma: SegmentedPermutation) -> Self {
        Self::basis_element(Basis::G, sigma).expect("permutations index G")
    }

    fn check_index(&self, ix: &BasisIndex) -> Result<()> {
        match (self.basis, ix) {
            (Basis::R | Basis::S, BasisIndex::Comp(_)) | (Basis::G, BasisIndex::Perm(_)) => Ok(()),
            (b, BasisIndex::Comp(_)) => Err(Error::WrongIndexKind {
                basis: b.tag(),
                kind: "a composition",
            }),
            (b, BasisIndex::Perm(_)) => Err(Error::WrongIndexKind {
                basis: b.tag(),
                kind: "a permutation",
            }),
        }
    }

    fn add_term(&mut self, ix: BasisIndex, c: BiPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&ix) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&ix);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(ix, c);
            }
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<BasisIndex, BiPoly> {
        &self.terms
    }

    pub fn coeff(&self, ix: &BasisIndex) -> BiPoly {
        self.terms.get(ix).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The homogeneous component supported on indices of size `n`.
    pub fn degree(&self, n: usize) -> Self {
        Self {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .filter(|(ix, _)| ix.n() == n)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.basis != other.basis {
            return Err(Error::MixedBasis {
                left: self.basis.tag(),
                right: other.basis.tag(),
            });
        }
        let mut out = self.clone();
        for (ix, c) in &other.terms {
            out.add_term(ix.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BiPoly) -> Self {
        let mut out = Self::zero(self.basis);
        for (ix, v) in &self.terms {
            out.add_term(ix.clone(), v * c);
        }
        out
    }

    /// `{"basis": "R", "terms": [{"index": "2|1,3", "coeff": {"i,j": c}}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(ix, c)| json!({ "index": ix.to_string(), "coeff": c.to_json() }))
            .collect();
        json!({ "basis": self.basis.tag().to_string(), "terms": terms })
    }

    fn sorted_terms(&self) -> Vec<(&BasisIndex, &BiPoly)> {
        let mut terms: Vec<(String, &BasisIndex, &BiPoly)> = self
            .terms
            .iter()
            .map(|(ix, c)| (ix.to_string(), ix, c))
            .collect();
        terms.sort_by(|a, b| a.1.n().cmp(&b.1.n()).then_with(|| a.0.cmp(&b.0)));
        terms.into_iter().map(|(_, ix, c)| (ix, c)).collect()
    }
}

/// Terms as `coeff * B[index]` joined by ` + `, ordered by size then text.
/// A coefficient of `1` is omitted and a negated monomial becomes ` - `.
impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let tag = self.basis.tag();
        for (idx, (ix, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative_monomial =
                c.len() == 1 && c.terms().values().next().is_some_and(|v| v.is_negative());
            let (sign, mag) = if negative_monomial {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            let coeff = if mag == BiPoly::one() {
                String::new()
            } else if mag.len() == 1 {
                format!("{mag} * ")
            } else {
                format!("({mag}) * ")
            };
            match (idx, sign) {
                (0, "-") => write!(f, "-{coeff}{tag}[{ix}]")?,
                (0, _) => write!(f, "{coeff}{tag}[{ix}]")?,
                (_, s) => write!(f, " {s} {coeff}{tag}[{ix}]")?,
            }
        }
        Ok(())
    }
}

fn comp(ix: &BasisIndex) -> &SegmentedComposition {
    match ix {
        BasisIndex::Comp(c) => c,
        BasisIndex::Perm(_) => unreachable!("basis checked on construction"),
    }
}

fn perm(ix: &BasisIndex) -> &SegmentedPermutation {
    match ix {
        BasisIndex::Perm(p) => p,
        BasisIndex::Comp(_) => unreachable!("basis checked on construction"),
    }
}

/// Bilinear product; both factors must be in the same basis.
pub fn product(a: &ModuleElement, b: &ModuleElement) -> Result<ModuleElement> {
    if a.basis != b.basis {
        return Err(Error::MixedBasis {
            left: a.basis.tag(),
            right: b.basis.tag(),
        });
    }
    let mut out = ModuleElement::zero(a.basis);
    for (x, cx) in &a.terms {
        for (y, cy) in &b.terms {
            let c = cx * cy;
            match a.basis {
                Basis::R => {
                    let (i, k) = (comp(x), comp(y));
                    for mode in [ConcatMode::Comma, ConcatMode::Bar, ConcatMode::Join] {
                        out.add_term(i.concat(k, mode).into(), c.clone());
                    }
                }
                Basis::S => out.add_term(comp(x).concat(comp(y), ConcatMode::Comma).into(), c),
                Basis::G => {
                    for mu in convolution(perm(x), perm(y)) {
                        out.add_term(mu.into(), c.clone());
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Rewrites `a` in the basis `to`. Supported: `S→R`, `R→S`, `R→G`, `S→G`
/// and the identity.
pub fn change_basis(a: &ModuleElement, to: Basis) -> Result<ModuleElement> {
    let mut out = ModuleElement::zero(to);
    match (a.basis, to) {
        (from, to) if from == to => return Ok(a.clone()),
        (Basis::S, Basis::R) => {
            for (ix, c) in &a.terms {
                for (k, _) in comp(ix).coarsenings() {
                    out.add_term(k.into(), c.clone());
                }
            }
        }
        (Basis::R, Basis::S) => {
            for (ix, c) in &a.terms {
                for (k, d) in comp(ix).coarsenings() {
                    out.add_term(k.into(), if d % 2 == 0 { c.clone() } else { -c });
                }
            }
        }
        (Basis::R, Basis::G) => {
            let mut cache: HashMap<SegmentedComposition, Vec<SegmentedPermutation>> =
                HashMap::new();
            for (ix, c) in &a.terms {
                let i = comp(ix);
                let perms = cache
                    .entry(i.clone())
                    .or_insert_with(|| SegmentedPermutation::with_scdes(i));
                for sigma in perms.iter() {
                    out.add_term(sigma.clone().into(), c.clone());
                }
            }
        }
        (Basis::S, Basis::G) => return change_basis(&change_basis(a, Basis::R)?, Basis::G),
        (from, to) => {
            return Err(Error::UnsupportedConversion {
                from: from.tag(),
                to: to.tag(),
            })
        }
    }
    Ok(out)
}

/// Which side of the identity to build in [`nc_eulerian`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    /// `Σ_I t^{des(I)} q^{seg(I)} R_I`
    Ribbon,
    /// `Σ_I t^{des(I)} (1-t)^{n-ℓ(I)} (q-t)^{seg(I)} S^I`
    Complete,
}

/// The noncommutative generalized Eulerian polynomial of degree `n`.
pub fn nc_eulerian(n: usize, form: Form) -> ModuleElement {
    let mut out = ModuleElement::zero(match form {
        Form::Ribbon => Basis::R,
        Form::Complete => Basis::S,
    });
    let one_minus_t = linear(1, -1, 0);
    let q_minus_t = linear(0, -1, 1);
    for i in enumerate_compositions(n) {
        let (des, seg) = (i.des() as u32, i.seg() as u32);
        let c = match form {
            Form::Ribbon => BiPoly::monomial(des, seg, 1),
            Form::Complete => {
                &(&BiPoly::monomial(des, 0, 1) * &one_minus_t.pow((n - i.len()) as u32))
                    * &q_minus_t.pow(seg)
            }
        };
        out.add_term(i.into(), c);
    }
    out
}

/// `Σ S^I` over all `I` with `des(I) = i`, `seg(I) = j` and `|I| ≤ order`.
pub fn pi_truncated(i: usize, j: usize, order: usize) -> ModuleElement {
    let mut out = ModuleElement::zero(Basis::S);
    for n in 1..=order {
        for c in enumerate_compositions(n).filter(|c| c.des() == i && c.seg() == j) {
            out.add_term(c.into(), BiPoly::one());
        }
    }
    out
}

/// Image of an element under `G_σ ↦ x^n / (2^{n-1} n!)`: for each degree
/// `n`, a polynomial coefficient and the rational scalar that multiplies it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiImage {
    pub components: BTreeMap<usize, (BiPoly, BigRational)>,
}

impl PhiImage {
    /// The coefficient of `x^n` with the scalar folded in.
    pub fn coefficient(&self, n: usize) -> BTreeMap<(u32, u32), BigRational> {
        self.components
            .get(&n)
            .map_or_else(BTreeMap::new, |(p, s)| {
                p.terms()
                    .iter()
                    .map(|(&k, c)| (k, BigRational::from_integer(c.clone()) * s))
                    .collect()
            })
    }

    pub fn eval(&self, n: usize, t: &BigRational, q: &BigRational) -> BigRational {
        self.components
            .get(&n)
            .map_or_else(BigRational::zero, |(p, s)| p.eval(t, q) * s)
    }
}

fn mask(set: &std::collections::BTreeSet<usize>) -> u64 {
    set.iter().fold(0, |m, &p| m | 1 << (p - 1))
}

/// Number of `σ ∈ SP_n` with each `SCDes(σ)`, keyed by `(Des, Bar)` bitmasks.
fn scdes_counts(n: usize) -> HashMap<(u64, u64), u64> {
    let mut counts = HashMap::new();
    let masks = 1u64 << (n - 1);
    let mut perms = LexPermutations::new(n);
    while let Some(w) = perms.next_slice() {
        let descents = (1..n)
            .filter(|&p| w[p - 1] > w[p])
            .fold(0u64, |m, p| m | 1 << (p - 1));
        for bars in 0..masks {
            *counts.entry((descents & !bars, bars)).or_insert(0) += 1;
        }
    }
    counts
}

/// Applies the morphism `φ`. `R` and `S` inputs are read through their `G`
/// expansion: `φ(R_I)` is the number of `σ` with `SCDes(σ) = I`, scaled.
pub fn phi(a: &ModuleElement) -> Result<PhiImage> {
    let a = if a.basis == Basis::S {
        change_basis(a, Basis::R)?
    } else {
        a.clone()
    };
    let mut sums: BTreeMap<usize, BiPoly> = BTreeMap::new();
    let mut counts: HashMap<usize, HashMap<(u64, u64), u64>> = HashMap::new();
    for (ix, c) in &a.terms {
        let n = ix.n();
        let weight = match ix {
            BasisIndex::Perm(_) => BigInt::one(),
            BasisIndex::Comp(i) => {
                let table = counts.entry(n).or_insert_with(|| scdes_counts(n));
                let (des, bars) = i.sets();
                BigInt::from(table.get(&(mask(&des), mask(&bars))).copied().unwrap_or(0))
            }
        };
        let entry = sums.entry(n).or_default();
        *entry = &*entry + &c.scale(&weight);
    }
    let components = sums
        .into_iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(n, p)| (n, (p, BigRational::new(BigInt::one(), segmented_count(n)))))
        .collect();
    Ok(PhiImage { components })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> SegmentedComposition {
        s.parse().unwrap()
    }

    fn p(s: &str) -> SegmentedPermutation {
        s.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ribbon_product() {
        let prod = product(
            &ModuleElement::ribbon(c("2,1|1")),
            &ModuleElement::ribbon(c("2|1,5")),
        )
        .unwrap();
        assert_eq!(
            prod.to_string(),
            "R[2,1|1,2|1,5] + R[2,1|1|2|1,5] + R[2,1|3|1,5]"
        );
    }

    #[test]
    fn complete_and_g_products() {
        let prod = product(
            &ModuleElement::complete(c("2|1,3")),
            &ModuleElement::complete(c("1")),
        )
        .unwrap();
        assert_eq!(prod.to_string(), "S[2|1,3,1]");
        let g1 = ModuleElement::g(p("1"));
        assert_eq!(
            product(&g1, &g1).unwrap().to_string(),
            "G[1,2] + G[1|2] + G[2,1] + G[2|1]"
        );
        assert_eq!(
            product(&g1, &ModuleElement::ribbon(c("1"))),
            Err(Error::MixedBasis {
                left: 'G',
                right: 'R'
            })
        );
    }

    #[test]
    fn basis_changes() {
        let s = change_basis(&ModuleElement::complete(c("2|1,3")), Basis::R).unwrap();
        assert_eq!(s.to_string(), "R[2|1,3] + R[2|1|3] + R[2|4]");
        let r = change_basis(&ModuleElement::ribbon(c("2|1,3")), Basis::S).unwrap();
        assert_eq!(r.to_string(), "S[2|1,3] - S[2|1|3] - S[2|4]");
        let g = change_basis(&ModuleElement::ribbon(c("2|1,1")), Basis::G).unwrap();
        assert_eq!(
            g.to_string(),
            "G[1,2|4,3] + G[1,3|4,2] + G[1,4|3,2] + G[2,3|4,1] + G[2,4|3,1] + G[3,4|2,1]"
        );
        assert_eq!(
            change_basis(&ModuleElement::g(p("1")), Basis::R),
            Err(Error::UnsupportedConversion { from: 'G', to: 'R' })
        );
    }

    #[test]
    fn wrong_index_kind() {
        assert!(ModuleElement::basis_element(Basis::G, c("1")).is_err());
        assert!(ModuleElement::basis_element(Basis::R, p("1")).is_err());
    }

    #[test]
    fn nc_eulerian_small() {
        assert_eq!(nc_eulerian(1, Form::Ribbon).to_string(), "t * R[1]");
        let rib = nc_eulerian(2, Form::Ribbon);
        assert_eq!(rib.to_string(), "t^2 * R[1,1] + t*q * R[1|1] + t * R[2]");
        let com = nc_eulerian(2, Form::Complete);
        assert_eq!(
            com.to_string(),
            "t^2 * S[1,1] + (-t^2 + t*q) * S[1|1] + (t - t^2) * S[2]"
        );
        assert_eq!(change_basis(&com, Basis::R).unwrap(), rib);
        let three = nc_eulerian(3, Form::Ribbon);
        assert_eq!(three.coeff(&c("1|1,1").into()), BiPoly::monomial(2, 1, 1));
    }

    #[test]
    fn phi_examples() {
        let img = phi(&ModuleElement::g(p("3|7,1,5,6|2,4"))).unwrap();
        assert_eq!(
            img.coefficient(7),
            BTreeMap::from([((0, 0), rat(1, 64 * 5040))])
        );
        let img = phi(&nc_eulerian(2, Form::Ribbon)).unwrap();
        // t(1 + t + 2q) x^2 / 4
        assert_eq!(
            img.coefficient(2),
            BTreeMap::from([
                ((1, 0), rat(1, 4)),
                ((2, 0), rat(1, 4)),
                ((1, 1), rat(1, 2))
            ])
        );
        let g1 = ModuleElement::g(p("1"));
        let sq = phi(&product(&g1, &g1).unwrap()).unwrap();
        assert_eq!(sq.coefficient(2), BTreeMap::from([((0, 0), rat(1, 1))]));
    }

    #[test]
    fn pi_series() {
        let pi10 = pi_truncated(1, 0, 3);
        assert_eq!(pi10.to_string(), "S[1] + S[2] + S[3]");
        let img = phi(&pi10).unwrap();
        assert_eq!(img.eval(1, &rat(0, 1), &rat(0, 1)), rat(1, 1));
        assert_eq!(img.eval(2, &rat(0, 1), &rat(0, 1)), rat(1, 4));
        assert_eq!(img.eval(3, &rat(0, 1), &rat(0, 1)), rat(1, 24));
        let pi11 = pi_truncated(1, 1, 2);
        assert_eq!(pi11.to_string(), "S[1|1]");
        assert_eq!(
            phi(&pi11).unwrap().eval(2, &rat(0, 1), &rat(0, 1)),
            rat(1, 2)
        );
        assert_eq!(pi_truncated(2, 0, 2).to_string(), "S[1,1]");
    }
}
