//! Generalized Eulerian numbers on segmented permutations.
//!
//! A segmented permutation is a permutation of `1..=n` with bars inserted
//! between some adjacent letters; a descent is an unbarred position `i` with
//! `w[i] > w[i+1]`. This crate counts them by descents and bars and checks
//! the surrounding algebra exactly:
//!
//! - [`segcomb`]: segmented compositions and permutations, their statistics,
//!   orders, concatenations, standardization and convolution.
//! - [`tables`]: `T(n,k)`, `K(n,i,j)`, classical Eulerian and Stirling
//!   numbers, by brute-force enumeration and by several recurrences.
//! - [`polyring`]: bivariate integer polynomials, the forward difference
//!   operator, and truncated power series over the rationals.
//! - [`scqsym`]: the ribbon, complete and permutation bases, their products
//!   and basis changes, and the morphism to exponential series.
//! - [`identities`]: verifiers for the generating functions, Dobinski and
//!   Worpitzky type identities, specializations and unimodality.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod identities;
pub mod polyring;
pub mod scqsym;
pub mod segcomb;
pub mod tables;

pub use error::{Error, Result};
pub use polyring::{BiPoly, RatPoly, TruncSeries};
pub use scqsym::{Basis, BasisIndex, ModuleElement};
pub use segcomb::{SegmentedComposition, SegmentedPermutation, Separator};
pub use tables::{CountTable, KTables, Method};
