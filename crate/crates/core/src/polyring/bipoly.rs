use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

/// Polynomial in `t` and `q` with integer coefficients, keyed by
/// `(t-degree, q-degree)`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn t() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn q() -> Self {
        Self::monomial(0, 1, 1)
    }

    /// `c · t^i · q^j`.
    pub fn monomial(i: u32, j: u32, c: impl Into<BigInt>) -> Self {
        Self::from_terms([((i, j), c.into())])
    }

    /// Sums the given terms; repeated exponents accumulate.
    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), BigInt)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, key: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_t(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn deg_q(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, v)| (k, v * c)))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn deriv_t(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.0 > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c * i)),
        )
    }

    pub fn deriv_q(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.1 > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c * j)),
        )
    }

    pub fn eval(&self, t: &BigRational, q: &BigRational) -> BigRational {
        let dt = self.deg_t().unwrap_or(0) as usize;
        let dq = self.deg_q().unwrap_or(0) as usize;
        let powers = |x: &BigRational, d: usize| {
            let mut v = vec![BigRational::one()];
            for k in 1..=d {
                let next = &v[k - 1] * x;
                v.push(next);
            }
            v
        };
        let (tp, qp) = (powers(t, dt), powers(q, dq));
        self.terms
            .iter()
            .map(|(&(i, j), c)| {
                BigRational::from_integer(c.clone()) * &tp[i as usize] * &qp[j as usize]
            })
            .sum()
    }

    /// Substitutes polynomials for `t` and `q`.
    pub fn compose(&self, t_image: &Self, q_image: &Self) -> Self {
        let mut out = Self::zero();
        let mut t_pows = vec![Self::one()];
        let mut q_pows = vec![Self::one()];
        for (&(i, j), c) in &self.terms {
            while t_pows.len() <= i as usize {
                let next = t_pows.last().unwrap() * t_image;
                t_pows.push(next);
            }
            while q_pows.len() <= j as usize {
                let next = q_pows.last().unwrap() * q_image;
                q_pows.push(next);
            }
            out = out + (&t_pows[i as usize] * &q_pows[j as usize]).scale(c);
        }
        out
    }

    /// Coefficient list in `t` for a polynomial free of `q`, from degree 0 up.
    pub fn t_coefficients(&self) -> Vec<BigInt> {
        let len = self.deg_t().map_or(0, |d| d as usize + 1);
        let mut out = vec![BigInt::zero(); len];
        for (&(i, _), c) in &self.terms {
            out[i as usize] += c;
        }
        out
    }

    /// `{"i,j": coeff}` with `i` the `t`-degree and `j` the `q`-degree.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (&(i, j), c) in &self.terms {
            map.insert(
                format!("{i},{j}"),
                Value::Number(c.to_string().parse().expect("integer")),
            );
        }
        Value::Object(map)
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn monomial_text(i: u32, j: u32) -> String {
    let var = |name: &str, e: u32| match e {
        0 => None,
        1 => Some(name.to_string()),
        e => Some(format!("{name}^{e}")),
    };
    [var("t", i), var("q", j)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

/// Terms ordered by `q`-degree, then `t`-degree: `1 + 4*t + t^2 + 6*q + 6*t*q + 6*q^2`.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|&&(i, j)| (j, i));
        for (idx, &&(i, j)) in keys.iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let mono = monomial_text(i, j);
            let mag = c.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag}*{mono}"),
            };
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => f.write_str(&body)?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, -c);
        }
        out
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), a * b);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(&k, c)| (k, -c)))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: &BiPoly) -> BiPoly {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        -&self
    }
}
