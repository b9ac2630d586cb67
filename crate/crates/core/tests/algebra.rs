use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use segeuler::polyring::{alpha_poly, TruncSeries};
use segeuler::scqsym::{change_basis, nc_eulerian, phi, pi_truncated, product, Form};
use segeuler::segcomb::{enumerate_compositions, enumerate_permutations};
use segeuler::tables::segmented_count;
use segeuler::{Basis, BasisIndex, BiPoly, ModuleElement, SegmentedComposition};

fn comp(s: &str) -> SegmentedComposition {
    s.parse().unwrap()
}

fn compositions_up_to(n_max: usize) -> Vec<SegmentedComposition> {
    (1..=n_max).flat_map(enumerate_compositions).collect()
}

#[test]
fn products_and_conversions() {
    let r = product(
        &ModuleElement::ribbon(comp("2,1|1")),
        &ModuleElement::ribbon(comp("2|1,5")),
    )
    .unwrap();
    assert_eq!(
        r.to_string(),
        "R[2,1|1,2|1,5] + R[2,1|1|2|1,5] + R[2,1|3|1,5]"
    );
    let s = ModuleElement::complete(comp("2|1,3"));
    assert_eq!(
        change_basis(&s, Basis::R).unwrap().to_string(),
        "R[2|1,3] + R[2|1|3] + R[2|4]"
    );
    let r = ModuleElement::ribbon(comp("2|1,3"));
    assert_eq!(
        change_basis(&r, Basis::S).unwrap().to_string(),
        "S[2|1,3] - S[2|1|3] - S[2|4]"
    );
    let g = change_basis(&ModuleElement::ribbon(comp("2|1,1")), Basis::G).unwrap();
    assert_eq!(
        g.to_string(),
        "G[1,2|4,3] + G[1,3|4,2] + G[1,4|3,2] + G[2,3|4,1] + G[2,4|3,1] + G[3,4|2,1]"
    );
    let s = product(
        &ModuleElement::complete(comp("2|1,3")),
        &ModuleElement::complete(comp("1")),
    )
    .unwrap();
    assert_eq!(s.to_string(), "S[2|1,3,1]");
}

#[test]
fn mixed_bases_are_rejected() {
    let r = ModuleElement::ribbon(comp("1"));
    let s = ModuleElement::complete(comp("1"));
    assert!(product(&r, &s).is_err());
    assert!(r.add(&s).is_err());
    let g = change_basis(&r, Basis::G).unwrap();
    assert!(change_basis(&g, Basis::R).is_err());
}

#[test]
fn product_compatible_with_g_expansion() {
    let all = compositions_up_to(5);
    for i in &all {
        for k in &all {
            if i.n() + k.n() > 6 {
                continue;
            }
            let (ri, rk) = (
                ModuleElement::ribbon(i.clone()),
                ModuleElement::ribbon(k.clone()),
            );
            let in_r = change_basis(&product(&ri, &rk).unwrap(), Basis::G).unwrap();
            let gi = change_basis(&ri, Basis::G).unwrap();
            let gk = change_basis(&rk, Basis::G).unwrap();
            assert_eq!(product(&gi, &gk).unwrap(), in_r, "{i} * {k}");
        }
    }
}

#[test]
fn complete_basis_is_multiplicative() {
    let all = compositions_up_to(5);
    for i in &all {
        for k in &all {
            if i.n() + k.n() > 6 {
                continue;
            }
            let (si, sk) = (
                ModuleElement::complete(i.clone()),
                ModuleElement::complete(k.clone()),
            );
            let lhs = change_basis(&product(&si, &sk).unwrap(), Basis::R).unwrap();
            let rhs = product(
                &change_basis(&si, Basis::R).unwrap(),
                &change_basis(&sk, Basis::R).unwrap(),
            )
            .unwrap();
            assert_eq!(lhs, rhs, "{i} * {k}");
        }
    }
}

#[test]
fn phi_is_multiplicative_on_g() {
    for total in 2..=6 {
        for n in 1..total {
            let r = total - n;
            // every left factor against a spread of right factors
            let rights: Vec<_> = enumerate_permutations(r, None).step_by(7).collect();
            for sigma in enumerate_permutations(n, None).step_by(5) {
                for tau in &rights {
                    let (a, b) = (
                        ModuleElement::g(sigma.clone()),
                        ModuleElement::g(tau.clone()),
                    );
                    let image = phi(&product(&a, &b).unwrap()).unwrap();
                    let (pa, pb) = (phi(&a).unwrap(), phi(&b).unwrap());
                    let expected = &pa.components[&n].1 * &pb.components[&r].1;
                    assert_eq!(
                        image.coefficient(total),
                        BTreeMap::from([((0, 0), expected)])
                    );
                }
            }
        }
    }
}

#[test]
fn phi_scalars() {
    let g = ModuleElement::g("3|7,1,5,6|2,4".parse().unwrap());
    let image = phi(&g).unwrap();
    let expected = BigRational::new(1.into(), segmented_count(7));
    assert_eq!(image.coefficient(7), BTreeMap::from([((0, 0), expected)]));
    let one = ModuleElement::g("1".parse().unwrap());
    let sq = phi(&product(&one, &one).unwrap()).unwrap();
    assert_eq!(
        sq.coefficient(2),
        BTreeMap::from([((0, 0), BigRational::from_integer(1.into()))])
    );
}

#[test]
fn complete_form_expands_to_ribbon_form() {
    for n in 1..=7 {
        let complete = change_basis(&nc_eulerian(n, Form::Complete), Basis::R).unwrap();
        assert_eq!(complete, nc_eulerian(n, Form::Ribbon), "n={n}");
    }
    assert_eq!(nc_eulerian(1, Form::Ribbon).to_string(), "t * R[1]");
    assert_eq!(
        nc_eulerian(2, Form::Ribbon).to_string(),
        "t^2 * R[1,1] + t*q * R[1|1] + t * R[2]"
    );
    let coeff = nc_eulerian(3, Form::Ribbon).coeff(&BasisIndex::from(comp("1|1,1")));
    assert_eq!(coeff, BiPoly::monomial(2, 1, 1));
}

#[test]
fn phi_of_nc_eulerian() {
    for n in 1..=7 {
        let image = phi(&nc_eulerian(n, Form::Ribbon)).unwrap();
        let (poly, scale) = &image.components[&n];
        assert_eq!(poly, &(BiPoly::t() * alpha_poly(n)), "n={n}");
        assert_eq!(scale, &BigRational::new(1.into(), segmented_count(n)));
        assert_eq!(image.components.len(), 1);
    }
}

/// Coefficients of `2 (e^{x/2} - 1)^{u+1}` up to `x^order`.
fn phi_pi_series(u: u32, order: usize) -> TruncSeries {
    let half = BigRational::new(1.into(), 2.into());
    let e = &TruncSeries::exp_linear(order, &half) - &TruncSeries::one(order);
    e.pow(u + 1).scale(&BigRational::from_integer(2.into()))
}

#[test]
fn phi_of_pi_series() {
    assert_eq!(pi_truncated(1, 0, 3).to_string(), "S[1] + S[2] + S[3]");
    assert_eq!(pi_truncated(1, 1, 2).to_string(), "S[1|1]");
    assert_eq!(pi_truncated(2, 0, 2).to_string(), "S[1,1]");
    for u in 0..=4u32 {
        let image = phi(&pi_truncated(1, u as usize, 8)).unwrap();
        let series = phi_pi_series(u, 8);
        for n in 1..=8 {
            let constant: BigRational = image
                .coefficient(n)
                .into_iter()
                .map(|(k, v)| {
                    assert_eq!(k, (0, 0));
                    v
                })
                .sum();
            assert_eq!(constant, series.coeff(n), "u={u}, n={n}");
        }
    }
    let first = phi(&pi_truncated(1, 0, 3)).unwrap();
    let expect = [(1, 1), (1, 4), (1, 24)];
    for (n, (a, b)) in (1..=3).zip(expect) {
        assert_eq!(
            first.eval(
                n,
                &BigRational::from_integer(0.into()),
                &BigRational::from_integer(0.into())
            ),
            BigRational::new(a.into(), b.into())
        );
    }
}

fn element_strategy(basis: Basis) -> impl Strategy<Value = ModuleElement> {
    let pool = compositions_up_to(6);
    let len = pool.len();
    prop::collection::vec((0..len, -3i64..=3, 0u32..3, 0u32..3), 0..8).prop_map(move |raw| {
        let terms = raw.into_iter().map(|(ix, c, i, j)| {
            (
                BasisIndex::from(pool[ix].clone()),
                BiPoly::monomial(i, j, BigInt::from(c)),
            )
        });
        ModuleElement::from_terms(basis, terms).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ribbon_complete_round_trip(e in element_strategy(Basis::R)) {
        let there = change_basis(&e, Basis::S).unwrap();
        prop_assert_eq!(change_basis(&there, Basis::R).unwrap(), e);
    }

    #[test]
    fn complete_ribbon_round_trip(e in element_strategy(Basis::S)) {
        let there = change_basis(&e, Basis::R).unwrap();
        prop_assert_eq!(change_basis(&there, Basis::S).unwrap(), e);
    }

    #[test]
    fn change_of_basis_is_linear(a in element_strategy(Basis::R), b in element_strategy(Basis::R)) {
        let sum = change_basis(&a.add(&b).unwrap(), Basis::S).unwrap();
        let parts = change_basis(&a, Basis::S).unwrap().add(&change_basis(&b, Basis::S).unwrap()).unwrap();
        prop_assert_eq!(sum, parts);
    }
}
