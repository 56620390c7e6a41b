#![allow(dead_code)]

use kolmo_core::polyring::{Monomial, Poly, Rational};
use proptest::prelude::*;

pub fn rational(bound: i64) -> impl Strategy<Value = Rational> {
    (-bound..=bound, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

pub fn nonzero_rational(bound: i64) -> impl Strategy<Value = Rational> {
    rational(bound).prop_filter("nonzero", |r| *r != Rational::from_integer(0.into()))
}

pub fn term(dim: usize, max_deg: u32) -> impl Strategy<Value = (Vec<u32>, Rational)> {
    (proptest::collection::vec(0..=max_deg, dim), rational(6))
        .prop_filter("degree bound", move |(e, _)| e.iter().sum::<u32>() <= max_deg)
}

/// Raw term list, so oracles can work on it without going through `Poly`.
pub fn terms(dim: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, Rational)>> {
    proptest::collection::vec(term(dim, max_deg), 0..=max_terms)
}

pub fn poly_from(dim: usize, terms: &[(Vec<u32>, Rational)]) -> Poly {
    Poly::from_terms(
        dim,
        terms.iter().map(|(e, c)| (Monomial::new(e.clone()), c.clone())),
    )
}

pub fn poly(dim: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    terms(dim, max_deg, max_terms).prop_map(move |t| poly_from(dim, &t))
}

pub fn point(dim: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(rational(5), dim)
}

/// Exponent-by-exponent evaluation of a raw term list.
pub fn eval_terms(terms: &[(Vec<u32>, Rational)], x: &[Rational]) -> Rational {
    let mut total = Rational::from_integer(0.into());
    for (e, c) in terms {
        let mut v = c.clone();
        for (xi, &k) in x.iter().zip(e) {
            for _ in 0..k {
                v *= xi;
            }
        }
        total += v;
    }
    total
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x.into())).collect()
}
