//! Seeded random instance generators for the randomized certification suites.

use rand::Rng;

use crate::field_forms::{CubicKolmogorovForm, KolmogorovForm};
use crate::polyring::{Monomial, Poly, Rational};

/// Small nonzero-biased rational with numerator in `[-bound, bound]` and
/// denominator in `1..=3`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    let numer = rng.gen_range(-bound..=bound);
    let denom = rng.gen_range(1..=3);
    Rational::new(numer.into(), denom.into())
}

pub fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let r = small_rational(rng, bound);
        if r != Rational::from_integer(0.into()) {
            return r;
        }
    }
}

fn random_exponents<R: Rng + ?Sized>(rng: &mut R, dim: usize, degree: u32) -> Vec<u32> {
    let mut e = vec![0; dim];
    for _ in 0..degree {
        e[rng.gen_range(0..dim)] += 1;
    }
    e
}

/// Random polynomial of total degree at most `max_degree` with up to
/// `max_terms` terms.
pub fn random_poly<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    max_degree: u32,
    max_terms: usize,
) -> Poly {
    let n = rng.gen_range(0..=max_terms);
    Poly::from_terms(
        dim,
        (0..n).map(|_| {
            let d = rng.gen_range(0..=max_degree);
            (Monomial::new(random_exponents(rng, dim, d)), small_rational(rng, 5))
        }),
    )
}

/// Random homogeneous polynomial of exactly `degree` (possibly zero when
/// `allow_zero`).
pub fn random_homogeneous<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    degree: u32,
    max_terms: usize,
    allow_zero: bool,
) -> Poly {
    loop {
        let n = rng.gen_range(1..=max_terms.max(1));
        let p = Poly::from_terms(
            dim,
            (0..n).map(|_| {
                (
                    Monomial::new(random_exponents(rng, dim, degree)),
                    small_rational(rng, 5),
                )
            }),
        );
        if allow_zero || !p.is_zero() {
            return p;
        }
    }
}

pub fn random_skew_poly<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    max_degree: u32,
    max_terms: usize,
) -> Vec<Vec<Poly>> {
    let upper: Vec<Poly> = (0..dim * (dim - 1) / 2)
        .map(|_| random_poly(rng, dim, max_degree, max_terms))
        .collect();
    KolmogorovForm::skew_from_upper(dim, &upper)
}

/// Random general canonical form whose field has degree at most `m`.
pub fn random_form<R: Rng + ?Sized>(rng: &mut R, dim: usize, m: u32) -> KolmogorovForm {
    let inner = m.saturating_sub(3);
    let ftilde = (0..dim).map(|_| random_poly(rng, dim, inner, 3)).collect();
    let atilde = random_skew_poly(rng, dim, inner, 3);
    KolmogorovForm::new(ftilde, atilde).expect("generated matrix is skew")
}

pub fn random_cubic_form<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CubicKolmogorovForm {
    let alpha = (0..dim).map(|_| small_rational(rng, 4)).collect();
    let upper: Vec<Rational> = (0..dim * (dim - 1) / 2)
        .map(|_| small_rational(rng, 4))
        .collect();
    CubicKolmogorovForm::from_upper(alpha, &upper)
}

/// Homogeneous Kolmogorov field data of degree `m` on the sphere: skew `A~`
/// with homogeneous entries of degree `m - 3` and nonzero last component
/// `P_{n+1}`.
pub fn random_homogeneous_skew<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    m: u32,
) -> Vec<Vec<Poly>> {
    loop {
        let upper: Vec<Poly> = (0..dim * (dim - 1) / 2)
            .map(|_| random_homogeneous(rng, dim, m - 3, 2, true))
            .collect();
        let a = KolmogorovForm::skew_from_upper(dim, &upper);
        let last = a[dim - 1]
            .iter()
            .enumerate()
            .fold(Poly::zero(dim), |acc, (j, p)| &acc + &p.mul_var_pow(j, 2));
        if !last.is_zero() {
            return a;
        }
    }
}
