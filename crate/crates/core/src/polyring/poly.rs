use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Total degree, with the zero polynomial placed below every natural number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Sparse polynomial in `dim` variables with exact rational coefficients.
///
/// No stored coefficient is ever zero, so structural equality is polynomial
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Poly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, value: Rational) -> Self {
        let mut p = Poly::zero(dim);
        p.add_term(Monomial::one(dim), value);
        p
    }

    pub fn one(dim: usize) -> Self {
        Poly::constant(dim, Rational::one())
    }

    /// The coordinate `x_{index+1}`.
    pub fn var(dim: usize, index: usize) -> Self {
        Poly::monomial(dim, Monomial::var(dim, index, 1), Rational::one())
    }

    pub fn monomial(dim: usize, monomial: Monomial, coeff: Rational) -> Self {
        assert_eq!(monomial.dim(), dim, "monomial dimension mismatch");
        let mut p = Poly::zero(dim);
        p.add_term(monomial, coeff);
        p
    }

    /// `sum x_i^2 - r2`; the unit sphere when `r2 = 1`.
    pub fn sphere(dim: usize, r2: Rational) -> Self {
        let mut p = Poly::constant(dim, -r2);
        for i in 0..dim {
            p.add_term(Monomial::var(dim, i, 2), Rational::one());
        }
        p
    }

    /// `a0 + sum a_i x_i`.
    pub fn linear(a0: &Rational, a: &[Rational]) -> Self {
        let dim = a.len();
        let mut p = Poly::constant(dim, a0.clone());
        for (i, ai) in a.iter().enumerate() {
            p.add_term(Monomial::var(dim, i, 1), ai.clone());
        }
        p
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(dim);
        for (m, c) in terms {
            assert_eq!(m.dim(), dim, "monomial dimension mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, monomial: &Monomial) -> Rational {
        self.terms.get(monomial).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.dim))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, monomial: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Poly) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = Poly::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut result = Poly::one(self.dim);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, factor: &Rational) -> Poly {
        if factor.is_zero() {
            return Poly::zero(self.dim);
        }
        Poly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// Multiplies by the monomial `x_index^power`.
    pub fn mul_var_pow(&self, index: usize, power: u32) -> Poly {
        let shift = Monomial::var(self.dim, index, power);
        Poly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(&shift), c.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to `x_{var+1}`.
    pub fn differentiate(&self, var: usize) -> Result<Poly> {
        if var >= self.dim {
            return Err(Error::IndexOutOfRange {
                index: var + 1,
                dim: self.dim,
            });
        }
        let mut out = Poly::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), c * Rational::from_integer(e.into()));
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    value *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += value;
        }
        Ok(total)
    }

    /// Floating-point evaluation for numerical work.
    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.dim);
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut value = super::rational::to_f64(c);
                for (x, &e) in point.iter().zip(m.exponents()) {
                    if e > 0 {
                        value *= x.powi(e as i32);
                    }
                }
                value
            })
            .sum()
    }

    /// Returns `q` with `q * divisor == self` when the division is exact.
    ///
    /// Runs multivariate division by a single divisor in graded-lex order;
    /// the remainder is zero exactly when `divisor` divides `self`.
    pub fn divide_exact(&self, divisor: &Poly) -> Result<Option<Poly>> {
        self.check_dim(divisor)?;
        let (lead_m, lead_c) = divisor.leading_term().ok_or(Error::ZeroDivisor)?;
        let mut rest = self.clone();
        let mut quotient = Poly::zero(self.dim);
        while let Some((m, c)) = rest.leading_term() {
            if !lead_m.divides(m) {
                // The leading term can never be cancelled: every later
                // subtraction only touches monomials below it.
                return Ok(None);
            }
            let qm = lead_m.quotient_of(m);
            let qc = c / lead_c;
            for (dm, dc) in &divisor.terms {
                rest.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quotient.add_term(qm, qc);
        }
        Ok(Some(quotient))
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::degree)
            .max()
            .map_or(Degree::NegInf, Degree::Finite)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(first) => degrees.all(|d| d == first),
        }
    }

    pub fn degree_info(&self) -> (Degree, bool) {
        (self.degree(), self.is_homogeneous())
    }

    /// Maps every variable through `substitution` (must have one entry per
    /// variable, all of a common target dimension).
    pub fn substitute(&self, substitution: &[Poly]) -> Poly {
        assert_eq!(substitution.len(), self.dim);
        let target = substitution.first().map_or(0, Poly::dim);
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (s, &e) in substitution.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &s.pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }
}

impl fmt::Display for Poly {
    /// Canonical form: graded-lex descending, coefficients as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let vars: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                f.write_str(&format_rational(&magnitude))?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{}*", format_rational(&magnitude))?;
                }
                f.write_str(&vars.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Poly> for &'a Poly {
            type Output = Poly;
            fn $method(self, rhs: &'a Poly) -> Poly {
                self.$checked(rhs).expect("polynomial dimension mismatch")
            }
        }

        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
