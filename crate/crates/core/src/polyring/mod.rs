//! Sparse multivariate polynomials over the rationals.

mod monomial;
mod parse;
mod poly;
mod rational;

pub use monomial::Monomial;
pub use parse::parse;
pub use poly::{Degree, Poly};
pub use rational::{format_rational, int, parse_rational, rat, to_f64, Rational};

/// Ring operation selector for [`arith`].
#[derive(Debug, Clone)]
pub enum ArithOp<'a> {
    Add(&'a Poly),
    Sub(&'a Poly),
    Mul(&'a Poly),
    Pow(u32),
}

pub fn arith(lhs: &Poly, op: ArithOp<'_>) -> crate::Result<Poly> {
    match op {
        ArithOp::Add(rhs) => lhs.checked_add(rhs),
        ArithOp::Sub(rhs) => lhs.checked_sub(rhs),
        ArithOp::Mul(rhs) => lhs.checked_mul(rhs),
        ArithOp::Pow(e) => Ok(lhs.pow(e)),
    }
}
