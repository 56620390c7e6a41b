//! Dense exact linear algebra over the rationals.
//!
//! Rank and determinant use fraction-free (Bareiss) elimination on an
//! integer-scaled copy of the matrix. Nullspaces come from Gauss-Jordan
//! reduction and are returned in a normal form: the basis is itself put in
//! reduced row-echelon form, so every vector has leading entry 1 and vectors
//! are ordered by pivot position.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyring::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        let n = rows.len();
        Ok(RationalMatrix {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
        .expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// `M v`.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `v M`.
    pub fn vec_mul(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| &v[r] * self.get(r, c)).sum())
            .collect()
    }

    pub fn rank(&self) -> usize {
        bareiss(self).rank
    }

    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let elim = bareiss(self);
        if elim.rank < n {
            return Ok(Rational::zero());
        }
        let mut det = Rational::new(elim.last_pivot, elim.row_scale);
        if elim.swaps % 2 == 1 {
            det = -det;
        }
        Ok(det)
    }

    pub fn nullspace(&self, side: Side) -> Vec<Vec<Rational>> {
        match side {
            Side::Right => right_nullspace(self),
            Side::Left => right_nullspace(&self.transpose()),
        }
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

struct Elimination {
    rank: usize,
    swaps: usize,
    /// Bottom-right pivot after full elimination (the scaled determinant for
    /// a nonsingular square input).
    last_pivot: BigInt,
    /// Product of the per-row integer scale factors.
    row_scale: BigInt,
}

fn bareiss(m: &RationalMatrix) -> Elimination {
    let (rows, cols) = (m.rows, m.cols);
    let mut row_scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| {
            let lcm = m
                .row(r)
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row_scale *= &lcm;
            m.row(r)
                .iter()
                .map(|v| v.numer() * (&lcm / v.denom()))
                .collect()
        })
        .collect();

    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            swaps += 1;
        }
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            for j in c + 1..cols {
                let num = &pivot_row[c] * &row[j] - &row[c] * &pivot_row[j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot_row[c].clone();
        rank += 1;
    }
    Elimination {
        rank,
        swaps,
        last_pivot: prev,
        row_scale,
    }
}

/// Reduced row-echelon form; returns the pivot columns.
fn rref(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &factor * pv;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn right_nullspace(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let cols = m.cols;
    let mut rows = m.to_rows();
    let pivots = rref(&mut rows, cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[r][free].clone();
        }
        basis.push(v);
    }
    normalize_basis(basis, cols)
}

/// Canonical basis of the span of `vectors`: reduced row-echelon form with
/// zero rows dropped.
pub fn normalize_basis(mut vectors: Vec<Vec<Rational>>, len: usize) -> Vec<Vec<Rational>> {
    let pivots = rref(&mut vectors, len);
    vectors.truncate(pivots.len());
    vectors
}

/// Exact rank of a list of equal-length vectors.
pub fn vectors_rank(vectors: &[Vec<Rational>]) -> usize {
    let len = vectors.first().map_or(0, Vec::len);
    let mut rows = vectors.to_vec();
    rref(&mut rows, len).len()
}

/// Scales a vector so that its entries are coprime integers with a positive
/// leading entry.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return v.to_vec();
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &gcd * &sign))
        .collect()
}
