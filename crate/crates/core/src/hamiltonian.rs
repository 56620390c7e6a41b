//! Hamiltonian test for polynomial fields in even dimension.
//!
//! `(P_1, ..., P_{2n})` is Hamiltonian iff the rearranged field
//! `G = (P_2, -P_1, P_4, -P_3, ...)` is a gradient, and a polynomial field
//! on `R^{2n}` is a gradient iff its Jacobian is symmetric.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{RationalMatrix, Side};
use crate::field_forms::{CubicKolmogorovForm, PolyVectorField};
use crate::polyring::{Monomial, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonianReport {
    pub is_hamiltonian: bool,
    /// Nonzero `dG_j/dx_k - dG_k/dx_j` for `j < k` (1-based pairs).
    pub defect: Vec<((usize, usize), Poly)>,
}

fn symplectic_gradient(vf: &PolyVectorField) -> Vec<Poly> {
    vf.components()
        .chunks(2)
        .flat_map(|pair| [pair[1].clone(), -&pair[0]])
        .collect()
}

fn jacobian_defects(vf: &PolyVectorField) -> Vec<((usize, usize), Poly)> {
    let g = symplectic_gradient(vf);
    let dim = vf.dim();
    let mut out = Vec::new();
    for j in 0..dim {
        for k in j + 1..dim {
            let djk = g[j].differentiate(k).expect("index in range");
            let dkj = g[k].differentiate(j).expect("index in range");
            out.push(((j + 1, k + 1), &djk - &dkj));
        }
    }
    out
}

pub fn is_hamiltonian(vf: &PolyVectorField) -> Result<HamiltonianReport> {
    if !vf.dim().is_multiple_of(2) {
        return Err(Error::OddDimension(vf.dim()));
    }
    let defect: Vec<_> = jacobian_defects(vf)
        .into_iter()
        .filter(|(_, p)| !p.is_zero())
        .collect();
    Ok(HamiltonianReport {
        is_hamiltonian: defect.is_empty(),
        defect,
    })
}

/// Solution space of the Hamiltonian constraints over the cubic canonical
/// family on `S^{2n-1}`, in the coordinates `(alpha_1..alpha_{2n}, A~_ij for
/// i < j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSpace {
    pub parameters: Vec<String>,
    pub constraint_matrix: RationalMatrix,
    pub basis: Vec<Vec<Rational>>,
}

impl ConstraintSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn cubic_parameter_count(dim: usize) -> usize {
    dim + dim * (dim - 1) / 2
}

/// Cubic form from a parameter vector `(alpha, upper triangle of A~)`.
pub fn cubic_form_from_parameters(dim: usize, params: &[Rational]) -> CubicKolmogorovForm {
    assert_eq!(params.len(), cubic_parameter_count(dim));
    CubicKolmogorovForm::from_upper(params[..dim].to_vec(), &params[dim..])
}

pub fn hamiltonian_constraint_space(n: usize) -> Result<ConstraintSpace> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let dim = 2 * n;
    let count = cubic_parameter_count(dim);

    let mut parameters: Vec<String> = (1..=dim).map(|i| format!("alpha{i}")).collect();
    for i in 1..=dim {
        for j in i + 1..=dim {
            parameters.push(format!("A{i}_{j}"));
        }
    }

    // The defect map is linear in the parameters, so each column is the
    // defect of one basis field.
    let mut rows: BTreeMap<(usize, usize, Monomial), Vec<Rational>> = BTreeMap::new();
    for p in 0..count {
        let mut params = vec![Rational::zero(); count];
        params[p] = Rational::one();
        let vf = cubic_form_from_parameters(dim, &params).field();
        for ((j, k), poly) in jacobian_defects(&vf) {
            for (m, c) in poly.terms() {
                rows.entry((j, k, m.clone()))
                    .or_insert_with(|| vec![Rational::zero(); count])[p] = c.clone();
            }
        }
    }
    let constraint_matrix = if rows.is_empty() {
        RationalMatrix::zeros(0, count)
    } else {
        RationalMatrix::from_rows(rows.into_values().collect())?
    };
    let basis = if constraint_matrix.rows() == 0 {
        RationalMatrix::identity(count).to_rows()
    } else {
        constraint_matrix.nullspace(Side::Right)
    };
    Ok(ConstraintSpace {
        parameters,
        constraint_matrix,
        basis,
    })
}
