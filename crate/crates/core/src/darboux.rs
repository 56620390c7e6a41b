//! Darboux first integrals of Kolmogorov fields on the sphere.
//!
//! Given invariant hypersurfaces `f_i = 0` with cofactors `K_i`, the product
//! `prod f_i^{b_i}` is a first integral whenever `sum b_i K_i = 0`. For the
//! cubic canonical form the cofactors of the coordinate hyperplanes and of
//! one extra surface with a `k0 + sum k_i x_i^2` cofactor all live in the
//! span of `1, x_1^2, ..., x_{n+1}^2`, so the admissible exponent vectors
//! are exactly the left nullspace of an `(n+2) x (n+2)` coefficient matrix.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{normalize_basis, vectors_rank, RationalMatrix, Side};
use crate::field_forms::{
    construct_from_form, lie_derivative, CubicKolmogorovForm, KolmogorovForm, PolyVectorField,
};
use crate::invariance::{cofactor, Cofactor, HyperplaneSpec, Hypersurface, StructuredCofactor};
use crate::polyring::{Degree, Monomial, Poly, Rational};

/// `H = prod_i surfaces[i]^{exponents[i]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DarbouxIntegral {
    exponents: Vec<Rational>,
    surfaces: Vec<Hypersurface>,
}

impl DarbouxIntegral {
    pub fn new(exponents: Vec<Rational>, surfaces: Vec<Hypersurface>) -> Result<Self> {
        if exponents.len() != surfaces.len() {
            return Err(Error::DimMismatch {
                expected: surfaces.len(),
                found: exponents.len(),
            });
        }
        if exponents.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("all exponents are zero".into()));
        }
        Ok(DarbouxIntegral {
            exponents,
            surfaces,
        })
    }

    /// A single polynomial first integral `f`.
    pub fn polynomial(f: Poly) -> Result<Self> {
        Self::new(vec![Rational::one()], vec![Hypersurface::new(f)?])
    }

    pub fn exponents(&self) -> &[Rational] {
        &self.exponents
    }

    pub fn surfaces(&self) -> &[Hypersurface] {
        &self.surfaces
    }
}

fn coordinate_surfaces(dim: usize) -> Vec<Hypersurface> {
    (0..dim).map(|i| Hypersurface::coordinate(dim, i)).collect()
}

/// Sample point with all coordinates nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplePoint(Vec<Rational>);

impl SamplePoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.iter().any(Zero::is_zero) {
            return Err(Error::PreconditionViolated(
                "sample points must have nonzero coordinates".into(),
            ));
        }
        Ok(SamplePoint(coords))
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

/// The points `z_j = (1, ..., 2 at j, ..., 1)`, `j = 1..dim`.
pub fn default_samples(dim: usize) -> Vec<SamplePoint> {
    (0..dim)
        .map(|j| {
            SamplePoint(
                (0..dim)
                    .map(|k| Rational::from_integer(if k == j { 2 } else { 1 }.into()))
                    .collect(),
            )
        })
        .collect()
}

/// Coefficient matrix of the cofactors `K_1, ..., K_{n+1}, K_{n+2}` in the
/// basis `1, x_1^2, ..., x_{n+1}^2`; one row per cofactor.
pub fn build_matrix_b(form: &CubicKolmogorovForm, extra: &Cofactor) -> Result<RationalMatrix> {
    let StructuredCofactor { k0, k } = extra
        .structured
        .as_ref()
        .ok_or_else(|| Error::UnstructuredCofactor(extra.poly.to_string()))?;
    let dim = form.dim();
    if k.len() != dim {
        return Err(Error::DimMismatch {
            expected: dim,
            found: k.len(),
        });
    }
    let mut b = RationalMatrix::zeros(dim + 1, dim + 1);
    for i in 0..dim {
        let alpha = &form.alpha()[i];
        b.set(i, 0, alpha.clone());
        for j in 0..dim {
            b.set(i, j + 1, form.a(i, j) - alpha);
        }
    }
    b.set(dim, 0, k0.clone());
    for j in 0..dim {
        b.set(dim, j + 1, k[j].clone());
    }
    Ok(b)
}

fn structured_cofactor_of(
    vf: &PolyVectorField,
    g: &Hypersurface,
) -> Result<Cofactor> {
    let c = cofactor(vf, g)?.ok_or_else(|| Error::NotInvariant(g.defining().to_string()))?;
    if c.structured.is_none() {
        return Err(Error::UnstructuredCofactor(c.poly.to_string()));
    }
    Ok(c)
}

fn integrals_from_exponents(
    vf: &PolyVectorField,
    vectors: Vec<Vec<Rational>>,
    surfaces: &[Hypersurface],
) -> Result<Vec<DarbouxIntegral>> {
    vectors
        .into_iter()
        .map(|v| {
            let integral = DarbouxIntegral::new(v, surfaces.to_vec())?;
            if !verify_first_integral(vf, &integral)? {
                return Err(Error::Internal(format!(
                    "exponent vector {:?} fails the cofactor identity",
                    integral.exponents
                )));
            }
            Ok(integral)
        })
        .collect()
}

/// All Darboux first integrals over `x_1, ..., x_{n+1}, g`, one per
/// normalized left-nullspace basis vector of the cofactor matrix.
pub fn find_darboux(form: &CubicKolmogorovForm, g: &Hypersurface) -> Result<Vec<DarbouxIntegral>> {
    let vf = form.field();
    let extra = structured_cofactor_of(&vf, g)?;
    let b = build_matrix_b(form, &extra)?;
    let mut surfaces = coordinate_surfaces(form.dim());
    surfaces.push(g.clone());
    integrals_from_exponents(&vf, b.nullspace(Side::Left), &surfaces)
}

/// Checks `sum_i b_i K_i = 0` with each `K_i` obtained by exact division.
pub fn verify_first_integral(vf: &PolyVectorField, integral: &DarbouxIntegral) -> Result<bool> {
    let mut total = Poly::zero(vf.dim());
    for (b, surface) in integral.exponents.iter().zip(&integral.surfaces) {
        let k = cofactor(vf, surface)?
            .ok_or_else(|| Error::NotInvariant(surface.defining().to_string()))?;
        total = &total + &k.poly.scale(b);
    }
    Ok(total.is_zero())
}

/// First integrals `prod x_i^{y_i}` from vectors `y` with `sum y_i alpha_i = 0`
/// and `A~ y = 0`.
pub fn syzygy_first_integral(form: &CubicKolmogorovForm) -> Result<Vec<DarbouxIntegral>> {
    let dim = form.dim();
    let mut rows = vec![form.alpha().to_vec()];
    rows.extend(form.atilde().iter().cloned());
    let m = RationalMatrix::from_rows(rows)?;
    integrals_from_exponents(&form.field(), m.nullspace(Side::Right), &coordinate_surfaces(dim))
}

/// Writes a syzygy `q` of `(x_1^k, ..., x_d^k)` as `q_i = sum_j A_ij x_j^k`
/// with `A` skew-symmetric.
pub fn decompose_syzygy(q: &[Poly], k: u32) -> Result<Vec<Vec<Poly>>> {
    let d = q.len();
    if k == 0 {
        return Err(Error::InvalidInput("power k must be at least 1".into()));
    }
    if let Some(bad) = q.iter().find(|p| p.dim() != d) {
        return Err(Error::DimMismatch {
            expected: d,
            found: bad.dim(),
        });
    }
    let pairing = q
        .iter()
        .enumerate()
        .fold(Poly::zero(d), |acc, (i, p)| &acc + &p.mul_var_pow(i, k));
    if !pairing.is_zero() {
        return Err(Error::NotASyzygy);
    }

    // Peel off the last index: every monomial of q_last lies in the monomial
    // ideal (x_1^k, ..., x_{last-1}^k), so assign it to the smallest such
    // power and push the compensating term into the partner entry.
    let mut work = q.to_vec();
    let mut a = vec![vec![Poly::zero(d); d]; d];
    for last in (0..d).rev() {
        let current = std::mem::replace(&mut work[last], Poly::zero(d));
        for (m, c) in current.terms() {
            let Some(j) = (0..last).find(|&j| m.exponent(j) >= k) else {
                return Err(Error::Internal(format!(
                    "monomial of entry {} outside the pure-power ideal",
                    last + 1
                )));
            };
            let mut e = m.exponents().to_vec();
            e[j] -= k;
            let t = Poly::monomial(d, Monomial::new(e), c.clone());
            a[last][j] = &a[last][j] + &t;
            a[j][last] = &a[j][last] - &t;
            work[j] = &work[j] + &t.mul_var_pow(last, k);
        }
    }

    for (i, qi) in q.iter().enumerate() {
        let rebuilt = (0..d).fold(Poly::zero(d), |acc, j| &acc + &a[i][j].mul_var_pow(j, k));
        if &rebuilt != qi {
            return Err(Error::Internal("syzygy reassembly mismatch".into()));
        }
    }
    Ok(a)
}

/// Canonical-form data (with `f~ = 0`) whose field has the linear function
/// `a0 + sum a_i x_i` as a first integral. `seed` is an `n x n` skew matrix of
/// polynomials in the ambient `n + 1` variables.
pub fn construct_linear_fi_field(hp: &HyperplaneSpec, seed: &[Vec<Poly>]) -> Result<KolmogorovForm> {
    let dim = hp.dim();
    let n = dim.checked_sub(1).ok_or(Error::AllZeroCoefficients)?;
    if seed.len() != n || seed.iter().any(|r| r.len() != n) {
        return Err(Error::DimMismatch {
            expected: n,
            found: seed.len(),
        });
    }
    if seed.iter().flatten().any(|p| p.dim() != dim) {
        return Err(Error::InvalidInput(format!(
            "seed entries must be polynomials in {dim} variables"
        )));
    }
    if seed.iter().flatten().all(Poly::is_zero) {
        return Err(Error::ZeroSeed);
    }
    for i in 0..n {
        for j in i..n {
            if !(&seed[i][j] + &seed[j][i]).is_zero() {
                return Err(Error::NotSkew { row: i + 1, col: j + 1 });
            }
        }
    }
    let a = hp.a();
    let k = a
        .iter()
        .position(|v| !v.is_zero())
        .ok_or(Error::AllZeroCoefficients)?;

    let others: Vec<usize> = (0..dim).filter(|&i| i != k).collect();
    let mut atilde = vec![vec![Poly::zero(dim); dim]; dim];
    for (si, &i) in others.iter().enumerate() {
        for (sj, &j) in others.iter().enumerate() {
            atilde[i][j] = seed[si][sj].mul_var_pow(k, 1);
        }
    }
    let xk = Poly::var(dim, k);
    let scale = -a[k].recip();
    for &j in &others {
        let mut sum = Poly::zero(dim);
        for &i in &others {
            if !a[i].is_zero() {
                sum = &sum + &atilde[i][j].mul_var_pow(i, 1).scale(&a[i]);
            }
        }
        let quotient = sum
            .divide_exact(&xk)?
            .ok_or_else(|| Error::Internal("x_k must divide the row sum".into()))?;
        let entry = quotient.scale(&scale);
        atilde[j][k] = -&entry;
        atilde[k][j] = entry;
    }
    let form = KolmogorovForm::new(vec![Poly::zero(dim); dim], atilde)?;

    let vf = construct_from_form(&form);
    if !lie_derivative(&vf, &hp.polynomial())?.is_zero() {
        return Err(Error::Internal(
            "constructed field does not preserve the linear function".into(),
        ));
    }
    Ok(form)
}

/// Completely integrable degree-`m` Kolmogorov field on `S^n` with its `n`
/// certified polynomial first integrals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteFamily {
    pub field: PolyVectorField,
    pub integrals: Vec<DarbouxIntegral>,
    pub sample_point: Vec<Rational>,
    pub jacobian: RationalMatrix,
    pub jacobian_rank: usize,
}

/// Field `(A x1 x2^2, -A x1^2 x2, 0, ..., 0)` with first integrals
/// `sum x_i^2 - 1` and `x_3, ..., x_{n+1}`.
pub fn construct_completely_integrable(n: usize, m: u32, atilde: &Poly) -> Result<CompleteFamily> {
    let dim = n + 1;
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if atilde.dim() != dim {
        return Err(Error::DimMismatch {
            expected: dim,
            found: atilde.dim(),
        });
    }
    if m < 3 || atilde.is_zero() || atilde.degree() != Degree::Finite(m - 3) {
        return Err(Error::DegreeMismatch(format!(
            "coefficient `{atilde}` has degree {}, field degree {m} needs a nonzero polynomial of degree {}",
            atilde.degree(),
            m.saturating_sub(3)
        )));
    }
    let mut components = vec![Poly::zero(dim); dim];
    let x1x2 = &Poly::var(dim, 0) * &Poly::var(dim, 1);
    components[0] = &(atilde * &x1x2) * &Poly::var(dim, 1);
    components[1] = -&(&(atilde * &x1x2) * &Poly::var(dim, 0));
    let field = PolyVectorField::new(components)?;

    let mut integrals = vec![DarbouxIntegral::polynomial(Poly::sphere(dim, Rational::one()))?];
    for j in 2..dim {
        integrals.push(DarbouxIntegral::polynomial(Poly::var(dim, j))?);
    }
    for h in &integrals {
        let f = h.surfaces[0].defining();
        if !lie_derivative(&field, f)?.is_zero() {
            return Err(Error::Internal(format!("`{f}` is not conserved")));
        }
    }

    let sample_point = vec![Rational::one(); dim];
    let rows = integrals
        .iter()
        .map(|h| {
            let f = h.surfaces[0].defining();
            (0..dim)
                .map(|i| f.differentiate(i)?.evaluate(&sample_point))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let jacobian = RationalMatrix::from_rows(rows)?;
    let jacobian_rank = jacobian.rank();
    if jacobian_rank != n {
        return Err(Error::Internal(format!(
            "Jacobian rank {jacobian_rank} at the sample point, expected {n}"
        )));
    }
    Ok(CompleteFamily {
        field,
        integrals,
        sample_point,
        jacobian,
        jacobian_rank,
    })
}

/// Rows `(x_k dg/dx_k for k != i, ..., -g)` evaluated at each point.
pub fn hypothesis_matrix(g: &Poly, omit: usize, points: &[SamplePoint]) -> Result<RationalMatrix> {
    let dim = g.dim();
    let rows = points
        .iter()
        .map(|z| {
            let z = z.coords();
            let mut row = Vec::with_capacity(dim);
            for k in (0..dim).filter(|&k| k != omit) {
                row.push(&z[k] * g.differentiate(k)?.evaluate(z)?);
            }
            row.push(-g.evaluate(z)?);
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_rows(rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegrabilityCertificate {
    pub rank_b: usize,
    pub matrix_b: RationalMatrix,
    /// One determinant per omitted index `i`, all nonzero.
    pub hypothesis_determinants: Vec<Rational>,
    /// `n` independent first integrals when `rank_b <= 2`, else empty.
    pub integrals: Vec<DarbouxIntegral>,
    pub completely_integrable: bool,
}

/// Complete-integrability test for a cubic canonical field with an extra
/// invariant surface `g`. `samples[i]` holds the `n + 1` points used for the
/// independence hypothesis at omitted index `i`.
pub fn complete_integrability_check(
    form: &CubicKolmogorovForm,
    g: &Hypersurface,
    samples: &[Vec<SamplePoint>],
) -> Result<IntegrabilityCertificate> {
    let dim = form.dim();
    if samples.len() != dim || samples.iter().any(|s| s.len() != dim) {
        return Err(Error::InvalidInput(format!(
            "expected {dim} x {dim} sample points"
        )));
    }
    if samples.iter().flatten().any(|z| z.coords().len() != dim) {
        return Err(Error::DimMismatch {
            expected: dim,
            found: samples
                .iter()
                .flatten()
                .map(|z| z.coords().len())
                .find(|&l| l != dim)
                .unwrap_or(0),
        });
    }
    let vf = form.field();
    let extra = structured_cofactor_of(&vf, g)?;
    let gpoly = g.defining();

    let mut determinants = Vec::with_capacity(dim);
    for (i, points) in samples.iter().enumerate() {
        let gi = gpoly.differentiate(i)?;
        for z in points {
            if gpoly.evaluate(z.coords())?.is_zero() || gi.evaluate(z.coords())?.is_zero() {
                return Err(Error::PreconditionViolated(format!(
                    "g or dg/dx{} vanishes at a sample point for index {}",
                    i + 1,
                    i + 1
                )));
            }
        }
        let m = hypothesis_matrix(gpoly, i, points)?;
        let det = m.determinant()?;
        if det.is_zero() {
            return Err(Error::HypothesisFailed {
                index: i + 1,
                rank: m.rank(),
                expected: dim,
            });
        }
        determinants.push(det);
    }

    let matrix_b = build_matrix_b(form, &extra)?;
    let rank_b = matrix_b.rank();
    let completely_integrable = rank_b <= 2;
    let integrals = if completely_integrable {
        let n = dim - 1;
        let mut basis = matrix_b.nullspace(Side::Left);
        basis.truncate(n);
        if vectors_rank(&basis) != n {
            return Err(Error::Internal("exponent vectors are dependent".into()));
        }
        let mut surfaces = coordinate_surfaces(dim);
        surfaces.push(g.clone());
        integrals_from_exponents(&vf, normalize_basis(basis, dim + 1), &surfaces)?
    } else {
        Vec::new()
    };
    Ok(IntegrabilityCertificate {
        rank_b,
        matrix_b,
        hypothesis_determinants: determinants,
        integrals,
        completely_integrable,
    })
}
