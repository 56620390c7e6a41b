//! Polynomial vector fields and the Kolmogorov-on-sphere canonical form
//!
//! A Kolmogorov field `P_i = x_i Q_i` in `R^{n+1}` is tangent to the unit
//! sphere exactly when it can be written as
//!
//! ```text
//! P_i = x_i ( (1 - sum_k x_k^2) f_i + sum_j A_ij x_j^2 ),   A skew-symmetric,
//! ```
//!
//! in which case the sphere's cofactor is `-2 sum_i f_i x_i^2`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{Degree, Monomial, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVectorField {
    dim: usize,
    components: Vec<Poly>,
}

impl PolyVectorField {
    pub fn new(components: Vec<Poly>) -> Result<Self> {
        let dim = components.len();
        if let Some(bad) = components.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(PolyVectorField { dim, components })
    }

    pub fn zero(dim: usize) -> Self {
        PolyVectorField {
            dim,
            components: vec![Poly::zero(dim); dim],
        }
    }

    /// Parses one polynomial per component in ambient dimension `dim`.
    pub fn parse(dim: usize, components: &[&str]) -> Result<Self> {
        if components.len() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                found: components.len(),
            });
        }
        let polys = components
            .iter()
            .map(|c| crate::polyring::parse(c, dim))
            .collect::<Result<Vec<_>>>()?;
        Self::new(polys)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn degree(&self) -> Degree {
        self.components
            .iter()
            .map(Poly::degree)
            .max()
            .unwrap_or(Degree::NegInf)
    }

    pub fn evaluate_f64(&self, point: &[f64], out: &mut [f64]) {
        for (o, p) in out.iter_mut().zip(&self.components) {
            *o = p.evaluate_f64(point);
        }
    }
}

/// `chi f = sum_i P_i * df/dx_i`.
pub fn lie_derivative(vf: &PolyVectorField, f: &Poly) -> Result<Poly> {
    if f.dim() != vf.dim {
        return Err(Error::DimMismatch {
            expected: vf.dim,
            found: f.dim(),
        });
    }
    let mut out = Poly::zero(vf.dim);
    for (i, p) in vf.components.iter().enumerate() {
        let d = f.differentiate(i)?;
        if !d.is_zero() {
            out = &out + &(p * &d);
        }
    }
    Ok(out)
}

fn check_skew<T: PartialEq>(
    matrix: &[Vec<T>],
    dim: usize,
    is_zero: impl Fn(&T) -> bool,
    negated_eq: impl Fn(&T, &T) -> bool,
) -> Result<()> {
    if matrix.len() != dim || matrix.iter().any(|r| r.len() != dim) {
        return Err(Error::DimMismatch {
            expected: dim,
            found: matrix.len(),
        });
    }
    for i in 0..dim {
        if !is_zero(&matrix[i][i]) {
            return Err(Error::NotSkew { row: i + 1, col: i + 1 });
        }
        for j in i + 1..dim {
            if !negated_eq(&matrix[i][j], &matrix[j][i]) {
                return Err(Error::NotSkew { row: i + 1, col: j + 1 });
            }
        }
    }
    Ok(())
}

/// General canonical-form data: polynomial `f~_i` and skew `A~_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KolmogorovForm {
    dim: usize,
    ftilde: Vec<Poly>,
    atilde: Vec<Vec<Poly>>,
}

impl KolmogorovForm {
    pub fn new(ftilde: Vec<Poly>, atilde: Vec<Vec<Poly>>) -> Result<Self> {
        let dim = ftilde.len();
        for p in ftilde.iter().chain(atilde.iter().flatten()) {
            if p.dim() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
        }
        check_skew(&atilde, dim, Poly::is_zero, |a, b| (a + b).is_zero())?;
        Ok(KolmogorovForm { dim, ftilde, atilde })
    }

    /// Builds a skew matrix from its strict upper triangle, indexed `(i, j)`
    /// with `i < j` in row-major order.
    pub fn skew_from_upper(dim: usize, upper: &[Poly]) -> Vec<Vec<Poly>> {
        let mut a = vec![vec![Poly::zero(dim); dim]; dim];
        let mut it = upper.iter();
        for i in 0..dim {
            for j in i + 1..dim {
                let v = it.next().expect("too few upper-triangle entries").clone();
                a[j][i] = -&v;
                a[i][j] = v;
            }
        }
        a
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ftilde(&self) -> &[Poly] {
        &self.ftilde
    }

    pub fn atilde(&self) -> &[Vec<Poly>] {
        &self.atilde
    }

    /// Cofactor of the unit sphere for the assembled field.
    pub fn sphere_cofactor(&self) -> Poly {
        let mut k = Poly::zero(self.dim);
        for (i, f) in self.ftilde.iter().enumerate() {
            k = &k + &f.mul_var_pow(i, 2);
        }
        k.scale(&Rational::from_integer((-2).into()))
    }
}

/// Cubic canonical form: constant `alpha_i` and constant skew `A~`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicKolmogorovForm {
    dim: usize,
    alpha: Vec<Rational>,
    atilde: Vec<Vec<Rational>>,
}

impl CubicKolmogorovForm {
    pub fn new(alpha: Vec<Rational>, atilde: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = alpha.len();
        check_skew(&atilde, dim, Zero::is_zero, |a, b| (a + b).is_zero())?;
        Ok(CubicKolmogorovForm { dim, alpha, atilde })
    }

    pub fn skew_from_upper(dim: usize, upper: &[Rational]) -> Vec<Vec<Rational>> {
        let mut a = vec![vec![Rational::zero(); dim]; dim];
        let mut it = upper.iter();
        for i in 0..dim {
            for j in i + 1..dim {
                let v = it.next().expect("too few upper-triangle entries").clone();
                a[j][i] = -v.clone();
                a[i][j] = v;
            }
        }
        a
    }

    pub fn from_upper(alpha: Vec<Rational>, upper: &[Rational]) -> Self {
        let dim = alpha.len();
        let atilde = Self::skew_from_upper(dim, upper);
        CubicKolmogorovForm { dim, alpha, atilde }
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_upper(vec![Rational::zero(); dim], &vec![Rational::zero(); dim * dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn atilde(&self) -> &[Vec<Rational>] {
        &self.atilde
    }

    pub fn a(&self, i: usize, j: usize) -> &Rational {
        &self.atilde[i][j]
    }

    pub fn is_homogeneous(&self) -> bool {
        self.alpha.iter().all(Zero::is_zero)
    }

    pub fn to_form(&self) -> KolmogorovForm {
        let dim = self.dim;
        KolmogorovForm {
            dim,
            ftilde: self
                .alpha
                .iter()
                .map(|a| Poly::constant(dim, a.clone()))
                .collect(),
            atilde: self
                .atilde
                .iter()
                .map(|row| row.iter().map(|a| Poly::constant(dim, a.clone())).collect())
                .collect(),
        }
    }

    pub fn field(&self) -> PolyVectorField {
        construct_from_form(&self.to_form())
    }

    /// Cofactor `K_i = alpha_i + sum_j (A~_ij - alpha_i) x_j^2` of the
    /// coordinate hyperplane `x_i = 0`.
    pub fn coordinate_cofactor(&self, i: usize) -> Poly {
        let dim = self.dim;
        let mut k = Poly::constant(dim, self.alpha[i].clone());
        for j in 0..dim {
            let c = &self.atilde[i][j] - &self.alpha[i];
            k = &k + &Poly::monomial(dim, Monomial::var(dim, j, 2), c);
        }
        k
    }
}

/// Assembles `P_i = x_i((1 - sum x_k^2) f~_i + sum_j A~_ij x_j^2)`.
pub fn construct_from_form(form: &KolmogorovForm) -> PolyVectorField {
    let dim = form.dim;
    let one_minus_sphere = -Poly::sphere(dim, Rational::one());
    let components = (0..dim)
        .map(|i| {
            let mut inner = &one_minus_sphere * &form.ftilde[i];
            for j in 0..dim {
                if !form.atilde[i][j].is_zero() {
                    inner = &inner + &form.atilde[i][j].mul_var_pow(j, 2);
                }
            }
            inner.mul_var_pow(i, 1)
        })
        .collect();
    PolyVectorField { dim, components }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereReport {
    pub kolmogorov: bool,
    /// `Q_i = P_i / x_i` when the field is Kolmogorov.
    pub quotients: Option<Vec<Poly>>,
    pub sphere_invariant: bool,
    /// `K` with `chi(sum x^2 - 1) = K (sum x^2 - 1)` when it exists.
    pub sphere_cofactor: Option<Poly>,
}

impl SphereReport {
    pub fn on_sphere(&self) -> bool {
        self.kolmogorov && self.sphere_invariant
    }
}

/// Kolmogorov quotients `Q_i = P_i / x_i`, if every division is exact.
pub fn kolmogorov_quotients(vf: &PolyVectorField) -> Option<Vec<Poly>> {
    vf.components
        .iter()
        .enumerate()
        .map(|(i, p)| {
            p.divide_exact(&Poly::var(vf.dim, i))
                .expect("dimensions agree by construction")
        })
        .collect()
}

/// Decides whether the field is Kolmogorov and tangent to the unit sphere.
pub fn is_kolmogorov_on_sphere(vf: &PolyVectorField) -> SphereReport {
    let quotients = kolmogorov_quotients(vf);
    let sphere = Poly::sphere(vf.dim, Rational::one());
    let chi = lie_derivative(vf, &sphere).expect("dimensions agree by construction");
    let sphere_cofactor = chi
        .divide_exact(&sphere)
        .expect("sphere is nonzero and of matching dimension");
    SphereReport {
        kolmogorov: quotients.is_some(),
        quotients,
        sphere_invariant: sphere_cofactor.is_some(),
        sphere_cofactor,
    }
}

/// Recovers `(alpha, A~)` from a field of cubic canonical shape.
pub fn recover_cubic_form(vf: &PolyVectorField) -> Option<CubicKolmogorovForm> {
    let dim = vf.dim;
    let quotients = kolmogorov_quotients(vf)?;
    let mut alpha = Vec::with_capacity(dim);
    let mut atilde = vec![vec![Rational::zero(); dim]; dim];
    for (i, q) in quotients.iter().enumerate() {
        let mut squares = vec![Rational::zero(); dim];
        let mut constant = Rational::zero();
        for (m, c) in q.terms() {
            if m.is_one() {
                constant = c.clone();
            } else if let Some((j, 2)) = m.as_pure_power() {
                squares[j] = c.clone();
            } else {
                return None;
            }
        }
        if squares[i] != -constant.clone() {
            return None;
        }
        for j in 0..dim {
            if j != i {
                atilde[i][j] = &squares[j] + &constant;
            }
        }
        alpha.push(constant);
    }
    CubicKolmogorovForm::new(alpha, atilde).ok()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousReport {
    /// Every nonzero component is homogeneous of one shared degree.
    pub homogeneous: bool,
    pub degree: Option<u32>,
    pub kolmogorov: bool,
    /// `sum_i P_i x_i == 0`.
    pub tangent: bool,
}

impl HomogeneousReport {
    pub fn passes(&self) -> bool {
        self.homogeneous && self.kolmogorov && self.tangent
    }
}

/// Tests for a homogeneous Kolmogorov field on the sphere, i.e.
/// `P_i = x_i sum_j A~_ij x_j^2` with homogeneous skew `A~`.
pub fn classify_homogeneous(vf: &PolyVectorField) -> HomogeneousReport {
    let mut degree = None;
    let mut homogeneous = true;
    for p in vf.components.iter().filter(|p| !p.is_zero()) {
        let d = p.degree().finite().expect("nonzero");
        if !p.is_homogeneous() || degree.is_some_and(|e| e != d) {
            homogeneous = false;
        }
        degree.get_or_insert(d);
    }
    if degree.is_none() {
        homogeneous = false;
    }
    let mut radial = Poly::zero(vf.dim);
    for (i, p) in vf.components.iter().enumerate() {
        radial = &radial + &p.mul_var_pow(i, 1);
    }
    HomogeneousReport {
        homogeneous,
        degree: if homogeneous { degree } else { None },
        kolmogorov: kolmogorov_quotients(vf).is_some(),
        tangent: radial.is_zero(),
    }
}
