//! Invariant hypersurfaces and their cofactors.
//!
//! A hypersurface `f = 0` is invariant for `chi` when `f` divides `chi f`;
//! the quotient is the cofactor. Everything here is decided by exact
//! division, and the structural hyperplane/sphere criteria for cubic
//! canonical fields are cross-checked against it.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field_forms::{classify_homogeneous, lie_derivative, CubicKolmogorovForm, PolyVectorField};
use crate::polyring::{format_rational, Poly, Rational};

/// Zero set of a nonconstant polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypersurface {
    defining: Poly,
}

impl Hypersurface {
    pub fn new(defining: Poly) -> Result<Self> {
        if defining.is_constant() {
            return Err(Error::PreconditionViolated(format!(
                "hypersurface polynomial `{defining}` is constant"
            )));
        }
        Ok(Hypersurface { defining })
    }

    pub fn coordinate(dim: usize, index: usize) -> Self {
        Hypersurface {
            defining: Poly::var(dim, index),
        }
    }

    pub fn unit_sphere(dim: usize) -> Self {
        Hypersurface {
            defining: Poly::sphere(dim, Rational::one()),
        }
    }

    pub fn defining(&self) -> &Poly {
        &self.defining
    }

    pub fn dim(&self) -> usize {
        self.defining.dim()
    }
}

/// `k0 + sum_i k_i x_i^2` view of a cofactor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredCofactor {
    pub k0: Rational,
    pub k: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cofactor {
    pub poly: Poly,
    pub structured: Option<StructuredCofactor>,
}

impl Cofactor {
    pub fn from_poly(poly: Poly) -> Self {
        let dim = poly.dim();
        let mut k0 = Rational::zero();
        let mut k = vec![Rational::zero(); dim];
        let mut shaped = true;
        for (m, c) in poly.terms() {
            if m.is_one() {
                k0 = c.clone();
            } else if let Some((i, 2)) = m.as_pure_power() {
                k[i] = c.clone();
            } else {
                shaped = false;
                break;
            }
        }
        Cofactor {
            structured: shaped.then_some(StructuredCofactor { k0, k }),
            poly,
        }
    }
}

/// Hyperplane `a0 + sum a_i x_i = 0`, optionally carrying the offset `d` of
/// a sphere slice `{sum a_i x_i = d}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplaneSpec {
    a0: Rational,
    a: Vec<Rational>,
    offset_d: Option<Rational>,
}

impl HyperplaneSpec {
    pub fn new(a0: Rational, a: Vec<Rational>) -> Result<Self> {
        if a.iter().all(Zero::is_zero) {
            return Err(Error::AllZeroCoefficients);
        }
        Ok(HyperplaneSpec {
            a0,
            a,
            offset_d: None,
        })
    }

    pub fn with_offset(mut self, d: Rational) -> Self {
        self.offset_d = Some(d);
        self
    }

    pub fn a0(&self) -> &Rational {
        &self.a0
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    pub fn offset_d(&self) -> Option<&Rational> {
        self.offset_d.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn polynomial(&self) -> Poly {
        Poly::linear(&self.a0, &self.a)
    }
}

/// Exact cofactor `chi f / f`, or `None` when `f` is not invariant.
pub fn cofactor(vf: &PolyVectorField, h: &Hypersurface) -> Result<Option<Cofactor>> {
    let chi = lie_derivative(vf, h.defining())?;
    Ok(chi
        .divide_exact(h.defining())?
        .map(Cofactor::from_poly))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HyperplaneCase {
    /// `a0 != 0`: `k0 = 0`, `a_i alpha_i = 0`, `a_i A~_ij = 0`, `k = 0`.
    AffineFixed,
    /// `a0 = 0`: all active `alpha_i` equal `k0` and the active rows of `A~`
    /// coincide.
    ThroughOrigin,
    NotInvariant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplaneReport {
    pub case: HyperplaneCase,
    /// Cofactor from direct exact division (present whenever the hyperplane
    /// is invariant, structured or not).
    pub cofactor: Option<Cofactor>,
}

impl HyperplaneReport {
    pub fn invariant(&self) -> bool {
        self.case != HyperplaneCase::NotInvariant
    }
}

/// Structural prediction of invariance with a `k0 + sum k_i x_i^2` cofactor;
/// returns the predicted `(k0, k)`.
fn predict_hyperplane(
    form: &CubicKolmogorovForm,
    hp: &HyperplaneSpec,
) -> Option<(HyperplaneCase, StructuredCofactor)> {
    let dim = form.dim();
    let alpha = form.alpha();
    let active: Vec<usize> = (0..dim).filter(|&i| !hp.a[i].is_zero()).collect();
    if !hp.a0.is_zero() {
        let ok = active
            .iter()
            .all(|&i| alpha[i].is_zero() && (0..dim).all(|j| form.a(i, j).is_zero()));
        return ok.then(|| {
            (
                HyperplaneCase::AffineFixed,
                StructuredCofactor {
                    k0: Rational::zero(),
                    k: vec![Rational::zero(); dim],
                },
            )
        });
    }
    let first = *active.first()?;
    let k0 = alpha[first].clone();
    for &i in &active {
        if alpha[i] != k0 {
            return None;
        }
        for &j in &active {
            if !form.a(i, j).is_zero() {
                return None;
            }
        }
        if (0..dim).any(|j| form.a(i, j) != form.a(first, j)) {
            return None;
        }
    }
    let k = (0..dim).map(|j| form.a(first, j) - &k0).collect();
    Some((HyperplaneCase::ThroughOrigin, StructuredCofactor { k0, k }))
}

/// Decides invariance of a hyperplane with a structured cofactor for a cubic
/// canonical field, checking the structural conditions against exact
/// division.
pub fn classify_hyperplane(
    form: &CubicKolmogorovForm,
    hp: &HyperplaneSpec,
) -> Result<HyperplaneReport> {
    if hp.dim() != form.dim() {
        return Err(Error::DimMismatch {
            expected: form.dim(),
            found: hp.dim(),
        });
    }
    let nonzero = std::iter::once(&hp.a0)
        .chain(&hp.a)
        .filter(|v| !v.is_zero())
        .count();
    if nonzero < 2 {
        return Err(Error::PreconditionViolated(
            "hyperplane needs at least two nonzero coefficients among a0..a_n+1".into(),
        ));
    }

    let predicted = predict_hyperplane(form, hp);
    let surface = Hypersurface::new(hp.polynomial())?;
    let direct = cofactor(&form.field(), &surface)?;
    let direct_structured = direct.as_ref().and_then(|c| c.structured.as_ref());

    match (&predicted, direct_structured) {
        (Some((case, k)), Some(found)) => {
            if k != found {
                return Err(Error::Internal(format!(
                    "predicted cofactor k0={} differs from exact cofactor {}",
                    format_rational(&k.k0),
                    direct.as_ref().map(|c| c.poly.to_string()).unwrap_or_default()
                )));
            }
            Ok(HyperplaneReport {
                case: *case,
                cofactor: direct,
            })
        }
        (None, None) => Ok(HyperplaneReport {
            case: HyperplaneCase::NotInvariant,
            cofactor: direct,
        }),
        (Some(_), None) => Err(Error::Internal(
            "structural conditions hold but exact division finds no structured cofactor".into(),
        )),
        (None, Some(_)) => Err(Error::Internal(
            "exact division finds a structured cofactor but structural conditions fail".into(),
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreatSphereReport {
    pub cofactor: Poly,
    /// `sum_{i,j} a_i A~_ij`.
    pub lhs: Rational,
    /// `(a_1 + ... + a_{n+1}) * K(1, ..., 1)`.
    pub rhs: Rational,
    /// `K(a_1, ..., a_{n+1})`.
    pub k_at_a: Rational,
}

impl GreatSphereReport {
    pub fn condition_sum(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn condition_vanishing(&self) -> bool {
        self.k_at_a.is_zero()
    }
}

/// Necessary conditions satisfied by an invariant hyperplane through the
/// origin of a homogeneous cubic field on the sphere.
pub fn great_sphere_conditions(
    form: &CubicKolmogorovForm,
    hp: &HyperplaneSpec,
) -> Result<GreatSphereReport> {
    if !form.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if !hp.a0.is_zero() {
        return Err(Error::PreconditionViolated(
            "hyperplane must pass through the origin (a0 = 0)".into(),
        ));
    }
    if hp.dim() != form.dim() {
        return Err(Error::DimMismatch {
            expected: form.dim(),
            found: hp.dim(),
        });
    }
    let surface = Hypersurface::new(hp.polynomial())?;
    let k = cofactor(&form.field(), &surface)?
        .ok_or_else(|| Error::NotInvariant(surface.defining().to_string()))?
        .poly;
    let dim = form.dim();
    let mut lhs = Rational::zero();
    for i in 0..dim {
        for j in 0..dim {
            lhs += &hp.a[i] * form.a(i, j);
        }
    }
    let a_sum: Rational = hp.a.iter().sum();
    let rhs = a_sum * k.evaluate(&vec![Rational::one(); dim])?;
    let k_at_a = k.evaluate(&hp.a)?;
    Ok(GreatSphereReport {
        cofactor: k,
        lhs,
        rhs,
        k_at_a,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeReport {
    /// `(sum a_i x_i)^2 - d^2 sum x_i^2`.
    pub cone: Poly,
    pub cofactor: Option<Poly>,
}

impl ConeReport {
    pub fn invariant(&self) -> bool {
        self.cofactor.is_some()
    }
}

/// Invariance of the cone over the slice `{sum a_i x_i = d}` of the sphere,
/// which for homogeneous fields decides invariance of the slice itself. A
/// missing offset is read as `d = 0`.
pub fn cone_invariance(vf: &PolyVectorField, hp: &HyperplaneSpec) -> Result<ConeReport> {
    if hp.dim() != vf.dim() {
        return Err(Error::DimMismatch {
            expected: vf.dim(),
            found: hp.dim(),
        });
    }
    if !classify_homogeneous(vf).passes() {
        return Err(Error::NotHomogeneous);
    }
    let dim = vf.dim();
    let d = hp.offset_d.clone().unwrap_or_else(Rational::zero);
    let linear = Poly::linear(&Rational::zero(), &hp.a);
    let cone = &linear.pow(2) - &Poly::sphere(dim, Rational::zero()).scale(&(&d * &d));
    let chi = lie_derivative(vf, &cone)?;
    let cofactor = chi.divide_exact(&cone)?;
    Ok(ConeReport { cone, cofactor })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondSphereReport {
    pub invariant: bool,
    pub cofactor: Option<Poly>,
}

/// Invariance of the sphere `sum x_i^2 = r^2` (`r != 0, +-1`) for a cubic
/// canonical field. An invariant second sphere forces `alpha = 0` and a zero
/// cofactor; a violation is reported as an internal error.
pub fn second_sphere_check(form: &CubicKolmogorovForm, r: &Rational) -> Result<SecondSphereReport> {
    if r.is_zero() || r.is_one() || *r == -Rational::one() {
        return Err(Error::BadRadius(format_rational(r)));
    }
    let sphere = Hypersurface::new(Poly::sphere(form.dim(), r * r))?;
    let cofactor = cofactor(&form.field(), &sphere)?.map(|c| c.poly);
    if let Some(k) = &cofactor {
        if !form.is_homogeneous() || !k.is_zero() {
            return Err(Error::Internal(format!(
                "sphere of radius {} invariant with cofactor {k} for a non-homogeneous field",
                format_rational(r)
            )));
        }
    }
    Ok(SecondSphereReport {
        invariant: cofactor.is_some(),
        cofactor,
    })
}
