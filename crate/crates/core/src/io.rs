//! JSON file formats: vector fields, cubic canonical forms, skew seeds and
//! integrability certificates. Rationals travel as `"p/q"` strings.

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::darboux::{DarbouxIntegral, IntegrabilityCertificate};
use crate::error::{Error, Result};
use crate::field_forms::{CubicKolmogorovForm, PolyVectorField};
use crate::polyring::{format_rational, parse, parse_rational, Poly, Rational};

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

fn rationals(texts: &[String]) -> Result<Vec<Rational>> {
    texts.iter().map(|t| parse_rational(t)).collect()
}

fn texts(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimMismatch { expected, found })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldFile {
    pub dim: usize,
    pub components: Vec<String>,
}

impl FieldFile {
    pub fn to_field(&self) -> Result<PolyVectorField> {
        check_len(self.dim, self.components.len())?;
        let texts: Vec<&str> = self.components.iter().map(String::as_str).collect();
        PolyVectorField::parse(self.dim, &texts)
    }

    pub fn from_field(vf: &PolyVectorField) -> Self {
        FieldFile {
            dim: vf.dim(),
            components: vf.components().iter().map(Poly::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    pub dim: usize,
    pub alpha: Vec<String>,
    pub atilde: Vec<Vec<String>>,
}

impl FormFile {
    pub fn to_form(&self) -> Result<CubicKolmogorovForm> {
        check_len(self.dim, self.alpha.len())?;
        check_len(self.dim, self.atilde.len())?;
        for row in &self.atilde {
            check_len(self.dim, row.len())?;
        }
        let atilde = self
            .atilde
            .iter()
            .map(|row| rationals(row))
            .collect::<Result<Vec<_>>>()?;
        CubicKolmogorovForm::new(rationals(&self.alpha)?, atilde)
    }

    pub fn from_form(form: &CubicKolmogorovForm) -> Self {
        FormFile {
            dim: form.dim(),
            alpha: texts(form.alpha()),
            atilde: form.atilde().iter().map(|r| texts(r)).collect(),
        }
    }
}

/// Skew seed matrix `(A~_ij)` for the linear first integral construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedFile {
    pub dim: usize,
    pub entries: Vec<Vec<String>>,
}

impl SeedFile {
    pub fn to_seed(&self) -> Result<Vec<Vec<Poly>>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|t| parse(t, self.dim)).collect())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegralRecord {
    pub exponents: Vec<String>,
    pub surfaces: Vec<String>,
}

impl IntegralRecord {
    pub fn from_integral(h: &DarbouxIntegral) -> Self {
        IntegralRecord {
            exponents: texts(h.exponents()),
            surfaces: h
                .surfaces()
                .iter()
                .map(|s| s.defining().to_string())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypothesisRecord {
    pub checked: bool,
    pub determinants: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    #[serde(rename = "rank_B")]
    pub rank_b: usize,
    pub integrals: Vec<IntegralRecord>,
    pub hypothesis: HypothesisRecord,
}

impl CertificateFile {
    pub fn from_certificate(cert: &IntegrabilityCertificate) -> Self {
        CertificateFile {
            rank_b: cert.rank_b,
            integrals: cert.integrals.iter().map(IntegralRecord::from_integral).collect(),
            hypothesis: HypothesisRecord {
                checked: true,
                determinants: texts(&cert.hypothesis_determinants),
            },
        }
    }
}
