//! Fixed-step RK4 trajectories and drift of certified first integrals.

use std::fmt::Write as _;

use crate::darboux::DarbouxIntegral;
use crate::error::{Error, Result};
use crate::field_forms::PolyVectorField;
use crate::polyring::{to_f64, Poly};

/// Floating-point copy of a polynomial for fast repeated evaluation.
#[derive(Debug, Clone)]
pub struct CompiledPoly {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
}

impl CompiledPoly {
    pub fn new(p: &Poly) -> Self {
        CompiledPoly {
            terms: p
                .terms()
                .map(|(m, c)| {
                    let powers = m
                        .exponents()
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(i, &e)| (i, e as i32))
                        .collect();
                    (to_f64(c), powers)
                })
                .collect(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, powers)| {
                powers
                    .iter()
                    .fold(*c, |acc, &(i, e)| acc * x[i].powi(e))
            })
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericConfig {
    /// Smallest admissible `|f_i(x)|` when evaluating `log |f_i|`.
    pub floor: f64,
    /// Maximum relative drift accepted for a certified integral.
    pub drift_tolerance: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            floor: 1e-12,
            drift_tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub step: f64,
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn dim(&self) -> usize {
        self.states.first().map_or(0, Vec::len)
    }

    /// CSV with header `t,x1,...,xd`, values to 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t");
        for i in 1..=self.dim() {
            let _ = write!(out, ",x{i}");
        }
        out.push('\n');
        for (t, x) in self.times.iter().zip(&self.states) {
            let _ = write!(out, "{t:.16e}");
            for v in x {
                let _ = write!(out, ",{v:.16e}");
            }
            out.push('\n');
        }
        out
    }
}

pub fn integrate_rk4(vf: &PolyVectorField, x0: &[f64], h: f64, steps: usize) -> Result<Trajectory> {
    let dim = vf.dim();
    if x0.len() != dim {
        return Err(Error::DimMismatch {
            expected: dim,
            found: x0.len(),
        });
    }
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::InvalidInput(format!("step size {h} must be positive")));
    }
    if steps == 0 {
        return Err(Error::InvalidInput("at least one step is required".into()));
    }
    let field: Vec<CompiledPoly> = vf.components().iter().map(CompiledPoly::new).collect();
    let rhs = |x: &[f64], out: &mut [f64]| {
        for (o, p) in out.iter_mut().zip(&field) {
            *o = p.eval(x);
        }
    };

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut x = x0.to_vec();
    let (mut k1, mut k2, mut k3, mut k4) =
        (vec![0.0; dim], vec![0.0; dim], vec![0.0; dim], vec![0.0; dim]);
    let mut tmp = vec![0.0; dim];
    times.push(0.0);
    states.push(x.clone());
    for step in 1..=steps {
        rhs(&x, &mut k1);
        for i in 0..dim {
            tmp[i] = x[i] + 0.5 * h * k1[i];
        }
        rhs(&tmp, &mut k2);
        for i in 0..dim {
            tmp[i] = x[i] + 0.5 * h * k2[i];
        }
        rhs(&tmp, &mut k3);
        for i in 0..dim {
            tmp[i] = x[i] + h * k3[i];
        }
        rhs(&tmp, &mut k4);
        for i in 0..dim {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { step });
        }
        times.push(step as f64 * h);
        states.push(x.clone());
    }
    Ok(Trajectory {
        step: h,
        times,
        states,
    })
}

/// `max_t |L(t) - L(0)| / max(1, |L(0)|)` with `L = sum b_i log |f_i|`.
pub fn conservation_report(
    traj: &Trajectory,
    integral: &DarbouxIntegral,
    config: &NumericConfig,
) -> Result<f64> {
    let surfaces: Vec<CompiledPoly> = integral
        .surfaces()
        .iter()
        .map(|s| CompiledPoly::new(s.defining()))
        .collect();
    let weights: Vec<f64> = integral.exponents().iter().map(to_f64).collect();
    let log_value = |step: usize, x: &[f64]| -> Result<f64> {
        let mut total = 0.0;
        for (surface, (f, b)) in surfaces.iter().zip(&weights).enumerate() {
            if *b == 0.0 {
                continue;
            }
            let v = f.eval(x).abs();
            if v < config.floor {
                return Err(Error::DomainViolation { step, surface: surface + 1 });
            }
            total += b * v.ln();
        }
        Ok(total)
    };
    let Some(first) = traj.states.first() else {
        return Ok(0.0);
    };
    let l0 = log_value(0, first)?;
    let scale = l0.abs().max(1.0);
    let mut drift: f64 = 0.0;
    for (step, x) in traj.states.iter().enumerate().skip(1) {
        drift = drift.max((log_value(step, x)? - l0).abs() / scale);
    }
    Ok(drift)
}

/// Max of `|f(x(t)) - f(x(0))|` for a plain polynomial (e.g. a sphere
/// residual).
pub fn residual_drift(traj: &Trajectory, f: &Poly) -> f64 {
    let f = CompiledPoly::new(f);
    let Some(first) = traj.states.first() else {
        return 0.0;
    };
    let f0 = f.eval(first);
    traj.states
        .iter()
        .map(|x| (f.eval(x) - f0).abs())
        .fold(0.0, f64::max)
}
