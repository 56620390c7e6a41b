#![allow(clippy::needless_range_loop)]

//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use kolmo_core::certify::{self, instance_rng};
use kolmo_core::darboux::{
    construct_completely_integrable, construct_linear_fi_field, decompose_syzygy, default_samples,
    find_darboux, hypothesis_matrix, syzygy_first_integral, verify_first_integral, DarbouxIntegral,
};
use kolmo_core::exactla::{vectors_rank, RationalMatrix};
use kolmo_core::field_forms::{
    construct_from_form, lie_derivative, recover_cubic_form, CubicKolmogorovForm,
    PolyVectorField,
};
use kolmo_core::hamiltonian::hamiltonian_constraint_space;
use kolmo_core::invariance::{cofactor, HyperplaneSpec, Hypersurface};
use kolmo_core::numeric::{conservation_report, integrate_rk4, NumericConfig, Trajectory};
use kolmo_core::polyring::{format_rational, int, Degree, Poly, Rational};
use kolmo_core::sample::{random_cubic_form, random_homogeneous, random_poly, random_skew_poly, small_rational};
use num_traits::{One, Signed, Zero};
use rand::Rng;

const SEED: u64 = 2024;
const SUITE_INSTANCES: usize = 200;
const STEP: f64 = 1e-3;
const HORIZON: f64 = 10.0;
const DRIFT_TOLERANCE: f64 = 1e-6;
const HALVING_GAIN: f64 = 8.0;
/// Drifts below this are pure roundoff and carry no convergence signal.
const ROUNDOFF_FLOOR: f64 = 1e-12;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }

    fn within(self, elapsed: Duration, budget: Duration) -> Self {
        if elapsed <= budget {
            self
        } else {
            Outcome::new(
                false,
                format!("{} (took {:.2?}, budget {:.0?})", self.detail, elapsed, budget),
            )
        }
    }
}

/// A certified integral to be cross-checked numerically.
struct Certified {
    label: String,
    field: PolyVectorField,
    integral: DarbouxIntegral,
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn suite_outcome(report: certify::SuiteReport) -> Outcome {
    let first = report.failures.first().cloned().unwrap_or_default();
    Outcome::new(
        report.ok(),
        if report.ok() {
            format!("{}/{} instances", report.passed, report.instances)
        } else {
            format!(
                "{}/{} instances; first failure: {first}",
                report.passed, report.instances
            )
        },
    )
}

fn criterion1(certified: &mut Vec<Certified>) -> Outcome {
    // (alpha, beta) = (3, 2).
    let vf = PolyVectorField::parse(
        3,
        &[
            "x1*(2*(1 - x1^2 - x2^2 - x3^2) + 3*x2^2)",
            "-3*x2*(x1^2 + x3^2)",
            "x3*(2*(1 - x1^2 - x2^2 - x3^2) + 3*x2^2)",
        ],
    )
    .unwrap();
    let Some(form) = recover_cubic_form(&vf) else {
        return Outcome::new(false, "cubic form not recovered");
    };
    let expected_form = CubicKolmogorovForm::from_upper(ints(&[2, 0, 2]), &ints(&[3, 0, -3]));
    if form != expected_form {
        return Outcome::new(false, "recovered (alpha, A~) differ from (2,0,2), A~12=3, A~23=-3");
    }
    let sphere = Hypersurface::unit_sphere(3);
    let k = cofactor(&vf, &sphere).unwrap().unwrap();
    let b = kolmo_core::darboux::build_matrix_b(&form, &k).unwrap();
    let expected_b = RationalMatrix::from_i64(&[
        vec![2, -2, 1, -2],
        vec![0, -3, 0, -3],
        vec![2, -2, 1, -2],
        vec![0, -4, 0, -4],
    ]);
    if b != expected_b {
        return Outcome::new(false, format!("B differs:\n{b}"));
    }
    if b.rank() != 2 {
        return Outcome::new(false, format!("rank(B) = {}", b.rank()));
    }
    let found = find_darboux(&form, &sphere).unwrap();
    let vectors: Vec<Vec<Rational>> = found.iter().map(|h| h.exponents().to_vec()).collect();
    let reference = [ints(&[1, 0, -1, 0]), ints(&[0, -4, 0, 3])];
    let mut joint = vectors.clone();
    joint.extend(reference.iter().cloned());
    if vectors.len() != 2 || vectors_rank(&vectors) != 2 || vectors_rank(&joint) != 2 {
        return Outcome::new(false, format!("exponent vectors {vectors:?} do not span the reference plane"));
    }
    // Cofactor identity from independently divided cofactors.
    let mut surfaces: Vec<Hypersurface> = (0..3).map(|i| Hypersurface::coordinate(3, i)).collect();
    surfaces.push(sphere);
    let cofactors: Vec<Poly> = surfaces
        .iter()
        .map(|s| cofactor(&vf, s).unwrap().unwrap().poly)
        .collect();
    for h in &found {
        let total = h
            .exponents()
            .iter()
            .zip(&cofactors)
            .fold(Poly::zero(3), |acc, (y, k)| &acc + &k.scale(y));
        if !total.is_zero() || !verify_first_integral(&vf, h).unwrap() {
            return Outcome::new(false, "cofactor identity fails");
        }
        certified.push(Certified {
            label: format!("example (3,2) exponents {}", fmt_vec(h.exponents())),
            field: vf.clone(),
            integral: h.clone(),
        });
    }
    Outcome::new(
        true,
        format!("rank(B)=2, integrals {}", vectors.iter().map(|v| fmt_vec(v)).collect::<Vec<_>>().join(" and ")),
    )
}

fn fmt_vec(v: &[Rational]) -> String {
    format!("({})", v.iter().map(format_rational).collect::<Vec<_>>().join(","))
}

fn criterion2() -> Outcome {
    for n in 1..=6usize {
        let dim = n + 1;
        let g = Poly::sphere(dim, Rational::one());
        let m = hypothesis_matrix(&g, dim - 1, &default_samples(dim)).unwrap();
        // Pattern: 8 on the diagonal, 2 elsewhere, -(n+3) in the last column.
        for r in 0..dim {
            for c in 0..dim {
                let want = if c == dim - 1 {
                    -int(n as i64 + 3)
                } else if c == r {
                    int(8)
                } else {
                    int(2)
                };
                if m.get(r, c) != &want {
                    return Outcome::new(false, format!("n={n}: entry ({},{}) is {}", r + 1, c + 1, m.get(r, c)));
                }
            }
        }
        let det = m.determinant().unwrap();
        let expected = -Rational::from_integer(num_bigint::BigInt::from(6).pow(n as u32) * (n + 3));
        if det != expected {
            return Outcome::new(false, format!("n={n}: det {} != {}", format_rational(&det), format_rational(&expected)));
        }
    }
    Outcome::new(true, "det(M) = -6^n (n+3) for n = 1..6")
}

fn criterion3() -> Outcome {
    let mut dims = Vec::new();
    let mut witness = String::new();
    for n in 1..=3 {
        let space = hamiltonian_constraint_space(n).unwrap();
        dims.push(format!("n={n}: {}", space.dimension()));
        if space.dimension() > 0 && witness.is_empty() {
            let params: Vec<String> = space
                .parameters
                .iter()
                .zip(&space.basis[0])
                .map(|(p, v)| format!("{p}={}", format_rational(v)))
                .collect();
            witness = format!("; nonzero solution for n={n}: {}", params.join(", "));
        }
    }
    Outcome::new(witness.is_empty(), format!("dimensions [{}]{witness}", dims.join(", ")))
}

fn criterion6() -> Outcome {
    let mut verified = 0;
    for i in 0..SUITE_INSTANCES {
        let mut rng = instance_rng(SEED + 6, i);
        let dim = rng.gen_range(2..=5);
        let form = random_cubic_form(&mut rng, dim);
        // Zero some rows so kernels are nontrivial.
        let mut alpha = form.alpha().to_vec();
        let mut a = form.atilde().to_vec();
        for r in 0..rng.gen_range(0..dim) {
            alpha[r] = Rational::zero();
            for j in 0..dim {
                a[r][j] = Rational::zero();
                a[j][r] = Rational::zero();
            }
        }
        let form = CubicKolmogorovForm::new(alpha, a).unwrap();
        let vf = form.field();
        for h in syzygy_first_integral(&form).unwrap() {
            if !verify_first_integral(&vf, &h).unwrap() {
                return Outcome::new(false, format!("syzygy integral fails on instance {i}"));
            }
            verified += 1;
        }
    }
    for i in 0..SUITE_INSTANCES {
        let mut rng = instance_rng(SEED + 60, i);
        let d = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=3);
        let s = random_skew_poly(&mut rng, d, 2, 3);
        let q: Vec<Poly> = s
            .iter()
            .map(|row| (0..d).fold(Poly::zero(d), |acc, j| &acc + &row[j].mul_var_pow(j, k)))
            .collect();
        let a = match decompose_syzygy(&q, k) {
            Ok(a) => a,
            Err(e) => return Outcome::new(false, format!("syzygy {i}: {e}")),
        };
        for r in 0..d {
            let rebuilt = (0..d).fold(Poly::zero(d), |acc, j| &acc + &a[r][j].mul_var_pow(j, k));
            let skew = (0..d).all(|j| a[r][j] == -&a[j][r]);
            if rebuilt != q[r] || !skew {
                return Outcome::new(false, format!("syzygy {i}: reassembly differs"));
            }
        }
    }
    Outcome::new(
        true,
        format!("{verified} syzygy integrals verified; {SUITE_INSTANCES} syzygies reassembled"),
    )
}

fn gradient_rank(integrals: &[DarbouxIntegral], point: &[Rational]) -> usize {
    let rows: Vec<Vec<Rational>> = integrals
        .iter()
        .map(|h| {
            let f = h.surfaces()[0].defining();
            (0..point.len())
                .map(|i| f.differentiate(i).unwrap().evaluate(point).unwrap())
                .collect()
        })
        .collect();
    RationalMatrix::from_rows(rows).unwrap().rank()
}

fn criterion7(certified: &mut Vec<Certified>) -> Outcome {
    let mut linear = 0;
    for i in 0..100 {
        let mut rng = instance_rng(SEED + 7, i);
        let dim = rng.gen_range(2..=5);
        let seed_degree = rng.gen_range(0..=2);
        let a: Vec<Rational> = (0..dim).map(|_| small_rational(&mut rng, 3)).collect();
        let Ok(hp) = HyperplaneSpec::new(small_rational(&mut rng, 3), a) else {
            continue;
        };
        let n = dim - 1;
        let mut seed = vec![vec![Poly::zero(dim); n]; n];
        for r in 0..n {
            for c in r + 1..n {
                let p = random_poly(&mut rng, dim, seed_degree, 2);
                seed[c][r] = -&p;
                seed[r][c] = p;
            }
        }
        let form = match construct_linear_fi_field(&hp, &seed) {
            Ok(f) => f,
            Err(kolmo_core::Error::ZeroSeed) => continue,
            Err(e) => return Outcome::new(false, format!("linear instance {i}: {e}")),
        };
        let vf = construct_from_form(&form);
        let f = hp.polynomial();
        if !lie_derivative(&vf, &f).unwrap().is_zero() {
            return Outcome::new(false, format!("linear instance {i}: {f} not conserved"));
        }
        if !matches!(vf.degree(), Degree::Finite(m) if m <= 6) {
            return Outcome::new(false, format!("linear instance {i}: degree {}", vf.degree()));
        }
        linear += 1;
        // Positive coordinates make a0 + a.x safely nonzero only when all
        // coefficients share a sign; keep those for the numerical check.
        let signs: Vec<_> = std::iter::once(hp.a0()).chain(hp.a()).filter(|v| !v.is_zero()).collect();
        let same_sign = signs.iter().all(|v| v.is_positive()) || signs.iter().all(|v| v.is_negative());
        if same_sign && certified.iter().filter(|c| c.label.starts_with("linear")).count() < 8 {
            certified.push(Certified {
                label: format!("linear integral {f} (dim {dim})"),
                field: vf,
                integral: DarbouxIntegral::polynomial(f).unwrap(),
            });
        }
    }

    let mut families = 0;
    for n in 1..=4usize {
        for m in 3..=6u32 {
            for rep in 0..3 {
                let mut rng = instance_rng(SEED + 70 + n as u64, (m as usize) * 10 + rep);
                let atilde = random_homogeneous(&mut rng, n + 1, m - 3, 3, false);
                let family = match construct_completely_integrable(n, m, &atilde) {
                    Ok(f) => f,
                    Err(e) => return Outcome::new(false, format!("n={n} m={m}: {e}")),
                };
                for h in &family.integrals {
                    let f = h.surfaces()[0].defining();
                    if !lie_derivative(&family.field, f).unwrap().is_zero() {
                        return Outcome::new(false, format!("n={n} m={m}: {f} not conserved"));
                    }
                }
                let rank = gradient_rank(&family.integrals, &family.sample_point);
                if family.integrals.len() != n || rank != n {
                    return Outcome::new(false, format!("n={n} m={m}: Jacobian rank {rank}"));
                }
                families += 1;
                if rep == 0 {
                    for h in &family.integrals {
                        certified.push(Certified {
                            label: format!("family n={n} m={m} integral {}", h.surfaces()[0].defining()),
                            field: family.field.clone(),
                            integral: h.clone(),
                        });
                    }
                }
            }
        }
    }
    Outcome::new(
        true,
        format!("{linear} linear-integral fields, {families} complete families with Jacobian rank n"),
    )
}

/// Interior starts with coordinates in [0.3, 0.9], off the unit sphere for
/// every dimension used here.
fn start_points(dim: usize) -> [Vec<f64>; 2] {
    [
        vec![0.4; dim],
        (0..dim).map(|i| 0.3 + 0.6 * i as f64 / (dim - 1).max(1) as f64).collect(),
    ]
}

fn drift_at(c: &Certified, x0: &[f64], h: f64, config: &NumericConfig) -> Result<f64, String> {
    let steps = (HORIZON / h).round() as usize;
    let traj: Trajectory = integrate_rk4(&c.field, x0, h, steps).map_err(|e| e.to_string())?;
    conservation_report(&traj, &c.integral, config).map_err(|e| {
        let t = match e {
            kolmo_core::Error::DomainViolation { step, .. } => format!(" at t = {:.3}", step as f64 * h),
            _ => String::new(),
        };
        format!("{e}{t}")
    })
}

fn criterion9(certified: &[Certified]) -> Outcome {
    let config = NumericConfig {
        drift_tolerance: DRIFT_TOLERANCE,
        ..NumericConfig::default()
    };
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for c in certified {
        for x0 in start_points(c.field.dim()) {
            checked += 1;
            let coarse = drift_at(c, &x0, STEP, &config);
            let fine = drift_at(c, &x0, STEP / 2.0, &config);
            let verdict = match (coarse, fine) {
                (Ok(d1), Ok(d2)) => {
                    worst = worst.max(d1);
                    if d1 >= config.drift_tolerance {
                        Some(format!("drift {d1:.2e}"))
                    } else if d1 >= ROUNDOFF_FLOOR && d1 / d2 < HALVING_GAIN {
                        Some(format!("halving gain {:.2} (drift {d1:.2e} -> {d2:.2e})", d1 / d2))
                    } else {
                        None
                    }
                }
                (Err(e), _) | (_, Err(e)) => Some(e),
            };
            if let Some(v) = verdict {
                failures.push(format!("{} from {:?}: {v}", c.label, x0));
            }
        }
    }
    if failures.is_empty() {
        Outcome::new(true, format!("{checked} runs, worst drift {worst:.2e}"))
    } else {
        Outcome::new(
            false,
            format!(
                "{}/{checked} runs fail; {}",
                failures.len(),
                failures.join("; ")
            ),
        )
    }
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let o = f();
    (o, start.elapsed())
}

fn main() -> ExitCode {
    let total = Instant::now();
    let mut certified = Vec::new();
    let mut results: Vec<(usize, &str, Outcome, Duration)> = Vec::new();

    let (o, t) = timed(|| criterion1(&mut certified));
    results.push((1, "example (3,2) end-to-end", o.within(t, Duration::from_secs(1)), t));
    let (o, t) = timed(criterion2);
    results.push((2, "hypothesis determinant", o.within(t, Duration::from_secs(1)), t));
    let (o, t) = timed(criterion3);
    results.push((3, "no Hamiltonian cubic field", o.within(t, Duration::from_secs(10)), t));
    let (o, t) = timed(|| suite_outcome(certify::roundtrip(SEED, SUITE_INSTANCES)));
    results.push((4, "canonical form round trip", o, t));
    let (o, t) = timed(|| suite_outcome(certify::hyperplane_equivalence(SEED, SUITE_INSTANCES)));
    results.push((5, "hyperplane invariance equivalence", o, t));
    let (o, t) = timed(criterion6);
    results.push((6, "syzygy integrals and decomposition", o, t));
    let (o, t) = timed(|| criterion7(&mut certified));
    results.push((7, "first integral constructions", o, t));
    let (o, t) = timed(|| suite_outcome(certify::no_invariant_slices(SEED, SUITE_INSTANCES)));
    results.push((8, "no invariant slices or second spheres", o, t));
    let (o, t) = timed(|| criterion9(&certified));
    results.push((9, "RK4 drift cross-check", o, t));

    let mut all = true;
    for (n, title, o, t) in &results {
        all &= o.pass;
        println!(
            "criterion {n} {}: {title} [{:.2?}] {}",
            if o.pass { "PASS" } else { "FAIL" },
            t,
            o.detail
        );
    }
    let elapsed = total.elapsed();
    let in_budget = elapsed <= Duration::from_secs(120);
    println!(
        "total {:.2?} ({})",
        elapsed,
        if in_budget { "within 2 min" } else { "over 2 min budget" }
    );
    if all && in_budget {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
