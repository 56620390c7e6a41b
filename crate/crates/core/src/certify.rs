//! Randomized and exhaustive certification suites with per-instance seeds.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::darboux::{default_samples, hypothesis_matrix};
use crate::error::{Error, Result};
use crate::field_forms::{
    construct_from_form, is_kolmogorov_on_sphere, lie_derivative, recover_cubic_form,
    CubicKolmogorovForm, KolmogorovForm,
};
use crate::hamiltonian::hamiltonian_constraint_space;
use crate::invariance::{
    classify_hyperplane, cofactor, cone_invariance, second_sphere_check, HyperplaneCase,
    HyperplaneSpec, Hypersurface,
};
use crate::polyring::{format_rational, int, rat, Poly, Rational};
use crate::sample::{nonzero_rational, random_cubic_form, random_form, random_homogeneous_skew, small_rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Roundtrip,
    Hyperplane,
    Hamiltonian,
    Determinant,
    Slices,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Roundtrip, Suite::Hyperplane, Suite::Hamiltonian, Suite::Determinant, Suite::Slices];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Roundtrip => "roundtrip",
            Suite::Hyperplane => "thm41",
            Suite::Hamiltonian => "thm13",
            Suite::Determinant => "cor44",
            Suite::Slices => "thm37",
        }
    }

    pub fn from_name(name: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite `{name}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub instances: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, seed: u64) -> Self {
        SuiteReport {
            suite: suite.name().into(),
            seed,
            instances: 0,
            passed: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, outcome: Result<()>, label: impl FnOnce() -> String) {
        self.instances += 1;
        match outcome {
            Ok(()) => self.passed += 1,
            Err(e) => self.failures.push(format!("{}: {e}", label())),
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Independent generator for instance `i` of a run seeded with `seed`.
pub fn instance_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

pub fn run(suite: Suite, seed: u64, instances: usize) -> SuiteReport {
    match suite {
        Suite::Roundtrip => roundtrip(seed, instances),
        Suite::Hyperplane => hyperplane_equivalence(seed, instances),
        Suite::Hamiltonian => no_hamiltonian_cubic(seed),
        Suite::Determinant => hypothesis_determinants(seed),
        Suite::Slices => no_invariant_slices(seed, instances),
    }
}

fn fail(msg: impl Into<String>) -> Result<()> {
    Err(Error::CheckFailed(msg.into()))
}

/// Canonical forms of dimension 2..=5 and degree 3..=6 assemble into
/// Kolmogorov fields tangent to the sphere with cofactor `-2 sum f~_i x_i^2`;
/// odd-numbered instances are cubic and must be recovered exactly.
pub fn roundtrip(seed: u64, instances: usize) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Roundtrip, seed);
    for i in 0..instances {
        let mut rng = instance_rng(seed, i);
        let dim = rng.gen_range(2..=5);
        let m = rng.gen_range(3..=6);
        let cubic = i % 2 == 1;
        #[allow(clippy::redundant_closure_call)]
        let outcome = (|| {
            let (form, expected_cubic) = if cubic {
                let c = random_cubic_form(&mut rng, dim);
                (c.to_form(), Some(c))
            } else {
                (random_form(&mut rng, dim, m), None)
            };
            check_roundtrip(&form, expected_cubic.as_ref())
        })();
        report.record(outcome, || format!("instance {i} (dim {dim}, m {m})"));
    }
    report
}

fn check_roundtrip(form: &KolmogorovForm, cubic: Option<&CubicKolmogorovForm>) -> Result<()> {
    let dim = form.dim();
    let vf = construct_from_form(form);
    let report = is_kolmogorov_on_sphere(&vf);
    if !report.on_sphere() {
        return fail("assembled field is not Kolmogorov on the sphere");
    }
    let mut expected = Poly::zero(dim);
    for (i, f) in form.ftilde().iter().enumerate() {
        expected = &expected + &f.mul_var_pow(i, 2);
    }
    let expected = expected.scale(&int(-2));
    let direct = cofactor(&vf, &Hypersurface::unit_sphere(dim))?
        .ok_or_else(|| Error::CheckFailed("sphere not invariant".into()))?;
    if direct.poly != expected || report.sphere_cofactor.as_ref() != Some(&expected) {
        return fail(format!("sphere cofactor {} differs from {expected}", direct.poly));
    }
    if let Some(c) = cubic {
        if recover_cubic_form(&vf).as_ref() != Some(c) {
            return fail("cubic form does not round-trip");
        }
    }
    Ok(())
}

/// Random cubic form and hyperplane satisfying the structural conditions of
/// case (i) (`a0 != 0`) or case (ii) (`a0 = 0`).
pub struct HyperplaneInstance {
    pub form: CubicKolmogorovForm,
    pub hp: HyperplaneSpec,
    pub active: Vec<usize>,
    pub k0: Rational,
    pub k: Vec<Rational>,
}

pub fn random_hyperplane_instance<R: Rng + ?Sized>(rng: &mut R, affine: bool) -> HyperplaneInstance {
    let dim = rng.gen_range(if affine { 2 } else { 3 }..=5);
    let size = if affine {
        rng.gen_range(1..dim)
    } else {
        rng.gen_range(2..dim)
    };
    let mut indices: Vec<usize> = (0..dim).collect();
    indices.shuffle(rng);
    let mut active = indices[..size].to_vec();
    active.sort_unstable();

    let mut alpha: Vec<Rational> = (0..dim).map(|_| small_rational(rng, 4)).collect();
    let mut a = vec![vec![Rational::zero(); dim]; dim];
    for i in 0..dim {
        for j in i + 1..dim {
            let v = small_rational(rng, 4);
            a[j][i] = -&v;
            a[i][j] = v;
        }
    }
    let k0 = if affine { Rational::zero() } else { small_rational(rng, 4) };
    // Shared row of the active block (zero in case (i)).
    let shared: Vec<Rational> = (0..dim)
        .map(|j| {
            if affine || active.contains(&j) {
                Rational::zero()
            } else {
                small_rational(rng, 4)
            }
        })
        .collect();
    for &i in &active {
        alpha[i] = k0.clone();
        for j in 0..dim {
            a[i][j] = shared[j].clone();
            a[j][i] = -&shared[j];
        }
    }
    let coeffs: Vec<Rational> = (0..dim)
        .map(|i| {
            if active.contains(&i) {
                nonzero_rational(rng, 4)
            } else {
                Rational::zero()
            }
        })
        .collect();
    let a0 = if affine { nonzero_rational(rng, 4) } else { Rational::zero() };
    let k = (0..dim).map(|j| &shared[j] - &k0).collect();
    let k = if affine { vec![Rational::zero(); dim] } else { k };
    HyperplaneInstance {
        form: CubicKolmogorovForm::new(alpha, a).expect("skew by construction"),
        hp: HyperplaneSpec::new(a0, coeffs).expect("active set is nonempty"),
        active,
        k0,
        k,
    }
}

/// One condition of the instance broken: a coefficient `alpha_i` moved, or
/// an entry of an active row of `A~` moved.
pub fn perturb<R: Rng + ?Sized>(rng: &mut R, inst: &HyperplaneInstance) -> CubicKolmogorovForm {
    let dim = inst.form.dim();
    let mut alpha = inst.form.alpha().to_vec();
    let mut a = inst.form.atilde().to_vec();
    let i = *inst.active.choose(rng).expect("nonempty");
    if rng.gen_bool(0.5) {
        alpha[i] += Rational::one();
    } else {
        let j = loop {
            let j = rng.gen_range(0..dim);
            if j != i {
                break j;
            }
        };
        let bump = Rational::one();
        a[i][j] += &bump;
        a[j][i] -= &bump;
    }
    CubicKolmogorovForm::new(alpha, a).expect("still skew")
}

/// Case (i)/(ii) data gives an invariant hyperplane whose cofactor, found by
/// exact division, is the predicted `k0 + sum k_j x_j^2`; breaking a single
/// condition destroys invariance.
pub fn hyperplane_equivalence(seed: u64, instances: usize) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Hyperplane, seed);
    for i in 0..instances {
        let mut rng = instance_rng(seed, i);
        let affine = i % 2 == 0;
        let outcome = (|| {
            let inst = random_hyperplane_instance(&mut rng, affine);
            let h = inst.hp.polynomial();
            let vf = inst.form.field();
            let dim = inst.form.dim();
            let mut k = Poly::constant(dim, inst.k0.clone());
            for (j, c) in inst.k.iter().enumerate() {
                k = &k + &Poly::var(dim, j).pow(2).scale(c);
            }
            if lie_derivative(&vf, &h)? != &k * &h {
                return fail("predicted cofactor does not satisfy chi h = K h");
            }
            let r = classify_hyperplane(&inst.form, &inst.hp)?;
            let expected = if affine {
                HyperplaneCase::AffineFixed
            } else {
                HyperplaneCase::ThroughOrigin
            };
            if r.case != expected || r.cofactor.map(|c| c.poly) != Some(k) {
                return fail(format!("classified as {:?}", r.case));
            }

            let broken = perturb(&mut rng, &inst);
            let surface = Hypersurface::new(h)?;
            if cofactor(&broken.field(), &surface)?.is_some() {
                return fail("perturbed field keeps the hyperplane invariant");
            }
            if classify_hyperplane(&broken, &inst.hp)?.invariant() {
                return fail("perturbed field classified invariant");
            }
            Ok(())
        })();
        report.record(outcome, || {
            format!("instance {i} ({})", if affine { "a0 != 0" } else { "a0 = 0" })
        });
    }
    report
}

/// Dimension of the Hamiltonian constraint space over the cubic family on
/// `S^{2n-1}` for `n = 1, 2, 3`; every dimension is expected to be zero.
pub fn no_hamiltonian_cubic(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Hamiltonian, seed);
    for n in 1..=3 {
        let outcome = hamiltonian_constraint_space(n).and_then(|space| {
            if space.dimension() == 0 {
                Ok(())
            } else {
                let basis: Vec<String> = space
                    .basis
                    .iter()
                    .map(|v| {
                        v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
                    })
                    .collect();
                fail(format!(
                    "dimension {} with basis [{}] over ({})",
                    space.dimension(),
                    basis.join("; "),
                    space.parameters.join(", ")
                ))
            }
        });
        report.record(outcome, || format!("n = {n}"));
    }
    report
}

/// `-6^n (n + 3)` as a rational.
pub fn determinant_formula(n: u32) -> Rational {
    -Rational::from_integer(num_bigint::BigInt::from(6).pow(n) * (n + 3))
}

/// Determinant of the hypothesis matrix for the unit sphere, omitted index
/// `n + 1`, at the points `(1, ..., 2, ..., 1)`, for `n = 1..=6`.
pub fn hypothesis_determinants(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Determinant, seed);
    for n in 1..=6u32 {
        let dim = n as usize + 1;
        let outcome = (|| {
            let m = hypothesis_matrix(&Poly::sphere(dim, Rational::one()), dim - 1, &default_samples(dim))?;
            let det = m.determinant()?;
            let expected = determinant_formula(n);
            if det != expected {
                return fail(format!(
                    "det {} != {}",
                    format_rational(&det),
                    format_rational(&expected)
                ));
            }
            Ok(())
        })();
        report.record(outcome, || format!("n = {n}"));
    }
    report
}

/// Slice offsets checked for cone invariance.
pub fn slice_offsets() -> [Rational; 3] {
    [rat(1, 3), rat(1, 2), rat(2, 3)]
}

/// Random homogeneous Kolmogorov field of degree `m` tangent to `S^{dim-1}`
/// with nonzero last component.
pub fn random_homogeneous_field<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    m: u32,
) -> crate::field_forms::PolyVectorField {
    let atilde = random_homogeneous_skew(rng, dim, m);
    let form = KolmogorovForm::new(vec![Poly::zero(dim); dim], atilde).expect("skew");
    construct_from_form(&form)
}

/// Even instances: homogeneous fields of degree 3 or 4 on `S^2` have no
/// invariant cone over `{x3 = d}`. Odd instances: cubic forms with
/// `alpha != 0` never leave the sphere of radius 2 invariant.
pub fn no_invariant_slices(seed: u64, instances: usize) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Slices, seed);
    for i in 0..instances {
        let mut rng = instance_rng(seed, i);
        let cone_case = i % 2 == 0;
        let outcome = (|| {
            if cone_case {
                let m = rng.gen_range(3..=4);
                let vf = random_homogeneous_field(&mut rng, 3, m);
                for d in slice_offsets() {
                    let hp = HyperplaneSpec::new(Rational::zero(), vec![int(0), int(0), int(1)])?
                        .with_offset(d.clone());
                    if cone_invariance(&vf, &hp)?.invariant() {
                        return fail(format!("cone over x3 = {} invariant", format_rational(&d)));
                    }
                }
                Ok(())
            } else {
                let dim = rng.gen_range(2..=5);
                let form = loop {
                    let f = random_cubic_form(&mut rng, dim);
                    if !f.is_homogeneous() {
                        break f;
                    }
                };
                if second_sphere_check(&form, &int(2))?.invariant {
                    return fail("sphere of radius 2 invariant");
                }
                Ok(())
            }
        })();
        report.record(outcome, || {
            format!("instance {i} ({})", if cone_case { "cone" } else { "radius 2" })
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_are_deterministic() {
        assert_eq!(roundtrip(7, 6), roundtrip(7, 6));
        let a: Vec<_> = (0..4).map(|i| instance_rng(1, i).gen::<u64>()).collect();
        let b: Vec<_> = (0..4).map(|i| instance_rng(1, i).gen::<u64>()).collect();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn small_runs_pass() {
        assert!(roundtrip(1, 10).ok());
        assert!(hyperplane_equivalence(1, 20).ok());
        assert!(no_invariant_slices(1, 10).ok());
        assert!(hypothesis_determinants(0).ok());
        assert_eq!(determinant_formula(2), int(-180));
    }

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()).unwrap(), s);
        }
        assert!(Suite::from_name("nope").is_err());
    }
}
