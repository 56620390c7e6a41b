use std::fmt::Write as _;
use std::path::Path;

use kolmo_core::certify::{self, Suite};
use kolmo_core::darboux::{
    complete_integrability_check, construct_completely_integrable, construct_linear_fi_field,
    default_samples, syzygy_first_integral,
};
use kolmo_core::field_forms::{
    classify_homogeneous, construct_from_form, is_kolmogorov_on_sphere, recover_cubic_form,
};
use kolmo_core::hamiltonian::{hamiltonian_constraint_space, is_hamiltonian};
use kolmo_core::invariance::{self, Cofactor, HyperplaneCase, HyperplaneSpec, Hypersurface};
use kolmo_core::io::{
    from_json, CertificateFile, FieldFile, FormFile, IntegralRecord, SeedFile,
};
use kolmo_core::numeric::{integrate_rk4, residual_drift};
use kolmo_core::polyring::{format_rational, parse, parse_rational, Poly, Rational};
use kolmo_core::{Error, Result};
use serde_json::{json, Value};

use crate::Report;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn load_field(path: &Path) -> Result<kolmo_core::field_forms::PolyVectorField> {
    from_json::<FieldFile>(&read(path)?)?.to_field()
}

fn load_form(path: &Path) -> Result<kolmo_core::field_forms::CubicKolmogorovForm> {
    from_json::<FormFile>(&read(path)?)?.to_form()
}

fn rational_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(parse_rational).collect()
}

fn rationals(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn field_json(vf: &kolmo_core::field_forms::PolyVectorField) -> Value {
    serde_json::to_value(FieldFile::from_field(vf)).expect("json")
}

fn cofactor_json(c: &Option<Cofactor>) -> Value {
    match c {
        None => Value::Null,
        Some(c) => json!({
            "poly": c.poly.to_string(),
            "structured": c.structured.as_ref().map(|s| json!({
                "k0": format_rational(&s.k0),
                "k": rationals(&s.k),
            })),
        }),
    }
}

fn opt_poly(p: &Option<Poly>) -> String {
    p.as_ref().map_or_else(|| "none".into(), Poly::to_string)
}

pub fn check(path: &Path, dim: Option<usize>) -> Result<Report> {
    let vf = load_field(path)?;
    if let Some(d) = dim {
        if d != vf.dim() {
            return Err(Error::DimMismatch {
                expected: d,
                found: vf.dim(),
            });
        }
    }
    let r = is_kolmogorov_on_sphere(&vf);
    let h = classify_homogeneous(&vf);
    let text = format!(
        "kolmogorov={} sphere_invariant={}\nsphere_cofactor: {}\nhomogeneous={} degree={}\n",
        r.kolmogorov,
        r.sphere_invariant,
        opt_poly(&r.sphere_cofactor),
        h.homogeneous,
        h.degree.map_or_else(|| "none".into(), |d| d.to_string()),
    );
    Ok(Report {
        notes: String::new(),
        json: json!({
            "dim": vf.dim(),
            "kolmogorov": r.kolmogorov,
            "quotients": r.quotients.as_ref().map(|q| q.iter().map(Poly::to_string).collect::<Vec<_>>()),
            "sphere_invariant": r.sphere_invariant,
            "sphere_cofactor": r.sphere_cofactor.as_ref().map(Poly::to_string),
            "homogeneous": h.homogeneous,
            "degree": h.degree,
        }),
        text,
        positive: r.on_sphere(),
    })
}

pub fn cofactor(path: &Path, surface: &str) -> Result<Report> {
    let vf = load_field(path)?;
    let s = Hypersurface::new(parse(surface, vf.dim())?)?;
    let c = invariance::cofactor(&vf, &s)?;
    let text = match &c {
        Some(k) => format!("invariant with cofactor {}\n", k.poly),
        None => format!("{} is not invariant\n", s.defining()),
    };
    Ok(Report {
        notes: String::new(),
        json: json!({
            "surface": s.defining().to_string(),
            "invariant": c.is_some(),
            "cofactor": cofactor_json(&c),
        }),
        text,
        positive: c.is_some(),
    })
}

fn integrals_text(records: &[IntegralRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let factors: Vec<String> = r
            .surfaces
            .iter()
            .zip(&r.exponents)
            .filter(|(_, e)| e.as_str() != "0")
            .map(|(s, e)| format!("({s})^({e})"))
            .collect();
        let _ = writeln!(out, "  [{}]  {}", r.exponents.join(", "), factors.join(" * "));
    }
    out
}

pub fn darboux(path: &Path, g: &str) -> Result<Report> {
    let vf = load_field(path)?;
    let form = recover_cubic_form(&vf)
        .ok_or_else(|| Error::InvalidInput("field is not a cubic Kolmogorov field on the sphere".into()))?;
    let g = Hypersurface::new(parse(g, vf.dim())?)?;
    let samples = vec![default_samples(vf.dim()); vf.dim()];
    let cert = complete_integrability_check(&form, &g, &samples)?;
    let file = CertificateFile::from_certificate(&cert);
    let mut text = format!(
        "rank(B) = {}\ncompletely integrable: {}\nhypothesis determinants: {}\n",
        file.rank_b,
        cert.completely_integrable,
        file.hypothesis.determinants.join(", ")
    );
    let _ = writeln!(text, "{} first integrals:", file.integrals.len());
    text.push_str(&integrals_text(&file.integrals));
    Ok(Report {
        notes: String::new(),
        json: serde_json::to_value(&file).expect("json"),
        text,
        positive: cert.completely_integrable,
    })
}

pub fn syzygy_fi(path: &Path) -> Result<Report> {
    let form = load_form(path)?;
    let records: Vec<IntegralRecord> = syzygy_first_integral(&form)?
        .iter()
        .map(IntegralRecord::from_integral)
        .collect();
    let mut text = format!("{} monomial first integrals\n", records.len());
    text.push_str(&integrals_text(&records));
    Ok(Report {
        notes: String::new(),
        json: json!({ "integrals": records }),
        positive: !records.is_empty(),
        text,
    })
}

pub fn classify_hyperplane(path: &Path, a0: &str, a: &str) -> Result<Report> {
    let form = load_form(path)?;
    let hp = HyperplaneSpec::new(parse_rational(a0)?, rational_list(a)?)?;
    let r = invariance::classify_hyperplane(&form, &hp)?;
    let case = match r.case {
        HyperplaneCase::AffineFixed => "affine-fixed",
        HyperplaneCase::ThroughOrigin => "through-origin",
        HyperplaneCase::NotInvariant => "not-invariant",
    };
    let text = match &r.cofactor {
        Some(c) if r.invariant() => format!("{case}: {} invariant with cofactor {}\n", hp.polynomial(), c.poly),
        _ => format!("{case}: {}\n", hp.polynomial()),
    };
    Ok(Report {
        notes: String::new(),
        json: json!({
            "hyperplane": hp.polynomial().to_string(),
            "case": case,
            "invariant": r.invariant(),
            "cofactor": cofactor_json(&r.cofactor),
        }),
        text,
        positive: r.invariant(),
    })
}

pub fn construct_linear_fi(a0: &str, a: &str, seed: &Path) -> Result<Report> {
    let hp = HyperplaneSpec::new(parse_rational(a0)?, rational_list(a)?)?;
    let seed_file: SeedFile = from_json(&read(seed)?)?;
    if seed_file.dim != hp.dim() {
        return Err(Error::DimMismatch {
            expected: hp.dim(),
            found: seed_file.dim,
        });
    }
    let form = construct_linear_fi_field(&hp, &seed_file.to_seed()?)?;
    let vf = construct_from_form(&form);
    let f = hp.polynomial();
    let atilde: Vec<Vec<String>> = form
        .atilde()
        .iter()
        .map(|r| r.iter().map(Poly::to_string).collect())
        .collect();
    let mut text = format!("first integral: {f}\n");
    for (i, p) in vf.components().iter().enumerate() {
        let _ = writeln!(text, "P{} = {p}", i + 1);
    }
    Ok(Report {
        notes: String::new(),
        json: json!({ "field": field_json(&vf), "atilde": atilde, "first_integrals": [f.to_string()] }),
        text,
        positive: true,
    })
}

pub fn construct_complete(n: usize, m: u32, atilde: &str) -> Result<Report> {
    let a = parse(atilde, n + 1)?;
    let family = construct_completely_integrable(n, m, &a)?;
    let integrals: Vec<String> = family
        .integrals
        .iter()
        .map(|h| h.surfaces()[0].defining().to_string())
        .collect();
    let mut text = String::new();
    for (i, p) in family.field.components().iter().enumerate() {
        let _ = writeln!(text, "P{} = {p}", i + 1);
    }
    let _ = writeln!(text, "first integrals: {}", integrals.join("; "));
    let _ = writeln!(
        text,
        "Jacobian rank {} at ({})",
        family.jacobian_rank,
        rationals(&family.sample_point).join(", ")
    );
    Ok(Report {
        notes: String::new(),
        json: json!({
            "field": field_json(&family.field),
            "first_integrals": integrals,
            "sample_point": rationals(&family.sample_point),
            "jacobian_rank": family.jacobian_rank,
        }),
        text,
        positive: true,
    })
}

pub fn construct_cubic(path: &Path) -> Result<Report> {
    let vf = load_form(path)?.field();
    let mut text = String::new();
    for (i, p) in vf.components().iter().enumerate() {
        let _ = writeln!(text, "P{} = {p}", i + 1);
    }
    Ok(Report {
        notes: String::new(),
        json: field_json(&vf),
        text,
        positive: true,
    })
}

pub fn hamiltonian_field(path: &Path) -> Result<Report> {
    let vf = load_field(path)?;
    let r = is_hamiltonian(&vf)?;
    let mut text = format!("hamiltonian={}\n", r.is_hamiltonian);
    for ((j, k), p) in &r.defect {
        let _ = writeln!(text, "  dG{j}/dx{k} - dG{k}/dx{j} = {p}");
    }
    let defect: Vec<Value> = r
        .defect
        .iter()
        .map(|((j, k), p)| json!({ "pair": [j, k], "poly": p.to_string() }))
        .collect();
    Ok(Report {
        notes: String::new(),
        json: json!({ "hamiltonian": r.is_hamiltonian, "defect": defect }),
        text,
        positive: r.is_hamiltonian,
    })
}

pub fn hamiltonian_space(n: usize) -> Result<Report> {
    let space = hamiltonian_constraint_space(n)?;
    let basis: Vec<Vec<String>> = space.basis.iter().map(|v| rationals(v)).collect();
    let mut text = format!("dimension {}\n", space.dimension());
    for v in &basis {
        let named: Vec<String> = space
            .parameters
            .iter()
            .zip(v)
            .filter(|(_, c)| c.as_str() != "0")
            .map(|(p, c)| format!("{p}={c}"))
            .collect();
        let _ = writeln!(text, "  {}", named.join(", "));
    }
    Ok(Report {
        notes: String::new(),
        json: json!({
            "n": n,
            "dimension": space.dimension(),
            "parameters": space.parameters,
            "basis": basis,
        }),
        text,
        positive: true,
    })
}

pub fn integrate(path: &Path, x0: &str, h: f64, steps: usize, watch: &[String]) -> Result<Report> {
    let vf = load_field(path)?;
    let x0: Vec<f64> = x0
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidInput(format!("`{t}` is not a number")))
        })
        .collect::<Result<_>>()?;
    let watched: Vec<Poly> = watch.iter().map(|w| parse(w, vf.dim())).collect::<Result<_>>()?;
    let traj = integrate_rk4(&vf, &x0, h, steps)?;
    let drifts: Vec<Value> = watched
        .iter()
        .map(|p| json!({ "poly": p.to_string(), "max_abs_change": residual_drift(&traj, p) }))
        .collect();
    let text = traj.to_csv();
    let mut notes = String::new();
    for (p, d) in watched.iter().zip(&drifts) {
        let _ = writeln!(notes, "# watch {p}: max |f - f(x0)| = {:e}", d["max_abs_change"].as_f64().unwrap_or(f64::NAN));
    }
    Ok(Report {
        json: json!({
            "h": h,
            "steps": steps,
            "final_time": traj.times.last(),
            "final_state": traj.states.last(),
            "watch": drifts,
        }),
        text,
        notes,
        positive: true,
    })
}

pub fn certify(suite: &str, seed: u64, instances: usize) -> Result<Report> {
    let suite = Suite::from_name(suite)?;
    let report = certify::run(suite, seed, instances);
    let mut text = format!(
        "{}: {}/{} passed (seed {})\n",
        report.suite, report.passed, report.instances, report.seed
    );
    for f in &report.failures {
        let _ = writeln!(text, "  FAIL {f}");
    }
    Ok(Report {
        notes: String::new(),
        json: serde_json::to_value(&report).expect("json"),
        positive: report.ok(),
        text,
    })
}
