use kolmo_core::darboux::{find_darboux, DarbouxIntegral};
use kolmo_core::field_forms::{CubicKolmogorovForm, PolyVectorField};
use kolmo_core::invariance::Hypersurface;
use kolmo_core::numeric::{conservation_report, integrate_rk4, NumericConfig};
use kolmo_core::polyring::{int, parse};

fn drift(vf: &PolyVectorField, h: &DarbouxIntegral, x0: &[f64], step: f64, t: f64) -> f64 {
    let traj = integrate_rk4(vf, x0, step, (t / step).round() as usize).unwrap();
    conservation_report(&traj, h, &NumericConfig::default()).unwrap()
}

#[test]
fn halving_the_step_gains_a_factor_of_eight() {
    let form = CubicKolmogorovForm::from_upper(vec![int(2), int(0), int(2)], &[int(3), int(0), int(-3)]);
    let vf = form.field();
    let integrals = find_darboux(&form, &Hypersurface::unit_sphere(3)).unwrap();
    let sphere_factor = integrals
        .iter()
        .find(|h| h.exponents()[3] != int(0))
        .unwrap();
    for x0 in [[0.5, 0.5, 0.5], [0.3, 0.6, 0.9]] {
        let d: Vec<f64> = [2e-2, 1e-2, 5e-3]
            .iter()
            .map(|&s| drift(&vf, sphere_factor, &x0, s, 1.0))
            .collect();
        assert!(d[0] / d[1] >= 8.0 && d[1] / d[2] >= 8.0, "{d:?}");
    }
}

#[test]
fn polynomial_integral_of_a_cubic_oscillator() {
    // H = x1^2 + x2^4 / 2 is conserved by (-2 x2^3, 2 x1).
    let vf = PolyVectorField::parse(2, &["-2*x2^3", "2*x1"]).unwrap();
    let h = DarbouxIntegral::polynomial(parse("x1^2 + 1/2*x2^4 + 1", 2).unwrap()).unwrap();
    let coarse = drift(&vf, &h, &[0.4, 0.7], 1e-2, 5.0);
    let fine = drift(&vf, &h, &[0.4, 0.7], 5e-3, 5.0);
    assert!(fine < 1e-6);
    assert!(coarse / fine >= 8.0, "{coarse} {fine}");
}
