mod common;

use std::f64::consts::PI;

use approx::assert_relative_eq;
use common::{exp_integral_e1, reactivity_double_brute_force};
use gws_fusion::quadrature::Tolerance;
use gws_fusion::thermal::{reactivity_vs_temperature, reactivity_with_tolerance};
use gws_fusion::{
    reactivity, AnalyticTransmission, PotentialParams, SolverConfig, ThermalSpec, TransmissionKernel,
    TransmissionModel, XiMode, AMU, HBAR_C,
};

fn kernel() -> TransmissionKernel {
    let p = PotentialParams::default();
    TransmissionKernel::new(&p, AMU, &SolverConfig::for_potential(&p)).unwrap()
}

fn spec(t_kev: f64, mode: XiMode) -> ThermalSpec {
    ThermalSpec::new(t_kev, AMU, mode).unwrap()
}

#[test]
fn reduced_integral_matches_brute_force_double_integral() {
    let model = kernel();
    let sp = spec(20.0, XiMode::Fixed(8.0));
    let reduced = reactivity(&model, &sp).unwrap().value;
    let oracle = reactivity_double_brute_force(
        |k| {
            if k == 0.0 {
                0.0
            } else {
                model.transmission_at_wavenumber(k).unwrap()
            }
        },
        AMU,
        8.0,
        sp.thermal_length(),
        400,
    );
    assert_relative_eq!(reduced, oracle, max_relative = 1e-4);
}

#[test]
fn ramp_kernel_matches_closed_form() {
    // T = min(1, E/E0): T = (k/k0)² below k0
    let e0 = 1.0;
    let model = AnalyticTransmission::new(AMU, move |e: f64| (e / e0).min(1.0));
    let k0 = (2.0 * AMU * e0).sqrt() / HBAR_C;
    for (t, mode) in [
        (5.0, XiMode::Fixed(4.0)),
        (50.0, XiMode::PlaneWave),
        (300.0, XiMode::ThermalWavelength),
    ] {
        let sp = spec(t, mode);
        let xe = sp.effective_spreading();
        let z = 0.5 * (xe * k0).powi(2);
        let j = (1.0 - (-z).exp()) / (k0 * k0 * xe) + 0.5 * xe * exp_integral_e1(z);
        let exact = (2.0 * PI).sqrt() * HBAR_C / AMU * j;
        assert_relative_eq!(reactivity(&model, &sp).unwrap().value, exact, max_relative = 1e-6);
    }
}

#[test]
fn depends_on_width_and_temperature_only_through_xi_eff() {
    let model = kernel();
    for (t1, xi1, t2) in [(20.0, 8.0, 5.0), (100.0, 3.0, 40.0), (10.0, 30.0, 2.0)] {
        let a = spec(t1, XiMode::Fixed(xi1));
        let xe = a.effective_spreading();
        let s2 = spec(t2, XiMode::PlaneWave).thermal_length();
        assert!(s2 > xe);
        let xi2 = (1.0 / (xe * xe) - 1.0 / (s2 * s2)).powf(-0.5);
        let b = spec(t2, XiMode::Fixed(xi2));
        assert_relative_eq!(b.effective_spreading(), xe, max_relative = 1e-12);
        assert_relative_eq!(
            reactivity(&model, &a).unwrap().value,
            reactivity(&model, &b).unwrap().value,
            max_relative = 1e-9
        );
    }
}

#[test]
fn huge_width_matches_plane_wave() {
    let model = kernel();
    let plane = reactivity(&model, &spec(50.0, XiMode::PlaneWave)).unwrap().value;
    let wide = reactivity(&model, &spec(50.0, XiMode::Fixed(1e6))).unwrap().value;
    assert_relative_eq!(plane, wide, max_relative = 1e-3);
}

#[test]
fn tightening_the_tolerance_stays_within_the_error_estimate() {
    let model = kernel();
    for (t, mode) in [
        (10.0, XiMode::Fixed(2.0)),
        (20.0, XiMode::ThermalWavelength),
        (100.0, XiMode::PlaneWave),
    ] {
        let sp = spec(t, mode);
        let base = Tolerance { abs: 1e-14, rel: 1e-8 };
        let half = Tolerance {
            abs: 0.5e-14,
            rel: 0.5e-8,
        };
        let a = reactivity_with_tolerance(&model, &sp, base).unwrap();
        let b = reactivity_with_tolerance(&model, &sp, half).unwrap();
        assert!((a.value - b.value).abs() <= a.quadrature_error, "{a:?} vs {b:?}");
    }
}

#[test]
fn modes_agree_at_high_temperature() {
    let model = kernel();
    let values: Vec<f64> = [XiMode::Fixed(2.0), XiMode::PlaneWave, XiMode::ThermalWavelength]
        .iter()
        .map(|&m| reactivity(&model, &spec(500.0, m)).unwrap().value)
        .collect();
    let max = values.iter().cloned().fold(f64::MIN, f64::max);
    let min = values.iter().cloned().fold(f64::MAX, f64::min);
    assert!(max / min < 3.0, "{values:?}");
}

#[test]
fn narrow_packets_win_at_low_temperature() {
    let model = kernel();
    let narrow = reactivity(&model, &spec(1.0, XiMode::Fixed(2.0))).unwrap().value;
    let plane = reactivity(&model, &spec(1.0, XiMode::PlaneWave)).unwrap().value;
    assert!(narrow > plane);
}

#[test]
fn curves_are_positive_and_finite() {
    let model = kernel();
    let temps = [1.0, 5.0, 10.0, 20.0, 50.0, 100.0, 300.0, 1000.0];
    for mode in [
        XiMode::Fixed(2.0),
        XiMode::Fixed(30.0),
        XiMode::PlaneWave,
        XiMode::ThermalWavelength,
    ] {
        let curve = reactivity_vs_temperature(&model, mode, &temps).unwrap();
        assert!(curve.values().iter().all(|v| v.is_finite() && *v > 0.0));
    }
}
