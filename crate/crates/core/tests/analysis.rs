use approx::assert_relative_eq;
use gws_fusion::analysis::{default_xi_grid, thermal_dot_overlay};
use gws_fusion::optimize::log_spaced;
use gws_fusion::{
    enhancement_ratio, optimal_xi, reactivity, xi_scan, PotentialParams, SolverConfig, ThermalSpec, TransmissionKernel,
    XiMode, AMU,
};

fn kernel(mass_amu: f64) -> TransmissionKernel {
    let p = PotentialParams::default();
    TransmissionKernel::new(&p, mass_amu * AMU, &SolverConfig::for_potential(&p)).unwrap()
}

fn plane(model: &TransmissionKernel, t: f64) -> f64 {
    reactivity(model, &ThermalSpec::new(t, AMU, XiMode::PlaneWave).unwrap())
        .unwrap()
        .value
}

#[test]
fn optimum_matches_dense_scan() {
    let model = kernel(1.0);
    let (lo, hi) = (1.0, 1e4);
    let dense = log_spaced(lo, hi, 400);
    let scan = xi_scan(&model, 20.0, &dense).unwrap();
    let best = (0..dense.len())
        .max_by(|&i, &j| scan.reactivities[i].total_cmp(&scan.reactivities[j]))
        .unwrap();
    let step = (hi / lo).powf(1.0 / 399.0);
    let opt = optimal_xi(&model, 20.0, (lo, hi)).unwrap();
    assert!(opt.is_interior());
    assert!(
        (opt.xi / dense[best]).ln().abs() <= step.ln(),
        "{} vs {}",
        opt.xi,
        dense[best]
    );
    // nothing in the dense scan beats the refined optimum
    let slack = 1e-8 * opt.reactivity;
    assert!(scan.reactivities.iter().all(|&r| r <= opt.reactivity + slack));
    // stationary: ±0.5% in ξ is lower
    for f in [0.995, 1.005] {
        let spec = ThermalSpec::new(20.0, AMU, XiMode::Fixed(opt.xi * f)).unwrap();
        assert!(reactivity(&model, &spec).unwrap().value < opt.reactivity);
    }
}

#[test]
fn scan_shape_at_reference_temperatures() {
    let model = kernel(1.0);
    let xis = default_xi_grid();
    for t in [10.0, 20.0, 50.0, 100.0] {
        let scan = xi_scan(&model, t, &xis).unwrap();
        assert!(scan.optimum.is_some(), "T = {t}");
        let r = &scan.reactivities;
        assert!(r[0] < r[1] && r[1] < r[2]);
        assert_relative_eq!(*r.last().unwrap(), plane(&model, t), max_relative = 1e-2);
    }
}

#[test]
fn thermal_dots_lie_on_the_scan_curves() {
    let model = kernel(1.0);
    let temps = [10.0, 20.0, 50.0, 100.0];
    let dots = thermal_dot_overlay(&model, &temps).unwrap();
    for dot in &dots {
        let lo = dot.xi * 0.9;
        let scan = xi_scan(&model, dot.temperature_kev, &[lo, dot.xi, dot.xi * 1.1]).unwrap();
        assert_relative_eq!(scan.reactivities[1], dot.reactivity, max_relative = 1e-12);
    }
    assert!(dots.windows(2).all(|w| w[1].xi < w[0].xi));
    assert_relative_eq!(dots[0].xi / dots[3].xi, 10f64.sqrt(), max_relative = 1e-12);
}

#[test]
fn enhancement_band_and_crossover() {
    let model = kernel(1.0);
    let band = log_spaced(10.0, 100.0, 10);
    let curve = enhancement_ratio(&model, &band).unwrap();
    assert!(
        curve.ratios.iter().all(|r| (1.1..=2.1).contains(r)),
        "{:?}",
        curve.ratios
    );
    let at30 = enhancement_ratio(&model, &[30.0]).unwrap().ratios[0];
    assert!((at30 - 1.5).abs() <= 0.4, "{at30}");
    let hot = enhancement_ratio(&model, &log_spaced(1000.0, 5000.0, 5)).unwrap();
    assert!(hot.ratios.iter().any(|&r| r < 1.0), "{:?}", hot.ratios);
}

#[test]
fn heavier_pairs_gain_more() {
    let temps = log_spaced(3.0, 300.0, 15);
    let peak = |m: f64| {
        enhancement_ratio(&kernel(m), &temps)
            .unwrap()
            .ratios
            .into_iter()
            .fold(f64::MIN, f64::max)
    };
    let (light, heavy) = (peak(1.0), peak(6.0));
    assert!(heavy > light + 0.1, "m=1: {light}, m=6: {heavy}");
}
