use approx::assert_abs_diff_eq;
use hankel_cone::htransform::h_transform_point;
use hankel_cone::kleingordon::{riemann_propagate, Parity, WavePacket};
use hankel_cone::quad::DecayHint;
use hankel_cone::sampled::{uniform_grid, GridKind, SampledFunction};
use hankel_cone::scattering::{boost_flow, potential, PotentialKind};
use hankel_cone::specfun::{bessel_j0, bessel_j1, chi_multiplier, gamma_complex, scatter_s, wrap_phase};
use hankel_cone::testfamily::LaguerreTest;
use hankel_cone::{Complex64, ConeTraces64};
use proptest::prelude::*;
use std::f64::consts::PI;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn dilation_reverses_scale(c in 0.3f64..3.0, x in 0.05f64..8.0) {
        // H(e^{-c y}) = e^{-x/c} / c
        let h = h_transform_point(|y: f64| (-c * y).exp(), DecayHint::Exponential { rate: c }, x, 1e-12).unwrap();
        prop_assert!((h - (-x / c).exp() / c).abs() < 1e-9);
    }

    #[test]
    fn laguerre_images(a0 in -1.0f64..1.0, a1 in -1.0f64..1.0, a2 in 0.25f64..1.0, x in 0.05f64..10.0) {
        let f = LaguerreTest { coefs: vec![a0, a1, a2], scale: 1.0 };
        let h = h_transform_point(|y: f64| f.eval(y), f.decay(), x, 1e-12).unwrap();
        prop_assert!((h - f.h_eval(x)).abs() < 1e-8);
    }

    #[test]
    fn bessel_derivative_identity(x in 0.1f64..60.0) {
        // (x J1)' = x J0
        let d = 1e-4;
        let xj1 = |y: f64| y * bessel_j1(y).unwrap();
        let lhs = (xj1(x + d) - xj1(x - d)) / (2.0 * d);
        prop_assert!((lhs - x * bessel_j0(x).unwrap()).abs() < 1e-6 * x.max(1.0));
    }

    #[test]
    fn gamma_on_the_half_line(tau in -20.0f64..20.0) {
        let g = gamma_complex(Complex64::new(0.5, tau)).unwrap();
        prop_assert!((g.norm_sqr() * (PI * tau).cosh() / PI - 1.0).abs() < 1e-10);
    }

    #[test]
    fn multiplier_is_unimodular_and_matches_s(tau in -15.0f64..15.0) {
        let c = chi_multiplier(tau);
        prop_assert!((c.norm() - 1.0).abs() < 1e-10);
        prop_assert!(wrap_phase(c.arg() - scatter_s(tau).arg()).abs() < 1e-10);
    }

    #[test]
    fn wrap_phase_range(theta in -50.0f64..50.0) {
        let w = wrap_phase(theta);
        prop_assert!(w > -PI && w <= PI);
        let turns = (theta - w) / (2.0 * PI);
        prop_assert!((turns - turns.round()).abs() < 1e-9);
    }

    #[test]
    fn barriers_are_ordered(zeta in -12.0f64..3.0) {
        let (a, k, b) = (potential(PotentialKind::AMinus, zeta), potential(PotentialKind::KleinGordon, zeta), potential(PotentialKind::BPlus, zeta));
        prop_assert!(a <= k && k <= b);
        prop_assert!((a + b - 2.0 * k).abs() <= 1e-12 * b);
    }

    #[test]
    fn plane_waves_propagate(k in 0.0f64..3.0, t in -1.5f64..1.5, x in -3.0f64..3.0) {
        let w = (1.0 + k * k).sqrt();
        let phi = riemann_propagate(|y: f64| (k * y).cos(), |_| 0.0, (-10.0, 10.0), t, x, 1e-12).unwrap();
        prop_assert!((phi - (k * x).cos() * (w * t).cos()).abs() < 1e-9);
    }

    #[test]
    fn cubic_interpolation_is_exact(c in prop::array::uniform4(-2.0f64..2.0), x in 0.1f64..4.9) {
        let p = |y: f64| c[0] + y * (c[1] + y * (c[2] + y * c[3]));
        let f = SampledFunction::from_fn(p, uniform_grid(0.1, 5.0, 50), GridKind::Uniform, DecayHint::Compact { support_end: 5.0 }).unwrap();
        prop_assert!((f.eval(x) - p(x)).abs() < 1e-11);
    }

    #[test]
    fn boost_flow_keeps_norms(xi in -1.5f64..1.5) {
        let hint = DecayHint::Exponential { rate: 1.0 };
        let g = SampledFunction::from_fn(|u: f64| (-u).exp(), hankel_cone::sampled::log_grid(1e-4, 60.0, 1024), GridKind::LogUniform, hint).unwrap();
        let traces = ConeTraces64 { g: g.clone(), k: g, p: None, g_reflected: None };
        let b = boost_flow(&traces, xi).unwrap();
        let sq = |_: f64, v: f64| v * v;
        prop_assert!((b.g.integral_of(sq, 1e-12).unwrap() - 0.5).abs() < 1e-8);
        prop_assert!((b.k.integral_of(sq, 1e-12).unwrap() - 0.5).abs() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn boosts_keep_rest_mass(xi in -1.0f64..1.0, center in 1.2f64..2.5) {
        let p = WavePacket::<f64>::gaussian(center, 0.2, 201, Parity::None).unwrap();
        let (a, b) = (p.energy_momentum(), p.lorentz_boost(xi).energy_momentum());
        assert_abs_diff_eq!(b.mass_squared() / a.mass_squared(), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(b.e_minus_p() / a.e_minus_p(), xi.exp(), epsilon = 1e-9);
    }
}
