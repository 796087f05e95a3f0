use std::f64::consts::PI;

use nnwedge::fields::{self, u_total};
use nnwedge::kernels::{h_nn, z_nn};
use nnwedge::profiles::f_eval;
use nnwedge::quadrature::integrate_finite;
use nnwedge::{ac, classify, PolarPoint, Profile, QuadratureSpec, Sector, WedgeScene};
use num_complex::Complex64;
use proptest::prelude::*;

fn admissible_scene() -> impl Strategy<Value = WedgeScene> {
    (0.3f64..2.8, 0.1f64..0.9).prop_map(|(phi, u)| {
        let lo = (phi - PI / 2.0).max(0.0);
        let hi = (PI / 2.0).min(phi);
        WedgeScene::derive(phi, lo + u * (hi - lo), 1.0).unwrap()
    })
}

fn profile() -> impl Strategy<Value = Profile> {
    prop_oneof![
        (0.1f64..2.0).prop_map(|s0| Profile::smooth_ramp(s0).unwrap()),
        Just(Profile::heaviside()),
    ]
}

fn exterior_angle(scene: &WedgeScene, u: f64) -> f64 {
    scene.phi() + u * (2.0 * PI - scene.phi())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn h_nn_reflection_and_period(scene in admissible_scene(), x in -6.0f64..6.0, y in -8.0f64..8.0) {
        let b = Complex64::new(x, y);
        let i = Complex64::i();
        if let (Ok(h), Ok(r), Ok(p)) = (
            h_nn(&scene, b),
            h_nn(&scene, -b + i * PI),
            h_nn(&scene, b + i * 2.0 * scene.big_phi()),
        ) {
            let scale = h.norm().max(1.0);
            prop_assert!((h + r).norm() <= 1e-10 * scale);
            prop_assert!((p - h).norm() <= 1e-10 * scale);
        }
    }

    #[test]
    fn z_nn_decays_on_the_real_axis(scene in admissible_scene(), u in 0.05f64..0.95) {
        let theta = exterior_angle(&scene, u);
        prop_assume!(scene.critical_distance(theta).0 > 0.05);
        let near = z_nn(&scene, Complex64::new(8.0, 0.0), theta).unwrap().norm();
        let far = z_nn(&scene, Complex64::new(16.0, 0.0), theta).unwrap().norm();
        prop_assert!(far < near || far < 1e-12);
    }

    #[test]
    fn ac_is_monotone(x in -2.0f64..50.0, dx in 0.0f64..10.0) {
        prop_assert!(ac(x + dx) >= ac(x));
        prop_assert!(ac(x) >= 0.0);
        if x >= 1.0 {
            prop_assert!((ac(x).cosh() - x).abs() <= 1e-12 * x);
        }
    }

    #[test]
    fn profile_is_monotone_and_bounded(p in profile(), s in -3.0f64..3.0, ds in 0.0f64..1.0) {
        let (a, b) = (f_eval(&p, s), f_eval(&p, s + ds));
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!(b >= a);
        if s <= 0.0 {
            prop_assert_eq!(a, 0.0);
        }
        if s >= p.width() && s > 0.0 {
            prop_assert_eq!(a, 1.0);
        }
    }

    #[test]
    fn quadrature_is_additive_and_antisymmetric(a in -3.0f64..0.0, m in 0.0f64..2.0, c in 2.0f64..5.0, k in 0.5f64..8.0) {
        let spec = QuadratureSpec::default();
        let g = |x: f64| Complex64::from_polar(1.0 + x * x, k * x);
        let whole = integrate_finite(g, a, c, &spec).unwrap().value;
        let parts = integrate_finite(g, a, m, &spec).unwrap().value + integrate_finite(g, m, c, &spec).unwrap().value;
        let back = integrate_finite(g, c, a, &spec).unwrap().value;
        prop_assert!((whole - parts).norm() <= 1e-9 * whole.norm().max(1.0));
        prop_assert!((whole + back).norm() <= 1e-12 * whole.norm().max(1.0));
    }

    #[test]
    fn diffracted_wave_is_causal(scene in admissible_scene(), p in profile(), rho in 0.05f64..5.0, u in 0.02f64..0.98, lag in 0.0f64..3.0) {
        let theta = exterior_angle(&scene, u);
        prop_assume!(scene.critical_distance(theta).0 > 1e-3);
        let pt = PolarPoint { rho, theta };
        let v = fields::u_d(&scene, &p, &pt, rho - lag, &QuadratureSpec::default()).unwrap().value;
        prop_assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn total_field_is_the_sum_of_components(scene in admissible_scene(), rho in 0.1f64..3.0, u in 0.02f64..0.98, t in -1.0f64..8.0) {
        let theta = exterior_angle(&scene, u);
        prop_assume!(scene.critical_distance(theta).0 > 1e-3);
        let prof = Profile::smooth_ramp(0.5).unwrap();
        let pt = PolarPoint { rho, theta };
        let v = u_total(&scene, &prof, &pt, t, &QuadratureSpec::default()).unwrap();
        let c = v.components.expect("components");
        prop_assert!((v.value - (c.u_in + c.u_r + c.u_d)).norm() <= 1e-14);
        if t < 0.0 {
            prop_assert_eq!(v.value, fields::u_in(&scene, &prof, &pt, t));
        }
    }

    #[test]
    fn reflected_wave_lives_in_its_sectors(scene in admissible_scene(), u in 0.0f64..1.0, rho in 0.1f64..4.0, t in 0.0f64..10.0) {
        let theta = exterior_angle(&scene, u);
        let sector = classify(&scene, theta, 1e-6).unwrap();
        let pt = PolarPoint { rho, theta };
        if sector == Sector::II {
            prop_assert_eq!(fields::u_r(&scene, &Profile::heaviside(), &pt, t), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn ranges_hit_their_endpoints(a in -10.0f64..10.0, b in -10.0f64..10.0, n in 2usize..50) {
        let v = nnwedge::cli::parse_range(&format!("{a}:{b}:{n}")).unwrap();
        prop_assert_eq!(v.len(), n);
        prop_assert_eq!(v[0], a);
        prop_assert!((v[n - 1] - b).abs() <= 1e-12 * b.abs().max(1.0));
    }
}
