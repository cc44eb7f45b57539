use pointgreen::contour_quadrature::{HolomorphicDatum, QuadratureConfig};
use pointgreen::evolution::psi;
use pointgreen::interaction::{GreenCoefficients, InteractionCase};
use pointgreen::sampling::{random_interaction, rng};
use pointgreen::spectral::{bound_state_determinant, bound_states};
use pointgreen::special_functions::{lambda_divided_difference, lambda_fn};
use pointgreen::{Complex64, Mat2, UnitaryInteraction};
use proptest::prelude::*;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn interaction(seed: u64) -> UnitaryInteraction {
    random_interaction(&mut rng(seed))
}

fn complex(range: f64) -> impl Strategy<Value = Complex64> {
    (-range..range, -range..range).prop_map(|(a, b)| Complex64::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lambda_reflection(z in complex(3.0)) {
        let e = (z * z).exp();
        let r = lambda_fn(-z).unwrap() - 2.0 * e + lambda_fn(z).unwrap();
        prop_assert!(r.norm() <= 1e-12 * e.norm().max(1.0));
    }

    #[test]
    fn lambda_modulus_bound(z in complex(4.0)) {
        let bound = lambda_fn(Complex64::new(z.re, 0.0)).unwrap().re;
        prop_assert!(lambda_fn(z).unwrap().norm() <= bound * (1.0 + 1e-12));
    }

    #[test]
    fn lambda_ode_by_differences(z in complex(2.5)) {
        let h = 1e-4;
        let fd = (lambda_fn(z + h).unwrap() - lambda_fn(z - h).unwrap()) / (2.0 * h);
        let l = lambda_fn(z).unwrap();
        let rhs = 2.0 * z * l - 2.0 / PI.sqrt();
        prop_assert!((fd - rhs).norm() <= 1e-6 * (1.0 + l.norm()));
    }

    #[test]
    fn divided_difference_continuity(u in complex(2.0), d in 1e-7f64..1e-2, arg in 0.0..(2.0 * PI)) {
        let v = u + Complex64::from_polar(d, arg);
        let want = (lambda_fn(u).unwrap() - lambda_fn(v).unwrap()) / (u - v);
        let got = lambda_divided_difference(u, v).unwrap();
        // The separated form itself loses about ε/d.
        let tol = 1e-9 + 1e-15 / d;
        prop_assert!((got - want).norm() <= tol * (1.0 + want.norm()) * lambda_fn(u).unwrap().norm().max(1.0));
    }

    #[test]
    fn matrix_round_trip(seed in any::<u64>()) {
        let u = interaction(seed);
        let j = u.matrix();
        let back = UnitaryInteraction::from_matrix(&j).unwrap();
        prop_assert!((back.matrix() - j).max_norm() <= 1e-10);
    }

    #[test]
    fn proof_matrix_equations(seed in any::<u64>()) {
        let u = interaction(seed);
        let c = u.coefficients();
        let j = u.matrix();
        let id = Mat2::identity();
        let mp = GreenCoefficients::table_matrix(&c.mu_plus);
        let mm = GreenCoefficients::table_matrix(&c.mu_minus);
        let m0 = GreenCoefficients::table_matrix(&c.mu_zero);
        let ones = Mat2::ones();
        for (m, w) in [(mp, c.omega_plus), (mm, c.omega_minus)] {
            let lhs = (id - j) * m;
            let rhs = ((id + j) * m).scale(I * w);
            prop_assert!((lhs - rhs).max_norm() <= 1e-10 * (1.0 + w.abs()));
        }
        let b = (id - j) * (m0 + ones) + ((id + j) * (mp + mm)).scale(2.0 * I);
        prop_assert!(b.max_norm() <= 1e-10 * (1.0 + c.omega_plus.abs() + c.omega_minus.abs()));
        let cc = (id + j) * (m0 + ones - id.scale(Complex64::new(2.0, 0.0)));
        prop_assert!(cc.max_norm() <= 1e-10);
    }

    #[test]
    fn case_one_involution(seed in any::<u64>()) {
        let u = interaction(seed);
        let c = u.coefficients();
        prop_assume!(c.case == InteractionCase::CaseI && (1.0 - u.alpha().re.abs()) > 1e-6);
        let n = GreenCoefficients::table_matrix(&[0, 1, 2, 3].map(|k| u.eta(pointgreen::SignPair::ALL[k])));
        let id = Mat2::identity();
        prop_assert!((n * n - id).max_norm() <= 1e-9);
        for (m, w, s) in [(&c.mu_plus, c.omega_plus, 1.0), (&c.mu_minus, c.omega_minus, -1.0)] {
            let want = (id + n.scale(Complex64::new(s, 0.0))).scale(Complex64::new(-w / 2.0, 0.0));
            prop_assert!((GreenCoefficients::table_matrix(m) - want).max_norm() <= 1e-10 * (1.0 + w.abs()));
        }
    }

    #[test]
    fn vanishing_omega_has_vanishing_mu(seed in any::<u64>()) {
        let c = interaction(seed).coefficients();
        if c.omega_plus == 0.0 {
            prop_assert!(c.mu_plus.iter().all(|m| m.norm() == 0.0));
        }
        if c.omega_minus == 0.0 {
            prop_assert!(c.mu_minus.iter().all(|m| m.norm() == 0.0));
        }
    }

    #[test]
    fn no_false_bound_states(seed in any::<u64>(), s in 0.01f64..6.0) {
        let u = interaction(seed);
        let states = bound_states(&u);
        prop_assume!(states.iter().all(|b| (b.omega + s).abs() > 1e-2 * (1.0 + s)));
        prop_assert!(bound_state_determinant(&u, s).norm() > 1e-6);
    }

    #[test]
    fn bound_states_decay(seed in any::<u64>()) {
        for b in bound_states(&interaction(seed)) {
            prop_assert!(b.omega < 0.0);
            prop_assert!((b.energy + b.omega * b.omega).abs() <= 1e-14 * b.energy.abs().max(1.0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn evolution_is_linear(seed in any::<u64>(), k1 in -2.0f64..2.0, k2 in -2.0f64..2.0, ar in -1.0f64..1.0, bi in -1.0f64..1.0) {
        let u = interaction(seed);
        let cfg = QuadratureConfig::default();
        let (a, b) = (Complex64::new(ar, 0.3), Complex64::new(0.5, bi));
        let f = HolomorphicDatum::plane_wave(k1);
        let g = HolomorphicDatum::plane_wave(k2);
        let (t, x) = (0.8, 0.6);
        let lhs = psi(&u, t, x, &f.combine(a, &g, b), &cfg).unwrap();
        let pf = psi(&u, t, x, &f, &cfg).unwrap();
        let pg = psi(&u, t, x, &g, &cfg).unwrap();
        let tol = lhs.error + a.norm() * pf.error + b.norm() * pg.error + 1e-9;
        prop_assert!((lhs.value - (a * pf.value + b * pg.value)).norm() <= tol);
    }

    #[test]
    fn rotation_independence(seed in any::<u64>(), k in -2.0f64..2.0, x in 0.2f64..2.0) {
        let u = interaction(seed);
        let f = HolomorphicDatum::plane_wave(k);
        let at = |theta: f64| psi(&u, 1.0, -x, &f, &QuadratureConfig { theta_rot: theta, ..Default::default() }).unwrap();
        let base = at(PI / 4.0);
        for theta in [PI / 8.0, 3.0 * PI / 8.0] {
            let other = at(theta);
            prop_assert!((other.value - base.value).norm() <= other.error + base.error + 1e-9);
        }
    }
}
