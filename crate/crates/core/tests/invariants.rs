use std::sync::OnceLock;

use num_complex::Complex64;
use orbit_hk::chevalley::{Element, LieAlgebra};
use orbit_hk::hyperkahler::{self as hk, PotentialFamily};
use orbit_hk::orbit::{self, OrbitPoint};
use orbit_hk::rootsystem::RootSystem;
use orbit_hk::sl2geom;
use proptest::prelude::*;

const TYPES: [&str; 8] = ["A1", "A2", "A3", "B2", "C3", "D4", "G2", "F4"];

fn algebras() -> &'static Vec<LieAlgebra> {
    static ALGS: OnceLock<Vec<LieAlgebra>> = OnceLock::new();
    ALGS.get_or_init(|| TYPES.iter().map(|s| LieAlgebra::of_type(s.parse().unwrap()).unwrap()).collect())
}

fn element(alg: &LieAlgebra, re: &[f64], im: &[f64]) -> Element {
    Element::from_coeffs((0..alg.dim()).map(|i| Complex64::new(re[i % re.len()], im[(i * 7 + 3) % im.len()])).collect())
}

fn coeffs() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, 1..60)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_and_killing_invariance(which in 0usize..TYPES.len(), a in coeffs(), b in coeffs(), c in coeffs()) {
        let alg = &algebras()[which];
        let (x, y, z) = (element(alg, &a, &b), element(alg, &b, &c), element(alg, &c, &a));
        let br = |u: &Element, v: &Element| alg.bracket(u, v).unwrap();
        let j = &(&br(&x, &br(&y, &z)) + &br(&y, &br(&z, &x))) + &br(&z, &br(&x, &y));
        let scale = 1.0 + x.coeff_norm() * y.coeff_norm() * z.coeff_norm();
        prop_assert!(j.coeff_norm() < 1e-10 * scale);
        let lhs = alg.killing_form(&br(&x, &y), &z);
        let rhs = alg.killing_form(&x, &br(&y, &z));
        prop_assert!((lhs - rhs).norm() < 1e-9 * scale);
    }

    #[test]
    fn sigma_is_an_antilinear_involutive_automorphism(which in 0usize..TYPES.len(), a in coeffs(), b in coeffs(), s in -3.0f64..3.0) {
        let alg = &algebras()[which];
        let (x, y) = (element(alg, &a, &b), element(alg, &b, &a));
        let sx = alg.sigma(&x);
        prop_assert_eq!(alg.sigma(&sx), x.clone());
        let lhs = alg.sigma(&alg.bracket(&x, &y).unwrap());
        let rhs = alg.bracket(&sx, &alg.sigma(&y)).unwrap();
        prop_assert!((&lhs - &rhs).coeff_norm() < 1e-10 * (1.0 + x.coeff_norm() * y.coeff_norm()));
        let z = Complex64::new(s, 1.0 - s);
        prop_assert!((&alg.sigma(&x.scale(z)) - &sx.scale(z.conj())).coeff_norm() < 1e-12 * (1.0 + x.coeff_norm()));
        prop_assert!(x.is_zero() || alg.eta(&x) > 0.0);
    }

    #[test]
    fn omega_c_antisymmetric_and_routes_agree(which in 0usize..TYPES.len(), t in 0.1f64..3.0, a in coeffs(), b in coeffs()) {
        let alg = &algebras()[which];
        let x = OrbitPoint::minimal(alg, t).unwrap();
        let (u, v) = (element(alg, &a, &b), element(alg, &b, &a));
        let w1 = x.omega_c(&u, &v).unwrap();
        let w2 = x.omega_c(&v, &u).unwrap();
        let w3 = x.omega_c_via_field(&u, &v).unwrap();
        let scale = 1.0 + t * u.coeff_norm() * v.coeff_norm();
        prop_assert!((w1 + w2).norm() < 1e-10 * scale);
        prop_assert!((w1 - w3).norm() < 1e-10 * scale);
    }

    #[test]
    fn c_zero_is_hyperkahler_everywhere_on_the_ray(which in 0usize..TYPES.len(), eta in 0.01f64..50.0, seed in any::<u64>()) {
        let alg = &algebras()[which];
        let x = OrbitPoint::minimal_with_eta(alg, eta).unwrap();
        let rep = hk::verify_quaternionic(&x, &PotentialFamily::for_algebra(alg, 0.0).unwrap(), 8, seed).unwrap();
        for c in &rep.checks.checks {
            prop_assert!(c.pass, "{} at eta {}: {:?}", TYPES[which], eta, c);
        }
    }

    #[test]
    fn deviation_is_c_over_lambda_sq_eta(which in 1usize..TYPES.len(), eta in 0.05f64..20.0, c in 0.0f64..30.0) {
        let alg = &algebras()[which];
        let x = OrbitPoint::minimal_with_eta(alg, eta).unwrap();
        let dev = hk::uniqueness_deviation(&x, c).unwrap();
        let want = c / (hk::lambda_squared(alg) as f64 * eta);
        prop_assert!((dev - want).abs() <= 1e-9 * want.max(1e-3));
    }

    #[test]
    fn positivity_matches_gram(which in 0usize..TYPES.len(), eta in 0.05f64..20.0, c in 0.0f64..30.0) {
        let alg = &algebras()[which];
        let x = OrbitPoint::minimal_with_eta(alg, eta).unwrap();
        let pot = PotentialFamily::for_algebra(alg, c).unwrap();
        let ts = orbit::tangent_space(&x).unwrap();
        let s = hk::HkStructure::new(&x, &pot).unwrap();
        let gram_min = orbit_hk::linalg::min_symmetric_eigenvalue(&hk::real_operators(&s, &ts).gram);
        prop_assert_eq!(hk::positivity_condition(&pot, eta), gram_min > 0.0);
    }

    #[test]
    fn derivative_identities_hold(which in 0usize..TYPES.len(), t in 0.2f64..2.0, a in coeffs(), b in coeffs()) {
        let alg = &algebras()[which];
        let x = OrbitPoint::minimal(alg, t).unwrap();
        let (u, v) = (element(alg, &a, &b), element(alg, &b, &a));
        prop_assert!(hk::derivative_identities(&x, &u, &v).unwrap().all_pass());
        prop_assert!(hk::derivative_identities(&x, &u, &u).unwrap().all_pass());
    }

    #[test]
    fn sk_facts(k in 0usize..=20) {
        prop_assert!(sl2geom::sk_matrices(k).facts().all_hold());
    }

    #[test]
    fn sl2_frame_and_eh_form(t in 0.05f64..5.0, c in 0.0f64..10.0, dr in 0.01f64..5.0) {
        let f = sl2geom::eh_metric_components(t, c).unwrap();
        prop_assert!(f.max_off_diagonal() < 1e-10 * f.diagonal().iter().cloned().fold(1.0, f64::max));
        prop_assert!(f.diagonal_mismatch() < 1e-9);
        prop_assert!((f.gram[1][1] - f.gram[2][2]).abs() <= 1e-12 * f.gram[1][1]);
        let r = (16.0 * c).powf(0.25) + dr;
        prop_assert!(sl2geom::eh_standard_form_check(r, c).unwrap() < 1e-9);
        let o = sl2geom::ode_residual(t * t * 4.0, c).unwrap();
        prop_assert!(o.residual.abs() < 1e-12 * (1.0 + c / (t * t)));
    }

    #[test]
    fn root_strings_and_reflections(which in 0usize..TYPES.len(), i in 0usize..200, j in 0usize..200) {
        let rs: &RootSystem = algebras()[which].root_system();
        let roots = rs.all_roots();
        let (a, b) = (&roots[i % roots.len()], &roots[j % roots.len()]);
        prop_assert!(rs.is_root(&rs.reflect(a, b)));
        if a != b && a.iter().zip(b.iter()).any(|(x, y)| *x != -*y) {
            let (p, q) = rs.root_string(a, b).unwrap();
            prop_assert_eq!(p - q, rs.cartan_pairing(b, a));
        }
    }
}
