use nalgebra::{Matrix4, Vector3};
use num_complex::Complex64;
use proptest::prelude::*;

use relspin::bmt::{integrate, spin_from_w, EMField, ParticleParams, SpinKinState};
use relspin::density::{
    decompose, entropy, omega_sharp, theta_tilde, transform_omega, transform_theta_normalized, SharpState,
};
use relspin::epr::{correlation_trace, TwoParticleState};
use relspin::lorentz::{lambda_of_sl2c, standard_boost, OnShellMomentum, SpinorMap};

fn rel(a: &Matrix4<Complex64>, b: &Matrix4<Complex64>) -> f64 {
    let scale = b.iter().map(|z| z.norm()).fold(1.0_f64, f64::max);
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max) / scale
}

fn vec3(r: f64) -> impl Strategy<Value = Vector3<f64>> {
    (-r..r, -r..r, -r..r).prop_map(|(x, y, z)| Vector3::new(x, y, z))
}

fn unit() -> impl Strategy<Value = Vector3<f64>> {
    vec3(1.0).prop_filter("nonzero", |v| v.norm() > 0.1).prop_map(|v| v.normalize())
}

fn bloch() -> impl Strategy<Value = Vector3<f64>> {
    (vec3(1.0), 0.0..=1.0).prop_map(|(v, r)| if v.norm() > 1e-3 { v.normalize() * r } else { Vector3::zeros() })
}

fn momentum(mass: f64) -> impl Strategy<Value = OnShellMomentum> {
    vec3(4.0).prop_map(move |v| OnShellMomentum::new(mass, v * mass).unwrap())
}

fn sharp() -> impl Strategy<Value = SharpState> {
    (0.5..3.0).prop_flat_map(|m| (momentum(m), bloch())).prop_map(|(q, xi)| SharpState::new(q, xi).unwrap())
}

/// Boost followed by a rotation, rapidity at most 2.
fn spinor() -> impl Strategy<Value = SpinorMap> {
    (unit(), 0.0..2.0, unit(), -3.2..3.2).prop_map(|(bn, eta, rn, ang)| {
        SpinorMap::rotation(&rn, ang).unwrap() * SpinorMap::boost(&bn, eta).unwrap()
    })
}

fn rotation() -> impl Strategy<Value = (SpinorMap, nalgebra::Matrix3<f64>)> {
    (unit(), -3.2..3.2).prop_map(|(n, ang)| {
        let a = SpinorMap::rotation(&n, ang).unwrap();
        let r = lambda_of_sl2c(&a).spatial_block();
        (a, r)
    })
}

fn pair() -> impl Strategy<Value = (OnShellMomentum, OnShellMomentum)> {
    (0.5..3.0).prop_flat_map(|m| (momentum(m), momentum(m)))
}

fn corr(k: &OnShellMomentum, p: &OnShellMomentum, a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    correlation_trace(&TwoParticleState::singlet(*k, *p).unwrap(), a, b).unwrap()
}

proptest! {
    #[test]
    fn omega_transforms_covariantly(st in sharp(), a in spinor()) {
        let lam = lambda_of_sl2c(&a);
        let q = *st.momentum();
        let q2 = lam.apply_momentum(&q);
        let r = (standard_boost(&q2).inverse() * lam * standard_boost(&q)).spatial_block();
        let moved = SharpState::new(q2, r * st.bloch()).unwrap();
        let lhs = transform_omega(&omega_sharp(&st), &a);
        prop_assert!(rel(lhs.matrix(), omega_sharp(&moved).matrix()) < 1e-10);
        prop_assert!((lhs.trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn decomposition_round_trips(st in sharp()) {
        let om = omega_sharp(&st);
        let back = decompose(&om).to_omega(st.momentum().mass()).unwrap();
        prop_assert!(rel(back.matrix(), om.matrix()) < 1e-12);
    }

    #[test]
    fn sharp_entropy_is_boost_invariant(st in sharp(), a in spinor()) {
        let th = theta_tilde(&omega_sharp(&st)).unwrap();
        let s0 = entropy(&th).unwrap();
        let s1 = entropy(&transform_theta_normalized(&th, &a)).unwrap();
        prop_assert!((s0 - s1).abs() < 1e-10);
    }

    #[test]
    fn correlation_is_bounded((k, p) in pair(), a in unit(), b in unit()) {
        prop_assert!(corr(&k, &p, &a, &b).abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn correlation_swap_symmetry((k, p) in pair(), a in unit(), b in unit()) {
        let c1 = corr(&k, &p, &a, &b);
        let c2 = corr(&p, &k, &b, &a);
        prop_assert!((c1 - c2).abs() < 1e-12);
    }

    #[test]
    fn correlation_rotation_invariant((k, p) in pair(), a in unit(), b in unit(), (_, r) in rotation()) {
        let m = k.mass();
        let k2 = OnShellMomentum::new(m, r * k.spatial()).unwrap();
        let p2 = OnShellMomentum::new(m, r * p.spatial()).unwrap();
        let c1 = corr(&k, &p, &a, &b);
        let c2 = corr(&k2, &p2, &(r * a), &(r * b));
        prop_assert!((c1 - c2).abs() < 1e-12);
    }

    #[test]
    fn rotated_omega_matches_rotated_state(st in sharp(), (a, r) in rotation()) {
        // for rotations the Wigner rotation is the rotation itself
        let q = st.momentum();
        let moved = SharpState::new(OnShellMomentum::new(q.mass(), r * q.spatial()).unwrap(), r * st.bloch()).unwrap();
        let lhs = transform_omega(&omega_sharp(&st), &a);
        prop_assert!(rel(lhs.matrix(), omega_sharp(&moved).matrix()) < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bloch_length_conserved_in_uniform_b(
        q in vec3(1.5),
        bfield in vec3(2.0),
        (alpha, beta) in (-0.7..0.7_f64, -0.7..0.7_f64),
    ) {
        prop_assume!(q.norm() > 0.05 && bfield.norm() > 0.05);
        let p = ParticleParams::from_g(1.0, 1.0, 2.0).unwrap();
        let k = OnShellMomentum::new(1.0, q).unwrap();
        // spin in the plane of q⃗ and B⃗
        let xi = q.normalize() * alpha + bfield.normalize() * beta;
        prop_assume!(xi.norm() <= 1.0);
        let s0 = SpinKinState::from_momentum_and_bloch(&k, &xi);
        // keep the rotation per step small so truncation error stays far below the bound
        let dtau = 2e-3 / bfield.norm().max(1.0);
        let traj = integrate(&s0, &EMField::magnetic(bfield), &p, dtau, 500).unwrap();
        let end = traj.last();
        let xi_end = spin_from_w(&end.q, &end.w, 1.0).unwrap();
        prop_assert!((xi_end.norm() - xi.norm()).abs() < 1e-9);
        prop_assert!((end.q.spatial().norm() - q.norm()).abs() < 1e-9);
    }
}
