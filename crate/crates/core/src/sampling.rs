//! Seeded random generators for Lorentz-group elements, momenta and spin
//! directions. Used by the identity suites and the property tests.
//!
//! Rotations come from uniformly sampled unit quaternions; boosts have
//! rapidity at most `max_rapidity`.

use nalgebra::{Matrix3, UnitQuaternion, Quaternion, Vector3};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::lorentz::{LorentzTransform, OnShellMomentum, SpinorMap};

pub type SuiteRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        );
        let n = v.norm();
        if n > 1e-6 {
            return v / n;
        }
    }
}

/// Uniform point of the closed unit ball.
pub fn bloch_vector<R: Rng + ?Sized>(rng: &mut R) -> Vector3<f64> {
    let r: f64 = rng.random::<f64>().cbrt();
    unit_vector(rng) * r
}

pub fn rotation_matrix<R: Rng + ?Sized>(rng: &mut R) -> Matrix3<f64> {
    let q = Quaternion::new(
        rng.sample::<f64, _>(StandardNormal),
        rng.sample::<f64, _>(StandardNormal),
        rng.sample::<f64, _>(StandardNormal),
        rng.sample::<f64, _>(StandardNormal),
    );
    UnitQuaternion::from_quaternion(q).to_rotation_matrix().into_inner()
}

pub fn rotation<R: Rng + ?Sized>(rng: &mut R) -> LorentzTransform {
    LorentzTransform::from_rotation_matrix(&rotation_matrix(rng))
}

pub fn boost<R: Rng + ?Sized>(rng: &mut R, max_rapidity: f64) -> LorentzTransform {
    let eta = rng.random_range(0.0..=max_rapidity);
    LorentzTransform::boost(&unit_vector(rng), eta).expect("unit axis")
}

/// `R₁ · B · R₂`, a generic proper orthochronous transformation.
pub fn lorentz<R: Rng + ?Sized>(rng: &mut R, max_rapidity: f64) -> LorentzTransform {
    rotation(rng) * boost(rng, max_rapidity) * rotation(rng)
}

pub fn spinor_rotation<R: Rng + ?Sized>(rng: &mut R) -> SpinorMap {
    let angle = rng.random_range(0.0..std::f64::consts::TAU);
    SpinorMap::rotation(&unit_vector(rng), angle).expect("unit axis")
}

pub fn spinor_boost<R: Rng + ?Sized>(rng: &mut R, max_rapidity: f64) -> SpinorMap {
    let eta = rng.random_range(0.0..=max_rapidity);
    SpinorMap::boost(&unit_vector(rng), eta).expect("unit axis")
}

pub fn spinor<R: Rng + ?Sized>(rng: &mut R, max_rapidity: f64) -> SpinorMap {
    spinor_rotation(rng) * spinor_boost(rng, max_rapidity) * spinor_rotation(rng)
}

/// On-shell momentum with rapidity uniform in `[0, max_rapidity]` and
/// isotropic direction.
pub fn momentum<R: Rng + ?Sized>(rng: &mut R, mass: f64, max_rapidity: f64) -> OnShellMomentum {
    let eta = rng.random_range(0.0..=max_rapidity);
    OnShellMomentum::with_rapidity(mass, &unit_vector(rng), eta).expect("valid mass")
}

pub fn mass<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    10f64.powf(rng.random_range(-1.0..1.0))
}
