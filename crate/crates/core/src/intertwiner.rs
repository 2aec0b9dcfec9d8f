//! The 4×2 amplitude `v(k)` mapping Wigner-basis spin states to covariant
//! bispinor states, and residuals of its defining identities.
//!
//! Columns are indexed by the Wigner spin label: column 0 is σ = +½,
//! column 1 is σ = −½.

use crate::dirac::{bispinor_rep, gammas};
use crate::linalg::{c, distance, max_abs, pauli, Mat2, Mat24, Mat4, Mat42};
use crate::lorentz::{
    hermitian_of, lambda_of_sl2c, wigner_rotation_spinor, LorentzTransform, OnShellMomentum, SpinorMap,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Intertwiner {
    matrix: Mat42,
    momentum: OnShellMomentum,
}

impl Intertwiner {
    pub fn matrix(&self) -> &Mat42 {
        &self.matrix
    }

    pub fn momentum(&self) -> &OnShellMomentum {
        &self.momentum
    }

    /// Dirac adjoint `v̄ = v†γ⁰`.
    pub fn bar(&self) -> Mat24 {
        self.matrix.adjoint() * gammas().upper[0]
    }

    /// `v v̄ = (kγ + m)/2m`.
    pub fn projector(&self) -> Mat4 {
        self.matrix * self.bar()
    }

    /// `v v†`, the kernel of the covariant-state inner product.
    pub fn gram(&self) -> Mat4 {
        self.matrix * self.matrix.adjoint()
    }
}

/// `v(k) = (2√(1+k⁰/m))⁻¹ · [(I + 𝗄/m)σ₂ ; (I + 𝗄ᴾ/m)σ₂]`.
pub fn v_of(k: &OnShellMomentum) -> Intertwiner {
    let m = k.mass();
    let s2 = pauli()[1];
    let kk = hermitian_of(&k.four_vector());
    let kp = hermitian_of(&k.parity().four_vector());
    let pref = 1.0 / (2.0 * (1.0 + k.energy() / m).sqrt());
    let top = (Mat2::identity() + kk / c(m)) * s2 * c(pref);
    let bottom = (Mat2::identity() + kp / c(m)) * s2 * c(pref);
    let mut matrix = Mat42::zeros();
    matrix.fixed_view_mut::<2, 2>(0, 0).copy_from(&top);
    matrix.fixed_view_mut::<2, 2>(2, 0).copy_from(&bottom);
    Intertwiner { matrix, momentum: *k }
}

pub fn gram(k: &OnShellMomentum) -> Mat4 {
    v_of(k).gram()
}

/// `‖(k_μγ^μ − m)v(k)‖` in max-abs norm.
pub fn dirac_residual(k: &OnShellMomentum) -> f64 {
    let g = gammas();
    let v = v_of(k);
    let op = g.slash(&k.four_vector()) - Mat4::identity() * c(k.mass());
    max_abs(&(op * v.matrix()))
}

/// Weinberg-condition residual for a spinor `A`:
/// `‖D(A) v(k) U(A,k)ᵀ − v(Λk)‖` with `U = A_{Λk}⁻¹ A A_k`. Flipping the sign of
/// `A` flips both `D(A)` and `U`, so the residual does not depend on it.
pub fn weinberg_residual_spinor(a: &SpinorMap, k: &OnShellMomentum) -> f64 {
    let d = bispinor_rep(a);
    let w = wigner_rotation_spinor(a, k);
    let lk = lambda_of_sl2c(a).apply_momentum(k);
    let lhs = d.matrix() * v_of(k).matrix() * w.su2.transpose();
    distance(&lhs, v_of(&lk).matrix())
}

/// Weinberg-condition residual for a Lorentz transformation; the spinor lift
/// is obtained by polar decomposition and both signs are tried.
pub fn weinberg_residual(lambda: &LorentzTransform, k: &OnShellMomentum) -> f64 {
    let a = SpinorMap::lift(lambda);
    // det(−A) = det A for 2×2 matrices
    let minus = SpinorMap::from_matrix_unchecked(-*a.matrix());
    weinberg_residual_spinor(&a, k).min(weinberg_residual_spinor(&minus, k))
}

/// Residuals of the normalization identities of `v(k)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NormalizationResiduals {
    /// `v̄v − I₂`
    pub vbar_v: f64,
    /// `v v̄ − (kγ + m)/2m`
    pub v_vbar: f64,
    /// `v̄γ^μv − (k^μ/m) I₂`, worst over μ
    pub vbar_gamma_v: f64,
    /// `P² − P` for `P = v v̄`
    pub idempotence: f64,
}

impl NormalizationResiduals {
    pub fn max(&self) -> f64 {
        self.vbar_v.max(self.v_vbar).max(self.vbar_gamma_v).max(self.idempotence)
    }
}

pub fn normalization_residuals(k: &OnShellMomentum) -> NormalizationResiduals {
    let g = gammas();
    let m = k.mass();
    let kv = k.four_vector();
    let v = v_of(k);
    let bar = v.bar();
    let proj = v.projector();
    let expected_proj = (g.slash(&kv) + Mat4::identity() * c(m)) / c(2.0 * m);
    let vbar_gamma_v = (0..4)
        .map(|mu| distance(&(bar * g.upper[mu] * v.matrix()), &(Mat2::identity() * c(kv[mu] / m))))
        .fold(0.0, f64::max);
    NormalizationResiduals {
        vbar_v: distance(&(bar * v.matrix()), &Mat2::identity()),
        v_vbar: distance(&proj, &expected_proj),
        vbar_gamma_v,
        idempotence: distance(&(proj * proj), &proj),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{block_diag, hermiticity_residual};
    use nalgebra::Vector3;

    fn mom(m: f64, x: f64, y: f64, z: f64) -> OnShellMomentum {
        OnShellMomentum::new(m, Vector3::new(x, y, z)).unwrap()
    }

    #[test]
    fn rest_frame_amplitude() {
        let v = v_of(&OnShellMomentum::at_rest(1.0).unwrap());
        let s2 = pauli()[1] * c(std::f64::consts::FRAC_1_SQRT_2);
        let mut expected = Mat42::zeros();
        expected.fixed_view_mut::<2, 2>(0, 0).copy_from(&s2);
        expected.fixed_view_mut::<2, 2>(2, 0).copy_from(&s2);
        assert!(distance(v.matrix(), &expected) < 1e-15);
    }

    #[test]
    fn standard_boost_carries_rest_amplitude() {
        let rest = v_of(&OnShellMomentum::at_rest(0.8).unwrap());
        for k in [mom(0.8, 0.3, -0.2, 0.9), mom(0.8, -4.0, 1.0, 2.5)] {
            let d = bispinor_rep(&crate::lorentz::sl2c_boost(&k));
            assert!(distance(&(d.matrix() * rest.matrix()), v_of(&k).matrix()) < 1e-12);
        }
    }

    #[test]
    fn normalization_identities() {
        for k in [mom(1.0, 0.3, -0.2, 0.9), mom(0.511, 2.0, 1.0, -3.0), mom(3.0, 0.0, 0.0, 0.0)] {
            let r = normalization_residuals(&k);
            assert!(r.max() < 1e-12, "{r:?}");
        }
    }

    #[test]
    fn dirac_equation() {
        assert!(dirac_residual(&OnShellMomentum::at_rest(1.0).unwrap()) < 1e-15);
        assert!(dirac_residual(&mom(1.0, 0.4, 1.9, -0.7)) < 1e-12);
        assert!(dirac_residual(&mom(0.511, 0.4, 1.9, -0.7)) < 1e-12);
    }

    #[test]
    fn weinberg_condition() {
        let k = mom(1.0, 0.5, -0.3, 1.2);
        assert!(weinberg_residual(&LorentzTransform::identity(), &k) < 1e-15);

        let p = mom(1.0, -1.1, 0.2, 0.4);
        let rest = OnShellMomentum::at_rest(1.0).unwrap();
        let boost = crate::lorentz::standard_boost(&p);
        assert!(weinberg_residual(&boost, &rest) < 1e-12);

        let rot = LorentzTransform::rotation(&Vector3::new(0.2, 1.0, -1.0), 2.4).unwrap();
        assert!(weinberg_residual(&rot, &k) < 1e-12);

        let general = rot * LorentzTransform::boost(&Vector3::new(1.0, 1.0, 1.0), 1.3).unwrap();
        assert!(weinberg_residual(&general, &k) < 1e-12);
    }

    #[test]
    fn gram_examples() {
        let rest = gram(&OnShellMomentum::at_rest(1.0).unwrap());
        let id = Mat2::identity();
        let mut expected = block_diag(&id, &id);
        expected.fixed_view_mut::<2, 2>(0, 2).copy_from(&id);
        expected.fixed_view_mut::<2, 2>(2, 0).copy_from(&id);
        assert!(distance(&rest, &(expected * c(0.5))) < 1e-15);

        let k = mom(1.0, 0.8, 0.1, -0.6);
        assert!(hermiticity_residual(&gram(&k)) < 1e-15);
        let v = v_of(&k);
        let g0 = gammas().upper[0];
        let lhs = v.bar() * g0 * v.matrix();
        assert!(distance(&lhs, &(Mat2::identity() * c(k.energy() / k.mass()))) < 1e-12);
    }
}
