//! Small dense complex matrix helpers shared by the physics modules.

use nalgebra::{Matrix2, Matrix4, SMatrix, Vector3};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat2 = Matrix2<C64>;
pub type Mat4 = Matrix4<C64>;
pub type Mat42 = SMatrix<C64, 4, 2>;
pub type Mat24 = SMatrix<C64, 2, 4>;
pub type Mat16 = SMatrix<C64, 16, 16>;

pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// The Pauli matrices σ₁, σ₂, σ₃.
pub fn pauli() -> [Mat2; 3] {
    let o = c(0.0);
    let l = c(1.0);
    [
        Mat2::new(o, l, l, o),
        Mat2::new(o, -I, I, o),
        Mat2::new(l, o, o, -l),
    ]
}

/// `v · σ` for a real 3-vector.
pub fn sigma_dot(v: &Vector3<f64>) -> Mat2 {
    let [s1, s2, s3] = pauli();
    s1 * c(v.x) + s2 * c(v.y) + s3 * c(v.z)
}

/// Block-diagonal 4×4 matrix `diag(a, b)`.
pub fn block_diag(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(b);
    m
}

/// 4×4 matrix built from four 2×2 blocks `[[a, b], [c, d]]`.
pub fn blocks(a: &Mat2, b: &Mat2, cc: &Mat2, d: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(cc);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
    m
}

pub fn max_abs<const R: usize, const C: usize>(m: &SMatrix<C64, R, C>) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_real<const R: usize, const C: usize>(m: &SMatrix<f64, R, C>) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

/// Max-abs distance between two complex matrices of equal shape.
pub fn distance<const R: usize, const C: usize>(a: &SMatrix<C64, R, C>, b: &SMatrix<C64, R, C>) -> f64 {
    max_abs(&(a - b))
}

/// Distance up to an overall sign, `min(‖a − b‖, ‖a + b‖)`.
pub fn projective_distance<const R: usize, const C: usize>(
    a: &SMatrix<C64, R, C>,
    b: &SMatrix<C64, R, C>,
) -> f64 {
    max_abs(&(a - b)).min(max_abs(&(a + b)))
}

pub fn hermiticity_residual<const N: usize>(m: &SMatrix<C64, N, N>) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn commutator(a: &Mat4, b: &Mat4) -> Mat4 {
    a * b - b * a
}

pub fn to_complex<const R: usize, const C: usize>(m: &SMatrix<f64, R, C>) -> SMatrix<C64, R, C> {
    m.map(c)
}

/// Levi-Civita symbol on three indices.
pub fn levi_civita3(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Levi-Civita symbol with upper indices, ε⁰¹²³ = +1.
pub fn levi_civita4(idx: [usize; 4]) -> f64 {
    let mut p = idx;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if p[i] == p[j] {
                return 0.0;
            }
        }
    }
    let mut sign = 1.0;
    for i in 0..4 {
        while p[i] != i {
            let t = p[i];
            p.swap(i, t);
            sign = -sign;
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        let s = pauli();
        let id = Mat2::identity();
        for a in &s {
            assert!(distance(&(a * a), &id) < 1e-15);
        }
        assert!(distance(&(s[0] * s[1]), &(s[2] * I)) < 1e-15);
    }

    #[test]
    fn epsilon_signs() {
        assert_eq!(levi_civita4([0, 1, 2, 3]), 1.0);
        assert_eq!(levi_civita4([1, 0, 2, 3]), -1.0);
        assert_eq!(levi_civita4([1, 2, 0, 3]), 1.0);
        assert_eq!(levi_civita4([3, 2, 1, 0]), 1.0);
        assert_eq!(levi_civita4([0, 0, 2, 3]), 0.0);
        assert_eq!(levi_civita3(2, 1, 0), -1.0);
    }
}
