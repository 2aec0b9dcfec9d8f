//! Minkowski kinematics: four-vectors, mass-shell momenta, proper orthochronous
//! Lorentz transformations, their SL(2,C) lifts and Wigner rotations.
//!
//! Natural units (ħ = c = 1) and the metric `diag(1, −1, −1, −1)` are used
//! throughout.

use std::ops::{Add, Index, Mul, Neg, Sub};

use nalgebra::{Matrix3, Matrix4, Rotation3, UnitQuaternion, Vector3, Vector4};

use crate::error::{Error, Result};
use crate::linalg::{c, max_abs, max_abs_real, pauli, sigma_dot, Mat2, I};

/// Minkowski metric `diag(1, −1, −1, −1)`.
pub fn metric() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
}

/// A real contravariant four-vector `(t, x, y, z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourVector(Vector4<f64>);

impl FourVector {
    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector(Vector4::new(t, x, y, z))
    }

    pub fn from_parts(t: f64, spatial: Vector3<f64>) -> Self {
        Self::new(t, spatial.x, spatial.y, spatial.z)
    }

    pub fn zero() -> Self {
        FourVector(Vector4::zeros())
    }

    pub fn from_vector(v: Vector4<f64>) -> Self {
        FourVector(v)
    }

    pub fn t(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> Vector3<f64> {
        Vector3::new(self.0[1], self.0[2], self.0[3])
    }

    pub fn as_vector(&self) -> &Vector4<f64> {
        &self.0
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.0[0], self.0[1], self.0[2], self.0[3]]
    }

    /// Covariant components `x_μ = g_μν x^ν`.
    pub fn lower(&self) -> FourVector {
        FourVector::new(self.0[0], -self.0[1], -self.0[2], -self.0[3])
    }

    pub fn dot(&self, other: &FourVector) -> f64 {
        minkowski_dot(self, other)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.dot(self)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        FourVector(self.0 + rhs.0)
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector(self.0 - rhs.0)
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        FourVector(-self.0)
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, rhs: f64) -> FourVector {
        FourVector(self.0 * rhs)
    }
}

/// Minkowski product `u⁰v⁰ − u⃗·v⃗`.
pub fn minkowski_dot(u: &FourVector, v: &FourVector) -> f64 {
    u.0[0] * v.0[0] - u.0[1] * v.0[1] - u.0[2] * v.0[2] - u.0[3] * v.0[3]
}

/// A four-momentum on the positive-energy mass shell `k·k = m²`, stored by its
/// mass and spatial part; the energy is always derived.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OnShellMomentum {
    mass: f64,
    spatial: Vector3<f64>,
}

impl OnShellMomentum {
    pub fn new(mass: f64, spatial: Vector3<f64>) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidMass(mass));
        }
        if !spatial.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("momentum"));
        }
        Ok(OnShellMomentum { mass, spatial })
    }

    /// The rest momentum `k̃ = (m, 0⃗)`.
    pub fn at_rest(mass: f64) -> Result<Self> {
        Self::new(mass, Vector3::zeros())
    }

    /// Momentum of a particle of mass `m` moving with rapidity `eta` along `axis`.
    pub fn with_rapidity(mass: f64, axis: &Vector3<f64>, rapidity: f64) -> Result<Self> {
        let n = unit(axis, "axis")?;
        Self::new(mass, n * (mass * rapidity.sinh()))
    }

    /// Momentum of a particle of mass `m` moving with velocity `beta` along `axis`.
    pub fn with_velocity(mass: f64, axis: &Vector3<f64>, beta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&beta.abs()) {
            return Err(Error::Superluminal(beta));
        }
        let n = unit(axis, "axis")?;
        let gamma = 1.0 / (1.0 - beta * beta).sqrt();
        Self::new(mass, n * (mass * gamma * beta))
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn spatial(&self) -> Vector3<f64> {
        self.spatial
    }

    pub fn energy(&self) -> f64 {
        (self.mass * self.mass + self.spatial.norm_squared()).sqrt()
    }

    pub fn four_vector(&self) -> FourVector {
        FourVector::from_parts(self.energy(), self.spatial)
    }

    /// Parity image `(k⁰, −k⃗)`.
    pub fn parity(&self) -> OnShellMomentum {
        OnShellMomentum { mass: self.mass, spatial: -self.spatial }
    }

    pub fn is_at_rest(&self) -> bool {
        self.spatial == Vector3::zeros()
    }

    /// Velocity `|k⃗| / k⁰`.
    pub fn beta(&self) -> f64 {
        self.spatial.norm() / self.energy()
    }
}

pub(crate) fn unit(v: &Vector3<f64>, name: &'static str) -> Result<Vector3<f64>> {
    let norm = v.norm();
    if !norm.is_finite() || norm == 0.0 {
        return Err(Error::NotUnitVector { name, norm });
    }
    Ok(v / norm)
}

pub(crate) fn require_unit(v: &Vector3<f64>, name: &'static str) -> Result<()> {
    let norm = v.norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotUnitVector { name, norm });
    }
    Ok(())
}

/// A proper orthochronous Lorentz transformation `Λ^μ_ν`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzTransform(Matrix4<f64>);

impl LorentzTransform {
    pub fn identity() -> Self {
        LorentzTransform(Matrix4::identity())
    }

    /// Validates `ΛᵀgΛ = g`, `det Λ = 1` and `Λ⁰₀ ≥ 1`.
    pub fn from_matrix(m: Matrix4<f64>) -> Result<Self> {
        if !m.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("Lorentz matrix"));
        }
        let t = LorentzTransform(m);
        let scale = max_abs_real(&m).max(1.0).powi(2);
        let res = t.metric_residual();
        if res > 1e-9 * scale || m[(0, 0)] < 1.0 - 1e-9 || (m.determinant() - 1.0).abs() > 1e-6 * scale {
            return Err(Error::NotLorentz(res));
        }
        Ok(t)
    }

    /// Pure boost with the given rapidity along `axis` (active: moves a rest
    /// particle towards `+axis`).
    pub fn boost(axis: &Vector3<f64>, rapidity: f64) -> Result<Self> {
        let k = OnShellMomentum::with_rapidity(1.0, axis, rapidity)?;
        Ok(standard_boost(&k))
    }

    /// Pure boost imparting the velocity `v` (|v| < 1) to a particle at rest.
    pub fn boost_velocity(v: &Vector3<f64>) -> Result<Self> {
        let beta = v.norm();
        if beta >= 1.0 || !beta.is_finite() {
            return Err(Error::Superluminal(beta));
        }
        if beta == 0.0 {
            return Ok(Self::identity());
        }
        let k = OnShellMomentum::with_velocity(1.0, v, beta)?;
        Ok(standard_boost(&k))
    }

    /// Active rotation by `angle` about `axis` (right-hand rule).
    pub fn rotation(axis: &Vector3<f64>, angle: f64) -> Result<Self> {
        let n = unit(axis, "axis")?;
        let r = Rotation3::from_axis_angle(&nalgebra::Unit::new_unchecked(n), angle);
        Ok(Self::from_rotation_matrix(r.matrix()))
    }

    pub fn from_rotation_matrix(r: &Matrix3<f64>) -> Self {
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(1, 1).copy_from(r);
        LorentzTransform(m)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// `Λ⁻¹ = g Λᵀ g`.
    pub fn inverse(&self) -> Self {
        let g = metric();
        LorentzTransform(g * self.0.transpose() * g)
    }

    pub fn apply(&self, v: &FourVector) -> FourVector {
        FourVector(self.0 * v.0)
    }

    /// Image of an on-shell momentum; the energy is re-derived from the
    /// transformed spatial part.
    pub fn apply_momentum(&self, k: &OnShellMomentum) -> OnShellMomentum {
        let kp = self.apply(&k.four_vector());
        OnShellMomentum { mass: k.mass, spatial: kp.spatial() }
    }

    /// Max-abs residual of `ΛᵀgΛ − g`.
    pub fn metric_residual(&self) -> f64 {
        let g = metric();
        max_abs_real(&(self.0.transpose() * g * self.0 - g))
    }

    /// Spatial 3×3 block `Λⁱⱼ`.
    pub fn spatial_block(&self) -> Matrix3<f64> {
        self.0.fixed_view::<3, 3>(1, 1).into_owned()
    }

    /// Polar decomposition `Λ = L_u · R` into a pure standard boost and a
    /// spatial rotation.
    pub fn polar(&self) -> (LorentzTransform, Matrix3<f64>) {
        let u = Vector3::new(self.0[(1, 0)], self.0[(2, 0)], self.0[(3, 0)]);
        let boost = standard_boost(&OnShellMomentum { mass: 1.0, spatial: u });
        let rot = boost.inverse() * *self;
        (boost, rot.spatial_block())
    }
}

impl Mul for LorentzTransform {
    type Output = LorentzTransform;
    fn mul(self, rhs: LorentzTransform) -> LorentzTransform {
        LorentzTransform(self.0 * rhs.0)
    }
}

/// An element of SL(2,C).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorMap(Mat2);

impl SpinorMap {
    /// Rejects matrices whose determinant differs from 1.
    pub fn new(m: Mat2) -> Result<Self> {
        if !m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("spinor matrix"));
        }
        let scale = max_abs(&m).max(1.0).powi(2);
        let dev = (m.determinant() - c(1.0)).norm();
        if dev > 1e-9 * scale {
            return Err(Error::NotUnimodular(dev));
        }
        Ok(SpinorMap(m))
    }

    pub(crate) fn from_matrix_unchecked(m: Mat2) -> Self {
        SpinorMap(m)
    }

    pub fn identity() -> Self {
        SpinorMap(Mat2::identity())
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    /// `A⁻¹`, using `det A = 1`.
    pub fn inverse(&self) -> Self {
        let m = &self.0;
        SpinorMap(Mat2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]))
    }

    pub fn adjoint(&self) -> Self {
        SpinorMap(self.0.adjoint())
    }

    /// `exp(−iθ n⃗·σ⃗/2)`, the lift of an active rotation by `angle` about `axis`.
    pub fn rotation(axis: &Vector3<f64>, angle: f64) -> Result<Self> {
        let n = unit(axis, "axis")?;
        let (s, co) = (angle / 2.0).sin_cos();
        Ok(SpinorMap(Mat2::identity() * c(co) - sigma_dot(&n) * (I * s)))
    }

    /// `exp(η n⃗·σ⃗/2)`, the positive Hermitian lift of a boost.
    pub fn boost(axis: &Vector3<f64>, rapidity: f64) -> Result<Self> {
        let n = unit(axis, "axis")?;
        let half = rapidity / 2.0;
        Ok(SpinorMap(Mat2::identity() * c(half.cosh()) + sigma_dot(&n) * c(half.sinh())))
    }

    /// SU(2) lift of a 3×3 rotation matrix (one of the two preimages).
    pub fn from_rotation_matrix(r: &Matrix3<f64>) -> Self {
        let q = UnitQuaternion::from_rotation_matrix(&Rotation3::from_matrix_unchecked(*r));
        let [s1, s2, s3] = pauli();
        SpinorMap(Mat2::identity() * c(q.w) - (s1 * c(q.i) + s2 * c(q.j) + s3 * c(q.k)) * I)
    }

    /// Lift of a proper orthochronous Λ through its polar decomposition; the
    /// overall sign is not physical.
    pub fn lift(lambda: &LorentzTransform) -> Self {
        let (boost, rot) = lambda.polar();
        let u = boost.0.column(0);
        let b = sl2c_boost(&OnShellMomentum { mass: 1.0, spatial: Vector3::new(u[1], u[2], u[3]) });
        b * Self::from_rotation_matrix(&rot)
    }

    pub fn lorentz(&self) -> LorentzTransform {
        lambda_of_sl2c(self)
    }
}

impl Mul for SpinorMap {
    type Output = SpinorMap;
    fn mul(self, rhs: SpinorMap) -> SpinorMap {
        SpinorMap(self.0 * rhs.0)
    }
}

/// Canonical rotation-free boost `L_k` with `L_k k̃ = k`.
pub fn standard_boost(k: &OnShellMomentum) -> LorentzTransform {
    let m = k.mass;
    let k0 = k.energy();
    let kv = k.spatial;
    let mut l = Matrix4::zeros();
    l[(0, 0)] = k0 / m;
    for i in 0..3 {
        l[(0, i + 1)] = kv[i] / m;
        l[(i + 1, 0)] = kv[i] / m;
        for j in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            l[(i + 1, j + 1)] = delta + kv[i] * kv[j] / (m * (k0 + m));
        }
    }
    LorentzTransform(l)
}

/// Positive Hermitian `A_k = ((k⁰+m)I + k⃗·σ⃗) / √(2m(k⁰+m))`, the spinor lift
/// of [`standard_boost`].
pub fn sl2c_boost(k: &OnShellMomentum) -> SpinorMap {
    let m = k.mass;
    let k0 = k.energy();
    let norm = (2.0 * m * (k0 + m)).sqrt();
    SpinorMap((Mat2::identity() * c(k0 + m) + sigma_dot(&k.spatial)) / c(norm))
}

/// `k^μ σ_μ` with `σ_0 = I`.
pub fn hermitian_of(k: &FourVector) -> Mat2 {
    Mat2::identity() * c(k.t()) + sigma_dot(&k.spatial())
}

/// Canonical homomorphism SL(2,C) → L↑₊, defined by
/// `(Λk)^μ σ_μ = A (k^μ σ_μ) A†`, i.e. `Λ^μ_ν = ½ Tr(σ_μ A σ_ν A†)`.
pub fn lambda_of_sl2c(a: &SpinorMap) -> LorentzTransform {
    let s = pauli();
    let basis = [Mat2::identity(), s[0], s[1], s[2]];
    let ad = a.0.adjoint();
    let mut l = Matrix4::zeros();
    for nu in 0..4 {
        let image = a.0 * basis[nu] * ad;
        for mu in 0..4 {
            l[(mu, nu)] = 0.5 * (basis[mu] * image).trace().re;
        }
    }
    LorentzTransform(l)
}

/// Wigner rotation `R(Λ,k) = L_{Λk}⁻¹ Λ L_k` in both its SO(3) and SU(2)
/// forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WignerRotation {
    pub so3: Matrix3<f64>,
    pub su2: Mat2,
}

impl WignerRotation {
    /// Rotates a Bloch vector.
    pub fn rotate(&self, v: &Vector3<f64>) -> Vector3<f64> {
        self.so3 * v
    }
}

/// Wigner rotation of an arbitrary proper orthochronous Λ. The SU(2) factor
/// is computed from the polar lift of Λ and its sign chosen so that
/// `Re Tr su2 ≥ 0`, i.e. the branch connected to the identity.
pub fn wigner_rotation(lambda: &LorentzTransform, k: &OnShellMomentum) -> WignerRotation {
    let a = SpinorMap::lift(lambda);
    let mut w = wigner_rotation_spinor(&a, k);
    if w.su2.trace().re < 0.0 {
        w.su2 = -w.su2;
    }
    w
}

/// Wigner rotation for a given spinor `A`: SU(2) part `A_{Λk}⁻¹ A A_k`, with
/// the sign inherited from `A`.
pub fn wigner_rotation_spinor(a: &SpinorMap, k: &OnShellMomentum) -> WignerRotation {
    let lambda = lambda_of_sl2c(a);
    let lk = lambda.apply_momentum(k);
    let su2 = sl2c_boost(&lk).inverse().0 * a.0 * sl2c_boost(k).0;
    let full = standard_boost(&lk).inverse() * lambda * standard_boost(k);
    WignerRotation { so3: full.spatial_block(), su2 }
}
