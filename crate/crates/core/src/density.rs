//! Covariant reduced spin density matrices for a single massive spin-½
//! particle: construction from sharp-momentum states and finite ensembles,
//! Lorentz transformation, decomposition into mean momentum / Pauli–Lubanski
//! vector / spin tensor, von Neumann entropy and the normalized spin average.
//!
//! A general state is modelled as a finite [`Ensemble`] of sharp-momentum
//! states. `Ω` only sees momentum-diagonal matrix elements of the full density
//! operator, so the weighted sum of sharp-state matrices is exact for this
//! class.

use nalgebra::{Matrix4, SymmetricEigen, Vector3};

use crate::dirac::{bispinor_rep, gammas, lorentz_generators};
use crate::error::{Error, Result};
use crate::linalg::{c, hermiticity_residual, max_abs, sigma_dot, Mat2, Mat4, I};
use crate::lorentz::{lambda_of_sl2c, wigner_rotation_spinor, FourVector, OnShellMomentum, SpinorMap};

/// Allowed deviation of ensemble weights from unit sum.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;
/// Eigenvalues of θ̃ above `−EIGEN_CLAMP · max(1, ‖θ̃‖)` are treated as zero.
pub const EIGEN_CLAMP: f64 = 1e-12;

/// A particle with sharp momentum `q` and rest-frame Bloch vector `ξ⃗`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SharpState {
    momentum: OnShellMomentum,
    bloch: Vector3<f64>,
}

impl SharpState {
    pub fn new(momentum: OnShellMomentum, bloch: Vector3<f64>) -> Result<Self> {
        let len = bloch.norm();
        if !len.is_finite() {
            return Err(Error::NonFinite("Bloch vector"));
        }
        if len > 1.0 + 1e-12 {
            return Err(Error::BlochOutOfRange(len));
        }
        Ok(SharpState { momentum, bloch })
    }

    pub fn momentum(&self) -> &OnShellMomentum {
        &self.momentum
    }

    pub fn bloch(&self) -> &Vector3<f64> {
        &self.bloch
    }

    /// Rest-frame 2×2 spin density `½(I + ξ⃗·σ⃗)`.
    pub fn rest_spin_density(&self) -> Mat2 {
        (Mat2::identity() + sigma_dot(&self.bloch)) * c(0.5)
    }

    /// The same physical state seen after applying `A`: momentum `Λq`, Bloch
    /// vector rotated by the Wigner rotation `R(Λ, q)`.
    pub fn transformed(&self, a: &SpinorMap) -> SharpState {
        let w = wigner_rotation_spinor(a, &self.momentum);
        SharpState {
            momentum: lambda_of_sl2c(a).apply_momentum(&self.momentum),
            bloch: w.rotate(&self.bloch),
        }
    }
}

/// Finite mixture of sharp-momentum states with positive weights summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Ensemble {
    entries: Vec<(f64, SharpState)>,
}

impl Ensemble {
    pub fn new(entries: Vec<(f64, SharpState)>) -> Result<Self> {
        let first = entries.first().ok_or(Error::EmptyEnsemble)?;
        let mass = first.1.momentum.mass();
        let mut total = 0.0;
        for (w, s) in &entries {
            if !(w.is_finite() && *w > 0.0) {
                return Err(Error::NonPositiveWeight(*w));
            }
            if s.momentum.mass() != mass {
                return Err(Error::MassMismatch(mass, s.momentum.mass()));
            }
            total += w;
        }
        if (total - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::WeightsNotNormalized(total));
        }
        Ok(Ensemble { entries })
    }

    pub fn single(state: SharpState) -> Self {
        Ensemble { entries: vec![(1.0, state)] }
    }

    pub fn entries(&self) -> &[(f64, SharpState)] {
        &self.entries
    }

    pub fn mass(&self) -> f64 {
        self.entries[0].1.momentum.mass()
    }

    pub fn transformed(&self, a: &SpinorMap) -> Ensemble {
        Ensemble {
            entries: self.entries.iter().map(|(w, s)| (*w, s.transformed(a))).collect(),
        }
    }
}

/// The 4×4 covariant reduced density matrix `Ω = θγ⁰`, together with the
/// particle mass needed to interpret it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OmegaMatrix {
    matrix: Mat4,
    mass: f64,
}

impl OmegaMatrix {
    pub fn from_matrix(matrix: Mat4, mass: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidMass(mass));
        }
        Ok(OmegaMatrix { matrix, mass })
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.matrix
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }
}

/// Coefficients of `Ω` in the Clifford basis.
///
/// `u` and `w` are contravariant; `s` holds the covariant spin tensor
/// `s_{μν} = Tr(Ω Σ_{μν})`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinDecomposition {
    pub a: f64,
    pub b: f64,
    pub u: FourVector,
    pub w: FourVector,
    pub s: Matrix4<f64>,
}

impl SpinDecomposition {
    /// Rebuilds `Ω = ¼(a − b iγ⁵ + u_μγ^μ + (2/m) w_μγ⁵γ^μ + 2 s_{μν}Σ^{μν})`.
    ///
    /// The pseudoscalar enters with `−b` so that `b = Tr(iΩγ⁵)` round-trips.
    pub fn to_omega(&self, mass: f64) -> Result<OmegaMatrix> {
        let g = gammas();
        let gen = lorentz_generators();
        let mut m = Mat4::identity() * c(self.a) - g.g5 * (I * self.b);
        m += g.slash(&self.u);
        m += g.g5 * g.slash(&self.w) * c(2.0 / mass);
        for mu in 0..4 {
            for nu in 0..4 {
                if self.s[(mu, nu)] != 0.0 {
                    m += gen.get(mu, nu) * c(2.0 * self.s[(mu, nu)]);
                }
            }
        }
        OmegaMatrix::from_matrix(m * c(0.25), mass)
    }
}

/// Mean Pauli–Lubanski vector of a sharp state: `L_q (0, mξ⃗/2)`.
pub fn mean_w(state: &SharpState) -> FourVector {
    let q = &state.momentum;
    let m = q.mass();
    let qv = q.spatial();
    let qxi = qv.dot(&state.bloch);
    let spatial = (state.bloch * m + qv * (qxi / (q.energy() + m))) * 0.5;
    FourVector::from_parts(qxi / 2.0, spatial)
}

/// `Ω = ¼(qγ/m + I)(I + 2γ⁵(wγ)/m)`.
pub fn omega_sharp(state: &SharpState) -> OmegaMatrix {
    let g = gammas();
    let m = state.momentum.mass();
    let q = state.momentum.four_vector();
    let w = mean_w(state);
    let left = g.slash(&q) / c(m) + Mat4::identity();
    let right = Mat4::identity() + g.g5 * g.slash(&w) * c(2.0 / m);
    OmegaMatrix { matrix: left * right * c(0.25), mass: m }
}

/// Weighted sum of the sharp-state matrices, accumulated in entry order.
pub fn omega_of_ensemble(e: &Ensemble) -> OmegaMatrix {
    let matrix = e
        .entries
        .iter()
        .fold(Mat4::zeros(), |acc, (w, s)| acc + omega_sharp(s).matrix * c(*w));
    OmegaMatrix { matrix, mass: e.mass() }
}

pub fn decompose(omega: &OmegaMatrix) -> SpinDecomposition {
    let g = gammas();
    let gen = lorentz_generators();
    let om = &omega.matrix;
    let tr = |x: Mat4| (om * x).trace().re;
    let a = om.trace().re;
    let b = tr(g.g5 * I);
    let u = FourVector::new(tr(g.upper[0]), tr(g.upper[1]), tr(g.upper[2]), tr(g.upper[3]));
    let half_m = omega.mass / 2.0;
    let wc = |mu: usize| half_m * tr(g.upper[mu] * g.g5);
    let w = FourVector::new(wc(0), wc(1), wc(2), wc(3));
    let mut s = Matrix4::zeros();
    for mu in 0..4 {
        for nu in 0..4 {
            if mu != nu {
                s[(mu, nu)] = tr(gen.lower(mu, nu));
            }
        }
    }
    SpinDecomposition { a, b, u, w, s }
}

/// `Ω′ = D(A) Ω D(A)⁻¹`.
pub fn transform_omega(omega: &OmegaMatrix, a: &SpinorMap) -> OmegaMatrix {
    let d = bispinor_rep(a);
    OmegaMatrix { matrix: d.matrix() * omega.matrix * d.inverse(), mass: omega.mass }
}

fn hermitian_tolerance(m: &Mat4) -> f64 {
    crate::DEFAULT_TOLERANCE * max_abs(m).max(1.0)
}

/// `θ = Ωγ⁰`; rejects matrices whose θ is not Hermitian.
pub fn theta_of(omega: &OmegaMatrix) -> Result<Mat4> {
    let theta = omega.matrix * gammas().upper[0];
    let res = hermiticity_residual(&theta);
    if res > hermitian_tolerance(&theta) {
        return Err(Error::NotHermitian(res));
    }
    Ok(theta)
}

/// `θ̃ = θ / Tr θ`.
pub fn normalize(theta: &Mat4) -> Result<Mat4> {
    let tr = theta.trace().re;
    if !(tr.is_finite() && tr > 0.0) {
        return Err(Error::DegenerateDenominator("Tr θ"));
    }
    Ok(theta / c(tr))
}

pub fn theta_tilde(omega: &OmegaMatrix) -> Result<Mat4> {
    normalize(&theta_of(omega)?)
}

/// Nonlinear transformation law of the normalized matrix:
/// `θ̃′ = D θ̃ D† / Tr(θ̃ D†D)`.
pub fn transform_theta_normalized(theta_tilde: &Mat4, a: &SpinorMap) -> Mat4 {
    let d = *bispinor_rep(a).matrix();
    let num = d * theta_tilde * d.adjoint();
    let den = (theta_tilde * d.adjoint() * d).trace();
    num / den
}

/// Eigenvalues of a Hermitian positive semidefinite unit-trace matrix, small
/// negative values clamped to zero.
pub fn density_eigenvalues(rho: &Mat4) -> Result<[f64; 4]> {
    let res = hermiticity_residual(rho);
    if res > hermitian_tolerance(rho) {
        return Err(Error::NotHermitian(res));
    }
    let tr = rho.trace().re;
    if (tr - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized(tr));
    }
    let herm = (rho + rho.adjoint()) * c(0.5);
    let eig = SymmetricEigen::new(herm).eigenvalues;
    let floor = -EIGEN_CLAMP * max_abs(rho).max(1.0);
    let mut out = [0.0; 4];
    for (o, &l) in out.iter_mut().zip(eig.iter()) {
        if l < floor {
            return Err(Error::NotPositive(l));
        }
        *o = l.max(0.0);
    }
    Ok(out)
}

/// Von Neumann entropy `−Σ λ ln λ` of a normalized density matrix, with
/// `0 ln 0 = 0`.
pub fn entropy(theta_tilde: &Mat4) -> Result<f64> {
    let eig = density_eigenvalues(theta_tilde)?;
    let s: f64 = eig.iter().filter(|&&l| l > 0.0).map(|&l| -l * l.ln()).sum();
    // a pure state sums to −0.0
    Ok(s + 0.0)
}

/// Entropy of the rest-frame spin state with Bloch-vector length `r`.
pub fn sharp_entropy(r: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { x * (x / 2.0).ln() } else { 0.0 };
    -0.5 * (term(1.0 + r) + term(1.0 - r))
}

/// `Σ⃗ = Tr(Ω γ⃗γ⁵(I+γ⁰)) / (2 Tr(Ω(I+γ⁰)))`.
pub fn sigma_average(omega: &OmegaMatrix) -> Result<Vector3<f64>> {
    let g = gammas();
    let plus = Mat4::identity() + g.upper[0];
    let den = 2.0 * (omega.matrix * plus).trace().re;
    if !den.is_finite() || den.abs() < 1e-300 {
        return Err(Error::DegenerateDenominator("Tr(Ω(I+γ⁰))"));
    }
    let num = |i: usize| (omega.matrix * g.upper[i] * g.g5 * plus).trace().re;
    Ok(Vector3::new(num(1), num(2), num(3)) / den)
}

/// Spinor lift of the pure boost with velocity `v⃗`.
pub fn boost_spinor_for_velocity(v: &Vector3<f64>) -> Result<SpinorMap> {
    let beta = v.norm();
    if !beta.is_finite() || beta >= 1.0 {
        return Err(Error::Superluminal(beta));
    }
    if beta == 0.0 {
        return Ok(SpinorMap::identity());
    }
    SpinorMap::boost(v, beta.atanh())
}
