//! Two-particle covariant reduced matrices and the EPR–Bohm correlation
//! function of two massive spin-½ particles measured simultaneously.
//!
//! All outputs are ratios of traces, so the overall scale of the
//! coefficient matrix never matters.

use nalgebra::{SMatrix, Vector3};

use crate::dirac::{gammas, spin_matrix};
use crate::error::{Error, Result};
use crate::intertwiner::v_of;
use crate::linalg::{block_diag, max_abs, pauli, Mat4, Mat16};
use crate::lorentz::{require_unit, OnShellMomentum};

/// `Σ c_{αβ} |α,k⟩ ⊗ |β,p⟩` with a 4×4 coefficient matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoParticleState {
    k: OnShellMomentum,
    p: OnShellMomentum,
    coeffs: Mat4,
}

impl TwoParticleState {
    pub fn new(k: OnShellMomentum, p: OnShellMomentum, coeffs: Mat4) -> Result<Self> {
        if k.mass() != p.mass() {
            return Err(Error::MassMismatch(k.mass(), p.mass()));
        }
        if !coeffs.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("coefficient matrix"));
        }
        if max_abs(&coeffs) == 0.0 {
            return Err(Error::ZeroNormState);
        }
        Ok(TwoParticleState { k, p, coeffs })
    }

    pub fn singlet(k: OnShellMomentum, p: OnShellMomentum) -> Result<Self> {
        Self::new(k, p, singlet_coeffs())
    }

    pub fn k(&self) -> &OnShellMomentum {
        &self.k
    }

    pub fn p(&self) -> &OnShellMomentum {
        &self.p
    }

    pub fn coeffs(&self) -> &Mat4 {
        &self.coeffs
    }
}

/// `C = diag(σ₂, σ₂)`.
pub fn singlet_coeffs() -> Mat4 {
    let s2 = pauli()[1];
    block_diag(&s2, &s2)
}

/// Trace-normalized 16×16 matrix `Ω^ψ`; row `4α+β` pairs bispinor index
/// `α` of the first particle with `β` of the second.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoParticleOmega {
    matrix: Mat16,
}

impl TwoParticleOmega {
    pub fn matrix(&self) -> &Mat16 {
        &self.matrix
    }

    /// `Ω^ψ (γ⁰ ⊗ γ⁰)`, which is Hermitian.
    pub fn theta(&self) -> Mat16 {
        let g0 = gammas().upper[0];
        self.matrix * g0.kronecker(&g0)
    }

    /// `Tr[Ω (f_a ⊗ f_b)] / Tr[Ω ((γ⁰+I) ⊗ (γ⁰+I))]` with
    /// `f_n = n⃗·γ⃗ γ⁵ (I+γ⁰)`.
    pub fn correlation(&self, a: &Vector3<f64>, b: &Vector3<f64>) -> Result<f64> {
        require_unit(a, "a")?;
        require_unit(b, "b")?;
        let g = gammas();
        let plus = Mat4::identity() + g.upper[0];
        let f = |n: &Vector3<f64>| g.spatial_dot(n) * g.g5 * plus;
        let num = (self.matrix * f(a).kronecker(&f(b))).trace();
        let den = (self.matrix * plus.kronecker(&plus)).trace();
        if den.norm() < 1e-300 {
            return Err(Error::DegenerateDenominator("Tr[Ω((γ⁰+I)⊗(γ⁰+I))]"));
        }
        Ok((num / den).re)
    }
}

fn row_major(m: &Mat4) -> SMatrix<crate::linalg::C64, 16, 1> {
    SMatrix::from_fn(|r, _| m[(r / 4, r % 4)])
}

/// `Ω^ψ_{αβ,α′β′} ∝ X_{αβ} Y_{α′β′}` with
/// `X = P_k γ⁰C*γ⁰ P_pᵀ`, `Y = P_kᵀ C P_p` and `P = v v̄`.
pub fn omega_two(state: &TwoParticleState) -> Result<TwoParticleOmega> {
    let g0 = gammas().upper[0];
    let pk = v_of(&state.k).projector();
    let pp = v_of(&state.p).projector();
    let cc = state.coeffs;
    let x = pk * g0 * cc.conjugate() * g0 * pp.transpose();
    let y = pk.transpose() * cc * pp;
    let raw = row_major(&x) * row_major(&y).transpose();
    let tr = raw.trace();
    let scale = max_abs(&x) * max_abs(&y);
    if tr.norm() <= 1e-14 * scale || scale == 0.0 {
        return Err(Error::ZeroNormState);
    }
    Ok(TwoParticleOmega { matrix: raw / tr })
}

/// `𝒞(a⃗, b⃗)` from the trace formula
/// `4 Tr{(b·S(p) P_p γ⁰) C† (a·S(k) P_k γ⁰)ᵀ C} / Tr{(P_p γ⁰) C† (P_k γ⁰)ᵀ C}`.
pub fn correlation_trace(state: &TwoParticleState, a: &Vector3<f64>, b: &Vector3<f64>) -> Result<f64> {
    let g0 = gammas().upper[0];
    let pk = v_of(&state.k).projector() * g0;
    let pp = v_of(&state.p).projector() * g0;
    let sa = spin_matrix(a, &state.k)?;
    let sb = spin_matrix(b, &state.p)?;
    let cc = state.coeffs;
    let cd = cc.adjoint();
    let num = (sb * pp * cd * (sa * pk).transpose() * cc).trace();
    let den = (pp * cd * pk.transpose() * cc).trace();
    if den.norm() <= 1e-14 * max_abs(&cc).powi(2) {
        return Err(Error::DegenerateDenominator("⟨ψ|ψ⟩"));
    }
    Ok(4.0 * (num / den).re)
}

/// Closed form for the singlet:
/// `−a⃗·b⃗ + (k⃗×p⃗)·[a⃗×b⃗ + ((a⃗·k⃗)(b⃗×p⃗) − (b⃗·p⃗)(a⃗×k⃗))/((k⁰+m)(p⁰+m))] / (m² + k·p)`
/// with `k·p` the Minkowski product.
pub fn correlation_closed(
    k: &OnShellMomentum,
    p: &OnShellMomentum,
    a: &Vector3<f64>,
    b: &Vector3<f64>,
) -> Result<f64> {
    require_unit(a, "a")?;
    require_unit(b, "b")?;
    if k.mass() != p.mass() {
        return Err(Error::MassMismatch(k.mass(), p.mass()));
    }
    let m = k.mass();
    let (kv, pv) = (k.spatial(), p.spatial());
    let (k0, p0) = (k.energy(), p.energy());
    let kp = k.four_vector().dot(&p.four_vector());
    let inner = a.cross(b) + (b.cross(&pv) * a.dot(&kv) - a.cross(&kv) * b.dot(&pv)) / ((k0 + m) * (p0 + m));
    Ok(-a.dot(b) + kv.cross(&pv).dot(&inner) / (m * m + kp))
}

/// Named geometries with `k⃗ = κx̂`, `p⃗ = κŷ`, `κ = mβγ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialConfig {
    /// `a⃗ = x̂ ∥ k⃗`, `b⃗ = ŷ ∥ p⃗`.
    ParallelSpin,
    /// `a⃗ = ŷ`, `b⃗ = −x̂`, each spin direction orthogonal to its momentum.
    PerpendicularSpin,
}

impl SpecialConfig {
    pub fn name(&self) -> &'static str {
        match self {
            SpecialConfig::ParallelSpin => "parallel-spin",
            SpecialConfig::PerpendicularSpin => "perpendicular-spin",
        }
    }

    /// `(k, p, a, b)` at velocity `β` and mass `m`.
    pub fn geometry(
        &self,
        mass: f64,
        beta: f64,
    ) -> Result<(OnShellMomentum, OnShellMomentum, Vector3<f64>, Vector3<f64>)> {
        check_beta(beta)?;
        let k = OnShellMomentum::with_velocity(mass, &Vector3::x(), beta)?;
        let p = OnShellMomentum::with_velocity(mass, &Vector3::y(), beta)?;
        let (a, b) = match self {
            SpecialConfig::ParallelSpin => (Vector3::x(), Vector3::y()),
            SpecialConfig::PerpendicularSpin => (Vector3::y(), -Vector3::x()),
        };
        Ok((k, p, a, b))
    }
}

impl std::str::FromStr for SpecialConfig {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parallel-spin" => Ok(SpecialConfig::ParallelSpin),
            "perpendicular-spin" => Ok(SpecialConfig::PerpendicularSpin),
            other => Err(Error::InvalidArgument(format!("unknown configuration `{other}`"))),
        }
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if !(0.0..1.0).contains(&beta) {
        return Err(Error::InvalidBeta(beta));
    }
    Ok(())
}

/// `β² / (2 − β²)`.
pub fn special_config_correlation(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let b2 = beta * beta;
    Ok(b2 / (2.0 - b2))
}
