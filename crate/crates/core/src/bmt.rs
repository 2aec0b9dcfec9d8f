//! Classical evolution of the kinetic momentum `q` and Pauli–Lubanski vector
//! `w` of a spinning particle in static electromagnetic fields, and the
//! slow-motion (Stern–Gerlach) limit of the same equations.
//!
//! Fields are a uniform `E⃗` plus a magnetic field with at most a linear
//! gradient, `B_j(x) = B_j + Σᵢ xⁱ ∂ᵢB_j`. Integration is fixed-step RK4
//! with no constraint projection; invariant drift is reported instead.

use nalgebra::{Matrix3, Matrix4, SVector, Vector3, Vector4};

use crate::error::{Error, Result};
use crate::linalg::{levi_civita3, levi_civita4};
use crate::lorentz::{metric, standard_boost, FourVector, OnShellMomentum};

/// Static external field. `grad_b[(i, j)] = ∂ᵢB_j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EMField {
    pub e: Vector3<f64>,
    pub b: Vector3<f64>,
    pub grad_b: Matrix3<f64>,
}

impl EMField {
    pub fn magnetic(b: Vector3<f64>) -> Self {
        EMField { e: Vector3::zeros(), b, grad_b: Matrix3::zeros() }
    }

    /// Rejects non-finite entries and gradients that are not symmetric and
    /// trace-free (curl- and divergence-free in a source-free region).
    pub fn validate(&self) -> Result<()> {
        let finite = self.e.iter().chain(self.b.iter()).chain(self.grad_b.iter()).all(|x| x.is_finite());
        if !finite {
            return Err(Error::NonFinite("field"));
        }
        let g = &self.grad_b;
        if g.iter().any(|&x| x != 0.0) {
            let scale = g.amax();
            let res = (g - g.transpose()).amax().max(g.trace().abs());
            if res > 1e-12 * scale {
                return Err(Error::InvalidGradient(res));
            }
        }
        Ok(())
    }

    /// Magnetic field at spatial position `x`.
    pub fn b_at(&self, x: &Vector3<f64>) -> Vector3<f64> {
        self.b + self.grad_b.transpose() * x
    }
}

/// Mass, charge and magnetic-moment coupling `ζ` (`μ^α = (ζ/m) w^α`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParticleParams {
    pub mass: f64,
    pub charge: f64,
    pub zeta: f64,
}

impl ParticleParams {
    pub fn new(mass: f64, charge: f64, zeta: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidMass(mass));
        }
        if !(charge.is_finite() && zeta.is_finite()) {
            return Err(Error::NonFinite("particle parameters"));
        }
        Ok(ParticleParams { mass, charge, zeta })
    }

    /// `ζ = g e / 2m`.
    pub fn from_g(mass: f64, charge: f64, g: f64) -> Result<Self> {
        Self::new(mass, charge, g * charge / (2.0 * mass))
    }
}

/// Position, kinetic momentum and Pauli–Lubanski vector at proper time `tau`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinKinState {
    pub x: FourVector,
    pub q: FourVector,
    pub w: FourVector,
    pub tau: f64,
}

impl SpinKinState {
    /// State at the origin with momentum `q` and rest-frame Bloch vector `ξ⃗`.
    pub fn from_momentum_and_bloch(q: &OnShellMomentum, xi: &Vector3<f64>) -> Self {
        let w_rest = FourVector::from_parts(0.0, xi * (q.mass() / 2.0));
        SpinKinState {
            x: FourVector::zero(),
            q: q.four_vector(),
            w: standard_boost(q).apply(&w_rest),
            tau: 0.0,
        }
    }

    fn pack(&self) -> SVector<f64, 12> {
        let mut v = SVector::<f64, 12>::zeros();
        v.fixed_rows_mut::<4>(0).copy_from(self.x.as_vector());
        v.fixed_rows_mut::<4>(4).copy_from(self.q.as_vector());
        v.fixed_rows_mut::<4>(8).copy_from(self.w.as_vector());
        v
    }

    fn unpack(v: &SVector<f64, 12>, tau: f64) -> Self {
        let part = |o: usize| FourVector::from_vector(Vector4::new(v[o], v[o + 1], v[o + 2], v[o + 3]));
        SpinKinState { x: part(0), q: part(4), w: part(8), tau }
    }

    fn is_finite(&self) -> bool {
        self.x.is_finite() && self.q.is_finite() && self.w.is_finite()
    }
}

/// `F^{μν}` with `F^{0i} = −Eⁱ`, `F^{ij} = −ε_{ijk}B^k`.
pub fn field_tensor(e: &Vector3<f64>, b: &Vector3<f64>) -> Matrix4<f64> {
    let mut f = Matrix4::zeros();
    for i in 0..3 {
        f[(0, i + 1)] = -e[i];
        f[(i + 1, 0)] = e[i];
        for j in 0..3 {
            f[(i + 1, j + 1)] = -(0..3).map(|k| levi_civita3(i, j, k) * b[k]).sum::<f64>();
        }
    }
    f
}

/// `F̃^{αβ} = ½ ε^{αβμν} F_{μν}` for a contravariant `F`.
pub fn dual_tensor(f: &Matrix4<f64>) -> Matrix4<f64> {
    let g = metric();
    let lower = g * f * g;
    Matrix4::from_fn(|a, b| {
        let mut acc = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                acc += levi_civita4([a, b, mu, nu]) * lower[(mu, nu)];
            }
        }
        0.5 * acc
    })
}

/// Dual tensor by field substitution: `F̃(E⃗, B⃗) = F(B⃗, −E⃗)`.
fn dual_of_fields(e: &Vector3<f64>, b: &Vector3<f64>) -> Matrix4<f64> {
    field_tensor(b, &-e)
}

/// Right-hand sides `(dx/dτ, dq/dτ, dw/dτ)`, fields evaluated at `s.x`.
pub fn bmt_rhs(s: &SpinKinState, field: &EMField, p: &ParticleParams) -> (FourVector, FourVector, FourVector) {
    let g = metric();
    let m = p.mass;
    let q = *s.q.as_vector();
    let w = *s.w.as_vector();
    let b = field.b_at(&s.x.spatial());
    let f_up = field_tensor(&field.e, &b);
    let f_mixed = f_up * g;
    let fd_mixed = dual_of_fields(&field.e, &b) * g;
    // w^σ F_{σα} q^α
    let wfq = (w.transpose() * g * f_up * g * q)[0];
    let bracket = f_mixed * w + q * (wfq / (m * m));

    let mut grad_term = Vector4::zeros();
    for i in 0..3 {
        if w[i + 1] != 0.0 {
            let db = Vector3::new(field.grad_b[(i, 0)], field.grad_b[(i, 1)], field.grad_b[(i, 2)]);
            if db != Vector3::zeros() {
                let dfd = dual_of_fields(&Vector3::zeros(), &db) * g;
                grad_term += dfd * q * w[i + 1];
            }
        }
    }

    let dq = f_mixed * q * (p.charge / m) + grad_term * (p.zeta / (m * m)) + fd_mixed * bracket * (p.zeta * p.zeta / m);
    let dw = bracket * p.zeta;
    (
        FourVector::from_vector(q / m),
        FourVector::from_vector(dq),
        FourVector::from_vector(dw),
    )
}

/// Maximum absolute change of the flow invariants along a trajectory.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct InvariantDrift {
    pub qq: f64,
    pub ww: f64,
    pub qw: f64,
}

impl InvariantDrift {
    pub fn max(&self) -> f64 {
        self.qq.max(self.ww).max(self.qw)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub rows: Vec<SpinKinState>,
    pub mass: f64,
}

impl Trajectory {
    pub fn last(&self) -> &SpinKinState {
        self.rows.last().expect("trajectory has at least the initial row")
    }

    /// Drift of `q·q`, `w·w` and `q·w` relative to the initial row.
    pub fn drift(&self) -> InvariantDrift {
        let first = &self.rows[0];
        let (qq0, ww0, qw0) = (first.q.norm_sqr(), first.w.norm_sqr(), first.q.dot(&first.w));
        self.rows.iter().fold(InvariantDrift::default(), |d, r| InvariantDrift {
            qq: d.qq.max((r.q.norm_sqr() - qq0).abs()),
            ww: d.ww.max((r.w.norm_sqr() - ww0).abs()),
            qw: d.qw.max((r.q.dot(&r.w) - qw0).abs()),
        })
    }
}

fn check_step(dt: f64, steps: usize) -> Result<()> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidArgument(format!("step size must be positive, got {dt}")));
    }
    if steps == 0 {
        return Err(Error::InvalidArgument("number of steps must be at least 1".into()));
    }
    Ok(())
}

fn rk4<const N: usize>(y: &SVector<f64, N>, h: f64, f: impl Fn(&SVector<f64, N>) -> SVector<f64, N>) -> SVector<f64, N> {
    let k1 = f(y);
    let k2 = f(&(y + k1 * (h / 2.0)));
    let k3 = f(&(y + k2 * (h / 2.0)));
    let k4 = f(&(y + k3 * h));
    y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
}

const BLOWUP: f64 = 1e150;

/// Classical RK4 with fixed step `dtau`; returns `steps + 1` rows including
/// the initial state.
pub fn integrate(s0: &SpinKinState, field: &EMField, p: &ParticleParams, dtau: f64, steps: usize) -> Result<Trajectory> {
    check_step(dtau, steps)?;
    field.validate()?;
    if !s0.is_finite() {
        return Err(Error::NonFinite("initial state"));
    }
    let rhs = |y: &SVector<f64, 12>| {
        let (dx, dq, dw) = bmt_rhs(&SpinKinState::unpack(y, 0.0), field, p);
        let mut out = SVector::<f64, 12>::zeros();
        out.fixed_rows_mut::<4>(0).copy_from(dx.as_vector());
        out.fixed_rows_mut::<4>(4).copy_from(dq.as_vector());
        out.fixed_rows_mut::<4>(8).copy_from(dw.as_vector());
        out
    };
    let mut rows = Vec::with_capacity(steps + 1);
    rows.push(*s0);
    let mut y = s0.pack();
    for step in 1..=steps {
        y = rk4(&y, dtau, rhs);
        if !y.iter().all(|v| v.is_finite() && v.abs() < BLOWUP) {
            return Err(Error::IntegrationBlowup { step, last_good_row: step - 1 });
        }
        rows.push(SpinKinState::unpack(&y, s0.tau + step as f64 * dtau));
    }
    Ok(Trajectory { rows, mass: p.mass })
}

/// Rest-frame Bloch vector `ξ⃗ = (2/m) (L_q⁻¹ w)⃗`.
pub fn spin_from_w(q: &FourVector, w: &FourVector, mass: f64) -> Result<Vector3<f64>> {
    let k = OnShellMomentum::new(mass, q.spatial())?;
    let rest = standard_boost(&k).inverse().apply(w);
    Ok(rest.spatial() * (2.0 / mass))
}

/// `(dq⃗/dt, dξ⃗/dt) = ((e/m) q⃗×B⃗ + (ζ/2)(ξ⃗·∇)B⃗, ζ ξ⃗×B⃗)` with `B⃗` taken at
/// the origin.
pub fn slow_motion_rhs(
    q: &Vector3<f64>,
    xi: &Vector3<f64>,
    field: &EMField,
    p: &ParticleParams,
) -> Result<(Vector3<f64>, Vector3<f64>)> {
    let e = field.e.norm();
    if e != 0.0 {
        return Err(Error::ElectricFieldPresent(e));
    }
    let b = field.b;
    let force = field.grad_b.transpose() * xi;
    Ok((q.cross(&b) * (p.charge / p.mass) + force * (p.zeta / 2.0), xi.cross(&b) * p.zeta))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlowMotionRow {
    pub t: f64,
    pub q: Vector3<f64>,
    pub xi: Vector3<f64>,
}

pub fn integrate_slow_motion(
    q0: &Vector3<f64>,
    xi0: &Vector3<f64>,
    field: &EMField,
    p: &ParticleParams,
    dt: f64,
    steps: usize,
) -> Result<Vec<SlowMotionRow>> {
    check_step(dt, steps)?;
    field.validate()?;
    slow_motion_rhs(q0, xi0, field, p)?;
    let rhs = |y: &SVector<f64, 6>| {
        let q = y.fixed_rows::<3>(0).into_owned();
        let xi = y.fixed_rows::<3>(3).into_owned();
        let (dq, dxi) = slow_motion_rhs(&q, &xi, field, p).expect("electric field checked");
        let mut out = SVector::<f64, 6>::zeros();
        out.fixed_rows_mut::<3>(0).copy_from(&dq);
        out.fixed_rows_mut::<3>(3).copy_from(&dxi);
        out
    };
    let mut y = SVector::<f64, 6>::zeros();
    y.fixed_rows_mut::<3>(0).copy_from(q0);
    y.fixed_rows_mut::<3>(3).copy_from(xi0);
    let mut rows = Vec::with_capacity(steps + 1);
    rows.push(SlowMotionRow { t: 0.0, q: *q0, xi: *xi0 });
    for step in 1..=steps {
        y = rk4(&y, dt, rhs);
        if !y.iter().all(|v| v.is_finite() && v.abs() < BLOWUP) {
            return Err(Error::IntegrationBlowup { step, last_good_row: step - 1 });
        }
        rows.push(SlowMotionRow {
            t: step as f64 * dt,
            q: y.fixed_rows::<3>(0).into_owned(),
            xi: y.fixed_rows::<3>(3).into_owned(),
        });
    }
    Ok(rows)
}

/// Comparison of the full and slow-motion systems over one precession period.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitReport {
    pub beta: f64,
    pub period: f64,
    pub steps: usize,
    /// `max |Δq⃗|`, divided by `|q⃗(0)|` when the particle moves.
    pub q_deviation: f64,
    /// `max |Δξ⃗|` (unit Bloch vector).
    pub xi_deviation: f64,
}

impl LimitReport {
    pub fn deviation(&self) -> f64 {
        self.q_deviation.max(self.xi_deviation)
    }
}

const LIMIT_STEPS: usize = 4000;

/// Runs both systems with `m = e = 1`, `g = 2`, `B⃗ = ẑ`, `q⃗ = mβγ x̂` and
/// `ξ⃗ = (x̂ + ẑ)/√2`, sampled on a shared coordinate-time grid.
pub fn limit_consistency(beta: f64) -> Result<LimitReport> {
    if !(0.0..=0.05).contains(&beta) {
        return Err(Error::InvalidBeta(beta));
    }
    let p = ParticleParams::from_g(1.0, 1.0, 2.0)?;
    let field = EMField::magnetic(Vector3::z());
    let xi0 = Vector3::new(1.0, 0.0, 1.0).normalize();
    let q = if beta == 0.0 {
        OnShellMomentum::at_rest(1.0)?
    } else {
        OnShellMomentum::with_velocity(1.0, &Vector3::x(), beta)?
    };
    let gamma = q.energy() / q.mass();
    let period = std::f64::consts::TAU / (p.zeta * field.b.norm());
    let dt = period / LIMIT_STEPS as f64;

    let full = integrate(&SpinKinState::from_momentum_and_bloch(&q, &xi0), &field, &p, dt / gamma, LIMIT_STEPS)?;
    let slow = integrate_slow_motion(&q.spatial(), &xi0, &field, &p, dt, LIMIT_STEPS)?;

    let q_scale = q.spatial().norm();
    let mut q_dev = 0.0_f64;
    let mut xi_dev = 0.0_f64;
    for (f, s) in full.rows.iter().zip(&slow) {
        let dq = (f.q.spatial() - s.q).norm();
        q_dev = q_dev.max(if q_scale > 0.0 { dq / q_scale } else { dq });
        xi_dev = xi_dev.max((spin_from_w(&f.q, &f.w, p.mass)? - s.xi).norm());
    }
    Ok(LimitReport { beta, period, steps: LIMIT_STEPS, q_deviation: q_dev, xi_deviation: xi_dev })
}
