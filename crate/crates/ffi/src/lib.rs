//! C ABI for relspin.
//!
//! Objects are opaque handles created by `relspin_*` constructors and
//! released by the matching `*_free` function. Every fallible call returns a
//! [`RelspinStatus`]; on failure a message for the calling thread is
//! available from [`relspin_last_error`]. Vectors are passed as pointers to
//! `double` arrays of the documented length; matrices are row-major.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nalgebra::{Matrix3, Vector3};
use relspin::bmt::{self, EMField, ParticleParams, SpinKinState, Trajectory};
use relspin::density::{self, Ensemble, OmegaMatrix, SharpState};
use relspin::epr::{self, TwoParticleState};
use relspin::lorentz::{OnShellMomentum, SpinorMap};
use relspin::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelspinStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidState = 3,
    Numerical = 4,
    Panic = 5,
}

/// Opaque covariant spin density matrix.
pub struct RelspinOmega(OmegaMatrix);

/// Opaque BMT trajectory.
pub struct RelspinTrajectory(Trajectory);

/// Clifford-basis coefficients. `u` and `w` are contravariant, `s` holds
/// `s_{μν}` row-major.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct RelspinDecomposition {
    pub a: f64,
    pub b: f64,
    pub u: [f64; 4],
    pub w: [f64; 4],
    pub s: [f64; 16],
}

/// Uniform `E`, `B` plus the gradient `grad_b[3*i + j] = ∂ᵢB_j`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct RelspinField {
    pub e: [f64; 3],
    pub b: [f64; 3],
    pub grad_b: [f64; 9],
}

/// Particle constants and initial state (momentum, rest-frame Bloch vector).
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct RelspinParticle {
    pub mass: f64,
    pub charge: f64,
    pub zeta: f64,
    pub momentum: [f64; 3],
    pub bloch: [f64; 3],
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct RelspinTrajectoryRow {
    pub tau: f64,
    pub x: [f64; 4],
    pub q: [f64; 4],
    pub w: [f64; 4],
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("error message contained NUL").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> RelspinStatus {
    match e {
        Error::NotHermitian(_)
        | Error::NotPositive(_)
        | Error::NotNormalized(_)
        | Error::DegenerateDenominator(_)
        | Error::ZeroNormState => RelspinStatus::InvalidState,
        Error::IntegrationBlowup { .. } | Error::EigenSolver(_) => RelspinStatus::Numerical,
        _ => RelspinStatus::InvalidArgument,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> RelspinStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RelspinStatus::Ok,
        Ok(Err(Fail::Null(name))) => {
            set_error(format!("null pointer passed for `{name}`"));
            RelspinStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            RelspinStatus::Panic
        }
    }
}

unsafe fn read<const N: usize>(p: *const f64, name: &'static str) -> Result<[f64; N], Fail> {
    if p.is_null() {
        return Err(Fail::Null(name));
    }
    let mut out = [0.0; N];
    ptr::copy_nonoverlapping(p, out.as_mut_ptr(), N);
    Ok(out)
}

unsafe fn vec3(p: *const f64, name: &'static str) -> Result<Vector3<f64>, Fail> {
    Ok(Vector3::from(read::<3>(p, name)?))
}

unsafe fn write<T>(p: *mut T, name: &'static str, value: T) -> Result<(), Fail> {
    if p.is_null() {
        return Err(Fail::Null(name));
    }
    p.write(value);
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(name))
}

/// Message describing the most recent failure on this thread, or NULL. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn relspin_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Ω of a particle with sharp momentum `momentum[3]` and rest-frame Bloch
/// vector `bloch[3]`.
///
/// # Safety
/// Array arguments must point to readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn relspin_omega_sharp(
    mass: f64,
    momentum: *const f64,
    bloch: *const f64,
    out: *mut *mut RelspinOmega,
) -> RelspinStatus {
    guard(|| {
        let q = OnShellMomentum::new(mass, vec3(momentum, "momentum")?)?;
        let st = SharpState::new(q, vec3(bloch, "bloch")?)?;
        let h = Box::into_raw(Box::new(RelspinOmega(density::omega_sharp(&st))));
        write(out, "out", h)
    })
}

/// Ω of a finite ensemble of `n` sharp states. `momenta` and `blochs` hold
/// `3n` doubles each.
///
/// # Safety
/// `weights` must hold `n` doubles, `momenta` and `blochs` `3n` doubles.
#[no_mangle]
pub unsafe extern "C" fn relspin_omega_ensemble(
    mass: f64,
    n: usize,
    weights: *const f64,
    momenta: *const f64,
    blochs: *const f64,
    out: *mut *mut RelspinOmega,
) -> RelspinStatus {
    guard(|| {
        if n == 0 {
            return Err(Error::EmptyEnsemble.into());
        }
        if weights.is_null() {
            return Err(Fail::Null("weights"));
        }
        if momenta.is_null() {
            return Err(Fail::Null("momenta"));
        }
        if blochs.is_null() {
            return Err(Fail::Null("blochs"));
        }
        let mut entries = Vec::with_capacity(n);
        for i in 0..n {
            let q = OnShellMomentum::new(mass, vec3(momenta.add(3 * i), "momenta")?)?;
            let st = SharpState::new(q, vec3(blochs.add(3 * i), "blochs")?)?;
            entries.push((*weights.add(i), st));
        }
        let om = density::omega_of_ensemble(&Ensemble::new(entries)?);
        write(out, "out", Box::into_raw(Box::new(RelspinOmega(om))))
    })
}

/// New handle holding `D(A) Ω D(A)⁻¹` for the boost of `rapidity` along
/// `axis[3]`.
///
/// # Safety
/// `omega` must be a live handle; `axis` must hold 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn relspin_omega_boost(
    omega: *const RelspinOmega,
    axis: *const f64,
    rapidity: f64,
    out: *mut *mut RelspinOmega,
) -> RelspinStatus {
    guard(|| {
        let om = handle(omega, "omega")?;
        if !rapidity.is_finite() {
            return Err(Error::NonFinite("rapidity").into());
        }
        let a = SpinorMap::boost(&vec3(axis, "axis")?, rapidity)?;
        let moved = density::transform_omega(&om.0, &a);
        write(out, "out", Box::into_raw(Box::new(RelspinOmega(moved))))
    })
}

/// # Safety
/// `omega` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn relspin_omega_decompose(
    omega: *const RelspinOmega,
    out: *mut RelspinDecomposition,
) -> RelspinStatus {
    guard(|| {
        let d = density::decompose(&handle(omega, "omega")?.0);
        let mut s = [0.0; 16];
        for (i, v) in s.iter_mut().enumerate() {
            *v = d.s[(i / 4, i % 4)];
        }
        let dec = RelspinDecomposition { a: d.a, b: d.b, u: d.u.to_array(), w: d.w.to_array(), s };
        write(out, "out", dec)
    })
}

/// Von Neumann entropy of the normalized `θ = Ωγ⁰`.
///
/// # Safety
/// `omega` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn relspin_omega_entropy(omega: *const RelspinOmega, out: *mut f64) -> RelspinStatus {
    guard(|| {
        let s = density::entropy(&density::theta_tilde(&handle(omega, "omega")?.0)?)?;
        write(out, "out", s)
    })
}

/// Normalized spin average, written to `out[3]`.
///
/// # Safety
/// `omega` must be a live handle; `out` must hold 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn relspin_omega_sigma_average(omega: *const RelspinOmega, out: *mut f64) -> RelspinStatus {
    guard(|| {
        let s = density::sigma_average(&handle(omega, "omega")?.0)?;
        write(out as *mut [f64; 3], "out", [s.x, s.y, s.z])
    })
}

/// Row-major real and imaginary parts of Ω, 16 doubles each.
///
/// # Safety
/// `omega` must be a live handle; `re` and `im` must hold 16 doubles.
#[no_mangle]
pub unsafe extern "C" fn relspin_omega_matrix(
    omega: *const RelspinOmega,
    re: *mut f64,
    im: *mut f64,
) -> RelspinStatus {
    guard(|| {
        let m = handle(omega, "omega")?.0.matrix();
        let mut r = [0.0; 16];
        let mut i = [0.0; 16];
        for k in 0..16 {
            let z = m[(k / 4, k % 4)];
            r[k] = z.re;
            i[k] = z.im;
        }
        write(re as *mut [f64; 16], "re", r)?;
        write(im as *mut [f64; 16], "im", i)
    })
}

/// # Safety
/// `omega` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn relspin_omega_free(omega: *mut RelspinOmega) {
    if !omega.is_null() {
        drop(Box::from_raw(omega));
    }
}

/// Singlet correlation function from the trace formula and the closed form.
///
/// # Safety
/// `k`, `p`, `a`, `b` must hold 3 doubles; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn relspin_correlation_singlet(
    mass: f64,
    k: *const f64,
    p: *const f64,
    a: *const f64,
    b: *const f64,
    out_trace: *mut f64,
    out_closed: *mut f64,
) -> RelspinStatus {
    guard(|| {
        let k = OnShellMomentum::new(mass, vec3(k, "k")?)?;
        let p = OnShellMomentum::new(mass, vec3(p, "p")?)?;
        let (a, b) = (vec3(a, "a")?, vec3(b, "b")?);
        let st = TwoParticleState::singlet(k, p)?;
        let t = epr::correlation_trace(&st, &a, &b)?;
        let c = epr::correlation_closed(&k, &p, &a, &b)?;
        write(out_trace, "out_trace", t)?;
        write(out_closed, "out_closed", c)
    })
}

/// `β² / (2 − β²)` for `0 ≤ β < 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn relspin_special_config_correlation(beta: f64, out: *mut f64) -> RelspinStatus {
    guard(|| write(out, "out", epr::special_config_correlation(beta)?))
}

/// RK4 integration of the BMT system for `steps` steps of proper time
/// `dtau`; the trajectory holds `steps + 1` rows.
///
/// # Safety
/// `field` and `particle` must be readable; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn relspin_bmt_integrate(
    field: *const RelspinField,
    particle: *const RelspinParticle,
    dtau: f64,
    steps: usize,
    out: *mut *mut RelspinTrajectory,
) -> RelspinStatus {
    guard(|| {
        let f = handle(field, "field")?;
        let pp = handle(particle, "particle")?;
        let field = EMField {
            e: Vector3::from(f.e),
            b: Vector3::from(f.b),
            grad_b: Matrix3::from_row_slice(&f.grad_b),
        };
        let params = ParticleParams::new(pp.mass, pp.charge, pp.zeta)?;
        let q = OnShellMomentum::new(pp.mass, Vector3::from(pp.momentum))?;
        let xi = Vector3::from(pp.bloch);
        SharpState::new(q, xi)?;
        let s0 = SpinKinState::from_momentum_and_bloch(&q, &xi);
        let traj = bmt::integrate(&s0, &field, &params, dtau, steps)?;
        write(out, "out", Box::into_raw(Box::new(RelspinTrajectory(traj))))
    })
}

/// Number of rows, or 0 for NULL.
///
/// # Safety
/// `traj` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn relspin_trajectory_len(traj: *const RelspinTrajectory) -> usize {
    traj.as_ref().map_or(0, |t| t.0.rows.len())
}

/// # Safety
/// `traj` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn relspin_trajectory_row(
    traj: *const RelspinTrajectory,
    index: usize,
    out: *mut RelspinTrajectoryRow,
) -> RelspinStatus {
    guard(|| {
        let t = handle(traj, "traj")?;
        let r = t.0.rows.get(index).ok_or_else(|| {
            Error::InvalidArgument(format!("row {index} out of range ({} rows)", t.0.rows.len()))
        })?;
        let row = RelspinTrajectoryRow { tau: r.tau, x: r.x.to_array(), q: r.q.to_array(), w: r.w.to_array() };
        write(out, "out", row)
    })
}

/// # Safety
/// `traj` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn relspin_trajectory_free(traj: *mut RelspinTrajectory) {
    if !traj.is_null() {
        drop(Box::from_raw(traj));
    }
}
