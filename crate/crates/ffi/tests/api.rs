use std::ffi::CStr;
use std::process::Command;
use std::ptr;

use relspin_ffi::*;

fn last_error() -> String {
    let p = relspin_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn sharp_state_round_trip() {
    let q = [0.4, -0.2, 0.9];
    let xi = [0.1, 0.2, -0.3];
    let mut om = ptr::null_mut();
    unsafe {
        assert_eq!(relspin_omega_sharp(1.5, q.as_ptr(), xi.as_ptr(), &mut om), RelspinStatus::Ok);
        let mut d = RelspinDecomposition::default();
        assert_eq!(relspin_omega_decompose(om, &mut d), RelspinStatus::Ok);
        assert!((d.a - 1.0).abs() < 1e-14);
        let e = (1.5f64.powi(2) + 0.16 + 0.04 + 0.81).sqrt();
        assert!((d.u[0] - e / 1.5).abs() < 1e-13);
        // q·w = 0
        let qw = e * d.w[0] - q[0] * d.w[1] - q[1] * d.w[2] - q[2] * d.w[3];
        assert!(qw.abs() < 1e-13);

        let mut re = [0.0; 16];
        let mut im = [0.0; 16];
        assert_eq!(relspin_omega_matrix(om, re.as_mut_ptr(), im.as_mut_ptr()), RelspinStatus::Ok);
        let trace: f64 = (0..4).map(|i| re[5 * i]).sum();
        assert!((trace - 1.0).abs() < 1e-14);
        relspin_omega_free(om);
    }
}

#[test]
fn ensemble_entropy_changes_under_boost() {
    let weights = [0.5, 0.5];
    let momenta = [0.0, 0.0, 0.0, 1.0, 0.0, 0.0];
    let blochs = [0.0, 0.0, 1.0, 0.0, 0.0, -1.0];
    let axis = [1.0, 0.0, 0.0];
    unsafe {
        let mut om = ptr::null_mut();
        let st = relspin_omega_ensemble(1.0, 2, weights.as_ptr(), momenta.as_ptr(), blochs.as_ptr(), &mut om);
        assert_eq!(st, RelspinStatus::Ok);
        let mut moved = ptr::null_mut();
        assert_eq!(relspin_omega_boost(om, axis.as_ptr(), 1.0, &mut moved), RelspinStatus::Ok);
        let (mut s0, mut s1) = (0.0, 0.0);
        assert_eq!(relspin_omega_entropy(om, &mut s0), RelspinStatus::Ok);
        assert_eq!(relspin_omega_entropy(moved, &mut s1), RelspinStatus::Ok);
        assert!((s1 - s0).abs() > 1e-3);
        relspin_omega_free(moved);
        relspin_omega_free(om);
    }
}

#[test]
fn errors_are_reported() {
    let q = [0.0; 3];
    let bad = [1.0, 1.0, 0.0];
    let mut om = ptr::null_mut();
    unsafe {
        assert_eq!(relspin_omega_sharp(1.0, q.as_ptr(), bad.as_ptr(), &mut om), RelspinStatus::InvalidArgument);
        assert!(om.is_null());
        assert!(last_error().contains("Bloch"));
        assert_eq!(relspin_omega_sharp(1.0, ptr::null(), q.as_ptr(), &mut om), RelspinStatus::NullPointer);
        assert!(last_error().contains("momentum"));
        assert_eq!(relspin_omega_sharp(-1.0, q.as_ptr(), q.as_ptr(), &mut om), RelspinStatus::InvalidArgument);

        let w = [0.4, 0.4];
        let st = relspin_omega_ensemble(1.0, 2, w.as_ptr(), [0.0; 6].as_ptr(), [0.0; 6].as_ptr(), &mut om);
        assert_eq!(st, RelspinStatus::InvalidArgument);
        assert!(last_error().contains("sum"));

        let mut out = 0.0;
        assert_eq!(relspin_special_config_correlation(1.0, &mut out), RelspinStatus::InvalidArgument);
        assert_eq!(relspin_omega_entropy(ptr::null(), &mut out), RelspinStatus::NullPointer);
        assert_eq!(relspin_trajectory_len(ptr::null()), 0);
        relspin_omega_free(ptr::null_mut());
        relspin_trajectory_free(ptr::null_mut());
    }
}

#[test]
fn correlation_and_trajectory() {
    let (k, p) = ([0.75, 0.0, 0.0], [0.0, 0.75, 0.0]);
    let (a, b) = ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
    let (mut t, mut c, mut s) = (0.0, 0.0, 0.0);
    unsafe {
        let st = relspin_correlation_singlet(1.0, k.as_ptr(), p.as_ptr(), a.as_ptr(), b.as_ptr(), &mut t, &mut c);
        assert_eq!(st, RelspinStatus::Ok);
        assert_eq!(relspin_special_config_correlation(0.6, &mut s), RelspinStatus::Ok);
    }
    assert!((t - 0.36 / 1.64).abs() < 1e-12 && (c - s).abs() < 1e-12);

    let field = RelspinField { b: [0.0, 0.0, 1.0], ..Default::default() };
    let particle = RelspinParticle { mass: 1.0, charge: 1.0, zeta: 1.0, momentum: [0.3, 0.0, 0.0], bloch: [0.0, 0.0, 1.0] };
    let mut traj = ptr::null_mut();
    unsafe {
        assert_eq!(relspin_bmt_integrate(&field, &particle, 1e-3, 1000, &mut traj), RelspinStatus::Ok);
        assert_eq!(relspin_trajectory_len(traj), 1001);
        let mut row = RelspinTrajectoryRow::default();
        assert_eq!(relspin_trajectory_row(traj, 1000, &mut row), RelspinStatus::Ok);
        let qq = row.q[0].powi(2) - row.q[1].powi(2) - row.q[2].powi(2) - row.q[3].powi(2);
        assert!((qq - 1.0).abs() < 1e-10);
        // cyclotron rotation q⃗(τ) = 0.3 (cos τ, −sin τ, 0)
        assert!((row.q[1] - 0.3 * 1f64.cos()).abs() < 1e-10);
        assert!((row.q[2] + 0.3 * 1f64.sin()).abs() < 1e-10);
        relspin_trajectory_free(traj);

        let hot = RelspinField { e: [1.0, 0.0, 0.0], grad_b: [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0], ..field };
        assert_eq!(relspin_bmt_integrate(&hot, &particle, 1e-3, 10, &mut traj), RelspinStatus::InvalidArgument);
        assert!(last_error().contains("gradient"));
    }
}

#[test]
fn last_error_is_per_thread() {
    unsafe {
        let mut out = 0.0;
        assert_eq!(relspin_special_config_correlation(2.0, &mut out), RelspinStatus::InvalidArgument);
    }
    let other = std::thread::spawn(|| relspin_last_error().is_null()).join().unwrap();
    assert!(other);
    assert!(last_error().contains("beta"));
}

/// Compiles a C program against the generated header and the static
/// library, then runs it.
#[test]
fn c_program_links_against_header() {
    let manifest = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("librelspin_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let out_dir = tempfile::tempdir().unwrap();
    let bin = out_dir.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("run cc");
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
