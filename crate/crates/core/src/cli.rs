//! The `relspin` command-line interface.
//!
//! Data goes to stdout, diagnostics to stderr. Exit status is 0 on success,
//! 1 when a verification or computation fails and 2 for usage and input
//! schema errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::{Matrix3, Vector3};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bmt::{self, EMField, ParticleParams, SpinKinState};
use crate::check::{self, CheckConfig, Fault};
use crate::density::{self, Ensemble, OmegaMatrix, SharpState};
use crate::epr::{self, SpecialConfig, TwoParticleState};
use crate::linalg::{max_abs, Mat4, C64};
use crate::lorentz::{OnShellMomentum, SpinorMap};
use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "relspin", version, about = "Relativistic spin density matrices, EPR correlations and BMT precession")]
pub struct Cli {
    /// Residual threshold for `check`
    #[arg(long, global = true, env = "RELSPIN_TOLERANCE", default_value_t = crate::DEFAULT_TOLERANCE)]
    pub tolerance: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the randomized identity suites and report max residuals
    Check(CheckArgs),
    /// Correlation function of a two-particle state read from a JSON pair file
    Correlate {
        file: PathBuf,
    },
    /// CSV of the correlation function along a velocity grid
    #[command(long_about = CURVE_HELP)]
    Curve(CurveArgs),
    /// Decompose the Ω matrix of an ensemble read from a JSON state file
    Omega {
        file: PathBuf,
        /// Only report entropies
        #[arg(long)]
        entropy_only: bool,
    },
    /// Same as `omega --entropy-only`
    Entropy {
        file: PathBuf,
    },
    /// Integrate the BMT equations (or their slow-motion limit) and print CSV
    Precess(PrecessArgs),
}

const CURVE_HELP: &str = "CSV of the singlet correlation function along a uniform velocity grid.

Both particles have speed β, with momenta k = κx̂ and p = κŷ (κ = mβγ, m = 1).
The spin directions are
  parallel-spin:      a = x̂ (along k), b = ŷ (along p)
  perpendicular-spin: a = ŷ, b = −x̂ (each orthogonal to its momentum)
In both geometries the correlation equals β²/(2−β²).";

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Random samples per suite
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CurveConfig {
    ParallelSpin,
    PerpendicularSpin,
}

impl From<CurveConfig> for SpecialConfig {
    fn from(c: CurveConfig) -> Self {
        match c {
            CurveConfig::ParallelSpin => SpecialConfig::ParallelSpin,
            CurveConfig::PerpendicularSpin => SpecialConfig::PerpendicularSpin,
        }
    }
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long, value_enum)]
    pub config: CurveConfig,
    #[arg(long, default_value_t = 0.0)]
    pub beta_min: f64,
    #[arg(long, default_value_t = 0.99)]
    pub beta_max: f64,
    /// Number of grid points, endpoints included
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct PrecessArgs {
    /// Field as JSON text or a path to a JSON file: {"E": [..], "B": [..], "gradB": [[..], [..], [..]]}
    #[arg(long)]
    pub field: String,
    /// Particle as JSON text or a path: {"mass", "charge", "g" or "zeta", "momentum": [..], "bloch": [..]}
    #[arg(long)]
    pub params: String,
    /// Step in proper time (coordinate time with --slow-motion)
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    /// Print every n-th row
    #[arg(long, default_value_t = 1)]
    pub every: usize,
    #[arg(long)]
    pub slow_motion: bool,
}

/// Failure classes and their exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, malformed or invalid input: exit 2.
    Input(String),
    /// A check or computation failed: exit 1.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failure(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Failure(m) => m,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn failure(e: impl std::fmt::Display) -> CliError {
    CliError::Failure(e.to_string())
}

fn io(e: std::io::Error) -> CliError {
    CliError::Failure(format!("write failed: {e}"))
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 2;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "relspin: error: {}", e.message());
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    if !(cli.tolerance.is_finite() && cli.tolerance > 0.0) {
        return Err(input(format!("tolerance must be positive, got {}", cli.tolerance)));
    }
    match &cli.command {
        Command::Check(a) => cmd_check(a, cli.tolerance, out),
        Command::Correlate { file } => cmd_correlate(file, out, err),
        Command::Curve(a) => cmd_curve(a, out),
        Command::Omega { file, entropy_only } => cmd_omega(file, *entropy_only, out),
        Command::Entropy { file } => cmd_omega(file, true, out),
        Command::Precess(a) => cmd_precess(a, out),
    }
}

fn cmd_check(a: &CheckArgs, tolerance: f64, out: &mut dyn Write) -> CliResult<()> {
    if a.samples == 0 {
        return Err(input("--samples must be at least 1"));
    }
    let cfg = CheckConfig {
        seed: a.seed,
        samples: a.samples,
        tolerance,
        fault: a.inject_fault.then_some(Fault::PerturbGamma1),
    };
    let results = check::run_checks(&cfg);
    writeln!(out, "{:<20} {:>8} {:>24} {:>10}  status", "suite", "samples", "max_residual", "threshold").map_err(io)?;
    for r in &results {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "{:<20} {:>8} {:>24.16e} {:>10.1e}  {status}",
            r.name, r.samples, r.max_residual, r.threshold
        )
        .map_err(io)?;
    }
    let failed: Vec<&str> = results.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(failure(format!("failing suites: {}", failed.join(", "))))
    }
}

fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| input(format!("invalid {what}: {e}")))
}

fn vec3(v: [f64; 3]) -> Vector3<f64> {
    Vector3::from(v)
}

fn unit_with_warning(v: [f64; 3], name: &str, err: &mut dyn Write) -> CliResult<Vector3<f64>> {
    let v = vec3(v);
    let n = v.norm();
    if !(n.is_finite() && n > 0.0) {
        return Err(input(format!("`{name}` must be a nonzero finite vector")));
    }
    if (n - 1.0).abs() > 1e-12 {
        let _ = writeln!(err, "relspin: warning: `{name}` has length {n}; normalized");
    }
    Ok(v / n)
}

/// Pair file for `correlate`. `coeffs` is a 4×4 array of `[re, im]` pairs
/// and defaults to the singlet.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub mass: f64,
    pub k: [f64; 3],
    pub p: [f64; 3],
    pub a: [f64; 3],
    pub b: [f64; 3],
    #[serde(default)]
    pub coeffs: Option<[[[f64; 2]; 4]; 4]>,
}

fn coeff_matrix(raw: &[[[f64; 2]; 4]; 4]) -> Mat4 {
    Mat4::from_fn(|r, col| C64::new(raw[r][col][0], raw[r][col][1]))
}

/// True when `m` is a nonzero multiple of the singlet coefficients.
fn is_singlet(m: &Mat4) -> bool {
    let s = epr::singlet_coeffs();
    let scale = (s.adjoint() * m).trace() / (s.adjoint() * s).trace();
    max_abs(&(m - s * scale)) <= 1e-12 * max_abs(m)
}

fn cmd_correlate(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let pf: PairFile = parse_json(&read_text(path)?, "pair file")?;
    let k = OnShellMomentum::new(pf.mass, vec3(pf.k)).map_err(input)?;
    let p = OnShellMomentum::new(pf.mass, vec3(pf.p)).map_err(input)?;
    let a = unit_with_warning(pf.a, "a", err)?;
    let b = unit_with_warning(pf.b, "b", err)?;
    let coeffs = pf.coeffs.as_ref().map(coeff_matrix).unwrap_or_else(epr::singlet_coeffs);
    let state = TwoParticleState::new(k, p, coeffs).map_err(input)?;
    let trace = epr::correlation_trace(&state, &a, &b).map_err(failure)?;
    writeln!(out, "correlation_trace  = {trace:.16e}").map_err(io)?;
    if is_singlet(&coeffs) {
        let closed = epr::correlation_closed(&k, &p, &a, &b).map_err(failure)?;
        writeln!(out, "correlation_closed = {closed:.16e}").map_err(io)?;
        writeln!(out, "abs_difference     = {:.16e}", (trace - closed).abs()).map_err(io)?;
    } else {
        let _ = writeln!(err, "relspin: note: coefficients are not a singlet; closed form skipped");
    }
    writeln!(out, "delta_correlation  = {:.16e}", trace + a.dot(&b)).map_err(io)?;
    Ok(())
}

fn curve_row(cfg: SpecialConfig, beta: f64) -> crate::Result<(f64, f64)> {
    let (k, p, a, b) = cfg.geometry(1.0, beta)?;
    let state = TwoParticleState::singlet(k, p)?;
    Ok((epr::correlation_trace(&state, &a, &b)?, epr::correlation_closed(&k, &p, &a, &b)?))
}

fn cmd_curve(a: &CurveArgs, out: &mut dyn Write) -> CliResult<()> {
    let ok = 0.0 <= a.beta_min && a.beta_min < a.beta_max && a.beta_max < 1.0;
    if !ok {
        return Err(input(format!(
            "need 0 <= beta-min < beta-max < 1, got [{}, {}]",
            a.beta_min, a.beta_max
        )));
    }
    if a.steps < 2 {
        return Err(input("--steps must be at least 2"));
    }
    let cfg = SpecialConfig::from(a.config);
    let span = a.beta_max - a.beta_min;
    let last = (a.steps - 1) as f64;
    let rows: Vec<(f64, crate::Result<(f64, f64)>)> = (0..a.steps)
        .into_par_iter()
        .map(|i| {
            let beta = if i + 1 == a.steps { a.beta_max } else { a.beta_min + span * i as f64 / last };
            (beta, curve_row(cfg, beta))
        })
        .collect();
    writeln!(out, "beta,correlation_trace,correlation_closed").map_err(io)?;
    for (beta, r) in rows {
        let (t, cl) = r.map_err(failure)?;
        writeln!(out, "{beta:.16e},{t:.16e},{cl:.16e}").map_err(io)?;
    }
    Ok(())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleEntry {
    pub weight: f64,
    pub momentum: [f64; 3],
    pub bloch: [f64; 3],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisRapidity {
    pub axis: [f64; 3],
    pub rapidity: f64,
}

/// A boost given either as a velocity 3-vector or as `{axis, rapidity}`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum BoostSpec {
    Velocity([f64; 3]),
    AxisRapidity(AxisRapidity),
}

impl BoostSpec {
    pub fn spinor(&self) -> crate::Result<SpinorMap> {
        match self {
            BoostSpec::Velocity(v) => density::boost_spinor_for_velocity(&vec3(*v)),
            BoostSpec::AxisRapidity(ar) => {
                if !ar.rapidity.is_finite() {
                    return Err(Error::NonFinite("rapidity"));
                }
                SpinorMap::boost(&vec3(ar.axis), ar.rapidity)
            }
        }
    }
}

/// State file for `omega` and `entropy`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub mass: f64,
    pub ensemble: Vec<EnsembleEntry>,
    #[serde(default)]
    pub boost: Option<BoostSpec>,
}

impl StateFile {
    pub fn ensemble(&self) -> crate::Result<Ensemble> {
        let entries = self
            .ensemble
            .iter()
            .map(|e| {
                let q = OnShellMomentum::new(self.mass, vec3(e.momentum))?;
                Ok((e.weight, SharpState::new(q, vec3(e.bloch))?))
            })
            .collect::<crate::Result<Vec<_>>>()?;
        Ensemble::new(entries)
    }
}

#[derive(Debug, Serialize)]
struct OmegaReport {
    a: f64,
    b: f64,
    u: [f64; 4],
    w: [f64; 4],
    s: [[f64; 4]; 4],
    entropy: f64,
    sigma_average: [f64; 3],
}

fn omega_report(om: &OmegaMatrix) -> crate::Result<OmegaReport> {
    let d = density::decompose(om);
    let s = std::array::from_fn(|i| std::array::from_fn(|j| d.s[(i, j)]));
    let sig = density::sigma_average(om)?;
    Ok(OmegaReport {
        a: d.a,
        b: d.b,
        u: d.u.to_array(),
        w: d.w.to_array(),
        s,
        entropy: density::entropy(&density::theta_tilde(om)?)?,
        sigma_average: [sig.x, sig.y, sig.z],
    })
}

fn cmd_omega(path: &Path, entropy_only: bool, out: &mut dyn Write) -> CliResult<()> {
    let sf: StateFile = parse_json(&read_text(path)?, "state file")?;
    let ensemble = sf.ensemble().map_err(input)?;
    let boost = sf.boost.as_ref().map(|b| b.spinor()).transpose().map_err(input)?;
    let om = density::omega_of_ensemble(&ensemble);
    let rest = omega_report(&om).map_err(failure)?;
    let boosted = boost
        .map(|a| omega_report(&density::transform_omega(&om, &a)))
        .transpose()
        .map_err(failure)?;

    let report = if entropy_only {
        let mut v = json!({ "entropy": rest.entropy });
        if let Some(bst) = &boosted {
            v["boosted_entropy"] = json!(bst.entropy);
            v["entropy_delta"] = json!(bst.entropy - rest.entropy);
        }
        v
    } else {
        let mut v = json!({ "mass": sf.mass, "omega": rest });
        if let Some(bst) = &boosted {
            v["entropy_delta"] = json!(bst.entropy - rest.entropy);
            v["boosted"] = serde_json::to_value(bst).expect("report serializes");
        }
        v
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    writeln!(out, "{text}").map_err(io)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    #[serde(rename = "E", default)]
    pub e: [f64; 3],
    #[serde(rename = "B", default)]
    pub b: [f64; 3],
    #[serde(rename = "gradB", default)]
    pub grad_b: [[f64; 3]; 3],
}

impl FieldSpec {
    pub fn field(&self) -> EMField {
        EMField {
            e: vec3(self.e),
            b: vec3(self.b),
            grad_b: Matrix3::from_fn(|i, j| self.grad_b[i][j]),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleSpec {
    pub mass: f64,
    pub charge: f64,
    #[serde(default)]
    pub g: Option<f64>,
    #[serde(default)]
    pub zeta: Option<f64>,
    #[serde(default)]
    pub momentum: [f64; 3],
    #[serde(default)]
    pub bloch: [f64; 3],
}

impl ParticleSpec {
    pub fn params(&self) -> crate::Result<ParticleParams> {
        match (self.g, self.zeta) {
            (Some(g), None) => ParticleParams::from_g(self.mass, self.charge, g),
            (None, Some(z)) => ParticleParams::new(self.mass, self.charge, z),
            _ => Err(Error::InvalidArgument("give exactly one of `g` and `zeta`".into())),
        }
    }
}

/// Inline JSON when the argument starts with `{`, otherwise a file path.
fn json_arg<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> CliResult<T> {
    if arg.trim_start().starts_with('{') {
        parse_json(arg, what)
    } else {
        parse_json(&read_text(Path::new(arg))?, what)
    }
}

fn cmd_precess(a: &PrecessArgs, out: &mut dyn Write) -> CliResult<()> {
    let field = json_arg::<FieldSpec>(&a.field, "field")?.field();
    field.validate().map_err(input)?;
    let spec: ParticleSpec = json_arg(&a.params, "particle parameters")?;
    let params = spec.params().map_err(input)?;
    let q = OnShellMomentum::new(params.mass, vec3(spec.momentum)).map_err(input)?;
    let xi = vec3(spec.bloch);
    SharpState::new(q, xi).map_err(input)?;
    if a.every == 0 {
        return Err(input("--every must be at least 1"));
    }
    if !(a.dt.is_finite() && a.dt > 0.0) || a.steps == 0 {
        return Err(input("--dt must be positive and --steps at least 1"));
    }

    let mut buf = std::io::BufWriter::new(out);
    if a.slow_motion {
        if field.e.norm() != 0.0 {
            return Err(input(Error::ElectricFieldPresent(field.e.norm())));
        }
        let rows = bmt::integrate_slow_motion(&q.spatial(), &xi, &field, &params, a.dt, a.steps).map_err(failure)?;
        writeln!(buf, "t,qx,qy,qz,xix,xiy,xiz").map_err(io)?;
        for r in rows.iter().step_by(a.every) {
            let vals = [r.t, r.q.x, r.q.y, r.q.z, r.xi.x, r.xi.y, r.xi.z];
            write_csv_row(&mut buf, &vals)?;
        }
    } else {
        let s0 = SpinKinState::from_momentum_and_bloch(&q, &xi);
        let traj = bmt::integrate(&s0, &field, &params, a.dt, a.steps).map_err(failure)?;
        writeln!(buf, "tau,x,y,z,q0,qx,qy,qz,w0,wx,wy,wz,inv_qq,inv_qw").map_err(io)?;
        let m2 = params.mass * params.mass;
        for r in traj.rows.iter().step_by(a.every) {
            let x = r.x.to_array();
            let qa = r.q.to_array();
            let w = r.w.to_array();
            let vals = [
                r.tau,
                x[1],
                x[2],
                x[3],
                qa[0],
                qa[1],
                qa[2],
                qa[3],
                w[0],
                w[1],
                w[2],
                w[3],
                r.q.norm_sqr() - m2,
                r.q.dot(&r.w),
            ];
            write_csv_row(&mut buf, &vals)?;
        }
    }
    buf.flush().map_err(io)
}

fn write_csv_row(out: &mut impl Write, vals: &[f64]) -> CliResult<()> {
    let line: Vec<String> = vals.iter().map(|v| format!("{v:.16e}")).collect();
    writeln!(out, "{}", line.join(",")).map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn curve_rows() {
        let (code, out, _) = run_capture(&[
            "relspin", "curve", "--config", "parallel-spin", "--beta-min", "0", "--beta-max", "0.9", "--steps", "3",
        ]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "beta,correlation_trace,correlation_closed");
        let vals: Vec<Vec<f64>> = lines[1..]
            .iter()
            .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
            .collect();
        for (row, beta) in vals.iter().zip([0.0_f64, 0.45, 0.9]) {
            let e = beta * beta / (2.0 - beta * beta);
            assert_eq!(row[0], beta);
            assert!((row[1] - e).abs() < 1e-10 && (row[2] - e).abs() < 1e-10);
        }
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_capture(&["relspin", "curve", "--config", "diagonal"]).0, 2);
        assert_eq!(run_capture(&["relspin", "curve", "--config", "parallel-spin", "--beta-max", "1.0"]).0, 2);
        assert_eq!(run_capture(&["relspin", "curve", "--config", "parallel-spin", "--steps", "1"]).0, 2);
        assert_eq!(run_capture(&["relspin", "frobnicate"]).0, 2);
        let (code, out, _) = run_capture(&["relspin", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("precess"));
    }

    #[test]
    fn singlet_detection() {
        assert!(is_singlet(&(epr::singlet_coeffs() * C64::new(0.0, 2.0))));
        assert!(!is_singlet(&Mat4::identity()));
    }

    #[test]
    fn boost_spec_forms() {
        let v: BoostSpec = serde_json::from_str("[0.5, 0, 0]").unwrap();
        let r: BoostSpec = serde_json::from_str(r#"{"axis": [1, 0, 0], "rapidity": 0.5493061443340549}"#).unwrap();
        let d = crate::linalg::distance(v.spinor().unwrap().matrix(), r.spinor().unwrap().matrix());
        assert!(d < 1e-14);
        assert!(serde_json::from_str::<BoostSpec>(r#"{"axis": [1, 0, 0], "speed": 1}"#).is_err());
    }
}
