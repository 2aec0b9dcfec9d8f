//! Randomized identity suites backing `relspin check`.
//!
//! Each suite draws its own seeded sample stream, so results are
//! reproducible and independent of which other suites run.

use nalgebra::Vector3;

use crate::density::{omega_sharp, transform_omega, SharpState};
use crate::dirac::{
    bispinor_rep, gammas, lorentz_generators, spin_matrix, spin_spectrum, transformed_generator, Gammas,
};
use crate::epr::{correlation_closed, correlation_trace, TwoParticleState};
use crate::intertwiner::{dirac_residual, normalization_residuals, weinberg_residual};
use crate::linalg::{c, commutator, distance, levi_civita3, max_abs, Mat4, I};
use crate::lorentz::lambda_of_sl2c;
use crate::sampling::{self, SuiteRng};

/// Largest rapidity used for random momenta and transformations.
pub const MAX_RAPIDITY: f64 = 3.0;
/// Rapidity bound for the correlation oracle comparison.
pub const ORACLE_RAPIDITY: f64 = 2.0;

/// Deliberate corruption used to confirm the harness can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Adds 1e-6 to one entry of γ¹.
    PerturbGamma1,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckConfig {
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub fault: Option<Fault>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { seed: 42, samples: 1000, tolerance: crate::DEFAULT_TOLERANCE, fault: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub samples: usize,
    pub max_residual: f64,
    pub threshold: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.max_residual.is_finite() && self.max_residual < self.threshold
    }
}

pub const SUITES: [&str; 9] = [
    "clifford",
    "intertwiner",
    "dirac-equation",
    "weinberg",
    "spin-spectrum",
    "spin-commutators",
    "covariance",
    "omega-covariance",
    "correlation-oracle",
];

pub fn run_checks(cfg: &CheckConfig) -> Vec<SuiteResult> {
    SUITES
        .iter()
        .enumerate()
        .map(|(i, &name)| {
            let mut rng = sampling::rng_from_seed(cfg.seed.wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)));
            let (samples, max_residual) = run_suite(name, cfg, &mut rng);
            SuiteResult { name, samples, max_residual, threshold: cfg.tolerance }
        })
        .collect()
}

fn run_suite(name: &str, cfg: &CheckConfig, rng: &mut SuiteRng) -> (usize, f64) {
    let n = cfg.samples;
    let worst = |f: &mut dyn FnMut(&mut SuiteRng) -> f64, rng: &mut SuiteRng| {
        (0..n).fold(0.0_f64, |acc, _| {
            let r = f(rng);
            if r.is_nan() { f64::NAN } else { acc.max(r) }
        })
    };
    match name {
        "clifford" => {
            let mut g = Gammas::chiral();
            if cfg.fault == Some(Fault::PerturbGamma1) {
                g.upper[1][(0, 2)] += c(1e-6);
            }
            (1, clifford_residual(&g))
        }
        "intertwiner" => (n, worst(&mut |r| normalization_residuals(&random_momentum(r)).max(), rng)),
        "dirac-equation" => (n, worst(&mut |r| dirac_residual(&random_momentum(r)), rng)),
        "weinberg" => (
            n,
            worst(
                &mut |r| {
                    let k = random_momentum(r);
                    weinberg_residual(&sampling::lorentz(r, MAX_RAPIDITY), &k)
                },
                rng,
            ),
        ),
        "spin-spectrum" => (n, worst(&mut spectrum_residual, rng)),
        "spin-commutators" => (n, worst(&mut commutator_residual, rng)),
        "covariance" => (n, worst(&mut covariance_residual, rng)),
        "omega-covariance" => (n, worst(&mut omega_covariance_residual, rng)),
        "correlation-oracle" => (n, worst(&mut oracle_residual, rng)),
        other => unreachable!("unknown suite {other}"),
    }
}

fn random_momentum(rng: &mut SuiteRng) -> crate::lorentz::OnShellMomentum {
    let m = sampling::mass(rng);
    sampling::momentum(rng, m, MAX_RAPIDITY)
}

/// Clifford relations plus the γ⁵ identities, max-abs residual.
pub fn clifford_residual(g: &Gammas) -> f64 {
    let id = Mat4::identity();
    let mut worst = g.clifford_residual();
    worst = worst.max(distance(&(g.g5 * g.g5), &id));
    let prod = g.upper[0] * g.upper[1] * g.upper[2] * g.upper[3] * I;
    worst = worst.max(distance(&prod, &g.g5));
    for mu in 0..4 {
        worst = worst.max(max_abs(&(g.g5 * g.upper[mu] + g.upper[mu] * g.g5)));
    }
    worst
}

fn spectrum_residual(rng: &mut SuiteRng) -> f64 {
    let k = random_momentum(rng);
    let n = sampling::unit_vector(rng);
    let s = spin_matrix(&n, &k).expect("unit direction");
    let Ok(spec) = spin_spectrum(&s) else {
        return f64::INFINITY;
    };
    let expected = [0.5, 0.5, -0.5, -0.5];
    spec.values
        .iter()
        .zip(expected)
        .map(|(z, e)| (z.re - e).abs().max(z.im.abs()))
        .fold(0.0, f64::max)
}

fn commutator_residual(rng: &mut SuiteRng) -> f64 {
    let k = random_momentum(rng);
    let s: Vec<Mat4> = (0..3).map(|i| spin_matrix(&Vector3::ith(i, 1.0), &k).expect("unit axis")).collect();
    let mut worst = 0.0_f64;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let rhs = (0..3).fold(Mat4::zeros(), |acc, l| acc + s[l] * (I * levi_civita3(i, j, l)));
            worst = worst.max(distance(&commutator(&s[i], &s[j]), &rhs));
        }
    }
    worst
}

/// `D⁻¹γ^μD = Λ^μ_ν γ^ν` and `D⁻¹Σ^{μν}D = Λ^μ_α Λ^ν_β Σ^{αβ}`, relative to
/// the size of the right-hand side.
fn covariance_residual(rng: &mut SuiteRng) -> f64 {
    let a = sampling::spinor(rng, MAX_RAPIDITY);
    let d = bispinor_rep(&a);
    let lam = lambda_of_sl2c(&a);
    let l = lam.matrix();
    let g = gammas();
    let mut worst = 0.0_f64;
    for mu in 0..4 {
        let lhs = d.inverse() * g.upper[mu] * d.matrix();
        let rhs = (0..4).fold(Mat4::zeros(), |acc, nu| acc + g.upper[nu] * c(l[(mu, nu)]));
        worst = worst.max(distance(&lhs, &rhs) / max_abs(&rhs).max(1.0));
    }
    let gen = lorentz_generators();
    for ((mu, nu), s) in gen.independent() {
        let lhs = d.inverse() * s * d.matrix();
        let rhs = transformed_generator(&gen, l, mu, nu);
        worst = worst.max(distance(&lhs, &rhs) / max_abs(&rhs).max(1.0));
    }
    worst
}

/// Conjugating a sharp-state `Ω` by `D(A)` against building it from the
/// transformed momentum and Wigner-rotated Bloch vector, relative.
fn omega_covariance_residual(rng: &mut SuiteRng) -> f64 {
    let k = random_momentum(rng);
    let st = SharpState::new(k, sampling::bloch_vector(rng)).expect("Bloch vector in the unit ball");
    let a = sampling::spinor(rng, MAX_RAPIDITY);
    let om = omega_sharp(&st);
    let lhs = transform_omega(&om, &a);
    let rhs = omega_sharp(&st.transformed(&a));
    let trace = (lhs.trace() - om.trace()).abs();
    (distance(lhs.matrix(), rhs.matrix()) / max_abs(rhs.matrix()).max(1.0)).max(trace)
}

fn oracle_residual(rng: &mut SuiteRng) -> f64 {
    let m = sampling::mass(rng);
    let k = sampling::momentum(rng, m, ORACLE_RAPIDITY);
    let p = sampling::momentum(rng, m, ORACLE_RAPIDITY);
    let a = sampling::unit_vector(rng);
    let b = sampling::unit_vector(rng);
    let st = TwoParticleState::singlet(k, p).expect("shared mass");
    match (correlation_trace(&st, &a, &b), correlation_closed(&k, &p, &a, &b)) {
        (Ok(t), Ok(cl)) => (t - cl).abs(),
        _ => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_run_passes() {
        let cfg = CheckConfig { samples: 200, ..CheckConfig::default() };
        for r in run_checks(&cfg) {
            assert!(r.passed(), "{} {:e}", r.name, r.max_residual);
        }
    }

    #[test]
    fn injected_fault_fails_clifford_only() {
        let cfg = CheckConfig { samples: 20, fault: Some(Fault::PerturbGamma1), ..CheckConfig::default() };
        let results = run_checks(&cfg);
        let failed: Vec<_> = results.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
        assert_eq!(failed, vec!["clifford"]);
    }

    #[test]
    fn deterministic_for_seed() {
        let cfg = CheckConfig { samples: 50, ..CheckConfig::default() };
        assert_eq!(run_checks(&cfg), run_checks(&cfg));
    }
}
