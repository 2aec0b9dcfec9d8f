//! Dirac matrices in the chiral basis, the bispinor representation of
//! SL(2,C), Lorentz generators, Pauli–Lubanski operators at fixed momentum
//! and the relativistic spin operator `n⃗·Ŝ`.
//!
//! Momentum operators are always replaced by numeric on-shell eigenvalues,
//! so `[P̂^μ, Ŝʲ] = 0` holds trivially and is not represented.

use std::sync::LazyLock;

use nalgebra::{Matrix4, Vector3};

use crate::error::{Error, Result};
use crate::linalg::{block_diag, blocks, c, max_abs, pauli, sigma_dot, Mat2, Mat4, C64, I};
use crate::lorentz::{require_unit, FourVector, OnShellMomentum, SpinorMap};

/// A 4×4 complex matrix acting on bispinor indices.
pub type BispinorMatrix = Mat4;

/// The five Dirac matrices γ⁰, γ¹, γ², γ³ (upper index) and γ⁵.
#[derive(Clone, Debug, PartialEq)]
pub struct Gammas {
    pub upper: [Mat4; 4],
    pub g5: Mat4,
}

static CHIRAL: LazyLock<Gammas> = LazyLock::new(Gammas::chiral);

const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

impl Gammas {
    /// `γ⁰ = [[0, I], [I, 0]]`, `γⁱ = [[0, −σᵢ], [σᵢ, 0]]`, `γ⁵ = diag(I, −I)`.
    pub fn chiral() -> Self {
        let z = Mat2::zeros();
        let id = Mat2::identity();
        let s = pauli();
        let gi = |k: usize| blocks(&z, &(-s[k]), &s[k], &z);
        Gammas {
            upper: [blocks(&z, &id, &id, &z), gi(0), gi(1), gi(2)],
            g5: block_diag(&id, &(-id)),
        }
    }

    /// `γ_μ = g_μν γ^ν`.
    pub fn lower(&self, mu: usize) -> Mat4 {
        self.upper[mu] * c(METRIC[mu])
    }

    /// `k γ = k_μ γ^μ` for a contravariant `k`.
    pub fn slash(&self, k: &FourVector) -> Mat4 {
        (0..4).fold(Mat4::zeros(), |acc, mu| acc + self.upper[mu] * c(METRIC[mu] * k[mu]))
    }

    /// `n⃗·γ⃗ = Σᵢ nⁱ γⁱ`.
    pub fn spatial_dot(&self, n: &Vector3<f64>) -> Mat4 {
        self.upper[1] * c(n.x) + self.upper[2] * c(n.y) + self.upper[3] * c(n.z)
    }

    /// Max-abs residual of `γ^μγ^ν + γ^νγ^μ − 2g^{μν}I` over all 16 pairs.
    pub fn clifford_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for mu in 0..4 {
            for nu in 0..4 {
                let anti = self.upper[mu] * self.upper[nu] + self.upper[nu] * self.upper[mu];
                let g = if mu == nu { 2.0 * METRIC[mu] } else { 0.0 };
                worst = worst.max(max_abs(&(anti - Mat4::identity() * c(g))));
            }
        }
        worst
    }
}

/// The shared chiral-basis constants.
pub fn gammas() -> &'static Gammas {
    &CHIRAL
}

/// Bispinor image `D(Λ(A)) = diag(A, (A†)⁻¹)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BispinorRep {
    matrix: Mat4,
    inverse: Mat4,
}

impl BispinorRep {
    pub fn matrix(&self) -> &Mat4 {
        &self.matrix
    }

    pub fn inverse(&self) -> &Mat4 {
        &self.inverse
    }
}

pub fn bispinor_rep(a: &SpinorMap) -> BispinorRep {
    let a_m = *a.matrix();
    let a_inv = *a.inverse().matrix();
    BispinorRep {
        matrix: block_diag(&a_m, &a_inv.adjoint()),
        inverse: block_diag(&a_inv, &a_m.adjoint()),
    }
}

/// Bispinor Lorentz generators `Σ^{μν} = (i/4)[γ^μ, γ^ν]`, upper indices.
#[derive(Clone, Debug, PartialEq)]
pub struct LorentzGenerators {
    all: [[Mat4; 4]; 4],
}

impl LorentzGenerators {
    pub fn get(&self, mu: usize, nu: usize) -> &Mat4 {
        &self.all[mu][nu]
    }

    /// `Σ_{μν}` with both indices lowered.
    pub fn lower(&self, mu: usize, nu: usize) -> Mat4 {
        self.all[mu][nu] * c(METRIC[mu] * METRIC[nu])
    }

    /// The six independent generators, ordered (01, 02, 03, 12, 13, 23).
    pub fn independent(&self) -> Vec<((usize, usize), Mat4)> {
        let mut out = Vec::with_capacity(6);
        for mu in 0..4 {
            for nu in (mu + 1)..4 {
                out.push(((mu, nu), self.all[mu][nu]));
            }
        }
        out
    }
}

pub fn lorentz_generators() -> LorentzGenerators {
    let g = gammas();
    let mut all = [[Mat4::zeros(); 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let comm = g.upper[mu] * g.upper[nu] - g.upper[nu] * g.upper[mu];
            all[mu][nu] = comm * (I * 0.25);
        }
    }
    LorentzGenerators { all }
}

/// Pauli–Lubanski operators `(Ŵ⁰, Ŵ⃗)` at a sharp momentum.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliLubanskiOps {
    pub w0: Mat4,
    pub w: [Mat4; 3],
}

impl PauliLubanskiOps {
    /// `n⃗·Ŵ⃗`.
    pub fn along(&self, n: &Vector3<f64>) -> Mat4 {
        self.w[0] * c(n.x) + self.w[1] * c(n.y) + self.w[2] * c(n.z)
    }

    /// `k_μ Ŵ^μ`, which vanishes identically.
    pub fn contract(&self, k: &FourVector) -> Mat4 {
        self.w0 * c(k.t()) - self.along(&k.spatial())
    }
}

/// `Ŵ⁰ = ½ diag(k⃗·σ⃗, k⃗·σ⃗)`,
/// `Ŵ⃗ = ½k⁰ diag(σ⃗, σ⃗) − (i/2) diag(k⃗×σ⃗, −k⃗×σ⃗)`.
pub fn pauli_lubanski(k: &OnShellMomentum) -> PauliLubanskiOps {
    let kv = k.spatial();
    let k0 = k.energy();
    let s = pauli();
    let ks = sigma_dot(&kv);
    let w0 = block_diag(&ks, &ks) * c(0.5);
    let w = std::array::from_fn(|i| {
        // (k⃗ × σ⃗)_i = ε_ijl k_j σ_l
        let j = (i + 1) % 3;
        let l = (i + 2) % 3;
        let cross = s[l] * c(kv[j]) - s[j] * c(kv[l]);
        let diag = block_diag(&s[i], &s[i]) * c(0.5 * k0);
        diag - block_diag(&cross, &(-cross)) * (I * 0.5)
    });
    PauliLubanskiOps { w0, w }
}

/// Spin projection `n⃗·Ŝ = (1/m)(n⃗·Ŵ⃗ − Ŵ⁰ n⃗·k⃗/(k⁰+m))` at momentum `k`.
pub fn spin_matrix(n: &Vector3<f64>, k: &OnShellMomentum) -> Result<BispinorMatrix> {
    require_unit(n, "n")?;
    Ok(spin_matrix_unchecked(n, k))
}

pub(crate) fn spin_matrix_unchecked(n: &Vector3<f64>, k: &OnShellMomentum) -> Mat4 {
    let pl = pauli_lubanski(k);
    let m = k.mass();
    let corr = n.dot(&k.spatial()) / (k.energy() + m);
    (pl.along(n) - pl.w0 * c(corr)) / c(m)
}

/// Eigen-decomposition of a spin operator. Eigenvalues are sorted by
/// decreasing real part; column `j` of `vectors` belongs to `values[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinSpectrum {
    pub values: [C64; 4],
    pub vectors: Mat4,
}

impl SpinSpectrum {
    pub fn max_imaginary(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |a, z| a.max(z.im.abs()))
    }
}

/// Spectrum of a (non-normal) 4×4 spin matrix via a complex Schur
/// decomposition; eigenvectors span the null spaces of `S − λI` for each
/// eigenvalue cluster.
pub fn spin_spectrum(s: &BispinorMatrix) -> Result<SpinSpectrum> {
    if !s.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("spin matrix"));
    }
    let schur = s
        .try_schur(1e-15, 10_000)
        .ok_or(Error::EigenSolver("Schur iteration did not converge"))?;
    let (_, t) = schur.unpack();
    let mut values: [C64; 4] = std::array::from_fn(|i| t[(i, i)]);
    values.sort_by(|a, b| b.re.total_cmp(&a.re));

    let scale = max_abs(s).max(1.0);
    let mut vectors = Mat4::zeros();
    let mut col = 0;
    let mut i = 0;
    while i < 4 {
        let mut j = i + 1;
        while j < 4 && (values[j] - values[i]).norm() < 1e-6 * scale {
            j += 1;
        }
        let mult = j - i;
        let mean = values[i..j].iter().sum::<C64>() / c(mult as f64);
        let shifted = s - Mat4::identity() * mean;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.ok_or(Error::EigenSolver("SVD failed"))?;
        // smallest singular values span the eigenspace
        let mut order: Vec<usize> = (0..4).collect();
        order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
        for &r in order.iter().take(mult) {
            let v = v_t.row(r).adjoint();
            vectors.set_column(col, &v);
            col += 1;
        }
        i = j;
    }
    Ok(SpinSpectrum { values, vectors })
}

/// Real 4×4 matrix helper used by covariance checks: `Λ^μ_α Λ^ν_β Σ^{αβ}`.
pub fn transformed_generator(gen: &LorentzGenerators, lambda: &Matrix4<f64>, mu: usize, nu: usize) -> Mat4 {
    let mut acc = Mat4::zeros();
    for a in 0..4 {
        for b in 0..4 {
            let coef = lambda[(mu, a)] * lambda[(nu, b)];
            if coef != 0.0 {
                acc += gen.get(a, b) * c(coef);
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, distance, levi_civita3};
    use crate::lorentz::lambda_of_sl2c;

    fn mom(m: f64, x: f64, y: f64, z: f64) -> OnShellMomentum {
        OnShellMomentum::new(m, Vector3::new(x, y, z)).unwrap()
    }

    #[test]
    fn gamma_squares_and_anticommutator() {
        let g = gammas();
        let id = Mat4::identity();
        assert!(distance(&(g.upper[0] * g.upper[0]), &id) < 1e-15);
        assert!(distance(&(g.upper[1] * g.upper[1]), &(-id)) < 1e-15);
        assert!(max_abs(&(g.upper[0] * g.upper[1] + g.upper[1] * g.upper[0])) < 1e-15);
        assert_eq!(g.clifford_residual(), 0.0);
        // γ⁵ = iγ⁰γ¹γ²γ³ in this basis
        let prod = g.upper[0] * g.upper[1] * g.upper[2] * g.upper[3] * I;
        assert!(distance(&prod, &g.g5) < 1e-15);
    }

    #[test]
    fn bispinor_rep_properties() {
        assert!(distance(bispinor_rep(&SpinorMap::identity()).matrix(), &Mat4::identity()) < 1e-15);
        let a = SpinorMap::boost(&Vector3::new(1.0, 0.2, -0.3), 1.4).unwrap()
            * SpinorMap::rotation(&Vector3::new(0.0, 1.0, 1.0), 0.7).unwrap();
        let d = bispinor_rep(&a);
        let g0 = gammas().upper[0];
        assert!(distance(&(d.matrix().adjoint() * g0 * d.matrix()), &g0) < 1e-12);
        assert!((d.matrix().determinant() - c(1.0)).norm() < 1e-12);

        let r = bispinor_rep(&SpinorMap::rotation(&Vector3::x(), 2.1).unwrap());
        assert!(distance(&(r.matrix() * r.matrix().adjoint()), &Mat4::identity()) < 1e-10);
    }

    #[test]
    fn generator_examples() {
        let gen = lorentz_generators();
        let s3 = pauli()[2];
        let expected = block_diag(&s3, &s3) * c(0.5);
        assert!(distance(gen.get(1, 2), &expected) < 1e-15);
        // [Σ¹², Σ²³] = iΣ³¹
        let lhs = commutator(gen.get(1, 2), gen.get(2, 3));
        assert!(distance(&lhs, &(gen.get(3, 1) * I)) < 1e-15);
        // a 2π rotation generated by Σ¹² is −I on bispinors, 4π is +I
        let rot = |theta: f64| (gen.get(1, 2) * (-I * theta)).exp();
        assert!(distance(&rot(std::f64::consts::TAU), &(-Mat4::identity())) < 1e-12);
        assert!(distance(&rot(2.0 * std::f64::consts::TAU), &Mat4::identity()) < 1e-12);
    }

    #[test]
    fn generators_transform_covariantly() {
        let gen = lorentz_generators();
        let a = SpinorMap::boost(&Vector3::new(0.3, 1.0, -0.2), 0.9).unwrap()
            * SpinorMap::rotation(&Vector3::new(1.0, 1.0, 0.0), -0.4).unwrap();
        let d = bispinor_rep(&a);
        let lam = lambda_of_sl2c(&a);
        for ((mu, nu), s) in gen.independent() {
            let lhs = d.inverse() * s * d.matrix();
            let rhs = transformed_generator(&gen, lam.matrix(), mu, nu);
            assert!(distance(&lhs, &rhs) < 1e-12, "({mu},{nu})");
        }
    }

    #[test]
    fn pauli_lubanski_examples() {
        let rest = pauli_lubanski(&OnShellMomentum::at_rest(2.0).unwrap());
        assert!(max_abs(&rest.w0) < 1e-15);
        let s = pauli();
        for i in 0..3 {
            assert!(distance(&rest.w[i], &(block_diag(&s[i], &s[i]) * c(1.0))) < 1e-15);
        }
        let k = mom(1.0, 0.0, 0.0, 1.0);
        let pl = pauli_lubanski(&k);
        assert!(distance(&pl.w0, &(block_diag(&s[2], &s[2]) * c(0.5))) < 1e-15);
        let k = mom(1.7, -0.3, 2.0, 0.8);
        assert!(max_abs(&pauli_lubanski(&k).contract(&k.four_vector())) < 1e-12);
    }

    #[test]
    fn spin_matrix_examples() {
        let n = Vector3::new(0.6, 0.0, 0.8);
        let rest = spin_matrix(&n, &OnShellMomentum::at_rest(1.0).unwrap()).unwrap();
        let ns = sigma_dot(&n);
        assert!(distance(&rest, &(block_diag(&ns, &ns) * c(0.5))) < 1e-15);

        let s3 = pauli()[2];
        let long = spin_matrix(&Vector3::z(), &mom(1.0, 0.0, 0.0, 3.5)).unwrap();
        assert!(distance(&long, &(block_diag(&s3, &s3) * c(0.5))) < 1e-14);

        assert!(spin_matrix(&Vector3::new(1.0, 1.0, 0.0), &mom(1.0, 0.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn spin_spectrum_examples() {
        let s = spin_matrix(&Vector3::z(), &OnShellMomentum::at_rest(1.0).unwrap()).unwrap();
        let spec = spin_spectrum(&s).unwrap();
        let expect = [0.5, 0.5, -0.5, -0.5];
        for (z, e) in spec.values.iter().zip(expect) {
            assert!((z - c(e)).norm() < 1e-14);
        }

        let n = Vector3::new(1.0, -2.0, 0.5).normalize();
        let k = mom(0.8, 1.5, 0.7, -2.2);
        let s = spin_matrix(&n, &k).unwrap();
        let spec = spin_spectrum(&s).unwrap();
        for (z, e) in spec.values.iter().zip(expect) {
            assert!((z - c(e)).norm() < 1e-10, "{z}");
        }
        for j in 0..4 {
            let v = spec.vectors.column(j);
            let r = s * v - v * spec.values[j];
            assert!(r.iter().all(|z| z.norm() < 1e-9));
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
        assert!(distance(&(s * s), &(Mat4::identity() * c(0.25))) < 1e-12);
    }

    #[test]
    fn spin_commutators() {
        let k = mom(1.2, 0.9, -1.4, 0.3);
        let s: Vec<Mat4> = (0..3)
            .map(|i| spin_matrix(&Vector3::ith(i, 1.0), &k).unwrap())
            .collect();
        for i in 0..3 {
            for j in 0..3 {
                let mut rhs = Mat4::zeros();
                for l in 0..3 {
                    rhs += s[l] * (I * levi_civita3(i, j, l));
                }
                assert!(distance(&commutator(&s[i], &s[j]), &rhs) < 1e-12);
            }
        }
    }
}
