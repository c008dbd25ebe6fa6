//! Spin-ℓ representations of the Sklyanin algebra, the L operator and
//! Baxter's R matrix.
//!
//! The representation space is the space of even level-4ℓ theta functions.
//! Difference operators are turned into matrices by evaluating them on a basis
//! at seeded sample points and solving in the least-squares sense.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::elliptic::{th, ThetaChar};
use crate::error::{Error, Result};
use crate::linalg::{c, fit_scalar, identity, kron, max_abs, pauli, CMat, CVec};
use crate::params::ModelParams;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Default seed for sample points.
pub const DEFAULT_SEED: u64 = 20_240_611;

/// Theta characteristics paired with the generators `S⁰..S³`.
pub const GENERATOR_CHARS: [ThetaChar; 4] = [ThetaChar::T11, ThetaChar::T10, ThetaChar::T00, ThetaChar::T01];

/// Basis `f_j = θ_j + θ_{−j}`, `j = 0..2ℓ`, of even level-4ℓ theta functions.
#[derive(Debug, Clone)]
pub struct ThetaSpaceBasis {
    two_ell: u32,
    tau: Complex64,
    sample_points: Vec<Complex64>,
    gram: CMat,
    pinv: CMat,
    condition: f64,
}

impl ThetaSpaceBasis {
    pub fn build(two_ell: u32, tau: Complex64, seed: u64) -> Result<Self> {
        if two_ell == 0 {
            return Err(Error::Domain("2ℓ must be at least 1".into()));
        }
        let d = two_ell as usize + 1;
        let n_points = 3 * d + 4;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut last_cond = f64::INFINITY;
        for _attempt in 0..8 {
            let mut pts = Vec::with_capacity(n_points);
            while pts.len() < n_points {
                let z = c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.2..0.2));
                if th(ThetaChar::T11, 2.0 * z, tau).norm() > 1e-2 {
                    pts.push(z);
                }
            }
            let gram = CMat::from_fn(n_points, d, |i, j| level_theta_even(two_ell, j, pts[i], tau));
            let cond = crate::linalg::condition_number(&gram);
            last_cond = cond;
            if cond <= 1e8 {
                let pinv = gram.clone().pseudo_inverse(1e-300).map_err(|e| Error::DegenerateBasis(e.to_string()))?;
                return Ok(ThetaSpaceBasis { two_ell, tau, sample_points: pts, gram, pinv, condition: cond });
            }
        }
        Err(Error::DegenerateBasis(format!("Gram condition number {last_cond:e} after resampling")))
    }

    pub fn two_ell(&self) -> u32 {
        self.two_ell
    }

    pub fn dim(&self) -> usize {
        self.two_ell as usize + 1
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn sample_points(&self) -> &[Complex64] {
        &self.sample_points
    }

    pub fn gram(&self) -> &CMat {
        &self.gram
    }

    pub fn condition(&self) -> f64 {
        self.condition
    }

    /// Basis function `j` at `z`.
    pub fn eval(&self, j: usize, z: Complex64) -> Complex64 {
        level_theta_even(self.two_ell, j, z, self.tau)
    }

    /// Value at `z` of the function with the given coefficients.
    pub fn eval_combination(&self, coeffs: &CVec, z: Complex64) -> Complex64 {
        (0..self.dim()).map(|j| coeffs[j] * self.eval(j, z)).sum()
    }

    /// Coefficients of sampled values, with the relative least-squares residual.
    pub fn expand_values(&self, values: &CVec) -> (CVec, f64) {
        let coeffs = &self.pinv * values;
        let fitted = &self.gram * &coeffs;
        let scale = values.iter().fold(0.0f64, |a, z| a.max(z.norm())).max(f64::MIN_POSITIVE);
        let res = (fitted - values).iter().fold(0.0f64, |a, z| a.max(z.norm())) / scale;
        (coeffs, res)
    }

    /// Expands a function of `z` in the basis.
    pub fn expand<F: Fn(Complex64) -> Complex64>(&self, f: F) -> (CVec, f64) {
        let values = CVec::from_iterator(self.sample_points.len(), self.sample_points.iter().map(|&z| f(z)));
        self.expand_values(&values)
    }

    /// Matrix of the linear map `f ↦ g` where `g(z)` is computed from `f` by `op`.
    /// Columns are the images of basis functions; returns the worst fit residual.
    pub fn operator_matrix<F>(&self, op: F) -> (CMat, f64)
    where
        F: Fn(&dyn Fn(Complex64) -> Complex64, Complex64) -> Complex64,
    {
        let d = self.dim();
        let n = self.sample_points.len();
        let mut values = CMat::zeros(n, d);
        for j in 0..d {
            let f = |z: Complex64| self.eval(j, z);
            for (i, &z) in self.sample_points.iter().enumerate() {
                values[(i, j)] = op(&f, z);
            }
        }
        let m = &self.pinv * &values;
        let res = max_abs(&(&self.gram * &m - &values)) / max_abs(&values).max(f64::MIN_POSITIVE);
        (m, res)
    }
}

/// Even combination `θ_j + θ_{−j}` of level-4ℓ theta constituents
/// `θ_j(z) = Σ_n exp(4ℓπi(n+j/4ℓ)²τ + 8ℓπi(n+j/4ℓ)z)`.
pub fn level_theta_even(two_ell: u32, j: usize, z: Complex64, tau: Complex64) -> Complex64 {
    level_theta(two_ell, j as i64, z, tau) + level_theta(two_ell, -(j as i64), z, tau)
}

fn level_theta(two_ell: u32, j: i64, z: Complex64, tau: Complex64) -> Complex64 {
    let k = 2.0 * two_ell as f64;
    let a = j as f64 / k;
    let term = |n: f64| {
        let m = n + a;
        (I * PI * k * (tau * m * m + 2.0 * m * z)).exp()
    };
    let mut sum = term(0.0);
    let mut biggest = sum.norm();
    for n in 1..200 {
        let up = term(n as f64);
        let down = term(-(n as f64));
        sum += up + down;
        let mag = up.norm().max(down.norm());
        biggest = biggest.max(mag);
        if n >= 2 && mag < 1e-17 * biggest {
            break;
        }
    }
    sum
}

/// `W^L_a(λ) = θ_a(λ;τ)/θ_a(η;τ)` for the characteristics of `S⁰..S³`.
pub fn l_weights(lambda: Complex64, eta: f64, tau: Complex64) -> [Complex64; 4] {
    let e = c(eta, 0.0);
    GENERATOR_CHARS.map(|ch| th(ch, lambda, tau) / th(ch, e, tau))
}

/// Structure constants `(J₁₂, J₂₃, J₃₁)`.
pub fn structure_constants(eta: f64, tau: Complex64) -> [Complex64; 3] {
    let e = c(eta, 0.0);
    let sq = |ch| th(ch, e, tau).powi(2);
    let (t00, t01, t10, t11) = (sq(ThetaChar::T00), sq(ThetaChar::T01), sq(ThetaChar::T10), sq(ThetaChar::T11));
    [t01 * t11 / (t00 * t10), t10 * t11 / (t00 * t01), -t00 * t11 / (t01 * t10)]
}

/// Matrices of `ρ^ℓ(S⁰..S³)` on a [`ThetaSpaceBasis`].
#[derive(Debug, Clone)]
pub struct SpinRep {
    two_ell: u32,
    eta: f64,
    tau: Complex64,
    basis: ThetaSpaceBasis,
    generators: [CMat; 4],
    fit_residual: f64,
}

impl SpinRep {
    pub fn new(params: &ModelParams, seed: u64) -> Result<Self> {
        Self::from_parts(params.two_ell, params.eta(), params.tau(), seed)
    }

    pub fn from_parts(two_ell: u32, eta: f64, tau: Complex64, seed: u64) -> Result<Self> {
        let basis = ThetaSpaceBasis::build(two_ell, tau, seed)?;
        let ell = two_ell as f64 / 2.0;
        let e = c(eta, 0.0);
        let mut fit_residual = 0.0f64;
        let generators = [0usize, 1, 2, 3].map(|a| {
            let ch = GENERATOR_CHARS[a];
            let pref = th(ch, e, tau) * if a == 2 { I } else { c(1.0, 0.0) };
            let s = move |z: Complex64| pref * th(ch, 2.0 * z, tau);
            let (m, res) = basis.operator_matrix(|f, z| {
                (s(z - ell * eta) * f(z + eta) - s(-z - ell * eta) * f(z - eta)) / th(ThetaChar::T11, 2.0 * z, tau)
            });
            fit_residual = fit_residual.max(res);
            m
        });
        Ok(SpinRep { two_ell, eta, tau, basis, generators, fit_residual })
    }

    pub fn two_ell(&self) -> u32 {
        self.two_ell
    }

    pub fn dim(&self) -> usize {
        self.two_ell as usize + 1
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn basis(&self) -> &ThetaSpaceBasis {
        &self.basis
    }

    /// `ρ^ℓ(S^a)`.
    pub fn generator(&self, a: usize) -> &CMat {
        &self.generators[a]
    }

    pub fn generators(&self) -> &[CMat; 4] {
        &self.generators
    }

    /// Worst relative least-squares residual of the operator fits.
    pub fn fit_residual(&self) -> f64 {
        self.fit_residual
    }

    /// Largest violation of the quadratic relations, relative to `max‖S‖²`:
    /// `[S^α,S⁰] = −iJ_{βγ}{S^β,S^γ}` and `[S^α,S^β] = i{S⁰,S^γ}`.
    pub fn sklyanin_residual(&self) -> f64 {
        let j = structure_constants(self.eta, self.tau);
        // J_{βγ} for α = 1, 2, 3 is J₂₃, J₃₁, J₁₂.
        let j_bg = [j[1], j[2], j[0]];
        let s = &self.generators;
        let scale = s.iter().map(max_abs).fold(0.0, f64::max).powi(2);
        let mut worst = 0.0f64;
        for (idx, (al, be, ga)) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)].into_iter().enumerate() {
            let comm0 = &s[al] * &s[0] - &s[0] * &s[al];
            let anti = &s[be] * &s[ga] + &s[ga] * &s[be];
            let e1 = comm0 + anti * (I * j_bg[idx]);
            let comm = &s[al] * &s[be] - &s[be] * &s[al];
            let anti0 = &s[0] * &s[ga] + &s[ga] * &s[0];
            let e2 = comm - anti0 * I;
            worst = worst.max(max_abs(&e1)).max(max_abs(&e2));
        }
        worst / scale
    }

    /// Same check with the constant indexed as `J_{αβ}`, for comparison.
    pub fn sklyanin_residual_alpha_beta(&self) -> f64 {
        let j = structure_constants(self.eta, self.tau);
        let s = &self.generators;
        let scale = s.iter().map(max_abs).fold(0.0, f64::max).powi(2);
        let mut worst = 0.0f64;
        for (idx, (al, be, ga)) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)].into_iter().enumerate() {
            let e1 = &s[al] * &s[0] - &s[0] * &s[al] + (&s[be] * &s[ga] + &s[ga] * &s[be]) * (I * j[idx]);
            worst = worst.max(max_abs(&e1));
        }
        worst / scale
    }

    /// For ℓ = 1/2: the generators in the basis
    /// `(θ₀₀(2z;2τ) − θ₁₀(2z;2τ), θ₀₀(2z;2τ) + θ₁₀(2z;2τ))`, divided by the
    /// scalar `2θ₀₀θ₀₁θ₁₀θ₁₁(η)/(θ₀₀θ₀₁θ₁₀(0))`, compared against `σ^a`.
    pub fn pauli_reduction_residual(&self) -> Result<f64> {
        let (change, scalar) = self.pauli_basis()?;
        let inv = change.clone().try_inverse().ok_or_else(|| Error::DegenerateBasis("basis change".into()))?;
        let sig = pauli();
        let mut worst = 0.0f64;
        for a in 0..4 {
            let m = &inv * &self.generators[a] * &change / scalar;
            worst = worst.max(max_abs(&(m - &sig[a])));
        }
        Ok(worst)
    }

    /// Change of basis to the ℓ = 1/2 Pauli basis and the reduction scalar.
    pub fn pauli_basis(&self) -> Result<(CMat, Complex64)> {
        if self.two_ell != 1 {
            return Err(Error::Precondition("Pauli reduction needs ℓ = 1/2".into()));
        }
        let tau = self.tau;
        let t2 = 2.0 * tau;
        let (v1, _) = self.basis.expand(|z| th(ThetaChar::T00, 2.0 * z, t2) - th(ThetaChar::T10, 2.0 * z, t2));
        let (v2, _) = self.basis.expand(|z| th(ThetaChar::T00, 2.0 * z, t2) + th(ThetaChar::T10, 2.0 * z, t2));
        let mut change = CMat::zeros(2, 2);
        change.set_column(0, &v1);
        change.set_column(1, &v2);
        let e = c(self.eta, 0.0);
        let z = c(0.0, 0.0);
        let num: Complex64 = ThetaChar::ALL.iter().map(|&ch| th(ch, e, tau)).product();
        let den = th(ThetaChar::T00, z, tau) * th(ThetaChar::T01, z, tau) * th(ThetaChar::T10, z, tau);
        Ok((change, 2.0 * num / den))
    }

    /// The 2×2 auxiliary blocks of `L(λ) = Σ_a W^L_a(λ) ρ(S^a) ⊗ σ^a`.
    pub fn l_blocks(&self, lambda: Complex64) -> [[CMat; 2]; 2] {
        let w = l_weights(lambda, self.eta, self.tau);
        let s = &self.generators;
        [
            [&s[0] * w[0] + &s[3] * w[3], &s[1] * w[1] - &s[2] * (I * w[2])],
            [&s[1] * w[1] + &s[2] * (I * w[2]), &s[0] * w[0] - &s[3] * w[3]],
        ]
    }

    /// `L(λ)` on `V ⊗ ℂ²`, quantum space first.
    pub fn l_matrix(&self, lambda: Complex64) -> CMat {
        let w = l_weights(lambda, self.eta, self.tau);
        let sig = pauli();
        let d = self.dim();
        let mut m = CMat::zeros(2 * d, 2 * d);
        for a in 0..4 {
            m += kron(&self.generators[a], &sig[a]) * w[a];
        }
        m
    }

    /// `‖R₁₂(λ−μ)L₀₁(λ)L₀₂(μ) − L₀₂(μ)L₀₁(λ)R₁₂(λ−μ)‖`, relative to the size of the products.
    pub fn rll_residual(&self, lambda: Complex64, mu: Complex64) -> f64 {
        let sig = pauli();
        let id2 = identity(2);
        let d = self.dim();
        let lift = |x: Complex64, first: bool| {
            let w = l_weights(x, self.eta, self.tau);
            let mut m = CMat::zeros(4 * d, 4 * d);
            for a in 0..4 {
                let aux = if first { kron(&sig[a], &id2) } else { kron(&id2, &sig[a]) };
                m += kron(&self.generators[a], &aux) * w[a];
            }
            m
        };
        let l01 = lift(lambda, true);
        let l02 = lift(mu, false);
        let r12 = kron(&identity(d), &r_matrix(lambda - mu, self.eta, self.tau));
        let lhs = &r12 * &l01 * &l02;
        let rhs = &l02 * &l01 * &r12;
        max_abs(&(&lhs - &rhs)) / max_abs(&lhs).max(max_abs(&rhs))
    }

    /// Parity operators `(U₁, U₂, U₃)` with `U₂ = U₃U₁`, and the worst fit residual.
    pub fn parity_ops(&self) -> ([CMat; 3], f64) {
        let ell = self.two_ell as f64 / 2.0;
        let tau = self.tau;
        let ph = (I * PI * ell).exp();
        let (u1, r1) = self.basis.operator_matrix(|f, z| ph * f(z + 0.5));
        let (u3, r3) = self
            .basis
            .operator_matrix(|f, z| ph * (I * PI * ell * (4.0 * z + tau)).exp() * f(z + tau / 2.0));
        let u2 = &u3 * &u1;
        ([u1, u2, u3], r1.max(r3))
    }
}

/// Baxter's R matrix `R(λ) = Σ_a W^L_a(λ+η) σ^a ⊗ σ^a`.
pub fn r_matrix(lambda: Complex64, eta: f64, tau: Complex64) -> CMat {
    let w = l_weights(lambda + eta, eta, tau);
    let sig = pauli();
    let mut m = CMat::zeros(4, 4);
    for a in 0..4 {
        m += kron(&sig[a], &sig[a]) * w[a];
    }
    m
}

/// Entries `(a, b, c, d)` of the R matrix in the form with modulus `2it`.
pub fn r_entries_abcd(lambda: Complex64, eta: f64, t: f64) -> [Complex64; 4] {
    let m = c(0.0, 2.0 * t);
    let x = I * t * lambda;
    let y = c(0.0, 2.0 * t * eta);
    let th_ = |ch, z| th(ch, z, m);
    let c1 = -2.0 * (-PI * t * lambda * (lambda + 2.0 * eta)).exp()
        / (th_(ThetaChar::T01, c(0.0, 0.0)) * th_(ThetaChar::T01, y) * th_(ThetaChar::T11, y));
    let (t01, t11) = (ThetaChar::T01, ThetaChar::T11);
    [
        c1 * th_(t01, y) * th_(t01, x) * th_(t11, x + y),
        c1 * th_(t11, y) * th_(t01, x) * th_(t01, x + y),
        c1 * th_(t01, y) * th_(t11, x) * th_(t01, x + y),
        c1 * th_(t11, y) * th_(t11, x) * th_(t11, x + y),
    ]
}

/// The R matrix assembled from `(a, b, c, d)`: `a` on the outer diagonal,
/// `c` on the inner diagonal, `b` and `d` off the diagonal.
pub fn r_matrix_abcd(lambda: Complex64, eta: f64, t: f64) -> CMat {
    let [a, b, cc, d] = r_entries_abcd(lambda, eta, t);
    let z = c(0.0, 0.0);
    CMat::from_row_slice(4, 4, &[a, z, z, d, z, cc, b, z, z, b, cc, z, d, z, z, a])
}

/// Closed theta quotients for the eigenvalues of the R matrix, in the order
/// `a+d, a−d, b+c, b−c` as printed with the normalization `C₂`.
pub fn spec_r_closed(lambda: Complex64, eta: f64, t: f64) -> [Complex64; 4] {
    let m = c(0.0, t);
    let x = I * t * lambda;
    let u = x / 2.0 + c(0.0, t * eta);
    let v = x / 2.0 - c(0.0, t * eta);
    let s = c(0.0, t * eta);
    let num: Complex64 = ThetaChar::ALL.iter().map(|&ch| th(ch, u, m)).product();
    let den: Complex64 = ThetaChar::ALL.iter().map(|&ch| th(ch, s, m)).product();
    let c2 = 2.0 * (-PI * t * lambda * (lambda + 2.0 * eta)).exp() * num / den;
    [ThetaChar::T00, ThetaChar::T01, ThetaChar::T10, ThetaChar::T11].map(|ch| c2 * th(ch, v, m) / th(ch, u, m))
}

/// Bell vectors in the order singlet `|01⟩−|10⟩`, `|01⟩+|10⟩`, `|00⟩−|11⟩`, `|00⟩+|11⟩`.
pub fn bell_basis() -> [CVec; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let v = |e: [f64; 4]| CVec::from_iterator(4, e.iter().map(|&x| c(x * h, 0.0)));
    [v([0.0, 1.0, -1.0, 0.0]), v([0.0, 1.0, 1.0, 0.0]), v([1.0, 0.0, 0.0, -1.0]), v([1.0, 0.0, 0.0, 1.0])]
}

/// Eigenvalues of a 4×4 eight-vertex matrix on the Bell vectors (same order).
pub fn bell_eigenvalues(r: &CMat) -> [Complex64; 4] {
    bell_basis().map(|v| (v.adjoint() * r * &v)[(0, 0)])
}

/// Scalar `s` with `abcd form ≈ s · weight form`, and the relative misfit.
pub fn r_forms_agreement(lambda: Complex64, eta: f64, t: f64) -> (Complex64, f64) {
    let tau = c(0.0, 1.0 / t);
    fit_scalar(&r_matrix_abcd(lambda, eta, t), &r_matrix(lambda, eta, tau))
}

/// Kronecker power `U^{⊗N}`.
pub fn kron_power(u: &CMat, n: usize) -> CMat {
    let mut m = DMatrix::identity(1, 1);
    for _ in 0..n {
        m = kron(&m, u);
    }
    m
}
