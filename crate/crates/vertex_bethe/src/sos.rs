//! Intertwining vectors, gauge matrices and SOS weights.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::elliptic::{th, ThetaChar};
use crate::error::{Error, Result};
use crate::linalg::{c, kron_vec, max_abs_vec, CMat, CVec};
use crate::sklyanin::SpinRep;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Gauge parameters `s = (s₊, s₋)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeParams {
    pub s_plus: Complex64,
    pub s_minus: Complex64,
}

impl Default for GaugeParams {
    fn default() -> Self {
        GaugeParams { s_plus: c(0.31, 0.17), s_minus: c(-0.23, 0.11) }
    }
}

impl GaugeParams {
    /// `w_x = (s₊+s₋)/2 + 2xη − τ/2`; `x` may be a half-integer.
    pub fn w(&self, x: f64, eta: f64, tau: Complex64) -> Complex64 {
        (self.s_plus + self.s_minus) / 2.0 + 2.0 * x * eta - tau / 2.0
    }

    /// Checks `θ₁₁(w_k) ≠ 0` for all half-integer steps `k ∈ {0, 1/2, …, r}`.
    pub fn validate(&self, r: u32, eta: f64, tau: Complex64) -> Result<()> {
        for h in 0..=(2 * r) {
            let x = h as f64 / 2.0;
            let v = th(ThetaChar::T11, self.w(x, eta, tau), tau);
            if v.norm() < 1e-8 {
                return Err(Error::SingularGauge(format!("θ₁₁(w_{x}) = {v:e}")));
            }
        }
        Ok(())
    }
}

/// Height pair `(k, k′)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HeightPair {
    pub k: i64,
    pub k_prime: i64,
}

impl HeightPair {
    pub fn new(k: i64, k_prime: i64) -> Self {
        HeightPair { k, k_prime }
    }

    /// `k − k′ ∈ {−2ℓ, −2ℓ+2, …, 2ℓ}`.
    pub fn is_admissible(&self, two_ell: u32) -> bool {
        let d = self.k - self.k_prime;
        d.abs() <= two_ell as i64 && (d + two_ell as i64) % 2 == 0
    }
}

/// SOS gauge machinery bound to one representation and one choice of `s`.
#[derive(Debug, Clone)]
pub struct SosGauge {
    rep: SpinRep,
    gauge: GaugeParams,
    t: f64,
}

impl SosGauge {
    pub fn new(rep: SpinRep, gauge: GaugeParams, r: u32) -> Result<Self> {
        let tau = rep.tau();
        if tau.re != 0.0 {
            return Err(Error::Domain("gauge matrices need a pure imaginary modulus".into()));
        }
        gauge.validate(r, rep.eta(), tau)?;
        Ok(SosGauge { t: 1.0 / tau.im, rep, gauge })
    }

    pub fn rep(&self) -> &SpinRep {
        &self.rep
    }

    pub fn gauge(&self) -> &GaugeParams {
        &self.gauge
    }

    fn eta(&self) -> f64 {
        self.rep.eta()
    }

    fn tau(&self) -> Complex64 {
        self.rep.tau()
    }

    fn ell(&self) -> f64 {
        self.rep.two_ell() as f64 / 2.0
    }

    fn theta11(&self, z: Complex64) -> Complex64 {
        th(ThetaChar::T11, z, self.tau())
    }

    fn w(&self, x: f64) -> Complex64 {
        self.gauge.w(x, self.eta(), self.tau())
    }

    /// Prefactor `a_{k,k′} = e^{2πiℓ(k+k′)η} (−e^{πi(s₊−s₋)})^{(k−k′)/2}`, principal branch.
    pub fn prefactor(&self, pair: HeightPair) -> Complex64 {
        let base = -(I * PI * (self.gauge.s_plus - self.gauge.s_minus)).exp();
        let e = (pair.k - pair.k_prime) as f64 / 2.0;
        (2.0 * I * PI * self.ell() * (pair.k + pair.k_prime) as f64 * self.eta()).exp() * base.powc(c(e, 0.0))
    }

    /// `φ^{(ℓ)}_{k,k′}(λ;s)(z)` as a product of theta functions.
    pub fn intertwining_function(&self, pair: HeightPair, lambda: Complex64, z: Complex64) -> Result<Complex64> {
        let two_ell = self.rep.two_ell() as i64;
        if !pair.is_admissible(self.rep.two_ell()) {
            return Err(Error::Domain(format!("height pair ({}, {}) not admissible", pair.k, pair.k_prime)));
        }
        let (k, kp) = (pair.k as f64, pair.k_prime as f64);
        let ell = self.ell();
        let eta = self.eta();
        let tau = self.tau();
        let n1 = (two_ell + pair.k - pair.k_prime) / 2;
        let n2 = (two_ell - pair.k + pair.k_prime) / 2;
        let mut v = self.prefactor(pair);
        for j in 1..=n1 {
            let cj = (self.gauge.s_plus - lambda) / 2.0 + tau / 4.0 + (kp - ell + 2.0 * j as f64 - 1.0) * eta;
            v *= th(ThetaChar::T00, z + cj, tau) * th(ThetaChar::T00, z - cj, tau);
        }
        for j in 1..=n2 {
            let cj = (self.gauge.s_minus + lambda) / 2.0 + tau / 4.0 + (k - ell + 2.0 * j as f64 - 1.0) * eta;
            v *= th(ThetaChar::T00, z + cj, tau) * th(ThetaChar::T00, z - cj, tau);
        }
        Ok(v)
    }

    /// Coefficient vector of `φ_{k,k′}(λ;s)` in the representation basis.
    pub fn intertwining_vector(&self, pair: HeightPair, lambda: Complex64) -> Result<CVec> {
        let (v, res) = self.intertwining_vector_with_residual(pair, lambda)?;
        if res > 1e-8 {
            return Err(Error::Consistency(format!("intertwining vector not in the theta space (residual {res:e})")));
        }
        Ok(v)
    }

    pub fn intertwining_vector_with_residual(&self, pair: HeightPair, lambda: Complex64) -> Result<(CVec, f64)> {
        let basis = self.rep.basis();
        let values = basis
            .sample_points()
            .iter()
            .map(|&z| self.intertwining_function(pair, lambda, z))
            .collect::<Result<Vec<_>>>()?;
        Ok(basis.expand_values(&CVec::from_vec(values)))
    }

    /// Gauge matrix `M_k(λ;s)`.
    pub fn gauge_matrix(&self, k: i64, lambda: Complex64) -> Result<CMat> {
        self.gauge_matrix_at(k as f64, lambda)
    }

    /// `M_x(λ;s)` for a real height `x`.
    pub fn gauge_matrix_at(&self, k: f64, lambda: Complex64) -> Result<CMat> {
        let t = self.t;
        let eta = self.eta();
        let m2 = c(0.0, 2.0 * t);
        let col = |s: Complex64| {
            let u = s + 2.0 * k * eta;
            let arg = -I * t * u;
            let g = (-PI * t / 2.0 * (u - c(0.0, 1.0 / (2.0 * t))).powi(2)).exp();
            [th(ThetaChar::T11, arg, m2) * g, th(ThetaChar::T01, arg, m2) * g]
        };
        let wk = self.theta11(self.w(k));
        if wk.norm() < 1e-12 {
            return Err(Error::SingularGauge(format!("θ₁₁(w_{k}) vanishes")));
        }
        let c1 = col(self.gauge.s_plus - lambda);
        let c2 = col(self.gauge.s_minus + lambda);
        Ok(CMat::from_row_slice(2, 2, &[c1[0], c2[0] / wk, c1[1], c2[1] / wk]))
    }

    fn inverse2(m: &CMat) -> Result<CMat> {
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        let scale = m.iter().fold(0.0f64, |a, z| a.max(z.norm())).powi(2);
        if det.norm() <= 1e-14 * scale {
            return Err(Error::SingularGauge(format!("det M = {det:e}")));
        }
        Ok(CMat::from_row_slice(2, 2, &[m[(1, 1)] / det, -m[(0, 1)] / det, -m[(1, 0)] / det, m[(0, 0)] / det]))
    }

    /// SOS weight `W[(k,k′) → (k+ε, k′+ε′)](λ)`.
    pub fn sos_weight(&self, k: i64, kp: i64, eps: i8, eps_p: i8, lambda: Complex64) -> Result<Complex64> {
        let eta = self.eta();
        let two_ell = self.rep.two_ell() as f64;
        let (kf, kpf) = (k as f64, kp as f64);
        let t = |z: Complex64| self.theta11(z);
        let w = |x: f64| self.theta11(self.w(x));
        let check = |v: Complex64| {
            if v.norm() < 1e-14 {
                Err(Error::SingularWeight(format!("θ₁₁(w) denominator vanishes at k={k}, k′={kp}")))
            } else {
                Ok(v)
            }
        };
        let r = match (eps, eps_p) {
            (-1, -1) => 2.0 * t(lambda + (kf - kpf) * eta) * w((kf + kpf + two_ell) / 2.0) / check(w(kf))?,
            (-1, 1) => 2.0 * t(c((kpf - kf - two_ell) * eta, 0.0)) * t(self.w((kf + kpf) / 2.0) + lambda)
                / (check(w(kf))? * check(w(kpf))?),
            (1, -1) => 2.0 * t(c((kf - kpf - two_ell) * eta, 0.0)) * t(self.w((kf + kpf) / 2.0) - lambda),
            (1, 1) => 2.0 * t(lambda - (kf - kpf) * eta) * w((kf + kpf - two_ell) / 2.0) / check(w(kpf))?,
            _ => return Err(Error::Domain(format!("ε, ε′ must be ±1, got {eps}, {eps_p}"))),
        };
        Ok(r)
    }

    /// Blocks of `L_{k,k′}(λ;s) = M_k(λ)⁻¹ L(λ) M_{k′}(λ)`, indexed by `(ε, ε′)` with `−1 ↦ 0`.
    pub fn twisted_l(&self, k: i64, kp: i64, lambda: Complex64) -> Result<[[CMat; 2]; 2]> {
        let blocks = self.rep.l_blocks(lambda);
        twist_blocks(&blocks, &Self::inverse2(&self.gauge_matrix(k, lambda)?)?, &self.gauge_matrix(kp, lambda)?)
    }

    /// `M_k(λ)⁻¹` and `M_{k′}(λ)`, for twisting other 2×2 block operators.
    pub fn twist_pair(&self, k: i64, kp: i64, lambda: Complex64) -> Result<(CMat, CMat)> {
        Ok((Self::inverse2(&self.gauge_matrix(k, lambda)?)?, self.gauge_matrix(kp, lambda)?))
    }

    /// Worst relative residual of the four vertex–face relations at `(k, k′)`.
    ///
    /// When the target pair is not admissible the weight carries a vanishing
    /// factor and the twisted entry must annihilate `φ_{k,k′}`.
    pub fn vertex_face_residual(&self, k: i64, kp: i64, lambda: Complex64) -> Result<f64> {
        let two_ell = self.rep.two_ell();
        let lt = self.twisted_l(k, kp, lambda)?;
        let phi = self.intertwining_vector(HeightPair::new(k, kp), c(0.0, 0.0))?;
        let mut outs = Vec::new();
        for (ie, eps) in [-1i8, 1].into_iter().enumerate() {
            for (iep, eps_p) in [-1i8, 1].into_iter().enumerate() {
                let lhs = &lt[ie][iep] * &phi;
                let target = HeightPair::new(k + eps as i64, kp + eps_p as i64);
                let rhs = if target.is_admissible(two_ell) {
                    let w = self.sos_weight(k, kp, eps, eps_p, lambda)?;
                    self.intertwining_vector(target, c(0.0, 0.0))? * w
                } else {
                    CVec::zeros(lhs.len())
                };
                outs.push((lhs, rhs));
            }
        }
        let scale = outs.iter().map(|(l, _)| max_abs_vec(l)).fold(0.0, f64::max);
        Ok(outs.iter().map(|(l, r)| max_abs_vec(&(l - r))).fold(0.0, f64::max) / scale)
    }

    /// Local-vacuum relations at `k′ = k − 2ℓ`:
    /// `α φ = 2θ₁₁(λ+2ℓη) φ_{k−1,k′−1}`, `δ φ = 2θ₁₁(λ−2ℓη) φ_{k+1,k′+1}`, `γ φ = 0`.
    pub fn local_vacuum_residual(&self, k: i64, lambda: Complex64) -> Result<f64> {
        let two_ell = self.rep.two_ell() as i64;
        let kp = k - two_ell;
        let eta = self.eta();
        let ell2 = two_ell as f64 * eta;
        let lt = self.twisted_l(k, kp, lambda)?;
        let zero = c(0.0, 0.0);
        let phi = self.intertwining_vector(HeightPair::new(k, kp), zero)?;
        let a = &lt[0][0] * &phi;
        let d = &lt[1][1] * &phi;
        let g = &lt[1][0] * &phi;
        let ea = self.intertwining_vector(HeightPair::new(k - 1, kp - 1), zero)? * (2.0 * self.theta11(lambda + ell2));
        let ed = self.intertwining_vector(HeightPair::new(k + 1, kp + 1), zero)? * (2.0 * self.theta11(lambda - ell2));
        let scale = max_abs_vec(&a).max(max_abs_vec(&d));
        Ok([max_abs_vec(&(a - ea)), max_abs_vec(&(d - ed)), max_abs_vec(&g)].into_iter().fold(0.0, f64::max) / scale)
    }

    /// Intertwining identity with the gauge columns `ψ_{k,k±1}(μ)`:
    /// `L(μ−λ) φ_{k,k′}(λ) ⊗ ψ_{k′,k′+ε′}(μ) = Σ_ε W(μ−λ) e^{−πiλ(ε−ε′)} φ_{k+ε,k′+ε′}(λ) ⊗ ψ_{k,k+ε}(μ)`.
    pub fn remark_identity_residual(&self, k: i64, kp: i64, eps_p: i8, lambda: Complex64, mu: Complex64) -> Result<f64> {
        let two_ell = self.rep.two_ell();
        let l = self.rep.l_matrix(mu - lambda);
        let col = |kk: i64, e: i8| -> Result<CVec> {
            let m = self.gauge_matrix(kk, mu)?;
            let j = if e < 0 { 0 } else { 1 };
            Ok(CVec::from_vec(vec![m[(0, j)], m[(1, j)]]))
        };
        let phi = self.intertwining_vector(HeightPair::new(k, kp), lambda)?;
        let lhs = &l * kron_vec(&phi, &col(kp, eps_p)?);
        let mut rhs = CVec::zeros(lhs.len());
        for eps in [-1i8, 1] {
            let target = HeightPair::new(k + eps as i64, kp + eps_p as i64);
            if !target.is_admissible(two_ell) {
                continue;
            }
            let w = self.sos_weight(k, kp, eps, eps_p, mu - lambda)? * (-I * PI * lambda * (eps - eps_p) as f64).exp();
            rhs += kron_vec(&self.intertwining_vector(target, lambda)?, &col(k, eps)?) * w;
        }
        Ok(max_abs_vec(&(&lhs - &rhs)) / max_abs_vec(&lhs))
    }
}

/// `(Mi · T · Mp)` for a 2×2 array of operator blocks.
pub fn twist_blocks(blocks: &[[CMat; 2]; 2], mi: &CMat, mp: &CMat) -> Result<[[CMat; 2]; 2]> {
    let n = blocks[0][0].nrows();
    let entry = |i: usize, j: usize| {
        let mut acc = CMat::zeros(n, n);
        for a in 0..2 {
            for b in 0..2 {
                acc += &blocks[a][b] * (mi[(i, a)] * mp[(b, j)]);
            }
        }
        acc
    };
    Ok([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
}
