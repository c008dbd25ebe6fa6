//! Densities of string centers and excitation responses as cosine series.

use std::f64::consts::PI;

use crate::elliptic::{phi_prime, psi_prime, sinh_ratio};
use crate::error::Result;
use crate::params::ModelParams;

use super::{check_points, quadrature_nodes, Kernel};

const MAX_TERMS: usize = 100_000;
const CUTOFF: f64 = 1e-17;
const TAIL_PROBE: usize = 64;

/// `f(x) = c₀ + Σ_{n≥1} c_n cos 2πnx + s·δ(x)`, with `δ` the 1-periodic delta
/// comb. Only the regular part is evaluated; `singular` records `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierDensity {
    pub constant: f64,
    pub coefficients: Vec<f64>,
    pub truncation: usize,
    /// `Σ |c_n|` over the first terms past the truncation.
    pub tail_bound: f64,
    pub singular: f64,
}

impl FourierDensity {
    /// Truncates once two consecutive coefficients fall below `1e−17`.
    pub fn from_fn<F: Fn(usize) -> f64>(constant: f64, singular: f64, coeff: F) -> Self {
        let mut coefficients = Vec::new();
        let mut small = 0;
        for n in 1..=MAX_TERMS {
            let c = coeff(n);
            coefficients.push(c);
            small = if c.abs() < CUTOFF { small + 1 } else { 0 };
            if small == 2 {
                break;
            }
        }
        let truncation = coefficients.len();
        let tail_bound = (truncation + 1..=truncation + TAIL_PROBE).map(|n| coeff(n).abs()).sum();
        FourierDensity { constant, coefficients, truncation, tail_bound, singular }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut s = self.constant;
        for (k, c) in self.coefficients.iter().enumerate() {
            s += c * (2.0 * PI * (k + 1) as f64 * x).cos();
        }
        s
    }

    /// `∫_a^b` of the regular part.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        let mut s = self.constant * (b - a);
        for (k, c) in self.coefficients.iter().enumerate() {
            let w = 2.0 * PI * (k + 1) as f64;
            s += c * ((w * b).sin() - (w * a).sin()) / w;
        }
        s
    }

    /// `c_n`, with `c_0` the constant term.
    pub fn coefficient(&self, n: usize) -> f64 {
        if n == 0 {
            self.constant
        } else {
            self.coefficients.get(n - 1).copied().unwrap_or(0.0)
        }
    }
}

/// `ρ(x) = Σ_{n∈ℤ} e^{2πinx}/(2 cosh 2πnηt)`.
pub fn ground_density(p: &ModelParams) -> FourierDensity {
    let a = 2.0 * PI * p.eta() * p.t;
    FourierDensity::from_fn(0.5, 0.0, |n| 1.0 / (a * n as f64).cosh())
}

/// `Σ_{μ∈mus} sinh πnt(1−2μ)/sinh πnt`, the Fourier weight of `−Φ′/2π`.
fn kernel_weight(mus: &[f64], n: usize, t: f64) -> f64 {
    let u = PI * n as f64 * t;
    mus.iter().map(|&mu| sinh_ratio(u * (1.0 - 2.0 * mu), u)).sum()
}

fn kernel_mus(p: &ModelParams) -> Vec<f64> {
    let eta = p.eta();
    let tl = p.two_ell;
    (1..tl).map(|m| 2.0 * m as f64 * eta).chain((0..tl).map(|m| 2.0 * (m + 1) as f64 * eta)).collect()
}

/// Hole response `σ = σ_reg − δ`. The regular part has constant
/// `1 − 1/(4ℓ)` and coefficients `2k_n/(1+k_n)`.
pub fn sigma_density(p: &ModelParams) -> FourierDensity {
    let mus = kernel_mus(p);
    let t = p.t;
    FourierDensity::from_fn(1.0 - 1.0 / (2.0 * p.ell() * 2.0), -1.0, move |n| {
        let k = kernel_weight(&mus, n, t);
        2.0 * k / (1.0 + k)
    })
}

/// Cosine coefficient of `σ` in the closed product form, including the
/// delta part: `−sinh πnt sinh 2πnηt / (sinh πnt(1−4ℓη) sinh 4πnℓηt cosh 2πnηt)`.
pub fn sigma_printed_coefficient(p: &ModelParams, n: usize) -> f64 {
    let (eta, l, t) = (p.eta(), p.ell(), p.t);
    let u = PI * n as f64 * t;
    -sinh_ratio(u, u * (1.0 - 4.0 * l * eta)) * sinh_ratio(2.0 * u * eta, 4.0 * u * l * eta) / (2.0 * u * eta).cosh()
}

/// `ω₋(x) = −(2ℓ−1)/(2ℓ) − Σ 2 sinh 2πn(2ℓ−1)ηt / sinh 4πnℓηt · cos 2πnx`.
pub fn omega_minus_density(p: &ModelParams) -> FourierDensity {
    let (eta, l, t) = (p.eta(), p.ell(), p.t);
    FourierDensity::from_fn(-(2.0 * l - 1.0) / (2.0 * l), 0.0, move |n| {
        let u = PI * n as f64 * t;
        -2.0 * sinh_ratio(2.0 * u * (2.0 * l - 1.0) * eta, 4.0 * u * l * eta)
    })
}

/// `ω₊(x) = −1 − Σ 2 sinh πnt(1−2(2ℓ+1)η) / sinh πnt(1−4ℓη) · cos 2πnx`.
pub fn omega_plus_density(p: &ModelParams) -> FourierDensity {
    let (eta, l, t) = (p.eta(), p.ell(), p.t);
    FourierDensity::from_fn(-1.0, 0.0, move |n| {
        let u = PI * n as f64 * t;
        -2.0 * sinh_ratio(u * (1.0 - 2.0 * (2.0 * l + 1.0) * eta), u * (1.0 - 4.0 * l * eta))
    })
}

/// `ω₀(x) = Σ 2 sinh 2πnηt / sinh πnt(1−4ℓη) · cos 2πnx`.
pub fn omega_zero_density(p: &ModelParams) -> FourierDensity {
    let (eta, l, t) = (p.eta(), p.ell(), p.t);
    FourierDensity::from_fn(0.0, 0.0, move |n| {
        let u = PI * n as f64 * t;
        2.0 * sinh_ratio(2.0 * u * eta, u * (1.0 - 4.0 * l * eta))
    })
}

#[derive(Debug, Clone)]
pub struct ExcitationDensities {
    pub sigma: FourierDensity,
    pub omega_minus: FourierDensity,
    pub omega_plus: FourierDensity,
    pub omega_zero: FourierDensity,
}

pub fn excitation_densities(p: &ModelParams) -> ExcitationDensities {
    ExcitationDensities {
        sigma: sigma_density(p),
        omega_minus: omega_minus_density(p),
        omega_plus: omega_plus_density(p),
        omega_zero: omega_zero_density(p),
    }
}

/// Sup over sample points of `|2πf − K∗f − source|` with the convolution
/// done on `nq` nodes.
fn residual<S>(p: &ModelParams, f: &FourierDensity, nq: usize, source: S) -> Result<f64>
where
    S: Fn(f64) -> Result<f64>,
{
    let kernel = Kernel::new(p);
    let nodes = quadrature_nodes(nq);
    let values: Vec<f64> = nodes.iter().map(|&y| f.eval(y)).collect();
    let mut worst: f64 = 0.0;
    for x in check_points() {
        let r = 2.0 * PI * f.eval(x) - kernel.convolve(x, &nodes, &values)? - source(x)?;
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

/// `Σ_{j} [Φ′(x;(2j+1)η) + Φ′(x;(2j+3)η)]` over `j = 0..count`.
fn paired_phi_prime(x: f64, count: u32, eta: f64, t: f64) -> Result<f64> {
    let mut s = 0.0;
    for j in 0..count {
        let m = j as f64 + 0.5;
        s += phi_prime(x, 2.0 * m * eta, t)? + phi_prime(x, 2.0 * (m + 1.0) * eta, t)?;
    }
    Ok(s)
}

/// Residual of `Σ_α Φ′(x; 2(α+ℓ)η) = −2πρ + K∗ρ`.
pub fn ground_residual(p: &ModelParams, nq: usize) -> Result<f64> {
    let rho = ground_density(p);
    let (eta, t) = (p.eta(), p.t);
    let tl = p.two_ell;
    residual(p, &rho, nq, |x| {
        let mut lhs = 0.0;
        for j in 0..tl {
            lhs += phi_prime(x, (2 * j + 1) as f64 * eta, t)?;
        }
        Ok(-lhs)
    })
}

#[derive(Debug, Clone, Copy)]
pub struct ExcitationResiduals {
    pub sigma: f64,
    pub omega_minus: f64,
    pub omega_plus: f64,
    pub omega_zero: f64,
}

impl ExcitationResiduals {
    pub fn max(&self) -> f64 {
        self.sigma.max(self.omega_minus).max(self.omega_plus).max(self.omega_zero)
    }
}

/// Integral-equation residuals of `σ, ω₋, ω₊, ω₀`. For `σ` the delta part is
/// moved to the source: `2πσ_reg = K∗σ_reg − K`.
pub fn excitation_residuals(p: &ModelParams, nq: usize) -> Result<ExcitationResiduals> {
    let d = excitation_densities(p);
    let (eta, l, t) = (p.eta(), p.ell(), p.t);
    let tl = p.two_ell;
    let kernel = Kernel::new(p);
    let sigma = residual(p, &d.sigma, nq, |x| Ok(-kernel.eval(x)?))?;
    let omega_minus = residual(p, &d.omega_minus, nq, |x| paired_phi_prime(x, tl - 1, eta, t))?;
    let omega_plus = residual(p, &d.omega_plus, nq, |x| paired_phi_prime(x, tl, eta, t))?;
    let omega_zero = residual(p, &d.omega_zero, nq, |x| {
        let mut s = psi_prime(x, (2.0 * l + 1.0) * eta, t)?;
        if tl > 1 {
            s += psi_prime(x, (2.0 * l - 1.0) * eta, t)?;
        }
        Ok(s)
    })?;
    Ok(ExcitationResiduals { sigma, omega_minus, omega_plus, omega_zero })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(two_ell: u32) -> ModelParams {
        ModelParams::defaults(two_ell).unwrap()
    }

    #[test]
    fn constant_terms() {
        for tl in [1, 2] {
            let p = params(tl);
            let l = p.ell();
            let d = excitation_densities(&p);
            assert_eq!(ground_density(&p).constant, 0.5);
            assert!((d.sigma.constant + d.sigma.singular + 1.0 / (4.0 * l)).abs() < 1e-15);
            assert!((d.omega_minus.constant + (2.0 * l - 1.0) / (2.0 * l)).abs() < 1e-15);
            assert_eq!(d.omega_plus.constant, -1.0);
            assert_eq!(d.omega_zero.constant, 0.0);
        }
    }

    #[test]
    fn tails_are_negligible() {
        for tl in [1, 2, 3] {
            let p = params(tl);
            let d = excitation_densities(&p);
            for f in [ground_density(&p), d.sigma, d.omega_minus, d.omega_plus, d.omega_zero] {
                assert!(f.tail_bound < 1e-12, "{f:?}");
            }
        }
    }

    #[test]
    fn sigma_regular_part_matches_product_form() {
        for tl in [1, 2] {
            let p = params(tl);
            let s = sigma_density(&p);
            for n in 1..12 {
                let printed = sigma_printed_coefficient(&p, n);
                assert!((s.coefficient(n) - 2.0 - printed).abs() < 1e-13, "n={n}");
            }
        }
    }

    #[test]
    fn integral_equations_hold() {
        for tl in [1, 2] {
            let p = params(tl);
            let g = ground_residual(&p, 2048).unwrap();
            let e = excitation_residuals(&p, 2048).unwrap();
            assert!(g < 1e-10, "rho {g}");
            assert!(e.max() < 1e-10, "{e:?}");
        }
    }

    #[test]
    fn wrong_density_fails_its_equation() {
        let p = params(1);
        let mut rho = ground_density(&p);
        rho.coefficients[0] *= 1.01;
        let kernel = Kernel::new(&p);
        let nodes = quadrature_nodes(256);
        let values: Vec<f64> = nodes.iter().map(|&y| rho.eval(y)).collect();
        let x = 0.1;
        let lhs = phi_prime(x, p.eta(), p.t).unwrap();
        let rhs = -2.0 * PI * rho.eval(x) + kernel.convolve(x, &nodes, &values).unwrap();
        assert!((lhs - rhs).abs() > 1e-3);
    }

    #[test]
    fn signs_on_the_interval() {
        for tl in [1, 2] {
            let p = params(tl);
            let rho = ground_density(&p);
            let om = omega_minus_density(&p);
            for k in 0..=200 {
                let x = -0.5 + k as f64 / 200.0;
                assert!(rho.eval(x) > 0.0);
                assert!((rho.eval(x) - rho.eval(-x)).abs() < 1e-14);
                if tl > 1 {
                    assert!(om.eval(x) < 0.0);
                }
            }
        }
    }

    #[test]
    fn integral_is_antiderivative() {
        let p = params(2);
        let w = omega_plus_density(&p);
        let (a, b) = (-0.31, 0.27);
        let n = 4000;
        let h = (b - a) / n as f64;
        let mut simpson = w.eval(a) + w.eval(b);
        for i in 1..n {
            let x = a + i as f64 * h;
            simpson += if i % 2 == 1 { 4.0 } else { 2.0 } * w.eval(x);
        }
        simpson *= h / 3.0;
        assert!((simpson - w.integral(a, b)).abs() < 1e-10);
    }
}
