//! Free energy per site and the dominance of `Λ₁` in the eigenvalue.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::elliptic::{th, th_prime, ThetaChar};
use crate::error::{Error, Result};
use crate::params::ModelParams;

use super::{ground_density, quadrature_nodes};

const MAX_TERMS: usize = 200_000;

/// Open interval of `λ` on which the free-energy series converges:
/// `|λ − η| < (2ℓ+1)η`, intersected with `λ > 0`.
pub fn free_energy_strip(p: &ModelParams) -> (f64, f64) {
    let eta = p.eta();
    let w = (p.two_ell as f64 + 1.0) * eta;
    ((eta - w).max(0.0), eta + w)
}

fn check_strip(p: &ModelParams, lambda: f64) -> Result<()> {
    let (lo, hi) = free_energy_strip(p);
    if !(lambda > lo && lambda < hi) {
        return Err(Error::Domain(format!("λ = {lambda} outside the convergence strip ({lo}, {hi})")));
    }
    Ok(())
}

/// `sinh a · sinh c / (sinh b · cosh d)` with `b, d > 0`, in a form that
/// does not overflow.
fn ss_over_sc(a: f64, b: f64, c: f64, d: f64) -> f64 {
    if a == 0.0 || c == 0.0 {
        return 0.0;
    }
    let sign = a.signum() * c.signum();
    let (aa, cc) = (a.abs(), c.abs());
    sign * (aa + cc - b - d).exp() * (-(-2.0 * aa).exp_m1()) * (-(-2.0 * cc).exp_m1())
        / ((-(-2.0 * b).exp_m1()) * (1.0 + (-2.0 * d).exp()))
}

/// `sinh a · cosh c / (sinh b · cosh d)`.
fn sc_over_sc(a: f64, b: f64, c: f64, d: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let (aa, cc) = (a.abs(), c.abs());
    a.signum() * (aa + cc - b - d).exp() * (-(-2.0 * aa).exp_m1()) * (1.0 + (-2.0 * cc).exp())
        / ((-(-2.0 * b).exp_m1()) * (1.0 + (-2.0 * d).exp()))
}

fn sum_until_small<F: Fn(f64) -> f64>(term: F) -> Result<f64> {
    let mut s = 0.0;
    let mut small = 0;
    for n in 1..=MAX_TERMS {
        let v = term(n as f64);
        s += v;
        small = if v.abs() < 1e-18 * s.abs().max(1.0) { small + 1 } else { 0 };
        if small == 3 {
            return Ok(s);
        }
    }
    Err(Error::SeriesFailure { partial: Complex64::new(s, 0.0), terms: MAX_TERMS })
}

/// `−βf(λ)` modulo a λ-independent constant:
/// `log θ₁₁(λ+2ℓη; i/t) − πt(λ−η)(1−4ℓη)
///  − Σ sinh πnt(1−4ℓη) sinh 2πnt(λ−η) / (n sinh πnt cosh 2πnηt)`.
pub fn free_energy_series(p: &ModelParams, lambda: f64) -> Result<f64> {
    check_strip(p, lambda)?;
    let (eta, l, t) = (p.eta(), p.ell(), p.t);
    let g = 1.0 - 4.0 * l * eta;
    let head = th(ThetaChar::T11, Complex64::new(lambda + 2.0 * l * eta, 0.0), p.tau()).norm().ln();
    let tail = sum_until_small(|n| {
        let u = PI * n * t;
        ss_over_sc(u * g, u, 2.0 * u * (lambda - eta), 2.0 * u * eta) / n
    })?;
    Ok(head - PI * t * (lambda - eta) * g - tail)
}

/// Termwise derivative of [`free_energy_series`] in `λ`.
pub fn free_energy_series_derivative(p: &ModelParams, lambda: f64) -> Result<f64> {
    check_strip(p, lambda)?;
    let (eta, l, t) = (p.eta(), p.ell(), p.t);
    let g = 1.0 - 4.0 * l * eta;
    let z = Complex64::new(lambda + 2.0 * l * eta, 0.0);
    let head = (th_prime(ThetaChar::T11, z, p.tau()) / th(ThetaChar::T11, z, p.tau())).re;
    let tail = sum_until_small(|n| {
        let u = PI * n * t;
        2.0 * PI * t * sc_over_sc(u * g, u, 2.0 * u * (lambda - eta), 2.0 * u * eta)
    })?;
    Ok(head - PI * t * g - tail)
}

/// `Re (1/N) log Λ₁` in the thermodynamic limit, with the sum over sea
/// strings replaced by the integral against `ρ` on `nq` nodes.
pub fn free_energy_quadrature(p: &ModelParams, lambda: f64, nq: usize) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!("λ = {lambda} must be positive")));
    }
    let (eta, l, t) = (p.eta(), p.ell(), p.t);
    let modulus = Complex64::new(0.0, t);
    let theta = |z: Complex64| th(ThetaChar::T11, z, modulus);
    let x = Complex64::new(0.0, t * lambda);
    let rho = ground_density(p);
    let up = Complex64::new(0.0, (2.0 * l + 1.0) * eta * t);
    let down = Complex64::new(0.0, (2.0 * l - 1.0) * eta * t);
    let nodes = quadrature_nodes(nq);
    let mut integral = 0.0;
    for &y in &nodes {
        let w = x - y;
        integral += (theta(w - up) / theta(w + down)).norm().ln() * rho.eval(y);
    }
    integral /= nq as f64;
    let quad = PI / t * (x * x - 4.0 * l * (l + 1.0) * eta * eta * t * t);
    Ok(LN_2
        + 0.5 * t.ln()
        + quad.re
        + LN_2
        + theta(x + Complex64::new(0.0, 2.0 * l * eta * t)).norm().ln()
        + integral)
}

/// `Re (1/N) log(Λ₁/Λ₂)` in the thermodynamic limit, by quadrature against `ρ`,
/// for `0 < λ < η`. For `ℓ > 1/2` it vanishes; for `ℓ = 1/2` it is positive.
pub fn dominance_log_ratio_quadrature(p: &ModelParams, lambda: f64, nq: usize) -> Result<f64> {
    let (eta, l, t) = (p.eta(), p.ell(), p.t);
    if !(lambda > 0.0 && lambda < eta) {
        return Err(Error::Domain(format!("λ = {lambda} outside (0, η = {eta})")));
    }
    let modulus = Complex64::new(0.0, t);
    let theta = |z: Complex64| th(ThetaChar::T11, z, modulus);
    let x = Complex64::new(0.0, t * lambda);
    let rho = ground_density(p);
    let shifts: Vec<Complex64> = [2.0 * l + 1.0, 2.0 * l - 1.0]
        .iter()
        .filter(|&&k| k > 0.0)
        .map(|&k| Complex64::new(0.0, k * eta * t))
        .collect();
    let nodes = quadrature_nodes(nq);
    let mut integral = 0.0;
    for &y in &nodes {
        let w = x - y;
        let s: f64 = shifts.iter().map(|&s| (theta(w - s) / theta(w + s)).norm().ln()).sum();
        integral += s * rho.eval(y);
    }
    let e = Complex64::new(0.0, 2.0 * l * eta * t);
    let head = (theta(x + e) / theta(x - e)).norm().ln();
    if !head.is_finite() {
        return Err(Error::Domain(format!("θ₁₁ vanishes at λ = {lambda}")));
    }
    Ok(head + integral / nq as f64)
}

/// Real part of `−3πi/2 − πix − Σ i sin 2πnx/(n cosh 2πnηt)` at `x = itλ`,
/// the spin-1/2 limit of `(1/N) log(Λ₁/Λ₂)`. Needs `|λ| < η`.
pub fn dominance_log_ratio_series(p: &ModelParams, lambda: f64) -> Result<f64> {
    if p.two_ell != 1 {
        return Err(Error::Precondition("the closed series is for spin 1/2".into()));
    }
    let (eta, t) = (p.eta(), p.t);
    if !(lambda.abs() < eta) {
        return Err(Error::Domain(format!("|λ| = {} must be below η = {eta}", lambda.abs())));
    }
    let tail = sum_until_small(|n| {
        let a = 2.0 * PI * n * t * lambda;
        let d = 2.0 * PI * n * eta * t;
        // sinh a / cosh d
        a.signum() * (a.abs() - d).exp() * (-(-2.0 * a.abs()).exp_m1()) / (1.0 + (-2.0 * d).exp()) / n
    })?;
    Ok(PI * t * lambda + tail)
}

/// Five points inside the strip used for series/quadrature comparisons.
pub fn default_free_energy_grid(p: &ModelParams) -> Vec<f64> {
    let (lo, hi): (f64, f64) = if p.two_ell == 1 { (0.0, 0.3) } else { (0.02, 0.2) };
    let (slo, shi) = free_energy_strip(p);
    let (lo, hi) = (lo.max(slo), hi.min(shi));
    (0..5).map(|k| lo + (hi - lo) * (k as f64 + 0.5) / 5.0).collect()
}

#[derive(Debug, Clone)]
pub struct FreeEnergyComparison {
    pub grid: Vec<f64>,
    pub series: Vec<f64>,
    pub quadrature: Vec<f64>,
    /// The constant offset fixed at the first grid point.
    pub offset: f64,
    /// `max |(quad − series) − offset|` over the grid.
    pub max_deviation: f64,
}

/// Series against quadrature, compared modulo the undetermined constant.
pub fn compare_free_energy(p: &ModelParams, grid: &[f64], nq: usize) -> Result<FreeEnergyComparison> {
    if grid.is_empty() {
        return Err(Error::Precondition("empty λ grid".into()));
    }
    let series = grid.iter().map(|&l| free_energy_series(p, l)).collect::<Result<Vec<_>>>()?;
    let quadrature = grid.iter().map(|&l| free_energy_quadrature(p, l, nq)).collect::<Result<Vec<_>>>()?;
    let offset = quadrature[0] - series[0];
    let max_deviation =
        series.iter().zip(&quadrature).map(|(s, q)| (q - s - offset).abs()).fold(0.0, f64::max);
    Ok(FreeEnergyComparison { grid: grid.to_vec(), series, quadrature, offset, max_deviation })
}
