//! Two-particle S matrix: the `𝕊` factor, the eigenvalues on the four
//! excited states, and the comparison with the R matrix at the shifted
//! modulus `it(1−4ℓη)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::elliptic::{double_product, q_gamma, sinh_ratio, th, ThetaChar};
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::sklyanin::{bell_eigenvalues, r_matrix};

use super::Variant;

const MAX_TERMS: usize = 100_000;

fn check_x(x: f64) -> Result<()> {
    if !(x > -1.0 && x < 1.0) {
        return Err(Error::Domain(format!("x = {x} outside (−1, 1)")));
    }
    Ok(())
}

fn check_mu(mu: f64) -> Result<()> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::Domain(format!("μ = {mu} outside (0, 1)")));
    }
    Ok(())
}

fn series_sum<F: Fn(f64) -> f64>(term: F) -> Result<f64> {
    let mut s = 0.0;
    let mut small = 0;
    let mut biggest: f64 = 0.0;
    for n in 1..=MAX_TERMS {
        let v = term(n as f64);
        s += v;
        biggest = biggest.max(v.abs());
        small = if v.abs() <= 1e-18 * biggest.max(1.0) { small + 1 } else { 0 };
        if small == 3 {
            return Ok(s);
        }
    }
    Err(Error::SeriesFailure { partial: Complex64::new(s, 0.0), terms: MAX_TERMS })
}

/// `𝕊(x;μ) = exp(i Σ c_n sin 2πnx)` with
/// `c_n = sinh πnt(μ−2η) / (n sinh πntμ cosh 2πntη)`.
pub fn big_s_series(p: &ModelParams, x: f64, mu: f64) -> Result<Complex64> {
    check_mu(mu)?;
    let (eta, t) = (p.eta(), p.t);
    let phase = series_sum(|n| {
        let u = PI * n * t;
        sinh_ratio(u * (mu - 2.0 * eta), u * mu) / (n * (2.0 * u * eta).cosh()) * (2.0 * PI * n * x).sin()
    })?;
    Ok(Complex64::new(0.0, phase).exp())
}

/// `p^e` with `p = e^{−2πt}`.
fn p_pow(t: f64, e: Complex64) -> Complex64 {
    (-2.0 * PI * t * e).exp()
}

/// `𝕊` as a ratio of double infinite products in `p^μ` and `q⁴`,
/// `p = e^{−2πt}`, `q = p^η`, at `λ = x/(it)`.
pub fn big_s_double_product(p: &ModelParams, x: f64, mu: f64) -> Result<Complex64> {
    check_mu(mu)?;
    let (eta, t) = (p.eta(), p.t);
    let lam = Complex64::new(0.0, -x / t);
    let q1 = (-2.0 * PI * t * mu).exp();
    let q2 = (-8.0 * PI * t * eta).exp();
    let dp = |e: Complex64| double_product(p_pow(t, e), q1, q2);
    let (m, e2, e4) = (Complex64::new(mu, 0.0), Complex64::new(2.0 * eta, 0.0), Complex64::new(4.0 * eta, 0.0));
    let num = dp(e4 + lam)? * dp(lam + m)? * dp(e2 - lam)? * dp(e2 - lam + m)?;
    let den = dp(e4 - lam)? * dp(m - lam)? * dp(e2 + lam)? * dp(e2 + lam + m)?;
    Ok(num / den)
}

/// `𝕊` as a product of `q`-Gamma ratios with base `Q = q⁴`.
pub fn big_s_q_gamma(p: &ModelParams, x: f64, mu: f64) -> Result<Complex64> {
    check_mu(mu)?;
    let (eta, t) = (p.eta(), p.t);
    let q = (-8.0 * PI * t * eta).exp();
    let g = |z: Complex64| q_gamma(z, q);
    let one = Complex64::new(1.0, 0.0);
    let half = Complex64::new(0.5, 0.0);
    let lam = Complex64::new(0.0, -x / t);
    let l = lam / (4.0 * eta);
    let mut v = g(half + l)? * g(one - l)? / (g(half - l)? * g(one + l)?);
    let mut settled = 0;
    for k in 1..=10_000 {
        let a = (lam + k as f64 * mu) / (4.0 * eta);
        let b = (-lam + k as f64 * mu) / (4.0 * eta);
        let f = g(half + a)?.powi(2) * g(one + b)? * g(b)? / (g(half + b)?.powi(2) * g(one + a)? * g(a)?);
        v *= f;
        settled = if (f - 1.0).norm() < 1e-17 { settled + 1 } else { 0 };
        if settled == 2 {
            return Ok(v);
        }
    }
    Err(Error::SeriesFailure { partial: v, terms: 10_000 })
}

/// `S₀(x) = e^{−2πix} θ₁₁(x/2−itη; 4iℓηt)/θ₁₁(x/2+itη; 4iℓηt) · 𝕊(x;1−4ℓη) 𝕊(x;4ℓη)`.
pub fn s_zero(p: &ModelParams, x: f64) -> Result<Complex64> {
    check_x(x)?;
    let (eta, l, t) = (p.eta(), p.ell(), p.t);
    let modulus = Complex64::new(0.0, 4.0 * l * t * eta);
    let (u, v) = shifted_args(x, t, eta);
    let quotient = th(ThetaChar::T11, v, modulus) / th(ThetaChar::T11, u, modulus);
    let s1 = big_s_double_product(p, x, 1.0 - 4.0 * l * eta)?;
    let s2 = big_s_double_product(p, x, 4.0 * l * eta)?;
    Ok(Complex64::new(0.0, -2.0 * PI * x).exp() * quotient * s1 * s2)
}

/// `(x/2 + itη, x/2 − itη)`.
fn shifted_args(x: f64, t: f64, eta: f64) -> (Complex64, Complex64) {
    (Complex64::new(x / 2.0, t * eta), Complex64::new(x / 2.0, -t * eta))
}

fn variant_char(v: Variant) -> ThetaChar {
    match v {
        Variant::I0 => ThetaChar::T11,
        Variant::I1 => ThetaChar::T10,
        Variant::II0 => ThetaChar::T01,
        Variant::II1 => ThetaChar::T00,
    }
}

/// Eigenvalue on a variant as the theta quotient
/// `−S₀(x) θ_ab(x/2−itη; it′)/θ_ab(x/2+itη; it′)`, `t′ = t(1−4ℓη)`.
/// The overall sign makes `S(0)` the permutation matrix: `−1` on I₀,
/// `+1` on the other three.
pub fn s_matrix_closed(p: &ModelParams, variant: Variant, x: f64) -> Result<Complex64> {
    check_x(x)?;
    let (eta, l, t) = (p.eta(), p.ell(), p.t);
    let modulus = Complex64::new(0.0, t * (1.0 - 4.0 * l * eta));
    let (u, v) = shifted_args(x, t, eta);
    let ch = variant_char(variant);
    Ok(-s_zero(p, x)? * th(ch, v, modulus) / th(ch, u, modulus))
}

/// The real series for `i log(±S)` on a variant.
pub fn s_log_series(p: &ModelParams, variant: Variant, x: f64) -> Result<f64> {
    check_x(x)?;
    let (eta, l, t) = (p.eta(), p.ell(), p.t);
    let g = 1.0 - 4.0 * l * eta;
    let eps = variant.epsilon() as f64;
    let common = series_sum(|n| {
        let u = PI * n * t;
        let ch = (2.0 * u * eta).cosh();
        let a = sinh_ratio(u * (g - 2.0 * eta), u * g) / (n * ch);
        let b = sinh_ratio(u * (4.0 * l * eta - 2.0 * eta), 4.0 * u * l * eta);
        -(a + b / (n * ch)) * (2.0 * PI * n * x).sin() - 2.0 / n * b * (PI * n * x).sin()
    })?;
    let specific = if variant.is_second_kind() {
        PI + PI * x
            + series_sum(|n| {
                let u = PI * n * t;
                2.0 / n * sinh_ratio(2.0 * u * eta, u * g) * (PI * n * (x - eps)).sin()
            })?
    } else {
        series_sum(|n| {
            let u = PI * n * t;
            -2.0 / n * sinh_ratio(u * (g - 2.0 * eta), u * g) * (PI * n * (x - eps)).sin()
        })?
    };
    Ok(common + specific)
}

/// `S` from the series, `±e^{−i·series}`, with the sign fixed so that `S(0)`
/// is the permutation-matrix eigenvalue (`−1` on I₀, `+1` otherwise).
pub fn s_matrix_eigenvalue(p: &ModelParams, variant: Variant, x: f64) -> Result<Complex64> {
    let target = if variant == Variant::I0 { -1.0 } else { 1.0 };
    let at_zero = Complex64::new(0.0, -s_log_series(p, variant, 0.0)?).exp();
    let sign = (target / at_zero).re.signum();
    Ok(sign * Complex64::new(0.0, -s_log_series(p, variant, x)?).exp())
}

/// `max |S_series − S_closed|` over a grid and all four variants.
pub fn series_vs_closed(p: &ModelParams, grid: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &x in grid {
        for v in Variant::ALL {
            worst = worst.max((s_matrix_eigenvalue(p, v, x)? - s_matrix_closed(p, v, x)?).norm());
        }
    }
    Ok(worst)
}

/// Eigenvalues of `R(λ′; η′, i/t′)` on the Bell vectors, with
/// `t′ = t(1−4ℓη)`, `η′ = η/(1−4ℓη)` and `λ′ = x/(it′)`; ordered as
/// singlet, `|01⟩+|10⟩`, `|00⟩−|11⟩`, `|00⟩+|11⟩`.
pub fn r_spectrum_modified(p: &ModelParams, x: f64) -> [Complex64; 4] {
    let g = 1.0 - 4.0 * p.ell() * p.eta();
    let tp = p.t * g;
    let ep = p.eta() / g;
    let lam = Complex64::new(0.0, -x / tp);
    bell_eigenvalues(&r_matrix(lam, ep, Complex64::new(0.0, 1.0 / tp)))
}

/// Per-point result of comparing the S spectrum with the R spectrum.
#[derive(Debug, Clone)]
pub struct SvsR {
    pub x: f64,
    /// `S_v/R_v` in the order I₀, I₁, II₀, II₁.
    pub ratios: [Complex64; 4],
    /// `max_v |ratio_v/mean − 1|`.
    pub spread: f64,
}

/// The four ratios `S_variant(x)/R_bell(x)`; I₀ pairs with the singlet,
/// I₁ with `|01⟩+|10⟩`, II₀ with `|00⟩−|11⟩`, II₁ with `|00⟩+|11⟩`.
pub fn s_vs_r_check(p: &ModelParams, x_grid: &[f64]) -> Result<Vec<SvsR>> {
    x_grid
        .iter()
        .map(|&x| {
            let r = r_spectrum_modified(p, x);
            let mut ratios = [Complex64::new(0.0, 0.0); 4];
            for (i, v) in Variant::ALL.into_iter().enumerate() {
                ratios[i] = s_matrix_closed(p, v, x)? / r[i];
            }
            let mean = ratios.iter().sum::<Complex64>() / 4.0;
            let spread = ratios.iter().map(|z| (z / mean - 1.0).norm()).fold(0.0, f64::max);
            Ok(SvsR { x, ratios, spread })
        })
        .collect()
}

/// Largest spread over the grid.
pub fn s_vs_r_spread(p: &ModelParams, x_grid: &[f64]) -> Result<f64> {
    Ok(s_vs_r_check(p, x_grid)?.iter().map(|r| r.spread).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(tl: u32) -> ModelParams {
        ModelParams::defaults(tl).unwrap()
    }

    fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn big_s_three_ways() {
        for tl in [1, 2] {
            let p = params(tl);
            let g = 1.0 - 4.0 * p.ell() * p.eta();
            for &x in &[0.2, -0.35, 0.7] {
                for mu in [g, 4.0 * p.ell() * p.eta(), 0.3] {
                    let a = big_s_series(&p, x, mu).unwrap();
                    let b = big_s_double_product(&p, x, mu).unwrap();
                    let c = big_s_q_gamma(&p, x, mu).unwrap();
                    assert!((a - b).norm() < 1e-12, "x={x} μ={mu}: {a} {b}");
                    assert!((a - c).norm() < 1e-10, "x={x} μ={mu}: {a} {c}");
                    assert!((a.norm() - 1.0).abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn permutation_at_origin() {
        for tl in [1, 2] {
            let p = params(tl);
            for v in Variant::ALL {
                let want = if v == Variant::I0 { -1.0 } else { 1.0 };
                let got = s_matrix_closed(&p, v, 0.0).unwrap();
                assert!((got - want).norm() < 1e-13, "{v}: {got}");
            }
            let (u, w) = shifted_args(0.0, p.t, p.eta());
            let m = Complex64::new(0.0, p.t * (1.0 - 4.0 * p.ell() * p.eta()));
            let q = th(ThetaChar::T11, w, m) / th(ThetaChar::T11, u, m);
            assert!((q + 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn series_agrees_with_theta_quotients() {
        for tl in [1, 2] {
            let p = params(tl);
            let d = series_vs_closed(&p, &grid(-0.9, 0.9, 11)).unwrap();
            assert!(d < 1e-12, "2ℓ={tl}: {d}");
        }
    }

    #[test]
    fn eigenvalues_are_unimodular() {
        let p = params(2);
        for &x in &grid(-0.8, 0.8, 7) {
            for v in Variant::ALL {
                assert!((s_matrix_closed(&p, v, x).unwrap().norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn s_is_proportional_to_r() {
        for tl in [1, 2] {
            let p = params(tl);
            let s = s_vs_r_spread(&p, &grid(-0.4, 0.4, 9)).unwrap();
            assert!(s < 1e-12, "2ℓ={tl}: {s}");
        }
    }

    #[test]
    fn swapped_assignment_is_not_proportional() {
        let p = params(1);
        let x = 0.3;
        let r = r_spectrum_modified(&p, x);
        let a = s_matrix_closed(&p, Variant::II0, x).unwrap() / r[2];
        let b = s_matrix_closed(&p, Variant::II1, x).unwrap() / r[2];
        assert!((a / b - 1.0).norm() > 1e-3);
    }

    #[test]
    fn outside_domain() {
        let p = params(1);
        assert!(matches!(s_log_series(&p, Variant::I0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(s_matrix_closed(&p, Variant::I0, -1.2), Err(Error::Domain(_))));
    }
}
