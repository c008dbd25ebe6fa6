//! Jacobi theta functions and the special functions built from them.
//!
//! Conventions: `θ_ab(z;τ) = Σ_n exp(πi(n+a/2)²τ + 2πi(n+a/2)(z+b/2))`.
//! The logarithmic quotients `Φ` and `Ψ` are taken at modulus `it`, i.e. the
//! argument `μ` stands for the imaginary shift `iμt`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Characteristic `(a, b)` of a theta function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThetaChar {
    a: u8,
    b: u8,
}

impl ThetaChar {
    pub const T00: ThetaChar = ThetaChar { a: 0, b: 0 };
    pub const T01: ThetaChar = ThetaChar { a: 0, b: 1 };
    pub const T10: ThetaChar = ThetaChar { a: 1, b: 0 };
    pub const T11: ThetaChar = ThetaChar { a: 1, b: 1 };
    pub const ALL: [ThetaChar; 4] = [Self::T00, Self::T01, Self::T10, Self::T11];

    pub fn new(a: u8, b: u8) -> Result<Self> {
        if a > 1 || b > 1 {
            return Err(Error::Domain(format!("theta characteristic ({a},{b})")));
        }
        Ok(ThetaChar { a, b })
    }

    pub fn a(self) -> u8 {
        self.a
    }

    pub fn b(self) -> u8 {
        self.b
    }

    /// The characteristic with `a` and `b` exchanged.
    pub fn swapped(self) -> Self {
        ThetaChar { a: self.b, b: self.a }
    }
}

/// Pure imaginary modulus `τ = i/t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusParam {
    t: f64,
}

impl ModulusParam {
    pub fn new(t: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!("t must be positive, got {t}")));
        }
        Ok(ModulusParam { t })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn tau(&self) -> Complex64 {
        Complex64::new(0.0, 1.0 / self.t)
    }

    /// The transformed modulus `−1/τ = it`.
    pub fn dual_tau(&self) -> Complex64 {
        Complex64::new(0.0, self.t)
    }
}

/// Truncation control for series and products.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl { abs_tol: 1e-14, max_terms: 400 }
    }
}

impl SeriesControl {
    pub fn new(abs_tol: f64, max_terms: usize) -> Result<Self> {
        if !(abs_tol >= 10.0 * f64::EPSILON) {
            return Err(Error::Domain(format!("abs_tol {abs_tol} below 10 eps")));
        }
        if max_terms < 8 {
            return Err(Error::Domain(format!("max_terms {max_terms} < 8")));
        }
        Ok(SeriesControl { abs_tol, max_terms })
    }
}

/// Theta function with characteristic `ch`.
///
/// `z` is first reduced into the fundamental parallelogram with the
/// quasi-periodicity laws. For `Im τ < 0.5` the value is obtained through the
/// Jacobi imaginary transformation so the nome stays small.
pub fn theta(ch: ThetaChar, z: Complex64, tau: Complex64, ctrl: &SeriesControl) -> Result<Complex64> {
    if !(tau.im > 0.0) {
        return Err(Error::Domain(format!("Im tau must be positive, got {tau}")));
    }
    let a = ch.a as f64;
    let b = ch.b as f64;

    let m = (z.im / tau.im).round();
    let z0 = z - tau * m;
    let shift = (-I * PI * (tau * m * m + z0 * (2.0 * m) + b * m)).exp();
    let k = z0.re.round();
    let z1 = z0 - k;
    let sign = if ch.a == 1 && (k as i64).rem_euclid(2) == 1 { -1.0 } else { 1.0 };
    let reduced = shift * sign;

    if tau.im < 0.5 {
        let tau_d = -1.0 / tau;
        if tau_d.im > tau.im {
            let pref = (-I * tau).powf(-0.5) * (-I * PI * z1 * z1 / tau).exp();
            let inner = theta_sum(ch.swapped(), z1 / tau, tau_d, ctrl)?;
            let c = if ch == ThetaChar::T11 { I } else { Complex64::new(1.0, 0.0) };
            return Ok(reduced * pref * c * inner);
        }
    }
    Ok(reduced * theta_sum_at(a, b, z1, tau, ctrl)?)
}

/// Theta function with the default series control.
///
/// # Panics
/// Panics if `Im τ ≤ 0`. After argument reduction the series always converges
/// within the default term budget.
pub fn th(ch: ThetaChar, z: Complex64, tau: Complex64) -> Complex64 {
    theta(ch, z, tau, &SeriesControl::default()).expect("theta series")
}

/// Derivative of `θ_ch(z;τ)` in `z` by a four-point analytic stencil.
pub fn th_prime(ch: ThetaChar, z: Complex64, tau: Complex64) -> Complex64 {
    analytic_derivative(|w| th(ch, w, tau), z, 1e-3)
}

/// Derivative of an analytic function using the stencil
/// `[f(z+h) − f(z−h) − i(f(z+ih) − f(z−ih))]/4h`, exact to O(h⁴).
pub fn analytic_derivative<F: Fn(Complex64) -> Complex64>(f: F, z: Complex64, h: f64) -> Complex64 {
    let hr = Complex64::new(h, 0.0);
    let hi = Complex64::new(0.0, h);
    (f(z + hr) - f(z - hr) - I * (f(z + hi) - f(z - hi))) / (4.0 * h)
}

fn theta_sum(ch: ThetaChar, z: Complex64, tau: Complex64, ctrl: &SeriesControl) -> Result<Complex64> {
    theta_sum_at(ch.a as f64, ch.b as f64, z, tau, ctrl)
}

fn theta_sum_at(a: f64, b: f64, z: Complex64, tau: Complex64, ctrl: &SeriesControl) -> Result<Complex64> {
    let term = |n: f64| {
        let m = n + a / 2.0;
        (I * PI * (tau * m * m + 2.0 * m * (z + b / 2.0))).exp()
    };
    let mut sum = term(0.0);
    let mut biggest = sum.norm();
    for j in 1..=ctrl.max_terms {
        let jf = j as f64;
        let up = term(jf);
        let down = term(-jf);
        sum += up + down;
        let mag = up.norm().max(down.norm());
        biggest = biggest.max(mag);
        if j >= 2 && mag <= ctrl.abs_tol * biggest.max(f64::MIN_POSITIVE) {
            return Ok(sum);
        }
    }
    Err(Error::SeriesFailure { partial: sum, terms: ctrl.max_terms })
}

/// Stable `sinh(a)/sinh(b)` for `b > 0`, valid for large arguments.
pub fn sinh_ratio(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let s = a.signum();
    let aa = a.abs();
    s * (aa - b).exp() * (-(-2.0 * aa).exp_m1()) / (-(-2.0 * b).exp_m1())
}

/// Number of Fourier terms needed for coefficients decaying like `e^{−rate·n}`.
pub(crate) fn terms_for_rate(rate: f64, ctrl: &SeriesControl) -> usize {
    if rate <= 0.0 {
        return ctrl.max_terms;
    }
    let n = ((1.0 / (ctrl.abs_tol * 1e-3)).ln() / rate).ceil() as usize + 2;
    n.clamp(8, ctrl.max_terms.max(8))
}

fn check_mu(mu: f64, hi: f64) -> Result<()> {
    if !(mu > 0.0 && mu < hi) {
        return Err(Error::Domain(format!("mu = {mu} outside (0, {hi})")));
    }
    Ok(())
}

/// Unwrapped `arg` of `f(x)/f(0)` along the segment `[0, x]`, plus `base`.
fn unwrapped_phase<F: Fn(f64) -> Complex64>(f: F, x: f64, base: f64, steps_per_unit: f64) -> f64 {
    let steps = ((x.abs() * steps_per_unit).ceil() as usize).max(1);
    let mut prev = f(0.0);
    let mut acc = base;
    for s in 1..=steps {
        let cur = f(x * s as f64 / steps as f64);
        acc += (cur / prev).arg();
        prev = cur;
    }
    acc
}

/// `Φ(x;iμt) = (1/i) log[θ₁₁(x+iμt;it)/θ₁₁(x−iμt;it)] + π`, on the branch
/// with `Φ(0) = 0`, continued along the real axis.
///
/// Accepts `0 < μ < 1`; the Fourier form [`phi_fourier`] holds on the same range.
pub fn phi(x: f64, mu: f64, t: f64) -> Result<f64> {
    check_mu(mu, 1.0)?;
    ModulusParam::new(t)?;
    let tau = Complex64::new(0.0, t);
    let shift = Complex64::new(0.0, mu * t);
    let ratio = |y: f64| {
        let y = Complex64::new(y, 0.0);
        th(ThetaChar::T11, y + shift, tau) / th(ThetaChar::T11, y - shift, tau)
    };
    let steps = 400.0 + 40.0 / mu.min(1.0 - mu);
    Ok(unwrapped_phase(ratio, x, -PI, steps) + PI)
}

/// Fourier series of `Φ`.
pub fn phi_fourier(x: f64, mu: f64, t: f64, ctrl: &SeriesControl) -> Result<f64> {
    check_mu(mu, 1.0)?;
    let n_terms = terms_for_rate(2.0 * PI * t * mu.min(1.0 - mu), ctrl);
    let mut s = -2.0 * PI * x;
    for n in 1..=n_terms {
        let nf = n as f64;
        s -= 2.0 * sinh_ratio(PI * nf * (1.0 - 2.0 * mu) * t, PI * nf * t) / nf * (2.0 * PI * nf * x).sin();
    }
    Ok(s)
}

/// `dΦ/dx` from its Fourier series. Negative everywhere.
pub fn phi_prime(x: f64, mu: f64, t: f64) -> Result<f64> {
    check_mu(mu, 1.0)?;
    let ctrl = SeriesControl::default();
    let n_terms = terms_for_rate(2.0 * PI * t * mu.min(1.0 - mu), &ctrl);
    let mut s = 1.0;
    for n in 1..=n_terms {
        let nf = n as f64;
        s += 2.0 * sinh_ratio(PI * nf * (1.0 - 2.0 * mu) * t, PI * nf * t) * (2.0 * PI * nf * x).cos();
    }
    Ok(-2.0 * PI * s)
}

/// `Ψ(x;iμt) = (1/i) log[θ₀₁(x+iμt;it)/θ₀₁(x−iμt;it)]` with `Ψ(0) = 0`.
pub fn psi(x: f64, mu: f64, t: f64) -> Result<f64> {
    check_mu(mu, 0.5)?;
    ModulusParam::new(t)?;
    let tau = Complex64::new(0.0, t);
    let shift = Complex64::new(0.0, mu * t);
    let ratio = |y: f64| {
        let y = Complex64::new(y, 0.0);
        th(ThetaChar::T01, y + shift, tau) / th(ThetaChar::T01, y - shift, tau)
    };
    let steps = 400.0 + 40.0 / (0.5 - mu);
    Ok(unwrapped_phase(ratio, x, 0.0, steps))
}

/// Fourier series of `Ψ`.
pub fn psi_fourier(x: f64, mu: f64, t: f64, ctrl: &SeriesControl) -> Result<f64> {
    check_mu(mu, 0.5)?;
    let n_terms = terms_for_rate(PI * t * (1.0 - 2.0 * mu), ctrl);
    let mut s = 0.0;
    for n in 1..=n_terms {
        let nf = n as f64;
        s += 2.0 * sinh_ratio(2.0 * PI * nf * mu * t, PI * nf * t) / nf * (2.0 * PI * nf * x).sin();
    }
    Ok(s)
}

/// `dΨ/dx` from its Fourier series.
pub fn psi_prime(x: f64, mu: f64, t: f64) -> Result<f64> {
    check_mu(mu, 0.5)?;
    let ctrl = SeriesControl::default();
    let n_terms = terms_for_rate(PI * t * (1.0 - 2.0 * mu), &ctrl);
    let mut s = 0.0;
    for n in 1..=n_terms {
        let nf = n as f64;
        s += sinh_ratio(2.0 * PI * nf * mu * t, PI * nf * t) * (2.0 * PI * nf * x).cos();
    }
    Ok(4.0 * PI * s)
}

/// `Σ_{n∈ℤ} sinh(πna)/sinh(πnb) e^{2πinx}` with the `n = 0` term `a/b`.
pub fn positivity_kernel(a: f64, b: f64, x: f64, ctrl: &SeriesControl) -> Result<f64> {
    if !(a > 0.0 && a < b) {
        return Err(Error::Domain(format!("need 0 < a < b, got a={a}, b={b}")));
    }
    let rate = PI * (b - a);
    let needed = ((1.0 / ctrl.abs_tol).ln() / rate).ceil() as usize + 2;
    if needed > 100 * ctrl.max_terms {
        return Err(Error::SeriesFailure { partial: Complex64::new(f64::NAN, 0.0), terms: needed });
    }
    let mut s = a / b;
    for n in 1..=needed {
        let nf = n as f64;
        s += 2.0 * sinh_ratio(PI * nf * a, PI * nf * b) * (2.0 * PI * nf * x).cos();
    }
    Ok(s)
}

/// The same kernel summed through the Poisson-resummed closed form.
pub fn positivity_kernel_poisson(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > 0.0 && a < b) {
        return Err(Error::Domain(format!("need 0 < a < b, got a={a}, b={b}")));
    }
    let (s, c) = (a * PI / b).sin_cos();
    let fhat = |xi: f64| {
        let e = (-2.0 * PI * (x - xi).abs() / b).exp();
        2.0 * s / b * e / ((e + c).powi(2) + s * s)
    };
    let center = x.round();
    let reach = (40.0 * b).ceil() as i64 + 2;
    let mut total = 0.0;
    for k in -reach..=reach {
        total += fhat(center + k as f64);
    }
    Ok(total)
}

/// `(x;q)_∞ = Π_{n≥0}(1 − x qⁿ)`.
pub fn q_pochhammer(x: Complex64, q: f64) -> Complex64 {
    let mut p = Complex64::new(1.0, 0.0);
    let mut qn = 1.0;
    for _ in 0..100_000 {
        let term = x * qn;
        p *= 1.0 - term;
        if term.norm() < 1e-18 {
            break;
        }
        qn *= q;
    }
    p
}

/// `Γ_q(x) = (q;q)_∞/(q^x;q)_∞ · (1−q)^{1−x}`.
pub fn q_gamma(x: Complex64, q: f64) -> Result<Complex64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!("q = {q} outside (0, 1)")));
    }
    let qx = (x * q.ln()).exp();
    let num = q_pochhammer(Complex64::new(q, 0.0), q);
    let den = q_pochhammer(qx, q);
    Ok(num / den * ((1.0 - x) * (1.0 - q).ln()).exp())
}

/// `(x;q₁,q₂)_∞ = Π_{n₁,n₂≥0}(1 − x q₁^{n₁} q₂^{n₂})`.
pub fn double_product(x: Complex64, q1: f64, q2: f64) -> Result<Complex64> {
    if !(q1.abs() < 1.0 && q2.abs() < 1.0) {
        return Err(Error::Domain(format!("|q1|, |q2| must be < 1, got {q1}, {q2}")));
    }
    let mut p = Complex64::new(1.0, 0.0);
    let mut q1n = 1.0;
    while (x * q1n).norm() >= 1e-18 {
        p *= q_pochhammer(x * q1n, q2);
        q1n *= q1;
        if q1n == 0.0 {
            break;
        }
    }
    Ok(p)
}

/// Relative residual of the identity
/// `(q^x;q^a,q)(q^y;q^a,q)/((q^z;q^a,q)(q^w;q^a,q)) = Π_{n≥0} Γ_q(z+an)Γ_q(w+an)/(Γ_q(x+an)Γ_q(y+an))`
/// for `x + y = z + w`.
pub fn q_gamma_identity_residual(x: f64, y: f64, z: f64, w: f64, a: f64, q: f64) -> Result<f64> {
    if ((x + y) - (z + w)).abs() > 1e-12 {
        return Err(Error::Precondition(format!("x+y = {} differs from z+w = {}", x + y, z + w)));
    }
    if !(a > 0.0) {
        return Err(Error::Domain(format!("a = {a} must be positive")));
    }
    let qa = q.powf(a);
    let qp = |e: f64| Complex64::new(q.powf(e), 0.0);
    let lhs = double_product(qp(x), qa, q)? * double_product(qp(y), qa, q)?
        / (double_product(qp(z), qa, q)? * double_product(qp(w), qa, q)?);
    let mut rhs = Complex64::new(1.0, 0.0);
    let c = |v: f64| Complex64::new(v, 0.0);
    let mut n = 0usize;
    loop {
        let s = a * n as f64;
        let f = q_gamma(c(z + s), q)? * q_gamma(c(w + s), q)? / (q_gamma(c(x + s), q)? * q_gamma(c(y + s), q)?);
        rhs *= f;
        if (f - 1.0).norm() < 1e-17 || n > 10_000 {
            break;
        }
        n += 1;
    }
    Ok((lhs - rhs).norm() / lhs.norm())
}
