//! Two-hole excited states I₀, I₁, II₀, II₁ and the polarization of the sea.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::elliptic::sinh_ratio;
use crate::error::{Error, Result};
use crate::params::ModelParams;

use super::{omega_minus_density, omega_plus_density, omega_zero_density, quadrature_nodes, FourierDensity, Kernel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    I0,
    I1,
    II0,
    II1,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::I0, Variant::I1, Variant::II0, Variant::II1];

    /// True for the states with a negative-parity 1-string.
    pub fn is_second_kind(self) -> bool {
        matches!(self, Variant::II0 | Variant::II1)
    }

    /// `0` for I₀, II₀ and `1` for I₁, II₁.
    pub fn epsilon(self) -> u8 {
        match self {
            Variant::I0 | Variant::II0 => 0,
            Variant::I1 | Variant::II1 => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Variant::I0 => "I0",
            Variant::I1 => "I1",
            Variant::II0 => "II0",
            Variant::II1 => "II1",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.label().eq_ignore_ascii_case(s))
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExcitedState {
    pub variant: Variant,
    pub x1: f64,
    pub x2: f64,
    /// Center of the `(2ℓ−1)`-string.
    pub x_minus: f64,
    /// `x₊` for I, `x₀` for II, on the branch that satisfies the constraints.
    pub x_extra: f64,
    /// The same center reduced to the representative listed in the table
    /// of excited states, `(x₁+x₂)/2` or `(x₁+x₂+1)/2`.
    pub x_extra_table: f64,
    /// Root of the uniqueness equation found by bisection.
    pub x_extra_solved: f64,
    pub nu: i64,
    /// Sum of all real parts of the roots, `Σ_I` or `Σ_II`.
    pub sigma: f64,
    /// `|∫ (ω + 2η/(1−4ℓη)) + ν·2η/(1−4ℓη)|` at `x_extra`.
    pub uniqueness_residual: f64,
    /// Residual of `x_extra − (x₁+x₂)/2 = (1−4ℓη)Σ − 2ℓνη`.
    pub sum_rule_residual: f64,
    /// Residual of the remaining sum rule for the `x_extra`-string.
    pub string_rule_residual: f64,
    /// `|x₋ − (x₁+x₂)/2|` with `x₋` found by bisection; zero for `ℓ = 1/2`.
    pub minus_residual: f64,
}

/// `ω₊ + 2η/(1−4ℓη)` for I, `ω₀ + 2η/(1−4ℓη)` for II, as a density.
pub fn uniqueness_integrand(p: &ModelParams, variant: Variant) -> FourierDensity {
    let c = shift_constant(p);
    let mut d = if variant.is_second_kind() { omega_zero_density(p) } else { omega_plus_density(p) };
    d.constant += c;
    d
}

fn shift_constant(p: &ModelParams) -> f64 {
    2.0 * p.eta() / (1.0 - 4.0 * p.ell() * p.eta())
}

fn fixed_sign(f: &FourierDensity) -> Option<f64> {
    let vals: Vec<f64> = (0..=200).map(|k| f.eval(-0.5 + k as f64 / 200.0)).collect();
    if vals.iter().all(|&v| v > 0.0) {
        Some(1.0)
    } else if vals.iter().all(|&v| v < 0.0) {
        Some(-1.0)
    } else {
        None
    }
}

/// Root of a monotone function by bracket expansion and bisection.
fn bisect<F: Fn(f64) -> f64>(f: F, center: f64) -> Result<f64> {
    let mut half = 0.5;
    let (mut lo, mut hi) = (center - half, center + half);
    while f(lo).signum() == f(hi).signum() {
        half *= 2.0;
        if half > 1e6 {
            return Err(Error::Consistency("no sign change while bracketing a monotone constraint".into()));
        }
        lo = center - half;
        hi = center + half;
    }
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Inverse of `a` modulo `m`, in `0..m`.
fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut r0, mut r1) = (m, a.rem_euclid(m));
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m))
}

/// Determines `x₋`, `x₊` or `x₀`, `ν` and `Σ` for a variant from the hole
/// positions, and checks the constraints numerically.
pub fn solve_excited_state(p: &ModelParams, variant: Variant, x1: f64, x2: f64) -> Result<ExcitedState> {
    p.validate_lattice()?;
    for x in [x1, x2] {
        if !(x > -0.5 && x < 0.5) {
            return Err(Error::Domain(format!("hole position {x} outside (−1/2, 1/2)")));
        }
    }
    let (eta, l) = (p.eta(), p.ell());
    let s = 0.5 * (x1 + x2);
    let c = shift_constant(p);

    // x₋ from ∫_{−x₋+x₂}^{x₋−x₁} ω₋ = 0.
    let om = omega_minus_density(p);
    let (x_minus, minus_residual) = if p.two_ell > 1 {
        if fixed_sign(&om) != Some(-1.0) {
            return Err(Error::Consistency("ω₋ is not negative on the interval".into()));
        }
        let xm = bisect(|y| om.integral(-y + x2, y - x1), s)?;
        (s, (xm - s).abs())
    } else {
        (s, 0.0)
    };

    let g = uniqueness_integrand(p, variant);
    if fixed_sign(&g).is_none() {
        return Err(Error::Consistency(format!(
            "uniqueness integrand for {variant} changes sign; the constraint has no unique solution"
        )));
    }
    let (nu, sigma, x_extra, x_extra_table) = match variant {
        Variant::I0 => (0, 0.0, s, s),
        Variant::I1 => {
            let (r, rp) = (p.r as i64, p.r_prime as i64);
            let k = mod_inverse(rp, r)
                .ok_or_else(|| Error::Params(format!("r′ = {rp} is not invertible modulo r = {r}")))?;
            let nu = k * (r / 2 - (p.two_ell as i64 + 1) * rp);
            let kr = (k * rp) as f64;
            (nu, (2.0 * l + 1.0) * kr / 2.0, s + kr / 2.0, s + 0.5)
        }
        Variant::II0 => (0, 0.0, s, s),
        Variant::II1 => (1, -0.5, s - 0.5, s + 0.5),
    };
    let nuf = nu as f64;
    let constraint = |y: f64| g.integral(-y + x2, y - x1) + nuf * c;
    let x_extra_solved = bisect(constraint, x_extra)?;
    let uniqueness_residual = constraint(x_extra).abs();
    let sum_rule_residual = ((x_extra - s) - ((1.0 - 4.0 * l * eta) * sigma - 2.0 * l * nuf * eta)).abs();
    let string_rule_residual = if variant.is_second_kind() {
        let o0 = omega_zero_density(p);
        (o0.integral(-x_extra + x2, x_extra - x1) + 2.0 * eta * (2.0 * sigma + nuf)).abs()
    } else {
        let op = omega_plus_density(p);
        let lhs = 0.5 * op.integral(-x_extra + x2, x_extra - x1) + x_extra - s;
        let rhs = (1.0 - 2.0 * (2.0 * l + 1.0) * eta) * sigma - (2.0 * l + 1.0) * nuf * eta;
        (lhs - rhs).abs()
    };
    Ok(ExcitedState {
        variant,
        x1,
        x2,
        x_minus,
        x_extra,
        x_extra_table,
        x_extra_solved,
        nu,
        sigma,
        uniqueness_residual,
        sum_rule_residual,
        string_rule_residual,
        minus_residual,
    })
}

/// `J(x) = J₀ + a·x + Σ_{n≠0} J_n e^{2πinx}` with `J_{−n} = conj(J_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polarization {
    pub constant: f64,
    pub linear: f64,
    /// `J_n` for `n = 1, 2, …`.
    pub coefficients: Vec<Complex64>,
    pub truncation: usize,
    pub tail_bound: f64,
}

impl Polarization {
    pub fn eval(&self, x: f64) -> f64 {
        let mut s = self.constant + self.linear * x;
        for (k, j) in self.coefficients.iter().enumerate() {
            let ph = 2.0 * PI * (k + 1) as f64 * x;
            s += 2.0 * (j * Complex64::new(ph.cos(), ph.sin())).re;
        }
        s
    }

    /// `∫_{−1/2}^{1/2} J` on `nq` midpoint nodes.
    pub fn integral_quadrature(&self, nq: usize) -> f64 {
        quadrature_nodes(nq).iter().map(|&x| self.eval(x)).sum::<f64>() / nq as f64
    }
}

fn cis(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

/// Closed-form polarization coefficients for a solved state.
pub fn polarization(p: &ModelParams, state: &ExcitedState) -> Result<Polarization> {
    let (eta, l, t) = (p.eta(), p.ell(), p.t);
    let (x1, x2, xm, xe) = (state.x1, state.x2, state.x_minus, state.x_extra);
    let nuf = state.nu as f64;
    let second = state.variant.is_second_kind();
    let (constant, linear) = if second {
        let j0 = eta * (nuf + 2.0 * state.sigma) - 0.5 - (2.0 * l - 1.0) / (2.0 * l) * xm
            + (4.0 * l - 1.0) / (4.0 * l) * (x1 + x2);
        (j0, -1.0 / (4.0 * l))
    } else {
        let j0 = eta * (nuf + 2.0 * state.sigma) - (2.0 * l - 1.0) / (2.0 * l) * xm - xe
            + (4.0 * l - 1.0) / (4.0 * l) * (x1 + x2);
        (j0, 0.0)
    };
    let coeff = |n: usize| -> Complex64 {
        let nf = n as f64;
        let u = PI * nf * t;
        let ch = (2.0 * u * eta).cosh();
        let tpin = Complex64::new(0.0, 2.0 * PI * nf);
        let a_minus = sinh_ratio(2.0 * u * (2.0 * l - 1.0) * eta, 4.0 * u * l * eta) / tpin;
        let a_plus = sinh_ratio(u * (1.0 - 2.0 * (2.0 * l + 1.0) * eta), u * (1.0 - 4.0 * l * eta)) / tpin;
        let e = |x: f64| cis(-2.0 * PI * nf * x);
        if second {
            let holes = (e(x1) + e(x2) - e(0.5)) / (2.0 * ch);
            let a_zero = sinh_ratio(2.0 * u * eta, u * (1.0 - 4.0 * l * eta)) / tpin;
            a_minus * (e(xm) - holes) - a_plus * holes - a_zero * e(xe)
        } else {
            let holes = (e(x1) + e(x2)) / (2.0 * ch);
            a_minus * (e(xm) - holes) + a_plus * (e(xe) - holes)
        }
    };
    let mut coefficients = Vec::new();
    let mut small = 0;
    for n in 1..=100_000 {
        let j = coeff(n);
        coefficients.push(j);
        small = if j.norm() < 1e-17 { small + 1 } else { 0 };
        if small == 2 {
            break;
        }
    }
    let truncation = coefficients.len();
    let tail_bound = (truncation + 1..=truncation + 64).map(|n| 2.0 * coeff(n).norm()).sum();
    Ok(Polarization { constant, linear, coefficients, truncation, tail_bound })
}

/// `J_n` obtained by dividing the Fourier coefficients of the right-hand side
/// of the polarization integral equation by `K̂_n − 2π`. Hole, sea-edge and
/// `(2ℓ±1)`-string terms enter through `Φ`, the 1-string of parity `−`
/// through `Ψ`.
pub fn polarization_fourier_solution(p: &ModelParams, state: &ExcitedState, n: u32) -> Complex64 {
    assert!(n > 0);
    let (eta, l, t) = (p.eta(), p.ell(), p.t);
    let nf = n as f64;
    let u = PI * nf * t;
    let kernel = Kernel::new(p);
    let sin_coeff = |a: f64| cis(-2.0 * PI * nf * a) / Complex64::new(0.0, 2.0);
    let phi_n = |mu: f64, a: f64| -(2.0 / nf) * sinh_ratio(u * (1.0 - 2.0 * mu), u) * sin_coeff(a);
    let psi_n = |mu: f64, a: f64| (2.0 / nf) * sinh_ratio(2.0 * u * mu, u) * sin_coeff(a);
    let tl = p.two_ell;
    let kernel_phi = |a: f64| -> Complex64 {
        (1..tl).map(|m| phi_n(2.0 * m as f64 * eta, a)).sum::<Complex64>()
            + (0..tl).map(|m| phi_n(2.0 * (m + 1) as f64 * eta, a)).sum::<Complex64>()
    };
    let paired = |count: u32, a: f64| -> Complex64 {
        (0..count)
            .map(|j| {
                let m = j as f64 + 0.5;
                phi_n(2.0 * m * eta, a) + phi_n(2.0 * (m + 1.0) * eta, a)
            })
            .sum()
    };
    let mut rhs = paired(tl - 1, state.x_minus) - kernel_phi(state.x1) - kernel_phi(state.x2);
    if state.variant.is_second_kind() {
        rhs += psi_n((2.0 * l + 1.0) * eta, state.x_extra) + kernel_phi(0.5);
        if tl > 1 {
            rhs += psi_n((2.0 * l - 1.0) * eta, state.x_extra);
        }
    } else {
        rhs += paired(tl, state.x_extra);
    }
    rhs / (kernel.fourier(n) - 2.0 * PI)
}

#[derive(Debug, Clone, Copy)]
pub struct SumIdentity {
    /// `2ℓ ∫ J` by quadrature.
    pub lhs: f64,
    /// Root-count expression for the same integral.
    pub rhs: f64,
}

impl SumIdentity {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

/// `2ℓ∫J` against its value from counting the shifted roots.
pub fn polarization_sum_identity(p: &ModelParams, state: &ExcitedState, nq: usize) -> Result<SumIdentity> {
    let l = p.ell();
    let j = polarization(p, state)?;
    let lhs = 2.0 * l * j.integral_quadrature(nq);
    let holes = 2.0 * l * (state.x1 + state.x2);
    let rhs = if state.variant.is_second_kind() {
        state.sigma - (2.0 * l - 1.0) * state.x_minus - state.x_extra - l + holes
    } else {
        state.sigma - (2.0 * l + 1.0) * state.x_extra - (2.0 * l - 1.0) * state.x_minus + holes
    };
    Ok(SumIdentity { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(tl: u32) -> ModelParams {
        ModelParams::defaults(tl).unwrap()
    }

    #[test]
    fn table_of_variants() {
        for tl in [1, 2] {
            let p = params(tl);
            let (x1, x2) = (0.1, -0.3);
            let s = -0.1;
            let i0 = solve_excited_state(&p, Variant::I0, x1, x2).unwrap();
            assert_eq!((i0.nu, i0.sigma), (0, 0.0));
            assert!((i0.x_extra_table - s).abs() < 1e-15);
            let i1 = solve_excited_state(&p, Variant::I1, x1, x2).unwrap();
            assert!((i1.x_extra_table - (x1 + x2 + 1.0) / 2.0).abs() < 1e-15);
            let ii0 = solve_excited_state(&p, Variant::II0, x1, x2).unwrap();
            assert_eq!(ii0.nu, 0);
            assert!((ii0.x_extra_table - s).abs() < 1e-15);
            let ii1 = solve_excited_state(&p, Variant::II1, x1, x2).unwrap();
            assert_eq!(ii1.nu, 1);
            assert!((ii1.x_extra_table - (s + 0.5)).abs() < 1e-15);
            for st in [i0, i1, ii0, ii1] {
                assert!((st.x_minus - s).abs() < 1e-15);
                assert!(st.minus_residual < 1e-12, "{st:?}");
                assert!(st.uniqueness_residual < 1e-12, "{st:?}");
                assert!((st.x_extra_solved - st.x_extra).abs() < 1e-10, "{st:?}");
                assert!(st.sum_rule_residual < 1e-14, "{st:?}");
                assert!(st.string_rule_residual < 1e-12, "{st:?}");
            }
        }
    }

    #[test]
    fn first_kind_with_unit_twist() {
        // r = 6, r′ = 1: k = 1 and ν = 3 − 2 = 1 for spin 1/2.
        let st = solve_excited_state(&params(1), Variant::I1, 0.2, 0.1).unwrap();
        assert_eq!(st.nu, 1);
        assert!((st.sigma - 1.0).abs() < 1e-15);
        // r = 14, r′ = 3, spin 1/2: k = 5, ν = 5(7 − 6) = 5, Σ = 2·15/2.
        let p = ModelParams::new(1, 2.0, 14, 3, 2).unwrap();
        let st = solve_excited_state(&p, Variant::I1, 0.2, 0.1).unwrap();
        assert_eq!(st.nu, 5);
        assert!((st.sigma - 15.0).abs() < 1e-12);
        assert!(st.uniqueness_residual < 1e-10);
        assert!((st.x_extra_table - 0.65).abs() < 1e-15);
    }

    #[test]
    fn symmetric_holes_give_centered_strings() {
        let st = solve_excited_state(&params(2), Variant::I0, 0.25, -0.25).unwrap();
        assert!(st.x_extra.abs() < 1e-15 && st.x_minus.abs() < 1e-15);
    }

    #[test]
    fn hole_outside_zone_is_rejected() {
        assert!(matches!(solve_excited_state(&params(1), Variant::I0, 0.6, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn uniqueness_integrand_has_fixed_sign() {
        for tl in [1, 2, 3] {
            let p = params(tl);
            for v in Variant::ALL {
                assert!(fixed_sign(&uniqueness_integrand(&p, v)).is_some());
            }
        }
    }

    #[test]
    fn polarization_coefficients_solve_their_equation() {
        for tl in [1, 2] {
            let p = params(tl);
            for v in Variant::ALL {
                let st = solve_excited_state(&p, v, 0.1, -0.3).unwrap();
                let j = polarization(&p, &st).unwrap();
                for n in 1..6u32 {
                    let oracle = polarization_fourier_solution(&p, &st, n);
                    let got = j.coefficients[n as usize - 1];
                    assert!((oracle - got).norm() < 1e-14, "{v} n={n}: {oracle} vs {got}");
                }
            }
        }
    }

    #[test]
    fn polarization_integral_matches_root_count() {
        for tl in [1, 2] {
            let p = params(tl);
            for v in Variant::ALL {
                let st = solve_excited_state(&p, v, 0.1, -0.3).unwrap();
                let id = polarization_sum_identity(&p, &st, 2048).unwrap();
                assert!(id.residual() < 1e-12, "{v}: {id:?}");
            }
        }
    }

    #[test]
    fn polarization_symmetric_in_holes() {
        let p = params(2);
        for v in Variant::ALL {
            let a = polarization(&p, &solve_excited_state(&p, v, 0.13, -0.21).unwrap()).unwrap();
            let b = polarization(&p, &solve_excited_state(&p, v, -0.21, 0.13).unwrap()).unwrap();
            assert!((a.constant - b.constant).abs() < 1e-15);
            for (x, y) in a.coefficients.iter().zip(&b.coefficients) {
                assert!((x - y).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(mod_inverse(1, 6), Some(1));
        assert_eq!(mod_inverse(3, 10), Some(7));
        assert_eq!(mod_inverse(2, 6), None);
    }
}
