//! Monodromy and transfer matrices, Bethe vectors, the Bethe equation solver
//! and the analytic checks built on the eigenvalue.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::elliptic::{th, th_prime, ThetaChar};
use crate::error::{Error, Result};
use crate::linalg::{c, eigenvalues, identity, kron, max_abs_vec, CMat, CVec};
use crate::params::ModelParams;
use crate::sklyanin::{kron_power, SpinRep};
use crate::sos::{twist_blocks, GaugeParams, HeightPair, SosGauge};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Default cap on the Hilbert space dimension `(2ℓ+1)^N`.
pub const DEFAULT_DIM_CAP: usize = 6561;

pub type Blocks = [[CMat; 2]; 2];

/// A row of `N` spin-ℓ sites with its gauge data.
#[derive(Debug, Clone)]
pub struct Chain {
    params: ModelParams,
    sos: SosGauge,
    dim: usize,
}

impl Chain {
    pub fn new(params: &ModelParams, gauge: GaugeParams, seed: u64) -> Result<Self> {
        Self::with_cap(params, gauge, seed, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(params: &ModelParams, gauge: GaugeParams, seed: u64, cap: usize) -> Result<Self> {
        params.validate_lattice()?;
        let dim = (params.local_dim() as u64).checked_pow(params.n_sites as u32).unwrap_or(u64::MAX);
        if dim > cap as u64 {
            return Err(Error::SizeCap { dim: dim.min(usize::MAX as u64) as usize, cap });
        }
        let rep = SpinRep::new(params, seed)?;
        let sos = SosGauge::new(rep, gauge, params.r)?;
        Ok(Chain { params: *params, sos, dim: dim as usize })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn sos(&self) -> &SosGauge {
        &self.sos
    }

    pub fn rep(&self) -> &SpinRep {
        self.sos.rep()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Lifts a single-site operator to site `n ∈ 1..=N`; site `N` is the most significant factor.
    pub fn site_operator(&self, op: &CMat, n: usize) -> CMat {
        let d = self.params.local_dim();
        let big = d.pow((self.params.n_sites - n) as u32);
        let small = d.pow((n - 1) as u32);
        kron(&kron(&identity(big), op), &identity(small))
    }

    /// Blocks `A, B, C, D` of `T(λ) = L_N(λ)⋯L_1(λ)`.
    pub fn monodromy(&self, lambda: Complex64) -> Blocks {
        let lb = self.rep().l_blocks(lambda);
        let n = self.dim;
        let mut t = [[identity(n), CMat::zeros(n, n)], [CMat::zeros(n, n), identity(n)]];
        for site in 1..=self.params.n_sites {
            let ln: Vec<Vec<CMat>> =
                (0..2).map(|a| (0..2).map(|b| self.site_operator(&lb[a][b], site)).collect()).collect();
            let next = |a: usize, b: usize| &ln[a][0] * &t[0][b] + &ln[a][1] * &t[1][b];
            t = [[next(0, 0), next(0, 1)], [next(1, 0), next(1, 1)]];
        }
        t
    }

    /// `M_k(λ)⁻¹ T(λ) M_{k′}(λ)` as blocks `A_{k,k′}, B_{k,k′}, C_{k,k′}, D_{k,k′}`.
    pub fn twisted_monodromy(&self, k: i64, kp: i64, lambda: Complex64) -> Result<Blocks> {
        self.twist(&self.monodromy(lambda), k, kp, lambda)
    }

    fn twist(&self, t: &Blocks, k: i64, kp: i64, lambda: Complex64) -> Result<Blocks> {
        let (mi, mp) = self.sos.twist_pair(k, kp, lambda)?;
        twist_blocks(t, &mi, &mp)
    }

    /// Transfer matrix `T(λ) = A(λ) + D(λ)`.
    pub fn transfer(&self, lambda: Complex64) -> CMat {
        let t = self.monodromy(lambda);
        &t[0][0] + &t[1][1]
    }

    /// Eigenvalues of the dense transfer matrix.
    pub fn transfer_eigenvalues(&self, lambda: Complex64) -> Vec<Complex64> {
        eigenvalues(&self.transfer(lambda))
    }

    fn phi_cached(&self, cache: &mut HashMap<(i64, i64), CVec>, k: i64, kp: i64) -> Result<CVec> {
        let r = self.params.r as i64;
        let key = (k.rem_euclid(r), kp - k + k.rem_euclid(r));
        if let Some(v) = cache.get(&key) {
            return Ok(v.clone());
        }
        let v = self.sos.intertwining_vector(HeightPair::new(key.0, key.1), c(0.0, 0.0))?;
        cache.insert(key, v.clone());
        Ok(v)
    }

    /// `|a_N, …, a_0⟩ = φ_{a_N,a_{N−1}} ⊗ ⋯ ⊗ φ_{a_1,a_0}`.
    pub fn fundamental_vector(&self, heights: &[i64]) -> Result<CVec> {
        self.fundamental_vector_cached(heights, &mut HashMap::new())
    }

    fn fundamental_vector_cached(&self, heights: &[i64], cache: &mut HashMap<(i64, i64), CVec>) -> Result<CVec> {
        if heights.len() != self.params.n_sites + 1 {
            return Err(Error::Precondition(format!(
                "expected {} heights, got {}",
                self.params.n_sites + 1,
                heights.len()
            )));
        }
        let mut v = CVec::from_element(1, c(1.0, 0.0));
        for w in heights.windows(2) {
            let phi = self.phi_cached(cache, w[0], w[1])?;
            v = crate::linalg::kron_vec(&v, &phi);
        }
        Ok(v)
    }

    /// Pseudo-vacuum `Ω^a_N = |a+2Nℓ, a+2(N−1)ℓ, …, a⟩`.
    pub fn pseudo_vacuum(&self, a: i64) -> Result<CVec> {
        let tl = self.params.two_ell as i64;
        let n = self.params.n_sites as i64;
        let hs: Vec<i64> = (0..=n).rev().map(|j| a + tl * j).collect();
        self.fundamental_vector(&hs)
    }

    fn check_m(&self, lambdas: &[Complex64]) -> Result<()> {
        self.params.validate_m()?;
        if lambdas.len() != self.params.m() {
            return Err(Error::Precondition(format!(
                "expected M = Nℓ = {} rapidities, got {}",
                self.params.m(),
                lambdas.len()
            )));
        }
        Ok(())
    }

    /// `Φ_a = B_{a+1,a−1}(λ₁)⋯B_{a+M,a−M}(λ_M) Ω^{a−M}_N`.
    pub fn bethe_component_algebraic(&self, a: i64, lambdas: &[Complex64]) -> Result<CVec> {
        let monos: Vec<Blocks> = lambdas.iter().map(|&l| self.monodromy(l)).collect();
        self.component_from_monodromies(a, lambdas, &monos)
    }

    fn component_from_monodromies(&self, a: i64, lambdas: &[Complex64], monos: &[Blocks]) -> Result<CVec> {
        let m = lambdas.len() as i64;
        let mut v = self.pseudo_vacuum(a - m)?;
        for i in (1..=m).rev() {
            let idx = (i - 1) as usize;
            let tw = self.twist(&monos[idx], a + i, a - i, lambdas[idx])?;
            v = &tw[0][1] * v;
        }
        Ok(v)
    }

    /// Algebraic Bethe vector `Ψ_ν = Σ_{a=0}^{r−1} e^{2πiνηa} Φ_a`.
    pub fn bethe_vector_algebraic(&self, nu: i64, lambdas: &[Complex64]) -> Result<CVec> {
        self.check_m(lambdas)?;
        let monos: Vec<Blocks> = lambdas.iter().map(|&l| self.monodromy(l)).collect();
        let eta = self.params.eta();
        let mut tot = CVec::zeros(self.dim);
        for a in 0..self.params.r as i64 {
            let phase = (2.0 * I * PI * nu as f64 * eta * a as f64).exp();
            tot += self.component_from_monodromies(a, lambdas, &monos)? * phase;
        }
        Ok(tot)
    }

    /// Sum of SOS weight products over height arrays `a_{i,j}`, `0 ≤ i ≤ M`, `0 ≤ j ≤ N`,
    /// expanded in fundamental vectors of the bottom row.
    ///
    /// `top` is row `M`; `left[i]` and `right[i]` fix `a_{i,0}` and `a_{i,N}` for `i < M`.
    /// Row `i` carries the spectral parameter `lambdas[i−1]`.
    pub fn height_array_sum(&self, top: &[i64], lambdas: &[Complex64], left: &[i64], right: &[i64]) -> Result<CVec> {
        let n = self.params.n_sites;
        let m = lambdas.len();
        let tl = self.params.two_ell;
        if top.len() != n + 1 || left.len() < m || right.len() < m {
            return Err(Error::Precondition("height array boundary has the wrong shape".into()));
        }
        let mut states: HashMap<Vec<i64>, Complex64> = HashMap::new();
        states.insert(top.to_vec(), c(1.0, 0.0));
        for i in (1..=m).rev() {
            let lam = lambdas[i - 1];
            let mut next: HashMap<Vec<i64>, Complex64> = HashMap::new();
            for (row, w) in &states {
                let mut partial: Vec<(Vec<i64>, Complex64)> = Vec::new();
                let first = left[i - 1];
                if (first - row[0]).abs() == 1 {
                    partial.push((vec![first], *w));
                }
                for j in 1..=n {
                    let mut grown = Vec::new();
                    for (cur, cw) in &partial {
                        for e in [-1i64, 1] {
                            let v = row[j] + e;
                            if j == n && v != right[i - 1] {
                                continue;
                            }
                            let prev = *cur.last().unwrap();
                            if !HeightPair::new(v, prev).is_admissible(tl) {
                                continue;
                            }
                            let (k, kp) = (row[j], row[j - 1]);
                            let wt = self.sos.sos_weight(k, kp, e as i8, (prev - kp) as i8, lam)?;
                            let mut nc = cur.clone();
                            nc.push(v);
                            grown.push((nc, cw * wt));
                        }
                    }
                    partial = grown;
                }
                for (row2, w2) in partial {
                    *next.entry(row2).or_insert(c(0.0, 0.0)) += w2;
                }
            }
            states = next;
        }
        let mut cache = HashMap::new();
        let mut tot = CVec::zeros(self.dim);
        let mut keys: Vec<_> = states.keys().cloned().collect();
        keys.sort();
        for row in keys {
            let hs: Vec<i64> = row.iter().rev().cloned().collect();
            tot += self.fundamental_vector_cached(&hs, &mut cache)? * states[&row];
        }
        Ok(tot)
    }

    /// Coordinate form of `Ψ_ν`, built from SOS weights without using the monodromy.
    pub fn bethe_vector_coordinate(&self, nu: i64, lambdas: &[Complex64]) -> Result<CVec> {
        self.check_m(lambdas)?;
        let n = self.params.n_sites as i64;
        let m = lambdas.len() as i64;
        let tl = self.params.two_ell as i64;
        let eta = self.params.eta();
        let mut tot = CVec::zeros(self.dim);
        for a in 0..self.params.r as i64 {
            let top: Vec<i64> = (0..=n).map(|j| a - m + tl * j).collect();
            let left: Vec<i64> = (0..m).map(|i| a - i).collect();
            let right: Vec<i64> = (0..m).map(|i| a + i).collect();
            let phase = (2.0 * I * PI * nu as f64 * eta * a as f64).exp();
            tot += self.height_array_sum(&top, lambdas, &left, &right)? * phase;
        }
        Ok(tot)
    }

    /// `U₁^{⊗N}` and `U₃^{⊗N}`.
    pub fn parity_operators(&self) -> (CMat, CMat) {
        let (u, _) = self.rep().parity_ops();
        let n = self.params.n_sites;
        (kron_power(&u[0], n), kron_power(&u[2], n))
    }

    /// Parities `(ν″, ν′)` of a state from `U₁^{⊗N}Ψ = (−1)^{ν″}Ψ`, `U₃^{⊗N}Ψ = (−1)^{ν′}Ψ`.
    pub fn parity_measure(&self, state: &CVec) -> ParityReport {
        let (u1, u3) = self.parity_operators();
        let measure = |u: &CMat| {
            let v = u * state;
            let ev = state.dotc(&v) / state.dotc(state);
            let sign = if ev.re >= 0.0 { 1.0 } else { -1.0 };
            let res = (v - state * c(sign, 0.0)).norm() / state.norm();
            (if sign > 0.0 { 0u8 } else { 1u8 }, res)
        };
        let (nu_pp, r1) = measure(&u1);
        let (nu_p, r3) = measure(&u3);
        ParityReport { nu_doubleprime: nu_pp, nu_prime: nu_p, residuals: [r1, r3], indeterminate: r1.max(r3) > 1e-4 }
    }
}

/// Parities of a state and how far it is from being a parity eigenvector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParityReport {
    pub nu_doubleprime: u8,
    pub nu_prime: u8,
    pub residuals: [f64; 2],
    pub indeterminate: bool,
}

impl ParityReport {
    /// The two congruences of the parity conjecture, `(ν+ν′+Nℓ even, ντ−2Σλ ≡ ν″+Nℓ mod 2)`.
    ///
    /// The second is read through `2Σλ = n₀ + n₁τ` as `ν − n₁` even and `n₀ + ν″ + Nℓ` even.
    pub fn conjecture(&self, params: &ModelParams, nu: i64, sum: &SumRule) -> (bool, bool) {
        let nl = params.m() as i64;
        let first = (nu + self.nu_prime as i64 + nl).rem_euclid(2) == 0;
        let second = (nu - sum.n1).rem_euclid(2) == 0 && (sum.n0 + self.nu_doubleprime as i64 + nl).rem_euclid(2) == 0;
        (first, second)
    }
}

fn theta11(z: Complex64, tau: Complex64) -> Complex64 {
    th(ThetaChar::T11, z, tau)
}

fn log_derivative(z: Complex64, tau: Complex64) -> Complex64 {
    th_prime(ThetaChar::T11, z, tau) / theta11(z, tau)
}

/// `LHS_j − RHS_j` of the Bethe equations
/// `(θ₁₁(λ_j+2ℓη)/θ₁₁(λ_j−2ℓη))^N = e^{−4πiνη} Π_{k≠j} θ₁₁(λ_j−λ_k+2η)/θ₁₁(λ_j−λ_k−2η)`.
pub fn bethe_residual(params: &ModelParams, nu: i64, lambdas: &[Complex64]) -> Result<Vec<Complex64>> {
    let (lhs, rhs) = bethe_sides(params, nu, lambdas)?;
    Ok(lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect())
}

fn bethe_sides(params: &ModelParams, nu: i64, lambdas: &[Complex64]) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let tau = params.tau();
    let eta = params.eta();
    let e2 = params.two_ell as f64 * eta;
    let n = params.n_sites as i32;
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for (j, &l) in lambdas.iter().enumerate() {
        let den = theta11(l - e2, tau);
        if den.norm() < 1e-300 {
            return Err(Error::Pole(format!("θ₁₁(λ_{j} − 2ℓη) = 0")));
        }
        lhs.push((theta11(l + e2, tau) / den).powi(n));
        let mut p = (-4.0 * I * PI * nu as f64 * eta).exp();
        for (k, &m) in lambdas.iter().enumerate() {
            if k != j {
                let d = theta11(l - m - 2.0 * eta, tau);
                if d.norm() < 1e-300 {
                    return Err(Error::Pole(format!("θ₁₁(λ_{j} − λ_{k} − 2η) = 0")));
                }
                p *= theta11(l - m + 2.0 * eta, tau) / d;
            }
        }
        rhs.push(p);
    }
    Ok((lhs, rhs))
}

/// A converged solution of the Bethe equations.
#[derive(Debug, Clone, PartialEq)]
pub struct BetheSolution {
    pub nu: i64,
    pub lambdas: Vec<Complex64>,
    /// Branch numbers `I_j` of the principal-log form at the returned roots.
    pub branch_ints: Vec<f64>,
    /// `max_j |LHS_j/RHS_j − 1|`.
    pub residual: f64,
    pub iterations: usize,
    /// Lattice shifts `(n, m)` with `λ_j ↦ λ_j − n − mτ` applied by the reduction.
    pub shifts: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { max_iter: 200, tol: 1e-10 }
    }
}

/// Continuous logarithm of the Bethe equations with fixed branch numbers.
struct LogForm<'a> {
    params: &'a ModelParams,
    nu: i64,
    branch: Vec<f64>,
}

impl LogForm<'_> {
    fn raw(&self, lambdas: &[Complex64], prev: Option<&[Complex64]>) -> Vec<Complex64> {
        let tau = self.params.tau();
        let eta = self.params.eta();
        let e2 = self.params.two_ell as f64 * eta;
        let n = self.params.n_sites as f64;
        lambdas
            .iter()
            .enumerate()
            .map(|(j, &l)| {
                let mut g = n * ((theta11(l + e2, tau)).ln() - (theta11(l - e2, tau)).ln());
                for (k, &m) in lambdas.iter().enumerate() {
                    if k != j {
                        g -= theta11(l - m + 2.0 * eta, tau).ln() - theta11(l - m - 2.0 * eta, tau).ln();
                    }
                }
                g += 4.0 * I * PI * self.nu as f64 * eta;
                if let Some(p) = prev {
                    let k = ((p[j] - g).im / (2.0 * PI)).round();
                    g += 2.0 * I * PI * k;
                }
                g
            })
            .collect()
    }

    fn residual(&self, raw: &[Complex64]) -> Vec<Complex64> {
        raw.iter().zip(&self.branch).map(|(g, b)| g - 2.0 * I * PI * b).collect()
    }

    fn jacobian(&self, lambdas: &[Complex64]) -> CMat {
        let tau = self.params.tau();
        let eta = self.params.eta();
        let e2 = self.params.two_ell as f64 * eta;
        let n = self.params.n_sites as f64;
        let m = lambdas.len();
        let mut jac = CMat::zeros(m, m);
        for j in 0..m {
            let l = lambdas[j];
            let mut d = n * (log_derivative(l + e2, tau) - log_derivative(l - e2, tau));
            for k in 0..m {
                if k != j {
                    let x = l - lambdas[k];
                    let p = log_derivative(x + 2.0 * eta, tau) - log_derivative(x - 2.0 * eta, tau);
                    d -= p;
                    jac[(j, k)] = p;
                }
            }
            jac[(j, j)] = d;
        }
        jac
    }
}

fn sup(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Attaches the residual history to a degenerate-solution error.
fn with_trace(e: Error, history: &[f64]) -> Error {
    match e {
        Error::DegenerateSolution { message, .. } => Error::DegenerateSolution { message, trace: history.to_vec() },
        other => other,
    }
}

fn newton_step(jac: &CMat, res: &[Complex64]) -> Result<CVec> {
    let rhs = -CVec::from_column_slice(res);
    let lu = jac.clone().lu();
    let step = lu.solve(&rhs).ok_or_else(|| Error::DegenerateSolution { message: "singular Jacobian".into(), trace: Vec::new() })?;
    if step.iter().any(|z| !z.is_finite()) {
        return Err(Error::DegenerateSolution { message: "non-finite Newton step".into(), trace: Vec::new() });
    }
    Ok(step)
}

/// Damped Newton on the logarithmic Bethe equations, then a polish on `LHS/RHS − 1`.
///
/// Without `branch_ints` the branch numbers are read off the initial point.
pub fn solve_bethe(
    params: &ModelParams,
    nu: i64,
    init: &[Complex64],
    branch_ints: Option<&[f64]>,
    opts: SolverOptions,
) -> Result<BetheSolution> {
    params.validate()?;
    if init.len() != params.m() {
        return Err(Error::Precondition(format!("expected M = {} initial roots, got {}", params.m(), init.len())));
    }
    if init.iter().any(|z| !z.is_finite()) {
        return Err(Error::Precondition("initial roots must be finite".into()));
    }
    let mut lam = init.to_vec();
    let probe = LogForm { params, nu, branch: vec![0.0; lam.len()] };
    let mut raw = probe.raw(&lam, None);
    let branch = match branch_ints {
        Some(b) => {
            if b.len() != lam.len() {
                return Err(Error::Precondition("one branch number per root is required".into()));
            }
            b.to_vec()
        }
        None => raw.iter().map(|g| (g.im / (2.0 * PI)).round()).collect(),
    };
    let form = LogForm { params, nu, branch };
    let mut res = form.residual(&raw);
    let mut trace = vec![sup(&res)];
    let mut iterations = 0;
    // Stage 1: logarithmic form.
    while iterations < opts.max_iter && sup(&res) > opts.tol * 1e-2 {
        iterations += 1;
        let step = newton_step(&form.jacobian(&lam), &res).map_err(|e| with_trace(e, &trace))?;
        let mut alpha = 1.0;
        let mut accepted = false;
        while alpha > 1e-6 {
            let trial: Vec<Complex64> = lam.iter().zip(step.iter()).map(|(l, s)| l + s * alpha).collect();
            let traw = form.raw(&trial, Some(&raw));
            let tres = form.residual(&traw);
            if tres.iter().all(|z| z.is_finite()) && sup(&tres) < sup(&res) {
                lam = trial;
                raw = traw;
                res = tres;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        trace.push(sup(&res));
        if !accepted {
            break;
        }
    }
    // Stage 2: branch-free polish.
    let polish = |l: &[Complex64]| -> Vec<Complex64> {
        form.residual(&form.raw(l, None)).iter().map(|g| g.exp() - 1.0).collect()
    };
    let mut pres = polish(&lam);
    let mut stalls = 0;
    while iterations < opts.max_iter && sup(&pres) > opts.tol * 1e-3 && stalls < 3 {
        iterations += 1;
        let g = form.residual(&form.raw(&lam, None));
        let mut jac = form.jacobian(&lam);
        for j in 0..lam.len() {
            let e = g[j].exp();
            for k in 0..lam.len() {
                jac[(j, k)] *= e;
            }
        }
        let step = newton_step(&jac, &pres).map_err(|e| with_trace(e, &trace))?;
        let trial: Vec<Complex64> = lam.iter().zip(step.iter()).map(|(l, s)| l + s).collect();
        let tres = polish(&trial);
        if tres.iter().all(|z| z.is_finite()) && sup(&tres) < sup(&pres) {
            lam = trial;
            pres = tres;
            stalls = 0;
        } else {
            stalls += 1;
        }
        trace.push(sup(&pres));
    }
    let residual = sup(&pres);
    if !(residual <= opts.tol) {
        return Err(Error::Convergence {
            message: format!("residual {residual:e} after {iterations} iterations"),
            trace,
        });
    }
    let (nu_r, lambdas, shifts) = reduce_to_fundamental_domain(params, nu, &lam);
    check_distinct(params, &lambdas).map_err(|e| with_trace(e, &trace))?;
    let branch_ints = LogForm { params, nu: nu_r, branch: vec![0.0; lambdas.len()] }
        .raw(&lambdas, None)
        .iter()
        .map(|g| (g.im / (2.0 * PI)).round())
        .collect();
    let residual = bethe_relative_residual(params, nu_r, &lambdas)?;
    Ok(BetheSolution { nu: nu_r, lambdas, branch_ints, residual, iterations, shifts })
}

/// `max_j |LHS_j/RHS_j − 1|`.
pub fn bethe_relative_residual(params: &ModelParams, nu: i64, lambdas: &[Complex64]) -> Result<f64> {
    let (lhs, rhs) = bethe_sides(params, nu, lambdas)?;
    Ok(lhs.iter().zip(&rhs).map(|(a, b)| (a / b - 1.0).norm()).fold(0.0, f64::max))
}

/// Reduces each root to `|Re λ| ≤ 1/2`, `|Im λ| ≤ Im τ/2`, shifting `ν` by `−2` per `+τ` removed.
pub fn reduce_to_fundamental_domain(
    params: &ModelParams,
    nu: i64,
    lambdas: &[Complex64],
) -> (i64, Vec<Complex64>, Vec<(i64, i64)>) {
    let tau = params.tau();
    let mut nu = nu;
    let mut shifts = Vec::new();
    let out = lambdas
        .iter()
        .map(|&l| {
            // Points on the boundary of the domain are left where they are.
            let half = tau.im / 2.0 * (1.0 + 1e-12);
            let m = if l.im.abs() > half { (l.im / tau.im).round() } else { 0.0 };
            let l1 = l - tau * m;
            let n = if l1.re.abs() > 0.5 + 1e-12 { l1.re.round() } else { 0.0 };
            nu -= 2 * m as i64;
            shifts.push((n as i64, m as i64));
            l1 - n
        })
        .collect();
    (nu, out, shifts)
}

fn check_distinct(params: &ModelParams, lambdas: &[Complex64]) -> Result<()> {
    let tau = params.tau();
    for i in 0..lambdas.len() {
        for j in 0..i {
            let d = lambdas[i] - lambdas[j];
            let m = (d.im / tau.im).round();
            let d1 = d - tau * m;
            if (d1 - d1.re.round()).norm() < 1e-8 {
                return Err(Error::DegenerateSolution {
                    message: format!("roots {j} and {i} coincide modulo the lattice"),
                    trace: Vec::new(),
                });
            }
        }
    }
    Ok(())
}

/// Roots of a string configuration: `λ = x/(it)` with `x = x_c + 2iηtα`,
/// `α = −(A−1)/2, …, (A−1)/2`; negative parity adds `it/2` to the center.
pub fn string_roots(params: &ModelParams, strings: &[(u32, bool, f64)]) -> Vec<Complex64> {
    let t = params.t;
    let eta = params.eta();
    let mut out = Vec::new();
    for &(a, negative, xc) in strings {
        let center = c(xc, if negative { t / 2.0 } else { 0.0 });
        for s in 0..a {
            let alpha = -(a as f64 - 1.0) / 2.0 + s as f64;
            let x = center + c(0.0, 2.0 * eta * t * alpha);
            out.push(x / c(0.0, t));
        }
    }
    out
}

/// `Q(λ) = e^{−πiνλ} Π_j θ₁₁(λ − λ_j)`.
pub fn q_function(params: &ModelParams, nu: i64, lambdas: &[Complex64], lambda: Complex64) -> Complex64 {
    let tau = params.tau();
    lambdas.iter().fold((-I * PI * nu as f64 * lambda).exp(), |acc, &l| acc * theta11(lambda - l, tau))
}

/// `h(z) = (2θ₁₁(z))^N`.
pub fn h_function(params: &ModelParams, z: Complex64) -> Complex64 {
    (2.0 * theta11(z, params.tau())).powi(params.n_sites as i32)
}

fn near_root(params: &ModelParams, lambdas: &[Complex64], lambda: Complex64) -> bool {
    let tau = params.tau();
    lambdas.iter().any(|&l| theta11(lambda - l, tau).norm() < 1e-9)
}

/// Eigenvalue in product form,
/// `e^{2πiνη} h(λ+2ℓη) Π θ₁₁(λ−λ_j−2η)/θ₁₁(λ−λ_j) + e^{−2πiνη} h(λ−2ℓη) Π θ₁₁(λ−λ_j+2η)/θ₁₁(λ−λ_j)`.
pub fn eigenvalue_t(params: &ModelParams, nu: i64, lambdas: &[Complex64], lambda: Complex64) -> Result<Complex64> {
    if near_root(params, lambdas, lambda) {
        return Err(Error::Pole(format!("λ = {lambda} coincides with a Bethe root")));
    }
    Ok(eigenvalue_raw(params, nu, lambdas, lambda))
}

fn eigenvalue_raw(params: &ModelParams, nu: i64, lambdas: &[Complex64], lambda: Complex64) -> Complex64 {
    let tau = params.tau();
    let eta = params.eta();
    let e2 = params.two_ell as f64 * eta;
    let (mut p1, mut p2) = (c(1.0, 0.0), c(1.0, 0.0));
    for &l in lambdas {
        let d = theta11(lambda - l, tau);
        p1 *= theta11(lambda - l - 2.0 * eta, tau) / d;
        p2 *= theta11(lambda - l + 2.0 * eta, tau) / d;
    }
    let ph = (2.0 * I * PI * nu as f64 * eta).exp();
    ph * h_function(params, lambda + e2) * p1 + h_function(params, lambda - e2) * p2 / ph
}

/// Eigenvalue through `Q`: `h(λ+2ℓη) Q(λ−2η)/Q(λ) + h(λ−2ℓη) Q(λ+2η)/Q(λ)`.
pub fn eigenvalue_t_q(params: &ModelParams, nu: i64, lambdas: &[Complex64], lambda: Complex64) -> Result<Complex64> {
    if near_root(params, lambdas, lambda) {
        return Err(Error::Pole(format!("λ = {lambda} coincides with a Bethe root")));
    }
    let eta = params.eta();
    let e2 = params.two_ell as f64 * eta;
    let q = |z| q_function(params, nu, lambdas, z);
    let q0 = q(lambda);
    Ok(h_function(params, lambda + e2) * q(lambda - 2.0 * eta) / q0 + h_function(params, lambda - e2) * q(lambda + 2.0 * eta) / q0)
}

/// Eigenvalue that stays finite at the roots when the Bethe equations hold:
/// near a root it averages a four-point stencil of radius `1e−4`.
pub fn eigenvalue_pole_free(params: &ModelParams, nu: i64, lambdas: &[Complex64], lambda: Complex64) -> Result<Complex64> {
    if !near_root(params, lambdas, lambda) {
        return Ok(eigenvalue_raw(params, nu, lambdas, lambda));
    }
    let res = bethe_relative_residual(params, nu, lambdas)?;
    if res > 1e-8 {
        return Err(Error::Pole(format!("λ = {lambda} is a root and the Bethe equations fail ({res:e})")));
    }
    let r = 1e-4;
    let pts = [c(r, 0.0), c(-r, 0.0), c(0.0, r), c(0.0, -r)];
    Ok(pts.iter().map(|&d| eigenvalue_raw(params, nu, lambdas, lambda + d)).sum::<Complex64>() / 4.0)
}

/// Lattice decomposition of `2Σλ_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumRule {
    pub n0: i64,
    pub n1: i64,
    pub deviation: f64,
}

/// Rounds `2Σλ_j` to the nearest `n₀ + n₁τ`.
pub fn sum_rule_check(params: &ModelParams, lambdas: &[Complex64]) -> SumRule {
    let tau = params.tau();
    let s: Complex64 = lambdas.iter().sum::<Complex64>() * 2.0;
    let n1 = (s.im / tau.im).round();
    let n0 = (s.re - n1 * tau.re).round();
    let deviation = (s - n0 - tau * n1).norm();
    SumRule { n0: n0 as i64, n1: n1 as i64, deviation }
}

/// Determinant `t^r(λ)` of the `(r−1)×(r−1)` band matrix with diagonal `t(λ+2jη)`,
/// superdiagonal `h(λ+2(j−ℓ)η)` and subdiagonal `h(λ+2(j+ℓ)η)`.
pub fn t_r_determinant(params: &ModelParams, nu: i64, lambdas: &[Complex64], lambda: Complex64) -> Result<Complex64> {
    let r = params.r as usize;
    if r < 2 {
        return Err(Error::Precondition("t^r needs r ≥ 2".into()));
    }
    let eta = params.eta();
    let ell = params.ell();
    let n = r - 1;
    let mut m = CMat::zeros(n, n);
    for row in 0..n {
        let j = (row + 1) as f64;
        m[(row, row)] = eigenvalue_pole_free(params, nu, lambdas, lambda + 2.0 * j * eta)?;
        if row + 1 < n {
            m[(row, row + 1)] = h_function(params, lambda + 2.0 * (j - ell) * eta);
        }
        if row > 0 {
            m[(row, row - 1)] = h_function(params, lambda + 2.0 * (j + ell) * eta);
        }
    }
    Ok(m.determinant())
}

/// `h(λ+2(ℓ+1)η)⋯h(λ+2(r−ℓ−1)η)`.
pub fn h_chain(params: &ModelParams, lambda: Complex64) -> Complex64 {
    let eta = params.eta();
    let ell = params.ell();
    let count = params.r as i64 - params.two_ell as i64 - 1;
    (0..count).map(|s| h_function(params, lambda + 2.0 * (ell + 1.0 + s as f64) * eta)).product()
}

/// `F(λ) = Σ_{k=0}^{r−1} f_k(λ)` from the expansion of `Q(λ+2η)⋯Q(λ+2(r−1)η) t^r(λ)`.
pub fn f_sum(params: &ModelParams, nu: i64, lambdas: &[Complex64], lambda: Complex64) -> Complex64 {
    let eta = params.eta();
    let ell = params.ell();
    let r = params.r as i64;
    let q = |j: i64| q_function(params, nu, lambdas, lambda + 2.0 * j as f64 * eta);
    (0..r)
        .map(|k| {
            let hp: Complex64 = (1..=params.two_ell as i64)
                .map(|j| h_function(params, lambda + 2.0 * (k as f64 - ell + j as f64) * eta))
                .product();
            let q1: Complex64 = (1..k).map(q).product();
            // The k = 0 term stops at r − 1; Q(λ+2rη) = Q(λ) is the factor pulled out in front.
            let top = if k == 0 { r - 1 } else { r };
            let q2: Complex64 = (k + 2..=top).map(q).product();
            hp * q1 * q2
        })
        .sum()
}

/// Fit of `t^r(λ) ≈ C e^{2πinλ} h(λ+2(ℓ+1)η)⋯h(λ+2(r−ℓ−1)η) Q(λ)²` over a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormFit {
    pub constant: Complex64,
    pub n: i64,
    pub max_rel_deviation: f64,
    /// Largest `|t^r|` seen on the grid, the non-vanishing diagnostic.
    pub max_abs: f64,
}

pub fn t_r_closed_form_fit(params: &ModelParams, nu: i64, lambdas: &[Complex64], grid: &[Complex64]) -> Result<ClosedFormFit> {
    let mut ratios = Vec::with_capacity(grid.len());
    let mut max_abs: f64 = 0.0;
    for &l in grid {
        let tr = t_r_determinant(params, nu, lambdas, l)?;
        max_abs = max_abs.max(tr.norm());
        let q = q_function(params, nu, lambdas, l);
        ratios.push(tr / (h_chain(params, l) * q * q));
    }
    let bound = 4 * (params.r as i64) * (params.n_sites as i64 + 1);
    let mut best: Option<ClosedFormFit> = None;
    for n in -bound..=bound {
        let adj: Vec<Complex64> =
            grid.iter().zip(&ratios).map(|(&l, &q)| q * (-2.0 * I * PI * n as f64 * l).exp()).collect();
        let constant = adj.iter().sum::<Complex64>() / adj.len() as f64;
        let dev = adj.iter().map(|a| (a - constant).norm()).fold(0.0, f64::max) / constant.norm();
        if best.map_or(true, |b| dev < b.max_rel_deviation) {
            best = Some(ClosedFormFit { constant, n, max_rel_deviation: dev, max_abs });
        }
    }
    best.ok_or_else(|| Error::Precondition("empty grid".into()))
}

/// `|Res_{λ=λ_j} t^r| / (ρ max_{|λ−λ_j|=ρ} |t^r|)` from a trapezoid contour integral.
pub fn t_r_residue_probe(params: &ModelParams, nu: i64, lambdas: &[Complex64], j: usize, radius: f64) -> Result<f64> {
    let k = 64;
    let mut acc = c(0.0, 0.0);
    let mut scale: f64 = 0.0;
    for s in 0..k {
        let d = c(0.0, 2.0 * PI * s as f64 / k as f64).exp() * radius;
        let v = t_r_determinant(params, nu, lambdas, lambdas[j] + d)?;
        scale = scale.max(v.norm());
        acc += v * d;
    }
    Ok((acc / k as f64).norm() / (scale * radius))
}

/// Residual of `T(λ)Ψ = t(λ)Ψ` relative to `‖Ψ‖`.
pub fn eigen_residual(chain: &Chain, sol: &BetheSolution, psi: &CVec, lambda: Complex64) -> Result<f64> {
    let tv = eigenvalue_pole_free(chain.params(), sol.nu, &sol.lambdas, lambda)?;
    let tm = chain.transfer(lambda);
    Ok((&tm * psi - psi * tv).norm() / psi.norm())
}

/// Distance from `t(λ)` to the nearest eigenvalue of the dense transfer matrix, relative to `|t(λ)|`.
pub fn dense_eigenvalue_distance(chain: &Chain, sol: &BetheSolution, lambda: Complex64) -> Result<f64> {
    let tv = eigenvalue_pole_free(chain.params(), sol.nu, &sol.lambdas, lambda)?;
    let d = chain.transfer_eigenvalues(lambda).iter().map(|e| (e - tv).norm()).fold(f64::INFINITY, f64::min);
    Ok(d / tv.norm().max(1e-300))
}

/// Norm of a vector relative to a reference, for collinearity tests.
pub fn collinearity_angle(a: &CVec, b: &CVec) -> f64 {
    let cos = a.dotc(b).norm() / (a.norm() * b.norm());
    cos.min(1.0).acos()
}

#[doc(hidden)]
pub fn max_abs_component(v: &CVec) -> f64 {
    max_abs_vec(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;
    use crate::sklyanin::DEFAULT_SEED;

    fn chain(two_ell: u32, n: usize) -> Chain {
        let p = ModelParams::defaults(two_ell).unwrap().with_sites(n).unwrap();
        Chain::new(&p, GaugeParams::default(), DEFAULT_SEED).unwrap()
    }

    fn rel(a: &CVec, b: &CVec) -> f64 {
        (a - b).norm() / a.norm().max(b.norm())
    }

    #[test]
    fn single_site_monodromy_is_l() {
        let p = ModelParams { n_sites: 1, ..ModelParams::defaults(2).unwrap() };
        let ch = Chain::new(&p, GaugeParams::default(), DEFAULT_SEED).unwrap();
        let lam = c(0.13, 0.02);
        let t = ch.monodromy(lam);
        let l = ch.rep().l_blocks(lam);
        for a in 0..2 {
            for b in 0..2 {
                assert!(max_abs(&(&t[a][b] - &l[a][b])) < 1e-14);
            }
        }
    }

    #[test]
    fn transfer_matrices_commute() {
        for n in [2, 3] {
            let p = ModelParams { n_sites: n, ..ModelParams::defaults(1).unwrap() };
            let ch = Chain::new(&p, GaugeParams::default(), DEFAULT_SEED).unwrap();
            let a = ch.transfer(c(0.11, 0.03));
            let b = ch.transfer(c(-0.27, 0.05));
            let comm = &a * &b - &b * &a;
            assert!(max_abs(&comm) < 1e-9 * max_abs(&a) * max_abs(&b), "{}", max_abs(&comm));
        }
    }

    #[test]
    fn parity_operators_commute_with_transfer() {
        let ch = chain(1, 4);
        let (u1, u3) = ch.parity_operators();
        let t = ch.transfer(c(0.21, 0.04));
        for u in [&u1, &u3] {
            assert!(max_abs(&(&t * u - u * &t)) < 1e-9 * max_abs(&t));
            assert!(max_abs(&(u * u - identity(ch.dim()))) < 1e-10);
        }
        assert!(max_abs(&(&u1 * &u3 - &u3 * &u1)) < 1e-10);
    }

    #[test]
    fn pseudo_vacuum_triangularity() {
        for (two_ell, n) in [(1u32, 2usize), (1, 4), (2, 2)] {
            let ch = chain(two_ell, n);
            let lam = c(0.21, 0.04);
            let eta = ch.params().eta();
            let tl = two_ell as i64;
            for a in [0i64, 3] {
                let tw = ch.twisted_monodromy(a + tl * n as i64, a, lam).unwrap();
                let v = ch.pseudo_vacuum(a).unwrap();
                let cv = &tw[1][0] * &v;
                assert!(cv.norm() < 1e-9 * v.norm() * max_abs(&tw[0][0]), "C: {}", cv.norm());
                let av = &tw[0][0] * &v;
                let fa = (2.0 * theta11(lam + tl as f64 * eta, ch.params().tau())).powi(n as i32);
                assert!(rel(&av, &(ch.pseudo_vacuum(a - 1).unwrap() * fa)) < 1e-8);
                let dv = &tw[1][1] * &v;
                let fd = (2.0 * theta11(lam - tl as f64 * eta, ch.params().tau())).powi(n as i32);
                assert!(rel(&dv, &(ch.pseudo_vacuum(a + 1).unwrap() * fd)) < 1e-8);
            }
        }
    }

    #[test]
    fn algebraic_and_coordinate_vectors_agree() {
        let cases: [(u32, usize, Vec<Complex64>); 3] = [
            (1, 2, vec![c(0.11, 0.07)]),
            (1, 4, vec![c(0.1, 0.03), c(-0.2, 0.05)]),
            (2, 2, vec![c(0.1, 0.03), c(-0.2, 0.05)]),
        ];
        for (two_ell, n, lams) in cases {
            let ch = chain(two_ell, n);
            let a = ch.bethe_vector_algebraic(1, &lams).unwrap();
            let b = ch.bethe_vector_coordinate(1, &lams).unwrap();
            assert!(rel(&a, &b) < 1e-9, "2l={two_ell} N={n}: {}", rel(&a, &b));
            assert!(a.norm() > 1e-6);
        }
    }

    #[test]
    fn components_are_height_periodic() {
        let ch = chain(1, 2);
        let lams = [c(0.11, 0.07)];
        let a = ch.bethe_component_algebraic(2, &lams).unwrap();
        let b = ch.bethe_component_algebraic(2 + 6, &lams).unwrap();
        assert!(rel(&a, &b) < 1e-9);
    }

    #[test]
    fn impossible_boundary_gives_zero_vector() {
        let ch = chain(1, 2);
        let v = ch.height_array_sum(&[0, 1, 2], &[c(0.1, 0.02)], &[7], &[1]).unwrap();
        assert_eq!(v.norm(), 0.0);
    }

    #[test]
    fn bethe_vector_symmetric_and_quasi_periodic() {
        let ch = chain(1, 4);
        let l = [c(0.1, 0.03), c(-0.2, 0.05)];
        let a = ch.bethe_vector_algebraic(0, &l).unwrap();
        let b = ch.bethe_vector_algebraic(0, &[l[1], l[0]]).unwrap();
        assert!(rel(&a, &b) < 1e-9);
        let shifted = ch.bethe_vector_algebraic(0, &[l[0] + 1.0, l[1]]).unwrap();
        assert!(rel(&shifted, &a) < 1e-9, "(−1)^N with N even");
        let tau = ch.params().tau();
        let t2 = ch.bethe_vector_algebraic(2, &[l[0] + tau, l[1]]).unwrap();
        assert!(collinearity_angle(&t2, &a) < 1e-8);
    }

    #[test]
    fn trivial_solution_and_eigenvalue() {
        let ch = chain(1, 2);
        let p = *ch.params();
        let res = bethe_residual(&p, 0, &[c(0.0, 0.0)]).unwrap();
        assert!(res[0].norm() < 1e-14);
        let sol = solve_bethe(&p, 0, &[c(0.01, 0.005)], None, SolverOptions::default()).unwrap();
        assert!(sol.lambdas[0].norm() < 1e-10, "{:?}", sol.lambdas);
        let psi = ch.bethe_vector_algebraic(0, &sol.lambdas).unwrap();
        for lam in [c(0.21, 0.04), c(-0.1, 0.1)] {
            assert!(eigen_residual(&ch, &sol, &psi, lam).unwrap() < 1e-8);
            assert!(dense_eigenvalue_distance(&ch, &sol, lam).unwrap() < 1e-8);
        }
        let r1 = bethe_residual(&p, 0, &[c(1e-3, 0.0)]).unwrap()[0].norm();
        let r2 = bethe_residual(&p, 0, &[c(2e-3, 0.0)]).unwrap()[0].norm();
        assert!(r1 > 1e-6 && (r2 / r1 - 2.0).abs() < 0.05, "{r1} {r2}");
    }

    #[test]
    fn spin_one_pair_solution() {
        let ch = chain(2, 2);
        let p = *ch.params();
        let sol = solve_bethe(&p, 0, &[c(0.12, 0.01), c(-0.13, -0.01)], None, SolverOptions::default()).unwrap();
        let mut xs: Vec<f64> = sol.lambdas.iter().map(|z| z.re).collect();
        xs.sort_by(f64::total_cmp);
        assert!((xs[1] - 0.142_565_350_251_692_76).abs() < 1e-9, "{:?}", sol.lambdas);
        let psi = ch.bethe_vector_algebraic(sol.nu, &sol.lambdas).unwrap();
        assert!(eigen_residual(&ch, &sol, &psi, c(0.17, 0.03)).unwrap() < 1e-7);
        assert!(sum_rule_check(&p, &sol.lambdas).deviation < 1e-9);
    }

    #[test]
    fn eigenvalue_forms_and_q_automorphy() {
        let p = ModelParams::defaults(2).unwrap().with_sites(3).unwrap();
        let lams = [c(0.1, 0.05), c(-0.2, 0.1), c(0.33, -0.02)];
        for nu in [0i64, 1] {
            for lam in [c(0.17, 0.03), c(-0.31, 0.11)] {
                let a = eigenvalue_t(&p, nu, &lams, lam).unwrap();
                let b = eigenvalue_t_q(&p, nu, &lams, lam).unwrap();
                assert!((a - b).norm() < 1e-11 * a.norm());
                let q = q_function(&p, nu, &lams, lam);
                let sign = if (p.m() as i64 - nu).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                assert!((q_function(&p, nu, &lams, lam + 1.0) - q * sign).norm() < 1e-10 * q.norm());
                let tau = p.tau();
                let s: Complex64 = lams.iter().sum();
                let nl = p.m() as f64;
                let fac = (-I * PI * nl * (1.0 + tau + 2.0 * lam) - I * PI * tau * nu as f64 + 2.0 * I * PI * s).exp();
                assert!((q_function(&p, nu, &lams, lam + tau) - q * fac).norm() < 1e-10 * (q * fac).norm());
            }
        }
    }

    #[test]
    fn f_sum_has_period_two_eta_and_expands_determinant() {
        let p = ModelParams::defaults(1).unwrap();
        let lams = [c(0.07, 0.02)];
        let eta = p.eta();
        let lam = c(0.13, 0.04);
        let f0 = f_sum(&p, 0, &lams, lam);
        assert!((f_sum(&p, 0, &lams, lam + 2.0 * eta) - f0).norm() < 1e-9 * f0.norm());
        let tr = t_r_determinant(&p, 0, &lams, lam).unwrap();
        let qs: Complex64 = (1..p.r).map(|j| q_function(&p, 0, &lams, lam + 2.0 * j as f64 * eta)).product();
        let rhs = h_chain(&p, lam) * q_function(&p, 0, &lams, lam) * f0;
        assert!((qs * tr - rhs).norm() < 1e-9 * rhs.norm());
    }

    #[test]
    fn t_r_closed_form_on_trivial_solution() {
        let p = ModelParams::defaults(1).unwrap();
        let grid: Vec<Complex64> = (0..16).map(|i| c(-0.45 + 0.06 * i as f64, 0.07)).collect();
        let fit = t_r_closed_form_fit(&p, 0, &[c(0.0, 0.0)], &grid).unwrap();
        assert!(fit.max_rel_deviation < 1e-6, "{fit:?}");
        assert!(t_r_residue_probe(&p, 0, &[c(0.0, 0.0)], 0, 1e-2).unwrap() < 1e-7);
    }

    #[test]
    fn sum_rule_and_negative_control() {
        let p = ModelParams::defaults(1).unwrap();
        let s = sum_rule_check(&p, &[c(0.0, 0.0)]);
        assert_eq!((s.n0, s.n1), (0, 0));
        let s = sum_rule_check(&p, &[c(0.0123, 0.0456), c(0.1, 0.0)]);
        assert!(s.deviation > 1e-3);
    }

    #[test]
    fn size_cap_is_enforced() {
        let p = ModelParams::defaults(2).unwrap().with_sites(10).unwrap();
        assert!(matches!(Chain::new(&p, GaugeParams::default(), DEFAULT_SEED), Err(Error::SizeCap { .. })));
    }
}

/// A Bethe solution at default `(t, r, r′)` with a starting point that converges to it.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceCase {
    pub name: &'static str,
    pub two_ell: u32,
    pub n_sites: usize,
    pub nu: i64,
    pub init: Vec<Complex64>,
    /// One root of the converged set, after reduction to the fundamental domain.
    pub expected_root: Complex64,
}

impl ReferenceCase {
    pub fn params(&self) -> Result<ModelParams> {
        ModelParams::defaults(self.two_ell)?.with_sites(self.n_sites)
    }
}

pub fn reference_cases() -> Vec<ReferenceCase> {
    vec![
        ReferenceCase {
            name: "spin-half-n2-trivial",
            two_ell: 1,
            n_sites: 2,
            nu: 0,
            init: vec![c(0.01, 0.005)],
            expected_root: c(0.0, 0.0),
        },
        ReferenceCase {
            name: "spin-half-n4-ground",
            two_ell: 1,
            n_sites: 4,
            nu: 0,
            init: vec![c(0.0, 0.09), c(0.0, -0.09)],
            expected_root: c(0.0, 0.088_866_882_094_870_7),
        },
        ReferenceCase {
            name: "spin-half-n4-edge",
            two_ell: 1,
            n_sites: 4,
            nu: 0,
            init: vec![c(-0.5, 0.12), c(-0.5, -0.12)],
            expected_root: c(-0.5, 0.120_107_417_686_725_9),
        },
        ReferenceCase {
            name: "spin-one-n2-pair",
            two_ell: 2,
            n_sites: 2,
            nu: 0,
            init: vec![c(0.12, 0.01), c(-0.13, -0.01)],
            expected_root: c(0.142_565_350_251_692_76, 0.0),
        },
        ReferenceCase {
            name: "spin-one-n2-half-period",
            two_ell: 2,
            n_sites: 2,
            nu: 1,
            init: vec![c(0.01, 0.24), c(0.01, 0.01)],
            expected_root: c(0.0, 0.25),
        },
    ]
}
