//! Thermodynamic limit of the Bethe ansatz: string bookkeeping, densities of
//! string centers, the free energy, two-particle excited states, the
//! polarization of the Dirac sea and the two-particle S matrix.
//!
//! Real abscissas `x = itλ` are used throughout; the sea of `2ℓ`-string
//! centers fills `(−1/2, 1/2)`.

mod densities;
mod excited;
mod free_energy;
mod smatrix;
mod strings;

pub use densities::{
    excitation_densities, excitation_residuals, ground_density, ground_residual, omega_minus_density,
    omega_plus_density, omega_zero_density, sigma_density, sigma_printed_coefficient, ExcitationDensities,
    ExcitationResiduals, FourierDensity,
};
pub use excited::{
    polarization, polarization_fourier_solution, polarization_sum_identity, solve_excited_state, uniqueness_integrand,
    ExcitedState, Polarization, SumIdentity, Variant,
};
pub use free_energy::{
    compare_free_energy, default_free_energy_grid, dominance_log_ratio_quadrature, dominance_log_ratio_series,
    free_energy_quadrature, free_energy_series, free_energy_series_derivative, free_energy_strip,
    FreeEnergyComparison,
};
pub use smatrix::{
    big_s_double_product, big_s_q_gamma, big_s_series, r_spectrum_modified, s_log_series, s_matrix_closed,
    s_matrix_eigenvalue, s_vs_r_check, s_vs_r_spread, s_zero, series_vs_closed, SvsR,
};
pub use strings::{Parity, StringConfig};

use crate::elliptic::{phi_prime, sinh_ratio};
use crate::error::Result;
use crate::params::ModelParams;
use std::f64::consts::PI;

/// Default number of quadrature nodes on `(−1/2, 1/2)`.
pub const DEFAULT_QUAD_NODES: usize = 2048;

/// Midpoint nodes `y_i = −1/2 + (i + 1/2)/n`. On a periodic integrand this
/// is the composite trapezoid rule.
pub fn quadrature_nodes(n: usize) -> Vec<f64> {
    (0..n).map(|i| -0.5 + (i as f64 + 0.5) / n as f64).collect()
}

/// Points at which integral-equation residuals are sampled.
pub(crate) fn check_points() -> Vec<f64> {
    (0..13).map(|k| -0.45 + 0.075 * k as f64).collect()
}

/// The sea-sea kernel
/// `K(x) = Σ_{m=1}^{2ℓ−1} Φ′(x; 2imηt) + Σ_{m=0}^{2ℓ−1} Φ′(x; 2i(m+1)ηt)`.
#[derive(Debug, Clone)]
pub struct Kernel {
    mus: Vec<f64>,
    t: f64,
}

impl Kernel {
    pub fn new(p: &ModelParams) -> Self {
        let eta = p.eta();
        let tl = p.two_ell;
        let mus = (1..tl).map(|m| 2.0 * m as f64 * eta).chain((0..tl).map(|m| 2.0 * (m + 1) as f64 * eta)).collect();
        Kernel { mus, t: p.t }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.mus.iter().map(|&mu| phi_prime(x, mu, self.t)).sum()
    }

    /// Coefficient of `e^{2πinx}`.
    pub fn fourier(&self, n: u32) -> f64 {
        if n == 0 {
            return -2.0 * PI * self.mus.len() as f64;
        }
        let u = PI * n as f64 * self.t;
        -2.0 * PI * self.mus.iter().map(|&mu| sinh_ratio(u * (1.0 - 2.0 * mu), u)).sum::<f64>()
    }

    /// `∫ K(x−y) f(y) dy` given `f` sampled at `nodes`.
    pub fn convolve(&self, x: f64, nodes: &[f64], values: &[f64]) -> Result<f64> {
        let mut s = 0.0;
        for (y, v) in nodes.iter().zip(values) {
            s += self.eval(x - y)? * v;
        }
        Ok(s / nodes.len() as f64)
    }
}
