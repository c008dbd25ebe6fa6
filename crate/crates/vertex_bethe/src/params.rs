//! Model parameters `(ℓ, t, η = r′/r, N)` and their admissibility rules.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Parameters of the spin-ℓ model on a row of `n_sites` columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Twice the spin, `2ℓ`.
    pub two_ell: u32,
    /// The modulus is `τ = i/t`.
    pub t: f64,
    pub r: u32,
    pub r_prime: u32,
    pub n_sites: usize,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl ModelParams {
    pub fn new(two_ell: u32, t: f64, r: u32, r_prime: u32, n_sites: usize) -> Result<Self> {
        let p = ModelParams { two_ell, t, r, r_prime, n_sites };
        p.validate()?;
        Ok(p)
    }

    /// Default `(r, r′)` for a spin: `(6, 1)`, `(8, 1)`, `(10, 1)`, ...
    pub fn default_r(two_ell: u32) -> (u32, u32) {
        (2 * two_ell + 4, 1)
    }

    /// Defaults: `t = 2`, the default `(r, r′)`, two sites.
    pub fn defaults(two_ell: u32) -> Result<Self> {
        let (r, rp) = Self::default_r(two_ell);
        Self::new(two_ell, 2.0, r, rp, 2)
    }

    pub fn with_sites(mut self, n_sites: usize) -> Result<Self> {
        self.n_sites = n_sites;
        self.validate()?;
        Ok(self)
    }

    /// Full check, including integrality of `M = Nℓ`.
    pub fn validate(&self) -> Result<()> {
        self.validate_lattice()?;
        self.validate_m()
    }

    pub fn validate_m(&self) -> Result<()> {
        if (self.n_sites as u64 * self.two_ell as u64) % 2 != 0 {
            return Err(Error::Params(format!("Nℓ = {}·{}/2 is not an integer", self.n_sites, self.two_ell)));
        }
        Ok(())
    }

    /// Everything except `Nℓ ∈ ℤ`, which only the Bethe construction needs.
    pub fn validate_lattice(&self) -> Result<()> {
        if self.two_ell == 0 {
            return Err(Error::Params("spin must be positive (2ℓ ≥ 1)".into()));
        }
        if !(self.t > 0.0) || !self.t.is_finite() {
            return Err(Error::Params(format!("t must be positive, got {}", self.t)));
        }
        if self.r == 0 || self.r % 2 != 0 || self.r_prime % 2 == 0 {
            return Err(Error::Params(format!(
                "r = {}, r′ = {} violates the constraint: r is even, r′ is odd",
                self.r, self.r_prime
            )));
        }
        if gcd(self.r, self.r_prime) != 1 {
            return Err(Error::Params(format!("r = {} and r′ = {} are not coprime", self.r, self.r_prime)));
        }
        let bound = 2.0 * (self.two_ell as f64 + 1.0) * self.eta();
        if !(bound < 1.0) {
            return Err(Error::Params(format!("2(2ℓ+1)η = {bound} must be < 1")));
        }
        if self.n_sites == 0 {
            return Err(Error::Params("N must be positive".into()));
        }
        Ok(())
    }

    pub fn ell(&self) -> f64 {
        self.two_ell as f64 / 2.0
    }

    pub fn eta(&self) -> f64 {
        self.r_prime as f64 / self.r as f64
    }

    pub fn tau(&self) -> Complex64 {
        Complex64::new(0.0, 1.0 / self.t)
    }

    /// Local dimension `2ℓ+1`.
    pub fn local_dim(&self) -> usize {
        self.two_ell as usize + 1
    }

    /// Number of Bethe roots `M = Nℓ`.
    pub fn m(&self) -> usize {
        self.n_sites * self.two_ell as usize / 2
    }
}
