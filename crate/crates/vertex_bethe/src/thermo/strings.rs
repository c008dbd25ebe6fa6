//! String hypothesis bookkeeping.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::transfer::string_roots;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Plus,
    Minus,
}

/// Counts `♯(A, ±)` of `A`-strings and their real centers. Negative parity
/// strings sit at imaginary part `t/2`, which is implicit.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StringConfig {
    counts: BTreeMap<(u32, Parity), usize>,
    centers: BTreeMap<(u32, Parity), Vec<f64>>,
}

impl StringConfig {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one string. Zero-length strings are ignored.
    pub fn push(&mut self, length: u32, parity: Parity, center: f64) {
        if length == 0 {
            return;
        }
        *self.counts.entry((length, parity)).or_insert(0) += 1;
        self.centers.entry((length, parity)).or_default().push(center);
    }

    pub fn count(&self, length: u32, parity: Parity) -> usize {
        self.counts.get(&(length, parity)).copied().unwrap_or(0)
    }

    pub fn centers(&self, length: u32, parity: Parity) -> &[f64] {
        self.centers.get(&(length, parity)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn counts(&self) -> impl Iterator<Item = (&(u32, Parity), &usize)> {
        self.counts.iter()
    }

    /// `Σ A·♯(A, ±)`.
    pub fn total_roots(&self) -> usize {
        self.counts.iter().map(|(&(a, _), &n)| a as usize * n).sum()
    }

    /// Ground state: `N/2` strings of length `2ℓ`, parity `+`.
    pub fn ground_state(p: &ModelParams, centers: &[f64]) -> Result<Self> {
        if p.n_sites % 2 != 0 || centers.len() != p.n_sites / 2 {
            return Err(Error::Precondition(format!(
                "ground state needs N even and N/2 centers, got N = {} and {} centers",
                p.n_sites,
                centers.len()
            )));
        }
        let mut s = Self::new();
        for &c in centers {
            s.push(p.two_ell, Parity::Plus, c);
        }
        Ok(s)
    }

    /// Excited state I: `N/2 − 2` sea strings plus one `(2ℓ−1)`- and one
    /// `(2ℓ+1)`-string.
    pub fn excited_one(p: &ModelParams, sea: &[f64], x_minus: f64, x_plus: f64) -> Result<Self> {
        Self::check_sea(p, sea, 2)?;
        let mut s = Self::new();
        for &c in sea {
            s.push(p.two_ell, Parity::Plus, c);
        }
        s.push(p.two_ell - 1, Parity::Plus, x_minus);
        s.push(p.two_ell + 1, Parity::Plus, x_plus);
        Ok(s)
    }

    /// Excited state II: `N/2 − 1` sea strings, one `(2ℓ−1)`-string and one
    /// 1-string of parity `−`.
    pub fn excited_two(p: &ModelParams, sea: &[f64], x_minus: f64, x_zero: f64) -> Result<Self> {
        Self::check_sea(p, sea, 1)?;
        let mut s = Self::new();
        for &c in sea {
            s.push(p.two_ell, Parity::Plus, c);
        }
        s.push(p.two_ell - 1, Parity::Plus, x_minus);
        s.push(1, Parity::Minus, x_zero);
        Ok(s)
    }

    fn check_sea(p: &ModelParams, sea: &[f64], missing: usize) -> Result<()> {
        if p.n_sites % 2 != 0 || p.n_sites / 2 < missing || sea.len() != p.n_sites / 2 - missing {
            return Err(Error::Precondition(format!(
                "need N even and N/2 − {missing} sea centers, got N = {} and {}",
                p.n_sites,
                sea.len()
            )));
        }
        Ok(())
    }

    /// Whether the configuration carries `M = Nℓ` roots.
    pub fn matches_lattice(&self, p: &ModelParams) -> bool {
        self.total_roots() == p.m()
    }

    /// Rapidities `λ = x/(it)` of every string member.
    pub fn roots(&self, p: &ModelParams) -> Vec<Complex64> {
        let mut strings = Vec::new();
        for (&(a, parity), cs) in &self.centers {
            for &c in cs {
                strings.push((a, parity == Parity::Minus, c));
            }
        }
        string_roots(p, &strings)
    }
}
