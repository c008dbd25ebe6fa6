//! Small dense linear-algebra helpers over `Complex64`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn kron_vec(a: &CVec, b: &CVec) -> CVec {
    a.kronecker(b)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Pauli matrices `σ⁰..σ³`.
pub fn pauli() -> [CMat; 4] {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    [
        CMat::from_row_slice(2, 2, &[o, z, z, o]),
        CMat::from_row_slice(2, 2, &[z, o, o, z]),
        CMat::from_row_slice(2, 2, &[z, -i, i, z]),
        CMat::from_row_slice(2, 2, &[o, z, z, -o]),
    ]
}

/// Largest entry modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_vec(v: &CVec) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Least-squares scalar `s` minimising `‖a − s b‖`, and the relative residual.
pub fn fit_scalar(a: &CMat, b: &CMat) -> (Complex64, f64) {
    let num: Complex64 = b.iter().zip(a.iter()).map(|(x, y)| x.conj() * y).sum();
    let den: f64 = b.iter().map(|x| x.norm_sqr()).sum();
    let s = num / den;
    let res = max_abs(&(a - b * s)) / max_abs(a).max(f64::MIN_POSITIVE);
    (s, res)
}

pub fn fit_scalar_vec(a: &CVec, b: &CVec) -> (Complex64, f64) {
    let num: Complex64 = b.iter().zip(a.iter()).map(|(x, y)| x.conj() * y).sum();
    let den: f64 = b.iter().map(|x| x.norm_sqr()).sum();
    let s = num / den;
    let res = (a - b * s).norm() / a.norm().max(f64::MIN_POSITIVE);
    (s, res)
}

/// Eigenvalues of a complex square matrix from its Schur form.
pub fn eigenvalues(m: &CMat) -> Vec<Complex64> {
    let schur = m.clone().schur();
    let (_, t) = schur.unpack();
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}

/// Ratio of largest to smallest singular value.
pub fn condition_number(m: &CMat) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    max / min
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schur_eigenvalues_of_triangular_and_rotation() {
        let m = CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let mut ev = eigenvalues(&m);
        ev.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((ev[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((ev[1] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn pauli_algebra() {
        let s = pauli();
        let prod = &s[1] * &s[2];
        assert!(max_abs(&(prod - &s[3] * c(0.0, 1.0))) < 1e-15);
    }
}
