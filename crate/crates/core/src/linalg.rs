//! Dense complex matrix helpers shared by every module.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const IM: C64 = C64::new(0.0, 1.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn r(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn zeros(n: usize) -> CMat {
    CMat::zeros(n, n)
}

pub fn comm(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub fn anticomm(a: &CMat, b: &CMat) -> CMat {
    a * b + b * a
}

/// Largest entry modulus; the residual norm used throughout.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_vec(v: &[C64]) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn from_rows(rows: &[Vec<C64>]) -> CMat {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMat::from_fn(n, m, |i, j| rows[i][j])
}

pub fn from_real_rows(scale: C64, rows: &[&[f64]]) -> CMat {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMat::from_fn(n, m, |i, j| scale * rows[i][j])
}

pub fn block_diag(blocks: &[CMat]) -> CMat {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = zeros(n);
    let mut off = 0;
    for b in blocks {
        let k = b.nrows();
        out.view_mut((off, off), (k, k)).copy_from(b);
        off += k;
    }
    out
}

/// 2×2 block matrix [[a, b], [c, d]] of equal square blocks.
pub fn block2(a: &CMat, b: &CMat, cc: &CMat, d: &CMat) -> CMat {
    let k = a.nrows();
    let mut out = zeros(2 * k);
    out.view_mut((0, 0), (k, k)).copy_from(a);
    out.view_mut((0, k), (k, k)).copy_from(b);
    out.view_mut((k, 0), (k, k)).copy_from(cc);
    out.view_mut((k, k), (k, k)).copy_from(d);
    out
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn conj(m: &CMat) -> CMat {
    m.map(|z| z.conj())
}

pub fn pauli() -> [CMat; 3] {
    [
        from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]),
        from_rows(&[vec![ZERO, -IM], vec![IM, ZERO]]),
        from_rows(&[vec![ONE, ZERO], vec![ZERO, -ONE]]),
    ]
}

/// ε^{ijk} for indices 0..3.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

pub fn hermiticity_residual(m: &CMat) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn unit_vector(n: usize, i: usize) -> CVec {
    let mut v = CVec::zeros(n);
    v[i] = ONE;
    v
}

pub fn omega(k: [f64; 3], m: f64) -> f64 {
    (k[0] * k[0] + k[1] * k[1] + k[2] * k[2] + m * m).sqrt()
}

/// Complex matrix over a generic real scalar (f64 or dual numbers).
pub type GMat<T> = nalgebra::DMatrix<num_complex::Complex<T>>;
pub type GVec<T> = nalgebra::DVector<num_complex::Complex<T>>;

pub fn gc<T: crate::dual::Real>(z: C64) -> num_complex::Complex<T> {
    num_complex::Complex::new(T::cst(z.re), T::cst(z.im))
}

pub fn greal<T: crate::dual::Real>(x: T) -> num_complex::Complex<T> {
    num_complex::Complex::new(x, T::zero())
}

pub fn glift<T: crate::dual::Real>(m: &CMat) -> GMat<T> {
    m.map(gc::<T>)
}

pub fn geye<T: crate::dual::Real>(n: usize) -> GMat<T> {
    GMat::<T>::identity(n, n)
}

pub fn gscale<T: crate::dual::Real>(m: &GMat<T>, a: T) -> GMat<T> {
    m.map(|z| num_complex::Complex::new(z.re * a, z.im * a))
}

/// Drops all infinitesimal parts.
pub fn gprimal<T: crate::dual::Real>(m: &GMat<T>) -> CMat {
    m.map(|z| c(z.re.primal(), z.im.primal()))
}

pub fn gomega<T: crate::dual::Real>(k: &[T; 3], m: f64) -> T {
    (k[0] * k[0] + k[1] * k[1] + k[2] * k[2] + T::cst(m * m)).sqrt()
}
