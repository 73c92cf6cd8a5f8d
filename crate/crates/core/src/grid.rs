//! Periodic grid states and their discrete Fourier transforms.

use crate::linalg::*;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::PI;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("grid dimensions must be positive")]
    EmptyGrid,
    #[error("box lengths must be positive and finite")]
    BadBox,
    #[error("data length {got} does not match ncomp × points = {want}")]
    DataLength { got: usize, want: usize },
    #[error("state shapes differ")]
    ShapeMismatch,
}

/// N-component complex field on a periodic box.
///
/// Data are component-major: `data[c * npts + idx]` with the spatial index
/// row-major and the last axis fastest. A 1D grid is `[n, 1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridState {
    pub dims: [usize; 3],
    pub lengths: [f64; 3],
    pub ncomp: usize,
    pub data: Vec<C64>,
}

impl GridState {
    pub fn zeros(dims: [usize; 3], lengths: [f64; 3], ncomp: usize) -> Result<Self, GridError> {
        if dims.iter().any(|&d| d == 0) || ncomp == 0 {
            return Err(GridError::EmptyGrid);
        }
        if lengths.iter().any(|&l| !(l.is_finite() && l > 0.0)) {
            return Err(GridError::BadBox);
        }
        let n = dims.iter().product::<usize>() * ncomp;
        Ok(Self { dims, lengths, ncomp, data: vec![ZERO; n] })
    }

    pub fn from_data(
        dims: [usize; 3],
        lengths: [f64; 3],
        ncomp: usize,
        data: Vec<C64>,
    ) -> Result<Self, GridError> {
        let mut g = Self::zeros(dims, lengths, ncomp)?;
        if data.len() != g.data.len() {
            return Err(GridError::DataLength { got: data.len(), want: g.data.len() });
        }
        g.data = data;
        Ok(g)
    }

    /// Samples `f(x)` at the grid points x_i = j L_i / n_i.
    pub fn from_fn(
        dims: [usize; 3],
        lengths: [f64; 3],
        ncomp: usize,
        f: impl Fn([f64; 3]) -> Vec<C64> + Sync,
    ) -> Result<Self, GridError> {
        let mut g = Self::zeros(dims, lengths, ncomp)?;
        let npts = g.npts();
        let vals: Vec<Vec<C64>> = (0..npts).into_par_iter().map(|i| f(g.position(i))).collect();
        for (i, v) in vals.iter().enumerate() {
            assert_eq!(v.len(), ncomp, "sample function returned wrong component count");
            for (cc, z) in v.iter().enumerate() {
                g.data[cc * npts + i] = *z;
            }
        }
        Ok(g)
    }

    pub fn npts(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn ndim(&self) -> usize {
        self.dims.iter().filter(|&&d| d > 1).count().max(1)
    }

    pub fn cell_volume(&self) -> f64 {
        (0..3).map(|i| self.lengths[i] / self.dims[i] as f64).product()
    }

    pub fn same_shape(&self, other: &GridState) -> bool {
        self.dims == other.dims && self.lengths == other.lengths && self.ncomp == other.ncomp
    }

    pub fn unravel(&self, idx: usize) -> [usize; 3] {
        let [_, n2, n3] = self.dims;
        [idx / (n2 * n3), (idx / n3) % n2, idx % n3]
    }

    pub fn position(&self, idx: usize) -> [f64; 3] {
        let j = self.unravel(idx);
        std::array::from_fn(|a| j[a] as f64 * self.lengths[a] / self.dims[a] as f64)
    }

    /// Wavenumbers along one axis in FFT order.
    pub fn wavenumbers(&self, axis: usize) -> Vec<f64> {
        let n = self.dims[axis];
        let dk = 2.0 * PI / self.lengths[axis];
        (0..n)
            .map(|j| {
                let s = if j < n.div_ceil(2) { j as i64 } else { j as i64 - n as i64 };
                s as f64 * dk
            })
            .collect()
    }

    pub fn k_at(&self, idx: usize) -> [f64; 3] {
        let j = self.unravel(idx);
        std::array::from_fn(|a| {
            let n = self.dims[a];
            let s = if j[a] < n.div_ceil(2) { j[a] as i64 } else { j[a] as i64 - n as i64 };
            s as f64 * 2.0 * PI / self.lengths[a]
        })
    }

    /// Index of the mode −k. Nyquist planes map to themselves.
    pub fn neg_index(&self, idx: usize) -> usize {
        let j = self.unravel(idx);
        let [_, n2, n3] = self.dims;
        let nj: [usize; 3] = std::array::from_fn(|a| (self.dims[a] - j[a]) % self.dims[a]);
        nj[0] * n2 * n3 + nj[1] * n3 + nj[2]
    }

    /// True when the mode lies on a Nyquist plane of an even axis.
    pub fn on_nyquist(&self, idx: usize) -> bool {
        let j = self.unravel(idx);
        (0..3).any(|a| self.dims[a] > 1 && self.dims[a] % 2 == 0 && j[a] == self.dims[a] / 2)
    }

    /// Multiplies component c at point/mode idx by f(c, k_idx), in place of
    /// a full matrix multiplier when the operator is diagonal.
    pub fn scale_modes(&self, f: impl Fn(usize, [f64; 3]) -> C64 + Sync) -> GridState {
        let npts = self.npts();
        let mut g = self.clone();
        g.data.par_chunks_mut(npts).enumerate().for_each(|(cc, comp)| {
            for (i, z) in comp.iter_mut().enumerate() {
                *z *= f(cc, self.k_at(i));
            }
        });
        g
    }

    pub fn component(&self, c: usize) -> &[C64] {
        let n = self.npts();
        &self.data[c * n..(c + 1) * n]
    }

    pub fn component_mut(&mut self, c: usize) -> &mut [C64] {
        let n = self.npts();
        &mut self.data[c * n..(c + 1) * n]
    }

    pub fn point(&self, idx: usize) -> CVec {
        let n = self.npts();
        CVec::from_fn(self.ncomp, |c, _| self.data[c * n + idx])
    }

    /// ΔV Σ |f|².
    pub fn norm_sq(&self) -> f64 {
        self.cell_volume() * self.data.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    pub fn max_abs_diff(&self, other: &GridState) -> f64 {
        assert!(self.same_shape(other), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |a, (x, y)| a.max((x - y).norm()))
    }

    pub fn max_abs(&self) -> f64 {
        max_abs_vec(&self.data)
    }

    pub fn scaled(&self, a: C64) -> GridState {
        let mut g = self.clone();
        g.data.iter_mut().for_each(|z| *z *= a);
        g
    }

    /// Pointwise map f(x, ψ(x)) in position space.
    pub fn map_points(&self, f: impl Fn([f64; 3], &CVec) -> CVec + Sync) -> GridState {
        let npts = self.npts();
        let vals: Vec<CVec> = (0..npts)
            .into_par_iter()
            .map(|i| f(self.position(i), &self.point(i)))
            .collect();
        self.scatter(&vals)
    }

    /// Per-mode map on the spectral coefficients.
    pub fn map_modes(&self, f: impl Fn([f64; 3], &CVec) -> CVec + Sync) -> GridState {
        let npts = self.npts();
        let vals: Vec<CVec> = (0..npts)
            .into_par_iter()
            .map(|i| f(self.k_at(i), &self.point(i)))
            .collect();
        self.scatter(&vals)
    }

    fn scatter(&self, vals: &[CVec]) -> GridState {
        let npts = self.npts();
        let ncomp = vals.first().map_or(self.ncomp, |v| v.len());
        let mut data = vec![ZERO; npts * ncomp];
        for (i, v) in vals.iter().enumerate() {
            for c in 0..ncomp {
                data[c * npts + i] = v[c];
            }
        }
        GridState { dims: self.dims, lengths: self.lengths, ncomp, data }
    }

    /// Unnormalized forward DFT with kernel e^{−ik·x} applied to every component.
    pub fn fft_forward(&self) -> GridState {
        let mut g = self.clone();
        fft_inplace(&mut g, false);
        g
    }

    /// Inverse of `fft_forward`.
    pub fn fft_inverse(&self) -> GridState {
        let mut g = self.clone();
        fft_inplace(&mut g, true);
        let s = 1.0 / self.npts() as f64;
        g.data.par_iter_mut().for_each(|z| *z *= s);
        g
    }

    /// Transform, multiply each mode by M(k), transform back.
    pub fn apply_multiplier(&self, m: impl Fn([f64; 3]) -> CMat + Sync) -> GridState {
        self.fft_forward().map_modes(|k, a| m(k) * a).fft_inverse()
    }

    /// Discrete analogue of ∫ f† g d³x.
    pub fn inner(&self, other: &GridState) -> C64 {
        assert!(self.same_shape(other));
        self.cell_volume() * self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum::<C64>()
    }
}

fn fft_inplace(g: &mut GridState, inverse: bool) {
    let dims = g.dims;
    let npts = g.npts();
    let mut planner = FftPlanner::<f64>::new();
    let plans: Vec<Option<Arc<dyn Fft<f64>>>> = dims
        .iter()
        .map(|&n| {
            (n > 1).then(|| if inverse { planner.plan_fft_inverse(n) } else { planner.plan_fft_forward(n) })
        })
        .collect();
    for c in 0..g.ncomp {
        let comp = &mut g.data[c * npts..(c + 1) * npts];
        for axis in 0..3 {
            if let Some(plan) = &plans[axis] {
                fft_axis(comp, dims, axis, plan);
            }
        }
    }
}

fn fft_axis(data: &mut [C64], dims: [usize; 3], axis: usize, plan: &Arc<dyn Fft<f64>>) {
    let n = dims[axis];
    let stride: usize = dims[axis + 1..].iter().product();
    if stride == 1 {
        data.par_chunks_mut(n).for_each(|line| plan.process(line));
        return;
    }
    let block = n * stride;
    data.par_chunks_mut(block).for_each(|blk| {
        let mut line = vec![ZERO; n];
        for s in 0..stride {
            for j in 0..n {
                line[j] = blk[j * stride + s];
            }
            plan.process(&mut line);
            for j in 0..n {
                blk[j * stride + s] = line[j];
            }
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_wave_lands_on_one_mode() {
        let l = 2.0 * PI;
        let g = GridState::from_fn([4, 8, 2], [l, l, l], 1, |x| {
            vec![(IM * (x[0] * 1.0 - x[1] * 3.0)).exp()]
        })
        .unwrap();
        let s = g.fft_forward();
        let npts = g.npts();
        for i in 0..npts {
            let k = s.k_at(i);
            let expect = if k == [1.0, -3.0, 0.0] { npts as f64 } else { 0.0 };
            assert!((s.data[i] - r(expect)).norm() < 1e-10, "{k:?}");
        }
        assert!(s.fft_inverse().max_abs_diff(&g) < 1e-14);
    }

    #[test]
    fn wavenumbers_fft_order() {
        let g = GridState::zeros([4, 1, 1], [2.0 * PI, 1.0, 1.0], 1).unwrap();
        assert_eq!(g.wavenumbers(0), vec![0.0, 1.0, -2.0, -1.0]);
        assert_eq!(g.k_at(3), [-1.0, 0.0, 0.0]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(GridState::zeros([0, 1, 1], [1.0; 3], 1), Err(GridError::EmptyGrid));
        assert_eq!(GridState::zeros([1, 1, 1], [0.0, 1.0, 1.0], 1), Err(GridError::BadBox));
        assert!(GridState::from_data([2, 1, 1], [1.0; 3], 1, vec![ZERO]).is_err());
    }

    #[test]
    fn negation_and_nyquist() {
        let g = GridState::zeros([4, 3, 1], [2.0 * PI, 2.0 * PI, 1.0], 1).unwrap();
        for i in 0..g.npts() {
            let (k, nk) = (g.k_at(i), g.k_at(g.neg_index(i)));
            if g.on_nyquist(i) {
                assert_eq!(g.unravel(g.neg_index(i))[0], 2);
            } else {
                assert_eq!([-k[0], -k[1], -k[2]], nk);
            }
        }
        assert!(g.on_nyquist(2 * 3));
        assert!(!g.on_nyquist(1));
    }

    #[test]
    fn parseval() {
        let g = GridState::from_fn([16, 1, 1], [3.0, 1.0, 1.0], 2, |x| {
            vec![c(x[0].sin(), 0.3), c(x[0] * x[0], -x[0])]
        })
        .unwrap();
        let s = g.fft_forward();
        let lhs = g.data.iter().map(|z| z.norm_sqr()).sum::<f64>();
        let rhs = s.data.iter().map(|z| z.norm_sqr()).sum::<f64>() / 16.0;
        assert!((lhs - rhs).abs() < 1e-11 * lhs);
    }
}
