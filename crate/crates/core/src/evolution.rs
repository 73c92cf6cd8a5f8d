//! Exact spectral propagators in the canonical (RCQM), FW and Dirac-like
//! representations, the maps between them, and mean values of the
//! conserved quantities.
//!
//! Mode convention: the spectral coefficient at lattice vector k multiplies
//! e^{ik·x}, so the momentum operator −i∇ acts on it as k.

use crate::grid::{GridError, GridState};
use crate::linalg::*;
use crate::report::VerificationReport;
use crate::transitions::{hamiltonian, v_minus, v_plus};
use crate::clifford::gamma_matrices;
use nalgebra::SymmetricEigen;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EvolutionError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("state has {got} components, expected {want}")]
    Components { got: usize, want: usize },
    #[error("unsupported component count {0}; Dirac-like evolution needs 4, 8, 12 or 16")]
    Unsupported(usize),
    #[error("mass must be positive")]
    NonPositiveMass,
    #[error("mass must be non-negative")]
    NegativeMass,
    #[error("unknown representation {0:?}")]
    UnknownRep(String),
}

/// The three representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rep {
    Rcqm,
    Fw,
    Dirac,
}

impl FromStr for Rep {
    type Err = EvolutionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rcqm" | "sf" => Ok(Rep::Rcqm),
            "fw" => Ok(Rep::Fw),
            "dirac" => Ok(Rep::Dirac),
            _ => Err(EvolutionError::UnknownRep(s.to_string())),
        }
    }
}

impl fmt::Display for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rep::Rcqm => "rcqm",
            Rep::Fw => "fw",
            Rep::Dirac => "dirac",
        })
    }
}

fn expect_ncomp(state: &GridState, n: usize) -> Result<(), EvolutionError> {
    if state.ncomp != n {
        return Err(EvolutionError::Components { got: state.ncomp, want: n });
    }
    Ok(())
}

fn dirac_gammas(n: usize) -> Result<[CMat; 4], EvolutionError> {
    gamma_matrices(n).map_err(|_| EvolutionError::Unsupported(n))
}

/// e^{−iω̂t} on every component.
pub fn evolve_sf(state: &GridState, m: f64, t: f64) -> Result<GridState, EvolutionError> {
    if m < 0.0 {
        return Err(EvolutionError::NegativeMass);
    }
    Ok(state
        .fft_forward()
        .scale_modes(|_, k| (-IM * (omega(k, m) * t)).exp())
        .fft_inverse())
}

/// e^{−iΓ⁰ω̂t}: phase e^{−iωt} on the upper half, e^{+iωt} on the lower.
pub fn evolve_fw(state: &GridState, n: usize, m: f64, t: f64) -> Result<GridState, EvolutionError> {
    expect_ncomp(state, n)?;
    if n % 2 != 0 {
        return Err(EvolutionError::Unsupported(n));
    }
    if m < 0.0 {
        return Err(EvolutionError::NegativeMass);
    }
    let h = n / 2;
    Ok(state
        .fft_forward()
        .scale_modes(|cc, k| {
            let s = if cc < h { -1.0 } else { 1.0 };
            (IM * (s * omega(k, m) * t)).exp()
        })
        .fft_inverse())
}

/// Per-mode V⁻(k) e^{−iΓ⁰ωt} V⁺(k).
pub fn evolve_dirac(state: &GridState, n: usize, m: f64, t: f64) -> Result<GridState, EvolutionError> {
    expect_ncomp(state, n)?;
    if m <= 0.0 {
        return Err(EvolutionError::NonPositiveMass);
    }
    let g = dirac_gammas(n)?;
    let h = n / 2;
    Ok(state.apply_multiplier(|k| {
        let w = omega(k, m);
        let ph = CMat::from_fn(n, n, |i, j| {
            if i != j {
                ZERO
            } else if i < h {
                (-IM * (w * t)).exp()
            } else {
                (IM * (w * t)).exp()
            }
        });
        v_minus(&g, &k, m) * ph * v_plus(&g, &k, m)
    }))
}

/// Per-mode exp(−iH(k)t) from the Hermitian eigendecomposition of H(k);
/// the independent cross-check of [`evolve_dirac`]. Also valid at m = 0.
pub fn evolve_dirac_eigen(state: &GridState, n: usize, m: f64, t: f64) -> Result<GridState, EvolutionError> {
    expect_ncomp(state, n)?;
    if m < 0.0 {
        return Err(EvolutionError::NegativeMass);
    }
    let g = dirac_gammas(n)?;
    Ok(state.apply_multiplier(|k| {
        let e = SymmetricEigen::new(hamiltonian::<f64>(&g, &k, m));
        let d = CMat::from_diagonal(&e.eigenvalues.map(|l| (-IM * (l * t)).exp()));
        &e.eigenvectors * d * e.eigenvectors.adjoint()
    }))
}

/// Schrödinger propagator e^{−i(k²/2m)t}.
pub fn evolve_nonrel(state: &GridState, m: f64, t: f64) -> Result<GridState, EvolutionError> {
    if m <= 0.0 {
        return Err(EvolutionError::NonPositiveMass);
    }
    Ok(state
        .fft_forward()
        .scale_modes(|_, k| {
            let k2: f64 = k.iter().map(|x| x * x).sum();
            (-IM * (k2 / (2.0 * m) * t)).exp()
        })
        .fft_inverse())
}

/// v: complex conjugation of the lower half, applied pointwise.
pub fn apply_v(state: &GridState) -> Result<GridState, EvolutionError> {
    let n = state.ncomp;
    if n % 2 != 0 {
        return Err(EvolutionError::Unsupported(n));
    }
    let mut out = state.clone();
    for cc in n / 2..n {
        out.component_mut(cc).iter_mut().for_each(|z| *z = z.conj());
    }
    Ok(out)
}

/// Maps a state between representations: canonical ↔ FW by v in position
/// space, FW → Dirac by V⁻(k) and Dirac → FW by V⁺(k) per mode.
pub fn transform_rep(state: &GridState, from: Rep, to: Rep, n: usize, m: f64) -> Result<GridState, EvolutionError> {
    expect_ncomp(state, n)?;
    if from == to {
        return Ok(state.clone());
    }
    let vm = |s: &GridState| -> Result<GridState, EvolutionError> {
        let g = dirac_gammas(n)?;
        if m <= 0.0 {
            return Err(EvolutionError::NonPositiveMass);
        }
        Ok(s.apply_multiplier(|k| v_minus(&g, &k, m)))
    };
    let vp = |s: &GridState| -> Result<GridState, EvolutionError> {
        let g = dirac_gammas(n)?;
        if m <= 0.0 {
            return Err(EvolutionError::NonPositiveMass);
        }
        Ok(s.apply_multiplier(|k| v_plus(&g, &k, m)))
    };
    match (from, to) {
        (Rep::Rcqm, Rep::Fw) | (Rep::Fw, Rep::Rcqm) => apply_v(state),
        (Rep::Fw, Rep::Dirac) => vm(state),
        (Rep::Dirac, Rep::Fw) => vp(state),
        (Rep::Rcqm, Rep::Dirac) => vm(&apply_v(state)?),
        (Rep::Dirac, Rep::Rcqm) => apply_v(&vp(state)?),
        _ => unreachable!("equal representations handled above"),
    }
}

/// Propagator of the given representation. At t = 0 the input is returned
/// unchanged (after validation) rather than an FFT round trip of it.
pub fn evolve(state: &GridState, rep: Rep, m: f64, t: f64) -> Result<GridState, EvolutionError> {
    let out = match rep {
        Rep::Rcqm => evolve_sf(state, m, t),
        Rep::Fw => evolve_fw(state, state.ncomp, m, t),
        Rep::Dirac => evolve_dirac(state, state.ncomp, m, t),
    }?;
    Ok(if t == 0.0 { state.clone() } else { out })
}

/// One sample of the conserved mean values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConservedEntry {
    pub t: f64,
    pub norm: f64,
    pub p0: f64,
    pub p: [f64; 3],
    pub mean_s3: f64,
}

/// Mean values: norm ∫|f|², P₀ = Σ ω|f̃|², P_l = Σ k_l|f̃|² (both with the
/// Parseval weight ΔV/npts) and ⟨s³⟩ with a momentum-dependent s³(k).
pub fn mean_values(
    state: &GridState,
    m: f64,
    t: f64,
    s3: &(dyn Fn([f64; 3]) -> CMat + Sync),
) -> ConservedEntry {
    let spec = state.fft_forward();
    let npts = state.npts();
    let wgt = state.cell_volume() / npts as f64;
    let (mut norm, mut p0, mut p, mut ms3) = (0.0, 0.0, [0.0; 3], 0.0);
    for i in 0..npts {
        let a = spec.point(i);
        let k = spec.k_at(i);
        let a2 = a.norm_squared();
        norm += a2;
        p0 += omega(k, m) * a2;
        for l in 0..3 {
            p[l] += k[l] * a2;
        }
        ms3 += (a.adjoint() * s3(k) * &a)[(0, 0)].re;
    }
    ConservedEntry { t, norm: norm * wgt, p0: p0 * wgt, p: p.map(|x| x * wgt), mean_s3: ms3 * wgt }
}

/// Time series of [`ConservedEntry`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConservedLog {
    pub entries: Vec<ConservedEntry>,
}

impl ConservedLog {
    pub const HEADER: &'static str = "t,norm,P0,P1,P2,P3,mean_s3";

    pub fn push(&mut self, e: ConservedEntry) {
        self.entries.push(e);
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(Self::HEADER);
        s.push('\n');
        for e in &self.entries {
            s.push_str(&format!(
                "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}\n",
                e.t, e.norm, e.p0, e.p[0], e.p[1], e.p[2], e.mean_s3
            ));
        }
        s
    }

    /// Largest relative deviation of norm and P₀ from their first sample.
    pub fn max_relative_drift(&self) -> f64 {
        let Some(first) = self.entries.first() else { return 0.0 };
        self.entries.iter().fold(0.0f64, |a, e| {
            a.max(((e.norm - first.norm) / first.norm).abs())
                .max(((e.p0 - first.p0) / first.p0).abs())
        })
    }

    /// min over samples of P₀ − m·norm (non-negative when energy is positive).
    pub fn energy_margin(&self, m: f64) -> f64 {
        self.entries.iter().fold(f64::INFINITY, |a, e| a.min(e.p0 - m * e.norm))
    }
}

/// Commuting-diagram check: evolving in the canonical representation and
/// mapping over agrees with mapping first and evolving in the target
/// representation (FW and Dirac-like). Residuals are relative to max|f|.
pub fn cross_rep_equivalence(
    state0: &GridState,
    n: usize,
    m: f64,
    t: f64,
    tol: f64,
) -> Result<VerificationReport, EvolutionError> {
    expect_ncomp(state0, n)?;
    let mut rep = VerificationReport::new(&format!("evolution.N{n}"));
    let scale = state0.max_abs().max(f64::MIN_POSITIVE);
    let f_t = evolve_sf(state0, m, t)?;

    let fw_a = transform_rep(&f_t, Rep::Rcqm, Rep::Fw, n, m)?;
    let fw_b = evolve_fw(&transform_rep(state0, Rep::Rcqm, Rep::Fw, n, m)?, n, m, t)?;
    rep.check("diagram.fw", "v e^{-iωt} f = e^{-iΓ⁰ωt} v f", fw_a.max_abs_diff(&fw_b) / scale, tol);

    let d_a = transform_rep(&f_t, Rep::Rcqm, Rep::Dirac, n, m)?;
    let psi0 = transform_rep(state0, Rep::Rcqm, Rep::Dirac, n, m)?;
    let d_b = evolve_dirac(&psi0, n, m, t)?;
    rep.check("diagram.dirac", "W e^{-iωt} f = e^{-iHt} W f", d_a.max_abs_diff(&d_b) / scale, tol);

    let d_c = evolve_dirac_eigen(&psi0, n, m, t)?;
    rep.check("dirac.eigen", "factorized vs eigendecomposed Dirac propagator", d_b.max_abs_diff(&d_c) / scale, tol);

    let back = transform_rep(&psi0, Rep::Dirac, Rep::Rcqm, n, m)?;
    rep.check("roundtrip", "W⁻¹W = I on grid states", back.max_abs_diff(state0) / scale, tol);
    Ok(rep)
}

/// Per-mode phase difference |arg(ψ_rel e^{imt}) − arg(ψ_nr)| after time t
/// for a state populated with the given 1D lattice modes, by running both
/// propagators. Returns (|k|, phase error) pairs.
pub fn nonrel_phase_errors(m: f64, t: f64, length: f64, n: usize, modes: &[usize]) -> Result<Vec<(f64, f64)>, EvolutionError> {
    let mut spec = GridState::zeros([n, 1, 1], [length, 1.0, 1.0], 1)?;
    for &j in modes {
        spec.data[j] = ONE;
    }
    let f = spec.fft_inverse();
    let rel = evolve_sf(&f, m, t)?.fft_forward();
    let nr = evolve_nonrel(&f, m, t)?.fft_forward();
    let rest = (IM * (m * t)).exp();
    Ok(modes
        .iter()
        .map(|&j| {
            let ratio = rel.data[j] * rest / nr.data[j];
            (spec.k_at(j)[0].abs(), ratio.arg().abs())
        })
        .collect())
}

/// Least-squares slope of log(err) against log|k|.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Gaussian packet Σ_c w_c exp(−|x−x0|²/(2σ²) + i k0·x) sampled on a grid
/// (periodic images ignored; keep σ well inside the box).
pub fn gaussian_packet(
    dims: [usize; 3],
    lengths: [f64; 3],
    weights: &[C64],
    center: [f64; 3],
    width: f64,
    k0: [f64; 3],
) -> Result<GridState, EvolutionError> {
    Ok(GridState::from_fn(dims, lengths, weights.len(), |x| {
        let mut r2 = 0.0;
        let mut ph = 0.0;
        for a in 0..3 {
            if dims[a] > 1 {
                let d = x[a] - center[a];
                r2 += d * d;
                ph += k0[a] * x[a];
            }
        }
        let env = (-r2 / (2.0 * width * width)).exp();
        let z = (IM * ph).exp() * env;
        weights.iter().map(|w| w * z).collect()
    })?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn packet(n: usize, ncomp: usize) -> GridState {
        let w: Vec<C64> = (0..ncomp).map(|i| c(1.0 / (1.0 + i as f64), 0.3 * i as f64)).collect();
        gaussian_packet([n, 1, 1], [40.0, 1.0, 1.0], &w, [20.0, 0.0, 0.0], 2.0, [0.7, 0.0, 0.0]).unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let f = packet(64, 4);
        assert!(evolve_sf(&f, 1.0, 0.0).unwrap().max_abs_diff(&f) < 1e-14);
        assert!(evolve_dirac(&f, 4, 1.0, 0.0).unwrap().max_abs_diff(&f) < 1e-13);
    }

    #[test]
    fn single_mode_phase() {
        let (n, l, m, t) = (16, 2.0 * PI, 1.3, 2.7);
        let f = GridState::from_fn([n, 1, 1], [l, 1.0, 1.0], 1, |x| vec![(IM * 3.0 * x[0]).exp()]).unwrap();
        let g = evolve_sf(&f, m, t).unwrap();
        let ph = (-IM * (omega([3.0, 0.0, 0.0], m) * t)).exp();
        assert!(g.max_abs_diff(&f.scaled(ph)) < 1e-13);
    }

    #[test]
    fn norm_conserved_long_time() {
        let f = packet(128, 1);
        let g = evolve_sf(&f, 1.0, 100.0).unwrap();
        assert!((g.norm_sq() - f.norm_sq()).abs() < 1e-13 * f.norm_sq());
    }

    #[test]
    fn fw_upper_block_matches_sf_and_lower_gets_opposite_phase() {
        let f = packet(64, 2);
        let g = evolve_fw(&f, 2, 1.0, 3.0).unwrap();
        let up = evolve_sf(&f, 1.0, 3.0).unwrap();
        let down = evolve_sf(&f, 1.0, -3.0).unwrap();
        assert!(g.component(0).iter().zip(up.component(0)).all(|(a, b)| (a - b).norm() < 1e-13));
        assert!(g.component(1).iter().zip(down.component(1)).all(|(a, b)| (a - b).norm() < 1e-13));
    }

    #[test]
    fn dirac_rest_mode_is_gamma0_phase() {
        let f = GridState::from_fn([8, 1, 1], [1.0; 3], 4, |_| vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0), c(0.5, -0.5)]).unwrap();
        let (m, t) = (0.8, 1.1);
        let g = evolve_dirac(&f, 4, m, t).unwrap();
        for cc in 0..4 {
            let s = if cc < 2 { -1.0 } else { 1.0 };
            let ph = (IM * (s * m * t)).exp();
            assert!((g.component(cc)[3] - f.component(cc)[3] * ph).norm() < 1e-13);
        }
    }

    #[test]
    fn roundtrips() {
        let f = packet(64, 8);
        for (a, b) in [(Rep::Rcqm, Rep::Fw), (Rep::Fw, Rep::Dirac), (Rep::Rcqm, Rep::Dirac)] {
            let there = transform_rep(&f, a, b, 8, 1.0).unwrap();
            let back = transform_rep(&there, b, a, 8, 1.0).unwrap();
            assert!(back.max_abs_diff(&f) < 1e-12, "{a} {b}");
        }
        let z = GridState::zeros([8, 1, 1], [1.0; 3], 4).unwrap();
        assert_eq!(transform_rep(&z, Rep::Rcqm, Rep::Dirac, 4, 1.0).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn commuting_diagram_small() {
        let f = packet(64, 4);
        let rep = cross_rep_equivalence(&f, 4, 1.0, 5.0, 1e-10).unwrap();
        assert!(rep.pass, "{}", rep.to_json());
        let rep0 = cross_rep_equivalence(&f, 4, 1.0, 0.0, 1e-14).unwrap();
        assert!(rep0.pass, "{}", rep0.to_json());
    }

    #[test]
    fn single_mode_energy_and_momentum() {
        let l = 2.0 * PI;
        let f = GridState::from_fn([16, 1, 1], [l, 1.0, 1.0], 1, |x| vec![(IM * 2.0 * x[0]).exp() / l.sqrt()]).unwrap();
        let e = mean_values(&f, 1.5, 0.0, &|_| zeros(1));
        assert!((e.norm - 1.0).abs() < 1e-13);
        assert!((e.p0 - omega([2.0, 0.0, 0.0], 1.5)).abs() < 1e-12);
        assert!((e.p[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn standing_wave_has_no_momentum() {
        let f = GridState::from_fn([32, 1, 1], [2.0 * PI, 1.0, 1.0], 1, |x| vec![r((3.0 * x[0]).cos())]).unwrap();
        let e = mean_values(&f, 1.0, 0.0, &|_| zeros(1));
        assert!(e.p[0].abs() < 1e-13);
    }

    #[test]
    fn nonrel_remainder_bound() {
        let (m, t) = (1.0, 50.0);
        let l = 2.0 * PI / 0.005;
        let pts = nonrel_phase_errors(m, t, l, 64, &[1, 2, 5, 10]).unwrap();
        for (k, err) in pts {
            assert!(k <= 0.05 * m + 1e-12);
            assert!(err <= k.powi(4) / (8.0 * m.powi(3)) * t * (1.0 + 1e-6), "{k} {err}");
        }
    }

    #[test]
    fn bad_inputs() {
        let f = packet(8, 3);
        assert!(matches!(evolve_dirac(&f, 4, 1.0, 1.0), Err(EvolutionError::Components { .. })));
        assert!(matches!(evolve_fw(&f, 3, 1.0, 1.0), Err(EvolutionError::Unsupported(3))));
        assert!(evolve_sf(&f, -1.0, 1.0).is_err());
        assert!(evolve_nonrel(&f, 0.0, 1.0).is_err());
        assert!("xyz".parse::<Rep>().is_err());
        assert_eq!("Dirac".parse::<Rep>(), Ok(Rep::Dirac));
    }
}
