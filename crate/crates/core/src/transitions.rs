//! Transition operators between the canonical, FW and Dirac-like
//! representations, and the spin operators they induce.
//!
//! Naming follows V∓(k) = (∓Γ·k + ω + m)/√(2ω(ω+m)): the Dirac-like
//! amplitude is ψ = V⁻φ and φ = V⁺ψ for an FW amplitude φ, so that
//! V⁻(Γ⁰ω)V⁺ = H(k) = Γ⁰(Γ·k + m).

use crate::clifford::{gamma_matrices, UnsupportedDimension};
use crate::dual::{Hd, Real};
use crate::kspace_ops::{KMatrixFn, HMat};
use crate::linalg::*;
use crate::report::VerificationReport;
use crate::rlinear::{v_operator, RLinearOp};
use crate::spin_algebra::{check_su2, multiplet_spin, SpinConfig, SpinTriple};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TransitionError {
    #[error(transparent)]
    Dimension(#[from] UnsupportedDimension),
    #[error("mass must be positive")]
    NonPositiveMass,
    #[error("configuration must be particle blocks followed by the same antiparticle blocks")]
    Unpaired,
}

/// Σ_j Γ^j k^j.
pub fn gamma_dot<T: Real>(gam: &[CMat; 4], k: &[T; 3]) -> GMat<T> {
    let mut acc = GMat::<T>::zeros(gam[0].nrows(), gam[0].ncols());
    for j in 0..3 {
        acc += gscale(&glift::<T>(&gam[j + 1]), k[j]);
    }
    acc
}

/// H(k) = Γ⁰(Γ·k + m).
pub fn hamiltonian<T: Real>(gam: &[CMat; 4], k: &[T; 3], m: f64) -> GMat<T> {
    let n = gam[0].nrows();
    let inner = gamma_dot(gam, k) + gscale(&geye::<T>(n), T::cst(m));
    glift::<T>(&gam[0]) * inner
}

/// V^sign with sign = −1 for V⁻ and +1 for V⁺.
pub fn v_sign<T: Real>(gam: &[CMat; 4], k: &[T; 3], m: f64, sign: f64) -> GMat<T> {
    let n = gam[0].nrows();
    let w = gomega(k, m);
    let big = w + T::cst(m);
    let norm = T::cst(1.0) / (T::cst(2.0) * w * big).sqrt();
    let num = gscale(&gamma_dot(gam, k), T::cst(sign)) + gscale(&geye::<T>(n), big);
    gscale(&num, norm)
}

pub fn v_minus<T: Real>(gam: &[CMat; 4], k: &[T; 3], m: f64) -> GMat<T> {
    v_sign(gam, k, m, -1.0)
}

pub fn v_plus<T: Real>(gam: &[CMat; 4], k: &[T; 3], m: f64) -> GMat<T> {
    v_sign(gam, k, m, 1.0)
}

/// V⁺ and V⁻ for one dimension and mass.
#[derive(Clone)]
pub struct TransitionPair {
    pub n: usize,
    pub m: f64,
    pub gammas: [CMat; 4],
    pub vplus: KMatrixFn,
    pub vminus: KMatrixFn,
}

impl TransitionPair {
    pub fn vplus_at(&self, k: [f64; 3]) -> CMat {
        v_plus(&self.gammas, &k, self.m)
    }

    pub fn vminus_at(&self, k: [f64; 3]) -> CMat {
        v_minus(&self.gammas, &k, self.m)
    }

    pub fn hamiltonian_at(&self, k: [f64; 3]) -> CMat {
        hamiltonian(&self.gammas, &k, self.m)
    }
}

pub fn fw_transition(n: usize, m: f64) -> Result<TransitionPair, TransitionError> {
    if m <= 0.0 {
        return Err(TransitionError::NonPositiveMass);
    }
    let gammas = gamma_matrices(n)?;
    let (g1, g2) = (gammas.clone(), gammas.clone());
    Ok(TransitionPair {
        n,
        m,
        gammas,
        vplus: Arc::new(move |k: &[Hd; 3]| -> HMat { v_plus(&g1, k, m) }),
        vminus: Arc::new(move |k: &[Hd; 3]| -> HMat { v_minus(&g2, k, m) }),
    })
}

/// W = V⁻(k) ∘ v at fixed k; maps canonical amplitudes to Dirac-like ones.
pub fn w_operator(n: usize, k: [f64; 3], m: f64) -> Result<RLinearOp, TransitionError> {
    let pair = fw_transition(n, m)?;
    let v = v_operator(n).expect("supported dimensions are even");
    Ok(&RLinearOp::linear(pair.vminus_at(k)) * &v)
}

/// W⁻¹ = v ∘ V⁺(k).
pub fn w_inverse(n: usize, k: [f64; 3], m: f64) -> Result<RLinearOp, TransitionError> {
    let pair = fw_transition(n, m)?;
    let v = v_operator(n).expect("supported dimensions are even");
    Ok(&v * &RLinearOp::linear(pair.vplus_at(k)))
}

/// FW spin diag(s, s) for a paired configuration.
pub fn fw_spin(config: &SpinConfig) -> Result<SpinTriple, TransitionError> {
    let half = config.paired_half().ok_or(TransitionError::Unpaired)?;
    let s = multiplet_spin(&half);
    Ok(s.map(|x| block_diag(&[x.clone(), x.clone()])))
}

/// s_D^j(k) = V⁻(k) s_FW^j V⁺(k) as functions of momentum.
pub fn dirac_spin_fns(config: &SpinConfig, m: f64) -> Result<[KMatrixFn; 3], TransitionError> {
    let sfw = fw_spin(config)?;
    let pair = fw_transition(config.dim(), m)?;
    Ok(std::array::from_fn(|j| {
        let s: HMat = glift(&sfw.s[j]);
        let (vm, vp) = (pair.vminus.clone(), pair.vplus.clone());
        let f: KMatrixFn = Arc::new(move |k| vm(k) * &s * vp(k));
        f
    }))
}

/// s_D(k) at a fixed momentum.
pub fn dirac_spin_computed(config: &SpinConfig, k: [f64; 3], m: f64) -> Result<SpinTriple, TransitionError> {
    let sfw = fw_spin(config)?;
    let pair = fw_transition(config.dim(), m)?;
    let (vm, vp) = (pair.vminus_at(k), pair.vplus_at(k));
    Ok(sfw.map(|s| &vm * s * &vp))
}

/// Four-component spin s − γ×∇/(2ω) + ∇×(s×∇)/(ω(ω+m)) with ∇ ↦ ik,
/// s = (i/4)[γ^l, γ^n].
pub fn dirac_spin_nonlocal4(k: [f64; 3], m: f64) -> SpinTriple {
    let g = gamma_matrices(4).expect("4 is supported");
    let s: [CMat; 3] = std::array::from_fn(|a| {
        let (b, cc) = ((a + 1) % 3, (a + 2) % 3);
        comm(&g[b + 1], &g[cc + 1]) * c(0.0, 0.25)
    });
    let w = omega(k, m);
    let k2: f64 = k.iter().map(|x| x * x).sum();
    let sk = &s[0] * r(k[0]) + &s[1] * r(k[1]) + &s[2] * r(k[2]);
    let out: [CMat; 3] = std::array::from_fn(|a| {
        let mut gxk = zeros(4);
        for b in 0..3 {
            for cc in 0..3 {
                let e = levi_civita(a, b, cc);
                if e != 0.0 {
                    gxk += &g[b + 1] * r(e * k[cc]);
                }
            }
        }
        // k × (s × k) = k² s − k (k·s)
        let kxsxk = &s[a] * r(k2) - &sk * r(k[a]);
        &s[a] - gxk * c(0.0, 1.0 / (2.0 * w)) - kxsxk * r(1.0 / (w * (w + m)))
    });
    SpinTriple { s: out }
}

/// Inverse, adjoint and similarity identities of V± at the given momenta.
pub fn transition_suite(n: usize, m: f64, samples: &[[f64; 3]], tol: f64) -> Result<VerificationReport, TransitionError> {
    let pair = fw_transition(n, m)?;
    let mut rep = VerificationReport::new(&format!("transitions.N{n}"));
    let v = v_operator(n).expect("even");
    rep.check(
        &format!("v{n}.involution"),
        "v v = I",
        (&v * &v).max_abs_diff(&RLinearOp::identity(n)),
        tol,
    );
    rep.check(&format!("v{n}.self_adjoint"), "v^dagger = v", v.adjoint().max_abs_diff(&v), tol);
    let (mut inv, mut adj, mut sim, mut sim_rev, mut norm, mut w_inv) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let g0 = &pair.gammas[0];
    for &k in samples {
        let (vm, vp) = (pair.vminus_at(k), pair.vplus_at(k));
        let id = eye(n);
        inv = inv.max(max_abs(&(&vm * &vp - &id))).max(max_abs(&(&vp * &vm - &id)));
        adj = adj.max(max_abs(&(&vm - vp.adjoint())));
        let w = omega(k, m);
        let h = pair.hamiltonian_at(k);
        let fw_h = g0 * r(w);
        sim = sim.max(max_abs(&(&vm * &fw_h * &vp - &h)) / w);
        let kneg = k.map(|x| -x);
        sim_rev = sim_rev.max(max_abs(&(&vp * &fw_h * &vm - pair.hamiltonian_at(kneg))) / w);
        let k2: f64 = k.iter().map(|x| x * x).sum();
        norm = norm.max(((w + m).powi(2) + k2 - 2.0 * w * (w + m)).abs() / (2.0 * w * (w + m)));
        let wo = w_operator(n, k, m)?;
        let wi = w_inverse(n, k, m)?;
        w_inv = w_inv
            .max((&wo * &wi).max_abs_diff(&RLinearOp::identity(n)))
            .max((&wi * &wo).max_abs_diff(&RLinearOp::identity(n)));
    }
    rep.check(&format!("V{n}.inverse"), "V^- V^+ = V^+ V^- = I", inv, tol);
    rep.check(&format!("V{n}.adjoint"), "V^- = (V^+)^dagger", adj, tol);
    rep.check(
        &format!("V{n}.similarity"),
        "V^- (G0 omega) V^+ = G0 (G.k + m)",
        sim,
        tol,
    );
    rep.check(
        &format!("V{n}.similarity_reflected"),
        "V^+ (G0 omega) V^- = G0 (-G.k + m)",
        sim_rev,
        tol,
    );
    rep.check(&format!("V{n}.normalization"), "(w+m)^2 + k^2 = 2w(w+m)", norm, tol);
    rep.check(&format!("W{n}.inverse"), "W W^-1 = W^-1 W = 1", w_inv, tol);
    Ok(rep)
}

/// SU(2) closure of s_D(k) and [s_D(k), H(k)] = 0.
pub fn dirac_spin_suite(config: &SpinConfig, m: f64, samples: &[[f64; 3]], tol: f64) -> Result<VerificationReport, TransitionError> {
    let n = config.dim();
    let pair = fw_transition(n, m)?;
    let mut rep = VerificationReport::new(&format!("dirac_spin.{config}"));
    let (mut su2, mut herm, mut comm_h, mut rest) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let sfw = fw_spin(config)?;
    for &k in samples {
        let sd = dirac_spin_computed(config, k, m)?;
        let r2 = check_su2(&sd, tol);
        su2 = su2.max(r2.checks[0].residual);
        herm = herm.max(r2.checks[1].residual);
        let h = pair.hamiltonian_at(k);
        let w = omega(k, m);
        for j in 0..3 {
            comm_h = comm_h.max(max_abs(&comm(&sd.s[j], &h)) / w);
        }
    }
    let s0 = dirac_spin_computed(config, [0.0; 3], m)?;
    for j in 0..3 {
        rest = rest.max(max_abs(&(&s0.s[j] - &sfw.s[j])));
    }
    rep.check("dirac_spin.su2", "[s_D^j, s_D^l] = i eps s_D^n", su2, tol);
    rep.check("dirac_spin.hermitian", "s_D Hermitian", herm, tol);
    rep.check("dirac_spin.commutes_with_H", "[s_D(k), H(k)] = 0", comm_h, tol);
    rep.check("dirac_spin.rest", "s_D(0) = s_FW", rest, tol);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kspace_ops::random_momenta;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ks(n: usize, kmax: f64) -> Vec<[f64; 3]> {
        random_momenta(n, kmax, &mut ChaCha8Rng::seed_from_u64(11))
    }

    #[test]
    fn rest_frame_is_identity() {
        for n in [4, 8, 12, 16] {
            let p = fw_transition(n, 1.3).unwrap();
            assert!(max_abs(&(p.vplus_at([0.0; 3]) - eye(n))) < 1e-15);
            let w = w_operator(n, [0.0; 3], 1.3).unwrap();
            assert!(w.max_abs_diff(&v_operator(n).unwrap()) < 1e-15);
        }
        assert!(fw_transition(6, 1.0).is_err());
        assert_eq!(fw_transition(4, 0.0).err(), Some(TransitionError::NonPositiveMass));
    }

    #[test]
    fn suites_pass() {
        for n in [4, 8, 12, 16] {
            let rep = transition_suite(n, 0.9, &ks(20, 9.0), 1e-12).unwrap();
            assert!(rep.pass, "{rep:?}");
        }
        for cfg in ["1/2,1/2", "1,0,1,0", "3/2,3/2", "2,0,2,0", "2,1,2,1"] {
            let cfg: SpinConfig = cfg.parse().unwrap();
            let rep = dirac_spin_suite(&cfg, 1.2, &ks(10, 5.0), 1e-10).unwrap();
            assert!(rep.pass, "{rep:?}");
        }
    }

    #[test]
    fn w_maps_energy_to_hamiltonian() {
        let (n, m, k) = (4, 1.0, [0.3, -0.7, 0.4]);
        let w = w_operator(n, k, m).unwrap();
        let wi = w_inverse(n, k, m).unwrap();
        let q = RLinearOp::linear(eye(n) * c(0.0, omega(k, m)));
        let out = &(&w * &q) * &wi;
        let h = fw_transition(n, m).unwrap().hamiltonian_at(k);
        assert!(out.max_abs_diff(&RLinearOp::linear(h * IM)) < 1e-14);
    }

    #[test]
    fn fw_spin_of_doublet_is_gamma_form() {
        let s = fw_spin(&SpinConfig::doublet(1)).unwrap();
        let set = crate::clifford::standard_gammas();
        let t = crate::clifford::spin_triple_from(&set, 1, 2, 3);
        for j in 0..3 {
            assert!(max_abs(&(&s.s[j] - &t[j].linear)) < 1e-15);
        }
        assert!(fw_spin(&"1,0".parse().unwrap()).is_err());
    }

    #[test]
    fn nonlocal_spin_agrees_with_conjugation() {
        let cfg = SpinConfig::doublet(1);
        for k in ks(10, 4.0) {
            let a = dirac_spin_nonlocal4(k, 0.7);
            let b = dirac_spin_computed(&cfg, k, 0.7).unwrap();
            for j in 0..3 {
                assert!(max_abs(&(&a.s[j] - &b.s[j])) < 1e-13, "{k:?}");
            }
        }
    }
}
