//! Cartesian orts, Dirac-like spinor bases, spin eigenvalue tables,
//! helicity, and synthesis of general solutions from amplitudes.
//!
//! Amplitude layout: a single array a^α(k), α = 0..N, stored like a
//! spectral [`GridState`] (component α, FFT-ordered lattice index of k).
//! Entries α < N/2 are particle amplitudes and multiply e^{−ikx} = e^{i(k·x − ωt)};
//! entries α ≥ N/2 are antiparticle amplitudes and enter conjugated on
//! e^{+ikx} in the FW and Dirac-like representations. The positive-frequency
//! spinors carry the momentum flip v⁺_B(k) = V⁻(−k) d_B, and operators act on
//! them at −k.

mod data;

use crate::evolution::{transform_rep, EvolutionError, Rep};
use crate::expr::{eval, Env};
use crate::grid::{GridError, GridState};
use crate::linalg::*;
use crate::report::{Erratum, VerificationReport};
use crate::spin_algebra::{multiplet_spin, SpinConfig, SpinTriple};
use crate::transitions::{dirac_spin_computed, fw_spin, fw_transition, TransitionError};
use nalgebra::SymmetricEigen;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PlaneWaveError {
    #[error(transparent)]
    Transition(#[from] TransitionError),
    #[error(transparent)]
    Evolution(#[from] EvolutionError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("unknown eigenvalue table {0:?}")]
    UnknownTable(String),
    #[error("helicity needs a nonzero momentum")]
    ZeroMomentum,
    #[error("amplitudes have {got} components, configuration has {want}")]
    Components { got: usize, want: usize },
    #[error("no printed spinors for N = {0}")]
    NoPrintedSpinors(usize),
}

/// Standard basis d_1..d_N.
pub fn cartesian_orts(n: usize) -> Vec<CVec> {
    (0..n).map(|i| unit_vector(n, i)).collect()
}

/// Negative-frequency spinors v⁻_A(k) and positive-frequency v⁺_B(k).
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorBasis {
    pub k: [f64; 3],
    pub m: f64,
    pub negative: Vec<CVec>,
    pub positive: Vec<CVec>,
}

impl SpinorBasis {
    pub fn dim(&self) -> usize {
        self.negative.len() + self.positive.len()
    }

    /// v_α for α = 1..N.
    pub fn vector(&self, alpha: usize) -> &CVec {
        let h = self.negative.len();
        if alpha <= h {
            &self.negative[alpha - 1]
        } else {
            &self.positive[alpha - h - 1]
        }
    }

    pub fn normalization(&self) -> f64 {
        let w = omega(self.k, self.m);
        1.0 / (2.0 * w * (w + self.m)).sqrt()
    }
}

fn neg(k: [f64; 3]) -> [f64; 3] {
    [-k[0], -k[1], -k[2]]
}

/// Spinors built from the transition: v⁻_A(k) = V⁻(k)d_A, v⁺_B(k) = V⁻(−k)d_B.
pub fn dirac_spinors(n: usize, k: [f64; 3], m: f64) -> Result<SpinorBasis, PlaneWaveError> {
    let pair = fw_transition(n, m)?;
    let (a, b) = (pair.vminus_at(k), pair.vminus_at(neg(k)));
    let h = n / 2;
    Ok(SpinorBasis {
        k,
        m,
        negative: (0..h).map(|i| a.column(i).into_owned()).collect(),
        positive: (h..n).map(|i| b.column(i).into_owned()).collect(),
    })
}

fn printed_rows(n: usize) -> Option<Vec<&'static [&'static str]>> {
    use data::*;
    Some(match n {
        4 => SPINORS_4.iter().map(|r| r.as_slice()).collect(),
        8 => SPINORS_8.iter().map(|r| r.as_slice()).collect(),
        12 => SPINORS_12.iter().map(|r| r.as_slice()).collect(),
        16 => SPINORS_16.iter().map(|r| r.as_slice()).collect(),
        _ => return None,
    })
}

/// Spinors from their printed closed form.
pub fn dirac_spinors_printed(n: usize, k: [f64; 3], m: f64) -> Result<SpinorBasis, PlaneWaveError> {
    if m <= 0.0 {
        return Err(TransitionError::NonPositiveMass.into());
    }
    let rows = printed_rows(n).ok_or(PlaneWaveError::NoPrintedSpinors(n))?;
    let env = Env::new(k, m);
    let w = omega(k, m);
    let norm = 1.0 / (2.0 * w * (w + m)).sqrt();
    let vecs: Vec<CVec> = rows
        .iter()
        .map(|row| CVec::from_iterator(n, row.iter().map(|e| eval(e, &env).expect("printed spinor parses") * norm)))
        .collect();
    let h = n / 2;
    Ok(SpinorBasis { k, m, negative: vecs[..h].to_vec(), positive: vecs[h..].to_vec() })
}

/// Columns v⁻_A(k), v⁺_B(−k): the pairing under which the standard
/// orthonormality and completeness relations hold.
pub fn paired_matrix(n: usize, k: [f64; 3], m: f64) -> Result<CMat, PlaneWaveError> {
    let a = dirac_spinors(n, k, m)?;
    let b = dirac_spinors(n, neg(k), m)?;
    let cols: Vec<CVec> = a.negative.into_iter().chain(b.positive).collect();
    Ok(CMat::from_columns(&cols))
}

/// Orthonormality, completeness, spin eigen-relations of the spinors and the
/// printed-versus-constructed diff for one N.
pub fn spinor_suite(n: usize, m: f64, samples: &[[f64; 3]], tol: f64) -> Result<VerificationReport, PlaneWaveError> {
    let mut rep = VerificationReport::new(&format!("spinors.N{n}"));
    let (mut ortho, mut compl, mut identity, mut diff) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &k in samples {
        let u = paired_matrix(n, k, m)?;
        ortho = ortho.max(max_abs(&(u.adjoint() * &u - eye(n))));
        let sum = (0..n).fold(zeros(n), |acc, j| {
            let col = u.column(j);
            acc + &col * col.adjoint()
        });
        compl = compl.max(max_abs(&(sum - eye(n))));
        let w = omega(k, m);
        let k2: f64 = k.iter().map(|x| x * x).sum();
        identity = identity.max(((w + m).powi(2) + k2 - 2.0 * w * (w + m)).abs() / (w * w));

        let built = dirac_spinors(n, k, m)?;
        let printed = dirac_spinors_printed(n, k, m)?;
        for alpha in 1..=n {
            let d = max_abs_vec((built.vector(alpha) - printed.vector(alpha)).as_slice());
            if d > tol && !rep.errata.iter().any(|e| e.row == alpha) {
                rep.errata.push(Erratum {
                    table: format!("spinors.N{n}"),
                    row: alpha,
                    col: 0,
                    printed_expr: printed_rows(n).map(|r| r[alpha - 1].join(", ")).unwrap_or_default(),
                    printed_value: None,
                    computed_value: None,
                    note: format!("printed spinor differs from the transition construction by {d:.3e}"),
                });
            }
            if !rep.errata.iter().any(|e| e.row == alpha) {
                diff = diff.max(d);
            }
        }
    }
    rep.check(&format!("N{n}.orthonormal"), "v_α† v_β = δ_αβ (v⁺ paired at −k)", ortho, tol);
    rep.check(&format!("N{n}.complete"), "Σ v_α v_α† = I", compl, tol);
    rep.check(&format!("N{n}.identity"), "(ω+m)² + k² = 2ω(ω+m)", identity, tol);
    rep.check(&format!("N{n}.printed"), "printed spinors equal V⁻ applied to orts", diff, tol);
    Ok(rep)
}

/// One printed table of s³ eigenvalues on basis vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenTable {
    pub id: &'static str,
    pub rep: Rep,
    pub config: &'static str,
    pub values: &'static [f64],
}

const H: f64 = 0.5;

/// Printed eigenvalue tables.
pub const EIGEN_TABLES: &[EigenTable] = &[
    EigenTable { id: "rcqm-1/2", rep: Rep::Rcqm, config: "1/2+", values: &[H, -H] },
    EigenTable { id: "rcqm-1", rep: Rep::Rcqm, config: "1+", values: &[1.0, 0.0, -1.0] },
    EigenTable { id: "rcqm-3/2", rep: Rep::Rcqm, config: "3/2+", values: &[1.5, 0.5, -0.5, -1.5] },
    EigenTable { id: "rcqm-2", rep: Rep::Rcqm, config: "2+", values: &[2.0, 1.0, 0.0, -1.0, -2.0] },
    EigenTable { id: "rcqm-1/2,1/2", rep: Rep::Rcqm, config: "1/2,1/2", values: &[H, -H, -H, H] },
    EigenTable { id: "fw-1/2,1/2", rep: Rep::Fw, config: "1/2,1/2", values: &[H, -H, H, -H] },
    EigenTable { id: "dirac-1/2,1/2", rep: Rep::Dirac, config: "1/2,1/2", values: &[H, -H, H, -H] },
    EigenTable { id: "rcqm-1,1", rep: Rep::Rcqm, config: "1,1", values: &[1.0, 0.0, -1.0, -1.0, 0.0, 1.0] },
    EigenTable { id: "rcqm-1,0", rep: Rep::Rcqm, config: "1+,0+", values: &[1.0, 0.0, -1.0, 0.0] },
    EigenTable {
        id: "rcqm-1,0,1,0",
        rep: Rep::Rcqm,
        config: "1,0,1,0",
        values: &[1.0, 0.0, -1.0, 0.0, -1.0, 0.0, 1.0, 0.0],
    },
    EigenTable {
        id: "rcqm-3/2,3/2",
        rep: Rep::Rcqm,
        config: "3/2,3/2",
        values: &[1.5, 0.5, -0.5, -1.5, -1.5, -0.5, 0.5, 1.5],
    },
    EigenTable {
        id: "rcqm-2,2",
        rep: Rep::Rcqm,
        config: "2,2",
        values: &[2.0, 1.0, 0.0, -1.0, -2.0, -2.0, -1.0, 0.0, 1.0, 2.0],
    },
    EigenTable {
        id: "rcqm-2,0,2,0",
        rep: Rep::Rcqm,
        config: "2,0,2,0",
        values: &[2.0, 1.0, 0.0, -1.0, -2.0, 0.0, -2.0, -1.0, 0.0, 1.0, 2.0, 0.0],
    },
    EigenTable {
        id: "rcqm-2,1,2,1",
        rep: Rep::Rcqm,
        config: "2,1,2,1",
        values: &[2.0, 1.0, 0.0, -1.0, -2.0, 1.0, 0.0, -1.0, -2.0, -1.0, 0.0, 1.0, 2.0, -1.0, 0.0, 1.0],
    },
    EigenTable { id: "fw-1,1", rep: Rep::Fw, config: "1,1", values: &[1.0, 0.0, -1.0, 1.0, 0.0, -1.0] },
    EigenTable {
        id: "fw-1,0,1,0",
        rep: Rep::Fw,
        config: "1,0,1,0",
        values: &[1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0, 0.0],
    },
    EigenTable {
        id: "dirac-1,0,1,0",
        rep: Rep::Dirac,
        config: "1,0,1,0",
        values: &[1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0, 0.0],
    },
    EigenTable {
        id: "fw-3/2,3/2",
        rep: Rep::Fw,
        config: "3/2,3/2",
        values: &[1.5, 0.5, -0.5, -1.5, 1.5, 0.5, -0.5, -1.5],
    },
    EigenTable {
        id: "dirac-3/2,3/2",
        rep: Rep::Dirac,
        config: "3/2,3/2",
        values: &[1.5, 0.5, -0.5, -1.5, 1.5, 0.5, -0.5, -1.5],
    },
    EigenTable {
        id: "fw-2,2",
        rep: Rep::Fw,
        config: "2,2",
        values: &[2.0, 1.0, 0.0, -1.0, -2.0, 2.0, 1.0, 0.0, -1.0, -2.0],
    },
    EigenTable {
        id: "fw-2,0,2,0",
        rep: Rep::Fw,
        config: "2,0,2,0",
        values: &[2.0, 1.0, 0.0, -1.0, -2.0, 0.0, 2.0, 1.0, 0.0, -1.0, -2.0, 0.0],
    },
    EigenTable {
        id: "dirac-2,0,2,0",
        rep: Rep::Dirac,
        config: "2,0,2,0",
        values: &[2.0, 1.0, 0.0, -1.0, -2.0, 0.0, 2.0, 1.0, 0.0, -1.0, -2.0, 0.0],
    },
    EigenTable {
        id: "fw-2,1,2,1",
        rep: Rep::Fw,
        config: "2,1,2,1",
        values: &[2.0, 1.0, 0.0, -1.0, -2.0, 1.0, 0.0, -1.0, 2.0, 1.0, 0.0, -1.0, -2.0, 1.0, 0.0, -1.0],
    },
    EigenTable {
        id: "dirac-2,1,2,1",
        rep: Rep::Dirac,
        config: "2,1,2,1",
        values: &[2.0, 1.0, 0.0, -1.0, -2.0, 1.0, 0.0, -1.0, 2.0, 1.0, 0.0, -1.0, -2.0, 1.0, 0.0, -1.0],
    },
];

pub fn eigen_table(id: &str) -> Result<&'static EigenTable, PlaneWaveError> {
    EIGEN_TABLES
        .iter()
        .find(|t| t.id == id)
        .ok_or_else(|| PlaneWaveError::UnknownTable(id.to_string()))
}

/// Applies the table's s³ to its eigenvectors: d_α for the canonical and FW
/// tables, the printed spinors for the Dirac-like ones (s_D at k for v⁻,
/// at −k for v⁺). Residual max_α ‖s³x_α − λ_α x_α‖ over the momenta.
pub fn spin_eigen_suite(id: &str, m: f64, samples: &[[f64; 3]], tol: f64) -> Result<VerificationReport, PlaneWaveError> {
    let t = eigen_table(id)?;
    let config: SpinConfig = t.config.parse().expect("built-in configuration parses");
    let n = config.dim();
    assert_eq!(n, t.values.len(), "table {id} length");
    let mut rep = VerificationReport::new(&format!("eigen.{id}"));
    let mut res = 0.0f64;
    match t.rep {
        Rep::Rcqm | Rep::Fw => {
            let s3 = if t.rep == Rep::Rcqm { multiplet_spin(&config).s[2].clone() } else { fw_spin(&config)?.s[2].clone() };
            for (a, d) in cartesian_orts(n).iter().enumerate() {
                res = res.max(max_abs_vec((&s3 * d - d * r(t.values[a])).as_slice()));
            }
        }
        Rep::Dirac => {
            let h = n / 2;
            for &k in samples {
                let basis = dirac_spinors_printed(n, k, m)?;
                let s_at_k = dirac_spin_computed(&config, k, m)?.s[2].clone();
                let s_at_mk = dirac_spin_computed(&config, neg(k), m)?.s[2].clone();
                for a in 0..n {
                    let x = basis.vector(a + 1);
                    let s = if a < h { &s_at_k } else { &s_at_mk };
                    res = res.max(max_abs_vec((s * x - x * r(t.values[a])).as_slice()));
                }
            }
        }
    }
    rep.check(&format!("{id}.s3"), "printed s³ eigenvalues on the basis vectors", res, tol);
    Ok(rep)
}

/// Spectrum of s·k/|k| compared with the spectrum of s³ (equal for any SU(2)
/// representation); both sorted.
pub fn helicity_check(s: &SpinTriple, k: [f64; 3], tol: f64) -> Result<VerificationReport, PlaneWaveError> {
    let kn = k.iter().map(|x| x * x).sum::<f64>().sqrt();
    if kn == 0.0 {
        return Err(PlaneWaveError::ZeroMomentum);
    }
    let mut rep = VerificationReport::new("helicity");
    let hel = s.dot([k[0] / kn, k[1] / kn, k[2] / kn]);
    let mut got: Vec<f64> = SymmetricEigen::new(hel).eigenvalues.iter().copied().collect();
    let mut want: Vec<f64> = SymmetricEigen::new(s.s[2].clone()).eigenvalues.iter().copied().collect();
    got.sort_by(|a, b| b.total_cmp(a));
    want.sort_by(|a, b| b.total_cmp(a));
    let res = got.iter().zip(&want).fold(0.0f64, |a, (x, y)| a.max((x - y).abs()));
    rep.check("helicity.spectrum", "spectrum of s·k/|k| equals that of s³", res, tol);
    Ok(rep)
}

/// Sorted helicity eigenvalues, largest first.
pub fn helicity_values(s: &SpinTriple, k: [f64; 3]) -> Result<Vec<f64>, PlaneWaveError> {
    let kn = k.iter().map(|x| x * x).sum::<f64>().sqrt();
    if kn == 0.0 {
        return Err(PlaneWaveError::ZeroMomentum);
    }
    let mut v: Vec<f64> = SymmetricEigen::new(s.dot([k[0] / kn, k[1] / kn, k[2] / kn]))
        .eigenvalues
        .iter()
        .copied()
        .collect();
    v.sort_by(|a, b| b.total_cmp(a));
    Ok(v)
}

/// A synthesized state and any warnings raised while building it.
#[derive(Clone, Debug, PartialEq)]
pub struct Synthesis {
    pub state: GridState,
    pub warnings: Vec<String>,
}

fn check_amplitudes(config: &SpinConfig, amps: &GridState) -> Result<Vec<String>, PlaneWaveError> {
    if amps.ncomp != config.dim() {
        return Err(PlaneWaveError::Components { got: amps.ncomp, want: config.dim() });
    }
    let scale = amps.max_abs();
    let npts = amps.npts();
    let mut worst = 0.0f64;
    for i in (0..npts).filter(|&i| amps.on_nyquist(i)) {
        for cc in 0..amps.ncomp {
            worst = worst.max(amps.data[cc * npts + i].norm());
        }
    }
    let mut w = Vec::new();
    if scale > 0.0 && worst > 1e-12 * scale {
        w.push(format!("aliasing: amplitude {worst:.3e} on the Nyquist modes (max {scale:.3e})"));
    }
    Ok(w)
}

/// t = 0 solution f(x) = Σ_k a(k) e^{ik·x} in the canonical representation,
/// mapped by v (FW) and then V⁻ (Dirac-like).
pub fn synthesize_solution(config: &SpinConfig, rep: Rep, amps: &GridState, m: f64) -> Result<Synthesis, PlaneWaveError> {
    let warnings = check_amplitudes(config, amps)?;
    let n = config.dim();
    let f = amps.fft_inverse().scaled(r(amps.npts() as f64));
    let state = transform_rep(&f, Rep::Rcqm, rep, n, m)?;
    Ok(Synthesis { state, warnings })
}

/// Direct form of the same solution: particle amplitudes on e^{ik·x} with
/// d_A (FW) or v⁻_A(k) (Dirac-like), conjugated antiparticle amplitudes on
/// e^{−ik·x} with d_B or the printed v⁺_B(k).
pub fn synthesize_direct(config: &SpinConfig, rep: Rep, amps: &GridState, m: f64) -> Result<Synthesis, PlaneWaveError> {
    let warnings = check_amplitudes(config, amps)?;
    let n = config.dim();
    if rep == Rep::Rcqm {
        let f = amps.fft_inverse().scaled(r(amps.npts() as f64));
        return Ok(Synthesis { state: f, warnings });
    }
    let h = n / 2;
    let npts = amps.npts();
    let mut spec = GridState::zeros(amps.dims, amps.lengths, n)?;
    for i in 0..npts {
        let k = amps.k_at(i);
        let j = amps.neg_index(i);
        let basis = match rep {
            Rep::Dirac => Some(dirac_spinors_printed(n, k, m)?),
            _ => None,
        };
        for alpha in 0..n {
            let a = amps.data[alpha * npts + i];
            if a == ZERO {
                continue;
            }
            let (target, coef) = if alpha < h { (i, a) } else { (j, a.conj()) };
            let vec = match &basis {
                Some(b) => b.vector(alpha + 1).clone(),
                None => unit_vector(n, alpha),
            };
            for cc in 0..n {
                spec.data[cc * npts + target] += coef * vec[cc];
            }
        }
    }
    Ok(Synthesis { state: spec.fft_inverse().scaled(r(npts as f64)), warnings })
}

/// Gaussian amplitudes a^α(k) = w_α exp(−|k − k0|²/(2σ_k²)) on the lattice.
pub fn gaussian_amplitudes(
    dims: [usize; 3],
    lengths: [f64; 3],
    weights: &[C64],
    k0: [f64; 3],
    sigma_k: f64,
) -> Result<GridState, PlaneWaveError> {
    let mut a = GridState::zeros(dims, lengths, weights.len())?;
    let npts = a.npts();
    for i in 0..npts {
        let k = a.k_at(i);
        let d2: f64 = (0..3).map(|x| (k[x] - k0[x]).powi(2)).sum();
        let g = (-d2 / (2.0 * sigma_k * sigma_k)).exp();
        for (cc, w) in weights.iter().enumerate() {
            a.data[cc * npts + i] = w * g;
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kspace_ops::random_momenta;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn ks(n: usize) -> Vec<[f64; 3]> {
        random_momenta(n, 5.0, &mut ChaCha8Rng::seed_from_u64(11))
    }

    #[test]
    fn orts() {
        let d = cartesian_orts(4);
        assert_eq!(d[1], CVec::from_vec(vec![ZERO, ONE, ZERO, ZERO]));
        let d16 = cartesian_orts(16);
        assert_eq!(d16[15][15], ONE);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(d[i].dot(&d[j]), if i == j { ONE } else { ZERO });
            }
        }
    }

    #[test]
    fn top_component_of_first_spinor() {
        let (k, m) = ([0.3, -0.2, 0.9], 1.1);
        let b = dirac_spinors(4, k, m).unwrap();
        let w = omega(k, m);
        assert!((b.negative[0][0] - r((w + m) * b.normalization())).norm() < 1e-15);
    }

    #[test]
    fn spinor_suites_pass() {
        for n in [4, 8, 12, 16] {
            let rep = spinor_suite(n, 1.0, &ks(30), 1e-12).unwrap();
            assert!(rep.pass, "{}", rep.to_json());
            assert!(rep.errata.is_empty(), "{}", rep.to_json());
        }
    }

    #[test]
    fn every_eigen_table_is_green() {
        for t in EIGEN_TABLES {
            let rep = spin_eigen_suite(t.id, 1.0, &ks(10), 1e-10).unwrap();
            assert!(rep.pass, "{}", rep.to_json());
        }
        assert!(spin_eigen_suite("nope", 1.0, &[], 1e-10).is_err());
    }

    #[test]
    fn a_wrong_eigenvalue_is_caught() {
        let t = EigenTable { id: "x", rep: Rep::Rcqm, config: "1+", values: &[1.0, 0.0, 1.0] };
        let config: SpinConfig = t.config.parse().unwrap();
        let s3 = multiplet_spin(&config).s[2].clone();
        let d = &cartesian_orts(3)[2];
        assert!(max_abs_vec((&s3 * d - d * r(t.values[2])).as_slice()) > 1.0);
    }

    #[test]
    fn helicity_values_match_expectations() {
        let s1 = multiplet_spin(&"1+".parse().unwrap());
        let v = helicity_values(&s1, [0.0, 0.0, 2.0]).unwrap();
        assert!(v.iter().zip([1.0, 0.0, -1.0]).all(|(a, b)| (a - b).abs() < 1e-12));
        let half = multiplet_spin(&"1/2+".parse().unwrap());
        let v = helicity_values(&half, [0.3, -1.2, 0.4]).unwrap();
        assert!((v[0] - 0.5).abs() < 1e-12 && (v[1] + 0.5).abs() < 1e-12);
        let mix = multiplet_spin(&"1+,0+".parse().unwrap());
        let v = helicity_values(&mix, [1.0, 1.0, 1.0]).unwrap();
        assert!(v.iter().zip([1.0, 0.0, 0.0, -1.0]).all(|(a, b)| (a - b).abs() < 1e-12));
        assert!(helicity_check(&mix, [0.2, 0.1, -0.7], 1e-12).unwrap().pass);
        assert_eq!(helicity_check(&mix, [0.0; 3], 1e-12), Err(PlaneWaveError::ZeroMomentum));
    }

    #[test]
    fn single_mode_is_plane_wave() {
        let config: SpinConfig = "1/2,1/2".parse().unwrap();
        let mut a = GridState::zeros([8, 1, 1], [2.0 * PI, 1.0, 1.0], 4).unwrap();
        a.data[2] = ONE;
        let s = synthesize_solution(&config, Rep::Rcqm, &a, 1.0).unwrap();
        let want = GridState::from_fn([8, 1, 1], [2.0 * PI, 1.0, 1.0], 4, |x| {
            vec![(IM * 2.0 * x[0]).exp(), ZERO, ZERO, ZERO]
        })
        .unwrap();
        assert!(s.state.max_abs_diff(&want) < 1e-13);
        assert!(s.warnings.is_empty());
        let z = GridState::zeros([8, 1, 1], [1.0; 3], 4).unwrap();
        assert_eq!(synthesize_solution(&config, Rep::Dirac, &z, 1.0).unwrap().state.max_abs(), 0.0);
    }

    #[test]
    fn mapped_and_direct_constructions_agree() {
        for (cfg, n) in [("1/2,1/2", 4), ("1,0,1,0", 8), ("2,0,2,0", 12), ("2,1,2,1", 16)] {
            let config: SpinConfig = cfg.parse().unwrap();
            let w: Vec<C64> = (0..n).map(|i| c(0.5 + 0.1 * i as f64, -0.05 * i as f64)).collect();
            let a = gaussian_amplitudes([32, 1, 1], [30.0, 1.0, 1.0], &w, [0.8, 0.0, 0.0], 0.5).unwrap();
            for rep in [Rep::Fw, Rep::Dirac] {
                let s1 = synthesize_solution(&config, rep, &a, 1.0).unwrap();
                let s2 = synthesize_direct(&config, rep, &a, 1.0).unwrap();
                assert!(s1.state.max_abs_diff(&s2.state) < 1e-12 * s1.state.max_abs(), "{cfg} {rep}");
            }
        }
    }

    #[test]
    fn nyquist_support_is_flagged() {
        let config: SpinConfig = "1/2,1/2".parse().unwrap();
        let mut a = GridState::zeros([8, 1, 1], [1.0; 3], 4).unwrap();
        a.data[4] = ONE;
        assert!(!synthesize_solution(&config, Rep::Fw, &a, 1.0).unwrap().warnings.is_empty());
        assert!(synthesize_solution(&"1+".parse().unwrap(), Rep::Rcqm, &a, 1.0).is_err());
    }
}
