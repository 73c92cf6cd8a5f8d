//! Momentum-space operators of the form c0(k) + Σ_l c_l(k) ∂/∂k^l and the
//! Poincaré generators of the three representations.
//!
//! Coefficients are evaluated on hyper-dual momenta so that their first
//! k-derivatives (and, for nested use, a second independent derivative) come
//! out of a single evaluation. Generator conventions (lower indices,
//! metric diag(1, −1, −1, −1)):
//!
//! * p_0 = ω (times Γ⁰ for FW, H(k) for Dirac), p_l = −k^l;
//! * x_l = −i ∂/∂k^l, x^l = i ∂/∂k^l;
//! * s_12 = s³, s_13 = −s², s_23 = s¹.

use crate::dual::{chd, real_hd, Dual, Hd, Real};
use crate::grid::GridState;
use crate::linalg::*;
use crate::report::VerificationReport;
use crate::spin_algebra::{casimir_spin, multiplet_spin, SpinConfig, SpinTriple};
use crate::transitions;
use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;
use std::sync::Arc;
use thiserror::Error;

pub type HMat = GMat<Hd>;
pub type HVec = GVec<Hd>;

/// Matrix-valued function of momentum; the mass is captured by the closure.
pub type KMatrixFn = Arc<dyn Fn(&[Hd; 3]) -> HMat + Send + Sync>;

#[derive(Debug, Error, PartialEq)]
pub enum KSpaceError {
    #[error("s-breve is singular at k = 0 for m = 0")]
    SingularBreve,
    #[error("configuration of dimension {0} is not supported here")]
    Dimension(usize),
    #[error("configuration must list particle blocks followed by identical antiparticle blocks")]
    Unpaired,
    #[error("mass must be positive")]
    NonPositiveMass,
}

pub fn omega(k: [f64; 3], m: f64) -> f64 {
    crate::linalg::omega(k, m)
}

/// Constant momentum with no infinitesimal parts.
pub fn kpoint(k: [f64; 3]) -> [Hd; 3] {
    k.map(Hd::cst)
}

/// Momentum with the outer infinitesimal along axis `dir`.
pub fn kseed(k: [f64; 3], dir: usize) -> [Hd; 3] {
    std::array::from_fn(|a| Hd::seeded(k[a], if a == dir { 1.0 } else { 0.0 }, 0.0))
}

pub fn primal(m: &HMat) -> CMat {
    m.map(|z| c(z.re.value(), z.im.value()))
}

/// Coefficient of the outer infinitesimal.
pub fn outer_part(m: &HMat) -> CMat {
    m.map(|z| c(z.re.d1(), z.im.d1()))
}

pub fn primal_vec(v: &HVec) -> CVec {
    v.map(|z| c(z.re.value(), z.im.value()))
}

pub fn outer_vec(v: &HVec) -> CVec {
    v.map(|z| c(z.re.d1(), z.im.d1()))
}

fn inner_lift(x: Hd) -> Hd {
    Dual::new(Dual::new(x.re.eps, 0.0), Dual::new(x.eps.eps, 0.0))
}

fn is_plain(k: &[Hd; 3]) -> bool {
    k.iter().all(|x| x.re.eps == 0.0 && x.eps.re == 0.0 && x.eps.eps == 0.0)
}

/// ∂f/∂k^l at k.
///
/// At a plain point the outer infinitesimal is used, leaving the inner one
/// free for derivatives taken inside `f`. Otherwise the inner infinitesimal
/// is used and the outer one is carried through.
pub fn partial(f: &KMatrixFn, k: &[Hd; 3], l: usize) -> HMat {
    let mut kk = *k;
    if is_plain(k) {
        kk[l].eps.re = 1.0;
        return f(&kk).map(|z| chd(z.re.d1(), z.im.d1()));
    }
    debug_assert!(kk.iter().all(|x| x.re.eps == 0.0 && x.eps.eps == 0.0));
    kk[l].re.eps = 1.0;
    f(&kk).map(|z| Complex::new(inner_lift(z.re), inner_lift(z.im)))
}

/// Vector analogue of `partial`.
pub fn partial_vec(f: &(dyn Fn(&[Hd; 3]) -> HVec + Sync), k: &[Hd; 3], l: usize) -> HVec {
    let mut kk = *k;
    if is_plain(k) {
        kk[l].eps.re = 1.0;
        return f(&kk).map(|z| chd(z.re.d1(), z.im.d1()));
    }
    kk[l].re.eps = 1.0;
    f(&kk).map(|z| Complex::new(inner_lift(z.re), inner_lift(z.im)))
}

pub fn const_fn(m: CMat) -> KMatrixFn {
    let h: HMat = glift(&m);
    Arc::new(move |_| h.clone())
}

pub fn zero_fn(n: usize) -> KMatrixFn {
    const_fn(zeros(n))
}

/// f(k)·I_n for a scalar function of momentum.
pub fn scalar_fn(n: usize, f: impl Fn(&[Hd; 3]) -> CHdScalar + Send + Sync + 'static) -> KMatrixFn {
    Arc::new(move |k| {
        let s = f(k);
        geye::<Hd>(n).map(|z| z * s)
    })
}

pub type CHdScalar = Complex<Hd>;

fn hscale(m: &HMat, s: CHdScalar) -> HMat {
    m.map(|z| z * s)
}

/// c0(k) + Σ_l c_l(k) ∂/∂k^l at time `t`.
#[derive(Clone)]
pub struct FirstOrderKOperator {
    pub dim: usize,
    pub c0: KMatrixFn,
    pub c: [Option<KMatrixFn>; 3],
    pub t: f64,
}

/// Coefficients of a first-order operator at a point (primal values).
#[derive(Clone, Debug)]
pub struct Symbol {
    pub c0: CMat,
    pub c: [CMat; 3],
}

impl Symbol {
    pub fn max_abs_diff(&self, other: &Symbol) -> f64 {
        let mut r = max_abs(&(&self.c0 - &other.c0));
        for l in 0..3 {
            r = r.max(max_abs(&(&self.c[l] - &other.c[l])));
        }
        r
    }

    pub fn scale(&self, a: C64) -> Symbol {
        Symbol { c0: &self.c0 * a, c: self.c.clone().map(|m| m * a) }
    }

    pub fn add(&self, o: &Symbol) -> Symbol {
        Symbol {
            c0: &self.c0 + &o.c0,
            c: std::array::from_fn(|l| &self.c[l] + &o.c[l]),
        }
    }

    pub fn zero(n: usize) -> Symbol {
        Symbol { c0: zeros(n), c: std::array::from_fn(|_| zeros(n)) }
    }
}

impl FirstOrderKOperator {
    pub fn multiplication(dim: usize, c0: KMatrixFn, t: f64) -> Self {
        Self { dim, c0, c: [None, None, None], t }
    }

    pub fn symbol(&self, k: [f64; 3]) -> Symbol {
        let kp = kpoint(k);
        Symbol {
            c0: primal(&(self.c0)(&kp)),
            c: std::array::from_fn(|l| {
                self.c[l].as_ref().map_or_else(|| zeros(self.dim), |f| primal(&f(&kp)))
            }),
        }
    }

    /// (self ψ)(k) at a hyper-dual point whose inner parts vanish.
    pub fn apply_hd(&self, psi: &(dyn Fn(&[Hd; 3]) -> HVec + Sync), k: &[Hd; 3]) -> HVec {
        let mut out = (self.c0)(k) * psi(k);
        for l in 0..3 {
            if let Some(cl) = &self.c[l] {
                out += cl(k) * partial_vec(psi, k, l);
            }
        }
        out
    }

    /// Σ a_i op_i for operators of equal dimension.
    pub fn lin_comb(terms: &[(C64, &FirstOrderKOperator)]) -> FirstOrderKOperator {
        let dim = terms[0].1.dim;
        let t = terms[0].1.t;
        let owned: Vec<(C64, FirstOrderKOperator)> = terms.iter().map(|(a, o)| (*a, (*o).clone())).collect();
        let own0 = owned.clone();
        let c0: KMatrixFn = Arc::new(move |k| {
            let mut acc = HMat::zeros(dim, dim);
            for (a, o) in &own0 {
                acc += hscale(&(o.c0)(k), chd(a.re, a.im));
            }
            acc
        });
        let c = std::array::from_fn(|l| {
            if owned.iter().all(|(_, o)| o.c[l].is_none()) {
                return None;
            }
            let own = owned.clone();
            let f: KMatrixFn = Arc::new(move |k| {
                let mut acc = HMat::zeros(dim, dim);
                for (a, o) in &own {
                    if let Some(cl) = &o.c[l] {
                        acc += hscale(&cl(k), chd(a.re, a.im));
                    }
                }
                acc
            });
            Some(f)
        });
        FirstOrderKOperator { dim, c0, c, t }
    }

    /// M(k) ∘ self for a multiplication operator M.
    pub fn left_multiply(&self, mfn: &KMatrixFn) -> FirstOrderKOperator {
        let (mm, c0) = (mfn.clone(), self.c0.clone());
        let new_c0: KMatrixFn = Arc::new(move |k| mm(k) * c0(k));
        let c = std::array::from_fn(|l| {
            self.c[l].as_ref().map(|cl| {
                let (mm, cl) = (mfn.clone(), cl.clone());
                let f: KMatrixFn = Arc::new(move |k| mm(k) * cl(k));
                f
            })
        });
        FirstOrderKOperator { dim: self.dim, c0: new_c0, c, t: self.t }
    }

    /// L(k) ∘ self ∘ R(k) for multiplication operators L and R.
    pub fn conjugate_by(&self, left: &KMatrixFn, right: &KMatrixFn) -> FirstOrderKOperator {
        let (lf, rf, c0, cs) = (left.clone(), right.clone(), self.c0.clone(), self.c.clone());
        let new_c0: KMatrixFn = Arc::new(move |k| {
            let lm = lf(k);
            let mut acc = &lm * c0(k) * rf(k);
            for l in 0..3 {
                if let Some(cl) = &cs[l] {
                    acc += &lm * cl(k) * partial(&rf, k, l);
                }
            }
            acc
        });
        let c = std::array::from_fn(|l| {
            self.c[l].as_ref().map(|cl| {
                let (lf, rf, cl) = (left.clone(), right.clone(), cl.clone());
                let f: KMatrixFn = Arc::new(move |k| lf(k) * cl(k) * rf(k));
                f
            })
        });
        FirstOrderKOperator { dim: self.dim, c0: new_c0, c, t: self.t }
    }
}

/// Exact symbol-level commutator of two first-order operators.
///
/// With A = a0 + a_l∂_l and B = b0 + b_l∂_l:
/// C0 = [a0, b0] + a_l ∂_l b0 − b_l ∂_l a0 and
/// C_m = [a0, b_m] + [a_m, b0] + a_l ∂_l b_m − b_l ∂_l a_m.
/// The second-order part is checked separately by `second_order_residual`.
pub fn commutator(a: &FirstOrderKOperator, b: &FirstOrderKOperator) -> FirstOrderKOperator {
    let (a1, b1) = (a.clone(), b.clone());
    let c0: KMatrixFn = Arc::new(move |k| {
        let (a0, b0) = ((a1.c0)(k), (b1.c0)(k));
        let mut acc = &a0 * &b0 - &b0 * &a0;
        for l in 0..3 {
            if let Some(al) = &a1.c[l] {
                acc += al(k) * partial(&b1.c0, k, l);
            }
            if let Some(bl) = &b1.c[l] {
                acc -= bl(k) * partial(&a1.c0, k, l);
            }
        }
        acc
    });
    let c = std::array::from_fn(|m| {
        if a.c[m].is_none() && b.c[m].is_none() {
            return None;
        }
        let (a1, b1) = (a.clone(), b.clone());
        let f: KMatrixFn = Arc::new(move |k| {
            let n = a1.dim;
            let (a0, b0) = ((a1.c0)(k), (b1.c0)(k));
            let mut acc = HMat::zeros(n, n);
            if let Some(bm) = &b1.c[m] {
                acc += &a0 * bm(k) - bm(k) * &a0;
            }
            if let Some(am) = &a1.c[m] {
                acc += am(k) * &b0 - &b0 * am(k);
            }
            for l in 0..3 {
                if let (Some(al), Some(bm)) = (&a1.c[l], &b1.c[m]) {
                    acc += al(k) * partial(bm, k, l);
                }
                if let (Some(bl), Some(am)) = (&b1.c[l], &a1.c[m]) {
                    acc -= bl(k) * partial(am, k, l);
                }
            }
            acc
        });
        Some(f)
    });
    FirstOrderKOperator { dim: a.dim, c0, c, t: a.t }
}

/// Largest coefficient of ∂_l∂_m in AB − BA (must vanish).
pub fn second_order_residual(a: &FirstOrderKOperator, b: &FirstOrderKOperator, k: [f64; 3]) -> f64 {
    let sa = a.symbol(k);
    let sb = b.symbol(k);
    let mut res: f64 = 0.0;
    for l in 0..3 {
        for m in l..3 {
            let mut t = &sa.c[l] * &sb.c[m] - &sb.c[l] * &sa.c[m];
            if l != m {
                t += &sa.c[m] * &sb.c[l] - &sb.c[m] * &sa.c[l];
            }
            res = res.max(max_abs(&t));
        }
    }
    res
}

/// Sign of the spin term in the boosts; `Flipped` exists for mutation tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BoostSpinSign {
    #[default]
    Standard,
    Flipped,
}

impl BoostSpinSign {
    fn factor(self) -> f64 {
        match self {
            BoostSpinSign::Standard => 1.0,
            BoostSpinSign::Flipped => -1.0,
        }
    }
}

/// Generator order: p0, p1, p2, p3, j01, j02, j03, j12, j13, j23.
pub const GENERATOR_NAMES: [&str; 10] = ["p0", "p1", "p2", "p3", "j01", "j02", "j03", "j12", "j13", "j23"];

/// Index of j_{μν} (μ < ν) in the generator list.
pub fn j_index(mu: usize, nu: usize) -> usize {
    debug_assert!(mu < nu && nu < 4);
    match (mu, nu) {
        (0, 1) => 4,
        (0, 2) => 5,
        (0, 3) => 6,
        (1, 2) => 7,
        (1, 3) => 8,
        _ => 9,
    }
}

/// Ten generators together with ∂/∂t of each (only boosts depend on t).
#[derive(Clone)]
pub struct PoincareGenerators {
    pub label: String,
    pub dim: usize,
    pub m: f64,
    pub t: f64,
    pub ops: Vec<FirstOrderKOperator>,
    pub dt: Vec<Option<KMatrixFn>>,
    /// Spin Casimir s² as a function of k (constant outside the Dirac case).
    pub spin_casimir: KMatrixFn,
}

impl PoincareGenerators {
    pub fn p0(&self) -> &FirstOrderKOperator {
        &self.ops[0]
    }
}

fn momentum_lower(n: usize, l: usize, t: f64) -> FirstOrderKOperator {
    FirstOrderKOperator::multiplication(n, scalar_fn(n, move |k| real_hd(-k[l])), t)
}

/// Orbital part of j_ln: x_l p_n − x_n p_l with x_l = −i∂_l, p_n = −k^n.
fn orbital_rotation(n: usize, l: usize, nn: usize, spin: CMat, t: f64) -> FirstOrderKOperator {
    let mut c: [Option<KMatrixFn>; 3] = [None, None, None];
    c[l] = Some(scalar_fn(n, move |k| Complex::new(Hd::zero(), k[nn])));
    c[nn] = Some(scalar_fn(n, move |k| Complex::new(Hd::zero(), -k[l])));
    FirstOrderKOperator { dim: n, c0: const_fn(spin), c, t }
}

/// (S × k)^l / (ω + m) as a KMatrixFn, S given by three matrices.
fn cross_over(s: &[CMat; 3], l: usize, m: f64, denom_omega: bool) -> KMatrixFn {
    let sh: [HMat; 3] = s.clone().map(|x| glift(&x));
    Arc::new(move |k| {
        let w = gomega(k, m);
        let mut acc = HMat::zeros(sh[0].nrows(), sh[0].ncols());
        for a in 0..3 {
            for b in 0..3 {
                let e = levi_civita(l, a, b);
                if e != 0.0 {
                    acc += hscale(&sh[a], real_hd(k[b] * Hd::cst(e)));
                }
            }
        }
        let den = if denom_omega { w * (w + Hd::cst(m)) } else { w + Hd::cst(m) };
        hscale(&acc, real_hd(Hd::cst(1.0) / den))
    })
}

/// s̆_l = Σ_n s_ln p_n/(ω+m) = (s × k)^l/(ω+m) at fixed k.
pub fn breve_spin(s: &SpinTriple, k: [f64; 3], m: f64) -> Result<[CMat; 3], KSpaceError> {
    if m == 0.0 && k == [0.0; 3] {
        return Err(KSpaceError::SingularBreve);
    }
    let w = omega(k, m);
    Ok(std::array::from_fn(|l| {
        let mut acc = zeros(s.dim());
        for a in 0..3 {
            for b in 0..3 {
                let e = levi_civita(l, a, b);
                if e != 0.0 {
                    acc += &s.s[a] * r(e * k[b]);
                }
            }
        }
        acc / r(w + m)
    }))
}

/// Common builder for the canonical (RCQM) and FW sets; `g0` multiplies the
/// energy and the anticommutator/spin parts of the boosts.
fn canonical_like(
    label: &str,
    s: &SpinTriple,
    g0: CMat,
    m: f64,
    t: f64,
    sign: BoostSpinSign,
) -> PoincareGenerators {
    let n = s.dim();
    let g0h: HMat = glift(&g0);
    let mut ops = Vec::with_capacity(10);
    let mut dt: Vec<Option<KMatrixFn>> = vec![None; 10];
    let g = g0h.clone();
    ops.push(FirstOrderKOperator::multiplication(
        n,
        Arc::new(move |k| hscale(&g, real_hd(gomega(k, m)))),
        t,
    ));
    for l in 0..3 {
        ops.push(momentum_lower(n, l, t));
    }
    for l in 0..3 {
        // j_0l = t p_l − ½ g0 {x_l, ω} − g0 (s × k)^l/(ω+m)
        let spin_term = cross_over(&s.s, l, m, false);
        let g = g0h.clone();
        let f = sign.factor();
        let c0: KMatrixFn = Arc::new(move |k| {
            let w = gomega(k, m);
            let tp = geye::<Hd>(n).map(|z| z * real_hd(-k[l] * Hd::cst(t)));
            tp + hscale(&g, Complex::new(Hd::zero(), k[l] / (w + w)))
                + hscale(&(&g * spin_term(k)), chd(-f, 0.0))
        });
        let g = g0h.clone();
        let mut c: [Option<KMatrixFn>; 3] = [None, None, None];
        c[l] = Some(Arc::new(move |k| hscale(&g, Complex::new(Hd::zero(), gomega(k, m)))));
        ops.push(FirstOrderKOperator { dim: n, c0, c, t });
        dt[4 + l] = Some(scalar_fn(n, move |k| real_hd(-k[l])));
    }
    for (l, nn) in [(0, 1), (0, 2), (1, 2)] {
        ops.push(orbital_rotation(n, l, nn, s.s_ln(l, nn), t));
    }
    let cas: CMat = casimir_spin(s);
    PoincareGenerators {
        label: label.to_string(),
        dim: n,
        m,
        t,
        ops,
        dt,
        spin_casimir: const_fn(cas),
    }
}

pub fn rcqm_generators(config: &SpinConfig, m: f64, t: f64) -> Result<PoincareGenerators, KSpaceError> {
    rcqm_generators_with(config, m, t, BoostSpinSign::Standard)
}

pub fn rcqm_generators_with(
    config: &SpinConfig,
    m: f64,
    t: f64,
    sign: BoostSpinSign,
) -> Result<PoincareGenerators, KSpaceError> {
    if m <= 0.0 {
        return Err(KSpaceError::NonPositiveMass);
    }
    let s = multiplet_spin(config);
    Ok(canonical_like(&format!("rcqm({config})"), &s, eye(s.dim()), m, t, sign))
}

/// Γ⁰ = diag(I, −I) of the given dimension.
pub fn gamma0(n: usize) -> CMat {
    block_diag(&[eye(n / 2), -eye(n / 2)])
}

pub fn fw_generators(config: &SpinConfig, m: f64, t: f64) -> Result<PoincareGenerators, KSpaceError> {
    fw_generators_with(config, m, t, BoostSpinSign::Standard)
}

pub fn fw_generators_with(
    config: &SpinConfig,
    m: f64,
    t: f64,
    sign: BoostSpinSign,
) -> Result<PoincareGenerators, KSpaceError> {
    if m <= 0.0 {
        return Err(KSpaceError::NonPositiveMass);
    }
    let s = transitions::fw_spin(config).map_err(|_| KSpaceError::Unpaired)?;
    let n = s.dim();
    Ok(canonical_like(&format!("fw({config})"), &s, gamma0(n), m, t, sign))
}

/// Which spin enters the position operator x_D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PositionSpin {
    /// (i/4)[Γ^l, Γ^n]; makes x_D = V⁻ x V⁺.
    #[default]
    Gamma,
    /// The FW spin of the configuration. Coincides with `Gamma` only for the
    /// spin-½ doublet; for other configurations the algebra does not close.
    Fw,
}

/// Covariant generators built from H(k), the position operator x_D and the
/// covariant spin s_D(k) = V⁻ s_FW V⁺.
pub fn dirac_generators(config: &SpinConfig, m: f64, t: f64) -> Result<PoincareGenerators, KSpaceError> {
    dirac_generators_with(config, m, t, PositionSpin::Gamma)
}

pub fn dirac_generators_with(
    config: &SpinConfig,
    m: f64,
    t: f64,
    position_spin: PositionSpin,
) -> Result<PoincareGenerators, KSpaceError> {
    if m <= 0.0 {
        return Err(KSpaceError::NonPositiveMass);
    }
    let n = config.dim();
    let gam = crate::clifford::gamma_matrices(n).map_err(|_| KSpaceError::Dimension(n))?;
    let sfw = transitions::fw_spin(config).map_err(|_| KSpaceError::Unpaired)?;
    let sd = transitions::dirac_spin_fns(config, m).map_err(|_| KSpaceError::Unpaired)?;
    let gh: [HMat; 4] = gam.clone().map(|g| glift(&g));

    let ham: KMatrixFn = {
        let gam = gam.clone();
        Arc::new(move |k| transitions::hamiltonian(&gam, k, m))
    };
    // X^l = iΓ^l/(2ω) − (s_FW × k)^l/(ω(ω+m)) − i k^l (Γ·k)/(2ω²(ω+m))
    let xd: Vec<KMatrixFn> = (0..3)
        .map(|l| {
            let gh = gh.clone();
            let xs = match position_spin {
                PositionSpin::Gamma => gamma_spin(&gam),
                PositionSpin::Fw => sfw.s.clone(),
            };
            let sxk = cross_over(&xs, l, m, true);
            let f: KMatrixFn = Arc::new(move |k| {
                let w = gomega(k, m);
                let om = w + Hd::cst(m);
                let gk = &gh[1] * real_hd(k[0]) + &gh[2] * real_hd(k[1]) + &gh[3] * real_hd(k[2]);
                hscale(&gh[l + 1], Complex::new(Hd::zero(), Hd::cst(0.5) / w)) - sxk(k)
                    + hscale(&gk, Complex::new(Hd::zero(), -k[l] / (Hd::cst(2.0) * w * w * om)))
            });
            f
        })
        .collect();

    let mut ops = Vec::with_capacity(10);
    let mut dt: Vec<Option<KMatrixFn>> = vec![None; 10];
    ops.push(FirstOrderKOperator::multiplication(n, ham.clone(), t));
    for l in 0..3 {
        ops.push(momentum_lower(n, l, t));
    }
    for l in 0..3 {
        // j_0l = −t k^l + ½{x_D^l, H} − H (s_D × k)^l/(ω(ω+m)), x_D^l = i∂_l + X^l
        let (h, x, sd) = (ham.clone(), xd[l].clone(), sd.clone());
        // ∂H/∂k^l = Γ⁰Γ^l
        let g0gl: HMat = glift(&(&gam[0] * &gam[l + 1]));
        let c0: KMatrixFn = Arc::new(move |k| {
            let hk = h(k);
            let xk = x(k);
            let w = gomega(k, m);
            let mut sxk = HMat::zeros(n, n);
            for a in 0..3 {
                for b in 0..3 {
                    let e = levi_civita(l, a, b);
                    if e != 0.0 {
                        sxk += hscale(&sd[a](k), real_hd(k[b] * Hd::cst(e)));
                    }
                }
            }
            let den = real_hd(Hd::cst(1.0) / (w * (w + Hd::cst(m))));
            let dh = &g0gl;
            geye::<Hd>(n).map(|z| z * real_hd(-k[l] * Hd::cst(t)))
                + hscale(&(&xk * &hk + &hk * &xk), chd(0.5, 0.0))
                + hscale(dh, chd(0.0, 0.5))
                - hscale(&(&hk * sxk), den)
        });
        let h = ham.clone();
        let mut c: [Option<KMatrixFn>; 3] = [None, None, None];
        c[l] = Some(Arc::new(move |k| hscale(&h(k), chd(0.0, 1.0))));
        ops.push(FirstOrderKOperator { dim: n, c0, c, t });
        dt[4 + l] = Some(scalar_fn(n, move |k| real_hd(-k[l])));
    }
    for (l, nn) in [(0, 1), (0, 2), (1, 2)] {
        // j_ln = x_D^l k^n − x_D^n k^l + s_D^{ln}
        let (xl, xn, sd) = (xd[l].clone(), xd[nn].clone(), sd.clone());
        let j = 3 - l - nn;
        let sgn = levi_civita(l, nn, j);
        let c0: KMatrixFn = Arc::new(move |k| {
            hscale(&xl(k), real_hd(k[nn])) - hscale(&xn(k), real_hd(k[l]))
                + hscale(&sd[j](k), chd(sgn, 0.0))
        });
        let mut c: [Option<KMatrixFn>; 3] = [None, None, None];
        c[l] = Some(scalar_fn(n, move |k| Complex::new(Hd::zero(), k[nn])));
        c[nn] = Some(scalar_fn(n, move |k| Complex::new(Hd::zero(), -k[l])));
        ops.push(FirstOrderKOperator { dim: n, c0, c, t });
    }
    let sd2 = sd.clone();
    let spin_casimir: KMatrixFn = Arc::new(move |k| {
        let s: [HMat; 3] = std::array::from_fn(|j| sd2[j](k));
        &s[0] * &s[0] + &s[1] * &s[1] + &s[2] * &s[2]
    });
    Ok(PoincareGenerators {
        label: format!("dirac({config})"),
        dim: n,
        m,
        t,
        ops,
        dt,
        spin_casimir,
    })
}

/// (i/4)[Γ^b, Γ^c] arranged as (s¹, s², s³).
pub fn gamma_spin(gam: &[CMat; 4]) -> [CMat; 3] {
    std::array::from_fn(|a| {
        let (b, cc) = ((a + 1) % 3, (a + 2) % 3);
        comm(&gam[b + 1], &gam[cc + 1]) * c(0.0, 0.25)
    })
}

/// Conjugates every generator of a set by k-dependent L and R = L⁻¹.
pub fn conjugate_generators(
    gens: &PoincareGenerators,
    left: &KMatrixFn,
    right: &KMatrixFn,
    label: &str,
) -> PoincareGenerators {
    let ops = gens.ops.iter().map(|o| o.conjugate_by(left, right)).collect();
    let dt = gens
        .dt
        .iter()
        .map(|d| {
            d.as_ref().map(|f| {
                let (l, r, f) = (left.clone(), right.clone(), f.clone());
                let g: KMatrixFn = Arc::new(move |k| l(k) * f(k) * r(k));
                g
            })
        })
        .collect();
    let (l, r, cas) = (left.clone(), right.clone(), gens.spin_casimir.clone());
    PoincareGenerators {
        label: label.to_string(),
        dim: gens.dim,
        m: gens.m,
        t: gens.t,
        ops,
        dt,
        spin_casimir: Arc::new(move |k| l(k) * cas(k) * r(k)),
    }
}

const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Right-hand side of [G_a, G_b] as a list of (coefficient, generator index).
pub fn poincare_rhs(a: usize, b: usize) -> Vec<(C64, usize)> {
    #[derive(Clone, Copy)]
    enum G {
        P(usize),
        J(usize, usize),
    }
    let decode = |i: usize| -> G {
        if i < 4 {
            G::P(i)
        } else {
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            let (x, y) = pairs[i - 4];
            G::J(x, y)
        }
    };
    // j_{xy} as ±generator, zero when x = y
    let jref = |x: usize, y: usize| -> Option<(f64, usize)> {
        use std::cmp::Ordering::*;
        match x.cmp(&y) {
            Less => Some((1.0, j_index(x, y))),
            Greater => Some((-1.0, j_index(y, x))),
            Equal => None,
        }
    };
    let g = |x: usize, y: usize| if x == y { METRIC[x] } else { 0.0 };
    let mut out: Vec<(C64, usize)> = Vec::new();
    let mut push = |coef: C64, term: Option<(f64, usize)>| {
        if let Some((s, idx)) = term {
            if coef != ZERO {
                out.push((coef * s, idx));
            }
        }
    };
    match (decode(a), decode(b)) {
        (G::P(_), G::P(_)) => {}
        (G::P(mu), G::J(rho, sigma)) => {
            push(c(0.0, g(mu, rho)), Some((1.0, sigma)));
            push(c(0.0, -g(mu, sigma)), Some((1.0, rho)));
        }
        (G::J(rho, sigma), G::P(mu)) => {
            push(c(0.0, -g(mu, rho)), Some((1.0, sigma)));
            push(c(0.0, g(mu, sigma)), Some((1.0, rho)));
        }
        (G::J(mu, nu), G::J(rho, sigma)) => {
            push(c(0.0, -g(mu, rho)), jref(nu, sigma));
            push(c(0.0, -g(rho, nu)), jref(sigma, mu));
            push(c(0.0, -g(nu, sigma)), jref(mu, rho));
            push(c(0.0, -g(sigma, mu)), jref(rho, nu));
        }
    }
    out
}

/// Symbol of the right-hand side at k.
fn rhs_symbol(symbols: &[Symbol], terms: &[(C64, usize)], n: usize) -> Symbol {
    terms
        .iter()
        .fold(Symbol::zero(n), |acc, (a, i)| acc.add(&symbols[*i].scale(*a)))
}

pub fn random_momenta(n: usize, kmax: f64, rng: &mut impl Rng) -> Vec<[f64; 3]> {
    (0..n)
        .map(|_| loop {
            let k: [f64; 3] = std::array::from_fn(|_| rng.random_range(-kmax..kmax));
            if k.iter().map(|x| x * x).sum::<f64>() <= kmax * kmax {
                break k;
            }
        })
        .collect()
}

/// All 45 commutators, the second-order cancellation and commutation with
/// the equation operator i∂_t − p_0, at the given momenta.
pub fn check_poincare(gens: &PoincareGenerators, samples: &[[f64; 3]], tol: f64) -> VerificationReport {
    let mut rep = VerificationReport::new(&format!("poincare.{}", gens.label));
    let n = gens.dim;
    let mut algebra: f64 = 0.0;
    let mut second: f64 = 0.0;
    let mut equation: f64 = 0.0;
    let mut worst_pair = (0, 0);
    for &k in samples {
        let symbols: Vec<Symbol> = gens.ops.iter().map(|o| o.symbol(k)).collect();
        for a in 0..10 {
            for b in (a + 1)..10 {
                let cm = commutator(&gens.ops[a], &gens.ops[b]).symbol(k);
                let target = rhs_symbol(&symbols, &poincare_rhs(a, b), n);
                let res = cm.max_abs_diff(&target);
                if res > algebra {
                    algebra = res;
                    worst_pair = (a, b);
                }
                second = second.max(second_order_residual(&gens.ops[a], &gens.ops[b], k));
            }
        }
        // i ∂_t G − [p_0, G] = 0
        for (a, op) in gens.ops.iter().enumerate() {
            let mut cm = commutator(gens.p0(), op).symbol(k).scale(c(-1.0, 0.0));
            if let Some(d) = &gens.dt[a] {
                cm.c0 += primal(&d(&kpoint(k))) * IM;
            }
            equation = equation.max(cm.max_abs_diff(&Symbol::zero(n)));
        }
    }
    rep.check(
        "poincare.algebra",
        "covariant commutation relations of p_mu, j_mu_nu (all 45 pairs)",
        algebra,
        tol,
    );
    if algebra > tol {
        rep.flag(format!(
            "worst pair [{}, {}]",
            GENERATOR_NAMES[worst_pair.0], GENERATOR_NAMES[worst_pair.1]
        ));
    }
    rep.check("poincare.second_order", "second-order parts of commutators cancel", second, 1e-12);
    rep.check("poincare.equation", "generators commute with i d_t - p_0", equation, tol);
    rep
}

/// Gaussian-times-linear test function a·(c0 + c·u)·exp(−|u|²/(2σ²)), u = k − k₀.
#[derive(Clone, Debug)]
pub struct TestPacket {
    pub center: [f64; 3],
    pub width: f64,
    pub poly: [C64; 4],
    pub amplitude: CVec,
}

impl TestPacket {
    pub fn eval<T: Real>(&self, k: &[T; 3]) -> GVec<T> {
        let u: [T; 3] = std::array::from_fn(|a| k[a] - T::cst(self.center[a]));
        let q = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
        let env = (-(q / T::cst(2.0 * self.width * self.width))).exp();
        let mut p = gc::<T>(self.poly[0]);
        for a in 0..3 {
            p = p + gc::<T>(self.poly[a + 1]) * greal(u[a]);
        }
        let s = p * greal(env);
        self.amplitude.map(|z| gc::<T>(z) * s)
    }

    /// Closed-form gradient, used to validate the AD derivatives.
    pub fn gradient(&self, k: [f64; 3]) -> [CVec; 3] {
        let u: [f64; 3] = std::array::from_fn(|a| k[a] - self.center[a]);
        let q: f64 = u.iter().map(|x| x * x).sum();
        let s2 = self.width * self.width;
        let env = (-q / (2.0 * s2)).exp();
        let p = self.poly[0] + (0..3).map(|a| self.poly[a + 1] * u[a]).sum::<C64>();
        std::array::from_fn(|a| {
            let d = (self.poly[a + 1] - p * (u[a] / s2)) * env;
            &self.amplitude * d
        })
    }
}

/// w^μ = ½ ε^{μνρσ} p_ν j_ρσ, ε^{0123} = 1.
pub fn pauli_lubanski_vector(gens: &PoincareGenerators) -> Vec<FirstOrderKOperator> {
    let perm_sign = |p: [usize; 4]| -> f64 {
        let mut s = 1.0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if p[i] == p[j] {
                    return 0.0;
                }
                if p[i] > p[j] {
                    s = -s;
                }
            }
        }
        s
    };
    (0..4)
        .map(|mu| {
            let mut terms: Vec<(C64, FirstOrderKOperator)> = Vec::new();
            for nu in 0..4 {
                for rho in 0..4 {
                    for sigma in (rho + 1)..4 {
                        let e = perm_sign([mu, nu, rho, sigma]);
                        if e == 0.0 {
                            continue;
                        }
                        // ½ (ε^{μνρσ} j_ρσ + ε^{μνσρ} j_σρ) = ε^{μνρσ} j_ρσ for ρ < σ
                        let pj = gens.ops[j_index(rho, sigma)].left_multiply(&gens.ops[nu].c0);
                        terms.push((r(e), pj));
                    }
                }
            }
            let refs: Vec<(C64, &FirstOrderKOperator)> = terms.iter().map(|(a, o)| (*a, o)).collect();
            FirstOrderKOperator::lin_comb(&refs)
        })
        .collect()
}

/// Applies W = Σ_μ g_μμ w^μ w^μ to the packet at k by nesting the dual
/// infinitesimals, and compares with −m² s²(k) ψ(k).
///
/// With metric (+,−,−,−) the contraction w^μ w_μ equals −m² s² on these
/// representations; the reported residual is relative to ‖m² s² ψ‖.
pub fn pauli_lubanski_check(
    gens: &PoincareGenerators,
    packet: &TestPacket,
    points: &[[f64; 3]],
    tol: f64,
) -> VerificationReport {
    let mut rep = VerificationReport::new(&format!("pauli_lubanski.{}", gens.label));
    let w = pauli_lubanski_vector(gens);
    let psi = |k: &[Hd; 3]| packet.eval(k);
    let m2 = gens.m * gens.m;
    let mut worst: f64 = 0.0;
    for &k in points {
        let mut total = CVec::zeros(gens.dim);
        for (mu, wmu) in w.iter().enumerate() {
            // w^μ(w^μ ψ): φ = w^μ ψ and its gradient from the outer infinitesimal
            let phi = primal_vec(&wmu.apply_hd(&psi, &kpoint(k)));
            let mut out = primal(&(wmu.c0)(&kpoint(k))) * &phi;
            for l in 0..3 {
                if let Some(cl) = &wmu.c[l] {
                    let dphi = outer_vec(&wmu.apply_hd(&psi, &kseed(k, l)));
                    out += primal(&cl(&kpoint(k))) * dphi;
                }
            }
            total += out * r(METRIC[mu]);
        }
        let s2 = primal(&(gens.spin_casimir)(&kpoint(k)));
        let psi0 = primal_vec(&packet.eval(&kpoint(k)));
        let expect = (s2 * psi0) * r(-m2);
        let scale = expect.norm().max(1e-300);
        worst = worst.max((total - &expect).norm() / scale);
    }
    rep.check(
        "pauli_lubanski.casimir",
        "w^mu w_mu = -m^2 s^2 (metric +---)",
        worst,
        tol,
    );
    rep
}

/// Binomial series coefficients of √(1 − B): 1, −1/2, −1/8, −1/16, −5/128, …
pub fn sqrt_series_coefficients(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    let mut cfac = 1.0;
    for j in 0..n {
        out.push(cfac);
        // C(1/2, j+1)(−1)^{j+1} from C(1/2, j)(−1)^j
        cfac *= -(0.5 - j as f64) / (j as f64 + 1.0);
    }
    out
}

/// ω̂ = √(m² − Δ) applied as a Fourier multiplier on every component.
pub fn apply_sqrt_operator(state: &GridState, m: f64) -> GridState {
    let n = state.ncomp;
    state.apply_multiplier(|k| eye(n) * r(omega(k, m)))
}
