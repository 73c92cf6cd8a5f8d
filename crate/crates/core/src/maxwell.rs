//! Field-strength form of the 8-component Dirac-like equation.
//!
//! Real fields F = (E⁰, E¹, E², E³, H⁰, H¹, H², H³) enter through
//! ψ = (E³+iH⁰, E¹+iE², iH³+E⁰, −H²+iH¹, −iH³−E⁰, H²−iH¹, −E³−iH⁰, −E¹−iE²).
//! Substituting into i∂₀ψ = Γ⁰(Γ^l p_l + m)ψ gives 16 real first-order
//! equations; [`derive_signed_system`] extracts them by unit jets and is the
//! reference against which printed sign patterns are compared.
//!
//! With lower-index momentum p_l = i∂_l (the default [`Reading::Covariant`])
//! a mode e^{ik·x} sees H(−k); the m = 0 limit is then ∂₀E = curl H,
//! ∂₀H = −curl E. [`Reading::Contravariant`] (p^l = −i∂_l, H(k)) gives the
//! time-reversed pair.

use crate::clifford::gamma_matrices;
use crate::transitions::hamiltonian;
use crate::grid::{GridError, GridState};
use crate::linalg::*;
use crate::report::{Erratum, VerificationReport};
use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MaxwellError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("state leaves the field-strength subspace (relative residual {0:.3e})")]
    SubspaceViolation(f64),
    #[error("expected an 8-component state, got {0}")]
    Components(usize),
    #[error("field arrays do not match the grid")]
    Shape,
    #[error("mass must be non-negative")]
    NegativeMass,
    #[error("derived system does not determine every time derivative")]
    Degenerate,
}

pub const FIELD_NAMES: [&str; 8] = ["E0", "E1", "E2", "E3", "H0", "H1", "H2", "H3"];
const E0: usize = 0;
const H0: usize = 4;

/// How Γ·p acts on e^{ik·x}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Reading {
    /// Γ^l p_l with p_l = i∂_l: symbol H(−k).
    #[default]
    Covariant,
    /// Γ^l p^l with p^l = −i∂_l: symbol H(k).
    Contravariant,
}

impl Reading {
    fn sign(self) -> f64 {
        match self {
            Reading::Covariant => -1.0,
            Reading::Contravariant => 1.0,
        }
    }
}

/// Eight real fields on a periodic grid, ordered as [`FIELD_NAMES`].
#[derive(Clone, Debug, PartialEq)]
pub struct FieldState {
    pub dims: [usize; 3],
    pub lengths: [f64; 3],
    pub f: [Vec<f64>; 8],
}

impl FieldState {
    pub fn zeros(dims: [usize; 3], lengths: [f64; 3]) -> Result<Self, MaxwellError> {
        let g = GridState::zeros(dims, lengths, 1)?;
        let n = g.npts();
        Ok(Self { dims, lengths, f: std::array::from_fn(|_| vec![0.0; n]) })
    }

    /// Samples f(x) → [E⁰, …, H³].
    pub fn from_fn(dims: [usize; 3], lengths: [f64; 3], f: impl Fn([f64; 3]) -> [f64; 8]) -> Result<Self, MaxwellError> {
        let g = GridState::zeros(dims, lengths, 1)?;
        let mut out = Self::zeros(dims, lengths)?;
        for i in 0..g.npts() {
            let v = f(g.position(i));
            for a in 0..8 {
                out.f[a][i] = v[a];
            }
        }
        Ok(out)
    }

    pub fn npts(&self) -> usize {
        self.dims.iter().product()
    }

    fn grid(&self, ncomp: usize) -> GridState {
        GridState::zeros(self.dims, self.lengths, ncomp).expect("validated shape")
    }

    pub fn max_abs_diff(&self, o: &FieldState) -> f64 {
        self.f
            .iter()
            .zip(&o.f)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.f.iter().flatten().fold(0.0, |a, x| a.max(x.abs()))
    }

    /// ΔV Σ (E_j² + H_j²) over the vector components.
    pub fn energy(&self) -> f64 {
        let dv = self.grid(1).cell_volume();
        let mut s = 0.0;
        for a in [1, 2, 3, 5, 6, 7] {
            s += self.f[a].iter().map(|x| x * x).sum::<f64>();
        }
        s * dv
    }

    fn to_complex(&self) -> GridState {
        let mut g = self.grid(8);
        let n = self.npts();
        for a in 0..8 {
            for i in 0..n {
                g.data[a * n + i] = r(self.f[a][i]);
            }
        }
        g
    }

    fn from_complex(g: &GridState) -> FieldState {
        let n = g.npts();
        FieldState {
            dims: g.dims,
            lengths: g.lengths,
            f: std::array::from_fn(|a| (0..n).map(|i| g.data[a * n + i].re).collect()),
        }
    }
}

/// ψ_c = Σ_a J[c][a] F_a.
pub fn psi_map() -> CMat {
    let i = IM;
    let mut j = zeros(8);
    let set = |j: &mut CMat, c: usize, a: usize, v: C64| j[(c, a)] = v;
    set(&mut j, 0, 3, ONE);
    set(&mut j, 0, 4, i);
    set(&mut j, 1, 1, ONE);
    set(&mut j, 1, 2, i);
    set(&mut j, 2, 7, i);
    set(&mut j, 2, 0, ONE);
    set(&mut j, 3, 6, -ONE);
    set(&mut j, 3, 5, i);
    for c in 0..4 {
        // lower block = −(ψ₃, ψ₄, ψ₁, ψ₂)
        let src = (c + 2) % 4;
        for a in 0..8 {
            j[(4 + c, a)] = -j[(src, a)];
        }
    }
    j
}

pub fn fields_to_psi(fs: &FieldState) -> GridState {
    let j = psi_map();
    let n = fs.npts();
    let mut g = fs.grid(8);
    for cc in 0..8 {
        for a in 0..8 {
            let w = j[(cc, a)];
            if w != ZERO {
                for i in 0..n {
                    g.data[cc * n + i] += w * fs.f[a][i];
                }
            }
        }
    }
    g
}

/// max |ψ_lower + Pψ_upper| relative to max |ψ|.
pub fn image_residual(psi: &GridState) -> f64 {
    let n = psi.npts();
    let scale = psi.max_abs().max(f64::MIN_POSITIVE);
    let mut worst = 0.0f64;
    for c in 0..4 {
        let src = (c + 2) % 4;
        for i in 0..n {
            worst = worst.max((psi.data[(4 + c) * n + i] + psi.data[src * n + i]).norm());
        }
    }
    worst / scale
}

/// Inverse of [`fields_to_psi`] on its image.
pub fn psi_to_fields(psi: &GridState, tol: f64) -> Result<FieldState, MaxwellError> {
    if psi.ncomp != 8 {
        return Err(MaxwellError::Components(psi.ncomp));
    }
    let res = image_residual(psi);
    if !(res <= tol) {
        return Err(MaxwellError::SubspaceViolation(res));
    }
    let n = psi.npts();
    let u = |c: usize, i: usize| psi.data[c * n + i];
    let mut fs = FieldState::zeros(psi.dims, psi.lengths)?;
    for i in 0..n {
        let (p1, p2, p3, p4) = (u(0, i), u(1, i), u(2, i), u(3, i));
        fs.f[0][i] = p3.re;
        fs.f[1][i] = p2.re;
        fs.f[2][i] = p2.im;
        fs.f[3][i] = p1.re;
        fs.f[4][i] = p1.im;
        fs.f[5][i] = p4.im;
        fs.f[6][i] = -p4.re;
        fs.f[7][i] = p3.im;
    }
    Ok(fs)
}

/// One real first-order equation Σ_a (c[a][0]∂₀ + Σ_j c[a][j]∂_j + c[a][4]) F_a = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct RealEquation {
    pub coeffs: [[f64; 5]; 8],
}

impl RealEquation {
    fn zero() -> Self {
        RealEquation { coeffs: [[0.0; 5]; 8] }
    }

    /// The field carrying a time derivative, when there is exactly one.
    pub fn lead(&self) -> Option<usize> {
        let v: Vec<usize> = (0..8).filter(|&a| self.coeffs[a][0] != 0.0).collect();
        (v.len() == 1).then(|| v[0])
    }

    fn scaled(&self, s: f64) -> Self {
        let mut e = self.clone();
        e.coeffs.iter_mut().flatten().for_each(|x| *x *= s);
        e
    }

    pub fn max_abs_diff(&self, o: &RealEquation) -> f64 {
        self.coeffs
            .iter()
            .flatten()
            .zip(o.coeffs.iter().flatten())
            .fold(0.0, |a, (x, y)| a.max((x - y).abs()))
    }

    /// Drops the E⁰ and H⁰ columns (the E⁰ = H⁰ = 0 sector).
    pub fn restricted(&self) -> Self {
        let mut e = self.clone();
        e.coeffs[E0] = [0.0; 5];
        e.coeffs[H0] = [0.0; 5];
        e
    }

    /// Human-readable form, e.g. "+1 d0 E1 -1 d2 H3 -1 m E2".
    pub fn render(&self) -> String {
        const SLOT: [&str; 5] = ["d0 ", "d1 ", "d2 ", "d3 ", ""];
        let mut s = String::new();
        for (a, row) in self.coeffs.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                if v != 0.0 {
                    s.push_str(&format!("{v:+} {}{} ", SLOT[k], FIELD_NAMES[a]));
                }
            }
        }
        s.trim_end().to_string()
    }
}

/// The 16 real equations: rows 0..8 come from the upper four complex
/// components, rows 8..16 from the lower four. Each row is scaled so its
/// time-derivative coefficient is +1.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedSystem {
    pub m: f64,
    pub rows: Vec<RealEquation>,
}

impl DerivedSystem {
    pub fn upper(&self) -> &[RealEquation] {
        &self.rows[..8]
    }

    pub fn lower(&self) -> &[RealEquation] {
        &self.rows[8..]
    }

    /// Upper-sign row whose time derivative acts on field `a`.
    pub fn upper_row(&self, a: usize) -> Option<&RealEquation> {
        self.upper().iter().find(|e| e.lead() == Some(a))
    }
}

/// Covariant-reading system; see [`derive_signed_system_with`].
pub fn derive_signed_system(m: f64) -> DerivedSystem {
    derive_signed_system_with(m, Reading::Covariant)
}

/// Extracts the real equations by feeding unit jets (one field, one slot)
/// through R = i∂₀ψ + σiΓ⁰Γ^j∂_jψ − mΓ⁰ψ, σ = +1 (contravariant) or −1.
pub fn derive_signed_system_with(m: f64, reading: Reading) -> DerivedSystem {
    let g = gamma_matrices(8).expect("8 is supported");
    let j = psi_map();
    let g0gj: Vec<CMat> = (1..4).map(|l| &g[0] * &g[l] * (IM * reading.sign())).collect();
    let mass = &g[0] * r(-m);
    let mut raw = vec![RealEquation::zero(); 16];
    for a in 0..8 {
        let col = j.column(a).into_owned();
        for slot in 0..5 {
            let res: CVec = match slot {
                0 => &col * IM,
                1..=3 => &g0gj[slot - 1] * &col,
                _ => &mass * &col,
            };
            for cc in 0..8 {
                raw[2 * cc].coeffs[a][slot] = res[cc].re;
                raw[2 * cc + 1].coeffs[a][slot] = res[cc].im;
            }
        }
    }
    let rows = raw
        .into_iter()
        .map(|e| match e.lead() {
            Some(a) => {
                let s = 1.0 / e.coeffs[a][0];
                e.scaled(s)
            }
            None => e,
        })
        .collect();
    DerivedSystem { m, rows }
}

fn curl_term(eq: &mut RealEquation, comp: usize, base: usize, sign: f64) {
    // sign·(curl V)^comp with V at field indices base+1..base+3
    let (b, c) = ((comp + 1) % 3, (comp + 2) % 3);
    eq.coeffs[base + 1 + c][1 + b] += sign;
    eq.coeffs[base + 1 + b][1 + c] -= sign;
}

/// Printed Maxwell-like system with the mass sign branch s = ±1 (upper/lower).
/// `sector` drops E⁰, H⁰ and turns their equations into constraints.
pub fn printed_system(m: f64, s: f64, sector: bool) -> Vec<RealEquation> {
    let mut rows = vec![RealEquation::zero(); 8];
    // E⁰ row: ∂₀E⁰ + ∂_jE^j ∓ mH³
    rows[0].coeffs[0][0] = 1.0;
    for jj in 0..3 {
        rows[0].coeffs[1 + jj][1 + jj] = 1.0;
    }
    rows[0].coeffs[7][4] = -s * m;
    // E^l rows: ∂₀E^l − (curl H)^l + ∂_lE⁰ + mass
    let e_mass = [(2, -s), (1, s), (4, -s)];
    for l in 0..3 {
        let eq = &mut rows[1 + l];
        eq.coeffs[1 + l][0] = 1.0;
        curl_term(eq, l, 4, -1.0);
        eq.coeffs[0][1 + l] += 1.0;
        let (f, sg) = e_mass[l];
        eq.coeffs[f][4] += sg * m;
    }
    // H⁰ row: ∂₀H⁰ + ∂_jH^j ± mE³
    rows[4].coeffs[4][0] = 1.0;
    for jj in 0..3 {
        rows[4].coeffs[5 + jj][1 + jj] = 1.0;
    }
    rows[4].coeffs[3][4] = s * m;
    // H^l rows: ∂₀H^l + (curl E)^l + ∂_lH⁰ + mass
    let h_mass = [(6, -s), (5, s), (0, s)];
    for l in 0..3 {
        let eq = &mut rows[5 + l];
        eq.coeffs[5 + l][0] = 1.0;
        curl_term(eq, l, 0, 1.0);
        eq.coeffs[4][1 + l] += 1.0;
        let (f, sg) = h_mass[l];
        eq.coeffs[f][4] += sg * m;
    }
    if sector {
        rows.iter_mut().for_each(|e| *e = e.restricted());
    }
    rows
}

/// Compares derived and printed systems row by row and coefficient by
/// coefficient. `rows_printed[a]` is the equation for field a.
fn diff_systems(
    label: &str,
    derived: &[RealEquation],
    printed: &[RealEquation],
    sector: bool,
    rep: &mut VerificationReport,
) -> f64 {
    let mut worst = 0.0f64;
    for (a, prow) in printed.iter().enumerate() {
        let d = derived.iter().find(|e| e.lead() == Some(a)).cloned();
        let d = match d {
            Some(e) if sector => e.restricted(),
            Some(e) => e,
            None => continue,
        };
        for f in 0..8 {
            for slot in 0..5 {
                let (x, y) = (prow.coeffs[f][slot], d.coeffs[f][slot]);
                if (x - y).abs() > 0.0 {
                    worst = worst.max((x - y).abs());
                    rep.errata.push(Erratum {
                        table: label.to_string(),
                        row: a,
                        col: f * 5 + slot,
                        printed_expr: prow.render(),
                        printed_value: Some([x, 0.0]),
                        computed_value: Some([y, 0.0]),
                        note: format!(
                            "equation for d0 {}: coefficient of {}{} differs; derived: {}",
                            FIELD_NAMES[a],
                            ["d0 ", "d1 ", "d2 ", "d3 ", "m·"][slot],
                            FIELD_NAMES[f],
                            d.render()
                        ),
                    });
                }
            }
        }
    }
    worst
}

/// Sign-errata report: derived system against the printed branches, and
/// the m = 0 sector identity with free Maxwell equations.
pub fn signed_system_report(m: f64) -> VerificationReport {
    let mut rep = VerificationReport::new("maxwell.signs");
    let d = derive_signed_system(m);
    let leads: Vec<Option<usize>> = d.rows.iter().map(|e| e.lead()).collect();
    let all = leads.iter().all(|x| x.is_some())
        && (0..8).all(|a| d.upper().iter().any(|e| e.lead() == Some(a)) && d.lower().iter().any(|e| e.lead() == Some(a)));
    rep.check("signs.structure", "each real equation has one time derivative, covering all fields", if all { 0.0 } else { 1.0 }, 0.0);
    diff_systems("maxwell.upper-sign", d.upper(), &printed_system(m, 1.0, false), false, &mut rep);
    diff_systems("maxwell.lower-sign", d.lower(), &printed_system(m, -1.0, false), false, &mut rep);
    diff_systems("maxwell.sector", d.upper(), &printed_system(m, 1.0, true), true, &mut rep);

    let d0 = derive_signed_system(0.0);
    let free = printed_system(0.0, 1.0, true);
    let mut probe = VerificationReport::new("");
    let res = diff_systems("maxwell.free", d0.upper(), &free, true, &mut probe);
    let res_low = diff_systems("maxwell.free", d0.lower(), &free, true, &mut probe);
    rep.check("signs.free_maxwell", "m = 0, E⁰ = H⁰ = 0 derived system equals free Maxwell", res.max(res_low), 0.0);
    rep.errata.extend(probe.errata);

    let d1 = derive_signed_system(1.0);
    let d2 = derive_signed_system(2.0);
    let lin = d1
        .rows
        .iter()
        .zip(&d2.rows)
        .zip(&d0.rows)
        .map(|((a, b), z)| {
            // coefficients at m=2 minus m=0 are twice those at m=1 minus m=0
            let mut e = RealEquation::zero();
            for f in 0..8 {
                for s in 0..5 {
                    e.coeffs[f][s] = (b.coeffs[f][s] - z.coeffs[f][s]) - 2.0 * (a.coeffs[f][s] - z.coeffs[f][s]);
                }
            }
            e.coeffs.iter().flatten().fold(0.0f64, |x, y| x.max(y.abs()))
        })
        .fold(0.0, f64::max);
    rep.check("signs.mass_linear", "mass couplings scale linearly in m", lin, 0.0);

    let contra = derive_signed_system_with(m, Reading::Contravariant);
    let mut other = VerificationReport::new("");
    diff_systems("", contra.upper(), &printed_system(m, 1.0, false), false, &mut other);
    rep.flag(format!(
        "contravariant reading p^l = -i d_l would differ from the printed system in {} coefficients",
        other.errata.len()
    ));
    rep.flag(format!("{} printed coefficients differ from the derived system", rep.errata.len()));
    rep
}

/// Generator B(k) of ∂₀F̃ = B(k)F̃ for the upper-sign derived system.
pub fn signed_generator(sys: &DerivedSystem, k: [f64; 3]) -> Result<CMat, MaxwellError> {
    let rows = sys.upper();
    let mut c0 = DMatrix::<f64>::zeros(8, 8);
    let mut rest = zeros(8);
    for (ri, e) in rows.iter().enumerate() {
        for a in 0..8 {
            c0[(ri, a)] = e.coeffs[a][0];
            let mut z = r(e.coeffs[a][4]);
            for j in 0..3 {
                z += IM * k[j] * e.coeffs[a][1 + j];
            }
            rest[(ri, a)] = z;
        }
    }
    let inv = c0.try_inverse().ok_or(MaxwellError::Degenerate)?;
    Ok(-(inv.map(r) * rest))
}

fn spectral(fs: &FieldState) -> GridState {
    fs.to_complex().fft_forward()
}

/// Exact propagation of the upper-sign derived system, mode by mode.
pub fn evolve_signed_system(fs: &FieldState, m: f64, t: f64) -> Result<FieldState, MaxwellError> {
    if m < 0.0 {
        return Err(MaxwellError::NegativeMass);
    }
    let sys = derive_signed_system(m);
    signed_generator(&sys, [0.0; 3])?;
    let out = spectral(fs).map_modes(|k, a| {
        let b = signed_generator(&sys, k).expect("checked above") * r(t);
        b.exp() * a
    });
    Ok(FieldState::from_complex(&out.fft_inverse()))
}

/// ∂₀F = B F with spectral spatial derivatives, evaluated in position space.
fn rhs(sys: &DerivedSystem, inv_c0: &DMatrix<f64>, fs: &FieldState) -> FieldState {
    let n = fs.npts();
    let spec = spectral(fs);
    let derivs: Vec<GridState> = (0..3)
        .map(|j| spec.scale_modes(|_, k| IM * k[j]).fft_inverse())
        .collect();
    let rows = sys.upper();
    let mut g = vec![vec![0.0; n]; 8];
    for (ri, e) in rows.iter().enumerate() {
        for a in 0..8 {
            let c = e.coeffs[a];
            if c[1..].iter().all(|x| *x == 0.0) {
                continue;
            }
            for i in 0..n {
                let mut v = c[4] * fs.f[a][i];
                for j in 0..3 {
                    if c[1 + j] != 0.0 {
                        v += c[1 + j] * derivs[j].data[a * n + i].re;
                    }
                }
                g[ri][i] -= v;
            }
        }
    }
    let mut out = FieldState::zeros(fs.dims, fs.lengths).expect("same shape");
    for a in 0..8 {
        for ri in 0..8 {
            let w = inv_c0[(a, ri)];
            if w != 0.0 {
                out.f[a].par_iter_mut().zip(&g[ri]).for_each(|(o, x)| *o += w * x);
            }
        }
    }
    out
}

fn axpy(a: &FieldState, s: f64, b: &FieldState) -> FieldState {
    let mut o = a.clone();
    for f in 0..8 {
        o.f[f].iter_mut().zip(&b.f[f]).for_each(|(x, y)| *x += s * y);
    }
    o
}

/// Classical RK4 on the upper-sign derived system with `steps` steps.
pub fn evolve_signed_rk4(fs: &FieldState, m: f64, t: f64, steps: usize) -> Result<FieldState, MaxwellError> {
    let sys = derive_signed_system(m);
    let mut c0 = DMatrix::<f64>::zeros(8, 8);
    for (ri, e) in sys.upper().iter().enumerate() {
        for a in 0..8 {
            c0[(ri, a)] = e.coeffs[a][0];
        }
    }
    let inv = c0.try_inverse().ok_or(MaxwellError::Degenerate)?;
    let h = t / steps as f64;
    let mut y = fs.clone();
    for _ in 0..steps {
        let k1 = rhs(&sys, &inv, &y);
        let k2 = rhs(&sys, &inv, &axpy(&y, h / 2.0, &k1));
        let k3 = rhs(&sys, &inv, &axpy(&y, h / 2.0, &k2));
        let k4 = rhs(&sys, &inv, &axpy(&y, h, &k3));
        for f in 0..8 {
            for i in 0..y.f[f].len() {
                y.f[f][i] += h / 6.0 * (k1.f[f][i] + 2.0 * k2.f[f][i] + 2.0 * k3.f[f][i] + k4.f[f][i]);
            }
        }
    }
    Ok(y)
}

/// Maps to ψ, evolves with the Dirac-like propagator and maps back; fails if
/// the evolved state leaves the field-strength subspace.
pub fn evolve_maxwell(fs: &FieldState, m: f64, t: f64, tol: f64) -> Result<FieldState, MaxwellError> {
    if m < 0.0 {
        return Err(MaxwellError::NegativeMass);
    }
    psi_to_fields(&propagate_psi(&fields_to_psi(fs), m, t), tol)
}

/// exp(−iH(−k)t) per mode: the Dirac-like propagator under the covariant reading.
pub fn propagate_psi(psi: &GridState, m: f64, t: f64) -> GridState {
    let g = gamma_matrices(8).expect("8 is supported");
    psi.apply_multiplier(|k| {
        let e = SymmetricEigen::new(hamiltonian::<f64>(&g, &[-k[0], -k[1], -k[2]], m));
        let d = CMat::from_diagonal(&e.eigenvalues.map(|l| (-IM * (l * t)).exp()));
        &e.eigenvectors * d * e.eigenvectors.adjoint()
    })
}

/// Relative image residual of the evolved ψ, the quantity evolve_maxwell tests.
pub fn image_drift(fs: &FieldState, m: f64, t: f64) -> f64 {
    image_residual(&propagate_psi(&fields_to_psi(fs), m, t))
}

/// L² norms of the two constraint expressions (the E⁰ and H⁰ equations of
/// the derived upper-sign system without their time derivatives).
pub fn constraint_residual(fs: &FieldState, m: f64) -> [f64; 2] {
    let sys = derive_signed_system(m);
    let spec = spectral(fs);
    let n = fs.npts();
    let dv = fs.grid(1).cell_volume();
    let mut out = [0.0; 2];
    for (slot, lead) in [(0, E0), (1, H0)] {
        let e = sys.upper_row(lead).expect("derived system has E⁰ and H⁰ rows").restricted();
        let mut acc = 0.0;
        for i in 0..n {
            let k = spec.k_at(i);
            let mut z = ZERO;
            for a in 0..8 {
                let c = e.coeffs[a];
                let sym = r(c[4]) + IM * (k[0] * c[1] + k[1] * c[2] + k[2] * c[3]);
                z += sym * spec.data[a * n + i];
            }
            acc += z.norm_sqr();
        }
        out[slot] = (acc * dv / n as f64).sqrt();
    }
    out
}

/// Fields with E⁰ = H⁰ = 0 satisfying both constraints: a smooth multi-mode
/// vector field projected, mode by mode, onto the null space of the
/// constraint symbol.
pub fn constrained_fields(dims: [usize; 3], lengths: [f64; 3], m: f64, phase: f64) -> Result<FieldState, MaxwellError> {
    let fs = FieldState::from_fn(dims, lengths, |x| {
        let th: [f64; 3] = std::array::from_fn(|a| 2.0 * std::f64::consts::PI * x[a] / lengths[a]);
        let s = |p: f64| {
            (th[0] + th[1] + th[2] + p + phase).sin() + 0.5 * (2.0 * th[0] - th[1] - p).cos() + 0.3 * (th[1] + 2.0 * th[2] + 2.0 * p).sin()
        };
        [0.0, s(0.1), s(0.7), s(1.9), 0.0, s(1.3), s(2.1), s(2.9)]
    })?;
    let sys = derive_signed_system(m);
    let rows = [
        sys.upper_row(E0).ok_or(MaxwellError::Degenerate)?.restricted(),
        sys.upper_row(H0).ok_or(MaxwellError::Degenerate)?.restricted(),
    ];
    const VEC: [usize; 6] = [1, 2, 3, 5, 6, 7];
    let out = spectral(&fs).map_modes(|k, v| {
        let c = CMat::from_fn(2, 6, |i, j| {
            let co = rows[i].coeffs[VEC[j]];
            r(co[4]) + IM * (k[0] * co[1] + k[1] * co[2] + k[2] * co[3])
        });
        let pinv = c.clone().pseudo_inverse(1e-12).expect("non-negative epsilon");
        let x = CVec::from_fn(6, |j, _| v[VEC[j]]);
        let y = &x - pinv * (&c * &x);
        let mut o = CVec::zeros(8);
        for (j, &a) in VEC.iter().enumerate() {
            o[a] = y[j];
        }
        o
    });
    Ok(FieldState::from_complex(&out.fft_inverse()))
}

/// Per-mode frequencies of the upper-sign derived system at momentum k:
/// |arg| of the eigenvalues of exp(B(k)τ), divided by τ.
pub fn mode_frequencies(m: f64, k: [f64; 3]) -> Result<Vec<f64>, MaxwellError> {
    let sys = derive_signed_system(m);
    let w = omega(k, m).max(1e-3);
    let tau = 0.5 / w;
    let u = signed_generator(&sys, k)? * r(tau);
    let ev = u.exp().eigenvalues().ok_or(MaxwellError::Degenerate)?;
    Ok(ev.iter().map(|z| z.arg().abs() / tau).collect())
}

/// Largest |ω_measured − ω(k,m)| over the modes of the given momenta.
pub fn dispersion_error(m: f64, ks: &[[f64; 3]]) -> Result<f64, MaxwellError> {
    let mut worst = 0.0f64;
    for &k in ks {
        let w = omega(k, m);
        for f in mode_frequencies(m, k)? {
            worst = worst.max((f - w).abs());
        }
    }
    Ok(worst)
}

/// Settings for [`maxwell_suite`].
#[derive(Clone, Debug)]
pub struct MaxwellSuiteOptions {
    pub m: f64,
    pub dims: [usize; 3],
    pub lengths: [f64; 3],
    /// Horizon for constraint preservation.
    pub t_constraint: f64,
    /// Horizon for the image and RK4 comparisons.
    pub t_short: f64,
    pub momenta: Vec<[f64; 3]>,
}

impl MaxwellSuiteOptions {
    pub fn new(m: f64, momenta: Vec<[f64; 3]>) -> Self {
        MaxwellSuiteOptions {
            m,
            dims: [16, 16, 1],
            lengths: [2.0 * std::f64::consts::PI, 7.0, 1.0],
            t_constraint: 50.0,
            t_short: 1.0,
            momenta,
        }
    }
}

/// Image invariance, sign derivation, dispersion, constraint preservation
/// and integrator agreement. Mass-dependent checks run at m = 0 and at the
/// requested mass.
pub fn maxwell_suite(opt: &MaxwellSuiteOptions) -> Result<VerificationReport, MaxwellError> {
    if opt.m < 0.0 {
        return Err(MaxwellError::NegativeMass);
    }
    let mut rep = VerificationReport::new("maxwell");
    rep.merge(signed_system_report(opt.m.max(1.0)));
    let masses: Vec<f64> = if opt.m > 0.0 { vec![0.0, opt.m] } else { vec![0.0] };
    for &m in &masses {
        let fs = constrained_fields(opt.dims, opt.lengths, m, 0.3)?;
        rep.check(
            &format!("image_invariance.m{m}"),
            "field-strength image preserved by the Dirac-like propagator",
            image_drift(&fs, m, opt.t_short),
            1e-12,
        );
        rep.check(
            &format!("dispersion.m{m}"),
            "derived-system mode frequencies equal sqrt(k^2 + m^2)",
            dispersion_error(m, &opt.momenta)?,
            1e-9,
        );
    }
    let m = opt.m;
    let fs = constrained_fields(opt.dims, opt.lengths, m, 0.3)?;
    let scale = fs.max_abs();
    let steps = 10;
    let mut worst = 0.0f64;
    for s in 0..=steps {
        let t = opt.t_constraint * s as f64 / steps as f64;
        let f = evolve_signed_system(&fs, m, t)?;
        let c = constraint_residual(&f, m);
        worst = worst.max(c[0].max(c[1]) / scale);
    }
    rep.check(
        &format!("constraints.m{m}"),
        "constraint residual stays zero for constrained data",
        worst,
        1e-10,
    );

    let f1 = constrained_fields([32, 1, 1], [opt.lengths[0], 1.0, 1.0], m, 0.1)?;
    let kmax = f1.grid(1).wavenumbers(0).iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let wmax = kmax + m;
    let steps = (opt.t_short * wmax / 0.01).ceil() as usize;
    let a = evolve_signed_system(&f1, m, opt.t_short)?;
    let b = evolve_signed_rk4(&f1, m, opt.t_short, steps)?;
    rep.check("rk4_vs_spectral", "RK4 at dt = 0.01/omega_max against the exact propagator", a.max_abs_diff(&b) / f1.max_abs(), 1e-8);

    let f0 = constrained_fields(opt.dims, opt.lengths, 0.0, 0.5)?;
    let e0 = f0.energy();
    let e1 = evolve_signed_system(&f0, 0.0, opt.t_constraint)?.energy();
    rep.check("energy.m0", "field energy conserved in the massless limit", (e1 - e0).abs() / e0, 1e-10);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn random_fields() -> FieldState {
        FieldState::from_fn([8, 4, 2], [2.0 * PI, 3.0, 4.0], |x| {
            std::array::from_fn(|a| ((a as f64 + 1.0) * x[0] + 0.3 * x[1] - 0.2 * a as f64 * x[2]).sin())
        })
        .unwrap()
    }

    #[test]
    fn unit_e3_maps_as_printed() {
        let fs = FieldState::from_fn([1, 1, 1], [1.0; 3], |_| [0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let psi = fields_to_psi(&fs);
        let want = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0];
        for cc in 0..8 {
            assert_eq!(psi.data[cc], r(want[cc]));
        }
    }

    #[test]
    fn roundtrip_and_block_structure() {
        let fs = random_fields();
        let psi = fields_to_psi(&fs);
        assert!(image_residual(&psi) < 1e-16);
        let back = psi_to_fields(&psi, 1e-14).unwrap();
        assert!(back.max_abs_diff(&fs) < 1e-15);
        let z = FieldState::zeros([2, 1, 1], [1.0; 3]).unwrap();
        assert_eq!(fields_to_psi(&z).max_abs(), 0.0);
    }

    #[test]
    fn arbitrary_psi_is_rejected() {
        let g = GridState::from_fn([4, 1, 1], [1.0; 3], 8, |x| (0..8).map(|c| c_(x[0], c)).collect()).unwrap();
        assert!(matches!(psi_to_fields(&g, 1e-10), Err(MaxwellError::SubspaceViolation(_))));
    }

    fn c_(x: f64, c: usize) -> C64 {
        C64::new((x + c as f64).cos(), (2.0 * x - c as f64).sin())
    }

    #[test]
    fn derived_system_is_well_formed_and_linear_in_m() {
        let rep = signed_system_report(1.0);
        let get = |id: &str| rep.checks.iter().find(|c| c.id == id).unwrap().pass;
        assert!(get("signs.structure"));
        assert!(get("signs.mass_linear"));
        assert!(get("signs.free_maxwell"), "{}", rep.to_json());
    }

    #[test]
    fn m0_plane_wave_advances_at_light_speed() {
        let (l, kz, t) = (2.0 * PI, 2.0, 0.9);
        let wave = |t: f64| {
            move |x: [f64; 3]| {
                let c = (kz * x[2] - kz * t).cos();
                [0.0, c, 0.0, 0.0, 0.0, 0.0, c, 0.0]
            }
        };
        let f0 = FieldState::from_fn([1, 1, 16], [1.0, 1.0, l], wave(0.0)).unwrap();
        let want = FieldState::from_fn([1, 1, 16], [1.0, 1.0, l], wave(t)).unwrap();
        let got = evolve_maxwell(&f0, 0.0, t, 1e-12).unwrap();
        assert!(got.max_abs_diff(&want) < 1e-12);
        let got2 = evolve_signed_system(&f0, 0.0, t).unwrap();
        assert!(got2.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn rk4_tracks_spectral() {
        let fs = constrained_fields([16, 1, 1], [2.0 * PI, 1.0, 1.0], 1.0, 0.2).unwrap();
        let t = 1.0;
        let wmax = omega([8.0, 0.0, 0.0], 1.0) + 1.0;
        let steps = (t * wmax / 0.01).ceil() as usize;
        let a = evolve_signed_system(&fs, 1.0, t).unwrap();
        let b = evolve_signed_rk4(&fs, 1.0, t, steps).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-8, "{}", a.max_abs_diff(&b));
    }

    #[test]
    fn constrained_data_satisfies_constraints() {
        let fs = constrained_fields([8, 8, 1], [2.0 * PI, 5.0, 1.0], 1.0, 0.0).unwrap();
        let c = constraint_residual(&fs, 1.0);
        assert!(c[0] < 1e-12 && c[1] < 1e-12, "{c:?}");
        assert!(fs.f[0].iter().chain(&fs.f[4]).all(|x| *x == 0.0));
        assert!(fs.max_abs() > 0.1);
    }

    #[test]
    fn m0_dispersion_is_light_cone() {
        let err = dispersion_error(0.0, &[[0.3, 0.4, 1.2], [1.0, 0.0, 0.0]]).unwrap();
        assert!(err < 1e-9, "{err}");
    }

    #[test]
    fn mass_breaks_the_image() {
        let fs = constrained_fields([8, 8, 1], [2.0 * PI, 5.0, 1.0], 1.0, 0.0).unwrap();
        assert!(image_drift(&fs, 1.0, 1.0) > 0.1);
        assert!(matches!(evolve_maxwell(&fs, 1.0, 1.0, 1e-10), Err(MaxwellError::SubspaceViolation(_))));
        // signed-system frequencies are m ± |k|
        let f = mode_frequencies(1.0, [0.0, 0.0, 0.5]).unwrap();
        assert!(f.iter().all(|w| (w - 1.5).abs() < 1e-9 || (w - 0.5).abs() < 1e-9), "{f:?}");
    }

    #[test]
    fn printed_signs_agree_with_covariant_reading() {
        let rep = signed_system_report(1.0);
        assert!(rep.errata.is_empty(), "{}", rep.to_json());
        let contra = derive_signed_system_with(0.0, Reading::Contravariant);
        let cov = derive_signed_system(0.0);
        // same equations up to the sign of every spatial derivative
        for (a, b) in contra.rows.iter().zip(&cov.rows) {
            for f in 0..8 {
                for j in 1..4 {
                    assert_eq!(a.coeffs[f][j], -b.coeffs[f][j]);
                }
            }
        }
    }

    #[test]
    fn suite_runs_and_separates_massless_from_massive() {
        let mut opt = MaxwellSuiteOptions::new(1.0, vec![[0.3, 0.4, 1.2], [1.0, -2.0, 0.5]]);
        opt.dims = [8, 8, 1];
        opt.t_constraint = 5.0;
        let rep = maxwell_suite(&opt).unwrap();
        let get = |id: &str| rep.checks.iter().find(|c| c.id == id).unwrap_or_else(|| panic!("{id}")).pass;
        for id in ["image_invariance.m0", "dispersion.m0", "rk4_vs_spectral", "energy.m0", "signs.free_maxwell"] {
            assert!(get(id), "{id}: {}", rep.to_json());
        }
        for id in ["image_invariance.m1", "dispersion.m1", "constraints.m1"] {
            assert!(!get(id), "{id}");
        }
        assert!(!rep.pass);
    }
}
