//! Named verification suites, shared by the `verify` command and the
//! acceptance tests. Every suite is deterministic for a given seed.

use crate::clifford::{
    big_gammas, check_clifford, clifford_errata, extended_gammas, qm_gammas, standard_gammas, Representation,
};
use crate::evolution::{
    cross_rep_equivalence, evolve, gaussian_packet, loglog_slope, mean_values, nonrel_phase_errors, transform_rep,
    ConservedLog, EvolutionError, Rep,
};
use crate::grid::{GridError, GridState};
use crate::kspace_ops::{
    check_poincare, dirac_generators, fw_generators, pauli_lubanski_check, random_momenta, rcqm_generators_with,
    BoostSpinSign, KSpaceError, TestPacket,
};
use crate::linalg::*;
use crate::maxwell::{maxwell_suite, MaxwellError, MaxwellSuiteOptions};
use crate::planewave::{spin_eigen_suite, spinor_suite, PlaneWaveError, EIGEN_TABLES};
use crate::report::VerificationReport;
use crate::rlinear::RLinearOp;
use crate::spin_algebra::{casimir_spin, check_su2, multiplet_spin, su2_generators, SpinConfig};
use crate::tables::{errata_diff, PrintedTable, TableError};
use crate::transitions::{dirac_spin_suite, transition_suite, TransitionError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const SUITES: [&str; 12] = [
    "su2",
    "casimir",
    "clifford",
    "transitions",
    "poincare",
    "covariant-spin",
    "spinors",
    "eigen-tables",
    "errata-diffs",
    "evolution",
    "maxwell",
    "nonrel",
];

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}; known: {known}", known = SUITES.join(", "))]
    Unknown(String),
    #[error("mass must be positive")]
    Mass,
    #[error(transparent)]
    Transition(#[from] TransitionError),
    #[error(transparent)]
    KSpace(#[from] KSpaceError),
    #[error(transparent)]
    PlaneWave(#[from] PlaneWaveError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Evolution(#[from] EvolutionError),
    #[error(transparent)]
    Maxwell(#[from] MaxwellError),
    #[error(transparent)]
    Grid(#[from] GridError),
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub m: f64,
    pub seed: u64,
    /// Replaces every per-check default tolerance when set.
    pub tol: Option<f64>,
    /// Restricts the spin-dependent suites to one configuration.
    pub spin: Option<SpinConfig>,
    /// Flips the sign of the spin term in the boosts (mutation harness).
    pub mutate: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { m: 1.0, seed: 2024, tol: None, spin: None, mutate: false }
    }
}

impl SuiteOptions {
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Printed spin configurations with their printed Casimir diagonals as
/// (value, multiplicity) runs.
pub const PRINTED_SPINS: &[(&str, &[(f64, usize)])] = &[
    ("1/2+", &[(0.75, 2)]),
    ("1+", &[(2.0, 3)]),
    ("3/2+", &[(3.75, 4)]),
    ("2+", &[(6.0, 5)]),
    ("1/2,1/2", &[(0.75, 4)]),
    ("1,1", &[(2.0, 6)]),
    ("1+,0+", &[(2.0, 3), (0.0, 1)]),
    ("1,0,1,0", &[(2.0, 3), (0.0, 1), (2.0, 3), (0.0, 1)]),
    ("3/2,3/2", &[(3.75, 8)]),
    ("2,2", &[(6.0, 10)]),
    ("2,0,2,0", &[(6.0, 5), (0.0, 1), (6.0, 5), (0.0, 1)]),
    ("2,1,2,1", &[(6.0, 5), (2.0, 3), (6.0, 5), (2.0, 3)]),
];

/// Particle/antiparticle configurations carried by the Γ sets (N = 4, 8, 12, 16).
pub const GAMMA_CONFIGS: [&str; 5] = ["1/2,1/2", "1,0,1,0", "3/2,3/2", "2,0,2,0", "2,1,2,1"];

/// Configurations with an FW representation.
pub const FW_CONFIGS: [&str; 7] = ["1/2,1/2", "1,1", "1,0,1,0", "3/2,3/2", "2,2", "2,0,2,0", "2,1,2,1"];

fn parse(s: &str) -> SpinConfig {
    s.parse().expect("built-in configuration parses")
}

fn printed_casimir(runs: &[(f64, usize)]) -> CMat {
    let d: Vec<C64> = runs.iter().flat_map(|&(v, n)| std::iter::repeat_n(r(v), n)).collect();
    CMat::from_diagonal(&CVec::from_vec(d))
}

fn selected(opt: &SuiteOptions, all: &[&str]) -> Vec<SpinConfig> {
    match &opt.spin {
        Some(s) => vec![s.clone()],
        None => all.iter().map(|s| parse(s)).collect(),
    }
}

pub fn run_suite(name: &str, opt: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    if !(opt.m > 0.0) {
        return Err(SuiteError::Mass);
    }
    match name {
        "su2" => Ok(su2(opt)),
        "casimir" => Ok(casimir(opt)),
        "clifford" => Ok(clifford(opt)),
        "transitions" => transitions(opt),
        "poincare" => poincare(opt),
        "covariant-spin" => covariant_spin(opt),
        "spinors" => spinors(opt),
        "eigen-tables" => eigen_tables(opt),
        "errata-diffs" => errata_diffs(opt),
        "evolution" => evolution(opt),
        "maxwell" => maxwell(opt),
        "nonrel" => nonrel(opt),
        other => Err(SuiteError::Unknown(other.to_string())),
    }
}

fn su2(opt: &SuiteOptions) -> VerificationReport {
    let mut rep = VerificationReport::new("su2");
    let tol = opt.tol(1e-12);
    let configs = selected(opt, &PRINTED_SPINS.iter().map(|p| p.0).collect::<Vec<_>>());
    for cfg in configs {
        let mut r = check_su2(&multiplet_spin(&cfg), tol);
        r.checks.iter_mut().for_each(|c| c.id = format!("{cfg}.{}", c.id));
        rep.merge(r);
    }
    if opt.spin.is_none() {
        for twice in 0..=8 {
            let mut r = check_su2(&su2_generators(twice), tol);
            r.checks.iter_mut().for_each(|c| c.id = format!("2s={twice}.{}", c.id));
            rep.merge(r);
        }
    }
    rep
}

fn casimir(opt: &SuiteOptions) -> VerificationReport {
    let mut rep = VerificationReport::new("casimir");
    let tol = opt.tol(1e-13);
    for (cfg, runs) in PRINTED_SPINS {
        let c = parse(cfg);
        if opt.spin.as_ref().is_some_and(|s| *s != c) {
            continue;
        }
        let res = max_abs(&(casimir_spin(&multiplet_spin(&c)) - printed_casimir(runs)));
        rep.check(&format!("casimir.{cfg}"), "s^2 equals the printed diagonal", res, tol);
    }
    if let Some(s) = &opt.spin {
        if !PRINTED_SPINS.iter().any(|(c, _)| parse(c) == *s) {
            let res = max_abs(&(casimir_spin(&multiplet_spin(s)) - crate::spin_algebra::casimir_expected(s)));
            rep.check(&format!("casimir.{s}"), "s^2 = s(s+1) blockwise", res, tol);
        }
    }
    rep
}

fn clifford(opt: &SuiteOptions) -> VerificationReport {
    let mut rep = VerificationReport::new("clifford");
    let tol = opt.tol(1e-14);
    let mut sets = vec![
        standard_gammas(),
        qm_gammas(),
        extended_gammas(Representation::Standard),
        extended_gammas(Representation::Qm),
    ];
    for n in [8, 12, 16] {
        sets.push(big_gammas(n).expect("supported"));
    }
    for s in &sets {
        rep.merge(check_clifford(s, tol));
    }
    let std = standard_gammas();
    let id = RLinearOp::identity(4);
    rep.check(
        "product.g0g1g2g3g4",
        "g0 g1 g2 g3 g4 = -I",
        std.product(&[0, 1, 2, 3, 4]).max_abs_diff(&id.scale_real(-1.0)),
        0.0,
    );
    for rep_kind in [Representation::Standard, Representation::Qm] {
        let e = extended_gammas(rep_kind);
        rep.check(
            &format!("product.seven.{rep_kind:?}"),
            "ordered product of the seven generators = I",
            e.product(&[0, 1, 2, 3, 4, 5, 6]).max_abs_diff(&id),
            0.0,
        );
    }
    rep.errata.extend(clifford_errata());
    rep
}

fn transitions(opt: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("transitions");
    let ks = random_momenta(100, 10.0 * opt.m, &mut opt.rng());
    for n in [4, 8, 12, 16] {
        rep.merge(transition_suite(n, opt.m, &ks, opt.tol(1e-12))?);
    }
    Ok(rep)
}

fn random_packet(dim: usize, rng: &mut ChaCha8Rng) -> TestPacket {
    let mut z = || C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    TestPacket {
        center: [0.2, -0.1, 0.3],
        width: 0.8,
        poly: [ONE, z() * 0.3, z() * 0.3, z() * 0.3],
        amplitude: CVec::from_fn(dim, |_, _| z()),
    }
}

fn poincare(opt: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("poincare");
    let mut rng = opt.rng();
    let ks = random_momenta(20, 3.0 * opt.m, &mut rng);
    let tol = opt.tol(1e-8);
    let sign = if opt.mutate { BoostSpinSign::Flipped } else { BoostSpinSign::Standard };
    let t = 0.7;
    let rcqm = selected(opt, &PRINTED_SPINS.iter().map(|p| p.0).collect::<Vec<_>>());
    let pl_points = random_momenta(4, 2.0 * opt.m, &mut rng);
    for cfg in &rcqm {
        let g = rcqm_generators_with(cfg, opt.m, t, sign)?;
        rep.merge(check_poincare(&g, &ks, tol));
        let packet = random_packet(cfg.dim(), &mut rng);
        let mut pl = pauli_lubanski_check(&g, &packet, &pl_points, opt.tol(1e-6));
        pl.checks.iter_mut().for_each(|c| c.id = format!("{cfg}.{}", c.id));
        rep.merge(pl);
    }
    for cfg in selected(opt, &FW_CONFIGS) {
        if opt.spin.is_some() && cfg.paired_half().is_none() {
            continue;
        }
        rep.merge(check_poincare(&fw_generators(&cfg, opt.m, t)?, &ks, tol));
    }
    for cfg in selected(opt, &GAMMA_CONFIGS) {
        if opt.spin.is_some() && !matches!(cfg.dim(), 4 | 8 | 12 | 16) {
            continue;
        }
        match dirac_generators(&cfg, opt.m, t) {
            Ok(g) => rep.merge(check_poincare(&g, &ks, tol)),
            Err(e) if opt.spin.is_some() => rep.flag(format!("no covariant generators for {cfg}: {e}")),
            Err(e) => return Err(e.into()),
        }
    }
    if opt.mutate {
        rep.flag("boost spin term sign flipped");
    }
    Ok(rep)
}

fn covariant_spin(opt: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("covariant-spin");
    let ks = random_momenta(20, 3.0 * opt.m, &mut opt.rng());
    for cfg in selected(opt, &GAMMA_CONFIGS) {
        let mut r = dirac_spin_suite(&cfg, opt.m, &ks, opt.tol(1e-10))?;
        r.checks.iter_mut().for_each(|c| c.id = format!("{cfg}.{}", c.id));
        rep.merge(r);
    }
    Ok(rep)
}

fn spinors(opt: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("spinors");
    let ks = random_momenta(20, 3.0 * opt.m, &mut opt.rng());
    for n in [4, 8, 12, 16] {
        rep.merge(spinor_suite(n, opt.m, &ks, opt.tol(1e-12))?);
    }
    Ok(rep)
}

fn eigen_tables(opt: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("eigen-tables");
    let ks = random_momenta(20, 3.0 * opt.m, &mut opt.rng());
    for t in EIGEN_TABLES {
        if opt.spin.as_ref().is_some_and(|s| *s != parse(t.config)) {
            continue;
        }
        rep.merge(spin_eigen_suite(t.id, opt.m, &ks, opt.tol(1e-10))?);
    }
    Ok(rep)
}

fn errata_diffs(opt: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("errata-diffs");
    let ks = random_momenta(20, 3.0 * opt.m, &mut opt.rng());
    for t in PrintedTable::ALL {
        rep.merge(errata_diff(t, opt.m, &ks, opt.tol(1e-10))?);
    }
    Ok(rep)
}

fn packet_state(dims: [usize; 3], lengths: [f64; 3], n: usize, rng: &mut ChaCha8Rng) -> Result<GridState, SuiteError> {
    let w: Vec<C64> = (0..n).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let center = lengths.map(|l| l / 2.0);
    let k0 = [1.2, -0.6, 0.4];
    Ok(gaussian_packet(dims, lengths, &w, center, lengths[0] / 12.0, k0)?)
}

fn evolution(opt: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("evolution");
    let mut rng = opt.rng();
    let m = opt.m;
    let grids = [([256, 1, 1], [40.0, 1.0, 1.0]), ([32, 32, 32], [16.0, 16.0, 16.0])];
    for (dims, lengths) in grids {
        for n in [4, 8] {
            let st = packet_state(dims, lengths, n, &mut rng)?;
            let mut r = cross_rep_equivalence(&st, n, m, 3.0, opt.tol(1e-10))?;
            let tag = if dims[1] > 1 { "3d" } else { "1d" };
            r.checks.iter_mut().for_each(|c| c.id = format!("{tag}.N{n}.{}", c.id));
            rep.merge(r);
        }
    }

    let zero = |n: usize| move |_: [f64; 3]| zeros(n);
    for n in [4, 8] {
        let base = packet_state([256, 1, 1], [40.0, 1.0, 1.0], n, &mut rng)?;
        for to in [Rep::Rcqm, Rep::Fw, Rep::Dirac] {
            let st = transform_rep(&base, Rep::Rcqm, to, n, m)?;
            let mut log = ConservedLog::default();
            for s in 0..=10 {
                let t = 2.0 * s as f64;
                log.push(mean_values(&evolve(&st, to, m, t)?, m, t, &zero(n)));
            }
            rep.check(
                &format!("conserved.N{n}.{to}"),
                "norm and P0 constant in time",
                log.max_relative_drift(),
                opt.tol(1e-11),
            );
        }
    }

    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = 4;
        let mut st = GridState::zeros([16, 1, 1], [10.0, 1.0, 1.0], n)?;
        st.data.iter_mut().for_each(|z| *z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let e = mean_values(&st, m, 0.0, &zero(n));
        worst = worst.max((m * e.norm - e.p0) / e.norm);
    }
    rep.check("energy_bound", "P0 >= m norm on random states", worst.max(0.0), 0.0);
    Ok(rep)
}

fn maxwell(opt: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let ks = random_momenta(20, 3.0 * opt.m, &mut opt.rng());
    Ok(maxwell_suite(&MaxwellSuiteOptions::new(opt.m, ks))?)
}

/// Phase error between the relativistic and Schrödinger propagators over
/// |k|/m ∈ [0.01, 0.1]; expected slope 4.
pub fn nonrel_slope(m: f64) -> Result<(f64, Vec<(f64, f64)>), SuiteError> {
    let dk = 0.01 * m;
    let length = 2.0 * std::f64::consts::PI / dk;
    let modes: Vec<usize> = (1..=10).collect();
    let pts = nonrel_phase_errors(m, 100.0 / m, length, 64, &modes)?;
    Ok((loglog_slope(&pts), pts))
}

fn nonrel(opt: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("nonrel");
    let (slope, _) = nonrel_slope(opt.m)?;
    rep.check("nonrel.slope", "log-log slope of the phase error is 4", (slope - 4.0).abs(), opt.tol(0.1));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_suites_pass() {
        let opt = SuiteOptions::default();
        for s in ["su2", "casimir", "clifford", "nonrel"] {
            let r = run_suite(s, &opt).unwrap();
            assert!(r.pass, "{s}: {}", r.to_json());
        }
    }

    #[test]
    fn clifford_errata_are_attached() {
        let r = run_suite("clifford", &SuiteOptions::default()).unwrap();
        assert!(!r.errata.is_empty());
    }

    #[test]
    fn printed_casimirs_match_registry_dims() {
        for (cfg, runs) in PRINTED_SPINS {
            let n: usize = runs.iter().map(|r| r.1).sum();
            assert_eq!(parse(cfg).dim(), n, "{cfg}");
        }
    }

    #[test]
    fn wrong_casimir_is_caught() {
        let c = parse("1,0,1,0");
        let bad = printed_casimir(&[(2.0, 4), (0.0, 4)]);
        assert!(max_abs(&(casimir_spin(&multiplet_spin(&c)) - bad)) > 1.0);
    }

    #[test]
    fn mutation_fails_poincare() {
        let opt = SuiteOptions { spin: Some(parse("1/2+")), ..Default::default() };
        assert!(run_suite("poincare", &opt).unwrap().pass);
        let bad = SuiteOptions { mutate: true, ..opt };
        assert!(!run_suite("poincare", &bad).unwrap().pass);
    }

    #[test]
    fn unknown_suite_and_bad_mass() {
        assert!(matches!(run_suite("nope", &SuiteOptions::default()), Err(SuiteError::Unknown(_))));
        let opt = SuiteOptions { m: 0.0, ..Default::default() };
        assert!(matches!(run_suite("su2", &opt), Err(SuiteError::Mass)));
    }

    #[test]
    fn same_seed_same_report() {
        let opt = SuiteOptions::default();
        let a = run_suite("transitions", &opt).unwrap().to_json();
        let b = run_suite("transitions", &opt).unwrap().to_json();
        assert_eq!(a, b);
    }
}
