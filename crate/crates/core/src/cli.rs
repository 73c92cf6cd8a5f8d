//! Batch driver behind the `rcqm` binary.
//!
//! Settings come from an optional flat `key = value` file (`--config`) and
//! are overridden by command-line flags. Exit codes: 0 pass, 1 a check
//! failed, 2 I/O failure, 3 configuration error.

use crate::evolution::{cross_rep_equivalence, evolve, gaussian_packet, mean_values, transform_rep, ConservedLog, Rep};
use crate::grid::GridState;
use crate::io::{load_complex, save_complex, save_fields, IoError};
use crate::linalg::*;
use crate::maxwell::{
    constrained_fields, constraint_residual, evolve_maxwell, evolve_signed_system, image_drift, signed_system_report,
    FieldState, MaxwellError,
};
use crate::report::VerificationReport;
use crate::spin_algebra::{multiplet_spin, SpinConfig};
use crate::suites::{run_suite, SuiteError, SuiteOptions, SUITES};
use crate::transitions::{dirac_spin_computed, fw_spin};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

/// Keys accepted in config files.
pub const KEYS: [&str; 17] = [
    "command",
    "suite",
    "spin",
    "rep",
    "mass",
    "grid",
    "box",
    "t",
    "tol",
    "out",
    "out_dir",
    "seed",
    "snapshots",
    "mutate",
    "equivalence",
    "input",
    "k0",
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Io(e) => CliError::Io(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn cfg_err(e: impl std::fmt::Display) -> CliError {
    CliError::Config(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "rcqm", version, about = "Verification suites, spectral evolution and field simulations")]
struct Cli {
    /// Flat key = value settings file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Evolve a state and write snapshots plus conserved quantities.
    Evolve(EvolveArgs),
    /// Evolve field-strength data and write snapshots plus constraint/energy series.
    Maxwell(MaxwellArgs),
}

#[derive(Args, Debug, Default)]
struct VerifyArgs {
    /// Comma-separated suites, or "all".
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    spin: Option<String>,
    #[arg(long)]
    mass: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Flip the boost spin-term sign (mutation check; expected to fail).
    #[arg(long)]
    mutate: bool,
}

#[derive(Args, Debug, Default)]
struct EvolveArgs {
    #[arg(long)]
    rep: Option<String>,
    #[arg(long)]
    spin: Option<String>,
    #[arg(long)]
    grid: Option<String>,
    #[arg(long = "box")]
    box_: Option<String>,
    #[arg(long)]
    mass: Option<String>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    snapshots: Option<String>,
    #[arg(long)]
    out_dir: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// RCQM-ARRAY initial state in the target representation.
    #[arg(long)]
    input: Option<String>,
    /// Carrier momentum of the Gaussian preset, k[,k,k].
    #[arg(long)]
    k0: Option<String>,
    /// Also run the cross-representation check at each snapshot.
    #[arg(long)]
    equivalence: bool,
}

#[derive(Args, Debug, Default)]
struct MaxwellArgs {
    #[arg(long)]
    mass: Option<String>,
    #[arg(long)]
    grid: Option<String>,
    #[arg(long = "box")]
    box_: Option<String>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    snapshots: Option<String>,
    #[arg(long)]
    out_dir: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    seed: Option<String>,
}

/// Parses `key = value` lines; `#` and `;` start comments, `[section]`
/// headers are ignored, unknown or repeated keys are errors.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split(['#', ';']).next().unwrap_or("").trim();
        if line.is_empty() || (line.starts_with('[') && line.ends_with(']')) {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| cfg_err(format!("line {}: expected key = value", i + 1)))?;
        let key = k.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(cfg_err(format!("line {}: unknown key {key:?}", i + 1)));
        }
        if map.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(cfg_err(format!("line {}: duplicate key {key:?}", i + 1)));
        }
    }
    Ok(map)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Evolve,
    Maxwell,
}

/// Validated settings.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub suites: Vec<String>,
    pub spin: Option<SpinConfig>,
    pub rep: Rep,
    pub mass: f64,
    pub dims: [usize; 3],
    pub lengths: [f64; 3],
    pub t: f64,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub seed: u64,
    pub snapshots: usize,
    pub mutate: bool,
    pub equivalence: bool,
    pub input: Option<PathBuf>,
    pub k0: [f64; 3],
}

fn num<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str, default: T) -> Result<T, CliError> {
    match map.get(key) {
        None => Ok(default),
        Some(v) => v.parse().map_err(|_| cfg_err(format!("{key}: cannot parse {v:?}"))),
    }
}

fn triple<T: std::str::FromStr + Copy>(v: &str, key: &str, pad: T) -> Result<[T; 3], CliError> {
    let parts: Vec<&str> = v.split(',').map(str::trim).collect();
    if parts.is_empty() || parts.len() > 3 {
        return Err(cfg_err(format!("{key}: expected 1 to 3 comma-separated values")));
    }
    let mut out = [pad; 3];
    for (i, p) in parts.iter().enumerate() {
        out[i] = p.parse().map_err(|_| cfg_err(format!("{key}: cannot parse {p:?}")))?;
    }
    Ok(out)
}

fn flag(map: &BTreeMap<String, String>, key: &str) -> Result<bool, CliError> {
    match map.get(key).map(String::as_str) {
        None | Some("false") | Some("0") | Some("no") => Ok(false),
        Some("true") | Some("1") | Some("yes") => Ok(true),
        Some(v) => Err(cfg_err(format!("{key}: expected a boolean, got {v:?}"))),
    }
}

impl RunConfig {
    pub fn from_map(map: &BTreeMap<String, String>) -> Result<Self, CliError> {
        if let Some(k) = map.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(cfg_err(format!("unknown key {k:?}")));
        }
        let command = match map.get("command").map(String::as_str) {
            Some("verify") => Command::Verify,
            Some("evolve") => Command::Evolve,
            Some("maxwell") => Command::Maxwell,
            Some(other) => return Err(cfg_err(format!("unknown command {other:?}"))),
            None => return Err(cfg_err("no command given")),
        };
        let suites = match map.get("suite").map(String::as_str) {
            Some("all") => SUITES.iter().map(|s| s.to_string()).collect(),
            Some(s) => s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(String::from).collect(),
            None => Vec::new(),
        };
        if let Some(bad) = suites.iter().find(|s| !SUITES.contains(&s.as_str())) {
            return Err(cfg_err(format!("unknown suite {bad:?}; known: {}", SUITES.join(", "))));
        }
        let spin = map.get("spin").map(|s| s.parse::<SpinConfig>().map_err(cfg_err)).transpose()?;
        let rep = map.get("rep").map(|s| s.parse::<Rep>().map_err(cfg_err)).transpose()?.unwrap_or(Rep::Rcqm);
        let dims = map.get("grid").map(|v| triple(v, "grid", 1usize)).transpose()?.unwrap_or([64, 1, 1]);
        let lengths = map.get("box").map(|v| triple(v, "box", 1.0f64)).transpose()?.unwrap_or([20.0, 1.0, 1.0]);
        let k0 = map.get("k0").map(|v| triple(v, "k0", 0.0f64)).transpose()?.unwrap_or([0.0; 3]);
        let cfg = RunConfig {
            command,
            suites,
            spin,
            rep,
            mass: num(map, "mass", 1.0)?,
            dims,
            lengths,
            t: num(map, "t", 1.0)?,
            tol: map.get("tol").map(|v| v.parse().map_err(|_| cfg_err(format!("tol: cannot parse {v:?}")))).transpose()?,
            out: map.get("out").map(PathBuf::from),
            out_dir: map.get("out_dir").map(PathBuf::from),
            seed: num(map, "seed", 2024u64)?,
            snapshots: num(map, "snapshots", 2usize)?,
            mutate: flag(map, "mutate")?,
            equivalence: flag(map, "equivalence")?,
            input: map.get("input").map(PathBuf::from),
            k0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.mass.is_finite() && self.mass >= 0.0) {
            return Err(cfg_err("mass must be finite and non-negative"));
        }
        if self.mass == 0.0 && self.command != Command::Maxwell {
            return Err(cfg_err("mass must be positive for this command"));
        }
        if !self.t.is_finite() {
            return Err(cfg_err("t must be finite"));
        }
        if self.tol.is_some_and(|t| !(t >= 0.0)) {
            return Err(cfg_err("tol must be non-negative"));
        }
        if self.dims.contains(&0) || self.lengths.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
            return Err(cfg_err("grid sizes and box lengths must be positive"));
        }
        match self.command {
            Command::Verify if self.suites.is_empty() => Err(cfg_err("empty suite list")),
            Command::Evolve | Command::Maxwell if self.out_dir.is_none() => Err(cfg_err("out_dir is required")),
            Command::Evolve | Command::Maxwell if self.snapshots == 0 => Err(cfg_err("snapshots must be at least 1")),
            _ => Ok(()),
        }
    }

    /// Snapshot times: t alone for one snapshot, else evenly spaced 0..=t.
    pub fn times(&self) -> Vec<f64> {
        if self.snapshots == 1 {
            vec![self.t]
        } else {
            (0..self.snapshots).map(|j| self.t * j as f64 / (self.snapshots - 1) as f64).collect()
        }
    }
}

fn overlay(map: &mut BTreeMap<String, String>, pairs: Vec<(&str, Option<String>)>) {
    for (k, v) in pairs {
        if let Some(v) = v {
            map.insert(k.to_string(), v);
        }
    }
}

fn settings_from_args(cli: Cli) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            parse_config(&text)?
        }
        None => BTreeMap::new(),
    };
    let on = |b: bool| b.then(|| "true".to_string());
    let cmd_name = match cli.cmd {
        Some(Cmd::Verify(a)) => {
            overlay(
                &mut map,
                vec![
                    ("suite", a.suite),
                    ("spin", a.spin),
                    ("mass", a.mass),
                    ("tol", a.tol),
                    ("out", a.out),
                    ("seed", a.seed),
                    ("mutate", on(a.mutate)),
                ],
            );
            Some("verify")
        }
        Some(Cmd::Evolve(a)) => {
            overlay(
                &mut map,
                vec![
                    ("rep", a.rep),
                    ("spin", a.spin),
                    ("grid", a.grid),
                    ("box", a.box_),
                    ("mass", a.mass),
                    ("t", a.t),
                    ("snapshots", a.snapshots),
                    ("out_dir", a.out_dir),
                    ("tol", a.tol),
                    ("seed", a.seed),
                    ("input", a.input),
                    ("k0", a.k0),
                    ("equivalence", on(a.equivalence)),
                ],
            );
            Some("evolve")
        }
        Some(Cmd::Maxwell(a)) => {
            overlay(
                &mut map,
                vec![
                    ("mass", a.mass),
                    ("grid", a.grid),
                    ("box", a.box_),
                    ("t", a.t),
                    ("snapshots", a.snapshots),
                    ("out_dir", a.out_dir),
                    ("tol", a.tol),
                    ("seed", a.seed),
                ],
            );
            Some("maxwell")
        }
        None => None,
    };
    if let Some(c) = cmd_name {
        map.insert("command".into(), c.into());
    }
    Ok(map)
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("RCQM_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| cfg_err(format!("RCQM_THREADS: expected a positive integer, got {v:?}")))?;
        // a pool may already exist when called repeatedly in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Entry point: parses arguments, runs the command, returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match run_parsed(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("rcqm: {e}");
            e.exit_code()
        }
    }
}

fn run_parsed(cli: Cli) -> Result<i32, CliError> {
    configure_threads()?;
    let cfg = RunConfig::from_map(&settings_from_args(cli)?)?;
    let report = match cfg.command {
        Command::Verify => cmd_verify(&cfg)?,
        Command::Evolve => cmd_evolve(&cfg)?,
        Command::Maxwell => cmd_maxwell(&cfg)?,
    };
    for c in report.failed() {
        eprintln!("FAIL {}: residual {:.3e} > tol {:.1e} ({})", c.id, c.residual, c.tol, c.anchor);
    }
    println!(
        "{}: {} ({} checks, {} errata, max residual {:.3e})",
        report.suite,
        if report.pass { "PASS" } else { "FAIL" },
        report.checks.len(),
        report.errata.len(),
        report.max_residual()
    );
    Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn prepare_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))
}

fn suite_err(e: SuiteError) -> CliError {
    cfg_err(e)
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<VerificationReport, CliError> {
    let opt = SuiteOptions { m: cfg.mass, seed: cfg.seed, tol: cfg.tol, spin: cfg.spin.clone(), mutate: cfg.mutate };
    let mut report = VerificationReport::new(&cfg.suites.join(","));
    for s in &cfg.suites {
        report.merge(run_suite(s, &opt).map_err(suite_err)?);
    }
    let json = report.to_json() + "\n";
    match &cfg.out {
        Some(p) => write_text(p, &json)?,
        None => print!("{json}"),
    }
    Ok(report)
}

fn s3_function(config: &SpinConfig, rep: Rep, m: f64) -> Box<dyn Fn([f64; 3]) -> CMat + Sync> {
    let n = config.dim();
    match rep {
        Rep::Rcqm => {
            let s = multiplet_spin(config).s[2].clone();
            Box::new(move |_| s.clone())
        }
        Rep::Fw => match fw_spin(config) {
            Ok(s) => {
                let s = s.s[2].clone();
                Box::new(move |_| s.clone())
            }
            Err(_) => Box::new(move |_| zeros(n)),
        },
        Rep::Dirac => {
            let c = config.clone();
            Box::new(move |k| dirac_spin_computed(&c, k, m).map(|s| s.s[2].clone()).unwrap_or_else(|_| zeros(n)))
        }
    }
}

/// Normalized Gaussian in the canonical representation with seeded
/// component weights.
fn preset_state(cfg: &RunConfig, n: usize) -> Result<GridState, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let w: Vec<C64> = (0..n).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let center = cfg.lengths.map(|l| l / 2.0);
    let width = cfg
        .dims
        .iter()
        .zip(cfg.lengths)
        .filter(|(d, _)| **d > 1)
        .map(|(_, l)| l)
        .fold(f64::INFINITY, f64::min)
        .min(cfg.lengths[0])
        / 12.0;
    let g = gaussian_packet(cfg.dims, cfg.lengths, &w, center, width, cfg.k0).map_err(cfg_err)?;
    let norm = (g.norm_sq() * g.cell_volume()).sqrt();
    Ok(g.scaled(r(1.0 / norm)))
}

pub fn cmd_evolve(cfg: &RunConfig) -> Result<VerificationReport, CliError> {
    let config = cfg.spin.clone().unwrap_or_else(|| "1/2,1/2".parse().expect("valid"));
    let n = config.dim();
    let dir = cfg.out_dir.as_ref().expect("validated");
    let m = cfg.mass;
    let (canonical, state0) = match &cfg.input {
        Some(p) => {
            let s = load_complex(p)?;
            if s.ncomp != n {
                return Err(cfg_err(format!("input has {} components, spin {config} needs {n}", s.ncomp)));
            }
            (None, s)
        }
        None => {
            let c = preset_state(cfg, n)?;
            let s = transform_rep(&c, Rep::Rcqm, cfg.rep, n, m).map_err(cfg_err)?;
            (Some(c), s)
        }
    };
    if cfg.equivalence && canonical.is_none() {
        return Err(cfg_err("the equivalence check needs the preset initial state"));
    }
    evolve(&state0, cfg.rep, m, 0.0).map_err(cfg_err)?;
    prepare_dir(dir)?;
    let s3 = s3_function(&config, cfg.rep, m);
    let mut log = ConservedLog::default();
    let mut report = VerificationReport::new(&format!("evolve.{}.{}", cfg.rep, config));
    let tol = cfg.tol.unwrap_or(1e-10);
    let mut eq_csv = String::from("t,diagram_fw,diagram_dirac,roundtrip\n");
    let mut eq_worst = 0.0f64;
    for (j, &t) in cfg.times().iter().enumerate() {
        let st = evolve(&state0, cfg.rep, m, t).map_err(cfg_err)?;
        save_complex(&dir.join(format!("snap_{j:04}.rcqm")), &st)?;
        log.push(mean_values(&st, m, t, s3.as_ref()));
        if let (true, Some(c)) = (cfg.equivalence, &canonical) {
            let r = cross_rep_equivalence(c, n, m, t, tol).map_err(cfg_err)?;
            let get = |id: &str| r.checks.iter().find(|x| x.id == id).map_or(f64::NAN, |x| x.residual);
            let _ = writeln!(eq_csv, "{t:.17e},{:.17e},{:.17e},{:.17e}", get("diagram.fw"), get("diagram.dirac"), get("roundtrip"));
            eq_worst = eq_worst.max(r.max_residual());
        }
    }
    write_text(&dir.join("conserved.csv"), &log.to_csv())?;
    report.check("conserved", "norm and P0 constant in time", log.max_relative_drift(), cfg.tol.unwrap_or(1e-11));
    report.check("energy_bound", "P0 >= m norm", (-log.energy_margin(m)).max(0.0), 1e-12);
    if cfg.equivalence {
        write_text(&dir.join("equivalence.csv"), &eq_csv)?;
        report.check("equivalence", "commuting diagram across representations", eq_worst, tol);
    }
    write_text(&dir.join("report.json"), &(report.to_json() + "\n"))?;
    Ok(report)
}

/// Plane wave travelling along the first axis with more than one point:
/// E along the next axis, H along the one after, both cos(k x − k t).
pub fn plane_wave(dims: [usize; 3], lengths: [f64; 3], t: f64) -> Result<FieldState, MaxwellError> {
    let ax = (0..3).find(|&a| dims[a] > 1).unwrap_or(0);
    let k = 2.0 * std::f64::consts::PI / lengths[ax] * if dims[ax] > 4 { 2.0 } else { 1.0 };
    let (ea, ha) = ((ax + 1) % 3, (ax + 2) % 3);
    FieldState::from_fn(dims, lengths, |x| {
        let c = (k * x[ax] - k * t).cos();
        let mut f = [0.0; 8];
        f[1 + ea] = c;
        f[5 + ha] = c;
        f
    })
}

pub fn cmd_maxwell(cfg: &RunConfig) -> Result<VerificationReport, CliError> {
    let dir = cfg.out_dir.as_ref().expect("validated");
    let m = cfg.mass;
    prepare_dir(dir)?;
    let mut report = VerificationReport::new(&format!("maxwell.m{m}"));
    let tol = cfg.tol.unwrap_or(1e-10);
    if m == 0.0 {
        let f0 = plane_wave(cfg.dims, cfg.lengths, 0.0).map_err(cfg_err)?;
        let mut worst = 0.0f64;
        for &t in &cfg.times() {
            let got = evolve_maxwell(&f0, 0.0, t, 1e-10).map_err(cfg_err)?;
            let want = plane_wave(cfg.dims, cfg.lengths, t).map_err(cfg_err)?;
            worst = worst.max(got.max_abs_diff(&want));
        }
        report.check("plane_wave", "massless plane wave against the closed form", worst, tol);
    }

    let phase = ChaCha8Rng::seed_from_u64(cfg.seed).random_range(0.0..std::f64::consts::TAU);
    let f0 = constrained_fields(cfg.dims, cfg.lengths, m, phase).map_err(cfg_err)?;
    let scale = f0.max_abs().max(f64::MIN_POSITIVE);
    let mut csv = String::from("t,constraint_E,constraint_H,energy,image_residual\n");
    let mut worst_c = 0.0f64;
    let mut worst_img = 0.0f64;
    let mut via_psi = true;
    for (j, &t) in cfg.times().iter().enumerate() {
        let img = image_drift(&f0, m, t);
        worst_img = worst_img.max(img);
        let f = match evolve_maxwell(&f0, m, t, 1e-12) {
            Ok(f) => f,
            Err(MaxwellError::SubspaceViolation(_)) => {
                via_psi = false;
                evolve_signed_system(&f0, m, t).map_err(cfg_err)?
            }
            Err(e) => return Err(cfg_err(e)),
        };
        save_fields(&dir.join(format!("fields_{j:04}.rcqm")), &f)?;
        let c = constraint_residual(&f, m);
        worst_c = worst_c.max(c[0].max(c[1]) / scale);
        let _ = writeln!(csv, "{t:.17e},{:.17e},{:.17e},{:.17e},{img:.17e}", c[0], c[1], f.energy());
    }
    if !via_psi {
        report.flag("evolved state left the field-strength subspace; snapshots use the derived signed system");
    }
    write_text(&dir.join("constraints.csv"), &csv)?;
    report.check("image_invariance", "field-strength image preserved by the evolution", worst_img, 1e-12);
    report.check("constraints", "constraint residual stays zero (relative to max field)", worst_c, tol);
    let signs = signed_system_report(m);
    write_text(&dir.join("sign_errata.json"), &(signs.to_json() + "\n"))?;
    report.merge(signs);
    write_text(&dir.join("report.json"), &(report.to_json() + "\n"))?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn config_file_parsing() {
        let m = parse_config("# run\n[run]\ncommand = verify\nsuite = su2, casimir ; inline\nout-dir = x\n").unwrap();
        assert_eq!(m["suite"], "su2, casimir");
        assert_eq!(m["out_dir"], "x");
        assert!(matches!(parse_config("colour = red"), Err(CliError::Config(_))));
        assert!(matches!(parse_config("mass = 1\nmass = 2"), Err(CliError::Config(_))));
        assert!(matches!(parse_config("mass"), Err(CliError::Config(_))));
    }

    #[test]
    fn run_config_validation() {
        let c = RunConfig::from_map(&map(&[("command", "verify"), ("suite", "su2,clifford")])).unwrap();
        assert_eq!(c.suites, vec!["su2", "clifford"]);
        let all = RunConfig::from_map(&map(&[("command", "verify"), ("suite", "all")])).unwrap();
        assert_eq!(all.suites.len(), SUITES.len());
        for bad in [
            vec![("command", "verify"), ("suite", "")],
            vec![("command", "verify"), ("suite", "bogus")],
            vec![("command", "evolve")],
            vec![("command", "evolve"), ("out_dir", "d"), ("grid", "4,4,4,4")],
            vec![("command", "maxwell"), ("out_dir", "d"), ("mass", "-1")],
            vec![("command", "verify"), ("suite", "su2"), ("spin", "1/3")],
            vec![("command", "fly")],
            vec![],
        ] {
            assert!(RunConfig::from_map(&map(&bad)).is_err(), "{bad:?}");
        }
        let e = RunConfig::from_map(&map(&[("command", "evolve"), ("out_dir", "d"), ("grid", "8,4"), ("box", "3")])).unwrap();
        assert_eq!(e.dims, [8, 4, 1]);
        assert_eq!(e.lengths, [3.0, 1.0, 1.0]);
    }

    #[test]
    fn snapshot_times() {
        let mut c = RunConfig::from_map(&map(&[("command", "evolve"), ("out_dir", "d"), ("t", "2")])).unwrap();
        c.snapshots = 1;
        assert_eq!(c.times(), vec![2.0]);
        c.snapshots = 3;
        assert_eq!(c.times(), vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn bad_flags_are_config_errors() {
        assert_eq!(run(["rcqm", "verify", "--nope"]), EXIT_CONFIG);
        assert_eq!(run(["rcqm", "verify", "--suite", ""]), EXIT_CONFIG);
        assert_eq!(run(["rcqm", "--help"]), EXIT_PASS);
    }

    #[test]
    fn plane_wave_picks_the_populated_axis() {
        let f = plane_wave([1, 8, 1], [1.0, 2.0, 1.0], 0.0).unwrap();
        assert!(f.f[3].iter().any(|x| x.abs() > 0.5)); // E along z
        assert!(f.f[5].iter().any(|x| x.abs() > 0.5)); // H along x
    }
}
