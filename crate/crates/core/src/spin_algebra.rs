//! SU(2) generators for spin singlets and particle–antiparticle multiplets.

use crate::linalg::*;
use crate::report::VerificationReport;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sector {
    Particle,
    Antiparticle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinEntry {
    pub twice_spin: u32,
    pub sector: Sector,
}

impl SpinEntry {
    pub fn dim(&self) -> usize {
        self.twice_spin as usize + 1
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SpinConfigError {
    #[error("spin configuration is empty")]
    Empty,
    #[error("cannot parse spin entry {0:?}")]
    BadEntry(String),
}

/// Ordered list of irreducible blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpinConfig {
    entries: Vec<SpinEntry>,
}

impl SpinConfig {
    pub fn new(entries: Vec<SpinEntry>) -> Result<Self, SpinConfigError> {
        if entries.is_empty() {
            return Err(SpinConfigError::Empty);
        }
        Ok(Self { entries })
    }

    pub fn singlet(twice_spin: u32) -> Self {
        Self { entries: vec![SpinEntry { twice_spin, sector: Sector::Particle }] }
    }

    /// Particle blocks followed by the same blocks as antiparticles.
    pub fn particle_antiparticle(twice_spins: &[u32]) -> Self {
        let mut entries: Vec<SpinEntry> = twice_spins
            .iter()
            .map(|&t| SpinEntry { twice_spin: t, sector: Sector::Particle })
            .collect();
        entries.extend(
            twice_spins
                .iter()
                .map(|&t| SpinEntry { twice_spin: t, sector: Sector::Antiparticle }),
        );
        Self { entries }
    }

    /// Spin-s doublet (s, s) as particle + antiparticle.
    pub fn doublet(twice_spin: u32) -> Self {
        Self::particle_antiparticle(&[twice_spin])
    }

    pub fn entries(&self) -> &[SpinEntry] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.iter().map(SpinEntry::dim).sum()
    }

    pub fn has_antiparticle(&self) -> bool {
        self.entries.iter().any(|e| e.sector == Sector::Antiparticle)
    }

    /// For configs of the form (particle blocks, identical antiparticle blocks),
    /// the particle half.
    pub fn paired_half(&self) -> Option<SpinConfig> {
        let n = self.entries.len();
        if n % 2 != 0 {
            return None;
        }
        let (a, b) = self.entries.split_at(n / 2);
        let ok = a.iter().zip(b).all(|(p, q)| {
            p.sector == Sector::Particle
                && q.sector == Sector::Antiparticle
                && p.twice_spin == q.twice_spin
        });
        ok.then(|| SpinConfig { entries: a.to_vec() })
    }
}

fn parse_twice_spin(s: &str) -> Option<u32> {
    match s.split_once('/') {
        Some((num, "2")) => num.trim().parse().ok(),
        Some(_) => None,
        None => s.trim().parse::<u32>().ok().map(|v| 2 * v),
    }
}

impl FromStr for SpinConfig {
    type Err = SpinConfigError;

    /// Comma-separated spins, e.g. `"1/2+,1/2-"` or `"3/2,3/2"`.
    ///
    /// Entries may carry a `+` (particle) or `-` (antiparticle) mark. Without
    /// any marks, a list whose second half repeats the first half is read as
    /// particle blocks followed by antiparticle blocks; any other unmarked list
    /// is all particles.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Err(SpinConfigError::Empty);
        }
        let mut parsed = Vec::new();
        let mut any_mark = false;
        for raw in s.split(',') {
            let tok = raw.trim();
            let (body, mark) = if let Some(b) = tok.strip_suffix('+') {
                (b, Some(Sector::Particle))
            } else if let Some(b) = tok.strip_suffix('-') {
                (b, Some(Sector::Antiparticle))
            } else {
                (tok, None)
            };
            any_mark |= mark.is_some();
            let tw = parse_twice_spin(body).ok_or_else(|| SpinConfigError::BadEntry(tok.to_string()))?;
            parsed.push((tw, mark));
        }
        let n = parsed.len();
        let entries = if any_mark {
            parsed
                .into_iter()
                .map(|(t, m)| SpinEntry { twice_spin: t, sector: m.unwrap_or(Sector::Particle) })
                .collect()
        } else if n % 2 == 0 && parsed[..n / 2] == parsed[n / 2..] {
            parsed
                .iter()
                .enumerate()
                .map(|(i, &(t, _))| SpinEntry {
                    twice_spin: t,
                    sector: if i < n / 2 { Sector::Particle } else { Sector::Antiparticle },
                })
                .collect()
        } else {
            parsed
                .into_iter()
                .map(|(t, _)| SpinEntry { twice_spin: t, sector: Sector::Particle })
                .collect()
        };
        SpinConfig::new(entries)
    }
}

impl fmt::Display for SpinConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| {
                let s = if e.twice_spin % 2 == 0 {
                    format!("{}", e.twice_spin / 2)
                } else {
                    format!("{}/2", e.twice_spin)
                };
                let mark = match e.sector {
                    Sector::Particle => '+',
                    Sector::Antiparticle => '-',
                };
                format!("{s}{mark}")
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Three spin matrices (s¹, s², s³).
#[derive(Clone, Debug, PartialEq)]
pub struct SpinTriple {
    pub s: [CMat; 3],
}

impl SpinTriple {
    pub fn dim(&self) -> usize {
        self.s[0].nrows()
    }

    /// s_{ln} with s_{23} = s¹, s_{31} = s², s_{12} = s³ (indices 0-based).
    pub fn s_ln(&self, l: usize, n: usize) -> CMat {
        let mut out = zeros(self.dim());
        for j in 0..3 {
            let e = levi_civita(l, n, j);
            if e != 0.0 {
                out += &self.s[j] * r(e);
            }
        }
        out
    }

    /// Σ_j a_j s^j.
    pub fn dot(&self, a: [f64; 3]) -> CMat {
        &self.s[0] * r(a[0]) + &self.s[1] * r(a[1]) + &self.s[2] * r(a[2])
    }

    pub fn map(&self, f: impl Fn(&CMat) -> CMat) -> SpinTriple {
        SpinTriple { s: [f(&self.s[0]), f(&self.s[1]), f(&self.s[2])] }
    }
}

/// Condon–Shortley generators, basis ordered m = s, s−1, …, −s.
pub fn su2_generators(twice_spin: u32) -> SpinTriple {
    let tw = twice_spin as i64;
    let n = twice_spin as usize + 1;
    let mut s3 = zeros(n);
    let mut up = zeros(n);
    for a in 0..n {
        let two_m = tw - 2 * a as i64;
        s3[(a, a)] = r(two_m as f64 / 2.0);
        if a > 0 {
            // 4·(j(j+1) − m(m+1)) with m the weight of column a
            let q = tw * (tw + 2) - two_m * (two_m + 2);
            up[(a - 1, a)] = r((q as f64).sqrt() / 2.0);
        }
    }
    let down = up.adjoint();
    let s1 = (&up + &down) * r(0.5);
    let s2 = (&up - &down) * c(0.0, -0.5);
    SpinTriple { s: [s1, s2, s3] }
}

/// Block-diagonal multiplet spin; antiparticle blocks are −conj(s).
pub fn multiplet_spin(config: &SpinConfig) -> SpinTriple {
    let mut blocks: [Vec<CMat>; 3] = Default::default();
    for e in config.entries() {
        let g = su2_generators(e.twice_spin);
        for j in 0..3 {
            blocks[j].push(match e.sector {
                Sector::Particle => g.s[j].clone(),
                Sector::Antiparticle => -conj(&g.s[j]),
            });
        }
    }
    SpinTriple { s: [block_diag(&blocks[0]), block_diag(&blocks[1]), block_diag(&blocks[2])] }
}

pub fn casimir_spin(s: &SpinTriple) -> CMat {
    &s.s[0] * &s.s[0] + &s.s[1] * &s.s[1] + &s.s[2] * &s.s[2]
}

/// Expected Casimir: s_i(s_i+1) on each block.
pub fn casimir_expected(config: &SpinConfig) -> CMat {
    let blocks: Vec<CMat> = config
        .entries()
        .iter()
        .map(|e| {
            let s = e.twice_spin as f64 / 2.0;
            eye(e.dim()) * r(s * (s + 1.0))
        })
        .collect();
    block_diag(&blocks)
}

/// Max of ‖[s^j, s^l] − iε^{jln}s^n‖ over pairs.
pub fn su2_residual(s: &SpinTriple) -> f64 {
    let mut res: f64 = 0.0;
    for j in 0..3 {
        for l in 0..3 {
            let mut rhs = zeros(s.dim());
            for n in 0..3 {
                let e = levi_civita(j, l, n);
                if e != 0.0 {
                    rhs += &s.s[n] * c(0.0, e);
                }
            }
            res = res.max(max_abs(&(comm(&s.s[j], &s.s[l]) - rhs)));
        }
    }
    res
}

pub fn check_su2(s: &SpinTriple, tol: f64) -> VerificationReport {
    let mut rep = VerificationReport::new("su2");
    rep.check("su2.commutators", "[s^j, s^l] = i eps^{jln} s^n", su2_residual(s), tol);
    let herm = s.s.iter().map(hermiticity_residual).fold(0.0, f64::max);
    rep.check("su2.hermitian", "s^j Hermitian", herm, tol);
    rep
}

/// Charge sign g = diag(−I particle, +I antiparticle).
///
/// Configs without an antiparticle block get −I and `defined = false`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChargeSign {
    pub matrix: CMat,
    pub defined: bool,
}

pub fn charge_sign(config: &SpinConfig) -> ChargeSign {
    let blocks: Vec<CMat> = config
        .entries()
        .iter()
        .map(|e| match e.sector {
            Sector::Particle => -eye(e.dim()),
            Sector::Antiparticle => eye(e.dim()),
        })
        .collect();
    ChargeSign { matrix: block_diag(&blocks), defined: config.has_antiparticle() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn spin_half_is_half_pauli() {
        let s = su2_generators(1);
        let p = pauli();
        for j in 0..3 {
            assert!(max_abs(&(&s.s[j] - &p[j] * r(0.5))) < 1e-16);
        }
    }

    #[test]
    fn spin_two_ladder_entries() {
        let s = su2_generators(4);
        assert!((s.s[0][(0, 1)].re - 1.0).abs() < 1e-15);
        assert!((s.s[0][(1, 2)].re - 6f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn doublet_s3_and_charge() {
        let cfg: SpinConfig = "1/2,1/2".parse().unwrap();
        let s = multiplet_spin(&cfg);
        let d: Vec<f64> = (0..4).map(|i| s.s[2][(i, i)].re).collect();
        assert_eq!(d, vec![0.5, -0.5, -0.5, 0.5]);
        let g = charge_sign(&cfg);
        assert!(g.defined);
        let gd: Vec<f64> = (0..4).map(|i| g.matrix[(i, i)].re).collect();
        assert_eq!(gd, vec![-1.0, -1.0, 1.0, 1.0]);
    }

    #[test]
    fn parse_rules() {
        let a: SpinConfig = "1,0".parse().unwrap();
        assert!(!a.has_antiparticle());
        assert!(!charge_sign(&a).defined);
        let b: SpinConfig = "1,0,1,0".parse().unwrap();
        assert_eq!(b.paired_half().unwrap(), a);
        let c: SpinConfig = "3/2+,1/2-".parse().unwrap();
        assert_eq!(c.entries()[1].sector, Sector::Antiparticle);
        assert_eq!(c.to_string(), "3/2+,1/2-");
        assert!("".parse::<SpinConfig>().is_err());
        assert!("1/3".parse::<SpinConfig>().is_err());
        assert!("x".parse::<SpinConfig>().is_err());
    }

    #[test]
    fn perturbed_generators_fail() {
        let mut s = su2_generators(2);
        s.s[0][(0, 1)] += r(1e-3);
        assert!(!check_su2(&s, 1e-12).pass);
        let zero = su2_generators(0);
        assert!(check_su2(&zero, 1e-12).pass);
    }

    #[test]
    fn s_ln_dictionary() {
        let s = su2_generators(2);
        assert_eq!(s.s_ln(1, 2), s.s[0]);
        assert_eq!(s.s_ln(2, 0), s.s[1]);
        assert_eq!(s.s_ln(0, 1), s.s[2]);
        assert_eq!(s.s_ln(0, 2), -&s.s[1]);
    }

    fn arb_config() -> impl Strategy<Value = SpinConfig> {
        prop::collection::vec((0u32..=6, any::<bool>()), 1..4).prop_map(|v| {
            SpinConfig::new(
                v.into_iter()
                    .map(|(t, a)| SpinEntry {
                        twice_spin: t,
                        sector: if a { Sector::Antiparticle } else { Sector::Particle },
                    })
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn singlets_close_su2(tw in 0u32..=8) {
            let s = su2_generators(tw);
            prop_assert!(check_su2(&s, 1e-12).pass);
            let cfg = SpinConfig::singlet(tw);
            prop_assert!(max_abs(&(casimir_spin(&s) - casimir_expected(&cfg))) < 1e-13);
        }

        #[test]
        fn multiplets_close_su2(cfg in arb_config()) {
            let s = multiplet_spin(&cfg);
            prop_assert!(check_su2(&s, 1e-12).pass);
            prop_assert!(max_abs(&(casimir_spin(&s) - casimir_expected(&cfg))) < 1e-13);
            let g = charge_sign(&cfg).matrix;
            prop_assert!(max_abs(&(&g * &g - eye(cfg.dim()))) == 0.0);
            for j in 0..3 {
                prop_assert!(max_abs(&comm(&g, &s.s[j])) == 0.0);
            }
        }

        #[test]
        fn antiparticle_block_reverses_weights(tw in 0u32..=8) {
            let s = multiplet_spin(&SpinConfig::doublet(tw));
            let n = tw as usize + 1;
            for a in 0..n {
                prop_assert_eq!(s.s[2][(n + a, n + a)].re, -s.s[2][(a, a)].re);
            }
        }
    }
}
