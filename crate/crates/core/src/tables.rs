//! Transcribed closed forms of the covariant spin s_D(k) for the 8- and
//! 16-component multiplets, and their element-wise diff against the
//! conjugation s_D = V⁻ s_FW V⁺.
//!
//! Transcription conventions: p^a is the contravariant momentum k^a, a
//! composite such as `p¹z*mΩ` is read as p¹z* + mΩ, and the printed
//! expressions are kept verbatim otherwise (including any apparent
//! misprints, which the diff then reports).

mod data;

use crate::expr::{eval, Env, ExprError};
use crate::linalg::*;
use crate::report::{Erratum, VerificationReport};
use crate::spin_algebra::SpinConfig;
use crate::transitions::{dirac_spin_computed, TransitionError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TableError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Transition(#[from] TransitionError),
    #[error("component s^{0} of this table is not printed")]
    MissingComponent(usize),
    #[error("unknown table {0:?}")]
    Unknown(String),
}

/// The printed tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrintedTable {
    /// Spin (1,0) particle plus antiparticle, N = 8.
    Vector,
    /// Spin 3/2 particle plus antiparticle, N = 8.
    Quartet,
    /// Spin (2,1) particle plus antiparticle, N = 16 (third component only).
    Sixteen,
}

impl PrintedTable {
    pub const ALL: [PrintedTable; 3] = [PrintedTable::Vector, PrintedTable::Quartet, PrintedTable::Sixteen];

    pub fn name(self) -> &'static str {
        match self {
            PrintedTable::Vector => "s8D-vector",
            PrintedTable::Quartet => "s8D-3/2",
            PrintedTable::Sixteen => "s16D",
        }
    }

    pub fn config(self) -> SpinConfig {
        let s = match self {
            PrintedTable::Vector => "1,0,1,0",
            PrintedTable::Quartet => "3/2,3/2",
            PrintedTable::Sixteen => "2,1,2,1",
        };
        s.parse().expect("built-in configuration parses")
    }

    pub fn dim(self) -> usize {
        self.config().dim()
    }

    /// Printed components j ∈ {1,2,3} (1-based).
    pub fn components(self) -> &'static [usize] {
        match self {
            PrintedTable::Sixteen => &[3],
            _ => &[1, 2, 3],
        }
    }

    fn entries(self, j: usize) -> Option<&'static [(usize, usize, &'static str)]> {
        use data::*;
        Some(match (self, j) {
            (PrintedTable::Vector, 1) => VECTOR_S1,
            (PrintedTable::Vector, 2) => VECTOR_S2,
            (PrintedTable::Vector, 3) => VECTOR_S3,
            (PrintedTable::Quartet, 1) => QUARTET_S1,
            (PrintedTable::Quartet, 2) => QUARTET_S2,
            (PrintedTable::Quartet, 3) => QUARTET_S3,
            (PrintedTable::Sixteen, 3) => SIXTEEN_S3,
            _ => return None,
        })
    }

    /// Overall prefactor in front of the printed matrix.
    fn prefactor(self, j: usize, k: [f64; 3], m: f64) -> C64 {
        let w = omega(k, m);
        let base = 1.0 / (2.0 * w * (w + m));
        match (self, j) {
            (PrintedTable::Vector, 1) => r(base / 2f64.sqrt()),
            (PrintedTable::Vector, 2) => c(0.0, base / 2f64.sqrt()),
            _ => r(base),
        }
    }

    /// Printed expression for element (row, col), 1-based; "0" if absent.
    pub fn expression(self, j: usize, row: usize, col: usize) -> Option<&'static str> {
        let e = self.entries(j)?;
        Some(e.iter().find(|(a, b, _)| *a == row && *b == col).map_or("0", |x| x.2))
    }
}

impl std::str::FromStr for PrintedTable {
    type Err = TableError;
    fn from_str(s: &str) -> Result<Self, TableError> {
        PrintedTable::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| TableError::Unknown(s.to_string()))
    }
}

/// Printed s_D^j(k) evaluated at momentum k (j is 1-based).
pub fn dirac_spin_printed(table: PrintedTable, j: usize, k: [f64; 3], m: f64) -> Result<CMat, TableError> {
    let entries = table.entries(j).ok_or(TableError::MissingComponent(j))?;
    let n = table.dim();
    let env = Env::new(k, m);
    let pre = table.prefactor(j, k, m);
    let mut out = zeros(n);
    for &(a, b, e) in entries {
        out[(a - 1, b - 1)] = pre * eval(e, &env)?;
    }
    Ok(out)
}

/// Element-wise comparison of the printed table against the conjugation
/// oracle over the sample momenta. Every element that diverges anywhere by
/// more than `tol` becomes an erratum (reported at the worst sample); the
/// report's checks record the agreement of the remaining elements and the
/// count of divergent ones.
pub fn errata_diff(table: PrintedTable, m: f64, samples: &[[f64; 3]], tol: f64) -> Result<VerificationReport, TableError> {
    let mut rep = VerificationReport::new(&format!("errata.{}", table.name()));
    let n = table.dim();
    let config = table.config();
    let mut silent = 0.0f64;
    let mut divergent = 0usize;
    for &j in table.components() {
        let mut worst = vec![(0.0f64, 0usize); n * n];
        let mut printed = Vec::with_capacity(samples.len());
        let mut computed = Vec::with_capacity(samples.len());
        for (si, &k) in samples.iter().enumerate() {
            let p = dirac_spin_printed(table, j, k, m)?;
            let q = dirac_spin_computed(&config, k, m)?.s[j - 1].clone();
            for a in 0..n {
                for b in 0..n {
                    let d = (p[(a, b)] - q[(a, b)]).norm();
                    if d > worst[a * n + b].0 {
                        worst[a * n + b] = (d, si);
                    }
                }
            }
            printed.push(p);
            computed.push(q);
        }
        for a in 0..n {
            for b in 0..n {
                let (d, si) = worst[a * n + b];
                if d > tol {
                    divergent += 1;
                    let (p, q) = (printed[si][(a, b)], computed[si][(a, b)]);
                    let kk = samples[si];
                    rep.errata.push(Erratum {
                        table: format!("{}.s{}", table.name(), j),
                        row: a + 1,
                        col: b + 1,
                        printed_expr: table.expression(j, a + 1, b + 1).unwrap_or("0").to_string(),
                        printed_value: Some([p.re, p.im]),
                        computed_value: Some([q.re, q.im]),
                        note: format!(
                            "max deviation {d:.3e} over {} samples; values shown at k = ({:.4}, {:.4}, {:.4}), m = {m}",
                            samples.len(),
                            kk[0],
                            kk[1],
                            kk[2]
                        ),
                    });
                } else {
                    silent = silent.max(d);
                }
            }
        }
    }
    rep.check(
        &format!("{}.agreeing_elements", table.name()),
        "printed elements not listed as errata agree with V- s V+",
        silent,
        tol,
    );
    rep.flag(format!("{}: {} divergent elements", table.name(), divergent));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kspace_ops::random_momenta;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn every_expression_parses() {
        let env = Env::new([0.2, -0.3, 0.5], 1.3);
        for t in PrintedTable::ALL {
            for &j in t.components() {
                for &(a, b, e) in t.entries(j).unwrap() {
                    assert!(a >= 1 && a <= t.dim() && b >= 1 && b <= t.dim());
                    eval(e, &env).unwrap_or_else(|err| panic!("{e}: {err}"));
                }
            }
        }
    }

    #[test]
    fn rest_frame_third_components_are_diagonal_spin() {
        // At k = 0 the closed forms collapse to diagonal s³.
        let m = 1.0;
        let expect: [(PrintedTable, Vec<f64>); 2] = [
            (PrintedTable::Vector, vec![1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0, 0.0]),
            (PrintedTable::Quartet, vec![1.5, 0.5, -0.5, -1.5, 1.5, 0.5, -0.5, -1.5]),
        ];
        for (t, d) in expect {
            let s = dirac_spin_printed(t, 3, [0.0; 3], m).unwrap();
            for (i, x) in d.iter().enumerate() {
                assert!((s[(i, i)].re - x).abs() < 1e-14, "{:?} {i}", t);
            }
        }
    }

    #[test]
    fn diff_reports_divergences_and_nothing_silent() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ks = random_momenta(20, 3.0, &mut rng);
        for t in PrintedTable::ALL {
            let rep = errata_diff(t, 1.0, &ks, 1e-10).unwrap();
            assert!(rep.pass, "{}", rep.to_json());
            for e in &rep.errata {
                assert!(e.printed_value.is_some() && e.computed_value.is_some());
            }
        }
    }

    #[test]
    fn missing_component_is_an_error() {
        assert_eq!(
            dirac_spin_printed(PrintedTable::Sixteen, 1, [0.0; 3], 1.0),
            Err(TableError::MissingComponent(1))
        );
        assert!("nope".parse::<PrintedTable>().is_err());
        assert_eq!("s16D".parse::<PrintedTable>(), Ok(PrintedTable::Sixteen));
    }
}
