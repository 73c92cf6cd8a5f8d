//! Clifford–Dirac γ-matrix sets.

use crate::linalg::*;
use crate::report::{Erratum, VerificationReport};
use crate::rlinear::{v_operator, RLinearOp};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaLabel {
    Standard4,
    Qm4,
    Extended7,
    QmExtended7,
    Big8,
    Big12,
    Big16,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    Standard,
    Qm,
}

#[derive(Debug, Error, PartialEq)]
#[error("no Γ set for dimension {0}; expected 4, 8, 12 or 16")]
pub struct UnsupportedDimension(pub usize);

/// Ordered generators with the diagonal of their metric.
#[derive(Clone, Debug)]
pub struct GammaSet {
    pub label: GammaLabel,
    pub ops: Vec<RLinearOp>,
    pub metric: Vec<f64>,
}

impl GammaSet {
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.ops[0].dim()
    }

    /// Linear part of generator `i`; the antilinear part must vanish.
    pub fn matrix(&self, i: usize) -> &CMat {
        debug_assert!(max_abs(&self.ops[i].antilinear) == 0.0);
        &self.ops[i].linear
    }

    /// Ordered product of the listed generators.
    pub fn product(&self, idx: &[usize]) -> RLinearOp {
        idx.iter()
            .fold(RLinearOp::identity(self.dim()), |acc, &i| &acc * &self.ops[i])
    }
}

fn linear_set(label: GammaLabel, mats: Vec<CMat>, metric: Vec<f64>) -> GammaSet {
    GammaSet { label, ops: mats.into_iter().map(RLinearOp::linear).collect(), metric }
}

/// Σ-blocks for the N-dimensional set (N/2 × N/2).
pub fn sigma_blocks(n: usize) -> Result<[CMat; 3], UnsupportedDimension> {
    let p = pauli();
    match n {
        4 => Ok(p),
        8 => Ok(p.map(|s| kron(&eye(2), &s))),
        12 => Ok(p.map(|s| kron(&s, &eye(3)))),
        16 => Ok(p.map(|s| kron(&eye(4), &s))),
        _ => Err(UnsupportedDimension(n)),
    }
}

/// Γ⁰ = diag(I, −I), Γ^j = [[0, Σ^j], [−Σ^j, 0]].
pub fn gamma_matrices(n: usize) -> Result<[CMat; 4], UnsupportedDimension> {
    let sig = sigma_blocks(n)?;
    let h = n / 2;
    let z = zeros(h);
    let g0 = block_diag(&[eye(h), -eye(h)]);
    let gj = |s: &CMat| block2(&z, s, &(-s), &z);
    Ok([g0, gj(&sig[0]), gj(&sig[1]), gj(&sig[2])])
}

/// γ⁰..γ⁴ with γ⁴ = γ⁰γ¹γ²γ³, metric (+,−,−,−,−).
pub fn standard_gammas() -> GammaSet {
    let [g0, g1, g2, g3] = gamma_matrices(4).expect("4 is supported");
    let g4 = &g0 * &g1 * &g2 * &g3;
    linear_set(GammaLabel::Standard4, vec![g0, g1, g2, g3, g4], vec![1.0, -1.0, -1.0, -1.0, -1.0])
}

/// γ̄ = v γ v for the five standard matrices.
pub fn qm_gammas() -> GammaSet {
    let v = v_operator(4).expect("even");
    let std = standard_gammas();
    GammaSet {
        label: GammaLabel::Qm4,
        ops: std.ops.iter().map(|g| &(&v * g) * &v).collect(),
        metric: std.metric.clone(),
    }
}

/// The printed closed forms γ̄⁰ = γ⁰, γ̄¹ = γ¹C, γ̄² = γ⁰γ²C, γ̄³ = γ³C, γ̄⁴ = γ⁰γ⁴C.
pub fn qm_gammas_closed_form() -> Vec<RLinearOp> {
    let s = standard_gammas();
    let g = |i: usize| s.matrix(i).clone();
    vec![
        RLinearOp::linear(g(0)),
        RLinearOp::antilinear(g(1)),
        RLinearOp::antilinear(&g(0) * &g(2)),
        RLinearOp::antilinear(g(3)),
        RLinearOp::antilinear(&g(0) * &g(4)),
    ]
}

/// Seven generators γ¹, γ², γ³, γ⁴, γ¹γ³C, iγ¹γ³C, iγ⁰.
///
/// Every generator squares to −I, so the metric is −δ^{AB}.
pub fn extended_gammas(rep: Representation) -> GammaSet {
    let s = standard_gammas();
    let g = |i: usize| s.matrix(i).clone();
    let g13 = &g(1) * &g(3);
    let ops = vec![
        RLinearOp::linear(g(1)),
        RLinearOp::linear(g(2)),
        RLinearOp::linear(g(3)),
        RLinearOp::linear(g(4)),
        RLinearOp::antilinear(g13.clone()),
        RLinearOp::antilinear(&g13 * IM),
        RLinearOp::linear(&g(0) * IM),
    ];
    let (label, ops) = match rep {
        Representation::Standard => (GammaLabel::Extended7, ops),
        Representation::Qm => {
            let v = v_operator(4).expect("even");
            (GammaLabel::QmExtended7, ops.iter().map(|o| &(&v * o) * &v).collect())
        }
    };
    GammaSet { label, ops, metric: vec![-1.0; 7] }
}

/// Γ⁰..Γ³ for N ∈ {8, 12, 16}.
pub fn big_gammas(n: usize) -> Result<GammaSet, UnsupportedDimension> {
    let label = match n {
        8 => GammaLabel::Big8,
        12 => GammaLabel::Big12,
        16 => GammaLabel::Big16,
        _ => return Err(UnsupportedDimension(n)),
    };
    let g = gamma_matrices(n)?;
    Ok(linear_set(label, g.to_vec(), vec![1.0, -1.0, -1.0, -1.0]))
}

pub fn clifford_residual(set: &GammaSet) -> f64 {
    let n = set.dim();
    let mut res: f64 = 0.0;
    for a in 0..set.len() {
        for b in 0..set.len() {
            let ab = &set.ops[a] * &set.ops[b];
            let ba = &set.ops[b] * &set.ops[a];
            let mut target = RLinearOp::new(zeros(n), zeros(n));
            if a == b {
                target.linear = eye(n) * r(2.0 * set.metric[a]);
            }
            res = res.max(ab.add(&ba).max_abs_diff(&target));
        }
    }
    res
}

pub fn check_clifford(set: &GammaSet, tol: f64) -> VerificationReport {
    let mut rep = VerificationReport::new("clifford");
    rep.check(
        &format!("clifford.{:?}", set.label),
        "{G^A, G^B} = 2 g^{AB} I",
        clifford_residual(set),
        tol,
    );
    rep
}

/// Residual of [X_j, X_l] = ε^{jln} X_n for real-linear operators.
///
/// This is the real form of SU(2); with i central it is equivalent to
/// [s^j, s^l] = iε^{jln}s^n for s = iX. Products involving the antilinear
/// generators do not commute with i, so only the real form applies to them.
pub fn so3_residual_rlinear(x: &[RLinearOp; 3]) -> f64 {
    let mut res: f64 = 0.0;
    for j in 0..3 {
        for l in 0..3 {
            let lhs = (&x[j] * &x[l]).add(&(&x[l] * &x[j]).scale_real(-1.0));
            let mut rhs = x[0].scale_real(0.0);
            for m in 0..3 {
                let e = levi_civita(j, l, m);
                if e != 0.0 {
                    rhs = rhs.add(&x[m].scale_real(e));
                }
            }
            res = res.max(lhs.max_abs_diff(&rhs));
        }
    }
    res
}

/// ½(G^b G^c, G^c G^a, G^a G^b) for the listed generator indices.
pub fn rotation_triple(set: &GammaSet, a: usize, b: usize, cc: usize) -> [RLinearOp; 3] {
    let pair = |x: usize, y: usize| (&set.ops[x] * &set.ops[y]).scale_real(0.5);
    [pair(b, cc), pair(cc, a), pair(a, b)]
}

/// (i/2)(G^b G^c, G^c G^a, G^a G^b) as a spin triple; valid for linear sets.
pub fn spin_triple_from(set: &GammaSet, a: usize, b: usize, cc: usize) -> [RLinearOp; 3] {
    let n = set.dim();
    let i_op = RLinearOp::linear(eye(n) * IM);
    rotation_triple(set, a, b, cc).map(|x| &i_op * &x)
}

/// Differences between the printed γ-set statements and the constructed sets.
pub fn clifford_errata() -> Vec<Erratum> {
    let mut out = Vec::new();
    let std = standard_gammas();
    let g = |i: usize| std.matrix(i).clone();
    let qm = extended_gammas(Representation::Qm);
    let printed: [(usize, &str, RLinearOp); 4] = [
        (3, "gbar0 gbar1 gbar2 gbar3", qm_gammas().product(&[0, 1, 2, 3])),
        (4, "g1 g3 C", RLinearOp::antilinear(&g(1) * &g(3))),
        (5, "-i g2 g4 C", RLinearOp::antilinear(&g(2) * &g(4) * (-IM))),
        (6, "i", RLinearOp::linear(eye(4) * IM)),
    ];
    for (idx, expr, op) in printed {
        let d = op.max_abs_diff(&qm.ops[idx]);
        if d > 1e-14 {
            out.push(Erratum {
                table: "qm_extended_gammas".into(),
                row: idx + 1,
                col: 0,
                printed_expr: expr.into(),
                printed_value: None,
                computed_value: None,
                note: format!("printed form differs from v G v by {d:.3e} (max entry)"),
            });
        }
    }
    let printed_product = qm.product(&[0, 1, 2, 5, 4, 5, 6]);
    let id = RLinearOp::identity(4);
    out.push(Erratum {
        table: "qm_extended_gammas".into(),
        row: 0,
        col: 0,
        printed_expr: "gbar1 gbar2 gbar3 gbar6 gbar5 gbar6 gbar7 = I".into(),
        printed_value: None,
        computed_value: None,
        note: format!(
            "product repeats index 6 (residual vs I: {:.3e}); the ordered product 1..7 gives residual {:.3e}",
            printed_product.max_abs_diff(&id),
            qm.product(&[0, 1, 2, 3, 4, 5, 6]).max_abs_diff(&id),
        ),
    });
    out.push(Erratum {
        table: "extended_gammas".into(),
        row: 0,
        col: 0,
        printed_expr: "G^A G^B + G^B G^A = 2 delta^{AB}".into(),
        printed_value: None,
        computed_value: None,
        note: "all seven generators square to -I; the relation holds with -2 delta^{AB}".into(),
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_algebra::{check_su2, SpinTriple};

    #[test]
    fn standard_set() {
        let s = standard_gammas();
        assert_eq!(clifford_residual(&s), 0.0);
        let p = s.product(&[0, 1, 2, 3, 4]);
        assert_eq!(p, RLinearOp::identity(4).scale_real(-1.0));
        assert_eq!(s.matrix(0), &block_diag(&[eye(2), -eye(2)]));
    }

    #[test]
    fn qm_set_matches_closed_form() {
        let q = qm_gammas();
        assert_eq!(clifford_residual(&q), 0.0);
        for (a, b) in q.ops.iter().zip(qm_gammas_closed_form()) {
            assert!(a.max_abs_diff(&b) < 1e-15);
        }
        let s1 = &q.ops[1] * &q.ops[1];
        assert_eq!(s1, RLinearOp::identity(4).scale_real(-1.0));
    }

    #[test]
    fn extended_sets() {
        for rep in [Representation::Standard, Representation::Qm] {
            let e = extended_gammas(rep);
            assert_eq!(clifford_residual(&e), 0.0, "{rep:?}");
            let p = e.product(&[0, 1, 2, 3, 4, 5, 6]);
            assert!(p.max_abs_diff(&RLinearOp::identity(4)) < 1e-15, "{rep:?}");
            let t1 = rotation_triple(&e, 0, 1, 2);
            let t2 = rotation_triple(&e, 3, 4, 5);
            assert!(so3_residual_rlinear(&t1) < 1e-14);
            assert!(so3_residual_rlinear(&t2) < 1e-14);
            // the two subalgebras commute
            for a in &t1 {
                for b in &t2 {
                    let cm = (a * b).add(&(b * a).scale_real(-1.0));
                    assert!(cm.max_abs_diff(&a.scale_real(0.0)) < 1e-14);
                }
            }
        }
    }

    #[test]
    fn big_sets() {
        for n in [8, 12, 16] {
            let b = big_gammas(n).unwrap();
            assert_eq!(clifford_residual(&b), 0.0);
            assert_eq!(b.dim(), n);
        }
        assert!(big_gammas(6).is_err());
        let s = sigma_blocks(12).unwrap();
        assert_eq!(s[0].view((0, 3), (3, 3)).clone_owned(), eye(3));
    }

    #[test]
    fn swapped_generator_fails() {
        let mut b = big_gammas(8).unwrap();
        b.ops[1] = b.ops[2].clone();
        assert!(!check_clifford(&b, 1e-14).pass);
    }

    #[test]
    fn fw_spin_from_gammas() {
        let s = standard_gammas();
        let t = spin_triple_from(&s, 1, 2, 3);
        let triple = SpinTriple { s: t.map(|o| o.linear) };
        assert!(check_su2(&triple, 1e-14).pass);
        let q = qm_gammas();
        let tq = spin_triple_from(&q, 1, 2, 3);
        let s_rcqm = crate::spin_algebra::multiplet_spin(&crate::spin_algebra::SpinConfig::doublet(1));
        for j in 0..3 {
            assert!(tq[j].max_abs_diff(&RLinearOp::linear(s_rcqm.s[j].clone())) < 1e-15);
        }
    }

    #[test]
    fn errata_list_nonempty() {
        let e = clifford_errata();
        assert!(e.iter().any(|x| x.printed_expr.contains("gbar6 gbar5 gbar6")));
    }
}
