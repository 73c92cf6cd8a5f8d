//! Real-linear operators f ↦ L f + A conj(f).

use crate::linalg::*;
use std::ops::Mul;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RLinearError {
    #[error("dimension mismatch: {0} vs {1}")]
    Dim(usize, usize),
    #[error("involution requires an even dimension, got {0}")]
    OddDimension(usize),
    #[error("operator is not anti-Hermitian (residual {0:.3e})")]
    NotAntiHermitian(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RLinearOp {
    pub linear: CMat,
    pub antilinear: CMat,
}

impl RLinearOp {
    pub fn new(linear: CMat, antilinear: CMat) -> Self {
        assert_eq!(linear.shape(), antilinear.shape());
        Self { linear, antilinear }
    }

    pub fn linear(m: CMat) -> Self {
        let n = m.nrows();
        Self { linear: m, antilinear: zeros(n) }
    }

    /// A ∘ C.
    pub fn antilinear(a: CMat) -> Self {
        let n = a.nrows();
        Self { linear: zeros(n), antilinear: a }
    }

    pub fn identity(n: usize) -> Self {
        Self::linear(eye(n))
    }

    /// Complex conjugation.
    pub fn conjugation(n: usize) -> Self {
        Self::antilinear(eye(n))
    }

    pub fn dim(&self) -> usize {
        self.linear.nrows()
    }

    pub fn apply(&self, f: &CVec) -> Result<CVec, RLinearError> {
        if f.len() != self.dim() {
            return Err(RLinearError::Dim(self.dim(), f.len()));
        }
        Ok(&self.linear * f + &self.antilinear * f.map(|z| z.conj()))
    }

    /// self ∘ other.
    pub fn compose(&self, other: &RLinearOp) -> Result<RLinearOp, RLinearError> {
        if self.dim() != other.dim() {
            return Err(RLinearError::Dim(self.dim(), other.dim()));
        }
        Ok(RLinearOp {
            linear: &self.linear * &other.linear + &self.antilinear * conj(&other.antilinear),
            antilinear: &self.linear * &other.antilinear + &self.antilinear * conj(&other.linear),
        })
    }

    pub fn add(&self, other: &RLinearOp) -> RLinearOp {
        RLinearOp {
            linear: &self.linear + &other.linear,
            antilinear: &self.antilinear + &other.antilinear,
        }
    }

    pub fn scale_real(&self, a: f64) -> RLinearOp {
        RLinearOp { linear: &self.linear * r(a), antilinear: &self.antilinear * r(a) }
    }

    /// Adjoint with respect to Re⟨g, f⟩: (L†, Aᵀ).
    pub fn adjoint(&self) -> RLinearOp {
        RLinearOp { linear: self.linear.adjoint(), antilinear: self.antilinear.transpose() }
    }

    /// Residual of op + adjoint(op).
    pub fn antihermiticity_residual(&self) -> f64 {
        let a = self.adjoint();
        max_abs(&(&self.linear + &a.linear)).max(max_abs(&(&self.antilinear + &a.antilinear)))
    }

    pub fn max_abs_diff(&self, other: &RLinearOp) -> f64 {
        max_abs(&(&self.linear - &other.linear)).max(max_abs(&(&self.antilinear - &other.antilinear)))
    }
}

impl Mul for &RLinearOp {
    type Output = RLinearOp;
    fn mul(self, rhs: &RLinearOp) -> RLinearOp {
        self.compose(rhs).expect("dimension mismatch in composition")
    }
}

pub fn is_antihermitian(q: &RLinearOp, tol: f64) -> bool {
    q.antihermiticity_residual() < tol
}

/// v_N = diag(I, C·I): conjugates the lower half.
pub fn v_operator(n: usize) -> Result<RLinearOp, RLinearError> {
    if n % 2 != 0 || n == 0 {
        return Err(RLinearError::OddDimension(n));
    }
    let h = n / 2;
    Ok(RLinearOp::new(block_diag(&[eye(h), zeros(h)]), block_diag(&[zeros(h), eye(h)])))
}

/// v ∘ q ∘ v, optionally insisting that q is anti-Hermitian.
pub fn conjugate_generator(
    v: &RLinearOp,
    q: &RLinearOp,
    assert_antihermitian: bool,
    tol: f64,
) -> Result<RLinearOp, RLinearError> {
    if assert_antihermitian {
        let res = q.antihermiticity_residual();
        if res >= tol {
            return Err(RLinearError::NotAntiHermitian(res));
        }
    }
    v.compose(q)?.compose(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_algebra::{multiplet_spin, SpinConfig};
    use proptest::prelude::*;


    #[test]
    fn v4_conjugates_lower_block() {
        let v = v_operator(4).unwrap();
        let f = CVec::from_vec(vec![ONE, ZERO, IM, ZERO]);
        let g = v.apply(&f).unwrap();
        assert_eq!(g, CVec::from_vec(vec![ONE, ZERO, -IM, ZERO]));
        assert!(v_operator(3).is_err());
    }

    #[test]
    fn involutions() {
        for n in [4, 6, 8, 10, 12, 16] {
            let v = v_operator(n).unwrap();
            assert_eq!(&v * &v, RLinearOp::identity(n));
            assert_eq!(v.adjoint(), v);
        }
        let cj = RLinearOp::conjugation(3);
        assert_eq!(&cj * &cj, RLinearOp::identity(3));
    }

    #[test]
    fn scalar_i_becomes_gamma0() {
        let v = v_operator(4).unwrap();
        let q = RLinearOp::linear(eye(4) * IM);
        let out = conjugate_generator(&v, &q, true, 1e-14).unwrap();
        let expect = block_diag(&[eye(2), -eye(2)]) * IM;
        assert_eq!(out, RLinearOp::linear(expect));
    }

    #[test]
    fn rcqm_spin_maps_to_fw_spin() {
        let cfg = SpinConfig::doublet(1);
        let s = multiplet_spin(&cfg);
        let v = v_operator(4).unwrap();
        for j in 0..3 {
            let q = RLinearOp::linear(&s.s[j] * IM);
            assert!(is_antihermitian(&q, 1e-14));
            let out = conjugate_generator(&v, &q, true, 1e-14).unwrap();
            let half = crate::spin_algebra::su2_generators(1);
            let fw = block_diag(&[half.s[j].clone(), half.s[j].clone()]) * IM;
            assert!(out.max_abs_diff(&RLinearOp::linear(fw)) < 1e-15);
        }
    }

    #[test]
    fn hermitian_rejected() {
        let v = v_operator(4).unwrap();
        let h = RLinearOp::linear(block_diag(&[eye(2), eye(2) * r(2.0)]));
        assert!(!is_antihermitian(&h, 1e-12));
        assert!(matches!(
            conjugate_generator(&v, &h, true, 1e-12),
            Err(RLinearError::NotAntiHermitian(_))
        ));
        assert!(conjugate_generator(&v, &h, false, 1e-12).is_ok());
        let id = RLinearOp::identity(4);
        assert_eq!(conjugate_generator(&v, &id, false, 1e-12).unwrap(), id);
    }

    fn arb_op(n: usize) -> impl Strategy<Value = RLinearOp> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2 * n * n).prop_map(move |v| {
            let l = CMat::from_fn(n, n, |i, j| c(v[i * n + j].0, v[i * n + j].1));
            let a = CMat::from_fn(n, n, |i, j| c(v[n * n + i * n + j].0, v[n * n + i * n + j].1));
            RLinearOp::new(l, a)
        })
    }

    fn arb_vec(n: usize) -> impl Strategy<Value = CVec> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
            .prop_map(|v| CVec::from_iterator(v.len(), v.into_iter().map(|(a, b)| c(a, b))))
    }

    proptest! {
        #[test]
        fn compose_is_homomorphism(a in arb_op(4), b in arb_op(4), f in arb_vec(4)) {
            let lhs = (&a * &b).apply(&f).unwrap();
            let rhs = a.apply(&b.apply(&f).unwrap()).unwrap();
            prop_assert!(max_abs_vec((lhs - rhs).as_slice()) < 1e-12);
        }

        #[test]
        fn adjoint_matches_real_inner_product(a in arb_op(4), f in arb_vec(4), g in arb_vec(4)) {
            let lhs = g.dotc(&a.apply(&f).unwrap()).re;
            let rhs = a.adjoint().apply(&g).unwrap().dotc(&f).re;
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }

        #[test]
        fn conjugation_preserves_antihermiticity(a in arb_op(6)) {
            let q = a.add(&a.adjoint().scale_real(-1.0));
            prop_assert!(is_antihermitian(&q, 1e-12));
            let v = v_operator(6).unwrap();
            let out = conjugate_generator(&v, &q, true, 1e-12).unwrap();
            prop_assert!(is_antihermitian(&out, 1e-12));
        }
    }
}
