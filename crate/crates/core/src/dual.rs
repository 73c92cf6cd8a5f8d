//! Forward-mode dual numbers.
//!
//! `Dual<f64>` carries one directional derivative; nesting gives
//! `Hd = Dual<Dual<f64>>` with two independent infinitesimals, enough for
//! mixed second derivatives of matrix-valued functions of momentum.

use num_complex::Complex;
use num_traits::{Num, One, Zero};
use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

/// Scalar field usable inside k-dependent operators.
pub trait Real:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Num
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + RemAssign
{
    fn cst(x: f64) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    /// Primal value with all infinitesimals dropped.
    fn primal(self) -> f64;
}

impl Real for f64 {
    fn cst(x: f64) -> Self {
        x
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn primal(self) -> f64 {
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T: Real> Dual<T> {
    pub fn new(re: T, eps: T) -> Self {
        Self { re, eps }
    }
    pub fn constant(re: T) -> Self {
        Self { re, eps: T::zero() }
    }
    pub fn variable(re: T) -> Self {
        Self { re, eps: T::one() }
    }
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.eps + o.eps)
    }
}

impl<T: Real> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.eps - o.eps)
    }
}

impl<T: Real> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re, self.re * o.eps + self.eps * o.re)
    }
}

impl<T: Real> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let q = self.re / o.re;
        Self::new(q, (self.eps - q * o.eps) / o.re)
    }
}

impl<T: Real> Rem for Dual<T> {
    type Output = Self;
    fn rem(self, o: Self) -> Self {
        Self::new(self.re % o.re, self.eps)
    }
}

impl<T: Real> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.eps)
    }
}

macro_rules! assign_op {
    ($tr:ident, $f:ident, $op:tt) => {
        impl<T: Real> $tr for Dual<T> {
            fn $f(&mut self, o: Self) {
                *self = *self $op o;
            }
        }
    };
}
assign_op!(AddAssign, add_assign, +);
assign_op!(SubAssign, sub_assign, -);
assign_op!(MulAssign, mul_assign, *);
assign_op!(DivAssign, div_assign, /);
assign_op!(RemAssign, rem_assign, %);

impl<T: Real> Zero for Dual<T> {
    fn zero() -> Self {
        Self::constant(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
}

impl<T: Real> One for Dual<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Real> Num for Dual<T> {
    type FromStrRadixErr = T::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        T::from_str_radix(s, radix).map(Self::constant)
    }
}

impl<T: Real> Real for Dual<T> {
    fn cst(x: f64) -> Self {
        Self::constant(T::cst(x))
    }
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        Self::new(s, self.eps / (s + s))
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        Self::new(e, self.eps * e)
    }
    fn primal(self) -> f64 {
        self.re.primal()
    }
}

/// Hyper-dual number: outer infinitesimal ε₁, inner ε₂.
pub type Hd = Dual<Dual<f64>>;

pub type CHd = Complex<Hd>;

impl Hd {
    /// `x + a ε₁ + b ε₂`.
    pub fn seeded(x: f64, a: f64, b: f64) -> Hd {
        Dual::new(Dual::new(x, b), Dual::new(a, 0.0))
    }
    pub fn value(&self) -> f64 {
        self.re.re
    }
    /// Coefficient of ε₁.
    pub fn d1(&self) -> f64 {
        self.eps.re
    }
    /// Coefficient of ε₂.
    pub fn d2(&self) -> f64 {
        self.re.eps
    }
    /// Coefficient of ε₁ε₂.
    pub fn d12(&self) -> f64 {
        self.eps.eps
    }
}

pub fn chd(re: f64, im: f64) -> CHd {
    Complex::new(Hd::cst(re), Hd::cst(im))
}

pub fn chd_from(z: num_complex::Complex64) -> CHd {
    chd(z.re, z.im)
}

pub fn real_hd(x: Hd) -> CHd {
    Complex::new(x, Hd::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule_and_sqrt() {
        let x = Dual::variable(3.0_f64);
        let y = x * x + Dual::constant(2.0) * x;
        assert_eq!(y.re, 15.0);
        assert_eq!(y.eps, 8.0);
        let s = Real::sqrt(x);
        assert!((s.eps - 0.5 / 3.0_f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn mixed_second_derivative() {
        // f(x, y) = x² y / sqrt(x + y); ∂x∂y at (1, 2) by hand
        let x = Hd::seeded(1.0, 1.0, 0.0);
        let y = Hd::seeded(2.0, 0.0, 1.0);
        let f = x * x * y / Real::sqrt(x + y);
        let (xv, yv) = (1.0_f64, 2.0_f64);
        let s = xv + yv;
        let expect = 2.0 * xv * s.powf(-0.5)
            - xv * yv * s.powf(-1.5)
            - 0.5 * xv * xv * s.powf(-1.5)
            + 0.75 * xv * xv * yv * s.powf(-2.5);
        assert!((f.d12() - expect).abs() < 1e-13, "{} vs {}", f.d12(), expect);
    }

    #[test]
    fn division_derivative() {
        let x = Dual::variable(2.0_f64);
        let f = Dual::constant(1.0) / x;
        assert!((f.eps + 0.25).abs() < 1e-16);
    }
}
