//! Arbitrary-spin multiplets and their relativistic representations.
//!
//! Spin algebras, Clifford-Dirac sets, the real-linear transition operators
//! between the canonical, Foldy-Wouthuysen and Dirac-like pictures,
//! momentum-space Poincare generators checked through a dual-number
//! commutator engine, exact spectral time evolution and the field-strength
//! form of the 8-component equation.

pub mod cli;
pub mod clifford;
pub mod dual;
pub mod evolution;
pub mod expr;
pub mod grid;
pub mod io;
pub mod kspace_ops;
pub mod linalg;
pub mod maxwell;
pub mod planewave;
pub mod report;
pub mod rlinear;
pub mod spin_algebra;
pub mod suites;
pub mod tables;
pub mod transitions;

pub use linalg::{CMat, CVec, C64};
pub use report::{Check, Erratum, VerificationReport};
