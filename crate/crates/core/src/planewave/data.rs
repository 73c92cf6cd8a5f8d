//! Printed Dirac-like spinors, component expressions in the notation of
//! crate::expr (p1..p3 are the momentum components, w is ω). Row A is the
//! spinor with index A (1-based), all carrying the prefactor 1/√(2ω(ω+m)).

pub(crate) const SPINORS_4: [[&str; 4]; 4] = [
    ["w+m", "0", "p3", "p1+i*p2"],
    ["0", "w+m", "p1-i*p2", "-p3"],
    ["p3", "p1+i*p2", "w+m", "0"],
    ["p1-i*p2", "-p3", "0", "w+m"],
];

pub(crate) const SPINORS_8: [[&str; 8]; 8] = [
    ["w+m", "0", "0", "0", "p3", "p1+i*p2", "0", "0"],
    ["0", "w+m", "0", "0", "p1-i*p2", "-p3", "0", "0"],
    ["0", "0", "w+m", "0", "0", "0", "p3", "p1+i*p2"],
    ["0", "0", "0", "w+m", "0", "0", "p1-i*p2", "-p3"],
    ["p3", "p1+i*p2", "0", "0", "w+m", "0", "0", "0"],
    ["p1-i*p2", "-p3", "0", "0", "0", "w+m", "0", "0"],
    ["0", "0", "p3", "p1+i*p2", "0", "0", "w+m", "0"],
    ["0", "0", "p1-i*p2", "-p3", "0", "0", "0", "w+m"],
];

pub(crate) const SPINORS_12: [[&str; 12]; 12] = [
    ["w+m", "0", "0", "0", "0", "0", "p3", "0", "0", "p1+i*p2", "0", "0"],
    ["0", "w+m", "0", "0", "0", "0", "0", "p3", "0", "0", "p1+i*p2", "0"],
    ["0", "0", "w+m", "0", "0", "0", "0", "0", "p3", "0", "0", "p1+i*p2"],
    ["0", "0", "0", "w+m", "0", "0", "p1-i*p2", "0", "0", "-p3", "0", "0"],
    ["0", "0", "0", "0", "w+m", "0", "0", "p1-i*p2", "0", "0", "-p3", "0"],
    ["0", "0", "0", "0", "0", "w+m", "0", "0", "p1-i*p2", "0", "0", "-p3"],
    ["p3", "0", "0", "p1+i*p2", "0", "0", "w+m", "0", "0", "0", "0", "0"],
    ["0", "p3", "0", "0", "p1+i*p2", "0", "0", "w+m", "0", "0", "0", "0"],
    ["0", "0", "p3", "0", "0", "p1+i*p2", "0", "0", "w+m", "0", "0", "0"],
    ["p1-i*p2", "0", "0", "-p3", "0", "0", "0", "0", "0", "w+m", "0", "0"],
    ["0", "p1-i*p2", "0", "0", "-p3", "0", "0", "0", "0", "0", "w+m", "0"],
    ["0", "0", "p1-i*p2", "0", "0", "-p3", "0", "0", "0", "0", "0", "w+m"],
];

pub(crate) const SPINORS_16: [[&str; 16]; 16] = [
    ["w+m", "0", "0", "0", "0", "0", "0", "0", "p3", "p1+i*p2", "0", "0", "0", "0", "0", "0"],
    ["0", "w+m", "0", "0", "0", "0", "0", "0", "p1-i*p2", "-p3", "0", "0", "0", "0", "0", "0"],
    ["0", "0", "w+m", "0", "0", "0", "0", "0", "0", "0", "p3", "p1+i*p2", "0", "0", "0", "0"],
    ["0", "0", "0", "w+m", "0", "0", "0", "0", "0", "0", "p1-i*p2", "-p3", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "w+m", "0", "0", "0", "0", "0", "0", "0", "p3", "p1+i*p2", "0", "0"],
    ["0", "0", "0", "0", "0", "w+m", "0", "0", "0", "0", "0", "0", "p1-i*p2", "-p3", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "w+m", "0", "0", "0", "0", "0", "0", "0", "p3", "p1+i*p2"],
    ["0", "0", "0", "0", "0", "0", "0", "w+m", "0", "0", "0", "0", "0", "0", "p1-i*p2", "-p3"],
    ["p3", "p1+i*p2", "0", "0", "0", "0", "0", "0", "w+m", "0", "0", "0", "0", "0", "0", "0"],
    ["p1-i*p2", "-p3", "0", "0", "0", "0", "0", "0", "0", "w+m", "0", "0", "0", "0", "0", "0"],
    ["0", "0", "p3", "p1+i*p2", "0", "0", "0", "0", "0", "0", "w+m", "0", "0", "0", "0", "0"],
    ["0", "0", "p1-i*p2", "-p3", "0", "0", "0", "0", "0", "0", "0", "w+m", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "p3", "p1+i*p2", "0", "0", "0", "0", "0", "0", "w+m", "0", "0", "0"],
    ["0", "0", "0", "0", "p1-i*p2", "-p3", "0", "0", "0", "0", "0", "0", "0", "w+m", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "p3", "p1+i*p2", "0", "0", "0", "0", "0", "0", "w+m", "0"],
    ["0", "0", "0", "0", "0", "0", "p1-i*p2", "-p3", "0", "0", "0", "0", "0", "0", "0", "w+m"],
];

