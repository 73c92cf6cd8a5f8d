//! Printed closed-form covariant spin matrices, one entry per nonzero
//! element as (row, column, expression), 1-based indices.

pub(crate) const VECTOR_S1: &[(usize, usize, &str)] = &[
    (1, 1, "2*p13"),
    (1, 2, "2*(p1*zc+m*W)"),
    (1, 3, "p3*zc"),
    (1, 4, "zc^2"),
    (1, 5, "2*i*p2*W"),
    (1, 6, "-2*p3*W"),
    (1, 7, "-z*W"),
    (2, 1, "2*(p1*z+m*W)"),
    (2, 2, "-2*p13"),
    (2, 3, "W^2-p33"),
    (2, 4, "-p3*zc"),
    (2, 5, "2*p3*W"),
    (2, 6, "-2*i*p2*W"),
    (2, 7, "2*p3*W"),
    (2, 8, "zc*W"),
    (3, 1, "p3*z"),
    (3, 2, "W^2-p33"),
    (3, 5, "z*W"),
    (3, 6, "-2*p3*W"),
    (4, 1, "z^2"),
    (4, 2, "-p3*z"),
    (4, 6, "-z*W"),
    (5, 1, "-2*i*p2*W"),
    (5, 2, "2*p3*W"),
    (5, 3, "zc*W"),
    (5, 5, "2*p13"),
    (5, 6, "2*(p1*zc+m*W)"),
    (5, 7, "p3*zc"),
    (5, 8, "zc^2"),
    (6, 1, "-2*p3*W"),
    (6, 2, "2*i*p2*W"),
    (6, 3, "-2*p3*W"),
    (6, 4, "-zc*W"),
    (6, 5, "2*(p1*z+m*W)"),
    (6, 6, "-2*p13"),
    (6, 7, "W^2-p33"),
    (6, 8, "-p3*zc"),
    (7, 1, "-z*W"),
    (7, 2, "2*p3*W"),
    (7, 5, "p3*z"),
    (7, 6, "W^2-p33"),
    (8, 2, "z*W"),
    (8, 5, "z^2"),
    (8, 6, "-p3*z"),
];

pub(crate) const VECTOR_S2: &[(usize, usize, &str)] = &[
    (1, 1, "-2*i*p33"),
    (1, 2, "-2*(p3*zc+m*W)"),
    (1, 3, "-p3*zc"),
    (1, 4, "-zc^2"),
    (1, 5, "-2*p1*W"),
    (1, 6, "2*p3*W"),
    (1, 7, "zc*W"),
    (2, 1, "2*(-i*p2*z+m*W)"),
    (2, 2, "2*i*p23"),
    (2, 3, "-W^2+p33"),
    (2, 4, "p3*zc"),
    (2, 5, "2*p3*W"),
    (2, 6, "2*p1*W"),
    (2, 7, "-2*p3*W"),
    (2, 8, "-zc*W"),
    (3, 1, "p3*z"),
    (3, 2, "W^2-p33"),
    (3, 5, "z*W"),
    (3, 6, "-2*p3*W"),
    (4, 1, "z^2"),
    (4, 2, "-p3*z"),
    (4, 6, "-z*W"),
    (5, 1, "2*p1*W"),
    (5, 2, "-2*p3*W"),
    (5, 3, "-zc*W"),
    (5, 5, "-2*i*p23"),
    (5, 6, "-2*(i*p2*zc+m*W)"),
    (5, 7, "-p3*zc"),
    (5, 8, "-zc^2"),
    (6, 1, "-2*p3*W"),
    (6, 2, "-2*p1*W"),
    (6, 3, "2*p3*W"),
    (6, 4, "zc*W"),
    (6, 5, "2*(-i*p2*z+m*W)"),
    (6, 6, "2*i*p23"),
    (6, 7, "-W^2+p33"),
    (6, 8, "p3*zc"),
    (7, 1, "-z*W"),
    (7, 2, "2*p3*W"),
    (7, 5, "p3*z"),
    (7, 6, "W^2-p33"),
    (8, 2, "z*W"),
    (8, 5, "z^2"),
    (8, 6, "-p3*z"),
];

pub(crate) const VECTOR_S3: &[(usize, usize, &str)] = &[
    (1, 1, "W^2+p33"),
    (1, 2, "p3*zc"),
    (1, 6, "zc*W"),
    (2, 1, "p3*z"),
    (2, 2, "p11+p22"),
    (2, 5, "-z*W"),
    (3, 3, "-W^2-p33"),
    (3, 4, "-p3*zc"),
    (3, 8, "-zc*W"),
    (4, 3, "-p3*z"),
    (4, 4, "-p11-p22"),
    (4, 7, "z*W"),
    (5, 2, "-zc*W"),
    (5, 5, "W^2+p33"),
    (5, 6, "p3*zc"),
    (6, 1, "z*W"),
    (6, 5, "p3*z"),
    (6, 6, "p11+p22"),
    (7, 4, "zc*W"),
    (7, 7, "-W^2-p33"),
    (7, 8, "-p3*zc"),
    (8, 3, "-z*W"),
    (8, 7, "-p3*z"),
    (8, 8, "-p11-p22"),
];

pub(crate) const QUARTET_S1: &[(usize, usize, &str)] = &[
    (1, 1, "sqrt3*p13"),
    (1, 2, "sqrt3*(p1*zc+m*W)"),
    (1, 3, "p3*zc"),
    (1, 4, "zc^2"),
    (1, 5, "i*sqrt3*p2*W"),
    (1, 6, "-sqrt3*p3*W"),
    (1, 7, "-W*zc"),
    (2, 1, "sqrt3*(p1*z+m*W)"),
    (2, 2, "-sqrt3*p13"),
    (2, 3, "2*m*W+p1122"),
    (2, 4, "-p3*zc"),
    (2, 5, "sqrt3*p3*W"),
    (2, 6, "-i*sqrt3*p2*W"),
    (2, 7, "2*p3*W"),
    (2, 8, "zc*W"),
    (3, 1, "p3*z"),
    (3, 2, "2*m*W+p1122"),
    (3, 3, "sqrt3*p13"),
    (3, 4, "sqrt3*(p1*zc+m*W)"),
    (3, 5, "2*W*z"),
    (3, 6, "-2*p3*W"),
    (3, 7, "sqrt3*p1*W"),
    (3, 8, "-sqrt3*p3*W"),
    (4, 1, "z^2"),
    (4, 2, "-p3*z"),
    (4, 3, "sqrt3*(p1*z+m*W)"),
    (4, 4, "-sqrt3*p13"),
    (4, 6, "-W*z"),
    (4, 7, "sqrt3*p3*W"),
    (4, 8, "-i*sqrt3*p2*W"),
    (5, 1, "-i*sqrt3*W"),
    (5, 2, "sqrt3*p3*W"),
    (5, 3, "W*zc"),
    (5, 5, "sqrt3*p13"),
    (5, 6, "sqrt3*(p1*zc+m*W)"),
    (5, 7, "p3*zc"),
    (5, 8, "zc^2"),
    (6, 1, "-sqrt3*p3*W"),
    (6, 2, "i*sqrt3*p2*W"),
    (6, 3, "-2*p3*W"),
    (6, 4, "-W*zc"),
    (6, 5, "sqrt3*(p1*z+m*W)"),
    (6, 6, "-sqrt3*p13"),
    (6, 7, "2*m*W+p1122"),
    (6, 8, "-p3*zc"),
    (7, 1, "-W*z"),
    (7, 2, "2*p3*W"),
    (7, 3, "-i*sqrt3*p2*W"),
    (7, 4, "sqrt3*p3*W"),
    (7, 5, "p3*zc"),
    (7, 6, "2*m*W^2+p1122"),
    (7, 7, "sqrt3*p13"),
    (7, 8, "sqrt3*(p1*zc+m*W)"),
    (8, 2, "W*z"),
    (8, 3, "-sqrt3*p3*W"),
    (8, 4, "i*sqrt3*p2*W"),
    (8, 5, "z^2"),
    (8, 6, "-p3*z"),
    (8, 7, "sqrt3*(p1*z+m*W)"),
    (8, 8, "-sqrt3*p13"),
];

pub(crate) const QUARTET_S2: &[(usize, usize, &str)] = &[
    (1, 1, "sqrt3*p23"),
    (1, 2, "-i*sqrt3*(m*W+i*p2*zc)"),
    (1, 3, "+i*p3*zc"),
    (1, 4, "-i*zc^2"),
    (1, 5, "-i*sqrt3*p1*W"),
    (1, 6, "i*sqrt3*p3*W"),
    (1, 7, "i*zc*W"),
    (2, 1, "i*sqrt3*(m*W-i*p2*z)"),
    (2, 2, "sqrt3*p23"),
    (2, 3, "-i*(W^2-p33)"),
    (2, 4, "i*p3*zc"),
    (2, 5, "i*sqrt3*p3*W"),
    (2, 6, "i*sqrt3*p1*W"),
    (2, 7, "-2*i*p3*W"),
    (2, 8, "-i*zc*W"),
    (3, 1, "i*p3*z"),
    (3, 2, "i*(W^2-p33)"),
    (3, 3, "sqrt3*p23"),
    (3, 4, "-i*sqrt3*(m*W+i*p2*zc)"),
    (3, 5, "i*z*W"),
    (3, 6, "-2*i*p3*W"),
    (3, 7, "-i*sqrt3*p1*W"),
    (3, 8, "i*sqrt3*p3*W"),
    (4, 1, "i*z^2"),
    (4, 2, "-i*p3*z"),
    (4, 3, "i*sqrt3*(m*W-i*p2*z)"),
    (4, 4, "-sqrt3*p23"),
    (4, 6, "-i*z*W"),
    (4, 7, "i*sqrt3*p3*W"),
    (4, 8, "i*sqrt3*p1*W"),
    (5, 1, "i*sqrt3*p1*W"),
    (5, 2, "-i*sqrt3*p3*W"),
    (5, 3, "-2*i*zc*W"),
    (5, 5, "sqrt3*p23"),
    (5, 6, "-i*sqrt3*(m*W+i*p2*zc)"),
    (5, 7, "-i*p3*zc"),
    (5, 8, "-i*zc^2"),
    (6, 1, "-i*sqrt3*p3*W"),
    (6, 2, "-i*sqrt3*p1*W"),
    (6, 3, "2*i*p3*W"),
    (6, 4, "i*zc*W"),
    (6, 5, "i*sqrt3*(m*W-i*p2*z)"),
    (6, 6, "-sqrt3*p23"),
    (6, 7, "-i*(W^2-p33)"),
    (6, 8, "i*p3*zc"),
    (7, 1, "-i*z*W"),
    (7, 2, "2*i*p3*W"),
    (7, 3, "i*sqrt3*p1*W"),
    (7, 4, "-i*sqrt3*p3*W"),
    (7, 5, "i*p3*z"),
    (7, 6, "i*(W^2-p33)"),
    (7, 7, "sqrt3*p23"),
    (7, 8, "-i*sqrt3*(m*W+i*p2*zc)"),
    (8, 2, "i*z*W"),
    (8, 3, "-i*sqrt3*p3*W"),
    (8, 4, "-i*sqrt3*p1*W"),
    (8, 5, "i*z^2"),
    (8, 6, "-i*p3*z"),
    (8, 7, "i*sqrt3*(m*W-i*p2*z)"),
    (8, 8, "-sqrt3*p23"),
];

pub(crate) const QUARTET_S3: &[(usize, usize, &str)] = &[
    (1, 1, "3*w*W-p1122"),
    (1, 2, "p3*zc"),
    (1, 6, "zc*W"),
    (2, 1, "p3*z"),
    (2, 2, "w*W+p1122"),
    (2, 5, "-z*W"),
    (3, 3, "-w*W-p1122"),
    (3, 4, "p3*zc"),
    (3, 8, "zc*W"),
    (4, 3, "p3*z"),
    (4, 4, "-3*w*W+p1122"),
    (4, 7, "-z*W"),
    (5, 2, "-zc*W"),
    (5, 5, "3*w*W-p1122"),
    (5, 6, "p3*zc"),
    (6, 1, "z*W"),
    (6, 5, "p3*z"),
    (6, 6, "w*W+p1122"),
    (7, 4, "-zc*W"),
    (7, 7, "-w*W-p1122"),
    (7, 8, "p3*zc"),
    (8, 3, "z*W"),
    (8, 7, "p3*z"),
    (8, 8, "-3*w*W+p1122"),
];

pub(crate) const SIXTEEN_S3: &[(usize, usize, &str)] = &[
    (1, 1, "4*w*W-p1122"),
    (1, 2, "p3*zc"),
    (1, 10, "zc*W"),
    (2, 1, "p3*z"),
    (2, 2, "2*w*W+p1122"),
    (2, 9, "-z*W"),
    (3, 3, "-p1122"),
    (3, 4, "p3*zc"),
    (3, 12, "zc*W"),
    (4, 3, "p3*z"),
    (4, 4, "W^2-p33"),
    (4, 11, "-z*W"),
    (5, 5, "-4*w*W+3*p1122"),
    (5, 6, "-3*p3*zc"),
    (5, 14, "-3*zc*W"),
    (6, 5, "-3*p3*z"),
    (6, 6, "2*w*W-3*p1122"),
    (6, 13, "3*z*W"),
    (7, 7, "-p1122"),
    (7, 8, "p3*zc"),
    (7, 16, "zc*W"),
    (8, 7, "p3*z"),
    (8, 8, "-W^2-p33"),
    (8, 15, "-z*W"),
    (9, 2, "-zc*W"),
    (9, 9, "4*w*W-p1122"),
    (9, 10, "p3*zc"),
    (10, 1, "z*W"),
    (10, 9, "p3*z"),
    (10, 10, "2*w*W+p1122"),
    (11, 4, "-zc*W"),
    (11, 11, "-p1122"),
    (11, 12, "p3*zc"),
    (12, 3, "z*W"),
    (12, 11, "p3*z"),
    (12, 12, "-W^2-p33"),
    (13, 6, "3*zc*W"),
    (13, 13, "-4*w*W+3*p1122"),
    (13, 14, "-3*p3*zc"),
    (14, 5, "-3*z*W"),
    (14, 13, "-3*p3*z"),
    (14, 14, "2*w*W-3*p1122"),
    (15, 8, "-zc*W"),
    (15, 15, "-p1122"),
    (15, 16, "p3*zc"),
    (16, 7, "z*W"),
    (16, 15, "p3*z"),
    (16, 16, "-W^2-p33"),
];

