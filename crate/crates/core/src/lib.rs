//! Solver for planar truncated moment problems.
//!
//! Given real numbers `beta_{ij}` for `0 <= i + j <= 2n`, decide whether some
//! finitely atomic positive measure on the plane has exactly these moments,
//! and if so produce one. The solver covers the non-extremal sextic cases
//! (`n = 3`) by rank reduction: it peels atoms off the moment matrix until a
//! flat (rank-stable) sequence remains, or splits the problem along the lines
//! supporting the variety, and certifies refusals with concrete witnesses.
//!
//! Arithmetic is generic over a [`scalar::Scalar`] backend: exact rationals
//! for certified answers, `f64` with relative tolerances for speed.

pub mod foundry;
pub mod hankel;
pub mod io;
pub mod linalg;
pub mod moments;
pub mod poly;
pub mod scalar;
pub mod solver;
pub mod variety;

pub mod cli;
