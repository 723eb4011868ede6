//! Exact nonsymmetric Macdonald polynomials of type A via the
//! Haglund–Haiman–Loehr filling formula, their `t -> 0` and `t -> infinity`
//! limits, and characters of level-one Demazure modules.

pub mod arith;
pub mod demazure;
pub mod diagram;
pub mod format;
pub mod hhl;
pub mod series;
pub mod verify;
