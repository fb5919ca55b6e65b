//! Exact arithmetic for Fubini words, their Schubert polynomials and the quotient
//! rings `R_{n,k}`, `R_{n,k,s}` and `T_{n,k,r}`.
//!
//! The symmetric group acts on words by letter place, `p.w = w_{p(1)} ... w_{p(n)}`,
//! and on polynomials by `x_i -> x_{p(i)}`.
#![allow(clippy::needless_range_loop)]

pub mod cells;
pub mod error;
pub mod fieldlab;
pub mod groebner;
pub mod polyring;
pub mod qseries;
pub mod quotient;
pub mod schubert;
pub mod selftest;
pub mod symfunc;
pub mod words;

pub use error::{Error, Result};
