//! Exact-arithmetic engine for the planar piecewise rotation
//! `F(z) = λ(z − H(z))`, `H(z) = 1` on the closed upper half-plane and `−1`
//! below it, with `λ = e^{2πip/q}`.
//!
//! All coordinates live in the cyclotomic field `Q(ζ_m)` ([`cyclo`]); every
//! branch decision uses an exact sign oracle, so orbits, periods, tiles and
//! critical segments carry no rounding error.

pub mod casestudy;
pub mod cli;
pub mod critical;
pub mod cyclo;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod tiles;

pub use cyclo::{make_field, CycloNum, Field, Sign};
pub use error::{Error, Result};
