//! Thermodynamic-limit expansions of `log P_{N,M,L}(1/x)`.
//!
//! - [`geometry`]: square and rectangular shapes, critical points, regimes
//! - [`square`], [`rect`]: the `f2`, `f1`, `f0` terms and `σ2`
//! - [`barnes`]: Barnes G and the `ζ'(-1)` constant
//! - [`expansion`]: assembled expansions, `log Z̃`, free energy
//! - [`converge`]: residuals against exact finite-size values
//! - [`scan`]: finite-difference scans across the critical points

pub mod barnes;
pub mod converge;
pub mod expansion;
pub mod geometry;
pub mod rect;
pub mod scan;
pub mod square;

pub use expansion::AsymptoticExpansion;
pub use geometry::{Geometry, Regime};
