//! Exact combinatorics and algebra for the five-vertex model with
//! scalar-product boundary conditions.
//!
//! - [`model`]: lattice specs, configurations, vertex counts, the
//!   enumeration oracle and the plane-partition bijection.
//! - [`exact`]: rationals, polynomials, truncated series and the
//!   fraction-free determinant kernel.
//! - [`hankel`]: the three Hankel-determinant representations of `P`.
//! - [`painleve`]: the sigma function, the Painlevé VI residual and the
//!   expansion coefficients at `x = ∞, 0, 1`.

pub mod error;
pub mod exact;
pub mod hankel;
pub mod model;
pub mod painleve;

pub use error::{Error, Result};
pub use exact::{Poly, Rational};
pub use model::LatticeSpec;
