//! Exact Bergman kernels of the symmetrized polydisc `G_n`.
//!
//! The crate is layered:
//!
//! * [`polyalg`]: sparse multivariate polynomials over big rationals, rational
//!   functions, the canonical text format and complex evaluation (double or
//!   double-double precision).
//! * [`symfun`]: the symmetrization map, Vandermonde products, fiber
//!   inversion through companion matrices and the decomposition of symmetric
//!   polynomials into elementary symmetric ones.
//! * [`kernel`]: the Bergman kernel of `G_n` evaluated directly from the
//!   polydisc, the closed form for `n = 2`, and the exact pipeline producing
//!   `K = H1 / (pi^n H2)` as a [`kernel::KernelFormula`].
//! * [`geometry`]: domain membership, Bergman metric, diastasis, potentials
//!   and pullback residuals of holomorphic curves.
//! * [`cli`]: the command line front end.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod kernel;
pub mod numdiff;
pub mod polyalg;
pub mod sampling;
pub mod symfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;
