//! Continuous interior penalty finite elements for the one-dimensional
//! Helmholtz problem
//!
//! ```text
//!     u'' + k^2 u = -f   on (0, 1),
//!     u(0) = 0,   u'(1) - i k u(1) = 0,
//! ```
//!
//! discretized with piecewise-linear elements on a uniform mesh and
//! stabilized by a penalty `gamma * h * [u'] [v']` on the derivative jumps at
//! interior nodes.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! - [`model`]: problem description, uniform mesh, right-hand side.
//! - [`quadrature`]: Gauss-Legendre rules.
//! - [`exact`]: the analytic solution through the Green's function.
//! - [`assembly`]: the pentadiagonal system matrix and the load vector,
//!   plus an entry-by-entry assembly from the sesquilinear form.
//! - [`banded`]: LU with partial pivoting for complex pentadiagonal systems.
//! - [`dispersion`]: discrete wavenumbers, the optimal penalty, cutoff
//!   frequencies and critical mesh sizes.
//! - [`greens`]: the discrete Green's function from the fundamental system
//!   of the stencil.
//! - [`analysis`]: norms, error reports and the stabilization identity.
//! - [`dense`]: small dense complex matrices with Gaussian elimination.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod assembly;
pub mod banded;
pub mod dense;
pub mod dispersion;
pub mod error;
pub mod exact;
pub mod greens;
pub mod model;
pub mod quadrature;

pub use error::{Error, Result};
pub use model::{Problem, RhsSpec, UniformMesh};
pub use num_complex::Complex64;
