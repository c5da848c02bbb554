//! Spectral square root of the Dirichlet Laplacian on intervals and rectangles.
//!
//! The crate works in the analytic Dirichlet sine basis of the domain:
//!
//! * [`basis`] builds uniform interior grids, quadrature and the eigenpairs.
//! * [`spectral`] holds coefficient-space functions and the diagonal operators
//!   `A^(1/2)`, its inverse, and `(-Δ)^(-1)`.
//! * [`extension`] evaluates the harmonic extension on the half-cylinder, its
//!   energy, a finite-difference Dirichlet-to-Neumann map and the half-space
//!   trace-Sobolev extremals.
//! * [`nonlinear`] solves `A^(1/2) u = u^p` by constrained energy minimization
//!   followed by a stabilized fixed-point polish.
//! * [`verification`] checks maximum principles, Hopf behaviour and symmetry of
//!   computed solutions.
//! * [`cli`] is the command-line front end.

pub mod basis;
pub mod cli;
pub mod error;
pub mod extension;
pub mod nonlinear;
mod serial;
pub mod spectral;
pub mod verification;

pub use basis::{DiscreteDomain, DomainKind, EigenBasis, GridFn};
pub use error::{Error, Result};
pub use extension::ExtremalProfile;
pub use nonlinear::{SolveConfig, SolveReport};
pub use spectral::SpectralFn;
pub use verification::CheckReport;
