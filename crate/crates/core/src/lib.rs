//! Closed-form coefficients for the Volterra-type convolution of classical
//! orthogonal polynomials.
//!
//! For a polynomial family `{P_k}` with domain offset `a`, the convolution
//!
//! ```text
//! ∫_{-a}^{x+a} P_m(x - t) P_n(t) dt = Σ_{j=0}^{m+n+1} ρ_{j,n}^m P_j(x + a)
//! ```
//!
//! is a polynomial of degree `m + n + 1`. This crate computes the `ρ`
//! coefficients three independent ways:
//!
//! * [`closed_forms`]: family-specific explicit formulas (Jacobi, symmetric
//!   Jacobi, Gegenbauer, Legendre, Chebyshev, Laguerre),
//! * [`generic_conv`]: the family-agnostic Taylor/connection-coefficient
//!   framework, driven by [`basis::GenericBasisData`],
//! * [`oracle`]: brute-force exact integration in the monomial basis followed
//!   by re-projection.
//!
//! All arithmetic is generic over [`scalars::Field`], with an exact
//! big-rational backend and a fixed-precision binary floating backend.
//! [`convmat`] assembles convolution matrices for finite series.

pub mod basis;
pub mod cli;
pub mod closed_forms;
pub mod convmat;
pub mod error;
pub mod generic_conv;
pub mod oracle;
pub mod scalars;
pub mod verify;

pub use basis::{Family, FamilySpec};
pub use error::{Error, Result};
pub use scalars::{Backend, Field, Float, Rational, Scalar};
