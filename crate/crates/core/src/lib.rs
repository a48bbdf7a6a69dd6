//! Certified computations around periods of quartic K3 surfaces.
//!
//! The crate is organised bottom-up:
//!
//! - [`poly`]: exact homogeneous polynomials in `w, x, y, z`.
//! - [`reduction`]: Macaulay division by the Jacobian ideal and the
//!   Griffiths–Dwork pole reduction, with exact operator-norm bounds.
//! - [`ball`]: midpoint–radius complex ball arithmetic on top of MPFR.
//! - [`lattice`]: the rank-22 K3 lattice and discriminants of classes.
//! - [`nl_bounds`]: Noether–Lefschetz index arithmetic, dimension ledgers and
//!   tower numbers for astronomically large bounds.
//! - [`mp_series`]: theta-series degree bounds for Noether–Lefschetz loci.
//! - [`pipeline`]: period data, separation constants and the Picard
//!   membership decision.

pub mod ball;
pub mod error;
pub mod lattice;
pub mod mp_series;
pub mod nl_bounds;
pub mod pipeline;
pub mod poly;
pub mod reduction;
pub mod sample;

pub use error::{Error, Result};
