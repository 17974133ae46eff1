//! Pricing, calibration and optimal investment for financial claims whose
//! payouts depend on the outcome of a quantum measurement.
//!
//! A claim is a Hermitian operator: its eigenvectors are the measurement
//! outcomes and its eigenvalues the cash payouts. Prices come from a pricing
//! kernel `(P0T, q)` as `P0T · tr(q X)`, expectations from the physical state
//! `p` as `tr(p X)`.

pub mod claims;
pub mod error;
pub mod investment;
pub mod json;
pub mod kochen_specker;
pub mod multi;
pub mod quantum;
pub mod random;
pub mod scenario;
pub mod tol;

pub use error::{Error, Result};
pub use quantum::{DensityMatrix, HermitianOperator, MeasurementBasis, Spectrum};
pub use tol::Tolerances;
