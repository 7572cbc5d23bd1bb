//! Projection representations of the hypercube `Q_n`, their edge weightings,
//! and the quantum-permutation constructions built on top of them.

pub mod config;
pub mod error;
pub mod funcalg;
pub mod hypercube;
pub mod io;
pub mod linalg;
pub mod magic;
pub mod paths;
pub mod rep;
pub mod report;
pub mod scalar;
pub mod suites;
pub mod weighting;

pub use error::{Error, Result};
pub use linalg::CMatrix;
pub use scalar::{Real, C};

pub type Complex64 = C<f64>;
pub type Matrix = CMatrix<f64>;
pub type Simplex = weighting::SimplexPoint<f64>;
pub type Weighting = weighting::EdgeWeighting<f64>;
pub type Gauge = weighting::PhaseGauge<f64>;
pub type Rep = rep::Representation<f64>;
pub type Magic = magic::MagicMatrix<f64>;
