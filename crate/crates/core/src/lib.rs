//! Exact exponential Riordan arrays over `Q(z)`.
//!
//! Arrays are built from truncated power series whose coefficients are
//! rational functions of a parameter `z`. On top of that sit production
//! matrices, the orthogonal-polynomial moment correspondence, and exact
//! Hankel determinants.

pub mod expr;
pub mod hankel;
pub mod io;
pub mod matrix;
pub mod orthopoly;
pub mod riordan;
pub mod scalars;
pub mod sequences;
pub mod series;
pub mod verify;

pub use expr::{EvalError, Expr, ParseError};
pub use hankel::{binomial_transform, hankel_det, hankel_from_betas, hankel_transform, HankelError};
pub use io::IoError;
pub use matrix::Matrix;
pub use orthopoly::{jacobi_from_moments, JacobiParams, JacobiRecovery, MomentSequence, OrthoError, Recovery};
pub use riordan::{BivariateGf, ERArray, ProductionMatrix, ProductionSeries, RiordanError};
pub use scalars::{PolyZ, Rational, Scalar, ScalarError};
pub use sequences::{IntTriangle, NamedPair, SequenceError};
pub use series::{Series, SeriesError};
