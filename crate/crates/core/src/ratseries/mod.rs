//! Noncommutative power series over `X`.
//!
//! [`LinRep`] holds exact rational series as linear representations
//! `(λ, μ, γ)`; [`TruncSeries`] holds power series known up to a precision
//! and serves as an independent cross-check.

mod linrep;
mod matrix;
mod trunc;

pub use linrep::{LinRep, LinRepDoc};
pub use matrix::{
    augmentation, invert_matrix_series, series_equal, series_identity, series_mul, SeriesMatrix,
};
pub use trunc::TruncSeries;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("series has zero constant term and is not invertible")]
    NotInvertible,
    #[error("augmentation matrix is singular")]
    SingularAugmentation,
    #[error("malformed representation: {0}")]
    Malformed(String),
}
