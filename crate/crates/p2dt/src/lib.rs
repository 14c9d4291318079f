//! Exact torus-localization computation of rank-2 generalized Donaldson–Thomas
//! and BPS invariants of local P², with Euler-characteristic counts of
//! semistable torus-fixed strata.
//!
//! Modules, bottom up:
//! - [`exactmath`]: rationals, Hilbert polynomials, truncated q-series
//! - [`partitions`]: Young diagrams and lattice cell sets
//! - [`sigma`]: Δ-family data, chart contents, destabilizers, enumeration of D(P)
//! - [`strata`]: coincidence patterns and the c^ss / c^st counts
//! - [`pairs`]: torus-fixed stable pairs and the pair invariant
//! - [`invariants`]: DT, DT-hat, odd-b invariants and the generating series

pub mod exactmath;
pub mod invariants;
pub mod pairs;
pub mod partitions;
pub mod sigma;
pub mod strata;

use thiserror::Error;

pub use exactmath::{HilbertPolynomial, PowerSeries};

/// Exact rational scalar used everywhere in the crate.
pub type Rational = exactmath::Rational;
/// Hilbert polynomial over [`Rational`].
pub type RationalPoly = exactmath::RationalPoly;
/// q-series over [`Rational`].
pub type RationalSeries = exactmath::RationalSeries;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Δ-family data: {0}")]
    InvalidData(String),
    #[error("line component in chart {chart} touches two different strip values")]
    ConflictingLines { chart: usize },
    #[error("generic direction reaches P/2 for {data} with d = {d} blocks")]
    GenericDestabilizer { data: String, d: usize },
    #[error("configuration space needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("A sweep for b = {b} still produced rows at A_floor = {a_floor}")]
    FloorReached { b: i64, a_floor: i64 },
    #[error("need at least {needed} field sizes for interpolation, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
