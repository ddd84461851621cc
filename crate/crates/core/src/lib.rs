//! Exact distance statistics for integer point sets.
//!
//! * [`numth`]: sums of two squares, `r(k)`, `rhat(k)`, the Landau count.
//! * [`diststats`]: distance-class histograms and quadruple energy for grids,
//!   L-shapes and arbitrary small point sets.
//! * [`rectlat`]: rectangular lattices `n^(1-a) x n^a`, the `r`/`d`
//!   identities, the four-number lemma and the interval decomposition.
//! * [`arcs`]: lattice points on circles and short-arc maxima.
//! * [`acceptance`]: the end-to-end criteria, runnable from tests or the CLI.
//!
//! Counting loops run on rayon when the `parallel` feature is enabled and
//! sequentially otherwise; results are identical either way.

pub mod acceptance;
pub mod arcs;
pub mod diststats;
pub mod error;
pub mod numth;
pub mod par;
pub mod rational;
pub mod rectlat;
mod ser;

pub use error::{Error, ErrorClass, Result};
pub use rational::Exponent;
