//! Median geometry for finite spaces with measured walls.
//!
//! The library represents a finite point set together with weighted walls
//! (complementary half-space pairs), builds the associated median space of
//! admissible sections, measures the quantitative constants relating a wall
//! space to its medianization, and runs numerical experiments on continuous
//! model geometries (hyperbolic disk walls via Crofton sampling, snowflaked
//! metrics, the `R^2 -> L^1` embedding).

// matrix-style loops here use the index for several containers at once
#![allow(clippy::needless_range_loop)]

pub mod audit;
pub mod bitset;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod lab;
pub mod medianization;
pub mod metric;
pub mod wallspace;

pub use error::{Error, Result};
pub use wallspace::{HalfSpaceRef, PointId, Side, Wall, WallSpace, WallSpaceMap};

/// Exact weight type used throughout the finite-space code paths.
pub type Weight = num_rational::Rational64;
