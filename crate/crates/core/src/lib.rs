//! Geometric idealizers inside Zhang twists of polynomial rings.
//!
//! The crate builds `R(P^d, O(1), σ, Z)` degree by degree from colon ideals,
//! decides homological transversality through graded Tor, analyzes σ-orbits,
//! and assembles the resulting noetherian / χ / cohomological-dimension
//! classification with explicit evidence for every row.

pub mod classify;
pub mod components;
pub mod error;
pub mod geometry;
pub mod homology;
pub mod idealizer;
pub mod poly;
pub mod scene;
pub mod twist;

pub use error::{Error, Result};
