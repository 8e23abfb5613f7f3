//! Random liability networks, clearing vectors and their mean-field limits.
//!
//! The crate is organised bottom-up:
//!
//! * [`netgraph`] samples two-group liability graphs and their weight matrices.
//! * [`fpcore`] holds the damped fixed-point iteration, the low-dimensional
//!   limit solver and the contraction/LLN diagnostics.
//! * [`finmodel`] builds the banking application on top: portfolios, shocks,
//!   finite clearing maps, limit aggregates and their closed forms.
//! * [`mcharness`] runs seeded Monte-Carlo paths and compares them with theory.

pub mod error;
pub mod finmodel;
pub mod fpcore;
pub mod mcharness;
pub mod netgraph;
pub mod rng;

pub use error::{Error, Result};
pub use rng::Seed;
