//! Stable delay-coordinate embeddings for linear dynamical systems.
//!
//! The crate works with linear systems whose steady state is a product of
//! `d` circular orbits (class A(d) systems). It builds the delay-coordinate
//! map restricted to the attractor, evaluates closed-form conditioning
//! bounds for that map, checks them with seeded Monte Carlo sweeps and
//! estimates correlation dimension from noisy scalar observations.
//!
//! Module map:
//!
//! * [`system`] - class A(d) systems in spectral form, flows and observations
//! * [`embedding`] - the frame matrix `G`, the delay map and distance ratios
//! * [`bounds`] - kappa, A, nu, C, delta and Gershgorin/frame bounds
//! * [`harness`] - Monte Carlo conditioning sweeps and the ill-conditioning demo
//! * [`dimension`] - correlation sums, local gradients and plateau read-off
//! * [`config`] / [`cli`] - JSON run configuration and CSV/report emission

pub mod bounds;
pub mod cli;
pub mod config;
pub mod dimension;
pub mod embedding;
mod error;
pub mod harness;
pub mod linalg;
pub mod rng;
pub mod system;

pub use error::{Error, Result};
pub use num_complex::Complex64;
