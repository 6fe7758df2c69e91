//! Numerical laboratory for discretized torus automorphisms.
//!
//! Cat maps `T_α` (integer `α`) and their discontinuous sawtooth extensions
//! `S_α` (real `α`) are forced onto an N×N lattice / an N-dimensional Weyl
//! algebra, and the entropy produced per time step by a Weyl partition of
//! unity is tracked until the finite state space saturates it.  The crate
//! covers:
//!
//! - torus arithmetic and the lattice maps `U_α`, `V_α` ([`torus`]),
//! - the finite-dimensional Weyl algebra on C^N with its admissible
//!   representation phases and Heisenberg dynamics ([`weyl`]),
//! - three coherent-state families with exact overcompleteness and
//!   localization oracles ([`coherent`]),
//! - Weyl / anti-Wick (de)discretization morphisms and Egorov-type defect
//!   diagnostics ([`quantize`]),
//! - the Gram-matrix / frequency-field entropy pipeline ([`entropy`]),
//! - breaking-time prediction and compactified-time Lyapunov extrapolation
//!   ([`analysis`]),
//! - expansion bounds, discontinuity strips and orbit shadowing checks
//!   ([`geometry`]).
//!
//! All randomized routines take explicit seeds and run through [`rng`], a
//! 64-bit shift-multiply generator with the constants written out, so results
//! are reproducible bit for bit across platforms and thread counts.  The
//! `parallel` feature (on by default) enables rayon data-parallel kernels;
//! reductions are arranged in fixed index order, so enabling or disabling it
//! never changes a computed value.

pub mod analysis;
pub mod cmat;
pub mod coherent;
pub mod eigen;
pub mod entropy;
mod error;
pub mod geometry;
pub mod intmat;
mod par;
pub mod quantize;
pub mod rng;
pub mod torus;
pub mod weyl;

pub use error::{Error, Result};
