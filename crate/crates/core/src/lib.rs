//! Synchronization analysis for networks of identical harmonic oscillators
//! coupled through acceleration, velocity and position differences.
//!
//! A network is three weighted undirected graphs over the same `q` nodes
//! (inertial `M`, dissipative `B`, restorative `K`) plus the oscillator
//! parameters `m0` and `k0`:
//!
//! ```text
//! (M + m0 I) x'' + B x' + (K + k0 I) x = 0
//! ```
//!
//! The oscillators synchronize iff the eigenvalue of the complex Laplacian
//!
//! ```text
//! Λ = (M + m0 I)^{-1/2} (B + j(K + k0 I)) (M + m0 I)^{-1/2} − j (k0/m0) I
//! ```
//!
//! with the second-smallest real part lies strictly in the right half-plane.
//! [`analysis`] implements this test, its structural shortcuts and an
//! independent kernel-witness oracle; [`simulate`] integrates the ODE to
//! corroborate verdicts in the time domain; [`circuit`] maps LC-tank netlists
//! onto networks.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analysis;
pub mod circuit;
mod error;
pub mod generate;
pub mod graphs;
pub mod linalg;
pub mod simulate;

pub use error::{Error, Result};
pub use num_complex::Complex64;
