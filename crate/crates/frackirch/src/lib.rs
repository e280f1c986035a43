//! Ground states of the critical fractional Kirchhoff equation
//!
//!     (a + b ∫|(-Δ)^{s/2} u|^2 dx) (-Δ)^s u = u^{2*_s - 1}   on R^N,
//!
//! with a, b > 0 and 2s < N < 4s, s < 1 (so N ∈ {1, 2, 3}).
//!
//! The library constructs the unique positive ground state by rescaling the
//! explicit bubble of the critical limit equation (-Δ)^s Q = Q^{2*_s - 1}:
//! a scalar root-finding problem f(E) = E - a - b κ E^θ determines the
//! dilation, and the discrete scaling identities close exactly on matched
//! grids. The linearized operator L+ (with its Kirchhoff rank-one term) is
//! then assembled on a periodic box and, sector by spherical-harmonic
//! sector, on a radial grid; its near-kernel is computed and compared with
//! the analytic candidates (translations and the dilation mode), and the
//! sector spectra are checked for the Perron sign structure.
//!
//! The `pipeline` module orchestrates the batch stages behind the CLI:
//! construct → verify → kernel → sectors → reconcile.

pub mod bubble;
pub mod eigen;
pub mod error;
pub mod fft;
pub mod grid;
pub mod quad;
pub mod scaling;
pub mod si;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
