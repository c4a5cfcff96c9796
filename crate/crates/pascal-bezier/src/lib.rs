//! Bézier curve evaluation through Pascal matrix factorizations.
//!
//! The lower triangular Pascal matrix `P_n` of binomial coefficients factors
//! into bidiagonal sweeps, which gives an exact matrix-vector product using
//! only `n(n-1)/2` additions ([`pascal`]). It is also diagonally similar to a
//! lower triangular Toeplitz matrix, `P_n = D_n(t) T_n(t) D_n(t)^-1`, which
//! unlocks an `O(n log n)` multiply via circulant embedding and the FFT
//! ([`toeplitz`]). The similarity parameter `t` controls how far apart the
//! Toeplitz entries spread in magnitude; [`balancing`] computes the exact
//! optimum and enumerates the degrees for which no interior optimum exists.
//!
//! On top of those products, [`curve`] and [`strategy`] evaluate Bézier
//! curves of degree `n-1` from the spectral form of the Bernstein matrix,
//! `B_n^e(s) = P_n G_n(s) P_n^-1`, with three stabilization strategies
//! (single polynomial, reverse split at `s = 1/2`, and piecewise evaluation
//! with affine conditioning of the control coordinates), plus the classical
//! de Casteljau baseline for comparison.
//!
//! Grid evaluation and the exceptional-set search run data-parallel under
//! the default `parallel` feature; disabling default features yields a
//! fully sequential build with identical results.

pub mod balancing;
pub mod curve;
pub mod fft;
pub mod ops;
pub mod pascal;
pub mod strategy;
pub mod toeplitz;

mod exec;
mod math;

mod error;

pub use error::{Error, Result};
pub use ops::OpCount;
