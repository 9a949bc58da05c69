//! Numerical and Monte Carlo toolkit for small and large balls in stable trees.
//!
//! The crate is organised around the objects that can actually be computed:
//!
//! * [`kappa`]: the CSBP Laplace-exponent semigroup `κ_a(λ, μ)` for `ψ(u) = u^γ`
//!   and every transform built from it (ball masses under `N_a`, the spinal
//!   mass `M*`, local times).
//! * [`tails`]: certified series for the Brownian tails, the constant `C_γ`,
//!   the expansion coefficients and the gauge functions.
//! * [`laplace`]: two-method Laplace inversion (Talbot contour and Euler-accelerated
//!   Bromwich series) and monotone CDF tables.
//! * [`sampler`]: counter-based streams, positive stable variates, the
//!   subordinator, `M*` and independent shell masses.
//! * [`crt`]: normalized Brownian excursions, the coded tree metric, ball masses,
//!   local times and excursion counts.
//!
//! Data-parallel loops go through [`exec::Exec`]; with the default `parallel`
//! feature they run on rayon, otherwise sequentially, and results are always
//! merged in index order so output does not depend on the thread count.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod crt;
pub mod error;
pub mod exec;
pub mod index;
pub mod kappa;
pub mod laplace;
pub mod numeric;
pub mod sampler;
pub mod stats;
pub mod tails;

pub use error::{Error, Result};
pub use exec::Exec;
pub use index::StableIndex;
