//! Numerical laboratory for maximal averages over thin annuli and tubes
//! embedded on tilted planes in ℝ³.
//!
//! A 2×2 matrix `A` tilts the averaging plane at each base point
//! `(x, x₃)`: averages are taken over `(x - ty, x₃ - ⟨A(x), ty⟩)` for `y`
//! in a width-δ annulus (dilated by `t`) or a 1×δ tube (rotated by `θ`).
//! The L² operator norms of the resulting maximal functions grow like
//! powers of 1/δ, with the exponent decided by the ranks of the
//! symmetrized products `EA + (EA)ᵀ` and `A + Aᵀ` (`E` = rotation by π/2).
//!
//! The crate provides
//! * exact classification of matrices by those ranks ([`matrix`]),
//! * grid fields, cutoffs, and annulus/tube quadratures ([`grid`],
//!   [`bump`], [`sampler`]),
//! * discretized maximal averages and their suprema ([`maximal`]),
//! * a discretized oscillatory operator with matrix-free power iteration,
//!   kernel row-sum diagnostics, sublevel-set measures, and mixed-Hessian
//!   fold checks ([`oscillatory`]),
//! * lower-bound estimators and log–log exponent fits ([`scaling`]).

pub mod bump;
pub mod dense;
pub mod error;
pub mod grid;
pub mod matrix;
pub mod maximal;
pub mod oscillatory;
pub mod report;
pub mod rng;
pub mod sampler;
pub mod scaling;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
