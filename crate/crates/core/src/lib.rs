//! Vibrational spectra of free plates on balls and free rods on intervals,
//! together with a numerical verification suite for the sign, monotonicity,
//! polynomial and calculus facts those spectra rest on.
//!
//! Module map:
//!
//! * [`bessel`] — ultraspherical Bessel functions `j_l`, `i_l` and their
//!   derivatives, from power series; zeros of `j_l'`.
//! * [`numerics`] — bracketing, root refinement, adaptive quadrature,
//!   finite differences.
//! * [`ball`] — the free-plate boundary determinant on the d-ball, tone
//!   solvers, radial trial-function profiles.
//! * [`rod`] — the free rod under tension and compression across all
//!   factorization regimes, branch tracing.
//! * [`iso`] — unit-volume domains, seeded direction sampling, the quotient
//!   bound and its monotonicity/polynomial/calculus checks.
//! * [`report`], [`verify`] — deterministic reports and the check suites.

pub mod ball;
pub mod bessel;
pub mod error;
pub mod iso;
pub mod numerics;
pub mod report;
pub mod rod;
pub mod verify;

pub use ball::{BallTone, CurveRow, RadialProfile};
pub use bessel::{SeriesPolicy, UltraIndex};
pub use error::{Error, Result};
pub use iso::{DirectionSampler, DomainKind, DomainSpec, QuotientBound};
pub use numerics::{Bracket, QuadraturePolicy};
pub use report::{CheckEntry, CheckStatus, VerificationReport};
pub use rod::{BranchRow, CoeffRatio, Parity, Regime, RodMode};
