//! Whitney extension for horizontal curves in the Heisenberg group ℍⁿ.
//!
//! The numeric kernel (group law, polynomials, gap-filling formulas) is
//! generic over the scalar type; jets, extension and the Luzin construction
//! work in `f64`. The aliases below fix the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod counterexample;
pub mod error;
pub mod extension;
pub mod gap_filler;
pub mod heisenberg;
pub mod io;
pub mod lift;
pub mod luzin;
pub mod planar;
pub mod poly;
pub mod quad;
pub mod scalar;
pub mod whitney;

pub use error::{Error, Result};
pub use scalar::{Real, Scalar};

pub type HPoint = heisenberg::HPoint<f64>;
pub type PlanarPoint = heisenberg::PlanarPoint<f64>;
pub type SampledCurve = heisenberg::SampledCurve<f64>;
pub type Poly = poly::Poly<f64>;
pub type PlanarPiece = planar::PlanarPiece<f64>;
pub type HorizontalLift = lift::HorizontalLift<f64>;
pub type GapFrame = gap_filler::GapFrame<f64>;
pub type LemmaParams = gap_filler::LemmaParams<f64>;

pub use extension::{extend, verify, ExtendedCurve, VerificationReport};
pub use luzin::{approximate, PiecewiseCurve};
pub use whitney::{validate, CompactSet, Tolerances, WhitneyJet};
