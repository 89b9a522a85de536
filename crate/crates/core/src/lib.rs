//! Exact computations for logarithmic Hilbert schemes of points on curves:
//! toric fans of `Hilb^n(P^1|0)` and `Hilb^n(P^1|0+inf)`, integral Chow ring
//! presentations, and motivic generating functions.

pub mod chow;
pub mod exact;
pub mod fan;
pub mod motive;

pub use chow::{BaseRing, ChowError, GradedPiece, GradedPresentation};
pub use exact::{ExactError, IntMatrix, MultiPoly, TruncSeries};
pub use fan::{FanError, Ray, StackyFan};
pub use motive::{MotiveError, StratumProfile, ZetaMode};

/// Name of the Lefschetz variable in motivic expressions.
pub const LEFSCHETZ: &str = "L";
