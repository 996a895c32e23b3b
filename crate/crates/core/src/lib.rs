//! Exact pair correlation statistics, gap profiles and additive energy for
//! explicit sequences in `[0, 1)`.
//!
//! Every coordinate is a binary fixed-point number (`numerator / 2^P`), so the
//! pair threshold `s / N`, circular distances and gap lengths are compared
//! exactly. Generators for Kronecker, van der Corput, LS, digital and
//! digit-shift sequences produce [`PointSet`]s in that representation.
//!
//! Heavy loops (sorting, pair sweeps, per-point generation, Monte Carlo seeds)
//! run on rayon when the `parallel` feature is enabled (the default). Every
//! such entry point also has a sequential path selectable through
//! [`Execution`].

pub mod correlation;
pub mod descriptor;
pub mod energy;
mod error;
pub mod experiments;
mod fixed;
pub mod gaps;
pub mod generators;
pub mod io;
mod par;
pub mod rational;
pub mod stoneham;
pub mod words;

pub use correlation::{
    equidist_deviation, frac_dist, intersection_fraction, pair_correlation,
    pair_correlation_curve, CorrelationSample,
};
pub use descriptor::Descriptor;
pub use error::{Error, Result};
pub use fixed::{FixedPoint, PointSet, DEFAULT_GUARD_DIGITS, DEFAULT_SCALE_BITS};
pub use gaps::{gap_profile, gap_scan, screen_structured, GapProfile, ScreenVerdict};
pub use par::Execution;
