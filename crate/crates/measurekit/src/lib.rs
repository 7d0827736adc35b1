//! Exact arithmetic for finite signed measures on the real line, their
//! distribution functions, and empirical convergence diagnostics.
//!
//! The kernel works entirely in arbitrary-precision rationals: measures are
//! finite atom lists plus compactly supported piecewise-constant densities,
//! in a canonical normal form so structural equality is measure equality.
//! On top of that sit the Hahn-Jordan decomposition, integration of
//! piecewise-polynomial test functions, the correspondence with bounded
//! variation functions, and checkers that sample a measure sequence on a
//! finite schedule and certify holds / fails / inconclusive verdicts for
//! vague and weak convergence and their companion conditions.

pub mod bv;
pub mod calculus;
pub mod corpus;
pub mod family;
pub mod measure;
pub mod scalar;
pub mod sequences;
pub mod set;
pub mod testfn;
pub mod verdict;

pub use bv::{distribution_function, measure_from_bv, sample_bv, BVFunction, Centre};
pub use calculus::{integrate, jordan, tv_norm, variation};
pub use family::{FamilyMember, TestFamily};
pub use measure::{Atom, DensityPiece, Measure};
pub use scalar::Scalar;
pub use sequences::{
    audit_implications, classify, run_checks, CheckParams, CheckSet, ClassifyReport,
    MeasureSequence, SequenceRun,
};
pub use set::{Endpoint, Interval, RealSet};
pub use testfn::{FunctionClass, Poly, TestFunction};
pub use verdict::{limit_diagnostic, Sample, Schedule, Status, Verdict};
