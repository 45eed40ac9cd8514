//! Exact Walsh-Fourier analysis, second-order influences and heat-semigroup
//! checks for functions on the discrete cube `{-1,1}^n`.
//!
//! Tables are dense (`2^n` reals, `2 <= n <= 24`) and every quantity is
//! computed exactly up to floating-point rounding. The [`verify`] module turns
//! each inequality and dichotomy about second-order influences into a
//! [`Verdict`]; [`suite`] batches those checks over exhaustive, sampled and
//! example function sets.

pub mod cube;
pub mod error;
pub mod influences;
pub mod json;
pub mod operators;
pub mod scan;
pub mod suite;
pub mod verdict;
pub mod verify;
pub mod zoo;

pub use cube::{Spectrum, TruthTable};
pub use error::{Error, Result};
pub use influences::{influence_report, InfluenceReport, PairIntegral};
pub use operators::HeatTime;
pub use verdict::{StatementId, Verdict, Witness};
pub use zoo::FunctionSpec;
