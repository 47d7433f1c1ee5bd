//! Exact Poincaré-series machinery for the spaces of the Omega spectra of
//! `BoP`, `BP̄`, `bo`, `bu` and friends.
//!
//! Everything is 2-local and mod-2: homology tables are free graded algebras
//! described by generator counts, homotopy is described by free ranks plus
//! `Z/2` torsion, and every identity is checked as an exact equality of
//! truncated integer power series.

pub mod algebra;
pub mod catalog;
pub mod conjecture;
pub mod error;
pub mod report;
pub mod series;
pub mod splitting;
pub mod tower;

pub use algebra::{AlgebraKind, GeneratorTable, ParityReport};
pub use catalog::{HomotopyProfile, SpaceRef, SpectrumId};
pub use error::{Error, Result};
pub use report::{CaseResult, VerificationReport};
pub use series::{Factor, FactorForm, TruncatedSeries};
pub use tower::{Provenance, TowerResult};
