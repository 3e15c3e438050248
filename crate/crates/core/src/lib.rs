//! Stress-tensor expectation values of a two-particle scalar-field state with
//! localized negative energy density, vacuum energy-density/flux correlators in
//! two and four dimensions, worldline averaging checks, and a Monte Carlo oracle
//! for the exact momentum-space integrals.
//!
//! Units: `hbar = c = 1`; lengths and times share one unit and momenta are
//! inverse lengths.

pub mod cli;
pub mod error;
pub mod grid;
pub mod helfer;
pub mod oracle;
pub mod params;
pub mod qi;
pub mod specfun;
pub mod vacuum;

pub use error::{Error, Result};
pub use grid::{GridSpec, Scale};
pub use helfer::FieldSample;

pub use oracle::{MCEstimate, McRun, ShellSpec};
pub use params::{Chi0, HelferParams};
pub use qi::QIReport;

pub use vacuum::{CaseLabel, CorrSample};
