//! Verdict engines for the identities, inequalities and dichotomies about
//! second-order influences.
//!
//! Every check computes both sides of its statement from the function's
//! spectrum and influence report. Checks on a single function go through a
//! [`Profile`], which computes those once.

mod constants;
mod identities;
mod inequalities;
mod scalar;
mod theorems;

pub use constants::{compute_constants, Constants, SCAN_END};
pub use inequalities::{check_hypercontractivity, ANALYTIC_TOL, THREE_VALUED_MAX_INFLUENCE};
pub use scalar::{check_scalar_dichotomy, ScalarVariant};
pub use theorems::THETA_THRESHOLD;

use crate::cube::{Spectrum, TruthTable};
use crate::error::{Error, Result};
use crate::influences::{influence_report, InfluenceReport};

/// A function together with its spectrum and influence report.
#[derive(Debug, Clone)]
pub struct Profile<'a> {
    table: &'a TruthTable,
    spectrum: Spectrum,
    report: InfluenceReport,
    boolean: bool,
}

impl<'a> Profile<'a> {
    /// Builds the profile, confirming every influence by both the spectral
    /// and the derivative-norm route.
    pub fn new(table: &'a TruthTable) -> Result<Self> {
        let report = influence_report(table)?;
        Ok(Self {
            table,
            spectrum: table.analyze(),
            report,
            boolean: table.is_boolean(),
        })
    }

    pub fn table(&self) -> &TruthTable {
        self.table
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn report(&self) -> &InfluenceReport {
        &self.report
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn is_boolean(&self) -> bool {
        self.boolean
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.table.check_coordinate(i)?;
        self.table.check_coordinate(j)?;
        if i == j {
            return Err(Error::SameCoordinate(i));
        }
        Ok(())
    }
}
