//! Scaling scans over the tribes and V families.

use crate::cube::coordinate_bit;
use crate::error::{Error, Result};
use crate::influences::InfluenceReport;
use crate::zoo::FunctionSpec;

/// One tribes configuration. The same-tribe pair is `(1, 2)` and the
/// cross-tribe pair is `(1, w + 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TribesRow {
    pub n: usize,
    pub w: usize,
    pub same: f64,
    pub cross: f64,
}

impl TribesRow {
    pub const HEADER: [&'static str; 9] = [
        "n",
        "w",
        "same",
        "cross",
        "same_n2_ln2",
        "same_n_ln",
        "cross_n2_ln2",
        "cross_n_ln",
        "ratio",
    ];

    /// `I * n^2 / ln^2 n`.
    pub fn quadratic_scale(&self, v: f64) -> f64 {
        let n = self.n as f64;
        v * n * n / n.ln().powi(2)
    }

    /// `I * n / ln n`.
    pub fn linear_scale(&self, v: f64) -> f64 {
        let n = self.n as f64;
        v * n / n.ln()
    }

    pub fn ratio(&self) -> f64 {
        self.same / self.cross
    }

    pub fn columns(&self) -> [f64; 7] {
        [
            self.same,
            self.cross,
            self.quadratic_scale(self.same),
            self.linear_scale(self.same),
            self.quadratic_scale(self.cross),
            self.linear_scale(self.cross),
            self.ratio(),
        ]
    }
}

pub fn tribes_row(n: usize, w: usize) -> Result<TribesRow> {
    let spec = FunctionSpec::Tribes { n, w };
    if w < 2 || n / w.max(1) < 2 {
        return Err(Error::Spec {
            spec: spec.to_string(),
            reason: "a scan needs at least two tribes of width at least 2".into(),
        });
    }
    let s = spec.generate()?.analyze();
    let report = InfluenceReport::from_spectrum(&s);
    Ok(TribesRow {
        n,
        w,
        same: report.pair_influence(1, 2),
        cross: report.pair_influence(1, w + 1),
    })
}

/// One row of the V scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VeeRow {
    pub n: usize,
    pub theta: f64,
    pub hat_1: f64,
    pub influence_1: f64,
}

impl VeeRow {
    pub const HEADER: [&'static str; 6] = ["n", "theta", "theta_2n_over_n", "theta_2n_over_4nm1", "hat_1", "I_1"];

    pub fn columns(&self) -> [f64; 5] {
        let scaled = self.theta * (1u64 << self.n) as f64;
        [
            self.theta,
            scaled / self.n as f64,
            scaled / (4.0 * (self.n as f64 - 1.0)),
            self.hat_1,
            self.influence_1,
        ]
    }
}

pub fn vee_row(n: usize) -> Result<VeeRow> {
    let s = FunctionSpec::Vee { n }.generate()?.analyze();
    let report = InfluenceReport::from_spectrum(&s);
    Ok(VeeRow {
        n,
        theta: report.theta,
        hat_1: s.coeff(coordinate_bit(1)),
        influence_1: report.influence(1),
    })
}
