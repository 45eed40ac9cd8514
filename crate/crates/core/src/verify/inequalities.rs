use super::Profile;
use crate::cube::TruthTable;
use crate::error::Result;
use crate::influences::{entropy, log_term, pair_integral, squared_log_term, PairIntegral};
use crate::operators::{heat_apply, HeatTime};
use crate::verdict::{StatementId, Verdict, Witness};

/// Allowance on the norm comparisons, which go through `powf`.
pub const ANALYTIC_TOL: f64 = 1e-10;
/// Total influence ceiling for the three-valued concentration bound.
pub const THREE_VALUED_MAX_INFLUENCE: f64 = 1.0 / 25.0;

/// `|P_t g|_2 <= |g|_{1 + e^{-2t}}`.
pub fn check_hypercontractivity(g: &TruthTable, t: HeatTime) -> Result<Verdict> {
    let lhs = heat_apply(g, t).lp_norm(2.0)?;
    let rhs = g.lp_norm(1.0 + (-2.0 * t.get()).exp())?;
    Ok(Verdict::inequality(
        StatementId::Hypercontractivity,
        lhs,
        rhs,
        ANALYTIC_TOL,
    ))
}

/// Most frequent value of a `{-1,0,1}`-valued sequence and its count; ties
/// go to the smallest value.
fn most_frequent_level(values: &[f64]) -> (i8, usize) {
    let mut counts = [0usize; 3];
    for &v in values {
        counts[(v as i8 + 1) as usize] += 1;
    }
    let mut best = 0;
    for k in 1..3 {
        if counts[k] > counts[best] {
            best = k;
        }
    }
    (best as i8 - 1, counts[best])
}

impl Profile<'_> {
    /// `int (e^{2t}-1) |P_t D_ij f|^2 dt <= 2 I_ij / ln^2(2 / I_ij)`, Boolean f.
    pub fn pair_integral_bound(&self, i: usize, j: usize) -> Result<Verdict> {
        self.check_pair(i, j)?;
        if !self.boolean {
            return Ok(Verdict::not_applicable(
                StatementId::PairIntegralBound,
                "f is not Boolean",
            ));
        }
        let lhs = pair_integral(&self.spectrum, i, j, PairIntegral::Shifted)?;
        let rhs = 2.0 * squared_log_term(self.report.pair_influence(i, j));
        Ok(Verdict::upper_bound(StatementId::PairIntegralBound, lhs, rhs).with_witness(Witness::Pair { i, j }))
    }

    /// `int e^{2t} |P_t D_ij f|^2 dt <= I_ij / ln(1 / I_ij)`, Boolean f.
    /// At `I_ij = 1` the bound is `+inf` and the check passes vacuously.
    pub fn weighted_pair_integral_bound(&self, i: usize, j: usize) -> Result<Verdict> {
        self.check_pair(i, j)?;
        if !self.boolean {
            return Ok(Verdict::not_applicable(
                StatementId::WeightedPairIntegralBound,
                "f is not Boolean",
            ));
        }
        let lhs = pair_integral(&self.spectrum, i, j, PairIntegral::Plain)?;
        let rhs = log_term(self.report.pair_influence(i, j));
        Ok(Verdict::upper_bound(StatementId::WeightedPairIntegralBound, lhs, rhs).with_witness(Witness::Pair { i, j }))
    }

    /// `|f^({i})| <= I_i`, Boolean f.
    pub fn level_one_bound(&self, i: usize) -> Result<Verdict> {
        self.table.check_coordinate(i)?;
        if !self.boolean {
            return Ok(Verdict::not_applicable(StatementId::LevelOneBound, "f is not Boolean"));
        }
        let lhs = self.spectrum.singleton(i).abs();
        let rhs = self.report.influence(i);
        Ok(Verdict::upper_bound(StatementId::LevelOneBound, lhs, rhs).with_witness(Witness::Coordinate { i }))
    }

    /// `Ent(g^2) <= 2 I(g)`.
    pub fn log_sobolev(&self) -> Verdict {
        let lhs = entropy(self.table);
        let rhs = 2.0 * self.report.total;
        Verdict::inequality(StatementId::LogSobolev, lhs, rhs, ANALYTIC_TOL)
    }

    /// `P(h=1) ln(1 / P(h=1)) / 2 <= I(h)` for `{0,1}`-valued h.
    pub fn edge_isoperimetry(&self) -> Verdict {
        if !self.table.is_indicator() {
            return Verdict::not_applicable(StatementId::EdgeIsoperimetry, "h is not {0,1}-valued");
        }
        let p = self.table.expectation();
        let lhs = if p == 0.0 { 0.0 } else { 0.5 * p * (1.0 / p).ln() };
        Verdict::upper_bound(StatementId::EdgeIsoperimetry, lhs, self.report.total)
    }

    /// `P(g != eta) <= 4 I(g) / ln(1 / I(g))` for `{-1,0,1}`-valued g with
    /// `I(g) <= 1/25`, where `eta` is the most frequent value (ties go to the
    /// smallest).
    pub fn three_valued_concentration(&self) -> Verdict {
        let id = StatementId::ThreeValuedConcentration;
        if !self.table.is_three_valued() {
            return Verdict::not_applicable(id, "g is not {-1,0,1}-valued");
        }
        let total = self.report.total;
        if total > THREE_VALUED_MAX_INFLUENCE {
            return Verdict::not_applicable(id, "I(g) > 1/25");
        }
        let (eta, hits) = most_frequent_level(self.table.values());
        let lhs = (self.table.len() - hits) as f64 / self.table.len() as f64;
        let rhs = 4.0 * log_term(total);
        Verdict::upper_bound(id, lhs, rhs).with_witness(Witness::Level { eta })
    }
}
