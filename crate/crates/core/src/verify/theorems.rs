use super::scalar::{scalar_branches, ScalarVariant};
use super::Profile;
use crate::cube::coordinate_bit;
use crate::influences::{effective_alpha_from_report, log_term};
use crate::verdict::{StatementId, Verdict, Witness, INEQUALITY_TOL};

/// Largest row sum `theta` for which the row-sum dichotomy applies.
pub const THETA_THRESHOLD: f64 = 1.0 / 25.0;

impl Profile<'_> {
    fn coordinates_at_least(&self, values: impl Fn(usize) -> f64, threshold: f64) -> (usize, Option<usize>) {
        let hits: Vec<usize> = (1..=self.n())
            .filter(|&i| values(i) >= threshold - INEQUALITY_TOL)
            .collect();
        (hits.len(), hits.first().copied())
    }

    /// With `theta = max_i sum_{j != i} I_ij <= 1/25` and `b = theta / ln(1/theta)`:
    /// exactly one of "exactly one `i` has `|f^({i})| >= 1 - 8b`" and
    /// "`max_i I_i <= 4b`" holds. Checked as an exclusive disjunction.
    pub fn row_sum_dichotomy(&self) -> Verdict {
        let id = StatementId::RowSumDichotomy;
        if !self.boolean {
            return Verdict::not_applicable(id, "f is not Boolean");
        }
        let theta = self.report.theta;
        if theta > THETA_THRESHOLD {
            return Verdict::not_applicable(id, "theta > 1/25");
        }
        let b = log_term(theta);
        let near_one = 1.0 - 8.0 * b;
        let (qualifying, coordinate) = self.coordinates_at_least(|i| self.spectrum.singleton(i).abs(), near_one);
        let first = qualifying == 1;
        let max_influence = self.report.influences.iter().copied().fold(0.0, f64::max);
        let cap = 4.0 * b;
        let second = max_influence <= cap + INEQUALITY_TOL;
        let (lhs, rhs) = match coordinate {
            Some(i) if first => (near_one, self.spectrum.singleton(i).abs()),
            _ => (max_influence, cap),
        };
        Verdict {
            statement_id: id,
            applicable: true,
            pass: Some(first ^ second),
            lhs,
            rhs,
            slack: rhs - lhs,
            witness: Some(Witness::Branches {
                first,
                second,
                qualifying: Some(qualifying),
                coordinate,
            }),
            reason: None,
        }
    }

    /// `f^(∅)^2 >= 1 - c alpha`, or exactly one `i` with
    /// `f^({i})^2 >= 1 - c alpha ln(n) / n`. Inclusive disjunction.
    fn constant_or_dictator(&self, id: StatementId, alpha: f64, c: f64) -> Verdict {
        if !self.boolean {
            return Verdict::not_applicable(id, "f is not Boolean");
        }
        if c.is_nan() || c <= 0.0 {
            return Verdict::not_applicable(id, "c must be positive");
        }
        let n = self.n() as f64;
        let constant_floor = 1.0 - c * alpha;
        let mean_sq = self.spectrum.coeff(0).powi(2);
        let first = mean_sq >= constant_floor - INEQUALITY_TOL;
        let dictator_floor = 1.0 - c * alpha * n.ln() / n;
        let (qualifying, coordinate) =
            self.coordinates_at_least(|i| self.spectrum.singleton(i).powi(2), dictator_floor);
        let second = qualifying == 1;
        let (lhs, rhs) = match coordinate {
            Some(i) if second && !first => (dictator_floor, self.spectrum.singleton(i).powi(2)),
            _ => (constant_floor, mean_sq),
        };
        Verdict {
            statement_id: id,
            applicable: true,
            pass: Some(first || second),
            lhs,
            rhs,
            slack: rhs - lhs,
            witness: Some(Witness::Branches {
                first,
                second,
                qualifying: Some(qualifying),
                coordinate: coordinate.filter(|_| second),
            }),
            reason: None,
        }
    }

    /// The constant-or-dictator dichotomy with
    /// `alpha = max_{i<j} I_ij * n^2 / ln^2 n`.
    pub fn pair_influence_dichotomy(&self, c: f64) -> Verdict {
        let n = self.n() as f64;
        let alpha = self.report.max_pair_influence() * n * n / n.ln().powi(2);
        self.constant_or_dictator(StatementId::PairInfluenceDichotomy, alpha, c)
    }

    /// The constant-or-dictator dichotomy with alpha replaced by the
    /// effective alpha; an infinite effective alpha passes vacuously.
    pub fn generalized_dichotomy(&self, c: f64) -> Verdict {
        let alpha = effective_alpha_from_report(&self.report);
        self.constant_or_dictator(StatementId::GeneralizedDichotomy, alpha, c)
    }

    /// For every coordinate with `z_i = sum_{|A|>=2, A∋i} f^(A)^2 < 1/4`, the
    /// sharp scalar dichotomy at `x = |f^({i})|`, `y = I_i`, `z = z_i`:
    /// either `I_i <= z_i + 4 z_i^2` or `|f^({i})| >= 1 - z_i - 4 z_i^2`.
    ///
    /// The chain `x <= y <= x^2 + z_i` is itself checked for every applicable
    /// coordinate. The verdict reports the coordinate with the smallest margin.
    pub fn coordinate_chain_dichotomy(&self) -> Verdict {
        let id = StatementId::CoordinateChainDichotomy;
        if !self.boolean {
            return Verdict::not_applicable(id, "f is not Boolean");
        }
        let n = self.n();
        let coeffs = self.spectrum.coeffs();
        let (mut checked, mut skipped) = (Vec::new(), Vec::new());
        let mut worst: Option<Verdict> = None;
        let mut all_pass = true;
        for i in 1..=n {
            let bit = coordinate_bit(i);
            let z: f64 = (0..coeffs.len())
                .filter(|&a| a & bit != 0 && a.count_ones() >= 2)
                .map(|a| coeffs[a] * coeffs[a])
                .sum();
            if z >= 0.25 {
                skipped.push(i);
                continue;
            }
            checked.push(i);
            let x = self.spectrum.singleton(i).abs();
            let y = self.report.influence(i);
            let chain = x <= y + INEQUALITY_TOL && y <= x * x + z + INEQUALITY_TOL;
            let mut v = scalar_branches(id, x, y, ScalarVariant::Sharp.threshold(z));
            all_pass &= chain && v.passed();
            if let Some(Witness::Branches { first, second, .. }) = v.witness {
                v.witness = Some(Witness::Branches {
                    first,
                    second,
                    qualifying: None,
                    coordinate: Some(i),
                });
            }
            if worst.as_ref().is_none_or(|w| v.slack < w.slack) {
                worst = Some(v);
            }
        }
        match worst {
            None => Verdict {
                witness: Some(Witness::Coordinates { checked, skipped }),
                ..Verdict::not_applicable(id, "z_i >= 1/4 for every coordinate")
            },
            Some(v) => Verdict {
                pass: Some(all_pass),
                witness: Some(Witness::Coordinates { checked, skipped }),
                ..v
            },
        }
    }
}
