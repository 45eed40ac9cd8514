use super::Profile;
use crate::error::Result;
use crate::influences::{pair_integral, pairs, PairIntegral};
use crate::verdict::{StatementId, Verdict, Witness, IDENTITY_RTOL};

impl Profile<'_> {
    /// `sum_{|A|>=2} f^(A)^2 = 4 sum_{i<j} int (e^{2t}-1) |P_t D_ij f|^2 dt`.
    pub fn high_degree_identity(&self) -> Result<Verdict> {
        let lhs = self.report.high_degree_weight();
        let mut rhs = 0.0;
        for (i, j) in pairs(self.n()) {
            rhs += pair_integral(&self.spectrum, i, j, PairIntegral::Shifted)?;
        }
        Ok(Verdict::identity(
            StatementId::HighDegreeIdentity,
            lhs,
            4.0 * rhs,
            IDENTITY_RTOL,
        ))
    }

    /// `I_i - f^({i})^2 = 2 sum_{j != i} int e^{2t} |P_t D_ij f|^2 dt`.
    pub fn coordinate_excess_identity(&self, i: usize) -> Result<Verdict> {
        self.table.check_coordinate(i)?;
        let lhs = self.report.influence(i) - self.spectrum.singleton(i).powi(2);
        let mut rhs = 0.0;
        for j in (1..=self.n()).filter(|&j| j != i) {
            rhs += pair_integral(&self.spectrum, i, j, PairIntegral::Plain)?;
        }
        Ok(
            Verdict::identity(StatementId::CoordinateExcessIdentity, lhs, 2.0 * rhs, IDENTITY_RTOL)
                .with_witness(Witness::Coordinate { i }),
        )
    }
}
