//! Outcome records for individual checks.

use serde::Serialize;

use crate::json::serialize_real;

/// Absolute slack allowed on every inequality.
pub const INEQUALITY_TOL: f64 = 1e-12;
/// Relative tolerance for exact identities.
pub const IDENTITY_RTOL: f64 = 1e-9;

/// Which statement a verdict is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StatementId {
    /// `P_t D_ij f = e^{-2t} r_i r_j P_t d_ij f`, plus the matching norm identity.
    SemigroupDerivativeIdentity,
    /// `sum_{|A|>=2} f^(A)^2 = 4 sum_{i<j} int (e^{2t}-1) |P_t D_ij f|^2 dt`.
    HighDegreeIdentity,
    /// `I_i - f^({i})^2 = 2 sum_{j!=i} int e^{2t} |P_t D_ij f|^2 dt`.
    CoordinateExcessIdentity,
    /// `int (e^{2t}-1) |P_t D_ij f|^2 dt <= 2 I_ij / ln^2(2/I_ij)` for Boolean f.
    PairIntegralBound,
    /// `int e^{2t} |P_t D_ij f|^2 dt <= I_ij / ln(1/I_ij)` for Boolean f.
    WeightedPairIntegralBound,
    /// Either `y <= 2z` or `x >= 1 - 2z`.
    ScalarDichotomy,
    /// Either `y <= z + 4z^2` or `x >= 1 - z - 4z^2`.
    ScalarDichotomySharp,
    /// `|f^({i})| <= I_i` for Boolean f.
    LevelOneBound,
    /// `|P_t g|_2 <= |g|_{1+e^{-2t}}`.
    Hypercontractivity,
    /// `2 I(g) >= Ent(g^2)`.
    LogSobolev,
    /// `I(h) >= P(h=1) ln(1/P(h=1)) / 2` for `{0,1}`-valued h.
    EdgeIsoperimetry,
    /// `P(g != eta) <= 4 I(g) / ln(1/I(g))` for `{-1,0,1}`-valued g with small I(g).
    ThreeValuedConcentration,
    /// Small row sums of pair influences force a unique near-dictator or uniformly small influences.
    RowSumDichotomy,
    /// Small pair influences force f near a constant or near a unique (anti)dictator.
    PairInfluenceDichotomy,
    /// The previous dichotomy driven by the effective alpha instead of the uniform bound.
    GeneralizedDichotomy,
    /// Per-coordinate sharp scalar dichotomy along the `x=|f^({i})|, y=I_i` chain.
    CoordinateChainDichotomy,
}

impl StatementId {
    pub const ALL: [StatementId; 16] = [
        Self::SemigroupDerivativeIdentity,
        Self::HighDegreeIdentity,
        Self::CoordinateExcessIdentity,
        Self::PairIntegralBound,
        Self::WeightedPairIntegralBound,
        Self::ScalarDichotomy,
        Self::ScalarDichotomySharp,
        Self::LevelOneBound,
        Self::Hypercontractivity,
        Self::LogSobolev,
        Self::EdgeIsoperimetry,
        Self::ThreeValuedConcentration,
        Self::RowSumDichotomy,
        Self::PairInfluenceDichotomy,
        Self::GeneralizedDichotomy,
        Self::CoordinateChainDichotomy,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::SemigroupDerivativeIdentity => "semigroup_derivative_identity",
            Self::HighDegreeIdentity => "high_degree_identity",
            Self::CoordinateExcessIdentity => "coordinate_excess_identity",
            Self::PairIntegralBound => "pair_integral_bound",
            Self::WeightedPairIntegralBound => "weighted_pair_integral_bound",
            Self::ScalarDichotomy => "scalar_dichotomy",
            Self::ScalarDichotomySharp => "scalar_dichotomy_sharp",
            Self::LevelOneBound => "level_one_bound",
            Self::Hypercontractivity => "hypercontractivity",
            Self::LogSobolev => "log_sobolev",
            Self::EdgeIsoperimetry => "edge_isoperimetry",
            Self::ThreeValuedConcentration => "three_valued_concentration",
            Self::RowSumDichotomy => "row_sum_dichotomy",
            Self::PairInfluenceDichotomy => "pair_influence_dichotomy",
            Self::GeneralizedDichotomy => "generalized_dichotomy",
            Self::CoordinateChainDichotomy => "coordinate_chain_dichotomy",
        }
    }
}

impl std::fmt::Display for StatementId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Structured payload attached to a verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Coordinate {
        i: usize,
    },
    Pair {
        i: usize,
        j: usize,
    },
    /// The value `eta` the function concentrates on.
    Level {
        eta: i8,
    },
    /// Which sides of a dichotomy held. For coordinate branches,
    /// `qualifying` counts the coordinates meeting the threshold and
    /// `coordinate` names the one reported.
    Branches {
        first: bool,
        second: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        qualifying: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        coordinate: Option<usize>,
    },
    /// Coordinates checked and coordinates skipped for failing a precondition.
    Coordinates {
        checked: Vec<usize>,
        skipped: Vec<usize>,
    },
}

/// Outcome of one check. `pass` is `None` exactly when the statement's
/// preconditions fail, in which case `reason` names the violated one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub statement_id: StatementId,
    pub applicable: bool,
    pub pass: Option<bool>,
    #[serde(serialize_with = "serialize_real")]
    pub lhs: f64,
    #[serde(serialize_with = "serialize_real")]
    pub rhs: f64,
    /// `rhs - lhs` for inequalities and identities, or the margin of the
    /// branch that held for dichotomies.
    #[serde(serialize_with = "serialize_real")]
    pub slack: f64,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Verdict {
    pub fn not_applicable(statement_id: StatementId, reason: impl Into<String>) -> Self {
        Self {
            statement_id,
            applicable: false,
            pass: None,
            lhs: f64::NAN,
            rhs: f64::NAN,
            slack: f64::NAN,
            witness: None,
            reason: Some(reason.into()),
        }
    }

    /// `lhs <= rhs` up to [`INEQUALITY_TOL`].
    pub fn upper_bound(statement_id: StatementId, lhs: f64, rhs: f64) -> Self {
        Self::inequality(statement_id, lhs, rhs, INEQUALITY_TOL)
    }

    /// `lhs <= rhs + tol`. An infinite `rhs` passes vacuously.
    pub fn inequality(statement_id: StatementId, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self {
            statement_id,
            applicable: true,
            pass: Some(lhs <= rhs + tol),
            lhs,
            rhs,
            slack: rhs - lhs,
            witness: None,
            reason: None,
        }
    }

    /// `|lhs - rhs| <= rtol * max(1, |lhs|)`.
    pub fn identity(statement_id: StatementId, lhs: f64, rhs: f64, rtol: f64) -> Self {
        Self {
            statement_id,
            applicable: true,
            pass: Some((lhs - rhs).abs() <= rtol * lhs.abs().max(1.0)),
            lhs,
            rhs,
            slack: rhs - lhs,
            witness: None,
            reason: None,
        }
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn passed(&self) -> bool {
        self.pass == Some(true)
    }

    pub fn failed(&self) -> bool {
        self.pass == Some(false)
    }
}
