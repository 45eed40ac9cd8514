use crate::verdict::{StatementId, Verdict, Witness, INEQUALITY_TOL};

/// Which form of the scalar dichotomy to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarVariant {
    /// Either `y <= 2z` or `x >= 1 - 2z`.
    Elementary,
    /// Either `y <= z + 4z^2` or `x >= 1 - z - 4z^2`.
    Sharp,
}

impl ScalarVariant {
    /// The correction `c(z)` in "either `y <= c(z)` or `x >= 1 - c(z)`".
    pub fn threshold(self, z: f64) -> f64 {
        match self {
            Self::Elementary => 2.0 * z,
            Self::Sharp => z + 4.0 * z * z,
        }
    }

    fn statement(self) -> StatementId {
        match self {
            Self::Elementary => StatementId::ScalarDichotomy,
            Self::Sharp => StatementId::ScalarDichotomySharp,
        }
    }
}

/// Checks the scalar dichotomy for `z in [0, 1/4)` and `0 <= x <= y <= x^2 + z`.
///
/// The disjunction is inclusive. The verdict reports the branch with the
/// larger margin: `(y, c(z))` for the first, `(1 - c(z), x)` for the second.
pub fn check_scalar_dichotomy(x: f64, y: f64, z: f64, variant: ScalarVariant) -> Verdict {
    let id = variant.statement();
    if !(0.0..0.25).contains(&z) {
        return Verdict::not_applicable(id, "z outside [0, 1/4)");
    }
    if !(0.0 <= x && x <= y && y <= x * x + z) {
        return Verdict::not_applicable(id, "not 0 <= x <= y <= x^2 + z");
    }
    scalar_branches(id, x, y, variant.threshold(z))
}

/// Shared by the per-coordinate chain check, which supplies its own
/// precondition handling.
pub(super) fn scalar_branches(id: StatementId, x: f64, y: f64, c: f64) -> Verdict {
    let small = c - y;
    let near_one = x - (1.0 - c);
    let first = small >= -INEQUALITY_TOL;
    let second = near_one >= -INEQUALITY_TOL;
    let (lhs, rhs) = if small >= near_one { (y, c) } else { (1.0 - c, x) };
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
            qualifying: None,
            coordinate: None,
        }),
        reason: None,
    }
}
