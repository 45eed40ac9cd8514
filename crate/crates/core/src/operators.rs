//! Discrete derivatives and the heat semigroup.
//!
//! Derivatives are computed in the point domain from two-point differences;
//! the heat semigroup is a spectral multiplier. Tests cross-check the two
//! routes against each other.

use crate::cube::{coordinate, coordinate_bit, Spectrum, TruthTable};
use crate::error::{Error, Result};
use crate::verdict::{StatementId, Verdict, Witness};

/// Exponents used for the norm half of the semigroup identity check.
pub const NORM_EXPONENTS: [f64; 3] = [1.0, 2.0, 3.0];
/// Pointwise and norm tolerance of the semigroup identity check.
pub const SEMIGROUP_TOL: f64 = 1e-10;

/// A nonnegative, finite time parameter of the heat semigroup.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct HeatTime(f64);

impl HeatTime {
    pub fn new(t: f64) -> Result<Self> {
        if t.is_finite() && t >= 0.0 {
            Ok(Self(t))
        } else {
            Err(Error::HeatTime(t))
        }
    }

    pub const ZERO: HeatTime = HeatTime(0.0);

    pub fn get(self) -> f64 {
        self.0
    }
}

fn check_pair(f: &TruthTable, i: usize, j: usize) -> Result<()> {
    f.check_coordinate(i)?;
    f.check_coordinate(j)?;
    if i == j {
        return Err(Error::SameCoordinate(i));
    }
    Ok(())
}

/// `(D_i f)(x) = (f(x) - f(x^i)) / 2`, where `x^i` flips coordinate `i`.
pub fn d_i(f: &TruthTable, i: usize) -> Result<TruthTable> {
    f.check_coordinate(i)?;
    let bit = coordinate_bit(i);
    let v = f.values();
    TruthTable::from_fn(f.n(), |m| (v[m] - v[m ^ bit]) / 2.0)
}

/// `(∂_i f)(x) = (f(x^{i->1}) - f(x^{i->-1})) / 2`; constant in coordinate `i`.
pub fn partial_i(f: &TruthTable, i: usize) -> Result<TruthTable> {
    f.check_coordinate(i)?;
    let bit = coordinate_bit(i);
    let v = f.values();
    TruthTable::from_fn(f.n(), |m| (v[m & !bit] - v[m | bit]) / 2.0)
}

/// `D_i D_j f`.
pub fn d_pair(f: &TruthTable, i: usize, j: usize) -> Result<TruthTable> {
    check_pair(f, i, j)?;
    d_i(&d_i(f, j)?, i)
}

/// `∂_i ∂_j f`. For Boolean `f` every value lies in `{-1, -1/2, 0, 1/2, 1}`.
pub fn partial_pair(f: &TruthTable, i: usize, j: usize) -> Result<TruthTable> {
    check_pair(f, i, j)?;
    let out = partial_i(&partial_i(f, j)?, i)?;
    debug_assert!(!f.is_boolean() || out.values().iter().all(|&v| is_half_step_value(v)));
    Ok(out)
}

/// True iff `v` rounds (within 1e-9) to one of `-1, -1/2, 0, 1/2, 1`.
pub fn is_half_step_value(v: f64) -> bool {
    let halves = (2.0 * v).round();
    halves.abs() <= 2.0 && (v - halves / 2.0).abs() <= 1e-9
}

/// Applies the multiplier `e^{-|A| t}` to a spectrum.
pub fn heat_spectrum(s: &Spectrum, t: HeatTime) -> Spectrum {
    let factors: Vec<f64> = (0..=s.n()).map(|k| (-(k as f64) * t.get()).exp()).collect();
    s.scaled(|a| factors[a.count_ones() as usize])
}

/// `P_t f = sum_A e^{-|A| t} f^(A) w_A`.
pub fn heat_apply(f: &TruthTable, t: HeatTime) -> TruthTable {
    if t.get() == 0.0 {
        return f.clone();
    }
    heat_spectrum(&f.analyze(), t).synthesize()
}

/// Checks `P_t D_ij f = e^{-2t} r_i r_j P_t ∂_ij f` pointwise, and
/// `e^{2t} |P_t D_ij f|_p = |P_t ∂_ij f|_p` for `p` in [`NORM_EXPONENTS`].
///
/// The verdict reports the `p = 2` norms as `lhs`/`rhs`; it passes iff the
/// largest pointwise discrepancy and every norm discrepancy are within
/// [`SEMIGROUP_TOL`].
pub fn check_semigroup_derivative_identity(f: &TruthTable, i: usize, j: usize, t: HeatTime) -> Result<Verdict> {
    let left = heat_apply(&d_pair(f, i, j)?, t);
    let smooth = heat_apply(&partial_pair(f, i, j)?, t);
    let decay = (-2.0 * t.get()).exp();
    let pointwise = left
        .values()
        .iter()
        .zip(smooth.values())
        .enumerate()
        .map(|(m, (&l, &r))| (l - decay * coordinate(m, i) * coordinate(m, j) * r).abs())
        .fold(0.0, f64::max);

    let growth = (2.0 * t.get()).exp();
    let mut norms_ok = true;
    let mut reported = (0.0, 0.0);
    for p in NORM_EXPONENTS {
        let lhs = growth * left.lp_norm(p)?;
        let rhs = smooth.lp_norm(p)?;
        norms_ok &= (lhs - rhs).abs() <= SEMIGROUP_TOL * rhs.max(1.0);
        if p == 2.0 {
            reported = (lhs, rhs);
        }
    }
    let (lhs, rhs) = reported;
    Ok(Verdict {
        statement_id: StatementId::SemigroupDerivativeIdentity,
        applicable: true,
        pass: Some(pointwise <= SEMIGROUP_TOL && norms_ok),
        lhs,
        rhs,
        slack: rhs - lhs,
        witness: Some(Witness::Pair { i, j }),
        reason: None,
    })
}
