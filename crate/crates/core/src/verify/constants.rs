use serde::Serialize;

use crate::error::{Error, Result};
use crate::json::serialize_real;

/// Last dimension scanned for the two infima.
pub const SCAN_END: usize = 1000;
/// The scan must end on a stretch this long where both objectives increase.
const MONOTONE_TAIL: usize = 100;
/// Floor on the theorem constant.
const C_FLOOR: f64 = 20.0;

/// Numerical constants of the pair-influence dichotomy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    /// `min(inf_n n / (16 ln n), inf_n n / ln^2 n)`.
    #[serde(serialize_with = "serialize_real")]
    pub kappa: f64,
    /// `max(1 / kappa, 20)`.
    #[serde(serialize_with = "serialize_real")]
    pub c_main: f64,
    /// Minimizer of `n / (16 ln n)`.
    pub argmin_n1: usize,
    /// Minimizer of `n / ln^2 n`.
    pub argmin_n2: usize,
}

fn scan(objective: impl Fn(f64) -> f64) -> Result<(f64, usize)> {
    let values: Vec<f64> = (2..=SCAN_END).map(|n| objective(n as f64)).collect();
    let at = |n: usize| values[n - 2];
    for n in SCAN_END - MONOTONE_TAIL + 1..=SCAN_END {
        if at(n) <= at(n - 1) {
            return Err(Error::ScanBound(n));
        }
    }
    let (mut best, mut arg) = (f64::INFINITY, 0);
    for n in 2..=SCAN_END {
        if at(n) < best {
            best = at(n);
            arg = n;
        }
    }
    Ok((best, arg))
}

/// Scans integer `n` in `[2, 1000]` for both infima defining kappa.
pub fn compute_constants() -> Result<Constants> {
    let (first, argmin_n1) = scan(|n| n / (16.0 * n.ln()))?;
    let (second, argmin_n2) = scan(|n| n / n.ln().powi(2))?;
    let kappa = first.min(second);
    Ok(Constants {
        kappa,
        c_main: (1.0 / kappa).max(C_FLOOR),
        argmin_n1,
        argmin_n2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_from_scan() {
        let c = compute_constants().unwrap();
        assert_eq!(c.argmin_n1, 3);
        assert_eq!(c.argmin_n2, 7);
        assert!((c.kappa - 3.0 / (16.0 * 3f64.ln())).abs() < 1e-12);
        assert!((c.kappa - 0.170_669_855).abs() < 1e-9);
        assert_eq!(c.c_main, 20.0);
        assert_eq!(compute_constants().unwrap(), c);
    }

    #[test]
    fn second_infimum() {
        let (v, n) = scan(|n| n / n.ln().powi(2)).unwrap();
        assert_eq!(n, 7);
        assert!((v - 1.848_640_544).abs() < 1e-9);
    }

    #[test]
    fn decreasing_objective_is_rejected() {
        assert!(matches!(scan(|n| -n), Err(Error::ScanBound(_))));
    }
}
