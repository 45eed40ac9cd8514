//! First- and second-order influences and the quantities built from them.

use rayon::prelude::*;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::cube::{coordinate_bit, Spectrum, TruthTable};
use crate::error::{Error, Result};
use crate::json::Real;
use crate::operators::{d_i, d_pair};

/// Agreement required between the spectral and point-domain influence routes.
pub const DUAL_ROUTE_TOL: f64 = 1e-10;

/// Iterates every mask containing `required`, in increasing order.
fn supersets(n: usize, required: usize) -> impl Iterator<Item = usize> {
    let free = ((1usize << n) - 1) & !required;
    let mut next = Some(0usize);
    std::iter::from_fn(move || {
        let rest = next?;
        let sub = rest.wrapping_sub(free) & free;
        next = (sub != 0).then_some(sub);
        Some(rest | required)
    })
}

/// `(i, j)` with `1 <= i < j <= n` in row-major order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

fn pair_slot(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    // rows 1..i-1 hold (n-1) + (n-2) + ... entries
    (i - 1) * (2 * n - i) / 2 + (j - i - 1)
}

/// Squared coefficients, the common input of every spectral sum.
fn energies(s: &Spectrum) -> Vec<f64> {
    s.coeffs().iter().map(|c| c * c).collect()
}

fn sum_over_supersets(sq: &[f64], n: usize, required: usize) -> f64 {
    supersets(n, required).map(|a| sq[a]).sum()
}

/// Every influence-type statistic of one function.
#[derive(Debug, Clone, PartialEq)]
pub struct InfluenceReport {
    pub n: usize,
    /// `I_i` at index `i - 1`.
    pub influences: Vec<f64>,
    /// `I_ij` for `i < j`, in the order of [`pairs`].
    pub pair_influences: Vec<f64>,
    pub total: f64,
    /// `max_i sum_{j != i} I_ij`.
    pub theta: f64,
    /// `W_k = sum_{|A| = k} f^(A)^2` for `k = 0..=n`.
    pub degree_weights: Vec<f64>,
}

impl InfluenceReport {
    /// Computes the report from the spectrum alone.
    pub fn from_spectrum(s: &Spectrum) -> Self {
        let n = s.n();
        let sq = energies(s);
        let influences = (1..=n).map(|i| sum_over_supersets(&sq, n, coordinate_bit(i))).collect();
        let pair_list: Vec<_> = pairs(n).collect();
        let pair_influences = pair_list
            .par_iter()
            .map(|&(i, j)| sum_over_supersets(&sq, n, coordinate_bit(i) | coordinate_bit(j)))
            .collect();
        let mut degree_weights = vec![0.0; n + 1];
        for (a, e) in sq.iter().enumerate() {
            degree_weights[a.count_ones() as usize] += e;
        }
        let mut report = Self {
            n,
            influences,
            pair_influences,
            total: 0.0,
            theta: 0.0,
            degree_weights,
        };
        report.total = report.influences.iter().sum();
        report.theta = (1..=n).map(|i| report.row_sum(i)).fold(0.0, f64::max);
        report
    }

    pub fn influence(&self, i: usize) -> f64 {
        self.influences[i - 1]
    }

    /// `I_ij`, symmetric in its arguments.
    pub fn pair_influence(&self, i: usize, j: usize) -> f64 {
        assert_ne!(i, j, "pair influence needs distinct coordinates");
        self.pair_influences[pair_slot(self.n, i, j)]
    }

    pub fn max_pair_influence(&self) -> f64 {
        self.pair_influences.iter().copied().fold(0.0, f64::max)
    }

    /// `sum_{j != i} I_ij`.
    pub fn row_sum(&self, i: usize) -> f64 {
        (1..=self.n)
            .filter(|&j| j != i)
            .map(|j| self.pair_influence(i, j))
            .sum()
    }

    /// `sum_k W_k`, i.e. `E[f^2]`.
    pub fn energy(&self) -> f64 {
        self.degree_weights.iter().sum()
    }

    /// `sum_{k >= 2} W_k`.
    pub fn high_degree_weight(&self) -> f64 {
        self.degree_weights.iter().skip(2).sum()
    }
}

impl Serialize for InfluenceReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Reals<'a>(&'a [f64]);
        impl Serialize for Reals<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for &x in self.0 {
                    seq.serialize_element(&Real(x))?;
                }
                seq.end()
            }
        }
        struct Triples<'a>(&'a InfluenceReport);
        impl Serialize for Triples<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let r = self.0;
                let mut seq = s.serialize_seq(Some(r.pair_influences.len()))?;
                for ((i, j), &v) in pairs(r.n).zip(&r.pair_influences) {
                    seq.serialize_element(&(i, j, Real(v)))?;
                }
                seq.end()
            }
        }
        let mut st = serializer.serialize_struct("InfluenceReport", 6)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("I", &Reals(&self.influences))?;
        st.serialize_field("Iij", &Triples(self))?;
        st.serialize_field("total", &Real(self.total))?;
        st.serialize_field("theta", &Real(self.theta))?;
        st.serialize_field("W", &Reals(&self.degree_weights))?;
        st.end()
    }
}

/// Builds the report spectrally and confirms every influence against the
/// squared L2 norm of the corresponding derivative table.
pub fn influence_report(f: &TruthTable) -> Result<InfluenceReport> {
    let report = InfluenceReport::from_spectrum(&f.analyze());
    let n = f.n();
    let scale = DUAL_ROUTE_TOL * report.energy().max(1.0);
    let sq_norm = |t: TruthTable| t.values().iter().map(|v| v * v).sum::<f64>() / t.len() as f64;

    for i in 1..=n {
        let direct = sq_norm(d_i(f, i)?);
        if (direct - report.influence(i)).abs() > scale {
            return Err(Error::InternalFault(format!(
                "I_{i}: spectral {} vs derivative norm {direct}",
                report.influence(i)
            )));
        }
    }
    let pair_list: Vec<_> = pairs(n).collect();
    let direct: Vec<f64> = pair_list
        .par_iter()
        .map(|&(i, j)| d_pair(f, i, j).map(sq_norm))
        .collect::<Result<_>>()?;
    for (&(i, j), (d, s)) in pair_list.iter().zip(direct.iter().zip(&report.pair_influences)) {
        if (d - s).abs() > scale {
            return Err(Error::InternalFault(format!(
                "I_{i},{j}: spectral {s} vs derivative norm {d}"
            )));
        }
    }
    let weighted: f64 = report
        .degree_weights
        .iter()
        .enumerate()
        .map(|(k, w)| k as f64 * w)
        .sum();
    if (weighted - report.total).abs() > scale * n as f64 {
        return Err(Error::InternalFault(format!(
            "total influence {} vs degree-weighted sum {weighted}",
            report.total
        )));
    }
    Ok(report)
}

/// The two time integrals of `|P_t D_ij f|_2^2` that appear in the pair bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairIntegral {
    /// `int_0^inf (e^{2t} - 1) |P_t D_ij f|^2 dt`; mask weight `1 / (2k(k-1))`.
    Shifted,
    /// `int_0^inf e^{2t} |P_t D_ij f|^2 dt`; mask weight `1 / (2(k-1))`.
    Plain,
}

impl PairIntegral {
    /// Closed-form value of the integral for a single mask of size `k >= 2`.
    pub fn mask_weight(self, k: usize) -> f64 {
        let k = k as f64;
        match self {
            Self::Shifted => 1.0 / (2.0 * k * (k - 1.0)),
            Self::Plain => 1.0 / (2.0 * (k - 1.0)),
        }
    }

    fn time_weight(self, t: f64) -> f64 {
        match self {
            Self::Shifted => (2.0 * t).exp_m1(),
            Self::Plain => (2.0 * t).exp(),
        }
    }
}

fn check_spectrum_pair(s: &Spectrum, i: usize, j: usize) -> Result<()> {
    let n = s.n();
    for c in [i, j] {
        if !(1..=n).contains(&c) {
            return Err(Error::Coordinate { i: c, n });
        }
    }
    if i == j {
        return Err(Error::SameCoordinate(i));
    }
    Ok(())
}

/// Closed form `sum_{A ⊇ {i,j}} f^(A)^2 * kind.mask_weight(|A|)`.
pub fn pair_integral(s: &Spectrum, i: usize, j: usize, kind: PairIntegral) -> Result<f64> {
    check_spectrum_pair(s, i, j)?;
    let required = coordinate_bit(i) | coordinate_bit(j);
    let weights: Vec<f64> = (0..=s.n())
        .map(|k| if k < 2 { 0.0 } else { kind.mask_weight(k) })
        .collect();
    Ok(supersets(s.n(), required)
        .map(|a| {
            let c = s.coeff(a);
            c * c * weights[a.count_ones() as usize]
        })
        .sum())
}

/// `int_0^inf (e^{2t} - 1) |P_t D_ij f|^2 dt` in closed form.
pub fn integral_shifted(f: &TruthTable, i: usize, j: usize) -> Result<f64> {
    pair_integral(&f.analyze(), i, j, PairIntegral::Shifted)
}

/// `int_0^inf e^{2t} |P_t D_ij f|^2 dt` in closed form.
pub fn integral_plain(f: &TruthTable, i: usize, j: usize) -> Result<f64> {
    pair_integral(&f.analyze(), i, j, PairIntegral::Plain)
}

/// Upper end of the quadrature interval.
pub const QUADRATURE_HORIZON: f64 = 20.0;
pub const QUADRATURE_TOL: f64 = 1e-9;
const MAX_DEPTH: u32 = 48;

/// Integrates the defining time integral numerically with adaptive Simpson
/// on `[0, 20]`, split into panels of width 1/16.
///
/// `|P_t D_ij f|_2^2` is evaluated from the point-domain `D_ij f` through its
/// degree profile, so nothing here uses the per-mask closed form. The tail
/// beyond the horizon is at most `|D_ij f|^2 e^{-40} / 2` (degree two
/// dominates) and must stay below the tolerance.
pub fn integral_quadrature(f: &TruthTable, i: usize, j: usize, kind: PairIntegral) -> Result<f64> {
    let g = d_pair(f, i, j)?;
    let n = g.n();
    let mut profile = vec![0.0; n + 1];
    for (a, c) in g.analyze().coeffs().iter().enumerate() {
        profile[a.count_ones() as usize] += c * c;
    }
    let heat_norm_sq = |t: f64| -> f64 {
        profile
            .iter()
            .enumerate()
            .map(|(k, e)| e * (-2.0 * k as f64 * t).exp())
            .sum()
    };
    let integrand = |t: f64| kind.time_weight(t) * heat_norm_sq(t);

    let tail = profile.iter().sum::<f64>() * (-2.0 * QUADRATURE_HORIZON).exp() / 2.0;
    if tail > QUADRATURE_TOL / 10.0 {
        return Err(Error::Quadrature {
            a: QUADRATURE_HORIZON,
            b: f64::INFINITY,
            tolerance: QUADRATURE_TOL,
        });
    }
    // the integrand decays like e^{-2(k-1)t}; start from panels narrower
    // than its shortest scale so the first Simpson estimates see the peak
    let panels = 16 * QUADRATURE_HORIZON as usize;
    let width = QUADRATURE_HORIZON / panels as f64;
    (0..panels)
        .map(|p| {
            let a = p as f64 * width;
            adaptive_simpson(&integrand, a, a + width, QUADRATURE_TOL / panels as f64)
        })
        .sum()
}

fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Adaptive Simpson quadrature with Richardson correction; fails if any
/// subinterval reaches the depth limit above its share of the tolerance.
pub fn adaptive_simpson(g: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        g: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (g(lm), g(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 {
            return Err(Error::Quadrature { a, b, tolerance: tol });
        }
        Ok(recurse(g, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)?
            + recurse(g, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)?)
    }
    let (fa, fm, fb) = (g(a), g(0.5 * (a + b)), g(b));
    let whole = simpson(fa, fm, fb, a, b);
    recurse(g, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

/// `Ent(f^2) = E[f^2 ln f^2] - E[f^2] ln E[f^2]` with `0 ln 0 = 0`.
pub fn entropy(f: &TruthTable) -> f64 {
    let xlnx = |x: f64| if x == 0.0 { 0.0 } else { x * x.ln() };
    let len = f.len() as f64;
    let mean_sq = f.values().iter().map(|v| v * v).sum::<f64>() / len;
    let mean_xlnx = f.values().iter().map(|v| xlnx(v * v)).sum::<f64>() / len;
    mean_xlnx - xlnx(mean_sq)
}

/// `I / ln^2(2/I)` with the value 0 at `I = 0`.
pub fn squared_log_term(pair_influence: f64) -> f64 {
    if pair_influence == 0.0 {
        0.0
    } else {
        pair_influence / (2.0 / pair_influence).ln().powi(2)
    }
}

/// `I / ln(1/I)`, 0 at `I = 0` and `+inf` at `I = 1`.
pub fn log_term(influence: f64) -> f64 {
    if influence == 0.0 {
        0.0
    } else if influence >= 1.0 {
        f64::INFINITY
    } else {
        influence / (1.0 / influence).ln()
    }
}

/// The smallest alpha admitted by the generalized pair-influence condition:
/// `max( sum_{i<j} 2 I_ij / ln^2(2/I_ij), (n / ln n) max_i sum_{j != i} I_ij / ln(1/I_ij) )`.
pub fn effective_alpha_from_report(report: &InfluenceReport) -> f64 {
    let n = report.n;
    let first: f64 = report.pair_influences.iter().map(|&v| 2.0 * squared_log_term(v)).sum();
    let row_max = (1..=n)
        .map(|i| {
            (1..=n)
                .filter(|&j| j != i)
                .map(|j| log_term(report.pair_influence(i, j)))
                .sum::<f64>()
        })
        .fold(0.0, f64::max);
    let nf = n as f64;
    let second = if row_max == 0.0 { 0.0 } else { nf / nf.ln() * row_max };
    first.max(second)
}

/// [`effective_alpha_from_report`] for a Boolean table.
pub fn effective_alpha(f: &TruthTable) -> Result<f64> {
    if !f.is_boolean() {
        return Err(Error::NotBoolean);
    }
    Ok(effective_alpha_from_report(&InfluenceReport::from_spectrum(
        &f.analyze(),
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{coordinate, walsh};

    fn maj3() -> TruthTable {
        TruthTable::from_fn(3, |m| (coordinate(m, 1) + coordinate(m, 2) + coordinate(m, 3)).signum()).unwrap()
    }

    fn w(n: usize, mask: usize) -> TruthTable {
        TruthTable::from_fn(n, |m| walsh(mask, m)).unwrap()
    }

    #[test]
    fn superset_enumeration() {
        let got: Vec<_> = supersets(4, 0b0101).collect();
        assert_eq!(got, vec![0b0101, 0b0111, 0b1101, 0b1111]);
        assert_eq!(supersets(3, 0b111).collect::<Vec<_>>(), vec![0b111]);
        assert_eq!(supersets(3, 0).count(), 8);
    }

    #[test]
    fn pair_slots_are_dense() {
        for n in 2..=7 {
            for (k, (i, j)) in pairs(n).enumerate() {
                assert_eq!(pair_slot(n, i, j), k);
                assert_eq!(pair_slot(n, j, i), k);
            }
        }
    }

    #[test]
    fn majority_report() {
        let r = influence_report(&maj3()).unwrap();
        assert_eq!(r.influences, vec![0.5; 3]);
        assert_eq!(r.pair_influences, vec![0.25; 3]);
        assert_eq!(r.total, 1.5);
        assert_eq!(r.theta, 0.5);
        assert_eq!(r.degree_weights, vec![0.0, 0.75, 0.0, 0.25]);
    }

    #[test]
    fn dictator_report() {
        let r = influence_report(&w(4, 0b0001)).unwrap();
        assert_eq!(r.influences, vec![1.0, 0.0, 0.0, 0.0]);
        assert!(r.pair_influences.iter().all(|&v| v == 0.0));
        assert_eq!(r.theta, 0.0);
    }

    #[test]
    fn parity_report() {
        let n = 5;
        let r = influence_report(&w(n, (1 << n) - 1)).unwrap();
        assert!(r.influences.iter().all(|&v| v == 1.0));
        assert!(r.pair_influences.iter().all(|&v| v == 1.0));
        assert_eq!(r.theta, (n - 1) as f64);
    }

    #[test]
    fn report_json_shape() {
        let r = influence_report(&maj3()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(v["n"], 3);
        assert_eq!(v["I"].as_array().unwrap().len(), 3);
        assert_eq!(v["Iij"][0][0], 1);
        assert_eq!(v["Iij"][0][1], 2);
        assert_eq!(v["Iij"][0][2].as_f64(), Some(0.25));
        assert_eq!(v["theta"].as_f64(), Some(0.5));
        assert_eq!(v["W"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn closed_form_integrals() {
        let f = maj3();
        assert_eq!(integral_shifted(&f, 1, 2).unwrap(), 1.0 / 48.0);
        assert_eq!(integral_plain(&f, 1, 2).unwrap(), 1.0 / 16.0);
        let w12 = w(3, 0b011);
        assert_eq!(integral_shifted(&w12, 1, 2).unwrap(), 0.25);
        assert_eq!(integral_plain(&w12, 1, 2).unwrap(), 0.5);
        let r1 = w(3, 0b001);
        assert_eq!(integral_shifted(&r1, 1, 2).unwrap(), 0.0);
        assert_eq!(integral_plain(&r1, 1, 2).unwrap(), 0.0);
        assert!(matches!(integral_plain(&f, 2, 2), Err(Error::SameCoordinate(2))));
    }

    #[test]
    fn quadrature_matches_examples() {
        let f = maj3();
        let j1 = integral_quadrature(&f, 1, 2, PairIntegral::Shifted).unwrap();
        let j2 = integral_quadrature(&f, 1, 2, PairIntegral::Plain).unwrap();
        assert!((j1 - 1.0 / 48.0).abs() < 1e-8, "{j1}");
        assert!((j2 - 1.0 / 16.0).abs() < 1e-8, "{j2}");
        let r1 = w(3, 0b001);
        assert_eq!(integral_quadrature(&r1, 1, 2, PairIntegral::Shifted).unwrap(), 0.0);
    }

    #[test]
    fn simpson_on_known_integrals() {
        let v = adaptive_simpson(&|t: f64| (-t).exp(), 0.0, 20.0, 1e-10).unwrap();
        assert!((v - (1.0 - (-20f64).exp())).abs() < 1e-9);
        let v = adaptive_simpson(&|t: f64| t * t, 0.0, 3.0, 1e-12).unwrap();
        assert!((v - 9.0).abs() < 1e-12);
    }

    #[test]
    fn entropies() {
        assert_eq!(entropy(&maj3()), 0.0);
        let g = TruthTable::from_fn(2, |m| 1.0 + coordinate(m, 1)).unwrap();
        assert!((entropy(&g) - 2.0 * 2f64.ln()).abs() < 1e-15);
        assert_eq!(entropy(&TruthTable::constant(3, 0.0).unwrap()), 0.0);
    }

    #[test]
    fn effective_alpha_examples() {
        assert_eq!(effective_alpha(&w(4, 0b0001)).unwrap(), 0.0);
        assert_eq!(effective_alpha(&w(2, 0b11)).unwrap(), f64::INFINITY);
        let a = effective_alpha(&maj3()).unwrap();
        let first = 3.0 * 2.0 * 0.25 / 8f64.ln().powi(2);
        let second = 3.0 / 3f64.ln() * 2.0 * 0.25 / 4f64.ln();
        assert!((first - 0.346_894_830).abs() < 1e-9);
        assert!((second - 0.984_898_214).abs() < 1e-9);
        assert!((a - second).abs() < 1e-15);
        assert!(matches!(
            effective_alpha(&TruthTable::constant(2, 0.5).unwrap()),
            Err(Error::NotBoolean)
        ));
    }
}
